#include "cosenet/merge.hpp"

#include <string>

#include "cosenet/error.hpp"

namespace cosenet {

ProbabilityVector overlap_mean(const std::vector<ProbabilityVector>& preds,
                               const WindowLayout& layout) {
    if (preds.size() != layout.v) {
        throw Error(ErrorCode::LayoutMismatch, "expected " + std::to_string(layout.v) +
                                                   " window predictions, got " +
                                                   std::to_string(preds.size()));
    }
    std::vector<double> sum(layout.m0, 0.0);
    std::vector<unsigned> hits(layout.m0, 0);
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i].length() != layout.throughput) {
            throw Error(ErrorCode::LayoutMismatch,
                        "window prediction " + std::to_string(i) + " has wrong length");
        }
        const std::size_t start = layout.window_start(i);
        for (std::size_t j = 0; j < layout.throughput; ++j) {
            sum[start + j] += preds[i][j];
            ++hits[start + j];
        }
    }
    for (std::size_t g = 0; g < sum.size(); ++g) sum[g] /= hits[g];
    return ProbabilityVector(std::move(sum));
}

SegmentationVector binarize(const ProbabilityVector& s, const MergeConfig& cfg) {
    std::vector<std::uint8_t> bits(s.length());
    for (std::size_t g = 0; g < bits.size(); ++g) bits[g] = s[g] >= cfg.threshold ? 1 : 0;
    return SegmentationVector::with_forced_start(std::move(bits));
}

}  // namespace cosenet
