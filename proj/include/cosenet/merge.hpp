#pragma once

#include <vector>

#include "cosenet/formatting.hpp"
#include "cosenet/matrix.hpp"

namespace cosenet {

struct MergeConfig {
    double threshold = 0.5;
};

/// Plain mean over every window covering each global index of the padded
/// range.
ProbabilityVector overlap_mean(const std::vector<ProbabilityVector>& preds,
                               const WindowLayout& layout);

/// bit = s >= threshold, then bit 0 forced to 1.
SegmentationVector binarize(const ProbabilityVector& s, const MergeConfig& cfg);

}  // namespace cosenet
