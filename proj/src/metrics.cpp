#include "cosenet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cosenet/error.hpp"

namespace cosenet {

namespace {

void check_lengths(std::size_t a, std::size_t b) {
    if (a != b) {
        throw Error(ErrorCode::LengthMismatch,
                    "length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
    if (a == 0) throw Error(ErrorCode::LengthMismatch, "metric inputs must be non-empty");
}

}  // namespace

double mse(std::span<const double> pred, std::span<const double> truth) {
    check_lengths(pred.size(), truth.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) sum += (pred[i] - truth[i]) * (pred[i] - truth[i]);
    return sum / static_cast<double>(pred.size());
}

double mae(std::span<const double> pred, std::span<const double> truth) {
    check_lengths(pred.size(), truth.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) sum += std::abs(pred[i] - truth[i]);
    return sum / static_cast<double>(pred.size());
}

double r2(std::span<const double> pred, std::span<const double> truth) {
    check_lengths(pred.size(), truth.size());
    double mean = 0.0;
    for (double t : truth) mean += t;
    mean /= static_cast<double>(truth.size());
    double ss_tot = 0.0;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ss_tot += (truth[i] - mean) * (truth[i] - mean);
        ss_res += (truth[i] - pred[i]) * (truth[i] - pred[i]);
    }
    if (ss_tot <= 0.0) throw Error(ErrorCode::ZeroVariance, "R2 undefined for constant truth");
    return 1.0 - ss_res / ss_tot;
}

std::size_t default_window_size(const SegmentationVector& ref) {
    const auto n = static_cast<double>(ref.length());
    const auto groups = static_cast<double>(ref.group_count());
    const auto k = std::max<long long>(1, std::llround(n / (2.0 * groups)));
    return static_cast<std::size_t>(std::min<long long>(k, static_cast<long long>(ref.length()) - 1));
}

double window_diff(const SegmentationVector& ref, const SegmentationVector& hyp,
                   std::optional<std::size_t> k) {
    check_lengths(ref.length(), hyp.length());
    const std::size_t n = ref.length();
    const std::size_t width = k.value_or(default_window_size(ref));
    if (width == 0 || width >= n) {
        throw Error(ErrorCode::DegenerateWindow, "window size " + std::to_string(width) +
                                                     " invalid for length " + std::to_string(n));
    }
    // Signed running difference of boundary counts over positions i+1..i+k.
    const auto& r = ref.bits();
    const auto& h = hyp.bits();
    long diff = 0;
    for (std::size_t p = 1; p <= width; ++p) diff += static_cast<long>(r[p]) - h[p];
    std::size_t mismatches = diff != 0;
    for (std::size_t i = 1; i + width < n; ++i) {
        diff += static_cast<long>(r[i + width]) - h[i + width];
        diff -= static_cast<long>(r[i]) - h[i];
        mismatches += diff != 0;
    }
    return static_cast<double>(mismatches) / static_cast<double>(n - width);
}

std::vector<double> transferability(const std::vector<std::vector<double>>& grid) {
    if (grid.empty() || grid.front().empty()) {
        throw Error(ErrorCode::EmptyGrid, "transferability grid is empty");
    }
    std::vector<double> out;
    out.reserve(grid.size());
    for (const auto& row : grid) {
        if (row.size() != grid.front().size()) {
            throw Error(ErrorCode::EmptyGrid, "transferability grid is not rectangular");
        }
        double sum = 0.0;
        for (double v : row) sum += v;
        out.push_back(sum / static_cast<double>(row.size()));
    }
    return out;
}

void MetricAccumulator::add(std::span<const double> pred, std::span<const double> truth,
                            const SegmentationVector& ref, const SegmentationVector& hyp) {
    check_lengths(pred.size(), truth.size());
    pred_.insert(pred_.end(), pred.begin(), pred.end());
    truth_.insert(truth_.end(), truth.begin(), truth.end());
    // A single element has exactly one segmentation, so it cannot disagree.
    wd_sum_ += ref.length() < 2 ? 0.0 : window_diff(ref, hyp);
    ++samples_;
}

MetricReport MetricAccumulator::report() const {
    MetricReport rep;
    rep.n = samples_;
    if (samples_ == 0) return rep;
    rep.mse = mse(pred_, truth_);
    rep.mae = mae(pred_, truth_);
    try {
        rep.r2 = r2(pred_, truth_);
    } catch (const Error&) {
        rep.r2 = std::numeric_limits<double>::quiet_NaN();
    }
    rep.wd = wd_sum_ / static_cast<double>(samples_);
    return rep;
}

}  // namespace cosenet
