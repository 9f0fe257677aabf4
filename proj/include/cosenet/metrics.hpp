#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cosenet/matrix.hpp"

namespace cosenet {

struct MetricReport {
    double mse = 0.0;
    double mae = 0.0;
    double r2 = 0.0;
    double wd = 0.0;
    std::size_t n = 0;
};

double mse(std::span<const double> pred, std::span<const double> truth);
double mae(std::span<const double> pred, std::span<const double> truth);
double r2(std::span<const double> pred, std::span<const double> truth);

/// Half the mean reference segment length, at least 1 and at most N - 1.
std::size_t default_window_size(const SegmentationVector& ref);

/// Fraction of probes [i, i+k] on which ref and hyp disagree on the number
/// of boundaries in positions i+1..i+k.
double window_diff(const SegmentationVector& ref, const SegmentationVector& hyp,
                   std::optional<std::size_t> k = std::nullopt);

/// Row-wise mean of a (trained-on x evaluated-on) metric grid.
std::vector<double> transferability(const std::vector<std::vector<double>>& grid);

/// Accumulates flat regression errors and per-sample WindowDiff over a batch.
class MetricAccumulator {
public:
    void add(std::span<const double> pred, std::span<const double> truth,
             const SegmentationVector& ref, const SegmentationVector& hyp);
    MetricReport report() const;

private:
    std::vector<double> pred_;
    std::vector<double> truth_;
    double wd_sum_ = 0.0;
    std::size_t samples_ = 0;
};

}  // namespace cosenet
