#pragma once

#include "cosenet/matrix.hpp"
#include "cosenet/merge.hpp"
#include "cosenet/metrics.hpp"
#include "cosenet/regressor.hpp"
#include "cosenet/scaling.hpp"
#include "cosenet/synthgen.hpp"

namespace cosenet {

/// The five tuned knobs: scaling (A, B, omega), threshold, and the
/// throughput implied by the model.
struct PipelineConfig {
    ScalingParams scaling;
    MergeConfig merge;
    const RidgeModel* model = nullptr;
};

struct SegmentationResult {
    SegmentationVector segmentation;
    Matrix denoised;
    ProbabilityVector probabilities;
};

/// rescale -> pad -> split -> predict -> overlap mean -> threshold -> trim ->
/// block reconstruction.
SegmentationResult segment(const CorrelationMatrix& r, const PipelineConfig& cfg);

/// Probabilities only (trimmed to r.size()); skips reconstruction.
ProbabilityVector segment_probabilities(const CorrelationMatrix& r,
                                        const ScalingParams& scaling,
                                        const RidgeModel& model);

/// Runs every record through segment() and scores probabilities (MSE, MAE,
/// R2 against the truth bits) and segmentations (mean WindowDiff).
MetricReport evaluate_pipeline(const std::vector<SynthRecord>& records, const PipelineConfig& cfg);

}  // namespace cosenet
