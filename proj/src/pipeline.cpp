#include "cosenet/pipeline.hpp"

#include "cosenet/error.hpp"
#include "cosenet/formatting.hpp"

namespace cosenet {

namespace {

struct MergedPrediction {
    WindowLayout layout;
    ProbabilityVector padded;
};

MergedPrediction predict_padded(const CorrelationMatrix& r, const ScalingParams& scaling,
                                const RidgeModel& model) {
    // Padding goes in after rescaling so its exact 0/1 cells are never distorted.
    const Matrix scaled = rescale_matrix(r.values(), scaling);
    const WindowLayout layout = compute_layout(r.size(), model.throughput);
    const WindowBatch batch = wocd_split(identity_pad(scaled, layout), layout);

    std::vector<ProbabilityVector> preds;
    preds.reserve(batch.windows.size());
    for (const auto& w : batch.windows) preds.push_back(predict(model, w));
    return {layout, overlap_mean(preds, layout)};
}

ProbabilityVector trim_probabilities(const ProbabilityVector& padded, std::size_t m_in) {
    const auto& p = padded.probs();
    return ProbabilityVector({p.begin(), p.begin() + static_cast<std::ptrdiff_t>(m_in)});
}

}  // namespace

ProbabilityVector segment_probabilities(const CorrelationMatrix& r, const ScalingParams& scaling,
                                        const RidgeModel& model) {
    const auto merged = predict_padded(r, scaling, model);
    return trim_probabilities(merged.padded, r.size());
}

SegmentationResult segment(const CorrelationMatrix& r, const PipelineConfig& cfg) {
    if (cfg.model == nullptr) {
        throw Error(ErrorCode::MissingModel, "pipeline config has no model");
    }
    if (!(cfg.merge.threshold >= 0.0 && cfg.merge.threshold <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "threshold must lie in [0,1]");
    }
    const auto merged = predict_padded(r, cfg.scaling, *cfg.model);
    const SegmentationVector s0 = binarize(merged.padded, cfg.merge);
    SegmentationVector seg = trim_segmentation(s0, merged.layout);
    Matrix denoised = segmentation_to_blocks(seg);
    return {std::move(seg), std::move(denoised), trim_probabilities(merged.padded, r.size())};
}

MetricReport evaluate_pipeline(const std::vector<SynthRecord>& records, const PipelineConfig& cfg) {
    MetricAccumulator acc;
    std::vector<double> truth;
    for (const auto& rec : records) {
        const auto result = segment(rec.matrix, cfg);
        const auto& bits = rec.segmentation.bits();
        truth.assign(bits.begin(), bits.end());
        acc.add(result.probabilities.probs(), truth, rec.segmentation, result.segmentation);
    }
    return acc.report();
}

}  // namespace cosenet
