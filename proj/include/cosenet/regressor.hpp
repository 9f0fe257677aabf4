#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "cosenet/matrix.hpp"

namespace cosenet {

inline constexpr int kModelFormatVersion = 1;

/// One training pair: a T x T window and its T boundary bits.
struct TrainingRecord {
    Matrix window;
    std::vector<std::uint8_t> target;
};

enum class Split { Train, Validation, Test };

struct TrainingSet {
    std::vector<TrainingRecord> records;
    Split split = Split::Train;
};

/// Per-feature affine normalization over the flattened window. The trailing
/// bias feature always carries mean 0 and std 1.
struct Standardizer {
    Vector means;
    Vector stds;

    Vector apply(const Vector& features) const;
};

/// Where the training data came from. Informational only.
struct TrainingMeta {
    std::size_t samples = 0;
    double noise_mean = 0.0;
    double noise_var = 0.0;
    double groups_mean = 0.0;
    double groups_var = 0.0;
    std::uint64_t seed = 0;
};

struct RidgeModel {
    std::size_t throughput = 0;
    double lambda = 1.0;
    /// (T^2 + 1) x T; the last row holds the bias weights.
    Matrix weights;
    std::optional<Standardizer> standardizer;
    TrainingMeta training_meta;

    std::size_t feature_count() const noexcept { return throughput * throughput + 1; }
};

/// Row-major flatten plus a trailing constant 1.0 bias feature.
Vector flatten_window(const Matrix& w);

Standardizer fit_standardizer(const TrainingSet& ts);

/// Closed-form ridge: solves (X'X + lambda*I~) W = X'Y by Cholesky, where I~
/// is the identity with the bias entry zeroed.
///
/// Throws SingularSystem if the Gram matrix is not numerically positive
/// definite (only reachable with lambda == 0).
RidgeModel train_ridge(const TrainingSet& ts, double lambda, bool standardize,
                       const TrainingMeta& meta = {});

/// Unclamped linear response; mostly useful for diagnostics and tests.
Vector predict_raw(const RidgeModel& model, const Matrix& w);

/// Linear response clamped elementwise into [0,1].
ProbabilityVector predict(const RidgeModel& model, const Matrix& w);

void save_model(const RidgeModel& model, const std::filesystem::path& path);
RidgeModel load_model(const std::filesystem::path& path);

}  // namespace cosenet
