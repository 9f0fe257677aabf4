#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "cosenet/matrix.hpp"
#include "cosenet/regressor.hpp"

namespace cosenet {

using Rng = std::mt19937_64;

/// Generation parameters for one synthetic database.
struct SynthSpec {
    std::size_t size = 8;
    double noise_mean = 0.0;
    double noise_var = 0.0;
    double groups_mean = 3.0;
    double groups_var = 1.0;
    std::size_t count = 1;
    std::uint64_t seed = 0;

    void check() const;
};

struct SynthRecord {
    CorrelationMatrix matrix;
    SegmentationVector segmentation;
};

struct SynthDataset {
    SynthSpec spec;
    std::vector<SynthRecord> train;
    std::vector<SynthRecord> validation;
    std::vector<SynthRecord> test;
};

struct SplitSizes {
    std::size_t train, validation, test;
};

/// round(0.7 n) / round(0.2 n) / remainder.
SplitSizes split_sizes(std::size_t count);

/// Group count is a clamped, rounded normal draw; interior boundaries are
/// chosen uniformly without replacement.
SegmentationVector sample_segmentation(std::size_t size, double groups_mean, double groups_var,
                                       Rng& rng);

/// Symmetric i.i.d. normal noise, drawn row-wise over the upper triangle
/// (diagonal included) and mirrored.
Matrix sample_symmetric_noise(std::size_t size, double noise_mean, double noise_var, Rng& rng);

/// Block matrix of seg plus symmetric noise, clipped to [0,1], unit diagonal.
CorrelationMatrix build_noisy_matrix(const SegmentationVector& seg, double noise_mean,
                                     double noise_var, Rng& rng);

/// Sample i uses its own stream seeded from (spec.seed, i), so generation
/// order does not affect content.
SynthRecord generate_record(const SynthSpec& spec, std::size_t index);

SynthDataset generate_dataset(const SynthSpec& spec);

/// Windows are the whole matrices; requires every record to be throughput
/// sized.
TrainingSet to_training_set(const std::vector<SynthRecord>& records, Split split);

}  // namespace cosenet
