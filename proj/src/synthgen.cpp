#include "cosenet/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cosenet/error.hpp"

namespace cosenet {

void SynthSpec::check() const {
    if (size < 1) throw Error(ErrorCode::InvalidArgument, "size must be >= 1");
    if (!(noise_var >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise variance must be >= 0");
    if (!(groups_var >= 0.0)) throw Error(ErrorCode::InvalidArgument, "group variance must be >= 0");
    if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
}

SplitSizes split_sizes(std::size_t count) {
    const auto n = static_cast<double>(count);
    const auto train = static_cast<std::size_t>(std::llround(0.7 * n));
    const auto validation = std::min(static_cast<std::size_t>(std::llround(0.2 * n)), count - train);
    return {train, validation, count - train - validation};
}

SegmentationVector sample_segmentation(std::size_t size, double groups_mean, double groups_var,
                                       Rng& rng) {
    if (size < 1) throw Error(ErrorCode::InvalidArgument, "size must be >= 1");
    double draw = groups_mean;
    if (groups_var > 0.0) {
        std::normal_distribution<double> groups(groups_mean, std::sqrt(groups_var));
        draw = groups(rng);
    }
    const auto rounded = std::llround(draw);
    const auto n_groups =
        static_cast<std::size_t>(std::clamp<long long>(rounded, 1, static_cast<long long>(size)));

    std::vector<std::uint8_t> bits(size, 0);
    bits[0] = 1;
    // Partial Fisher-Yates over the interior positions 1..size-1.
    std::vector<std::size_t> interior(size - 1);
    std::iota(interior.begin(), interior.end(), std::size_t{1});
    for (std::size_t k = 0; k + 1 < n_groups; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, interior.size() - 1);
        std::swap(interior[k], interior[pick(rng)]);
        bits[interior[k]] = 1;
    }
    return SegmentationVector(std::move(bits));
}

Matrix sample_symmetric_noise(std::size_t size, double noise_mean, double noise_var, Rng& rng) {
    const auto n = static_cast<Eigen::Index>(size);
    Matrix noise(n, n);
    if (noise_var <= 0.0) {
        noise.setConstant(noise_mean);
        return noise;
    }
    std::normal_distribution<double> dist(noise_mean, std::sqrt(noise_var));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            noise(i, j) = dist(rng);
            noise(j, i) = noise(i, j);
        }
    }
    return noise;
}

CorrelationMatrix build_noisy_matrix(const SegmentationVector& seg, double noise_mean,
                                     double noise_var, Rng& rng) {
    Matrix m = segmentation_to_blocks(seg);
    m += sample_symmetric_noise(seg.length(), noise_mean, noise_var, rng);
    m = m.cwiseMax(0.0).cwiseMin(1.0);
    m.diagonal().setOnes();
    return validate_matrix(std::move(m));
}

SynthRecord generate_record(const SynthSpec& spec, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    Rng rng(seq);
    SegmentationVector seg = sample_segmentation(spec.size, spec.groups_mean, spec.groups_var, rng);
    CorrelationMatrix matrix = build_noisy_matrix(seg, spec.noise_mean, spec.noise_var, rng);
    return {std::move(matrix), std::move(seg)};
}

SynthDataset generate_dataset(const SynthSpec& spec) {
    spec.check();
    const SplitSizes sizes = split_sizes(spec.count);
    SynthDataset ds{spec, {}, {}, {}};
    ds.train.reserve(sizes.train);
    ds.validation.reserve(sizes.validation);
    ds.test.reserve(sizes.test);
    for (std::size_t i = 0; i < spec.count; ++i) {
        auto rec = generate_record(spec, i);
        if (i < sizes.train) {
            ds.train.push_back(std::move(rec));
        } else if (i < sizes.train + sizes.validation) {
            ds.validation.push_back(std::move(rec));
        } else {
            ds.test.push_back(std::move(rec));
        }
    }
    return ds;
}

TrainingSet to_training_set(const std::vector<SynthRecord>& records, Split split) {
    TrainingSet ts;
    ts.split = split;
    ts.records.reserve(records.size());
    for (const auto& rec : records) {
        ts.records.push_back({rec.matrix.values(), rec.segmentation.bits()});
    }
    return ts;
}

}  // namespace cosenet
