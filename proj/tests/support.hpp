#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "cosenet/matrix.hpp"
#include "cosenet/regressor.hpp"
#include "cosenet/synthgen.hpp"

namespace cosenet::testing {

inline SegmentationVector random_segmentation(std::size_t n, std::mt19937_64& rng, double p = 0.3) {
    std::bernoulli_distribution bit(p);
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = bit(rng) ? 1 : 0;
    return SegmentationVector::with_forced_start(std::move(bits));
}

inline Matrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto sn = static_cast<Eigen::Index>(n);
    Matrix m(sn, sn);
    for (Eigen::Index i = 0; i < sn; ++i) {
        for (Eigen::Index j = i; j < sn; ++j) m(i, j) = m(j, i) = unit(rng);
    }
    return m;
}

/// Noise-free single-window model of the given throughput.
inline RidgeModel noise_free_model(std::size_t t, std::size_t count = 2048, std::uint64_t seed = 11) {
    SynthSpec spec;
    spec.size = t;
    spec.noise_mean = 0.0;
    spec.noise_var = 0.0;
    spec.groups_mean = t == 8 ? 3.0 : t == 16 ? 4.0 : 6.0;
    spec.groups_var = t == 8 ? 1.0 : t == 16 ? 2.0 : 3.0;
    spec.count = count;
    spec.seed = seed;
    const SynthDataset ds = generate_dataset(spec);
    return train_ridge(to_training_set(ds.train, Split::Train), 1.0, false);
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("cosenet_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace cosenet::testing
