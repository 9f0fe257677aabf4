#include <doctest.h>

#include <cmath>

#include "cosenet/io.hpp"
#include "cosenet/synthgen.hpp"

using namespace cosenet;

namespace {

double normal_cdf(double x, double mean, double sd) {
    return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

// Exact expectation of clamp(round(N(mean, var)), 1, size) by summing the
// probability mass of each rounding cell.
double expected_group_count(std::size_t size, double mean, double var) {
    const double sd = std::sqrt(var);
    double e = 0.0;
    for (std::size_t k = 1; k <= size; ++k) {
        const double lo = k == 1 ? 0.0 : normal_cdf(k - 0.5, mean, sd);
        const double hi = k == size ? 1.0 : normal_cdf(k + 0.5, mean, sd);
        e += static_cast<double>(k) * (hi - lo);
    }
    return e;
}

bool same_records(const std::vector<SynthRecord>& a, const std::vector<SynthRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].matrix.values() != b[i].matrix.values()) return false;
        if (!(a[i].segmentation == b[i].segmentation)) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("synthgen") {

TEST_CASE("sample_segmentation edge cases") {
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        const auto one = sample_segmentation(10, 1.0, 0.0, rng);
        CHECK(one.group_count() == 1);
        CHECK(one[0] == 1);
        const auto all = sample_segmentation(10, 10.0, 0.0, rng);
        CHECK(all.group_count() == 10);
        CHECK(sample_segmentation(1, 5.0, 3.0, rng).length() == 1);
    }
}

TEST_CASE("group count statistics match the clamped rounded normal") {
    Rng rng(123);
    const int draws = 100000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) sum += static_cast<double>(sample_segmentation(16, 4.0, 2.0, rng).group_count());
    const double empirical = sum / draws;
    const double exact = expected_group_count(16, 4.0, 2.0);
    CHECK(std::abs(empirical - 4.0) <= 0.1);
    // Standard error is about sqrt(2)/sqrt(1e5) ~ 0.0045.
    CHECK(std::abs(empirical - exact) <= 0.02);
}

TEST_CASE("boundary positions are uniform over the interior") {
    Rng rng(5);
    std::vector<int> hits(8, 0);
    const int draws = 40000;
    for (int i = 0; i < draws; ++i) {
        const auto seg = sample_segmentation(8, 2.0, 0.0, rng);  // exactly one interior boundary
        for (std::size_t k = 1; k < 8; ++k) hits[k] += seg[k];
    }
    for (std::size_t k = 1; k < 8; ++k) CHECK(std::abs(hits[k] / double(draws) - 1.0 / 7.0) < 0.01);
}

TEST_CASE("build_noisy_matrix") {
    Rng rng(2);
    const SegmentationVector seg({1, 0, 0, 1, 0, 1, 0, 0});
    CHECK(build_noisy_matrix(seg, 0.0, 0.0, rng).values() == segmentation_to_blocks(seg));

    for (double var : {0.1, 0.3, 0.5}) {
        const auto m = build_noisy_matrix(seg, 0.02, var, rng);
        CHECK(m.values() == m.values().transpose());
        CHECK(m.values().diagonal() == Vector::Ones(8));
        CHECK(m.values().minCoeff() >= 0.0);
        CHECK(m.values().maxCoeff() <= 1.0);
    }
    CHECK(build_noisy_matrix(SegmentationVector({1}), 0.3, 0.5, rng).values() == Matrix::Ones(1, 1));
}

TEST_CASE("noise statistics before clipping") {
    Rng rng(31);
    const double mean = 0.01;
    const double var = 0.1;
    double sum = 0.0;
    double sq = 0.0;
    std::size_t n = 0;
    while (n < 1000000) {
        const Matrix noise = sample_symmetric_noise(64, mean, var, rng);
        for (Eigen::Index i = 0; i < 64; ++i) {
            for (Eigen::Index j = i + 1; j < 64; ++j) {
                sum += noise(i, j);
                sq += noise(i, j) * noise(i, j);
                ++n;
            }
        }
    }
    const double m = sum / static_cast<double>(n);
    const double v = sq / static_cast<double>(n) - m * m;
    CHECK(std::abs(m - mean) <= 3.0 * std::sqrt(var) / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(v - var) <= 0.1 * var);
}

TEST_CASE("split sizes") {
    const SplitSizes s = split_sizes(10);
    CHECK(s.train == 7);
    CHECK(s.validation == 2);
    CHECK(s.test == 1);
    const SplitSizes big = split_sizes(32768);
    CHECK(big.train + big.validation + big.test == 32768);
    CHECK(big.train == 22938);
    CHECK(big.validation == 6554);
    const SplitSizes one = split_sizes(1);
    CHECK(one.train + one.validation + one.test == 1);
}

TEST_CASE("generate_dataset is seeded and self-consistent") {
    SynthSpec spec;
    spec.size = 8;
    spec.noise_mean = 0.02;
    spec.noise_var = 0.5;
    spec.groups_mean = 3.0;
    spec.groups_var = 1.0;
    spec.count = 200;
    spec.seed = 7;
    const SynthDataset a = generate_dataset(spec);
    const SynthDataset b = generate_dataset(spec);
    CHECK(same_records(a.train, b.train));
    CHECK(same_records(a.validation, b.validation));
    CHECK(same_records(a.test, b.test));
    CHECK(a.train.size() == 140);
    CHECK(a.validation.size() == 40);
    CHECK(a.test.size() == 20);

    spec.seed = 8;
    CHECK_FALSE(same_records(generate_dataset(spec).train, a.train));

    for (const auto& rec : a.train) CHECK_NOTHROW(validate_matrix(rec.matrix.values()));
}

TEST_CASE("noise-free matrices give back their segmentation") {
    SynthSpec spec;
    spec.size = 32;
    spec.groups_mean = 6.0;
    spec.groups_var = 3.0;
    spec.count = 100;
    spec.seed = 4;
    for (const auto& rec : generate_dataset(spec).train) {
        std::vector<std::uint8_t> bits(32, 0);
        bits[0] = 1;
        for (Eigen::Index i = 1; i < 32; ++i) bits[static_cast<std::size_t>(i)] = rec.matrix.values()(i - 1, i) == 0.0;
        CHECK(SegmentationVector(bits) == rec.segmentation);
    }
}

TEST_CASE("invalid specs") {
    SynthSpec spec;
    spec.count = 0;
    CHECK_THROWS(generate_dataset(spec));
    spec.count = 1;
    spec.noise_var = -1;
    CHECK_THROWS(generate_dataset(spec));
}

}  // TEST_SUITE
