#include <doctest.h>

#include <random>

#include "cosenet/error.hpp"
#include "cosenet/metrics.hpp"
#include "support.hpp"

using namespace cosenet;

namespace {

// Direct probe enumeration: count boundaries inside each probe separately.
double window_diff_oracle(const SegmentationVector& ref, const SegmentationVector& hyp, std::size_t k) {
    const std::size_t n = ref.length();
    std::size_t differ = 0;
    for (std::size_t i = 0; i + k < n; ++i) {
        int br = 0;
        int bh = 0;
        for (std::size_t p = i + 1; p <= i + k; ++p) {
            br += ref[p];
            bh += hyp[p];
        }
        differ += br != bh;
    }
    return static_cast<double>(differ) / static_cast<double>(n - k);
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("regression metrics") {
    const std::vector<double> truth{0.0, 1.0, 1.0, 0.0};
    CHECK(mse(truth, truth) == 0.0);
    CHECK(mae(truth, truth) == 0.0);
    CHECK(r2(truth, truth) == 1.0);

    const std::vector<double> flat(4, 0.5);
    CHECK(r2(flat, truth) == doctest::Approx(0.0).epsilon(1e-15));

    const std::vector<double> p{0.0, 1.0};
    const std::vector<double> t{1.0, 1.0};
    CHECK(mse(p, t) == 0.5);
    CHECK(mae(p, t) == 0.5);

    CHECK(code_of([&] { mse(p, truth); }) == ErrorCode::LengthMismatch);
    CHECK(code_of([&] { r2(p, t); }) == ErrorCode::ZeroVariance);
}

TEST_CASE("window_diff examples") {
    const SegmentationVector a({1, 0, 0, 1, 0, 0, 1, 0});
    CHECK(window_diff(a, a) == 0.0);
    CHECK(window_diff(SegmentationVector({1, 0, 0, 0}), SegmentationVector({1, 0, 1, 0}), 1) ==
          doctest::Approx(1.0 / 3.0));
    CHECK(window_diff(SegmentationVector({1, 0, 0, 0}), SegmentationVector({1, 1, 1, 1}), 1) == 1.0);
}

TEST_CASE("window_diff errors") {
    CHECK(code_of([] { window_diff(SegmentationVector({1, 0}), SegmentationVector({1, 0, 0})); }) ==
          ErrorCode::LengthMismatch);
    CHECK(code_of([] { window_diff(SegmentationVector({1, 0, 0}), SegmentationVector({1, 0, 0}), 3); }) ==
          ErrorCode::DegenerateWindow);
    CHECK(code_of([] { window_diff(SegmentationVector({1}), SegmentationVector({1})); }) ==
          ErrorCode::DegenerateWindow);
}

TEST_CASE("default window size is half the mean reference segment length") {
    CHECK(default_window_size(SegmentationVector({1, 0, 0, 0, 1, 0, 0, 0})) == 2);  // 8 / 4
    CHECK(default_window_size(SegmentationVector({1, 0, 0, 0, 0, 0, 0, 0})) == 4);
    CHECK(default_window_size(SegmentationVector({1, 1, 1, 1})) == 1);                // 0.5 -> 1
    CHECK(default_window_size(SegmentationVector({1, 0})) == 1);
    CHECK(default_window_size(SegmentationVector({1, 0, 0, 1, 0, 0})) == 2);          // 1.5 rounds up
}

TEST_CASE("window_diff agrees with probe enumeration, is symmetric and bounded") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng() % 63;
        const auto ref = testing::random_segmentation(n, rng, 0.05 + 0.4 * (rng() % 100) / 100.0);
        const auto hyp = testing::random_segmentation(n, rng, 0.05 + 0.4 * (rng() % 100) / 100.0);
        const std::size_t k = 1 + rng() % (n - 1);
        const double wd = window_diff(ref, hyp, k);
        CHECK(wd == window_diff_oracle(ref, hyp, k));
        CHECK(wd == window_diff(hyp, ref, k));
        CHECK(window_diff(ref, ref, k) == 0.0);
        CHECK(wd >= 0.0);
        CHECK(wd <= 1.0);
        CHECK(window_diff(ref, hyp) == window_diff_oracle(ref, hyp, default_window_size(ref)));
    }
}

TEST_CASE("transferability") {
    CHECK(transferability({{0.3}}) == std::vector<double>{0.3});
    CHECK(transferability({{0.1, 0.2, 0.3}})[0] == doctest::Approx(0.2));
    const auto t = transferability({{0.0, 0.1, 0.2, 0.3, 0.4, 0.5}, {0.6, 0.6, 0.6, 0.6, 0.6, 0.6}});
    CHECK(t[0] == doctest::Approx(0.25));
    CHECK(t[1] == doctest::Approx(0.6));
    CHECK(code_of([] { transferability({}); }) == ErrorCode::EmptyGrid);
    CHECK(code_of([] { transferability({{0.1, 0.2}, {0.3}}); }) == ErrorCode::EmptyGrid);
}

TEST_CASE("accumulator averages flat errors and per-sample WindowDiff") {
    MetricAccumulator acc;
    const SegmentationVector ref({1, 0, 0, 0});
    acc.add(std::vector<double>{1, 0, 0, 0}, std::vector<double>{1, 0, 0, 0}, ref, ref);
    acc.add(std::vector<double>{1, 1}, std::vector<double>{1, 0}, SegmentationVector({1, 0}),
            SegmentationVector({1, 1}));
    const MetricReport r = acc.report();
    CHECK(r.n == 2);
    CHECK(r.mse == doctest::Approx(1.0 / 6.0));
    CHECK(r.mae == doctest::Approx(1.0 / 6.0));
    CHECK(r.wd == doctest::Approx(0.5));

    MetricAccumulator single;
    single.add(std::vector<double>{1}, std::vector<double>{1}, SegmentationVector({1}), SegmentationVector({1}));
    CHECK(single.report().wd == 0.0);
}

}  // TEST_SUITE
