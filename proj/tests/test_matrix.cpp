#include <doctest.h>

#include <random>

#include "cosenet/error.hpp"
#include "cosenet/matrix.hpp"
#include "support.hpp"

using namespace cosenet;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an exception");
    return ErrorCode::InvalidArgument;
}

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("validate_matrix accepts identity and rejects malformed input") {
    const auto id = validate_matrix(Matrix::Identity(2, 2));
    CHECK(id.size() == 2);

    CHECK(code_of([] { validate_matrix(mat({{1, 0.5}, {0.4, 1}})); }) == ErrorCode::Asymmetric);
    CHECK(code_of([] { validate_matrix(mat({{1, 1.2}, {1.2, 1}})); }) == ErrorCode::ValueOutOfRange);
    CHECK(code_of([] { validate_matrix(Matrix::Zero(2, 3)); }) == ErrorCode::NotSquare);
    CHECK(code_of([] { validate_matrix(mat({{1, -0.1}, {-0.1, 1}})); }) == ErrorCode::ValueOutOfRange);
}

TEST_CASE("symmetry tolerance is 1e-6") {
    CHECK_NOTHROW(validate_matrix(mat({{1, 0.5}, {0.5 + 0.9e-6, 1}})));
    CHECK(code_of([] { validate_matrix(mat({{1, 0.5}, {0.5 + 1.1e-6, 1}})); }) == ErrorCode::Asymmetric);
}

TEST_CASE("asymmetry error names the offending indices") {
    Matrix m = Matrix::Identity(4, 4);
    m(1, 3) = 0.7;
    try {
        validate_matrix(m);
        FAIL("expected Asymmetric");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("(1,3)") != std::string::npos);
    }
}

TEST_CASE("segmentation vector invariants") {
    CHECK_THROWS_AS(SegmentationVector({0, 1}), Error);
    CHECK_THROWS_AS(SegmentationVector({}), Error);
    CHECK_THROWS_AS(SegmentationVector({1, 2}), Error);
    CHECK(SegmentationVector::with_forced_start({0, 0, 1}).bits() == std::vector<std::uint8_t>{1, 0, 1});
    CHECK(SegmentationVector({1, 0, 1, 1}).group_count() == 3);
}

TEST_CASE("segmentation_to_blocks") {
    SUBCASE("two groups of four") {
        const Matrix b = segmentation_to_blocks(SegmentationVector({1, 0, 0, 0, 1, 0, 0, 0}));
        Matrix expected = Matrix::Zero(8, 8);
        expected.block(0, 0, 4, 4).setOnes();
        expected.block(4, 4, 4, 4).setOnes();
        CHECK(b == expected);
    }
    SUBCASE("all boundaries is identity") {
        CHECK(segmentation_to_blocks(SegmentationVector({1, 1, 1})) == Matrix::Identity(3, 3));
    }
    SUBCASE("single group is all ones") {
        CHECK(segmentation_to_blocks(SegmentationVector({1, 0, 0})) == Matrix::Ones(3, 3));
    }
}

TEST_CASE("group_starts") {
    CHECK(group_starts(SegmentationVector({1, 0, 0, 1, 0})) == std::vector<std::size_t>{0, 3});
    CHECK(group_starts(SegmentationVector({1})) == std::vector<std::size_t>{0});
    CHECK(group_starts(SegmentationVector({1, 1, 1, 1})) == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("block matrix round-trips through group-start read-off") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 64;
        const auto seg = testing::random_segmentation(n, rng);
        const Matrix b = segmentation_to_blocks(seg);

        // Symmetric, binary, unit diagonal.
        CHECK(b == b.transpose());
        CHECK(b.diagonal() == Vector::Ones(static_cast<Eigen::Index>(n)));
        CHECK(((b.array() == 0.0) || (b.array() == 1.0)).all());

        // A group starts wherever the element is unrelated to its predecessor.
        std::vector<std::uint8_t> bits(n, 0);
        bits[0] = 1;
        for (std::size_t i = 1; i < n; ++i) {
            bits[i] = b(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(i)) == 0.0;
        }
        CHECK(SegmentationVector(bits) == seg);

        // 1-regions are exactly the contiguous diagonal squares.
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                bool same = true;
                for (std::size_t k = std::min(i, j) + 1; k <= std::max(i, j); ++k) same &= seg[k] == 0;
                REQUIRE(b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == (same ? 1.0 : 0.0));
            }
        }
    }
}

}  // TEST_SUITE
