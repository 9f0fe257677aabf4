#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace cosenet {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

inline constexpr double kSymmetryTolerance = 1e-6;

/// Square, symmetric matrix of correlation values in [0,1].
///
/// Only constructible through validate_matrix(), so every instance holds the
/// invariants.
class CorrelationMatrix {
public:
    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    const Matrix& values() const noexcept { return values_; }
    double operator()(std::size_t i, std::size_t j) const {
        return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

private:
    friend CorrelationMatrix validate_matrix(Matrix raw);
    explicit CorrelationMatrix(Matrix values) : values_(std::move(values)) {}

    Matrix values_;
};

/// Binary vector, 1 marks the first element of each contiguous group. Bit 0
/// is always 1.
class SegmentationVector {
public:
    /// Throws InvalidArgument when bits is empty, holds a value other than
    /// 0/1, or bits[0] != 1.
    explicit SegmentationVector(std::vector<std::uint8_t> bits);

    /// Builds from arbitrary 0/1 bits, forcing bit 0 to 1.
    static SegmentationVector with_forced_start(std::vector<std::uint8_t> bits);

    std::size_t length() const noexcept { return bits_.size(); }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    std::size_t group_count() const noexcept;

    friend bool operator==(const SegmentationVector&, const SegmentationVector&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Per-index boundary probabilities, each in [0,1].
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> probs);

    std::size_t length() const noexcept { return probs_.size(); }
    const std::vector<double>& probs() const noexcept { return probs_; }
    double operator[](std::size_t i) const { return probs_[i]; }

private:
    std::vector<double> probs_;
};

CorrelationMatrix validate_matrix(Matrix raw);

/// Binary matrix with out(i,j) = 1 iff i and j belong to the same group.
Matrix segmentation_to_blocks(const SegmentationVector& seg);

std::vector<std::size_t> group_starts(const SegmentationVector& seg);

}  // namespace cosenet
