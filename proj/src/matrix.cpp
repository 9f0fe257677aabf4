#include "cosenet/matrix.hpp"

#include <cmath>
#include <sstream>

#include "cosenet/error.hpp"

namespace cosenet {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
        case ErrorCode::Asymmetric: return "Asymmetric";
        case ErrorCode::InvalidThroughput: return "InvalidThroughput";
        case ErrorCode::LayoutMismatch: return "LayoutMismatch";
        case ErrorCode::ParamConstraintViolated: return "ParamConstraintViolated";
        case ErrorCode::InputOutOfRange: return "InputOutOfRange";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::FormatVersionMismatch: return "FormatVersionMismatch";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::DegenerateWindow: return "DegenerateWindow";
        case ErrorCode::EmptyGrid: return "EmptyGrid";
        case ErrorCode::MissingModel: return "MissingModel";
        case ErrorCode::NoCandidates: return "NoCandidates";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

SegmentationVector::SegmentationVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "segmentation vector must not be empty");
    }
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] > 1) {
            throw Error(ErrorCode::InvalidArgument,
                        "segmentation bit " + std::to_string(i) + " is not binary");
        }
    }
    if (bits_[0] != 1) {
        throw Error(ErrorCode::InvalidArgument, "segmentation bit 0 must be 1");
    }
}

SegmentationVector SegmentationVector::with_forced_start(std::vector<std::uint8_t> bits) {
    if (!bits.empty()) bits[0] = 1;
    return SegmentationVector(std::move(bits));
}

std::size_t SegmentationVector::group_count() const noexcept {
    std::size_t n = 0;
    for (auto b : bits_) n += b;
    return n;
}

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "probability vector must not be empty");
    }
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (!(probs_[i] >= 0.0 && probs_[i] <= 1.0)) {
            throw Error(ErrorCode::InvalidArgument,
                        "probability " + std::to_string(i) + " outside [0,1]");
        }
    }
}

CorrelationMatrix validate_matrix(Matrix raw) {
    if (raw.rows() != raw.cols() || raw.rows() == 0) {
        std::ostringstream msg;
        msg << "matrix is " << raw.rows() << "x" << raw.cols() << ", expected non-empty square";
        throw Error(ErrorCode::NotSquare, msg.str());
    }
    const Eigen::Index n = raw.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double v = raw(i, j);
            if (!(v >= 0.0 && v <= 1.0)) {
                std::ostringstream msg;
                msg << "entry (" << i << "," << j << ") = " << v << " outside [0,1]";
                throw Error(ErrorCode::ValueOutOfRange, msg.str());
            }
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (std::abs(raw(i, j) - raw(j, i)) > kSymmetryTolerance) {
                std::ostringstream msg;
                msg << "entries (" << i << "," << j << ") = " << raw(i, j) << " and (" << j << ","
                    << i << ") = " << raw(j, i) << " differ by more than " << kSymmetryTolerance;
                throw Error(ErrorCode::Asymmetric, msg.str());
            }
        }
    }
    return CorrelationMatrix(std::move(raw));
}

Matrix segmentation_to_blocks(const SegmentationVector& seg) {
    const auto starts = group_starts(seg);
    const auto n = static_cast<Eigen::Index>(seg.length());
    Matrix out = Matrix::Zero(n, n);
    for (std::size_t g = 0; g < starts.size(); ++g) {
        const auto begin = static_cast<Eigen::Index>(starts[g]);
        const auto end = g + 1 < starts.size() ? static_cast<Eigen::Index>(starts[g + 1]) : n;
        out.block(begin, begin, end - begin, end - begin).setOnes();
    }
    return out;
}

std::vector<std::size_t> group_starts(const SegmentationVector& seg) {
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < seg.length(); ++i) {
        if (seg[i]) starts.push_back(i);
    }
    return starts;
}

}  // namespace cosenet
