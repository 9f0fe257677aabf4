#include "cosenet/formatting.hpp"

#include <string>

#include "cosenet/error.hpp"

namespace cosenet {

WindowLayout compute_layout(std::size_t m_in, std::size_t t) {
    if (t < 2 || t % 2 != 0) {
        throw Error(ErrorCode::InvalidThroughput,
                    "throughput must be even and >= 2, got " + std::to_string(t));
    }
    if (m_in == 0) {
        throw Error(ErrorCode::InvalidArgument, "input size must be positive");
    }
    WindowLayout layout;
    layout.m_in = m_in;
    layout.throughput = t;
    // ceil(2 m / t) - 1 windows when the input spans at least one window.
    layout.v = m_in >= t ? (2 * m_in + t - 1) / t - 1 : 1;
    layout.m0 = t * (layout.v + 1) / 2;
    return layout;
}

Matrix identity_pad(const Matrix& m, const WindowLayout& layout) {
    const auto n = static_cast<std::size_t>(m.rows());
    if (m.rows() != m.cols() || n != layout.m_in) {
        throw Error(ErrorCode::LayoutMismatch, "matrix size " + std::to_string(n) +
                                                   " does not match layout input size " +
                                                   std::to_string(layout.m_in));
    }
    const auto m0 = static_cast<Eigen::Index>(layout.m0);
    Matrix padded = Matrix::Identity(m0, m0);
    padded.topLeftCorner(m.rows(), m.cols()) = m;
    return padded;
}

WindowBatch wocd_split(const Matrix& padded, const WindowLayout& layout) {
    if (padded.rows() != padded.cols() || static_cast<std::size_t>(padded.rows()) != layout.m0) {
        throw Error(ErrorCode::LayoutMismatch, "padded matrix size does not match layout");
    }
    const auto t = static_cast<Eigen::Index>(layout.throughput);
    WindowBatch batch{layout, {}};
    batch.windows.reserve(layout.v);
    for (std::size_t i = 0; i < layout.v; ++i) {
        const auto s = static_cast<Eigen::Index>(layout.window_start(i));
        batch.windows.emplace_back(padded.block(s, s, t, t));
    }
    return batch;
}

SegmentationVector trim_segmentation(const SegmentationVector& s0, const WindowLayout& layout) {
    if (s0.length() != layout.m0) {
        throw Error(ErrorCode::LayoutMismatch, "segmentation length " + std::to_string(s0.length()) +
                                                   " does not match padded size " +
                                                   std::to_string(layout.m0));
    }
    std::vector<std::uint8_t> bits(s0.bits().begin(),
                                   s0.bits().begin() + static_cast<std::ptrdiff_t>(layout.m_in));
    return SegmentationVector::with_forced_start(std::move(bits));
}

}  // namespace cosenet
