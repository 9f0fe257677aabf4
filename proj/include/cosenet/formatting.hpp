#pragma once

#include <cstddef>
#include <vector>

#include "cosenet/matrix.hpp"

namespace cosenet {

/// Geometry of the overlapping window split for one input size and throughput.
///
/// Window i covers global indices [i*T/2, i*T/2 + T). The padded size m0 is
/// the smallest size for which the last window ends exactly at m0, and never
/// less than T.
struct WindowLayout {
    std::size_t m_in = 0;
    std::size_t throughput = 0;
    std::size_t v = 0;
    std::size_t m0 = 0;

    std::size_t stride() const noexcept { return throughput / 2; }
    std::size_t window_start(std::size_t i) const noexcept { return i * stride(); }

    friend bool operator==(const WindowLayout&, const WindowLayout&) = default;
};

struct WindowBatch {
    WindowLayout layout;
    std::vector<Matrix> windows;
};

/// Throws InvalidThroughput for odd t or t < 2, InvalidArgument for m_in == 0.
WindowLayout compute_layout(std::size_t m_in, std::size_t t);

/// Embeds m into an m0 x m0 matrix: zeros off-diagonal, ones on the diagonal
/// of the extension.
Matrix identity_pad(const Matrix& m, const WindowLayout& layout);
inline Matrix identity_pad(const CorrelationMatrix& r, const WindowLayout& layout) {
    return identity_pad(r.values(), layout);
}

WindowBatch wocd_split(const Matrix& padded, const WindowLayout& layout);

SegmentationVector trim_segmentation(const SegmentationVector& s0, const WindowLayout& layout);

}  // namespace cosenet
