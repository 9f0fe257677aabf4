#pragma once

#include "cosenet/matrix.hpp"

namespace cosenet {

/// Weights of the linear+sigmoid rescaling blend.
///
/// Valid when a, b >= 0, a + b <= 1 and omega in [0,1].
struct ScalingParams {
    double a = 1.0;
    double b = 0.0;
    double omega = 0.0;

    static ScalingParams identity() { return {1.0, 0.0, 0.0}; }
    bool valid() const noexcept;
    void check() const;

    friend bool operator==(const ScalingParams&, const ScalingParams&) = default;
};

/// a*r + b*sigmoid(50*omega*(r - 0.5)) + (1 - a - b)/2.
///
/// Fixed point at r = 0.5 for every valid parameter set; non-decreasing in r.
double rescale_value(double r, const ScalingParams& p);

Matrix rescale_matrix(const Matrix& m, const ScalingParams& p);

}  // namespace cosenet
