#include "cosenet/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cosenet/error.hpp"

namespace cosenet {

bool ScalingParams::valid() const noexcept {
    return a >= 0.0 && b >= 0.0 && a + b <= 1.0 && omega >= 0.0 && omega <= 1.0;
}

void ScalingParams::check() const {
    if (!valid()) {
        std::ostringstream msg;
        msg << "scaling params (a=" << a << ", b=" << b << ", omega=" << omega
            << ") violate 0 <= a, b; a + b <= 1; 0 <= omega <= 1";
        throw Error(ErrorCode::ParamConstraintViolated, msg.str());
    }
}

namespace {

double rescale_unchecked(double r, const ScalingParams& p) {
    const double sigmoid = 1.0 / (1.0 + std::exp(p.omega * (25.0 - 50.0 * r)));
    const double out = p.a * r + p.b * sigmoid + (1.0 - p.a - p.b) / 2.0;
    // Rounding can push a + b = 1 blends a hair outside the unit interval.
    return std::clamp(out, 0.0, 1.0);
}

}  // namespace

double rescale_value(double r, const ScalingParams& p) {
    p.check();
    if (!(r >= 0.0 && r <= 1.0)) {
        throw Error(ErrorCode::InputOutOfRange, "rescale input outside [0,1]");
    }
    return rescale_unchecked(r, p);
}

Matrix rescale_matrix(const Matrix& m, const ScalingParams& p) {
    p.check();
    if (m.size() > 0 && !(m.minCoeff() >= 0.0 && m.maxCoeff() <= 1.0)) {
        throw Error(ErrorCode::InputOutOfRange, "rescale input outside [0,1]");
    }
    return m.unaryExpr([&p](double r) { return rescale_unchecked(r, p); });
}

}  // namespace cosenet
