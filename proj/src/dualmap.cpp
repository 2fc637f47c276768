#include "frv/dualmap.hpp"

#include "frv/error.hpp"
#include "frv/gammafun.hpp"

#include <cmath>

namespace frv {

double dual_w(double w) {
    if (!std::isfinite(w)) fail(ErrorCode::InvalidArgument, "w must be finite");
    if (std::abs(w + 1.0 / 3.0) < 1e-9) fail(ErrorCode::Pole, "pole at w = -1/3");
    if (w == -1.0) return -1.0;
    return (1.0 - w) / (1.0 + 3.0 * w);
}

DualPair dual_params(double w) {
    if (w == -1.0) fail(ErrorCode::Singular, "w = -1: alpha, beta and Gamma are undefined");
    DualPair p;
    p.w_alpha = w;
    p.w_beta = dual_w(w);
    const EosParams eos = gamma_of_w(w);
    p.gamma = eos.gamma;
    p.alpha = eos.alpha;
    p.beta = 2.0 / (3.0 * (1.0 + p.w_beta));
    p.dual_hubble_coeff = p.beta;
    return p;
}

double symmetric_identity_residual(double w_alpha, double w_beta) noexcept {
    return std::abs(w_alpha + w_beta + 3.0 * w_alpha * w_beta - 1.0);
}

} // namespace frv
