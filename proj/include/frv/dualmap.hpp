#pragma once

// Dual-universe map w ↦ (1 - w)/(1 + 3w), which swaps the characteristic
// roots α ↔ β at fixed Γ.

namespace frv {

struct DualPair {
    double w_alpha = 0.0;
    double w_beta = 0.0;
    double gamma = 0.0;
    double alpha = 0.0; // 2/(3(1 + w_alpha)): our scale-factor exponent
    double beta = 0.0;  // 2/(3(1 + w_beta)): dual exponent, H_β ~ β/t
    double dual_hubble_coeff = 0.0;
};

/// Pole within 1e-9 of w = -1/3; w = -1 maps to itself.
double dual_w(double w);

/// Singular at w = -1, Pole at w = -1/3.
DualPair dual_params(double w);

/// |w_α + w_β + 3 w_α w_β - 1|.
double symmetric_identity_residual(double w_alpha, double w_beta) noexcept;

} // namespace frv
