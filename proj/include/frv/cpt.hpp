#pragma once

// Carroll-Press-Turner age function F(Ω) = H·t for flat (matter + Λ) and
// open (matter) universes, and the quantities derived from it.

#include "frv/series.hpp"

#include <string_view>

namespace frv {

enum class Curvature { Flat, Open, Closed };

std::string_view to_string(Curvature k) noexcept;
/// Accepts flat/open/closed (any case) or 0/-1/1.
Curvature parse_curvature(std::string_view text);

/// F(Ω) for 0 < Ω < 1. DomainError outside (0, 1) or for CLOSED.
double f_omega(double omega, Curvature k);

/// Ω with F(Ω) = target. OutOfRange outside (2/3, ∞) for FLAT and
/// (2/3, 1) for OPEN.
double f_omega_inverse(double target, Curvature k);

/// μ = (Ω/2)·F(Ω)².
double mu_of_omega(double omega, Curvature k);

/// Deceleration parameter of the matter + Λ model.
constexpr double q_of(double omega, double omega_lambda) noexcept {
    return 0.5 * omega - omega_lambda;
}

/// a(t) = a0·exp ∫_{t0}^{t} F(Ω(u))/u du, trapezoid in ln t.
SampledFunction reconstruct_a(const SampledFunction& omega_track, Curvature k, double t0, double a0);

} // namespace frv
