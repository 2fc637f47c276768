#pragma once

// The Γ functional M(μ) = lim x∫_x^∞ μ(t)/t² dt, characteristic roots of
// x² - x + Γ = 0 and the fundamental solution pairs built from them.

#include "frv/rvcore.hpp"
#include "frv/series.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace frv {

enum class GammaRegime { Regular, Critical, Oscillatory, Divergent };
std::string_view to_string(GammaRegime regime) noexcept;

struct GammaResult {
    double gamma = 0.0;
    bool converged = false;
    bool extrapolated = false;
    std::vector<double> schedule;
    std::vector<double> diagnostics; // raw estimates, one per schedule point
    std::optional<std::pair<double, double>> roots;
    GammaRegime regime = GammaRegime::Divergent;
};

struct GammaOptions {
    double cauchy_tol = 1e-5;
    double critical_tol = 1e-9;
    double cutoff_ratio = 100.0; // X = cutoff_ratio·x
};

/// x_k = 10·2^k, k = 0..12.
std::vector<double> default_schedule();

GammaResult m_functional(const std::function<double(double)>& mu, const std::vector<double>& schedule,
                         const GammaOptions& opts = {});
/// μ sampled on a grid covering [x_0, cutoff·x_last]; piecewise linear in ln t.
GammaResult m_functional(const Series& mu, const std::vector<double>& schedule,
                         const GammaOptions& opts = {});

struct EosParams {
    double w = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;
};

/// α = 2/(3(1+w)), Γ = (2/9)(1+3w)/(1+w)². Singular at w = -1.
EosParams gamma_of_w(double w);

/// (α, β) with α ≤ β, α + β = 1, αβ = Γ. Complex if Γ > 1/4.
std::pair<double, double> char_roots(double gamma);

/// y1 = t^α·L1, y2 = t^β/((1-2α)·L1).
std::pair<SampledFunction, SampledFunction> fundamental_pair(double gamma, const SampledFunction& L1,
                                                             const RvOptions& rv = {});

/// μ_Λ(t) = μ(t) - Λt²/3.
Series mu_lambda(const Series& mu, double lambda_const);

/// μ = -t²ä/a from a sampled scale factor, via log-derivatives:
/// φ = ln a, ' = d/d ln t, μ = φ' - φ'² - φ''.
Series acceleration_coefficient(const SampledFunction& a);

} // namespace frv
