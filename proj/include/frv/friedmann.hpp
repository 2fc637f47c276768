#pragma once

// Matter + Λ Friedmann background: ȧ²/H0² = 1 + Ω0(1/a - 1) + ΩΛ0(a² - 1).

#include "frv/cpt.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace frv {

struct CosmologyConfig {
    double H0 = 1.0;
    double Omega0 = 0.3;
    double OmegaLambda0 = 0.7;
    Curvature k = Curvature::Flat;

    double OmegaK0() const noexcept { return 1.0 - Omega0 - OmegaLambda0; }
    double Lambda() const noexcept { return 3.0 * OmegaLambda0 * H0 * H0; }

    /// Throws InvalidArgument when k disagrees with the sign of OmegaK0.
    void validate() const;

    /// Config with k inferred from OmegaK0 when not given.
    static CosmologyConfig make(double H0, double Omega0, double OmegaLambda0,
                                std::optional<Curvature> k = std::nullopt);
};

struct TrajectoryRow {
    double t, a, a_dot, H, Omega, OmegaLambda, OmegaK, q;
};

struct Trajectory {
    std::vector<TrajectoryRow> rows;
};

/// Bracket 1 + Ω0(1/a - 1) + ΩΛ0(a² - 1) of the reduced equation.
double reduced_bracket(double a, const CosmologyConfig& cfg) noexcept;

/// ȧ on the expanding branch. TurningPoint if the bracket is negative.
double rhs_reduced(double a, const CosmologyConfig& cfg);

/// Row with all derived columns filled from (t, a, ȧ).
TrajectoryRow make_row(const CosmologyConfig& cfg, double t, double a, double a_dot);

/// Cosmic time since a = 0 at which the scale factor reaches a.
double cosmic_time(double a, const CosmologyConfig& cfg);

struct IntegrateOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
};

/// Integrates from a_init to a_final; output on n_points log-uniform in t.
Trajectory integrate(const CosmologyConfig& cfg, double a_init, double a_final,
                     std::size_t n_points, const IntegrateOptions& opts = {});

/// max |ȧ² - H0²(1 + Ω0(1/a - 1) + ΩΛ0(a² - 1))| / H0² over rows.
double residual_check(const Trajectory& traj, const CosmologyConfig& cfg);

/// max |H·t - F(Ω)| over rows. DomainError if Ω leaves (0, 1].
double cpt_identity_residual(const Trajectory& traj, Curvature k);

/// CSV `t,a,a_dot,H,Omega,OmegaLambda,OmegaK,q`.
void write_csv(std::ostream& out, const Trajectory& traj);

} // namespace frv
