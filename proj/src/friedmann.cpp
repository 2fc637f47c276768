#include "frv/friedmann.hpp"

#include "frv/error.hpp"
#include "frv/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace frv {

void CosmologyConfig::validate() const {
    if (!(H0 > 0.0) || !std::isfinite(H0)) fail(ErrorCode::InvalidArgument, "H0 must be positive");
    if (!(Omega0 >= 0.0) || !std::isfinite(Omega0))
        fail(ErrorCode::InvalidArgument, "Omega0 must be non-negative");
    if (!std::isfinite(OmegaLambda0)) fail(ErrorCode::InvalidArgument, "OmegaLambda0 must be finite");
    const double ok = OmegaK0();
    switch (k) {
    case Curvature::Flat:
        if (!(std::abs(ok) < 1e-12))
            fail(ErrorCode::InvalidArgument, "k = flat requires Omega0 + OmegaLambda0 = 1");
        break;
    case Curvature::Open:
        if (!(ok > 0.0)) fail(ErrorCode::InvalidArgument, "k = open requires Omega0 + OmegaLambda0 < 1");
        break;
    case Curvature::Closed:
        if (!(ok < 0.0)) fail(ErrorCode::InvalidArgument, "k = closed requires Omega0 + OmegaLambda0 > 1");
        break;
    }
}

CosmologyConfig CosmologyConfig::make(double H0, double Omega0, double OmegaLambda0,
                                      std::optional<Curvature> k) {
    CosmologyConfig cfg{H0, Omega0, OmegaLambda0, Curvature::Flat};
    if (k) {
        cfg.k = *k;
    } else {
        const double ok = cfg.OmegaK0();
        cfg.k = std::abs(ok) < 1e-12 ? Curvature::Flat : (ok > 0.0 ? Curvature::Open : Curvature::Closed);
    }
    cfg.validate();
    return cfg;
}

double reduced_bracket(double a, const CosmologyConfig& cfg) noexcept {
    return 1.0 + cfg.Omega0 * (1.0 / a - 1.0) + cfg.OmegaLambda0 * (a * a - 1.0);
}

double rhs_reduced(double a, const CosmologyConfig& cfg) {
    if (!(a > 0.0)) fail(ErrorCode::InvalidArgument, "rhs_reduced: a must be positive");
    const double b = reduced_bracket(a, cfg);
    if (b < 0.0) fail(ErrorCode::TurningPoint, "expansion rate vanishes: turning point in the model");
    return cfg.H0 * std::sqrt(b);
}

TrajectoryRow make_row(const CosmologyConfig& cfg, double t, double a, double a_dot) {
    TrajectoryRow r{};
    r.t = t;
    r.a = a;
    r.a_dot = a_dot;
    r.H = a_dot / a;
    const double h2 = cfg.H0 * cfg.H0 / (r.H * r.H);
    const double a3 = a * a * a;
    r.Omega = cfg.Omega0 * h2 / a3;
    r.OmegaLambda = cfg.OmegaLambda0 * h2;
    r.OmegaK = cfg.OmegaK0() * h2 / (a * a);
    r.q = (0.5 * cfg.Omega0 / a3 - cfg.OmegaLambda0) * h2;
    return r;
}

namespace {

constexpr double kSplit = 1e-2; // below this the a = s² Gauss rule takes over

// ∫_0^{a} da/ȧ with a = s²: 2s²/(H0·√(Ω0 + ΩK s² + ΩΛ s⁶)), regular at s = 0.
double early_time(double a, const CosmologyConfig& cfg) {
    const double ok = cfg.OmegaK0();
    auto integrand = [&](double s) {
        const double s2 = s * s;
        const double rad = cfg.Omega0 + ok * s2 + cfg.OmegaLambda0 * s2 * s2 * s2;
        if (!(rad > 0.0)) fail(ErrorCode::TurningPoint, "expansion rate vanishes before a_init");
        return 2.0 * s2 / (cfg.H0 * std::sqrt(rad));
    };
    return num::gauss_legendre(integrand, 0.0, std::sqrt(a), 20, 8);
}

double elapsed(double a_lo, double a_hi, const CosmologyConfig& cfg) {
    if (a_hi <= a_lo) return 0.0;
    auto integrand = [&](double ln_a) {
        const double a = std::exp(ln_a);
        return a / rhs_reduced(a, cfg);
    };
    return num::integrate_adaptive(integrand, std::log(a_lo), std::log(a_hi), 0.0, 1e-13).value;
}

void check_no_turning_point(const CosmologyConfig& cfg, double a_lo, double a_hi) {
    std::vector<double> probe{a_lo, a_hi};
    if (cfg.OmegaLambda0 > 0.0 && cfg.Omega0 > 0.0) {
        const double a_star = std::cbrt(cfg.Omega0 / (2.0 * cfg.OmegaLambda0));
        if (a_star > a_lo && a_star < a_hi) probe.push_back(a_star);
    }
    for (double a : probe)
        if (!(reduced_bracket(a, cfg) > 0.0))
            fail(ErrorCode::TurningPoint, "expansion rate vanishes inside [a_init, a_final]");
}

} // namespace

double cosmic_time(double a, const CosmologyConfig& cfg) {
    if (!(cfg.Omega0 > 0.0))
        fail(ErrorCode::DomainError, "cosmic time from a = 0 needs Omega0 > 0");
    if (!(a > 0.0) || !std::isfinite(a)) fail(ErrorCode::InvalidArgument, "a must be positive");
    const double a_early = std::min(a, kSplit);
    check_no_turning_point(cfg, a_early, std::max(a, a_early * (1.0 + 1e-15)));
    return early_time(a_early, cfg) + elapsed(a_early, a, cfg);
}

Trajectory integrate(const CosmologyConfig& cfg, double a_init, double a_final,
                     std::size_t n_points, const IntegrateOptions& opts) {
    cfg.validate();
    if (!(a_init > 0.0) || !(a_final > a_init) || !std::isfinite(a_final))
        fail(ErrorCode::InvalidArgument, "integrate: need 0 < a_init < a_final");
    if (n_points < 2) fail(ErrorCode::InvalidArgument, "integrate: need n_points >= 2");
    check_no_turning_point(cfg, a_init, a_final);

    const double t_init = cosmic_time(a_init, cfg);
    const double t_final = t_init + elapsed(a_init, a_final, cfg);
    const std::vector<double> t = log_grid(t_init, t_final, n_points);
    std::vector<double> tau(t.size());
    std::transform(t.begin(), t.end(), tau.begin(), [](double x) { return std::log(x); });

    // d ln a / d ln t = t·ȧ/a
    auto rhs = [&](double ln_t, double ln_a) {
        const double a = std::exp(ln_a);
        return std::exp(ln_t) * rhs_reduced(a, cfg) / a;
    };
    num::OdeOptions ode;
    ode.rel_tol = opts.rel_tol;
    ode.abs_tol = opts.abs_tol;
    const auto ln_a = num::dormand_prince(rhs, tau.front(), std::log(a_init),
                                          std::span(tau).subspan(1), ode);

    Trajectory traj;
    traj.rows.reserve(t.size());
    traj.rows.push_back(make_row(cfg, t[0], a_init, rhs_reduced(a_init, cfg)));
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double a = std::exp(ln_a[i - 1]);
        traj.rows.push_back(make_row(cfg, t[i], a, rhs_reduced(a, cfg)));
    }
    return traj;
}

double residual_check(const Trajectory& traj, const CosmologyConfig& cfg) {
    double worst = 0.0;
    const double h2 = cfg.H0 * cfg.H0;
    for (const auto& r : traj.rows) {
        const double rhs = h2 * reduced_bracket(r.a, cfg);
        worst = std::max(worst, std::abs(r.a_dot * r.a_dot - rhs) / h2);
    }
    return worst;
}

double cpt_identity_residual(const Trajectory& traj, Curvature k) {
    double worst = 0.0;
    for (const auto& r : traj.rows) {
        double F;
        // Ω = 1 up to rounding (matter-only rows): F takes its limit 2/3.
        if (r.Omega >= 1.0 && r.Omega <= 1.0 + 1e-12) F = 2.0 / 3.0;
        else F = f_omega(r.Omega, k);
        worst = std::max(worst, std::abs(r.H * r.t - F));
    }
    return worst;
}

void write_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,a,a_dot,H,Omega,OmegaLambda,OmegaK,q\n";
    for (const auto& r : traj.rows) {
        out << format_double(r.t) << ',' << format_double(r.a) << ',' << format_double(r.a_dot) << ','
            << format_double(r.H) << ',' << format_double(r.Omega) << ','
            << format_double(r.OmegaLambda) << ',' << format_double(r.OmegaK) << ','
            << format_double(r.q) << '\n';
    }
}

} // namespace frv
