#include "frv/oscillate.hpp"

#include "frv/error.hpp"
#include "frv/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace frv {

Phase log_phase() {
    return {[](double t) { return std::log(t); }, [](double t) { return 1.0 / t; },
            [](double t) { return -1.0 / (t * t); }};
}

Phase linear_phase(double omega) {
    return {[omega](double t) { return omega * t; }, [omega](double) { return omega; },
            [](double) { return 0.0; }};
}

Phase constant_phase(double value) {
    return {[value](double) { return value; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
}

Phase spline_phase(const Series& u_track) {
    auto spline = std::make_shared<const num::CubicSpline>(
        std::vector<double>(u_track.grid().begin(), u_track.grid().end()),
        std::vector<double>(u_track.values().begin(), u_track.values().end()));
    return {[spline](double t) { return (*spline)(t); },
            [spline](double t) { return spline->derivative(t); },
            [spline](double t) { return spline->second_derivative(t); }};
}

void OscillationModel::validate() const {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !(alpha < beta))
        fail(ErrorCode::InvalidArgument, "oscillation model needs finite alpha < beta");
    if (!(t0 > 0.0) || !std::isfinite(t0)) fail(ErrorCode::InvalidArgument, "t0 must be positive");
    if (!phase.u) fail(ErrorCode::InvalidArgument, "oscillation model has no phase function");
}

namespace {

void check_grid(const OscillationModel& model, const std::vector<double>& grid) {
    model.validate();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= model.t0) || !std::isfinite(grid[i]))
            fail(ErrorCode::InvalidArgument, "grid points must be finite and >= t0");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            fail(ErrorCode::InvalidArgument, "grid must be strictly increasing");
    }
}

} // namespace

FitU fit_u(const SampledFunction& g, const SampledFunction& h, const SampledFunction& f) {
    const std::size_t n = f.size();
    if (g.size() != n || h.size() != n)
        fail(ErrorCode::InvalidArgument, "fit_u: inputs must share a grid");
    for (std::size_t i = 0; i < n; ++i)
        if (g.t(i) != f.t(i) || h.t(i) != f.t(i))
            fail(ErrorCode::InvalidArgument, "fit_u: inputs must share a grid");
    FitU out;
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double gi = g.value(i), hi = h.value(i), fi = f.value(i);
        const double width = hi - gi;
        if (!(width >= 1e-300)) fail(ErrorCode::DegenerateBounds, "fit_u: need g < h strictly");
        const double slack = 1e-12 * width;
        if (fi < gi - slack || fi > hi + slack)
            fail(ErrorCode::BoundViolation, "fit_u: f leaves [g, h]");
        // Exact at f = g (ratio 1) and f = h (ratio -1).
        const double ratio = std::clamp(((hi - fi) - (fi - gi)) / width, -1.0, 1.0);
        u[i] = 0.5 * std::acos(ratio);
        const double c = std::cos(u[i]), s = std::sin(u[i]);
        out.max_residual = std::max(out.max_residual, std::abs(gi * c * c + hi * s * s - fi) / hi);
    }
    out.u = Series(std::vector<double>(f.grid().begin(), f.grid().end()), std::move(u));
    return out;
}

SampledFunction synth_a(const OscillationModel& model, const std::vector<double>& grid) {
    check_grid(model, grid);
    std::vector<double> a(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const double g = std::pow(t, model.alpha), h = std::pow(t, model.beta);
        const double s = std::sin(model.phase.u(t));
        // Clamp keeps the value between the two powers despite rounding.
        a[i] = std::clamp(g + (h - g) * s * s, std::min(g, h), std::max(g, h));
    }
    return SampledFunction(grid, std::move(a));
}

OscDerivatives synth_derivatives(const OscillationModel& model, const std::vector<double>& grid) {
    check_grid(model, grid);
    if (!model.phase.u_dot || !model.phase.u_ddot)
        fail(ErrorCode::MissingDerivatives, "phase has no analytic derivatives");
    const double al = model.alpha, be = model.beta;
    std::vector<double> d1(grid.size()), d2(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const double u = model.phase.u(t), ud = model.phase.u_dot(t), udd = model.phase.u_ddot(t);
        const double c = std::cos(u), s = std::sin(u);
        const double s2u = std::sin(2.0 * u), c2u = std::cos(2.0 * u);
        const double ta = std::pow(t, al), tb = std::pow(t, be);
        d1[i] = al * ta / t * c * c + be * tb / t * s * s + (tb - ta) * ud * s2u;
        d2[i] = al * (al - 1.0) * ta / (t * t) * c * c + be * (be - 1.0) * tb / (t * t) * s * s +
                2.0 * (be * tb - al * ta) / t * ud * s2u + (tb - ta) * (udd * s2u + 2.0 * ud * ud * c2u);
    }
    return {Series(grid, std::move(d1)), Series(grid, std::move(d2))};
}

int inflection_count(const Series& a_ddot) {
    int count = 0;
    int prev = 0;
    for (double v : a_ddot.values()) {
        const int sign = (v > 0.0) - (v < 0.0);
        if (sign == 0) continue;
        if (prev != 0 && sign != prev) ++count;
        prev = sign;
    }
    return count;
}

double f_omega_divergent(const OscillationModel& model, double t, double sin_threshold) {
    model.validate();
    if (!(t >= model.t0)) fail(ErrorCode::InvalidArgument, "t must be >= t0");
    if (!model.phase.u_dot) fail(ErrorCode::MissingDerivatives, "phase has no derivative");
    const double u = model.phase.u(t), ud = model.phase.u_dot(t);
    const double s = std::sin(u), c = std::cos(u);
    const double tg = std::pow(t, model.alpha - model.beta);
    if (tg >= 1e-6) {
        const double num = model.alpha * tg * c * c + model.beta * s * s +
                           t * (1.0 - tg) * ud * std::sin(2.0 * u);
        return num / (tg * c * c + s * s);
    }
    if (std::abs(s) <= sin_threshold) return model.alpha;
    return model.beta + 2.0 * t * ud * c / s;
}

} // namespace frv
