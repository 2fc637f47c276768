#include "frv/gammafun.hpp"

#include "frv/error.hpp"
#include "frv/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace frv {

std::string_view to_string(GammaRegime regime) noexcept {
    switch (regime) {
    case GammaRegime::Regular: return "REGULAR";
    case GammaRegime::Critical: return "CRITICAL";
    case GammaRegime::Oscillatory: return "OSCILLATORY";
    case GammaRegime::Divergent: return "DIVERGENT";
    }
    return "DIVERGENT";
}

std::vector<double> default_schedule() {
    std::vector<double> x(13);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = 10.0 * std::ldexp(1.0, static_cast<int>(k));
    return x;
}

namespace {

void check_schedule(const std::vector<double>& schedule) {
    if (schedule.size() < 4) fail(ErrorCode::InvalidArgument, "schedule needs at least 4 points");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (!(schedule[i] > 0.0) || !std::isfinite(schedule[i]))
            fail(ErrorCode::InvalidArgument, "schedule points must be positive");
        if (i > 0 && !(schedule[i] > schedule[i - 1]))
            fail(ErrorCode::InvalidArgument, "schedule must be increasing");
    }
    if (schedule.back() < 100.0 * schedule.front())
        fail(ErrorCode::InvalidArgument, "schedule must span at least 2 decades");
}

// Mean of μ over the last decade below X, sampled log-uniformly.
double trailing_mean(const std::function<double(double)>& mu, double X) {
    constexpr int n = 65;
    const double lo = std::log(X / 10.0), hi = std::log(X);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = i == 0 ? X / 10.0 : i == n - 1 ? X : std::exp(lo + (hi - lo) * i / (n - 1));
        const double v = mu(t);
        if (!std::isfinite(v)) fail(ErrorCode::IntegrationError, "non-finite integrand");
        sum += v;
    }
    return sum / n;
}

// 1 - e^{-h}(1 + h), accurate for small h.
double e2(double h) {
    if (h < 1e-2) return h * h * (0.5 - h * (1.0 / 3 - h * (1.0 / 8 - h * (1.0 / 30 - h / 144.0))));
    return -std::expm1(-h) - h * std::exp(-h);
}

// ∫ over one segment of a linear-in-v μ times e^{-(v - v0)}.
double segment(double va, double vb, double ma, double mb, double v0) {
    const double h = vb - va;
    if (h <= 0.0) return 0.0;
    return std::exp(-(va - v0)) * (ma * -std::expm1(-h) + (mb - ma) / h * e2(h));
}

GammaResult finish(std::vector<double> schedule, std::vector<double> raw, const GammaOptions& opts) {
    GammaResult res;
    res.schedule = std::move(schedule);
    res.diagnostics = std::move(raw);
    const auto& x = res.schedule;
    const auto& e = res.diagnostics;
    const std::size_t n = e.size();
    std::vector<double> d(n - 1);
    for (std::size_t i = 1; i < n; ++i) d[i - 1] = e[i] - e[i - 1];

    auto cauchy = [&](const std::vector<double>& seq) {
        if (seq.size() < 4) return false;
        for (std::size_t i = seq.size() - 3; i < seq.size(); ++i)
            if (!(std::abs(seq[i] - seq[i - 1]) < opts.cauchy_tol)) return false;
        return true;
    };

    if (cauchy(e)) {
        res.gamma = e.back();
        res.converged = true;
    } else {
        const std::size_t w = std::min<std::size_t>(6, d.size());
        const std::size_t first = d.size() - w;
        int sign_changes = 0;
        double amp = 0.0;
        for (std::size_t i = first; i < d.size(); ++i) {
            amp = std::max(amp, std::abs(d[i]));
            if (i > first && d[i] * d[i - 1] < 0.0) ++sign_changes;
        }
        const bool oscillating = sign_changes >= 2 && amp > 10.0 * opts.cauchy_tol;
        const bool stalled = std::abs(d.back()) > 10.0 * opts.cauchy_tol &&
                             std::abs(d.back()) > 0.9 * std::abs(d[first]);
        if (oscillating || stalled) {
            res.gamma = e.back();
            res.regime = GammaRegime::Divergent;
            return res;
        }
        // Cubic extrapolation to 1/ln x = 0 over the trailing four estimates.
        std::vector<double> ext;
        for (std::size_t k = 3; k < n; ++k) {
            double h[4], v[4];
            for (std::size_t j = 0; j < 4; ++j) {
                h[j] = 1.0 / std::log(x[k - 3 + j]);
                v[j] = e[k - 3 + j];
            }
            ext.push_back(num::neville(h, v, 0.0));
        }
        res.gamma = ext.back();
        res.converged = cauchy(ext);
        res.extrapolated = true;
    }
    if (!std::isfinite(res.gamma)) fail(ErrorCode::IntegrationError, "non-finite Gamma estimate");
    if (std::abs(res.gamma - 0.25) <= opts.critical_tol) {
        res.regime = GammaRegime::Critical;
        res.roots = std::pair{0.5, 0.5};
    } else if (res.gamma < 0.25) {
        res.regime = GammaRegime::Regular;
        res.roots = char_roots(res.gamma);
    } else {
        res.regime = GammaRegime::Oscillatory;
    }
    return res;
}

} // namespace

GammaResult m_functional(const std::function<double(double)>& mu, const std::vector<double>& schedule,
                         const GammaOptions& opts) {
    check_schedule(schedule);
    const double span = std::log(opts.cutoff_ratio);
    std::vector<double> raw;
    raw.reserve(schedule.size());
    for (double x : schedule) {
        // x∫_x^X μ/t² dt = ∫_0^{ln(X/x)} μ(x e^s) e^{-s} ds
        auto integrand = [&](double s) { return mu(x * std::exp(s)) * std::exp(-s); };
        const double body = num::integrate_adaptive(integrand, 0.0, span, 1e-13, 1e-12).value;
        const double X = opts.cutoff_ratio * x;
        raw.push_back(body + trailing_mean(mu, X) / opts.cutoff_ratio);
    }
    return finish(schedule, std::move(raw), opts);
}

GammaResult m_functional(const Series& mu, const std::vector<double>& schedule, const GammaOptions& opts) {
    check_schedule(schedule);
    const auto grid = mu.grid();
    const auto vals = mu.values();
    for (double v : vals)
        if (!std::isfinite(v)) fail(ErrorCode::IntegrationError, "non-finite integrand");
    std::vector<double> raw;
    raw.reserve(schedule.size());
    auto at = [&](double t) { return mu.interp_linear_log_t(t); };
    for (double x : schedule) {
        const double X = opts.cutoff_ratio * x;
        const double v0 = std::log(x), v1 = std::log(X);
        double prev_v = v0, prev_m = at(x);
        double body = 0.0;
        auto it = std::upper_bound(grid.begin(), grid.end(), x);
        for (; it != grid.end() && *it < X; ++it) {
            const auto i = static_cast<std::size_t>(it - grid.begin());
            const double v = std::log(grid[i]);
            body += segment(prev_v, v, prev_m, vals[i], v0);
            prev_v = v;
            prev_m = vals[i];
        }
        body += segment(prev_v, v1, prev_m, at(X), v0);
        raw.push_back(body + trailing_mean(at, X) / opts.cutoff_ratio);
    }
    return finish(schedule, std::move(raw), opts);
}

EosParams gamma_of_w(double w) {
    if (!std::isfinite(w)) fail(ErrorCode::InvalidArgument, "w must be finite");
    if (w == -1.0) fail(ErrorCode::Singular, "w = -1 is singular");
    const double p = 1.0 + w;
    return {w, 2.0 / (3.0 * p), (2.0 / 9.0) * (1.0 + 3.0 * w) / (p * p)};
}

std::pair<double, double> char_roots(double gamma) {
    if (!std::isfinite(gamma)) fail(ErrorCode::InvalidArgument, "Gamma must be finite");
    if (gamma > 0.25) fail(ErrorCode::Complex, "Gamma > 1/4: characteristic roots are complex");
    const double d = std::sqrt(1.0 - 4.0 * gamma);
    const double beta = 0.5 * (1.0 + d);
    return {gamma / beta, beta};
}

std::pair<SampledFunction, SampledFunction> fundamental_pair(double gamma, const SampledFunction& L1,
                                                             const RvOptions& rv) {
    if (std::abs(gamma - 0.25) <= 1e-9)
        fail(ErrorCode::CriticalGamma, "Gamma = 1/4: L1, L2 do not form a fundamental pair");
    const auto [alpha, beta] = char_roots(gamma);
    const RvClassification c = classify(L1, rv);
    constexpr double tol = 0.05;
    const bool sv =
        (c.kind == RvKind::RV && c.index && std::abs(*c.index) <= tol) ||
        (c.kind == RvKind::ER && c.index_interval && c.index_interval->first >= -tol &&
         c.index_interval->second <= tol);
    if (!sv) fail(ErrorCode::InvalidArgument, "fundamental_pair: L1 is not slowly varying");
    const std::size_t n = L1.size();
    std::vector<double> grid(L1.grid().begin(), L1.grid().end());
    std::vector<double> y1(n), y2(n);
    const double scale = 1.0 / (1.0 - 2.0 * alpha);
    for (std::size_t i = 0; i < n; ++i) {
        y1[i] = std::pow(grid[i], alpha) * L1.value(i);
        y2[i] = std::pow(grid[i], beta) * scale / L1.value(i);
    }
    return {SampledFunction(grid, std::move(y1)), SampledFunction(grid, std::move(y2))};
}

Series mu_lambda(const Series& mu, double lambda_const) {
    std::vector<double> grid(mu.grid().begin(), mu.grid().end());
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        v[i] = mu.value(i) - lambda_const * grid[i] * grid[i] / 3.0;
    return Series(std::move(grid), std::move(v));
}

Series acceleration_coefficient(const SampledFunction& a) {
    const std::size_t n = a.size();
    std::vector<double> s(n), phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::log(a.t(i));
        phi[i] = std::log(a.value(i));
    }
    const auto d = num::differentiate(s, phi);
    std::vector<double> mu(n);
    for (std::size_t i = 0; i < n; ++i)
        mu[i] = d.first[i] - d.first[i] * d.first[i] - d.second[i];
    return Series(std::vector<double>(a.grid().begin(), a.grid().end()), std::move(mu));
}

} // namespace frv
