#include "frv/rvcore.hpp"

#include "frv/error.hpp"
#include "frv/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frv {

std::string_view to_string(RvKind kind) noexcept {
    switch (kind) {
    case RvKind::RV: return "RV";
    case RvKind::ER: return "ER";
    case RvKind::OR: return "OR";
    case RvKind::Unbounded: return "UNBOUNDED";
    }
    return "UNBOUNDED";
}

namespace {

// ln f(λ t_i) - ln f(t_i) for every i with λ t_i inside the grid; these
// form a prefix of the grid.
std::vector<double> log_ratios(const SampledFunction& f, double lambda) {
    if (!(lambda > 1.0) || !std::isfinite(lambda))
        fail(ErrorCode::InvalidArgument, "ratio_bounds: lambda must be > 1");
    const auto grid = f.grid();
    const auto vals = f.values();
    const std::size_t n = grid.size();
    if (grid.back() < 1e3 * grid.front())
        fail(ErrorCode::GridTooShort, "ratio_bounds: grid spans fewer than 3 decades");

    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::log(grid[i]);
        y[i] = std::log(vals[i]);
    }
    const double shift = std::log(lambda);
    const double s_end = s.back() + 1e-12 * std::max(1.0, std::abs(s.back()));
    std::vector<double> out;
    out.reserve(n);
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double target = s[i] + shift;
        if (target > s_end) break;
        while (j + 2 < n && s[j + 1] < target) ++j;
        double w = (target - s[j]) / (s[j + 1] - s[j]);
        w = std::clamp(w, 0.0, 1.0);
        const double yt = y[j] + w * (y[j + 1] - y[j]);
        out.push_back(yt - y[i]);
    }
    if (out.size() < 64)
        fail(ErrorCode::GridTooShort, "ratio_bounds: fewer than 64 valid ratio points");
    if (2 * out.size() < n)
        fail(ErrorCode::GridTooShort, "ratio_bounds: lambda*t leaves the grid for over half the points");
    return out;
}

std::size_t tail_start(std::size_t n, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        fail(ErrorCode::InvalidArgument, "tail fraction must lie in (0, 1]");
    const auto keep = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
    return n - std::clamp<std::size_t>(keep, 1, n);
}

double median(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
    }
    return m;
}

struct Probe {
    double lambda;
    double log_upper, log_lower; // ln f*, ln f_*
    double drift;                // median local-index change between windows
};

Probe probe(const SampledFunction& f, double lambda, const RvOptions& opts) {
    const auto lr = log_ratios(f, lambda);
    Probe p{lambda, -std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity(), 0.0};
    const std::size_t start = tail_start(lr.size(), opts.tail_fraction);
    for (std::size_t i = start; i < lr.size(); ++i) {
        p.log_upper = std::max(p.log_upper, lr[i]);
        p.log_lower = std::min(p.log_lower, lr[i]);
    }
    const std::size_t check = tail_start(lr.size(), opts.check_fraction);
    if (check > start) {
        const double ln_lambda = std::log(lambda);
        std::vector<double> a(lr.begin() + static_cast<std::ptrdiff_t>(start),
                              lr.begin() + static_cast<std::ptrdiff_t>(check));
        std::vector<double> b(lr.begin() + static_cast<std::ptrdiff_t>(check), lr.end());
        p.drift = std::abs(median(std::move(b)) - median(std::move(a))) / ln_lambda;
    }
    return p;
}

double fit_window(std::span<const double> s, std::span<const double> y, double* rms) {
    const std::size_t m = s.size();
    double s_mean = 0.0;
    for (double x : s) s_mean += x;
    s_mean /= static_cast<double>(m);
    std::vector<std::vector<double>> cols;
    cols.emplace_back(m, 1.0);
    std::vector<double> centered(m);
    for (std::size_t i = 0; i < m; ++i) centered[i] = s[i] - s_mean;
    cols.push_back(std::move(centered));
    // ln s absorbs a logarithmic slowly varying factor when the window is
    // far enough from t = 1 for it to be well defined.
    if (s.front() >= 1.0 && m >= 8) {
        std::vector<double> ls(m);
        double mean = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            ls[i] = std::log(s[i]);
            mean += ls[i];
        }
        mean /= static_cast<double>(m);
        for (double& x : ls) x -= mean;
        cols.push_back(std::move(ls));
    }
    const auto beta = num::least_squares(cols, y, rms);
    return beta[1];
}

} // namespace

RatioBounds ratio_bounds(const SampledFunction& f, double lambda, double tail_fraction) {
    const auto lr = log_ratios(f, lambda);
    const std::size_t start = tail_start(lr.size(), tail_fraction);
    RatioBounds rb{lambda, 0.0, std::numeric_limits<double>::infinity(), lr.size() - start};
    for (std::size_t i = start; i < lr.size(); ++i) {
        const double r = std::exp(lr[i]);
        if (!(r > 0.0)) fail(ErrorCode::NonPositive, "ratio_bounds: non-positive interpolated ratio");
        rb.upper = std::max(rb.upper, r);
        rb.lower = std::min(rb.lower, r);
    }
    return rb;
}

IndexFit rv_index_fit(const SampledFunction& f, const RvOptions& opts) {
    const auto grid = f.grid();
    const auto vals = f.values();
    const std::size_t n = grid.size();
    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::log(grid[i]);
        y[i] = std::log(vals[i]);
    }
    const std::size_t main = tail_start(n, opts.tail_fraction);
    const std::size_t check = tail_start(n, opts.check_fraction);
    if (n - check < 4) fail(ErrorCode::GridTooShort, "rv_index: tail window too short");
    IndexFit fit;
    fit.index = fit_window(std::span(s).subspan(main), std::span(y).subspan(main), &fit.residual);
    fit.check_index = fit_window(std::span(s).subspan(check), std::span(y).subspan(check), nullptr);
    if (!std::isfinite(fit.index) || !std::isfinite(fit.check_index) ||
        std::abs(fit.index - fit.check_index) > opts.slope_tolerance)
        fail(ErrorCode::NotPowerLike, "rv_index: tail slopes disagree between windows");
    return fit;
}

double rv_index(const SampledFunction& f, const RvOptions& opts) {
    return rv_index_fit(f, opts).index;
}

std::pair<double, double> matuszewska_indices(const SampledFunction& f, const RvOptions& opts) {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    for (double lambda : opts.probes) {
        const RatioBounds rb = ratio_bounds(f, lambda, opts.tail_fraction);
        const double ln_lambda = std::log(lambda);
        lower = std::max(lower, std::log(rb.lower) / ln_lambda);
        upper = std::min(upper, std::log(rb.upper) / ln_lambda);
    }
    return {lower, upper};
}

RvClassification classify(const SampledFunction& f, const RvOptions& opts) {
    RvClassification out;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    bool unbounded = false;
    for (double lambda : opts.probes) {
        const Probe p = probe(f, lambda, opts);
        if (!std::isfinite(p.log_upper) || !std::isfinite(p.log_lower) ||
            std::exp(p.log_upper) == std::numeric_limits<double>::infinity() ||
            std::exp(p.log_lower) == 0.0 || p.drift > opts.drift_limit) {
            unbounded = true;
            continue;
        }
        const double ln_lambda = std::log(lambda);
        out.max_spread = std::max(out.max_spread, (p.log_upper - p.log_lower) / ln_lambda);
        lower = std::max(lower, p.log_lower / ln_lambda);
        upper = std::min(upper, p.log_upper / ln_lambda);
    }
    if (unbounded) {
        out.kind = RvKind::Unbounded;
        return out;
    }
    out.index_interval = std::pair{std::min(lower, upper), std::max(lower, upper)};
    if (out.max_spread < opts.rv_tolerance) {
        out.kind = RvKind::RV;
        try {
            out.index = rv_index_fit(f, opts).index;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotPowerLike) throw;
            out.index = 0.5 * (lower + upper);
        }
        return out;
    }
    out.kind = lower > upper + opts.rv_tolerance ? RvKind::OR : RvKind::ER;
    return out;
}

SlowVaryRep sv_epsilon_fit(const SampledFunction& L, const RvOptions& opts) {
    const std::size_t n = L.size();
    if (n < 256) fail(ErrorCode::GridTooShort, "sv_epsilon_fit: need at least 256 points");
    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::log(L.t(i));
        y[i] = std::log(L.value(i));
    }
    const auto d = num::differentiate(s, y);
    const std::size_t start = tail_start(n, opts.tail_fraction);
    double envelope = 0.0;
    for (std::size_t i = start; i < n; ++i) envelope = std::max(envelope, std::abs(d.first[i]));
    if (!(envelope <= 10.0))
        fail(ErrorCode::DifferentiationUnstable, "sv_epsilon_fit: |epsilon| exceeds 10 on the tail");

    double integral = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) integral += 0.5 * (d.first[i] + d.first[i - 1]) * (s[i] - s[i - 1]);
        if (i >= start) sum += std::exp(y[i] - integral);
    }
    SlowVaryRep rep;
    rep.h0 = sum / static_cast<double>(n - start);
    rep.epsilon = Series(std::vector<double>(L.grid().begin(), L.grid().end()), d.first);
    return rep;
}

SampledFunction sv_reconstruct(const SlowVaryRep& rep) {
    const auto& eps = rep.epsilon;
    std::vector<double> grid(eps.grid().begin(), eps.grid().end());
    std::vector<double> vals(grid.size());
    double integral = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0)
            integral += 0.5 * (eps.value(i) + eps.value(i - 1)) * std::log(grid[i] / grid[i - 1]);
        vals[i] = rep.h0 * std::exp(integral);
    }
    return SampledFunction(std::move(grid), std::move(vals));
}

StripCounts strip_visits(const SampledFunction& f, double inner_low, double inner_high) {
    if (!(inner_low < inner_high))
        fail(ErrorCode::InvalidArgument, "strip_visits: need inner_low < inner_high");
    StripCounts c;
    bool in_low = false, in_high = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(f.t(i) > 1.0)) continue;
        const double s = std::log(f.t(i)), y = std::log(f.value(i));
        const bool low = y <= inner_low * s;
        const bool high = y >= inner_high * s;
        if (low && !in_low) ++c.low;
        if (high && !in_high) ++c.high;
        in_low = low;
        in_high = high;
    }
    return c;
}

} // namespace frv
