#include "frv/numeric.hpp"

#include "frv/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>

namespace frv::num {

GaussRule gauss_legendre_rule(std::size_t order) {
    if (order < 1) fail(ErrorCode::InvalidArgument, "gauss_legendre_rule: order must be >= 1");
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const auto n = static_cast<double>(order);
    for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= order; ++k) {
                const auto kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            if (order == 1) { p1 = x; p0 = 1.0; }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= order; ++k) {
                const auto kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

double gauss_legendre(const Fn1& f, double a, double b, std::size_t order, std::size_t panels) {
    const GaussRule rule = gauss_legendre_rule(order);
    const double width = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + width * static_cast<double>(p);
        const double mid = lo + 0.5 * width, half = 0.5 * width;
        double panel = 0.0;
        for (std::size_t i = 0; i < order; ++i) panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
        sum += half * panel;
    }
    return sum;
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel kronrod(const Fn1& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double k = fc * kWgk[7];
    double g = fc * kWg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx), f2 = f(c + dx);
        k += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
    }
    k *= h;
    g *= h;
    if (!std::isfinite(k)) fail(ErrorCode::IntegrationError, "non-finite integrand");
    return {a, b, k, std::abs(k - g)};
}

} // namespace

QuadResult integrate_adaptive(const Fn1& f, double a, double b, double abs_tol, double rel_tol,
                              std::size_t max_intervals) {
    QuadResult out;
    if (a == b) return out;
    std::priority_queue<Panel> heap;
    Panel first = kronrod(f, a, b);
    out.evaluations = 15;
    double total = first.value, err = first.error;
    heap.push(first);
    while (err > std::max(abs_tol, rel_tol * std::abs(total)) && heap.size() < max_intervals) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            heap.push(worst);
            break;
        }
        Panel left = kronrod(f, worst.a, mid), right = kronrod(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed accumulated cancellation from the running updates.
    total = 0.0;
    err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.error = err;
    return out;
}

std::vector<double> dormand_prince(const std::function<double(double, double)>& rhs, double x0,
                                   double y0, std::span<const double> x_out, const OdeOptions& opts,
                                   OdeStats* stats) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    std::vector<double> out;
    out.reserve(x_out.size());
    OdeStats local;
    double x = x0, y = y0;
    double k1 = rhs(x, y);
    double h = opts.initial_step;
    if (h <= 0.0) {
        const double scale = opts.abs_tol + opts.rel_tol * std::abs(y);
        const double d = std::abs(k1) > 0 ? std::abs(k1) : 1.0;
        h = 0.01 * std::pow(scale, 0.2) * std::max(1.0, std::abs(y)) / d;
        if (!x_out.empty()) h = std::min(h, std::max(1e-12, x_out.back() - x0));
    }
    std::size_t steps = 0;
    for (double target : x_out) {
        if (target < x) fail(ErrorCode::InvalidArgument, "dormand_prince: outputs must be increasing");
        while (x < target) {
            if (++steps > opts.max_steps) fail(ErrorCode::StepFailure, "ode: step budget exhausted");
            bool clipped = false;
            double step = h;
            if (x + step >= target) {
                step = target - x;
                clipped = true;
            }
            if (step < 1e-15 * std::max(1.0, std::abs(x)))
                fail(ErrorCode::StepFailure, "ode: step size underflow");
            const double k2 = rhs(x + c2 * step, y + step * a21 * k1);
            const double k3 = rhs(x + c3 * step, y + step * (a31 * k1 + a32 * k2));
            const double k4 = rhs(x + c4 * step, y + step * (a41 * k1 + a42 * k2 + a43 * k3));
            const double k5 =
                rhs(x + c5 * step, y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const double k6 = rhs(x + step,
                                  y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const double ynew = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const double k7 = rhs(x + step, ynew);
            const double errest =
                step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y), std::abs(ynew));
            const double ratio = std::abs(errest) / sc;
            if (!std::isfinite(ratio)) fail(ErrorCode::StepFailure, "ode: non-finite error estimate");
            if (ratio <= 1.0) {
                x = clipped ? target : x + step;
                y = ynew;
                k1 = k7;
                ++local.accepted;
                const double grow = ratio == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(ratio, -0.2));
                // A clipped step says nothing about the natural step size.
                if (!clipped || grow < 1.0) h = std::max(h, step) * std::max(0.2, grow);
            } else {
                ++local.rejected;
                h = step * std::max(0.2, 0.9 * std::pow(ratio, -0.2));
            }
        }
        out.push_back(y);
    }
    if (stats) *stats = local;
    return out;
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)), m_(x_.size(), 0.0) {
    const std::size_t n = x_.size();
    if (n != y_.size() || n < 3) fail(ErrorCode::InvalidArgument, "spline: need >= 3 matching knots");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) fail(ErrorCode::InvalidArgument, "spline: knots must increase");
    // Tridiagonal system for interior second derivatives (Thomas algorithm).
    std::vector<double> diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double lower = x_[i] - x_[i - 1];
        const double w = lower / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
        if (i == 1) break;
    }
}

std::size_t CubicSpline::segment(double x) const {
    if (!(x >= x_.front() && x <= x_.back()))
        fail(ErrorCode::DomainError, "spline: evaluation outside knot range");
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    return std::clamp<std::size_t>(i, 1, x_.size() - 1) - 1;
}

double CubicSpline::operator()(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           (-(3.0 * a * a - 1.0) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
}

double CubicSpline::second_derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
    return a * m_[i] + b * m_[i + 1];
}

Derivatives differentiate(std::span<const double> s, std::span<const double> v) {
    const std::size_t n = s.size();
    if (n < 3 || v.size() != n) fail(ErrorCode::GridTooShort, "differentiate: need >= 3 points");
    Derivatives d{std::vector<double>(n), std::vector<double>(n)};
    // Three-point Lagrange derivatives on the stencil (j-1, j, j+1) evaluated at i.
    auto stencil = [&](std::size_t j, std::size_t i) {
        const double x0 = s[j - 1], x1 = s[j], x2 = s[j + 1], x = s[i];
        const double d0 = (2 * x - x1 - x2) / ((x0 - x1) * (x0 - x2));
        const double d1 = (2 * x - x0 - x2) / ((x1 - x0) * (x1 - x2));
        const double d2 = (2 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
        const double first = d0 * v[j - 1] + d1 * v[j] + d2 * v[j + 1];
        const double second = 2.0 * (v[j - 1] / ((x0 - x1) * (x0 - x2)) +
                                     v[j] / ((x1 - x0) * (x1 - x2)) +
                                     v[j + 1] / ((x2 - x0) * (x2 - x1)));
        return std::pair{first, second};
    };
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = std::clamp<std::size_t>(i, 1, n - 2);
        auto [f, sec] = stencil(j, i);
        d.first[i] = f;
        d.second[i] = sec;
    }
    return d;
}

std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                  std::span<const double> y, double* rms) {
    const std::size_t m = y.size(), p = columns.size();
    if (p == 0 || m < p) fail(ErrorCode::InvalidArgument, "least_squares: underdetermined");
    std::vector<std::vector<double>> q = columns;
    std::vector<std::vector<double>> r(p, std::vector<double>(p, 0.0));
    for (std::size_t j = 0; j < p; ++j) {
        if (q[j].size() != m) fail(ErrorCode::InvalidArgument, "least_squares: ragged columns");
        for (std::size_t k = 0; k < j; ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < m; ++i) dot += q[k][i] * q[j][i];
            r[k][j] = dot;
            for (std::size_t i = 0; i < m; ++i) q[j][i] -= dot * q[k][i];
        }
        double norm = 0.0;
        for (double x : q[j]) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) fail(ErrorCode::InvalidArgument, "least_squares: rank deficient");
        r[j][j] = norm;
        for (double& x : q[j]) x /= norm;
    }
    std::vector<double> qty(p, 0.0);
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t i = 0; i < m; ++i) qty[j] += q[j][i] * y[i];
    std::vector<double> beta(p, 0.0);
    for (std::size_t jj = p; jj-- > 0;) {
        double acc = qty[jj];
        for (std::size_t k = jj + 1; k < p; ++k) acc -= r[jj][k] * beta[k];
        beta[jj] = acc / r[jj][jj];
    }
    if (rms) {
        double ss = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double fit = 0.0;
            for (std::size_t j = 0; j < p; ++j) fit += columns[j][i] * beta[j];
            ss += (y[i] - fit) * (y[i] - fit);
        }
        *rms = std::sqrt(ss / static_cast<double>(m));
    }
    return beta;
}

double neville(std::span<const double> x, std::span<const double> y, double at) {
    std::vector<double> p(y.begin(), y.end());
    const std::size_t n = p.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i)
            p[i] = ((at - x[i + level]) * p[i] + (x[i] - at) * p[i + 1]) / (x[i] - x[i + level]);
    return p[0];
}

} // namespace frv::num
