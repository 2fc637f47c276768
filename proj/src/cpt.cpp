#include "frv/cpt.hpp"

#include "frv/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

namespace frv {

std::string_view to_string(Curvature k) noexcept {
    switch (k) {
    case Curvature::Flat: return "flat";
    case Curvature::Open: return "open";
    case Curvature::Closed: return "closed";
    }
    return "flat";
}

Curvature parse_curvature(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "flat" || s == "0") return Curvature::Flat;
    if (s == "open" || s == "-1") return Curvature::Open;
    if (s == "closed" || s == "1" || s == "+1") return Curvature::Closed;
    fail(ErrorCode::InvalidArgument, "unknown curvature '" + std::string(text) + "'");
}

namespace {

constexpr double kNearOneFlat = 1e-6;
constexpr double kNearOneOpen = 0.05;

// 2·atanh(√(1-Ω)) = ln((1+s)²/Ω), which is also arccosh((2-Ω)/Ω).
double two_atanh(double omega, double s) {
    return 2.0 * std::log1p(s) - std::log(omega);
}

double flat(double omega) {
    const double x = 1.0 - omega;
    if (x < kNearOneFlat) {
        // (2/3) Σ x^n/(2n+1)
        return (2.0 / 3.0) * (1.0 + x * (1.0 / 3 + x * (1.0 / 5 + x * (1.0 / 7))));
    }
    const double s = std::sqrt(x);
    return two_atanh(omega, s) / (3.0 * s);
}

double open(double omega) {
    const double x = 1.0 - omega;
    if (x < kNearOneOpen) {
        // Σ 2x^n/((2n+1)(2n+3))
        double sum = 0.0, xn = 1.0;
        for (int n = 0; n < 60; ++n) {
            const double term = 2.0 * xn / ((2.0 * n + 1.0) * (2.0 * n + 3.0));
            sum += term;
            if (term < 1e-20) break;
            xn *= x;
        }
        return sum;
    }
    const double s = std::sqrt(x);
    return (1.0 - omega * two_atanh(omega, s) / (2.0 * s)) / x;
}

void check_domain(double omega, Curvature k) {
    if (k == Curvature::Closed) fail(ErrorCode::DomainError, "F(Omega) is not defined for k = +1");
    if (!(omega > 0.0 && omega < 1.0))
        fail(ErrorCode::DomainError, "Omega must lie in (0, 1)");
}

} // namespace

double f_omega(double omega, Curvature k) {
    check_domain(omega, k);
    return k == Curvature::Flat ? flat(omega) : open(omega);
}

double mu_of_omega(double omega, Curvature k) {
    const double F = f_omega(omega, k);
    return 0.5 * omega * F * F;
}

double f_omega_inverse(double target, Curvature k) {
    if (k == Curvature::Closed) fail(ErrorCode::DomainError, "F(Omega) is not defined for k = +1");
    // Bisection in z = ln Ω keeps resolution at both ends of (0, 1).
    double z_lo = std::log(std::numeric_limits<double>::min());
    double z_hi = std::log(std::nextafter(1.0, 0.0));
    auto omega_of = [](double z) {
        return std::clamp(std::exp(z), std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
    };
    auto F = [&](double z) { return f_omega(omega_of(z), k); };
    const double f_lo = F(z_lo), f_hi = F(z_hi);
    const double sup = k == Curvature::Flat ? f_lo : 1.0;
    if (!std::isfinite(target) || !(target > 2.0 / 3.0) || !(target < sup))
        fail(ErrorCode::OutOfRange, "target outside the range of F");
    if (!(f_lo >= target && target >= f_hi)) {
        if (target < f_hi) return omega_of(z_hi);
        fail(ErrorCode::NotMonotone, "F does not bracket the target");
    }
    constexpr int probes = 64;
    double prev = f_lo;
    for (int i = 1; i <= probes; ++i) {
        const double cur = F(z_lo + (z_hi - z_lo) * i / probes);
        if (!(cur <= prev)) fail(ErrorCode::NotMonotone, "F is not decreasing on the bracket");
        prev = cur;
    }
    // Bisect down to adjacent doubles; |F - target| then sits at rounding level.
    for (int iter = 0; iter < 400; ++iter) {
        const double z_mid = 0.5 * (z_lo + z_hi);
        if (z_mid <= z_lo || z_mid >= z_hi) break;
        const double f_mid = F(z_mid);
        if (f_mid == target) return omega_of(z_mid);
        if (f_mid > target) z_lo = z_mid;
        else z_hi = z_mid;
    }
    return omega_of(0.5 * (z_lo + z_hi));
}

SampledFunction reconstruct_a(const SampledFunction& omega_track, Curvature k, double t0, double a0) {
    if (!(a0 > 0.0) || !std::isfinite(a0))
        fail(ErrorCode::InvalidArgument, "reconstruct_a: a0 must be positive");
    if (!(t0 > 0.0) || std::abs(omega_track.front_t() - t0) > 1e-12 * t0)
        fail(ErrorCode::InvalidArgument, "reconstruct_a: grid must start at t0");
    const std::size_t n = omega_track.size();
    std::vector<double> grid(omega_track.grid().begin(), omega_track.grid().end());
    std::vector<double> a(n);
    double integral = 0.0;
    double F_prev = f_omega(omega_track.value(0), k);
    a[0] = a0;
    for (std::size_t i = 1; i < n; ++i) {
        const double F = f_omega(omega_track.value(i), k);
        integral += 0.5 * (F + F_prev) * std::log(grid[i] / grid[i - 1]);
        F_prev = F;
        a[i] = a0 * std::exp(integral);
    }
    return SampledFunction(std::move(grid), std::move(a));
}

} // namespace frv
