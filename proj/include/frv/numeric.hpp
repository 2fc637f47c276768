#pragma once

// Numerical building blocks shared by the analysis modules: quadrature,
// an adaptive embedded Runge-Kutta integrator, splines, log-derivatives
// and a small least-squares solver.

#include "frv/series.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace frv::num {

using Fn1 = std::function<double(double)>;

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre_rule(std::size_t order);

/// Composite fixed-order Gauss-Legendre over [a, b].
double gauss_legendre(const Fn1& f, double a, double b, std::size_t order = 20,
                      std::size_t panels = 1);

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

/// Adaptive Gauss-Kronrod 7/15 with interval bisection. Throws
/// IntegrationError on a non-finite integrand.
QuadResult integrate_adaptive(const Fn1& f, double a, double b, double abs_tol = 1e-13,
                              double rel_tol = 1e-12, std::size_t max_intervals = 20000);

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double initial_step = 0.0; // 0: chosen automatically
    std::size_t max_steps = 5'000'000;
};

struct OdeStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

/// Dormand-Prince 5(4) for the scalar problem y' = rhs(x, y). Returns y at
/// every point of x_out (increasing, all >= x0); steps are clipped to land
/// exactly on each output abscissa. Throws StepFailure when the step size
/// underflows or max_steps is exhausted.
std::vector<double> dormand_prince(const std::function<double(double, double)>& rhs,
                                   double x0, double y0, std::span<const double> x_out,
                                   const OdeOptions& opts = {}, OdeStats* stats = nullptr);

/// Natural cubic spline through (x_i, y_i), x strictly increasing.
class CubicSpline {
public:
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

private:
    std::size_t segment(double x) const;

    std::vector<double> x_, y_, m_; // m_: second derivatives at the knots
};

/// First and second derivatives of v with respect to s on a nonuniform
/// grid, second-order three-point formulas (one-sided at the ends).
struct Derivatives {
    std::vector<double> first;
    std::vector<double> second;
};
Derivatives differentiate(std::span<const double> s, std::span<const double> v);

/// Least squares y ≈ X·beta for a few columns via modified Gram-Schmidt.
/// Returns the coefficients; rms residual written to *rms when non-null.
std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                  std::span<const double> y, double* rms = nullptr);

/// Polynomial through (x_i, y_i) evaluated at x by Neville's scheme.
double neville(std::span<const double> x, std::span<const double> y, double at);

} // namespace frv::num
