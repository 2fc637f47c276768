#include "gtest/gtest.h"

#include "frv/error.hpp"
#include "frv/numeric.hpp"

#include <cmath>
#include <numbers>

using namespace frv;

TEST(numeric, gaussLegendreIsExactForPolynomials)
{
    for (std::size_t n : {1u, 2u, 5u, 20u}) {
        auto rule = num::gauss_legendre_rule(n);
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        EXPECT_NEAR(wsum, 2.0, 1e-14);
        // degree 2n-1 integrated exactly
        const auto deg = static_cast<int>(2 * n - 1);
        auto f = [deg](double x) { return std::pow(x, deg - 1) + std::pow(x, deg); };
        const double exact = (deg - 1) % 2 == 0 ? 2.0 / deg : 0.0;
        EXPECT_NEAR(num::gauss_legendre(f, -1, 1, n), exact, 1e-13);
    }
    EXPECT_NEAR(num::gauss_legendre([](double x) { return std::exp(x); }, 0, 3, 20, 4), std::exp(3.0) - 1, 1e-12);
}

TEST(numeric, adaptiveQuadrature)
{
    auto r = num::integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-12, 1e-12);
    EXPECT_NEAR(r.value, 2.0, 1e-9);
    r = num::integrate_adaptive([](double x) { return std::sin(x) * std::sin(x); }, 0, 100 * std::numbers::pi);
    EXPECT_NEAR(r.value, 50 * std::numbers::pi, 1e-10);
    EXPECT_THROW(num::integrate_adaptive([](double) { return NAN; }, 0, 1), Error);
}

TEST(numeric, dormandPrinceExponential)
{
    std::vector<double> xs;
    for (int i = 1; i <= 50; ++i) xs.push_back(0.1 * i);
    num::OdeStats stats;
    auto ys = num::dormand_prince([](double, double y) { return -y; }, 0.0, 1.0, xs, {}, &stats);
    for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(ys[i], std::exp(-xs[i]), 1e-10);
    EXPECT_GT(stats.accepted, 0u);
}

TEST(numeric, dormandPrinceNonlinear)
{
    // y' = y², y(0) = 1 → y = 1/(1-x)
    std::vector<double> xs{0.5, 0.9, 0.99};
    auto ys = num::dormand_prince([](double, double y) { return y * y; }, 0.0, 1.0, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(ys[i] * (1 - xs[i]), 1.0, 1e-8);
}

TEST(numeric, dormandPrinceReportsStepFailure)
{
    std::vector<double> xs{2.0};
    num::OdeOptions opts;
    opts.max_steps = 1000;
    try {
        num::dormand_prince([](double, double y) { return y * y; }, 0.0, 1.0, xs, opts);
        FAIL() << "blow-up not detected";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::StepFailure);
    }
}

TEST(numeric, cubicSplineReproducesCubicInterior)
{
    std::vector<double> x, y;
    for (int i = 0; i <= 200; ++i) {
        x.push_back(0.05 * i);
        y.push_back(std::sin(x.back()));
    }
    num::CubicSpline s(x, y);
    for (double t : {1.0, 3.3, 7.77}) {
        EXPECT_NEAR(s(t), std::sin(t), 1e-7);
        EXPECT_NEAR(s.derivative(t), std::cos(t), 1e-5);
        EXPECT_NEAR(s.second_derivative(t), -std::sin(t), 1e-3);
    }
}

TEST(numeric, differentiateNonuniform)
{
    std::vector<double> s, v;
    for (int i = 0; i < 400; ++i) {
        s.push_back(0.01 * i + 0.002 * std::sin(i));
        v.push_back(std::exp(0.5 * s.back()));
    }
    auto d = num::differentiate(s, v);
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        EXPECT_NEAR(d.first[i] / (0.5 * v[i]), 1.0, 1e-4);
        EXPECT_NEAR(d.second[i] / (0.25 * v[i]), 1.0, 1e-2);
    }
}

TEST(numeric, leastSquaresRecoversLine)
{
    std::vector<double> ones(50, 1.0), x(50), y(50);
    for (int i = 0; i < 50; ++i) {
        x[i] = i;
        y[i] = 3.0 - 0.25 * i;
    }
    double rms = 1.0;
    auto beta = num::least_squares({ones, x}, y, &rms);
    EXPECT_NEAR(beta[0], 3.0, 1e-12);
    EXPECT_NEAR(beta[1], -0.25, 1e-12);
    EXPECT_LT(rms, 1e-12);
}

TEST(numeric, nevilleExtrapolatesPolynomial)
{
    double x[4] = {0.4, 0.3, 0.2, 0.1}, y[4];
    for (int i = 0; i < 4; ++i) y[i] = 1 + 2 * x[i] - x[i] * x[i] * x[i];
    EXPECT_NEAR(num::neville(x, y, 0.0), 1.0, 1e-13);
}
