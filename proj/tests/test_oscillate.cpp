#include "gtest/gtest.h"

#include "frv/error.hpp"
#include "frv/friedmann.hpp"
#include "frv/oscillate.hpp"
#include "frv/rvcore.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace frv;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try { f(); } catch (const Error& e) { return e.code(); }
    ADD_FAILURE() << "no frv::Error thrown";
    return ErrorCode::InvalidArgument;
}

OscillationModel log_model() { return {0.4, 0.8, log_phase(), 1.0}; }

// Sixteen-point grid starting at t, so single-point evaluations pass grid checks.
std::vector<double> from(double t)
{
    std::vector<double> g;
    for (int i = 0; i < 16; ++i) g.push_back(t * (1 + 1e-3 * i));
    return g;
}

double a_at(const OscillationModel& m, double t) { return synth_a(m, from(t)).value(0); }
double a_dot_at(const OscillationModel& m, double t) { return synth_derivatives(m, from(t)).a_dot.value(0); }
double a_ddot_at(const OscillationModel& m, double t) { return synth_derivatives(m, from(t)).a_ddot.value(0); }

std::vector<double> ln_t_grid(double lo, double hi, std::size_t n)
{
    std::vector<double> g;
    for (double s : linear_grid(lo, hi, n)) g.push_back(std::exp(s));
    return g;
}

} // namespace

TEST(oscillate, fitUExamples)
{
    std::vector<double> grid{std::numbers::e};
    for (int i = 1; i < 16; ++i) grid.push_back(std::numbers::e + 0.25 * i);
    auto g = sample([](double t) { return std::pow(t, 0.4); }, grid);
    auto h = sample([](double t) { return std::pow(t, 0.8); }, grid);
    auto f = sample([](double t) { return std::pow(t, 0.6); }, grid);
    auto mid = fit_u(g, h, f);
    EXPECT_NEAR(mid.u.value(0), oracle::kFitUAtE, 1e-14);
    EXPECT_LT(mid.max_residual, 1e-12);
    const auto low = fit_u(g, h, g), high = fit_u(g, h, h);
    for (double v : low.u.values()) EXPECT_EQ(v, 0.0);
    for (double v : high.u.values()) EXPECT_NEAR(v, std::numbers::pi / 2, 1e-15);
}

TEST(oscillate, fitUErrors)
{
    auto grid = log_grid(1.0, 10.0, 32);
    auto g = sample([](double t) { return std::pow(t, 0.4); }, grid);
    auto h = sample([](double t) { return std::pow(t, 0.8); }, grid);
    EXPECT_EQ(code_of([&] { fit_u(g, h, g); }), ErrorCode::DegenerateBounds); // g = h at t = 1
    auto grid2 = log_grid(2.0, 10.0, 32);
    auto g2 = sample([](double t) { return std::pow(t, 0.4); }, grid2);
    auto h2 = sample([](double t) { return std::pow(t, 0.8); }, grid2);
    auto above = sample([](double t) { return 1.01 * std::pow(t, 0.8); }, grid2);
    EXPECT_EQ(code_of([&] { fit_u(g2, h2, above); }), ErrorCode::BoundViolation);
    EXPECT_EQ(code_of([&] { fit_u(g2, h, g2); }), ErrorCode::InvalidArgument);
}

TEST(oscillate, constantPhasesGivePowerLaws)
{
    auto grid = log_grid(1.0, 1e6, 400);
    auto lo = synth_a({0.4, 0.8, constant_phase(0.0), 1.0}, grid);
    auto hi = synth_a({0.4, 0.8, constant_phase(std::numbers::pi / 2), 1.0}, grid);
    auto d = synth_derivatives({0.4, 0.8, constant_phase(0.0), 1.0}, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        EXPECT_EQ(lo.value(i), std::pow(t, 0.4));
        EXPECT_NEAR(hi.value(i) / std::pow(t, 0.8), 1.0, 1e-15);
        EXPECT_NEAR(d.a_dot.value(i) / (0.4 * std::pow(t, -0.6)), 1.0, 1e-14);
        EXPECT_NEAR(d.a_ddot.value(i) / (0.4 * -0.6 * std::pow(t, -1.6)), 1.0, 1e-14);
    }
}

TEST(oscillate, boundContainment)
{
    auto grid = ln_t_grid(0.0, 100.0, 100000);
    auto a = synth_a(log_model(), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ASSERT_GE(a.value(i), std::pow(grid[i], 0.4));
        ASSERT_LE(a.value(i), std::pow(grid[i], 0.8));
    }
}

TEST(oscillate, synthRejectsGridBeforeOrigin)
{
    EXPECT_THROW(synth_a(log_model(), log_grid(0.5, 10, 32)), Error);
    EXPECT_THROW(synth_a({0.8, 0.4, log_phase(), 1.0}, log_grid(1, 10, 32)), Error);
}

TEST(oscillate, fitURoundTripOnCos2u)
{
    auto grid = ln_t_grid(0.0, 100.0, 100000);
    grid.erase(grid.begin()); // t = 1: the bounds coincide
    auto g = sample([](double t) { return std::pow(t, 0.4); }, grid);
    auto h = sample([](double t) { return std::pow(t, 0.8); }, grid);
    auto fit = fit_u(g, h, synth_a(log_model(), grid));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ASSERT_GE(fit.u.value(i), 0.0);
        ASSERT_LE(fit.u.value(i), std::numbers::pi / 2);
        ASSERT_NEAR(std::cos(2 * fit.u.value(i)), std::cos(2 * std::log(grid[i])), 1e-10) << grid[i];
    }
}

TEST(oscillate, derivativesMatchFiniteDifferences)
{
    auto m = log_model();
    for (double t : log_grid(2.0, 1e6, 300)) {
        // Richardson-combined central differences at steps h and h/2.
        auto d1 = [&](double h) { return (a_at(m, t + h) - a_at(m, t - h)) / (2 * h); };
        auto d2 = [&](double h) { return (a_at(m, t + h) - 2 * a_at(m, t) + a_at(m, t - h)) / (h * h); };
        const double h = 2e-3 * t;
        const double fd1 = (4 * d1(h / 2) - d1(h)) / 3;
        const double fd2 = (4 * d2(h / 2) - d2(h)) / 3;
        const double scale = a_at(m, t) / t;
        EXPECT_NEAR(a_dot_at(m, t), fd1, 1e-6 * scale) << t;
        EXPECT_NEAR(a_ddot_at(m, t), fd2, 1e-6 * scale / t) << t;
    }
}

TEST(oscillate, splinePhaseDerivatives)
{
    auto track = sample_series([](double t) { return std::log(t); }, log_grid(1.0, 1e4, 4000));
    OscillationModel m{0.4, 0.8, spline_phase(track), 1.0};
    auto grid = log_grid(10.0, 1e3, 50);
    auto a = synth_derivatives(m, grid);
    auto b = synth_derivatives(log_model(), grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        EXPECT_NEAR(a.a_dot.value(i), b.a_dot.value(i), 1e-4 * std::abs(std::pow(grid[i], -0.2)));
}

TEST(oscillate, increasingWhereSin2uVanishes)
{
    auto m = log_model();
    // Beyond t ~ e^30 the rounding of ln t swamps the t^α term.
    for (int k = 1; k < 20; ++k) {
        const double t1 = std::exp(k * std::numbers::pi / 2);
        const double ad = a_dot_at(m, t1);
        EXPECT_GE(ad, 0.4 * std::pow(t1, -0.6) * (1 - 1e-6));
        EXPECT_LE(ad, 0.8 * std::pow(t1, -0.2) * (1 + 1e-6));
        EXPECT_GT(ad, 0.0);
    }
}

TEST(oscillate, dominantTermOfSecondDerivative)
{
    const double w = 0.5;
    OscillationModel m{0.4, 0.8, linear_phase(w), 1.0};
    int checked = 0;
    for (double t : linear_grid(1e4, 1e4 + 200, 5000)) {
        const double u = w * t;
        if (std::abs(std::cos(2 * u)) <= 0.5) continue;
        const double full = a_ddot_at(m, t);
        const double dominant = std::pow(t, 0.8) * 2 * w * w * std::cos(2 * u);
        EXPECT_NEAR(full / dominant, 1.0, 0.05) << t;
        ++checked;
    }
    EXPECT_GT(checked, 1000);
}

TEST(oscillate, inflectionCounts)
{
    auto grid = log_grid(1.0, 1e8, 2000);
    auto power = synth_derivatives({0.5, 0.9, constant_phase(0.0), 1.0}, grid);
    EXPECT_EQ(inflection_count(power.a_ddot), 0);

    auto dense = ln_t_grid(0.0, 100.0, 100000);
    EXPECT_GE(inflection_count(synth_derivatives(log_model(), dense).a_ddot), 50);

    auto traj = integrate(CosmologyConfig::make(1, 1, 0), 1e-6, 1e3, 1024);
    std::vector<double> t, add;
    for (const auto& r : traj.rows) {
        t.push_back(r.t);
        add.push_back(-r.q * r.a * r.H * r.H);
    }
    EXPECT_EQ(inflection_count(Series(t, add)), 0);
    EXPECT_EQ(inflection_count(Series({1, 2, 3, 4}, {1, 0, -1, 0})), 1);
}

TEST(oscillate, divergentAgeFactorBranches)
{
    const double big = 1e20;
    EXPECT_EQ(f_omega_divergent({0.4, 0.8, constant_phase(std::numbers::pi / 2), 1.0}, big), 0.8);
    EXPECT_EQ(f_omega_divergent({0.4, 0.8, constant_phase(3 * std::numbers::pi + 1e-6), 1.0}, big), 0.4);
    EXPECT_NEAR(f_omega_divergent({0.4, 0.8, constant_phase(3 * std::numbers::pi + 1e-2), 1.0}, big), 0.8, 1e-15);
    EXPECT_NEAR(f_omega_divergent(log_model(), std::exp(std::numbers::pi / 2)), 0.8, 1e-12);
    // Large-t branch: β + 2t·u̇·cot u.
    const double t = 1e18, u = std::log(t);
    EXPECT_NEAR(f_omega_divergent(log_model(), t), 0.8 + 2 / std::tan(u), 1e-6);
}

TEST(oscillate, divergentAgeFactorMatchesHubbleTimesT)
{
    const double t = std::exp(10.0);
    auto m = log_model();
    const double a = a_at(m, t);
    const double ad = a_dot_at(m, t);
    EXPECT_NEAR(f_omega_divergent(m, t), ad * t / a, 1e-4);
}

TEST(oscillate, hesitationIsExactPowerLaw)
{
    auto grid = log_grid(1.0, 1e12, 4096);
    auto track = sample_series([](double) { return std::numbers::pi / 2; }, grid);
    OscillationModel m{0.4, 0.8, spline_phase(track), 1.0};
    auto a = synth_a(m, grid);
    auto d = synth_derivatives(m, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        EXPECT_NEAR(d.a_dot.value(i) / a.value(i) * grid[i], 0.8, 1e-12);
    auto c = classify(a);
    EXPECT_EQ(c.kind, RvKind::RV);
    EXPECT_NEAR(*c.index, 0.8, 1e-6);
}

TEST(oscillate, missingDerivatives)
{
    OscillationModel m{0.4, 0.8, Phase{[](double t) { return std::log(t); }, {}, {}}, 1.0};
    EXPECT_NO_THROW(synth_a(m, log_grid(1, 10, 16)));
    EXPECT_EQ(code_of([&] { synth_derivatives(m, log_grid(1, 10, 16)); }), ErrorCode::MissingDerivatives);
    EXPECT_EQ(code_of([&] { f_omega_divergent(m, 10); }), ErrorCode::MissingDerivatives);
}

TEST(oscillate, oscillatorIsExtendedNotRegular)
{
    auto a = synth_a(log_model(), ln_t_grid(0.0, 100.0, 100000));
    auto c = classify(a);
    EXPECT_EQ(c.kind, RvKind::ER);
    ASSERT_TRUE(c.index_interval.has_value());
    EXPECT_LE(c.index_interval->first, 0.45);
    EXPECT_GE(c.index_interval->second, 0.75);
}
