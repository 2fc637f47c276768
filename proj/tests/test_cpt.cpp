#include "gtest/gtest.h"

#include "frv/cpt.hpp"
#include "frv/error.hpp"
#include "frv/friedmann.hpp"
#include "frv/rvcore.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace frv;

namespace {

constexpr Curvature kFlat = Curvature::Flat;
constexpr Curvature kOpen = Curvature::Open;

ErrorCode code_of(const std::function<void()>& f)
{
    try { f(); } catch (const Error& e) { return e.code(); }
    ADD_FAILURE() << "no frv::Error thrown";
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST(cpt, endpointLimits)
{
    EXPECT_NEAR(f_omega(1 - 1e-12, kFlat), 2.0 / 3.0, 1e-6);
    EXPECT_NEAR(f_omega(1 - 1e-12, kOpen), 2.0 / 3.0, 1e-6);
    EXPECT_NEAR(f_omega(1e-12, kOpen), 1.0, 1e-6);
    EXPECT_NEAR(mu_of_omega(1 - 1e-12, kFlat), 2.0 / 9.0, 1e-6);
    EXPECT_LT(mu_of_omega(1e-12, kFlat), 1e-9);
}

TEST(cpt, flatLogarithmicAsymptote)
{
    // F ∼ -(1/3)ln Ω + (2/3)ln 2 as Ω → 0
    for (double om : {1e-6, 1e-10, 1e-100, 1e-300}) {
        EXPECT_NEAR(f_omega(om, kFlat), -std::log(om) / 3 + 2 * std::log(2.0) / 3, 1e-5);
        EXPECT_TRUE(std::isfinite(f_omega(om, kOpen)));
    }
}

TEST(cpt, matchesHighPrecisionOracle)
{
    for (const auto& row : oracle::kCpt) {
        EXPECT_NEAR(f_omega(row.omega, kFlat), row.f_flat, 2e-15 * row.f_flat) << row.omega;
        EXPECT_NEAR(f_omega(row.omega, kOpen), row.f_open, 2e-15) << row.omega;
        EXPECT_NEAR(mu_of_omega(row.omega, kFlat), row.mu_flat, 2e-15 * row.mu_flat) << row.omega;
    }
}

TEST(cpt, continuousAcrossSwitchovers)
{
    for (double x : {1e-6, 0.05}) {
        const double om = 1 - x;
        for (Curvature k : {kFlat, kOpen}) {
            const double below = f_omega(std::nextafter(om, 0.0), k);
            const double above = f_omega(std::nextafter(om, 1.0), k);
            EXPECT_LT(std::abs(below - above), 1e-9);
        }
    }
}

TEST(cpt, strictlyDecreasing)
{
    for (Curvature k : {kFlat, kOpen}) {
        double prev = INFINITY;
        for (int i = 1; i < 10000; ++i) {
            const double F = f_omega(i / 10000.0, k);
            EXPECT_LT(F, prev);
            prev = F;
        }
    }
}

TEST(cpt, muFlatIsIncreasingTowardTwoNinths)
{
    double prev = 0.0;
    for (int i = 1; i < 10000; ++i) {
        const double mu = mu_of_omega(i / 10000.0, kFlat);
        EXPECT_GT(mu, prev);
        EXPECT_LT(mu, 2.0 / 9.0);
        prev = mu;
    }
}

TEST(cpt, domainErrors)
{
    EXPECT_EQ(code_of([] { f_omega(0.0, kFlat); }), ErrorCode::DomainError);
    EXPECT_EQ(code_of([] { f_omega(1.0, kOpen); }), ErrorCode::DomainError);
    EXPECT_EQ(code_of([] { f_omega(1.5, kFlat); }), ErrorCode::DomainError);
    EXPECT_EQ(code_of([] { f_omega(0.5, Curvature::Closed); }), ErrorCode::DomainError);
    EXPECT_EQ(code_of([] { mu_of_omega(-0.1, kFlat); }), ErrorCode::DomainError);
}

TEST(cpt, inverseRoundTrip)
{
    for (Curvature k : {kFlat, kOpen}) {
        for (int i = 1; i <= 99; ++i) {
            const double om = i / 100.0;
            EXPECT_NEAR(f_omega_inverse(f_omega(om, k), k), om, 1e-9) << om;
        }
    }
    EXPECT_NEAR(f_omega_inverse(oracle::kCpt[3].f_flat, kFlat), 0.5, 1e-9);
}

TEST(cpt, inverseNearEndpoints)
{
    EXPECT_NEAR(f_omega_inverse(2.0 / 3.0 + 1e-9, kFlat), 1.0, 1e-6);
    EXPECT_NEAR(f_omega_inverse(2.0 / 3.0 + 1e-9, kOpen), 1.0, 1e-6);
    const double om = f_omega_inverse(50.0, kFlat);
    EXPECT_NEAR(f_omega(om, kFlat), 50.0, 1e-12);
    EXPECT_EQ(code_of([] { f_omega_inverse(0.5, kOpen); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { f_omega_inverse(1.0, kOpen); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { f_omega_inverse(2.0 / 3.0, kFlat); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { f_omega_inverse(1e6, kFlat); }), ErrorCode::OutOfRange);
}

TEST(cpt, decelerationRelation)
{
    EXPECT_EQ(q_of(1, 0), 0.5);
    EXPECT_EQ(q_of(0, 1), -1.0);
    EXPECT_NEAR(q_of(0.3, 0.7), -0.55, 1e-15);
}

TEST(cpt, reconstructConstantOmegaIsPowerLaw)
{
    const double w = 0.37, t0 = 2.0, a0 = 0.1;
    auto track = sample([w](double) { return w; }, log_grid(t0, 1e5, 300));
    auto a = reconstruct_a(track, kFlat, t0, a0);
    EXPECT_EQ(a.value(0), a0);
    const double F = f_omega(w, kFlat);
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_NEAR(a.value(i) / (a0 * std::pow(a.t(i) / t0, F)), 1.0, 1e-8);
    EXPECT_THROW(reconstruct_a(track, kFlat, 1.0, a0), Error);
}

TEST(cpt, reconstructApproachingOneIsRvTwoThirds)
{
    auto track = sample([](double t) { return 1 - 1 / std::log(t); }, log_grid(std::exp(2.0), std::exp(600.0), 8192));
    auto a = reconstruct_a(track, kFlat, track.front_t(), 1.0);
    auto c = classify(a);
    EXPECT_EQ(c.kind, RvKind::RV);
    ASSERT_TRUE(c.index.has_value());
    EXPECT_NEAR(*c.index, 2.0 / 3.0, 1e-2);
}

TEST(cpt, reconstructBoundedOmegaIsExtendedRegular)
{
    const double w_min = 0.2, w_max = 0.8;
    for (Curvature k : {kFlat, kOpen}) {
        auto track = sample([](double t) { return 0.5 + 0.3 * std::sin(std::log(t)); }, log_grid(1, 1e12, 8192));
        auto a = reconstruct_a(track, k, 1.0, 1.0);
        auto c = classify(a);
        EXPECT_TRUE(c.kind == RvKind::RV || c.kind == RvKind::ER);
        ASSERT_TRUE(c.index_interval.has_value());
        EXPECT_GE(c.index_interval->first, f_omega(w_max, k) - 0.05);
        EXPECT_LE(c.index_interval->second, f_omega(w_min, k) + 0.05);
    }
}

TEST(cpt, reconstructLambdaTrackGrowsExponentially)
{
    auto cfg = CosmologyConfig::make(1, 0.3, 0.7);
    auto traj = integrate(cfg, 1e-6, 1e3, 4096);
    std::vector<double> t, om;
    for (const auto& r : traj.rows)
        if (r.a >= 1e-3) {
            t.push_back(r.t);
            om.push_back(r.Omega);
        }
    SampledFunction track(t, om);
    auto a = reconstruct_a(track, kFlat, t.front(), traj.rows[traj.rows.size() - t.size()].a);
    const std::size_t n = a.size(), i0 = n - n / 10;
    const double slope = std::log(a.value(n - 1) / a.value(i0)) / (a.t(n - 1) - a.t(i0));
    EXPECT_NEAR(slope / std::sqrt(cfg.Lambda() / 3), 1.0, 1e-2);
}
