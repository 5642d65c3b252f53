#include <gtest/gtest.h>

#include <cmath>

#include "eclab/mild_solver.hpp"
#include "eclab/quadrature.hpp"
#include "eclab/fitting.hpp"
#include "test_support.hpp"

using namespace eclab;
using namespace eclab::testing;

namespace {

RunConfig config(int n = 32) {
    RunConfig cfg;
    cfg.n = n;
    return cfg;
}

SpectralField two_mode(const Grid& g, double scale) {
    return cosine_mode(g, 1, 0, scale) + cosine_mode(g, 1, 1, scale);
}

}  // namespace

TEST(MildSolver, EpNormExamples) {
    const Grid g(32);
    const DyadicSpec spec = make_dyadic_spec(g);
    const double l2 = std::sqrt(2.0) * kPi;

    Trajectory zero(g);
    for (int i = 0; i <= 4; ++i) zero.push(0.25 * i, SpectralField(g));
    EXPECT_EQ(ep_norm(zero, 2.0, spec), 0.0);

    Trajectory still(g);
    for (int i = 0; i <= 4; ++i) still.push(0.25 * i, cosine_mode(g, 1, 0));
    EXPECT_NEAR(ep_norm(still, 2.0, spec), 2.0 * l2, 1e-12);

    Trajectory decay(g);
    for (int i = 0; i <= 1000; ++i) decay.push(1e-3 * i, std::exp(-1e-3 * i) * cosine_mode(g, 1, 0));
    EXPECT_NEAR(ep_norm(decay, 2.0, spec), l2 * (2.0 - std::exp(-1.0)), 1e-6);
}

TEST(MildSolver, DuhamelOfZeroIsFreeEvolution) {
    const Grid g(32);
    const RunConfig cfg = config();
    const SpectralField rho0 = two_mode(g, 0.5);
    const auto times = mild_time_grid(1.0, 20);
    Trajectory zero(g);
    for (double t : times) zero.push(t, SpectralField(g));
    const Trajectory out = duhamel_apply(zero, rho0, cfg);
    for (std::size_t i = 0; i < out.size(); ++i) {
        EXPECT_LT(max_abs_diff(out[i], heat_semigroup(rho0, times[i], 1.0)), 1e-16);
    }
}

TEST(MildSolver, SingleModeIsAFixedPoint) {
    const Grid g(32);
    const RunConfig cfg = config();
    const SpectralField rho0 = cosine_mode(g, 1, 0);
    const Trajectory free = free_evolution(rho0, mild_time_grid(1.0, 20), cfg);
    const Trajectory out = duhamel_apply(free, rho0, cfg);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_LT(max_abs_diff(out[i], free[i]), 1e-16);
}

TEST(MildSolver, QuadratureIsSecondOrder) {
    const Grid g(32);
    const RunConfig cfg = config();
    const SpectralField rho0 = two_mode(g, 0.5);
    auto final_correction = [&](int m) {
        const Trajectory free = free_evolution(rho0, mild_time_grid(1.0, m), cfg);
        const Trajectory c = duhamel_correction(free, free, cfg);
        return c[c.size() - 1];
    };
    const SpectralField fine = final_correction(640);
    const double e1 = coefficient_norm(final_correction(20) - fine);
    const double e2 = coefficient_norm(final_correction(40) - fine);
    EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.15);
}

TEST(MildSolver, CorrectionIsBilinearInItsSources) {
    const Grid g(32);
    const RunConfig cfg = config();
    const Trajectory free = free_evolution(two_mode(g, 0.3), mild_time_grid(0.5, 10), cfg);
    auto scaled = [&](double c) {
        Trajectory out(g);
        for (std::size_t i = 0; i < free.size(); ++i) out.push(free.times()[i], c * free[i]);
        return out;
    };
    const Trajectory base = duhamel_correction(free, free, cfg);
    // u is quadratic in its source, the flux linear in the transported scalar.
    const Trajectory both = duhamel_correction(scaled(2.0), scaled(3.0), cfg);
    for (std::size_t i = 0; i < base.size(); ++i) {
        EXPECT_LT(max_abs_diff(both[i], 12.0 * base[i]), 1e-14 * std::max(1.0, max_abs_coeff(both[i])));
    }
}

TEST(MildSolver, ZeroDataConvergesImmediately) {
    const Grid g(32);
    const PicardResult r = iterate_to_fixed_point(SpectralField(g), PicardOptions{}, config());
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.iterations, 1);
    EXPECT_EQ(max_abs_coeff(r.solution[r.solution.size() - 1]), 0.0);
}

TEST(MildSolver, SmallDataContractsAndMatchesStepper) {
    RunConfig cfg = config();
    cfg.final_time = 1.0;
    cfg.output_every = 10;
    cfg.dt = 1e-3;
    const Grid g(cfg.n);
    const SpectralField rho0 = prepare_initial_data(two_mode(g, 1e-3), cfg);
    PicardOptions opts;
    opts.intervals = 100;
    const PicardResult r = iterate_to_fixed_point(rho0, opts, cfg);
    EXPECT_TRUE(r.converged);
    EXPECT_TRUE(r.contracted);
    ASSERT_FALSE(r.factors.empty());
    for (double f : r.factors) EXPECT_LT(f, 1.0);

    // The converged trajectory reproduces itself under the Duhamel map.
    const Trajectory again = duhamel_apply(r.solution, rho0, cfg);
    const DyadicSpec spec = make_dyadic_spec(g);
    Trajectory diff(g);
    for (std::size_t i = 0; i < again.size(); ++i) diff.push(again.times()[i], again[i] - r.solution[i]);
    EXPECT_LE(ep_norm(diff, 2.0, spec), opts.tol * ep_norm(r.solution, 2.0, spec));

    const Trajectory stepped = run_from(rho0, cfg);
    ASSERT_EQ(stepped.size(), r.solution.size());
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < stepped.size(); ++i) {
        EXPECT_NEAR(stepped.times()[i], r.solution.times()[i], 1e-12);
        worst = std::max(worst, l2_norm(stepped[i] - r.solution[i]));
        scale = std::max(scale, l2_norm(stepped[i]));
    }
    EXPECT_LT(worst, 1e-4 * scale);
}

TEST(MildSolver, LargeDataDoesNotContract) {
    const Grid g(32);
    PicardOptions opts;
    opts.intervals = 50;
    opts.max_iter = 12;
    const PicardResult r = iterate_to_fixed_point(two_mode(g, 1e3), opts, config());
    EXPECT_FALSE(r.contracted);
    EXPECT_FALSE(r.converged);
}

TEST(MildSolver, SmallnessScan) {
    const Grid g(32);
    PicardOptions opts;
    opts.intervals = 50;
    opts.max_iter = 12;
    const ScanResult zero = smallness_scan(two_mode(g, 1.0), {0.0}, opts, config());
    ASSERT_EQ(zero.rows.size(), 1u);
    EXPECT_TRUE(zero.rows[0].contracted);
    EXPECT_FALSE(zero.threshold.has_value());

    const ScanResult scan = smallness_scan(two_mode(g, 1.0), {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0}, opts, config());
    ASSERT_TRUE(scan.cubic_exponent.has_value());
    EXPECT_NEAR(*scan.cubic_exponent, 3.0, 0.2);
    ASSERT_TRUE(scan.threshold.has_value());
    // Once contraction fails it stays failed at larger scales.
    bool failed = false;
    for (const ScanRow& row : scan.rows) {
        if (!row.contracted) failed = true;
        if (failed) EXPECT_FALSE(row.contracted) << row.scale;
    }
    EXPECT_THROW(smallness_scan(two_mode(g, 1.0), {1.0, 0.1}, opts, config()), std::invalid_argument);
}

TEST(MildSolver, GevreyNorm) {
    const Grid g(32);
    const DyadicSpec spec = make_dyadic_spec(g);
    const RunConfig cfg = config();
    Trajectory zero(g);
    for (int i = 0; i <= 4; ++i) zero.push(0.25 * i, SpectralField(g));
    EXPECT_EQ(gevrey_ep_norm(zero, 0.25, 2.0, spec), 0.0);
    EXPECT_THROW(gevrey_ep_norm(zero, 0.3, 2.0, spec), std::invalid_argument);
    EXPECT_THROW(gevrey_ep_norm(zero, 0.0, 2.0, spec), std::invalid_argument);

    // cos x1 under the weight decays like exp((a - 1) t); the sup term is the
    // t = 0 value and the integral term grows with T.
    const SpectralField f = cosine_mode(g, 1, 0);
    const double l2 = std::sqrt(2.0) * kPi;
    const Trajectory free = free_evolution(f, mild_time_grid(2.0, 2000), cfg);
    const double expected = l2 * (1.0 + (1.0 - std::exp(-0.75 * 2.0)) / 0.75);
    EXPECT_NEAR(gevrey_ep_norm(free, 0.25, 2.0, spec), expected, 1e-6);

    double prev = 0.0;
    for (double a : {0.05, 0.1, 0.2, 0.25}) {
        const double v = gevrey_ep_norm(free, a, 2.0, spec);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(MildSolver, AnalyticityRadius) {
    const Grid g(64);
    SpectralField synthetic(g);
    for (int m1 = -31; m1 <= 31; ++m1)
        for (int m2 = -31; m2 <= 31; ++m2) synthetic.coeff(m1, m2) = std::exp(-0.5 * (std::abs(m1) + std::abs(m2)));
    synthetic.at(0, 0) = 0.0;
    ASSERT_TRUE(analyticity_radius(synthetic).has_value());
    EXPECT_NEAR(*analyticity_radius(synthetic), 0.5, 0.01);

    EXPECT_FALSE(analyticity_radius(cosine_mode(g, 2, 0)).has_value());
    EXPECT_FALSE(analyticity_radius(SpectralField(g)).has_value());

    // Heat flow sharpens Fourier decay.
    SpectralField data(g);
    for (int m1 = -20; m1 <= 20; ++m1)
        for (int m2 = -20; m2 <= 20; ++m2) data.coeff(m1, m2) = std::exp(-0.8 * (std::abs(m1) + std::abs(m2)));
    data.at(0, 0) = 0.0;
    double prev = 0.0;
    for (double t : {0.0, 0.25, 0.5, 1.0, 2.0}) {
        const auto r = analyticity_radius(heat_semigroup(data, t, 1.0));
        ASSERT_TRUE(r.has_value());
        EXPECT_GE(*r, prev - 1e-12);
        prev = *r;
    }
}

TEST(Numerics, LineFit) {
    const LineFit f = fit_line({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
    EXPECT_NEAR(f.slope, 2.0, 1e-15);
    EXPECT_NEAR(f.intercept, 1.0, 1e-15);
    EXPECT_NEAR(f.residual, 0.0, 1e-15);
    EXPECT_THROW(fit_line({1.0}, {1.0}), std::invalid_argument);
    EXPECT_THROW(fit_line({1.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
    EXPECT_NEAR(fit_proportional({1.0, 2.0}, {2.0, 4.0}), 2.0, 1e-15);
}

TEST(Numerics, AdaptiveQuadrature) {
    const auto r = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-14, 1e-14);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, std::exp(1.0) - 1.0, 1e-14);
    const auto s = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10, 1e-10, 4000);
    EXPECT_NEAR(s.value, 2.0, 1e-7);
}
