#include <gtest/gtest.h>

#include <cmath>

#include "eclab/diagnostics.hpp"
#include "eclab/evolution.hpp"
#include "eclab/mild_solver.hpp"
#include "test_support.hpp"

using namespace eclab;
using namespace eclab::testing;

namespace {

Trajectory linear_decay(const Grid& g, double horizon, int steps) {
    RunConfig cfg;
    cfg.n = g.n();
    return free_evolution(cosine_mode(g, 1, 0), mild_time_grid(horizon, steps), cfg);
}

}  // namespace

TEST(Diagnostics, RefinedSupNorm) {
    const Grid g(32);
    // Peak off the grid: cos(x1 - 0.05) has max 1 between nodes.
    SpectralField f(g);
    f.coeff(1, 0) = 0.5 * std::polar(1.0, -0.05);
    f.coeff(-1, 0) = 0.5 * std::polar(1.0, 0.05);
    const double grid_max = lp_norm(inverse_transform(f), kInfinity);
    EXPECT_LT(grid_max, 1.0 - 1e-4);
    EXPECT_NEAR(linf_norm(f), 1.0, 1e-14);
    EXPECT_EQ(linf_norm(SpectralField(g)), 0.0);

    const SpectralField r = random_field(g, 4, 6);
    EXPECT_GE(linf_norm(r), lp_norm(inverse_transform(r), kInfinity));
}

TEST(Diagnostics, EnergyBudgetLinearDecay) {
    const Grid g(32);
    const EnergyBudget b = energy_budget(linear_decay(g, 1.0, 1000), 1.0, 0.0);
    EXPECT_EQ(b.residual.values.size(), 1000u);
    EXPECT_LT(b.max_relative, 1e-10);
}

TEST(Diagnostics, EnergyBudgetNonlinearRuns) {
    for (double eps : {0.0, 1e-3}) {
        RunConfig cfg;
        cfg.n = 32;
        cfg.viscosity = eps;
        cfg.ic.kind = "two_mode";
        cfg.final_time = 0.2;
        cfg.output_every = 5;
        const EnergyBudget b = energy_budget(run(cfg), cfg.alpha, cfg.viscosity);
        EXPECT_LT(b.max_relative, 1e-6) << eps;
        // Dropping the viscous term must be visible.
        if (eps > 0.0) EXPECT_GT(energy_budget(run(cfg), cfg.alpha, 0.0).max_relative, 1e-4);
    }
}

TEST(Diagnostics, Monotonicity) {
    const Grid g(32);
    const Trajectory t = linear_decay(g, 1.0, 20);
    EXPECT_TRUE(lp_monotonicity(t, 4.0).empty());
    EXPECT_TRUE(lp_monotonicity(t, kInfinity).empty());
    const auto bad = monotonicity_violations({3.0, 2.0, 2.0 + 1e-12, 2.5, 1.0});
    ASSERT_EQ(bad.size(), 1u);
    EXPECT_EQ(bad[0], 3u);
}

TEST(Diagnostics, LinfEnvelope) {
    const Grid g(32);
    const FitResult fit = linf_decay_fit(linear_decay(g, 1.0, 20));
    EXPECT_TRUE(fit.pass);
    // y = e^t - 1 >= c t with c = min (e^t - 1)/t over the window, whose
    // first sample is t = 0.05.
    EXPECT_NEAR(fit.params.at("c"), (std::exp(0.05) - 1.0) / 0.05, 1e-10);

    Trajectory zero(g);
    zero.push(0.0, SpectralField(g));
    zero.push(1.0, SpectralField(g));
    EXPECT_THROW(linf_decay_fit(zero), std::invalid_argument);
}

TEST(Diagnostics, ExponentialRate) {
    DiagnosticSeries s;
    for (int i = 0; i <= 100; ++i) {
        s.times.push_back(0.05 * i);
        s.values.push_back(3.0 * std::exp(-2.0 * 0.05 * i));
    }
    const FitResult fit = exp_decay_rate(s, 0.0, 5.0);
    EXPECT_NEAR(fit.params.at("rate"), -2.0, 2e-6);
    EXPECT_NEAR(fit.params.at("intercept"), std::log(3.0), 1e-6);
    s.values[10] = 0.0;
    EXPECT_THROW(exp_decay_rate(s, 0.0, 5.0), std::invalid_argument);

    const Grid g(32);
    const DiagnosticSeries half = sobolev_series(linear_decay(g, 2.0, 40), 0.5);
    DiagnosticSeries squared = half;
    for (double& v : squared.values) v *= v;
    EXPECT_NEAR(exp_decay_rate(squared, 0.5, 2.0).params.at("rate"), -2.0, 1e-10);
}

TEST(Diagnostics, SobolevGrowth) {
    const Grid g(32);
    const FitResult fit = hs_growth_check(linear_decay(g, 1.0, 20), 2.0, 1.5);
    EXPECT_TRUE(fit.pass);
    EXPECT_LE(fit.params.at("C1"), 0.0);
    EXPECT_THROW(hs_growth_check(linear_decay(g, 1.0, 20), 2.0, 1.0), std::invalid_argument);

    const DiagnosticSeries s = sobolev_series(linear_decay(g, 1.0, 20), 3.0);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        EXPECT_NEAR(s.values[i], std::exp(-s.times[i]) * std::sqrt(2.0) * kPi, 1e-12);
    }
}

TEST(Diagnostics, CordobaPositivity) {
    const Grid g(32);
    const CordobaResult c = cordoba_positivity(cosine_mode(g, 1, 0), 2.0);
    EXPECT_NEAR(c.integral, 2.0 * kPi * kPi, 1e-12);
    EXPECT_EQ(cordoba_positivity(SpectralField(g), 3.0).integral, 0.0);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const SpectralField f = random_field(g, seed, 5);
        for (double p : {2.0, 3.0, 4.0}) EXPECT_TRUE(cordoba_positivity(f, p).pass()) << seed << " " << p;
    }
    EXPECT_THROW(cordoba_positivity(cosine_mode(g, 1, 0), 1.5), std::invalid_argument);
}

TEST(Diagnostics, WeightedShellIntegral) {
    // alpha = 0 closed form.
    for (int j : {-3, 0, 4}) {
        for (double t : {0.1, 1.0, 10.0}) {
            const double rate = std::ldexp(2.0, j);
            EXPECT_NEAR(weighted_shell_integral(j, t, 0.0, 2.0), (1.0 - std::exp(-rate * t)) / 2.0, 1e-12);
        }
    }
    // alpha = 1/2, j = 0, t = 1, c = 1: e^-1 sum 1 / (n! (n + 1/2)).
    double series = 0.0, fact = 1.0;
    for (int k = 0; k < 30; ++k) {
        if (k > 0) fact *= k;
        series += 1.0 / (fact * (k + 0.5));
    }
    EXPECT_NEAR(weighted_shell_integral(0, 1.0, 0.5, 1.0), std::exp(-1.0) * series, 1e-12);

    const ShellIntegralTable table = weighted_shell_check({-5, 0, 10}, {0.01, 1.0, 100.0}, 0.9, 1.0);
    EXPECT_TRUE(table.pass);
    EXPECT_EQ(table.rows.size(), 9u);
    EXPECT_LT(table.sup_ratio, 1e3);
}

TEST(Diagnostics, Uniqueness) {
    RunConfig cfg;
    cfg.n = 32;
    cfg.ic.kind = "two_mode";
    cfg.final_time = 0.5;
    const Trajectory a = run(cfg);
    const Trajectory b = run(cfg);
    const UniquenessReport same = uniqueness_divergence(a, b);
    EXPECT_TRUE(same.identical);
    EXPECT_TRUE(same.pass);
    for (double d : same.distance.values) EXPECT_EQ(d, 0.0);

    SpectralField perturbed = a[0];
    perturbed.coeff(2, 1) += 1e-10;
    perturbed.coeff(-2, -1) += 1e-10;
    const UniquenessReport diff = uniqueness_divergence(a, run_from(perturbed, cfg));
    EXPECT_FALSE(diff.identical);
    EXPECT_TRUE(diff.pass);
    EXPECT_TRUE(std::isfinite(diff.fitted_constant));
}

TEST(Diagnostics, WeightedBesov) {
    const Grid g(32);
    const DyadicSpec spec = make_dyadic_spec(g);
    Trajectory still(g);
    still.push(0.0, cosine_mode(g, 1, 0));
    still.push(1.0, cosine_mode(g, 1, 0));
    EXPECT_NEAR(weighted_besov_sup(still, 0.0, 1.5, spec), 1.0, 1e-14);
    EXPECT_THROW(weighted_besov_sup(still, 0.5, 1.5, spec), std::invalid_argument);

    // t^{1/2} e^{-t} peaks at t = 1/2.
    RunConfig cfg;
    cfg.n = 32;
    Trajectory free = free_evolution(cosine_mode(g, 1, 0), mild_time_grid(3.0, 300), cfg);
    Trajectory positive(g);
    for (std::size_t i = 1; i < free.size(); ++i) positive.push(free.times()[i], free[i]);
    EXPECT_NEAR(weighted_besov_sup(positive, 0.5, 1.5, spec), std::sqrt(0.5) * std::exp(-0.5), 1e-12);
}
