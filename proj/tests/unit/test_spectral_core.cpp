#include <gtest/gtest.h>

#include "eclab/fft.hpp"
#include "eclab/multipliers.hpp"
#include "test_support.hpp"

using namespace eclab;
using namespace eclab::testing;

TEST(Grid, WavevectorTable) {
    const Grid g = make_grid(8, 2 * kPi);
    EXPECT_EQ(g.mode(0), 0);
    EXPECT_EQ(g.mode(3), 3);
    EXPECT_EQ(g.mode(4), -4);
    EXPECT_EQ(g.mode(7), -1);
    EXPECT_DOUBLE_EQ(g.wavenumber(4), -4.0);
    EXPECT_DOUBLE_EQ(g.wavenumber(0), 0.0);
    for (int m = -4; m < 4; ++m) EXPECT_EQ(g.mode(g.index(m)), m);
}

TEST(Grid, BoxLengthScalesWavenumbers) {
    const Grid g = make_grid(8, 4 * kPi);
    EXPECT_DOUBLE_EQ(g.dk(), 0.5);
    EXPECT_DOUBLE_EQ(g.wavenumber(1), 0.5);
}

TEST(Grid, RejectsBadParameters) {
    EXPECT_THROW(make_grid(7, 2 * kPi), std::invalid_argument);
    EXPECT_THROW(make_grid(6, 2 * kPi), std::invalid_argument);
    EXPECT_THROW(make_grid(8, 0.0), std::invalid_argument);
    EXPECT_THROW(make_grid(8, -1.0), std::invalid_argument);
}

TEST(Transform, CosineHasHalfCoefficients) {
    const Grid g(64);
    const SpectralField f = sample_spectral(g, [](double x, double) { return std::cos(x); });
    EXPECT_NEAR(f.coeff(1, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(f.coeff(-1, 0).real(), 0.5, 1e-15);
    f.coeff(1, 0);
    SpectralField rest = f;
    rest.coeff(1, 0) = 0.0;
    rest.coeff(-1, 0) = 0.0;
    EXPECT_LT(max_abs_coeff(rest), 1e-15);
}

TEST(Transform, ConstantMapsToMean) {
    const Grid g(16);
    const SpectralField f = sample_spectral(g, [](double, double) { return 1.0; });
    EXPECT_NEAR(f.mean().real(), 1.0, 1e-15);
    SpectralField rest = f;
    rest.at(0, 0) = 0.0;
    EXPECT_LT(max_abs_coeff(rest), 1e-15);
}

TEST(Transform, RoundTripOnRandomFields) {
    const Grid g(64);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        PhysicalField f(g);
        for (double& v : f.values()) v = u(rng);
        const PhysicalField back = inverse_transform(forward_transform(f));
        double err = 0.0, mag = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            err = std::max(err, std::abs(back.values()[i] - f.values()[i]));
            mag = std::max(mag, std::abs(f.values()[i]));
        }
        EXPECT_LT(err / mag, 1e-12);
    }
}

TEST(Multipliers, FractionalLaplacianFactors) {
    const Grid g(32);
    EXPECT_NEAR(apply_fractional_laplacian(cosine_mode(g, 1, 0), 1.0).coeff(1, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(apply_fractional_laplacian(cosine_mode(g, 3, 4), 1.0).coeff(3, 4).real(), 2.5, 1e-14);
    EXPECT_NEAR(apply_fractional_laplacian(cosine_mode(g, 1, 1), 2.0).coeff(1, 1).real(), 1.0, 1e-15);
    SpectralField with_mean = cosine_mode(g, 1, 0);
    with_mean.at(0, 0) = 3.0;
    EXPECT_EQ(apply_fractional_laplacian(with_mean, 0.5).mean(), Complex(0.0));
    EXPECT_THROW(apply_fractional_laplacian(with_mean, -0.1), std::invalid_argument);
}

TEST(Multipliers, InverseLambda) {
    const Grid g(32);
    EXPECT_LT(max_abs_diff(apply_inverse_lambda(cosine_mode(g, 1, 0)), cosine_mode(g, 1, 0)), 1e-16);
    EXPECT_LT(max_abs_diff(apply_inverse_lambda(cosine_mode(g, 2, 0)), cosine_mode(g, 2, 0, 0.5)), 1e-16);
    SpectralField bad = cosine_mode(g, 1, 0);
    bad.at(0, 0) = 1.0;
    EXPECT_THROW(apply_inverse_lambda(bad), MeanNotZeroError);
}

TEST(Multipliers, RieszOfCosines) {
    const Grid g(32);
    auto check = [&](const VectorField& got, auto e1, auto e2) {
        EXPECT_LT(max_abs_diff(got.c1, sample_spectral(g, e1)), 1e-15);
        EXPECT_LT(max_abs_diff(got.c2, sample_spectral(g, e2)), 1e-15);
    };
    check(riesz_transform(cosine_mode(g, 1, 0)), [](double x, double) { return -std::sin(x); },
          [](double, double) { return 0.0; });
    check(riesz_transform(cosine_mode(g, 0, 1)), [](double, double) { return 0.0; },
          [](double, double y) { return -std::sin(y); });
    const double r = 1.0 / std::sqrt(2.0);
    check(riesz_transform(cosine_mode(g, 1, 1)), [r](double x, double y) { return -r * std::sin(x + y); },
          [r](double x, double y) { return -r * std::sin(x + y); });
}

TEST(Multipliers, LerayAnnihilatesGradientsAndKeepsSolenoidal) {
    const Grid g(32);
    const VectorField grad(sample_spectral(g, [](double x, double) { return -2.0 * std::sin(2.0 * x); }),
                           SpectralField(g));
    EXPECT_LT(max_abs_coeff(leray_project(grad)), 1e-15);
    const VectorField solenoidal(sample_spectral(g, [](double, double y) { return -std::sin(y); }), SpectralField(g));
    const VectorField p = leray_project(solenoidal);
    EXPECT_LT(max_abs_diff(p.c1, solenoidal.c1), 1e-16);
    EXPECT_LT(max_abs_coeff(p.c2), 1e-16);
}

TEST(Multipliers, LerayOutputIsDivergenceFreeAndIdempotent) {
    const Grid g(32);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        // Full band including Nyquist rows.
        const VectorField v = random_vector(g, seed, 16 - 1);
        VectorField full = v;
        full.c1.coeff(-16, 3) = Complex(0.3, 0.2);
        full.c1.coeff(-16, -3) = Complex(0.3, -0.2);
        const VectorField p = leray_project(full);
        EXPECT_LT(max_divergence(p), 1e-12 * max_abs_coeff(full));
        const VectorField pp = leray_project(p);
        EXPECT_LT(relative_diff(pp.c1, p.c1), 1e-13);
        EXPECT_LT(relative_diff(pp.c2, p.c2), 1e-13);
    }
}

TEST(Multipliers, HeatSemigroup) {
    const Grid g(32);
    EXPECT_NEAR(heat_semigroup(cosine_mode(g, 2, 0), 0.5, 1.0).coeff(2, 0).real(), 0.5 * std::exp(-1.0), 1e-16);
    EXPECT_NEAR(heat_semigroup(cosine_mode(g, 1, 0), 1.0, 2.0).coeff(1, 0).real(), 0.5 * std::exp(-1.0), 1e-16);
    const SpectralField f = random_field(g, 3, 10);
    EXPECT_EQ(max_abs_diff(heat_semigroup(f, 0.0, 1.0), f), 0.0);
    EXPECT_THROW(heat_semigroup(f, -1.0, 1.0), std::invalid_argument);
}

TEST(Multipliers, HeatSemigroupProperty) {
    const Grid g(32);
    for (double a : {0.5, 1.0, 1.5, 2.0}) {
        const SpectralField f = random_field(g, 17, 12);
        const SpectralField two = heat_semigroup(heat_semigroup(f, 0.3, a), 0.45, a);
        EXPECT_LT(relative_diff(two, heat_semigroup(f, 0.75, a)), 1e-13);
    }
}

TEST(Multipliers, GevreyWeight) {
    const Grid g(32);
    const SpectralField f = cosine_mode(g, 1, -2);
    EXPECT_NEAR(gevrey_weight(f, 0.1).coeff(1, -2).real(), 0.5 * std::exp(0.3), 1e-15);
    EXPECT_EQ(max_abs_diff(gevrey_weight(f, 0.0), f), 0.0);
    const SpectralField r = random_field(g, 5, 12);
    EXPECT_LT(relative_diff(gevrey_weight(gevrey_weight(r, 0.1), -0.1), r), 1e-12);
    EXPECT_THROW(gevrey_weight(r, 22.0), OverflowError);
}

TEST(Multipliers, DiagonalOperatorsCommute) {
    const Grid g(32);
    const SpectralField f = random_field(g, 23, 15);
    const VectorField a = riesz_transform(apply_fractional_laplacian(f, 0.7));
    const VectorField r = riesz_transform(f);
    const VectorField b(apply_fractional_laplacian(r.c1, 0.7), apply_fractional_laplacian(r.c2, 0.7));
    EXPECT_LT(relative_diff(a.c1, b.c1), 1e-13);
    EXPECT_LT(relative_diff(a.c2, b.c2), 1e-13);
    EXPECT_LT(relative_diff(apply_inverse_lambda(apply_fractional_laplacian(f, 1.0)), f), 1e-13);
}

TEST(Multipliers, OutputsRemainReal) {
    const Grid g(32);
    // Include Nyquist content to exercise the realness projection.
    SpectralField f = random_field(g, 29, 15);
    f.coeff(-16, 5) = Complex(0.2, 0.1);
    f.coeff(-16, -5) = Complex(0.2, -0.1);
    f.coeff(-16, 0) = 0.4;
    const VectorField r = riesz_transform(f);
    const VectorField v = leray_project(VectorField(f, apply_fractional_laplacian(f, 0.5)));
    for (const SpectralField* out : {&r.c1, &r.c2, &v.c1, &v.c2}) {
        EXPECT_LT(imaginary_residue(*out), 1e-12);
    }
    EXPECT_LT(imaginary_residue(apply_fractional_laplacian(f, 1.3)), 1e-12);
    EXPECT_LT(imaginary_residue(heat_semigroup(f, 0.2, 1.0)), 1e-12);
    EXPECT_LT(imaginary_residue(gevrey_weight(f, 0.05)), 1e-12);
    EXPECT_LT(imaginary_residue(apply_inverse_lambda(f)), 1e-12);
}
