#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eclab/littlewood_paley.hpp"
#include "eclab/products.hpp"
#include "test_support.hpp"

using namespace eclab;
using namespace eclab::testing;

namespace {

double ref_b(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double ref_cutoff(double r) {
    if (r <= 0.5) return 1.0;
    if (r >= 0.625) return 0.0;
    const double x = (r - 0.5) / 0.125;
    return 1.0 - ref_b(x) / (ref_b(x) + ref_b(1.0 - x));
}
double ref_shell(double r) { return ref_cutoff(r / 2.0) - ref_cutoff(r); }

}  // namespace

TEST(LittlewoodPaley, CutoffProfile) {
    for (double r = 0.0; r <= 0.5; r += 0.01) EXPECT_EQ(dyadic_cutoff(r), 1.0);
    for (double r = 0.625; r <= 3.0; r += 0.01) EXPECT_EQ(dyadic_cutoff(r), 0.0);
    double prev = 1.0;
    for (double r = 0.5; r <= 0.625; r += 1e-4) {
        const double v = dyadic_cutoff(r);
        EXPECT_LE(v, prev);
        EXPECT_GE(v, 0.0);
        EXPECT_NEAR(v, ref_cutoff(r), 1e-15);
        prev = v;
    }
}

TEST(LittlewoodPaley, SpecRange) {
    const DyadicSpec s64 = make_dyadic_spec(Grid(64));
    EXPECT_EQ(s64.j_min, -1);
    EXPECT_EQ(s64.j_max, 7);
    // ceil(log2(4 sqrt 2)) + 1 = 4 for n = 8.
    const DyadicSpec s8 = make_dyadic_spec(Grid(8));
    EXPECT_EQ(s8.j_min, -1);
    EXPECT_EQ(s8.j_max, 4);
}

TEST(LittlewoodPaley, PartitionOfUnity) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 60.0);
    for (int i = 0; i < 200; ++i) {
        const double r = u(rng);
        double sum = dyadic_cutoff(r);
        for (int j = 0; j <= 8; ++j) sum += DyadicSpec::shell(j, r);
        EXPECT_NEAR(sum, 1.0, 1e-10);
    }
    const Grid g(64);
    const DyadicSpec spec = make_dyadic_spec(g);
    for (int i1 = 0; i1 < g.n(); ++i1) {
        for (int i2 = 0; i2 < g.n(); ++i2) {
            if (i1 == 0 && i2 == 0) continue;
            const double k = std::hypot(g.wavenumber(i1), g.wavenumber(i2));
            double sum = 0.0;
            for (int j = spec.j_min; j <= spec.j_max; ++j) sum += DyadicSpec::shell(j, k);
            EXPECT_NEAR(sum, 1.0, 1e-12);
        }
    }
}

TEST(LittlewoodPaley, SingleModeBlocks) {
    const Grid g(64);
    const DyadicSpec spec = make_dyadic_spec(g);
    const SpectralField f = cosine_mode(g, 1, 0);
    for (int j = spec.j_min; j <= spec.j_max; ++j) {
        const SpectralField b = dyadic_block(f, j, spec);
        if (j == 0) {
            EXPECT_LT(max_abs_diff(b, f), 1e-16);
        } else {
            EXPECT_EQ(max_abs_coeff(b), 0.0);
        }
    }
    const SpectralField f3 = cosine_mode(g, 3, 0);
    EXPECT_NEAR(dyadic_block(f3, 2, spec).coeff(3, 0).real(), 0.5 * ref_shell(0.75), 1e-15);
    EXPECT_NEAR(dyadic_block(f3, 1, spec).coeff(3, 0).real(), 0.5 * ref_shell(1.5), 1e-15);
    EXPECT_THROW(dyadic_block(f, spec.j_max + 1, spec), std::out_of_range);
    EXPECT_THROW(dyadic_block(f, spec.j_min - 1, spec), std::out_of_range);
}

TEST(LittlewoodPaley, BlockSupportIsExact) {
    const Grid g(64);
    const DyadicSpec spec = make_dyadic_spec(g);
    const SpectralField f = random_field(g, 3, 31);
    for (int j = spec.j_min; j <= spec.j_max; ++j) {
        const SpectralField b = dyadic_block(f, j, spec);
        const double lo = std::ldexp(0.5, j), hi = std::ldexp(1.25, j);
        for (int i1 = 0; i1 < g.n(); ++i1) {
            for (int i2 = 0; i2 < g.n(); ++i2) {
                const double k = std::hypot(g.wavenumber(i1), g.wavenumber(i2));
                if (k < lo || k > hi) EXPECT_EQ(b.at(i1, i2), Complex(0.0));
            }
        }
    }
}

TEST(LittlewoodPaley, Reconstruction) {
    const Grid g(64);
    const DyadicSpec spec = make_dyadic_spec(g);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SpectralField f = random_field(g, seed, 31);
        EXPECT_LT(relative_diff(reconstruct(decompose(f, spec), g), f), 1e-12);
    }
}

TEST(LittlewoodPaley, LowPass) {
    const Grid g(64);
    const DyadicSpec spec = make_dyadic_spec(g);
    const SpectralField f = cosine_mode(g, 1, 0);
    EXPECT_LT(max_abs_diff(low_pass(f, 2, spec), f), 1e-16);
    EXPECT_EQ(max_abs_coeff(low_pass(f, 0, spec)), 0.0);

    const SpectralField r = random_field(g, 11, 31);
    for (int j = spec.j_min; j <= spec.j_max + 1; ++j) {
        const SpectralField s = low_pass(r, j, spec);
        EXPECT_LT(max_abs_diff(s, low_pass_by_blocks(r, j, spec)), 1e-12 * max_abs_coeff(r));
        SpectralField total = s;
        for (int k = std::max(j, spec.j_min); k <= spec.j_max; ++k) total += dyadic_block(r, k, spec);
        EXPECT_LT(relative_diff(total, r), 1e-12);
    }
}

TEST(LittlewoodPaley, BesovNorms) {
    const Grid g(64);
    const DyadicSpec spec = make_dyadic_spec(g);
    const SpectralField f = cosine_mode(g, 1, 0);
    for (double s : {-1.0, 0.0, 0.5, 2.0}) {
        EXPECT_NEAR(besov_norm(f, s, 2.0, 2.0, spec), std::sqrt(2.0) * kPi, 1e-12);
    }
    EXPECT_EQ(besov_norm(SpectralField(g), 1.0, 2.0, 2.0, spec), 0.0);

    // cos x1 sits in shell 0 and cos 4 x2 in shell 2; L^1 norms by grid sums.
    const auto l1 = [&](auto fn) {
        double sum = 0.0;
        for (int i1 = 0; i1 < g.n(); ++i1)
            for (int i2 = 0; i2 < g.n(); ++i2) sum += std::abs(fn(i1 * g.dx(), i2 * g.dx()));
        return sum * g.dx() * g.dx();
    };
    const double a = l1([](double x, double) { return std::cos(x); });
    const double b = l1([](double, double y) { return std::cos(4 * y); });
    const SpectralField h = cosine_mode(g, 1, 0) + cosine_mode(g, 0, 4);
    EXPECT_NEAR(besov_norm(h, 1.0, 1.0, 1.0, spec), a + 4.0 * b, 1e-10);
    EXPECT_NEAR(besov_norm(h, 1.0, 1.0, kInfinity, spec), 4.0 * b, 1e-10);
}

TEST(LittlewoodPaley, TimeBesovNorms) {
    const Grid g(64);
    const DyadicSpec spec = make_dyadic_spec(g);
    const SpectralField f = cosine_mode(g, 1, 0);
    const double l2 = std::sqrt(2.0) * kPi;

    Trajectory constant(g);
    for (int i = 0; i <= 10; ++i) constant.push(0.1 * i, f);
    EXPECT_NEAR(time_besov_norm(constant, 0.0, 2.0, 2.0, kInfinity, spec), l2, 1e-12);
    EXPECT_NEAR(time_besov_norm(constant, 0.0, 2.0, 2.0, 1.0, spec), l2, 1e-12);

    Trajectory decaying(g);
    for (int i = 0; i <= 1000; ++i) decaying.push(1e-3 * i, std::exp(-1e-3 * i) * f);
    EXPECT_NEAR(time_besov_norm(decaying, 0.0, 2.0, 2.0, 1.0, spec), (1.0 - std::exp(-1.0)) * l2, 1e-6);

    EXPECT_THROW(time_besov_norm(Trajectory(g), 0.0, 2.0, 2.0, 1.0, spec), std::invalid_argument);
}

TEST(LittlewoodPaley, ParaproductOfCosines) {
    const Grid g(64);
    const DyadicSpec spec = make_dyadic_spec(g);
    const SpectralField f = cosine_mode(g, 1, 0);
    const ParaproductSplit split = paraproduct_split(f, f, 1, spec);
    // cos^2 x1 = 1/2 + cos(2 x1)/2; shell 1 sees |k| = 2 with weight Psi(1).
    const SpectralField expected = dyadic_block(padded_product(f, f), 1, make_dyadic_spec(split.product_block.grid()));
    EXPECT_LT(max_abs_diff(split.product_block, expected), 1e-15);
    EXPECT_NEAR(split.product_block.coeff(2, 0).real(), 0.25 * ref_shell(1.0), 1e-15);
    EXPECT_LT(max_abs_diff(split.low_high + split.high_low, split.product_block), 1e-12);

    const ParaproductSplit zero = paraproduct_split(f, SpectralField(g), 1, spec);
    EXPECT_EQ(max_abs_coeff(zero.low_high), 0.0);
    EXPECT_EQ(max_abs_coeff(zero.high_low), 0.0);
}

TEST(LittlewoodPaley, ParaproductIdentityOnRandomFields) {
    const Grid g(32);
    const DyadicSpec spec = make_dyadic_spec(g);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        SpectralField f = random_field(g, seed, 15);
        SpectralField h = random_field(g, seed + 50, 15);
        f *= 1.0 / coefficient_norm(f);
        h *= 1.0 / coefficient_norm(h);
        for (int j = spec.j_min; j <= spec.j_max; ++j) {
            const ParaproductSplit split = paraproduct_split(f, h, j, spec);
            const double scale = std::max(coefficient_norm(split.product_block), 1e-300);
            EXPECT_LT(coefficient_norm(split.low_high + split.high_low - split.product_block), 1e-12 * std::max(scale, 1.0));
        }
    }
}

TEST(LittlewoodPaley, ParaproductVanishingTerms) {
    const Grid g(32);
    const DyadicSpec spec = make_dyadic_spec(g);
    SpectralField f = random_field(g, 5, 15);
    SpectralField h = random_field(g, 6, 15);
    f *= 1.0 / coefficient_norm(f);
    h *= 1.0 / coefficient_norm(h);
    for (int j = spec.j_min; j <= spec.j_max; ++j) {
        for (int k = spec.j_min; k <= j - 2; ++k) {
            EXPECT_LT(max_abs_coeff(paraproduct_high_low_term(f, h, j, k)), 1e-12);
        }
        for (int k = spec.j_min; k <= j - 3; ++k) {
            EXPECT_LT(max_abs_coeff(paraproduct_low_high_term(f, h, j, k)), 1e-12);
        }
    }
    // A term just inside the retained range is generically nonzero.
    EXPECT_GT(max_abs_coeff(paraproduct_high_low_term(f, h, 3, 2)), 1e-6);
}

TEST(LittlewoodPaley, BernsteinRatios) {
    const Grid g(64);
    const DyadicSpec spec = make_dyadic_spec(g);
    const SpectralField f = cosine_mode(g, 1, 0);
    EXPECT_NEAR(*bernstein_ratio(f, 0, 2.0, 2.0, spec), 1.0, 1e-14);
    EXPECT_NEAR(*bernstein_ratio(f, 0, 2.0, kInfinity, spec), 1.0 / (std::sqrt(2.0) * kPi), 1e-14);
    EXPECT_FALSE(bernstein_ratio(f, 3, 2.0, 2.0, spec).has_value());

    double worst = 0.0, worst_derivative = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const int j = static_cast<int>(seed % 4) + 1;
        const SpectralField r = random_field(g, seed, 31);
        if (auto v = bernstein_ratio(r, j, 2.0, kInfinity, spec)) worst = std::max(worst, *v);
        if (auto v = derivative_bernstein_ratio(r, j, 1, 2.0, spec)) worst_derivative = std::max(worst_derivative, *v);
    }
    EXPECT_LT(worst, 10.0);
    EXPECT_LE(worst_derivative, 1.25 + 1e-12);
}

TEST(LittlewoodPaley, SemigroupLocalization) {
    const Grid g(64);
    const DyadicSpec spec = make_dyadic_spec(g);
    const SpectralField f = random_field(g, 9, 31);
    for (int j = 0; j <= 4; ++j) {
        for (double t : {0.0, 0.1, 0.5, 1.0}) {
            const auto ratio = localization_ratio(f, j, t, 1.0, 2.0, spec);
            ASSERT_TRUE(ratio.has_value());
            // e^{-t Lambda} acts on shell j with symbol between e^{-t 2^j 5/4} and e^{-t 2^{j-1}}.
            EXPECT_LE(*ratio, std::exp(-t * std::ldexp(0.5, j)) + 1e-14);
            EXPECT_GE(*ratio, std::exp(-t * std::ldexp(1.25, j)) - 1e-14);
        }
    }
}
