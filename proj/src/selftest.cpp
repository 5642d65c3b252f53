#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "eclab/commands.hpp"
#include "eclab/constitutive.hpp"
#include "eclab/diagnostics.hpp"
#include "eclab/fft.hpp"
#include "eclab/multipliers.hpp"
#include "eclab/series_io.hpp"
#include "eclab/snapshot_io.hpp"

namespace eclab {

namespace {

constexpr double kPi = std::numbers::pi;

SpectralField cosine(const Grid& g, int m1, int m2, double amp = 1.0) {
    SpectralField f(g);
    f.coeff(m1, m2) += 0.5 * amp;
    f.coeff(-m1, -m2) += 0.5 * amp;
    return f;
}

SpectralField random_band(const Grid& g, std::uint64_t seed, int band) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpectralField f(g);
    for (int m1 = -band; m1 <= band; ++m1)
        for (int m2 = -band; m2 <= band; ++m2) f.coeff(m1, m2) = Complex(u(rng), u(rng));
    enforce_hermitian(f);
    f.at(0, 0) = 0.0;
    f *= 1.0 / coefficient_norm(f);
    return f;
}

double diff(const SpectralField& a, const SpectralField& b) { return max_abs_coeff(a - b); }

// Empty string on success, a short reason otherwise.
using Check = std::function<std::string()>;

std::string expect_small(double value, double tol) {
    if (std::abs(value) <= tol) return "";
    std::ostringstream ss;
    ss << "got " << value << ", limit " << tol;
    return ss.str();
}

template <class Fn>
std::string expect_throw(Fn&& fn) {
    try {
        fn();
    } catch (const std::exception&) {
        return "";
    }
    return "no exception";
}

}  // namespace

std::vector<SelfTestCase> run_selftest() {
    const Grid g(32);
    const DyadicSpec spec = make_dyadic_spec(g);
    const SpectralField c1 = cosine(g, 1, 0);
    const double l2c = std::sqrt(2.0) * kPi;
    RunConfig cfg;
    cfg.n = 32;

    const std::vector<std::pair<std::string, Check>> checks = {
        {"grid rejects odd n", [] { return expect_throw([] { Grid(63); }); }},
        {"transform of cos x1", [&] {
             PhysicalField p(g);
             for (int i = 0; i < g.n(); ++i)
                 for (int j = 0; j < g.n(); ++j) p.at(i, j) = std::cos(i * g.dx());
             return expect_small(diff(forward_transform(p), c1), 1e-15);
         }},
        {"fractional Laplacian of cos 3x1", [&] {
             return expect_small(diff(apply_fractional_laplacian(cosine(g, 3, 0), 0.5), cosine(g, 3, 0, std::sqrt(3.0))), 1e-14);
         }},
        {"Riesz transform of cos x1", [&] {
             const VectorField r = riesz_transform(c1);
             SpectralField s(g);
             s.coeff(1, 0) = Complex(0.0, 0.5);
             s.coeff(-1, 0) = Complex(0.0, -0.5);
             return expect_small(diff(r.c1, s) + max_abs_coeff(r.c2), 1e-16);
         }},
        {"Leray projection is divergence free", [&] {
             const VectorField v(random_band(g, 1, 10), random_band(g, 2, 10));
             return expect_small(max_divergence(leray_project(v)), 1e-13);
         }},
        {"heat semigroup on cos x1", [&] {
             return expect_small(diff(heat_semigroup(c1, 1.0, 1.0), cosine(g, 1, 0, std::exp(-1.0))), 1e-16);
         }},
        {"mollifier identity at zero", [&] {
             const SpectralField f = random_band(g, 3, 10);
             return expect_small(diff(mollify(f, 0.0), f), 0.0);
         }},
        {"potential of cos 3x1", [&] { return expect_small(diff(potential(cosine(g, 3, 0)), cosine(g, 3, 0, 1.0 / 3.0)), 1e-16); }},
        {"force of cos x1", [&] {
             SpectralField s(g);
             s.coeff(2, 0) = Complex(0.0, -0.25);
             s.coeff(-2, 0) = Complex(0.0, 0.25);
             const VectorField f = force(c1);
             return expect_small(diff(f.c1, s) + max_abs_coeff(f.c2), 1e-16);
         }},
        {"velocity of a single mode vanishes", [&] { return expect_small(max_abs_coeff(velocity(c1)), 1e-16); }},
        {"pressure of cos x1", [&] { return expect_small(diff(pressure(c1), cosine(g, 2, 0, -0.25)), 1e-16); }},
        {"Darcy balance on random data", [&] {
             const VectorField f = force(random_band(g, 4, 10));
             return expect_small(darcy_residual(velocity_from_force(f), pressure_from_force(f), f), 1e-12);
         }},
        {"dyadic blocks of cos x1", [&] {
             double err = 0.0;
             for (int j = spec.j_min; j <= spec.j_max; ++j) {
                 err += diff(dyadic_block(c1, j, spec), j == 0 ? c1 : SpectralField(g));
             }
             return expect_small(err, 1e-16);
         }},
        {"low pass of cos x1", [&] {
             return expect_small(diff(low_pass(c1, 2, spec), c1) + max_abs_coeff(low_pass(c1, 0, spec)), 1e-16);
         }},
        {"partition of unity on the grid", [&] {
             double worst = 0.0;
             for (int i1 = 0; i1 < g.n(); ++i1)
                 for (int i2 = 0; i2 < g.n(); ++i2) {
                     if (i1 == 0 && i2 == 0) continue;
                     const double k = std::hypot(g.wavenumber(i1), g.wavenumber(i2));
                     double s = 0.0;
                     for (int j = spec.j_min; j <= spec.j_max; ++j) s += DyadicSpec::shell(j, k);
                     worst = std::max(worst, std::abs(s - 1.0));
                 }
             return expect_small(worst, 1e-12);
         }},
        {"reconstruction from blocks", [&] {
             const SpectralField f = random_band(g, 5, 15);
             return expect_small(coefficient_norm(reconstruct(decompose(f, spec), g) - f), 1e-12);
         }},
        {"Besov norm of cos x1", [&] { return expect_small(besov_norm(c1, 0.7, 2.0, 2.0, spec) - l2c, 1e-12); }},
        {"paraproduct identity", [&] {
             const SpectralField a = random_band(g, 6, 10), b = random_band(g, 7, 10);
             double worst = 0.0;
             for (int j = spec.j_min; j <= spec.j_max; ++j) {
                 const ParaproductSplit s = paraproduct_split(a, b, j, spec);
                 worst = std::max(worst, coefficient_norm(s.low_high + s.high_low - s.product_block));
             }
             return expect_small(worst, 1e-12);
         }},
        {"paraproduct vanishing terms", [&] {
             const SpectralField a = random_band(g, 8, 10), b = random_band(g, 9, 10);
             double worst = 0.0;
             for (int j = 1; j <= spec.j_max; ++j) {
                 worst = std::max(worst, max_abs_coeff(paraproduct_high_low_term(a, b, j, j - 2)));
                 worst = std::max(worst, max_abs_coeff(paraproduct_low_high_term(a, b, j, j - 3)));
             }
             return expect_small(worst, 1e-12);
         }},
        {"rhs on cos x1", [&] { return expect_small(diff(rhs(c1, cfg), cosine(g, 1, 0, -1.0)), 1e-15); }},
        {"step on cos x1 is exact", [&] {
             return expect_small(diff(step(c1, 1e-3, cfg), cosine(g, 1, 0, std::exp(-1e-3))), 1e-16);
         }},
        {"E_p norm of static cos x1", [&] {
             Trajectory t(g);
             t.push(0.0, c1);
             t.push(1.0, c1);
             return expect_small(ep_norm(t, 2.0, spec) - 2.0 * l2c, 1e-12);
         }},
        {"Picard from zero data", [&] {
             const PicardResult r = iterate_to_fixed_point(SpectralField(g), PicardOptions{}, cfg);
             return r.converged && r.iterations == 1 ? std::string() : std::string("did not stop after one iteration");
         }},
        {"radius undefined for one mode", [&] {
             return analyticity_radius(cosine(g, 2, 0)) ? std::string("defined") : std::string();
         }},
        {"exponential fit of exp(-2t)", [&] {
             DiagnosticSeries s;
             for (int i = 0; i <= 50; ++i) {
                 s.times.push_back(0.1 * i);
                 s.values.push_back(std::exp(-0.2 * i));
             }
             return expect_small(exp_decay_rate(s, 0.0, 5.0).params.at("rate") + 2.0, 1e-6);
         }},
        {"Cordoba integral of cos x1", [&] {
             return expect_small(cordoba_positivity(c1, 2.0).integral - 2.0 * kPi * kPi, 1e-12);
         }},
        {"weighted shell integral at alpha = 0", [&] {
             return expect_small(weighted_shell_integral(2, 0.5, 0.0, 1.0) - (1.0 - std::exp(-2.0)), 1e-12);
         }},
        {"run of cos x1 decays exactly", [&] {
             RunConfig r = cfg;
             r.final_time = 0.1;
             const Trajectory t = run(r);
             return expect_small(l2_norm(t[t.size() - 1]) / l2_norm(t[0]) - std::exp(-0.1), 1e-8);
         }},
        {"config rejects alpha 2.5",
         [] { return expect_throw([] { parse_config(std::string_view(R"({"alpha":2.5})")); }); }},
        {"config rejects odd n", [] { return expect_throw([] { parse_config(std::string_view(R"({"n":63})")); }); }},
        {"config rejects unknown keys",
         [] { return expect_throw([] { parse_config(std::string_view(R"({"alpah":1.0})")); }); }},
        {"snapshot round trip", [&] {
             const SpectralField f = random_band(g, 10, 12);
             const Snapshot s = decode_snapshot(encode_snapshot(f, 0.5, 1.0, 0.0));
             return expect_small(diff(s.field, f) + std::abs(s.time - 0.5), 0.0);
         }},
        {"shortest float formatting", [] {
             return format_double(0.1) == "0.1" && format_double(1e-300) == "1e-300" ? std::string()
                                                                                        : std::string("unexpected text");
         }},
    };

    std::vector<SelfTestCase> results;
    for (const auto& [name, check] : checks) {
        SelfTestCase c{name, false, ""};
        try {
            c.detail = check();
            c.pass = c.detail.empty();
        } catch (const std::exception& e) {
            c.detail = e.what();
        }
        results.push_back(c);
    }
    return results;
}

}  // namespace eclab
