#include "eclab/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "eclab/fft.hpp"
#include "eclab/multipliers.hpp"
#include "eclab/products.hpp"

namespace eclab {

namespace {

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// Smooth step from 0 (x <= 0) to 1 (x >= 1).
double smooth_step(double x) {
    const double a = bump(x);
    const double b = bump(1.0 - x);
    return a / (a + b);
}

void require_shell(const DyadicSpec& spec, int j) {
    if (!spec.contains(j)) {
        throw std::out_of_range("shell index " + std::to_string(j) + " outside [" + std::to_string(spec.j_min) +
                                ", " + std::to_string(spec.j_max) + "]");
    }
}

// Forms the product of two fields that already live on the same (fine) grid.
SpectralField product_on_grid(const SpectralField& a, const SpectralField& b) {
    return forward_transform(multiply(inverse_transform(a), inverse_transform(b)));
}

double power_sum(double value, double q) {
    if (q == 1.0) return value;
    if (q == 2.0) return value * value;
    return std::pow(value, q);
}

}  // namespace

double dyadic_cutoff(double r) {
    if (r <= 0.5) return 1.0;
    if (r >= 0.625) return 0.0;
    return 1.0 - smooth_step((r - 0.5) / 0.125);
}

double dyadic_shell(double r) { return dyadic_cutoff(0.5 * r) - dyadic_cutoff(r); }

double DyadicSpec::shell(int j, double r) { return dyadic_shell(std::ldexp(r, -j)); }

DyadicSpec make_dyadic_spec(const Grid& grid) {
    const double k_min = grid.dk();
    const double k_max = grid.max_wavenumber();
    return DyadicSpec{static_cast<int>(std::floor(std::log2(k_min))) - 1,
                      static_cast<int>(std::ceil(std::log2(k_max))) + 1};
}

SpectralField dyadic_block(const SpectralField& f, int j, const DyadicSpec& spec) {
    require_shell(spec, j);
    return apply_radial(f, [j](double k) { return DyadicSpec::shell(j, k); }, 0.0);
}

BlockSet decompose(const SpectralField& f, const DyadicSpec& spec) {
    BlockSet set;
    for (int j = spec.j_min; j <= spec.j_max; ++j) set.blocks.emplace(j, dyadic_block(f, j, spec));
    return set;
}

SpectralField reconstruct(const BlockSet& blocks, const Grid& grid) {
    SpectralField sum(grid);
    for (const auto& [j, block] : blocks.blocks) sum += block;
    return sum;
}

SpectralField low_pass(const SpectralField& f, int j, const DyadicSpec& spec) {
    if (j < spec.j_min || j > spec.j_max + 1) throw std::out_of_range("low_pass index out of range");
    return apply_radial(f, [j](double k) { return dyadic_cutoff(std::ldexp(k, -j)); }, 0.0);
}

SpectralField low_pass_by_blocks(const SpectralField& f, int j, const DyadicSpec& spec) {
    if (j < spec.j_min || j > spec.j_max + 1) throw std::out_of_range("low_pass index out of range");
    SpectralField sum(f.grid());
    for (int k = spec.j_min; k <= j - 1; ++k) sum += dyadic_block(f, k, spec);
    return sum;
}

double lp_norm(const PhysicalField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    const auto values = f.values();
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double sum = 0.0;
    if (p == 2.0) {
        for (double v : values) sum += v * v;
    } else if (p == 4.0) {
        for (double v : values) sum += (v * v) * (v * v);
    } else if (p == 1.0) {
        for (double v : values) sum += std::abs(v);
    } else {
        for (double v : values) sum += std::pow(std::abs(v), p);
    }
    const double cell = f.grid().dx() * f.grid().dx();
    return std::pow(sum * cell, 1.0 / p);
}

double lp_norm(const SpectralField& f, double p) {
    if (p == 2.0) return l2_norm(f);
    return lp_norm(inverse_transform(f), p);
}

std::vector<double> block_lp_norms(const SpectralField& f, double p, const DyadicSpec& spec) {
    std::vector<double> norms(static_cast<std::size_t>(spec.j_max - spec.j_min + 1), 0.0);
    const Grid& g = f.grid();
    const int n = g.n();
    if (p == 2.0) {
        // Discrete Parseval: identical to the grid quadrature of |Delta_j f|^2.
        std::vector<double> sums(norms.size(), 0.0);
        for (int i1 = 0; i1 < n; ++i1) {
            const double k1 = g.wavenumber(i1);
            for (int i2 = 0; i2 < n; ++i2) {
                if (i1 == 0 && i2 == 0) continue;
                const double k2 = g.wavenumber(i2);
                const double k = std::sqrt(k1 * k1 + k2 * k2);
                const double c2 = std::norm(f.at(i1, i2));
                if (c2 == 0.0) continue;
                for (int j = spec.j_min; j <= spec.j_max; ++j) {
                    const double w = DyadicSpec::shell(j, k);
                    if (w != 0.0) sums[static_cast<std::size_t>(j - spec.j_min)] += w * w * c2;
                }
            }
        }
        for (std::size_t i = 0; i < norms.size(); ++i) norms[i] = g.length() * std::sqrt(sums[i]);
        return norms;
    }
    for (int j = spec.j_min; j <= spec.j_max; ++j) {
        const SpectralField block = dyadic_block(f, j, spec);
        if (max_abs_coeff(block) == 0.0) continue;
        norms[static_cast<std::size_t>(j - spec.j_min)] = lp_norm(inverse_transform(block), p);
    }
    return norms;
}

double dyadic_lq_sum(const std::vector<double>& per_shell, int j_min, double s, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("Besov q must be >= 1");
    double acc = 0.0;
    for (std::size_t i = 0; i < per_shell.size(); ++i) {
        const double term = std::exp2(s * (j_min + static_cast<int>(i))) * per_shell[i];
        if (std::isinf(q)) {
            acc = std::max(acc, term);
        } else {
            acc += power_sum(term, q);
        }
    }
    if (std::isinf(q) || q == 1.0) return acc;
    return std::pow(acc, 1.0 / q);
}

double besov_norm(const SpectralField& f, double s, double p, double q, const DyadicSpec& spec) {
    return dyadic_lq_sum(block_lp_norms(f, p, spec), spec.j_min, s, q);
}

double time_besov_norm(const Trajectory& traj, double s, double p, double q, double r, const DyadicSpec& spec) {
    if (traj.empty()) throw std::invalid_argument("time_besov_norm: empty trajectory");
    if (!(r == 1.0 || std::isinf(r))) throw std::invalid_argument("time_besov_norm: r must be 1 or inf");
    const std::size_t shells = static_cast<std::size_t>(spec.j_max - spec.j_min + 1);
    std::vector<std::vector<double>> series(shells, std::vector<double>(traj.size()));
    for (std::size_t t = 0; t < traj.size(); ++t) {
        const auto norms = block_lp_norms(traj[t], p, spec);
        for (std::size_t j = 0; j < shells; ++j) series[j][t] = norms[j];
    }
    std::vector<double> per_shell(shells);
    for (std::size_t j = 0; j < shells; ++j) {
        per_shell[j] = std::isinf(r) ? *std::max_element(series[j].begin(), series[j].end())
                                     : trapezoid(traj.times(), series[j]);
    }
    return dyadic_lq_sum(per_shell, spec.j_min, s, q);
}

SpectralField paraproduct_low_high_term(const SpectralField& f, const SpectralField& g, int j, int k) {
    const int fine_n = 2 * f.grid().n();
    const SpectralField ff = pad_to(f, fine_n);
    const SpectralField gg = pad_to(g, fine_n);
    const DyadicSpec fine = make_dyadic_spec(ff.grid());
    DyadicSpec open{std::min(fine.j_min, k) - 1, std::max(fine.j_max, std::max(j, k))};
    const SpectralField prod = product_on_grid(low_pass(ff, k + 1, open), dyadic_block(gg, k, open));
    return dyadic_block(prod, j, open);
}

SpectralField paraproduct_high_low_term(const SpectralField& f, const SpectralField& g, int j, int k) {
    const int fine_n = 2 * f.grid().n();
    const SpectralField ff = pad_to(f, fine_n);
    const SpectralField gg = pad_to(g, fine_n);
    const DyadicSpec fine = make_dyadic_spec(ff.grid());
    DyadicSpec open{std::min(fine.j_min, k) - 1, std::max(fine.j_max, std::max(j, k))};
    const SpectralField prod = product_on_grid(low_pass(gg, k, open), dyadic_block(ff, k, open));
    return dyadic_block(prod, j, open);
}

ParaproductSplit paraproduct_split(const SpectralField& f, const SpectralField& g, int j, const DyadicSpec& spec) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("paraproduct_split: grid mismatch");
    require_shell(spec, j);
    require_mean_zero(f, "paraproduct_split");
    require_mean_zero(g, "paraproduct_split");

    const int fine_n = 2 * f.grid().n();
    const SpectralField ff = pad_to(f, fine_n);
    const SpectralField gg = pad_to(g, fine_n);
    const DyadicSpec fine = make_dyadic_spec(ff.grid());

    // Shells, low-pass sums and cumulative S_k are shared across k.
    std::map<int, SpectralField> f_blocks, g_blocks;
    for (int k = fine.j_min; k <= fine.j_max; ++k) {
        f_blocks.emplace(k, dyadic_block(ff, k, fine));
        g_blocks.emplace(k, dyadic_block(gg, k, fine));
    }

    SpectralField low_high(ff.grid());
    SpectralField high_low(ff.grid());
    SpectralField s_f(ff.grid());  // S_{k+1} f once k's block is added
    SpectralField s_g(ff.grid());  // S_k g
    for (int k = fine.j_min; k <= fine.j_max; ++k) {
        s_f += f_blocks.at(k);
        if (k >= j - 2) {
            low_high += dyadic_block(product_on_grid(s_f, g_blocks.at(k)), j, fine);
            high_low += dyadic_block(product_on_grid(s_g, f_blocks.at(k)), j, fine);
        }
        s_g += g_blocks.at(k);
    }
    SpectralField whole = dyadic_block(product_on_grid(ff, gg), j, fine);
    return ParaproductSplit{std::move(low_high), std::move(high_low), std::move(whole)};
}

std::optional<double> bernstein_ratio(const SpectralField& f, int j, double p, double q, const DyadicSpec& spec) {
    if (!(p >= 1.0 && q >= p)) throw std::invalid_argument("bernstein_ratio requires 1 <= p <= q");
    const SpectralField block = dyadic_block(f, j, spec);
    if (max_abs_coeff(block) == 0.0) return std::nullopt;
    const PhysicalField phys = inverse_transform(block);
    const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    const double lp = lp_norm(phys, p);
    if (lp == 0.0) return std::nullopt;
    return lp_norm(phys, q) / (std::exp2(2.0 * j * (inv_p - inv_q)) * lp);
}

std::optional<double> derivative_bernstein_ratio(const SpectralField& f, int j, int order, double p,
                                                 const DyadicSpec& spec) {
    if (order < 0) throw std::invalid_argument("derivative order must be >= 0");
    const SpectralField block = dyadic_block(f, j, spec);
    const double base = lp_norm(inverse_transform(block), p);
    if (base == 0.0) return std::nullopt;
    const Grid& g = f.grid();
    const int n = g.n();
    double worst = 0.0;
    for (int a1 = 0; a1 <= order; ++a1) {
        const int a2 = order - a1;
        SpectralField d = block;
        for (int i1 = 0; i1 < n; ++i1) {
            const Complex s1 = std::pow(Complex(0.0, g.wavenumber(i1)), a1);
            for (int i2 = 0; i2 < n; ++i2) {
                d.at(i1, i2) *= s1 * std::pow(Complex(0.0, g.wavenumber(i2)), a2);
            }
        }
        enforce_hermitian(d);
        worst = std::max(worst, lp_norm(inverse_transform(d), p));
    }
    return worst / (std::exp2(static_cast<double>(j) * order) * base);
}

std::optional<double> localization_ratio(const SpectralField& f, int j, double t, double a, double p,
                                         const DyadicSpec& spec) {
    const SpectralField block = dyadic_block(f, j, spec);
    const double base = lp_norm(inverse_transform(block), p);
    if (base == 0.0) return std::nullopt;
    return lp_norm(inverse_transform(heat_semigroup(block, t, a)), p) / base;
}

}  // namespace eclab
