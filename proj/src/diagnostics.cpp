#include "eclab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eclab/fft.hpp"
#include "eclab/fitting.hpp"
#include "eclab/multipliers.hpp"
#include "eclab/quadrature.hpp"

namespace eclab {

namespace {

constexpr int kNewtonIterations = 10;
constexpr int kNewtonSeeds = 4;

struct ActiveMode {
    double k1, k2;
    Complex c;
};

std::vector<ActiveMode> active_modes(const SpectralField& f) {
    const Grid& g = f.grid();
    std::vector<ActiveMode> modes;
    for (int i1 = 0; i1 < g.n(); ++i1) {
        for (int i2 = 0; i2 < g.n(); ++i2) {
            const Complex c = f.at(i1, i2);
            if (c != Complex(0.0)) modes.push_back({g.wavenumber(i1), g.wavenumber(i2), c});
        }
    }
    return modes;
}

// Value, gradient and Hessian of the real part of the interpolant.
struct Local {
    double v, g1, g2, h11, h12, h22;
};

Local evaluate(const std::vector<ActiveMode>& modes, double x1, double x2) {
    Local out{0, 0, 0, 0, 0, 0};
    for (const ActiveMode& m : modes) {
        const Complex term = m.c * std::polar(1.0, m.k1 * x1 + m.k2 * x2);
        const double re = term.real();
        const double im = term.imag();
        out.v += re;
        out.g1 -= m.k1 * im;
        out.g2 -= m.k2 * im;
        out.h11 -= m.k1 * m.k1 * re;
        out.h12 -= m.k1 * m.k2 * re;
        out.h22 -= m.k2 * m.k2 * re;
    }
    return out;
}

// Newton ascent on sign * f from a grid point, steps clipped to one cell.
// Each Hessian eigendirection is handled on its own so that flat directions
// (fields constant along a line) do not stall the iteration.
double refine_extremum(const std::vector<ActiveMode>& modes, double x1, double x2, double sign, double dx) {
    double best = sign * evaluate(modes, x1, x2).v;
    for (int it = 0; it < kNewtonIterations; ++it) {
        const Local l = evaluate(modes, x1, x2);
        const double g1 = sign * l.g1, g2 = sign * l.g2;
        const double h11 = sign * l.h11, h12 = sign * l.h12, h22 = sign * l.h22;
        const double mean = 0.5 * (h11 + h22);
        const double radius = std::hypot(0.5 * (h11 - h22), h12);
        const double lambda[2] = {mean - radius, mean + radius};
        double v[2][2];
        if (radius == 0.0) {
            v[0][0] = 1.0, v[0][1] = 0.0, v[1][0] = 0.0, v[1][1] = 1.0;
        } else {
            const double theta = 0.5 * std::atan2(2.0 * h12, h11 - h22);
            // theta points along the larger eigenvalue.
            v[1][0] = std::cos(theta), v[1][1] = std::sin(theta);
            v[0][0] = -v[1][1], v[0][1] = v[1][0];
        }
        const double scale = std::max(std::abs(lambda[0]), std::abs(lambda[1]));
        double s1 = 0.0, s2 = 0.0;
        for (int e = 0; e < 2; ++e) {
            const double gv = g1 * v[e][0] + g2 * v[e][1];
            if (lambda[e] < -1e-12 * scale) {
                const double a = -gv / lambda[e];
                s1 += a * v[e][0];
                s2 += a * v[e][1];
            }
        }
        const double len = std::hypot(s1, s2);
        if (len > dx) {
            s1 *= dx / len;
            s2 *= dx / len;
        }
        if (len == 0.0) break;
        x1 += s1;
        x2 += s2;
        best = std::max(best, sign * evaluate(modes, x1, x2).v);
        if (len < 1e-14 * dx) break;
    }
    return best;
}

double energy_of(const SpectralField& f) {
    const double l2 = l2_norm(f);
    return l2 * l2;
}

double dissipation_of(const SpectralField& f, double alpha, double viscosity) {
    const double a = sobolev_norm(f, alpha / 2.0);
    double d = a * a;
    if (viscosity > 0.0) {
        const double g = sobolev_norm(f, 1.0);
        d += viscosity * g * g;
    }
    return d;
}

bool is_uniform(const std::vector<double>& t) {
    if (t.size() < 2) return false;
    const double h = t[1] - t[0];
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::abs(t[i] - t[i - 1] - h) > 1e-9 * h) return false;
    }
    return true;
}

// Average of a smooth function over [t_i, t_{i+1}] from four nodal values.
double interval_average(const std::vector<double>& v, std::size_t i) {
    const std::size_t m = v.size() - 1;
    if (v.size() < 4) return 0.5 * (v[i] + v[i + 1]);
    if (i == 0) return (9.0 * v[0] + 19.0 * v[1] - 5.0 * v[2] + v[3]) / 24.0;
    if (i + 1 == m) return (v[m - 3] - 5.0 * v[m - 2] + 19.0 * v[m - 1] + 9.0 * v[m]) / 24.0;
    return (-v[i - 1] + 13.0 * v[i] + 13.0 * v[i + 1] - v[i + 2]) / 24.0;
}

double h32_squared(const SpectralField& f) {
    const double a = l2_norm(f);
    const double b = sobolev_norm(f, 1.5);
    return a * a + b * b;
}

}  // namespace

double linf_norm(const SpectralField& f) {
    const PhysicalField phys = inverse_transform(f);
    const Grid& g = f.grid();
    const auto values = phys.values();
    double grid_max = 0.0;
    for (double v : values) grid_max = std::max(grid_max, std::abs(v));
    if (grid_max == 0.0) return 0.0;

    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const std::size_t seeds = std::min<std::size_t>(kNewtonSeeds, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(seeds), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          const double va = std::abs(values[a]), vb = std::abs(values[b]);
                          return va != vb ? va > vb : a < b;
                      });
    const std::vector<ActiveMode> modes = active_modes(f);
    double best = grid_max;
    for (std::size_t s = 0; s < seeds; ++s) {
        const std::size_t idx = order[s];
        const int i1 = static_cast<int>(idx / static_cast<std::size_t>(g.n()));
        const int i2 = static_cast<int>(idx % static_cast<std::size_t>(g.n()));
        const double sign = values[idx] >= 0.0 ? 1.0 : -1.0;
        best = std::max(best, refine_extremum(modes, i1 * g.dx(), i2 * g.dx(), sign, g.dx()));
    }
    return best;
}

double lp_norm_refined(const SpectralField& f, double p) {
    if (std::isinf(p)) return linf_norm(f);
    return lp_norm(inverse_transform(f), p);
}

EnergyBudget energy_budget(const Trajectory& traj, double alpha, double viscosity) {
    EnergyBudget out;
    out.residual.name = "energy_residual";
    if (traj.size() < 2) return out;
    const auto& t = traj.times();
    std::vector<double> energy(traj.size()), dissipation(traj.size()), half(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        energy[i] = energy_of(traj[i]);
        dissipation[i] = dissipation_of(traj[i], alpha, viscosity);
        const double h = sobolev_norm(traj[i], 0.5);
        half[i] = h * h;
    }
    const bool uniform = is_uniform(t);
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        const double dt = t[i + 1] - t[i];
        const double d_avg = uniform ? interval_average(dissipation, i) : 0.5 * (dissipation[i] + dissipation[i + 1]);
        const double norm = uniform ? interval_average(half, i) : 0.5 * (half[i] + half[i + 1]);
        const double r = 0.5 * (energy[i + 1] - energy[i]) / dt + d_avg;
        const double rel = norm > 0.0 ? std::abs(r) / norm : std::abs(r);
        out.residual.times.push_back(t[i + 1]);
        out.residual.values.push_back(rel);
        out.max_relative = std::max(out.max_relative, rel);
    }
    return out;
}

DiagnosticSeries lp_series(const Trajectory& traj, double p) {
    DiagnosticSeries s;
    s.name = std::isinf(p) ? "linf" : "l" + std::to_string(p);
    s.times = traj.times();
    for (const SpectralField& f : traj.snapshots()) s.values.push_back(lp_norm_refined(f, p));
    return s;
}

std::vector<std::size_t> monotonicity_violations(const std::vector<double>& values, double rel_tol) {
    std::vector<std::size_t> bad;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[i - 1] * (1.0 + rel_tol)) bad.push_back(i);
    }
    return bad;
}

std::vector<std::size_t> lp_monotonicity(const Trajectory& traj, double p, double rel_tol) {
    return monotonicity_violations(lp_series(traj, p).values, rel_tol);
}

FitResult linf_decay_fit(const Trajectory& traj, double window_fraction) {
    if (traj.empty()) throw std::invalid_argument("linf_decay_fit: empty trajectory");
    const double m0 = linf_norm(traj[0]);
    if (!(m0 > 0.0)) throw std::invalid_argument("linf_decay_fit: initial sup norm is zero");
    const double t0 = traj.times().front();
    const double start = t0 + window_fraction * (traj.final_time() - t0);
    FitResult fit;
    fit.model = "reciprocal_linear";
    fit.window_start = start;
    fit.window_end = traj.final_time();
    std::vector<double> xs, ys;
    double c = kInfinity;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.times()[i] - t0;
        if (traj.times()[i] < start || t <= 0.0) continue;
        const double y = 1.0 / linf_norm(traj[i]) - 1.0 / m0;
        xs.push_back(t);
        ys.push_back(y);
        c = std::min(c, y / t);
    }
    if (xs.empty()) {
        fit.params["c"] = 0.0;
        fit.params["c_lsq"] = 0.0;
        return fit;
    }
    const double c_lsq = fit_proportional(xs, ys);
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) ss += (ys[i] - c_lsq * xs[i]) * (ys[i] - c_lsq * xs[i]);
    fit.params["c"] = c;
    fit.params["c_lsq"] = c_lsq;
    fit.residual = std::sqrt(ss / static_cast<double>(xs.size()));
    fit.pass = std::isfinite(c) && c > 0.0;
    return fit;
}

FitResult exp_decay_rate(const DiagnosticSeries& series, double t_lo, double t_hi) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const double t = series.times[i];
        if (t < t_lo || t > t_hi) continue;
        if (!(series.values[i] > 0.0)) throw std::invalid_argument("exp_decay_rate: nonpositive value in window");
        xs.push_back(t);
        ys.push_back(std::log(series.values[i]));
    }
    if (xs.size() < 2) throw std::invalid_argument("exp_decay_rate: fewer than two samples in window");
    const LineFit line = fit_line(xs, ys);
    FitResult fit;
    fit.model = "exponential";
    fit.params["rate"] = line.slope;
    fit.params["intercept"] = line.intercept;
    fit.residual = line.residual;
    fit.window_start = xs.front();
    fit.window_end = xs.back();
    fit.pass = std::isfinite(line.slope);
    return fit;
}

FitResult hs_growth_check(const Trajectory& traj, double s, double alpha) {
    if (!(alpha > 1.0 && alpha <= 2.0)) throw std::invalid_argument("hs_growth_check: alpha must lie in (1, 2]");
    if (!(s > 0.0)) throw std::invalid_argument("hs_growth_check: s must be > 0");
    if (traj.empty()) throw std::invalid_argument("hs_growth_check: empty trajectory");
    const double base = sobolev_norm(traj[0], s);
    const double t0 = traj.times().front();
    double c1 = -kInfinity;
    std::vector<double> dissipation(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double d = sobolev_norm(traj[i], s + alpha / 2.0);
        dissipation[i] = d * d;
        const double t = traj.times()[i] - t0;
        if (t > 0.0 && base > 0.0) c1 = std::max(c1, std::log(sobolev_norm(traj[i], s) / base) / t);
    }
    if (base == 0.0) c1 = 0.0;
    FitResult fit;
    fit.model = "hs_growth";
    fit.params["C1"] = traj.size() > 1 ? c1 : 0.0;
    fit.params["dissipation_integral"] = traj.size() > 1 ? trapezoid(traj.times(), dissipation) : 0.0;
    fit.window_start = t0;
    fit.window_end = traj.final_time();
    fit.pass = std::isfinite(fit.params["C1"]) && std::isfinite(fit.params["dissipation_integral"]);
    return fit;
}

CordobaResult cordoba_positivity(const SpectralField& f, double p) {
    if (!(p >= 2.0)) throw std::invalid_argument("cordoba_positivity: p must be >= 2");
    const PhysicalField phys = inverse_transform(f);
    const PhysicalField lam = inverse_transform(apply_fractional_laplacian(f, 1.0));
    const double cell = f.grid().dx() * f.grid().dx();
    CordobaResult out;
    const auto a = phys.values();
    const auto b = lam.values();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double w = p == 2.0 ? 1.0 : std::pow(std::abs(a[i]), p - 2.0);
        out.integral += w * a[i] * b[i];
        out.scale += w * std::abs(a[i] * b[i]);
    }
    out.integral *= cell;
    out.scale *= cell;
    return out;
}

double weighted_shell_integral(int j, double t, double alpha, double c, double rel_tol) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("weighted_shell_integral: alpha must lie in [0, 1)");
    if (!(c > 0.0) || !(t > 0.0)) throw std::invalid_argument("weighted_shell_integral: need c > 0 and t > 0");
    const double rate = c * std::ldexp(1.0, j);
    const double scale = std::ldexp(1.0, j);
    // [0, t/2]: s = t sigma^{1/(1-alpha)} removes the s^-alpha singularity.
    const double q = 1.0 / (1.0 - alpha);
    const double sigma_end = std::pow(0.5, 1.0 - alpha);
    auto near_zero = [&](double sigma) {
        const double s = t * std::pow(sigma, q);
        return scale * std::exp(-rate * (t - s));
    };
    const double pref = std::pow(t, 1.0 - alpha) * q;
    const QuadratureResult a = integrate_adaptive(near_zero, 0.0, sigma_end, 0.0, rel_tol, 20000);
    // [t/2, t] in v = t - s; the kernel is concentrated in v < 1/rate.
    auto near_t = [&](double v) { return scale * std::exp(-rate * v) * std::pow(t - v, -alpha); };
    const double split = std::min(0.5 * t, 40.0 / rate);
    const QuadratureResult b1 = integrate_adaptive(near_t, 0.0, split, 0.0, rel_tol, 20000);
    const QuadratureResult b2 = integrate_adaptive(near_t, split, 0.5 * t, 0.0, rel_tol, 20000);
    return pref * a.value + b1.value + b2.value;
}

ShellIntegralTable weighted_shell_check(const std::vector<int>& js, const std::vector<double>& ts, double alpha, double c) {
    ShellIntegralTable table;
    for (int j : js) {
        for (double t : ts) {
            ShellIntegralRow row;
            row.j = j;
            row.t = t;
            row.alpha = alpha;
            const double ta = std::pow(t, alpha);
            row.ratio = weighted_shell_integral(j, t, alpha, c, 1e-8) * ta;
            row.refined_ratio = weighted_shell_integral(j, t, alpha, c, 1e-13) * ta;
            row.relative_change = std::abs(row.ratio - row.refined_ratio) / std::max(std::abs(row.refined_ratio), 1e-300);
            table.sup_ratio = std::max(table.sup_ratio, row.refined_ratio);
            table.max_relative_change = std::max(table.max_relative_change, row.relative_change);
            table.rows.push_back(row);
        }
    }
    table.pass = std::isfinite(table.sup_ratio) && table.max_relative_change < 1e-3;
    return table;
}

UniquenessReport uniqueness_divergence(const Trajectory& a, const Trajectory& b) {
    if (!(a.grid() == b.grid()) || a.size() != b.size()) {
        throw std::invalid_argument("uniqueness_divergence: runs do not share grid and sampling");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.times()[i] != b.times()[i]) throw std::invalid_argument("uniqueness_divergence: time grids differ");
    }
    UniquenessReport out;
    out.distance.name = "distance";
    out.envelope.name = "envelope";
    out.identical = true;
    std::vector<double> kernel(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto ca = a[i].coeffs();
        const auto cb = b[i].coeffs();
        if (!std::equal(ca.begin(), ca.end(), cb.begin())) out.identical = false;
        out.distance.times.push_back(a.times()[i]);
        out.distance.values.push_back(l2_norm(a[i] - b[i]));
        const double h1 = h32_squared(a[i]);
        kernel[i] = (h1 + h32_squared(b[i])) * h1;
    }
    const std::vector<double> integral = cumulative_trapezoid(a.times(), kernel);
    const double d0 = out.distance.values.front();
    if (out.identical) {
        out.envelope = out.distance;
        out.envelope.name = "envelope";
        out.pass = true;
        return out;
    }
    if (d0 == 0.0) {
        // Equal data, different trajectories: uniqueness is violated.
        out.fitted_constant = kInfinity;
        out.pass = false;
        return out;
    }
    double c = 0.0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        const double d = out.distance.values[i];
        if (integral[i] > 0.0 && d > d0) c = std::max(c, 2.0 * std::log(d / d0) / integral[i]);
        if (integral[i] == 0.0 && d > d0) c = kInfinity;
    }
    out.fitted_constant = c;
    bool inside = std::isfinite(c);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double env = d0 * std::exp(0.5 * c * integral[i]);
        out.envelope.times.push_back(a.times()[i]);
        out.envelope.values.push_back(env);
        if (out.distance.values[i] > env * (1.0 + 1e-12)) inside = false;
    }
    out.pass = inside;
    return out;
}

double weighted_besov_sup(const Trajectory& traj, double aw, double beta, const DyadicSpec& spec) {
    if (!(aw >= 0.0 && aw < 1.0)) throw std::invalid_argument("weighted_besov_sup: weight exponent must lie in [0, 1)");
    double best = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.times()[i];
        if (aw > 0.0 && t <= 0.0) throw std::invalid_argument("weighted_besov_sup: snapshot at t <= 0 with a weight");
        const double w = aw > 0.0 ? std::pow(t, aw) : 1.0;
        best = std::max(best, w * besov_norm(traj[i], beta, kInfinity, kInfinity, spec));
    }
    return best;
}

DiagnosticSeries sobolev_series(const Trajectory& traj, double s) {
    DiagnosticSeries out;
    out.name = "sobolev_" + std::to_string(s);
    out.times = traj.times();
    for (const SpectralField& f : traj.snapshots()) out.values.push_back(sobolev_norm(f, s));
    return out;
}

}  // namespace eclab
