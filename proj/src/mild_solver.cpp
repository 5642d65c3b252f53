#include "eclab/mild_solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "eclab/fitting.hpp"
#include "eclab/multipliers.hpp"

namespace eclab {

namespace {

constexpr double kSeriesSwitch = 0.1;

// Weights of N_i and N_{i+1} in int_0^h exp(-lambda tau) N ds for N linear
// in s; z = lambda h. Both weights are h/2 at z = 0.
void exponential_trapezoid_weights(double z, double h, double& wa, double& wb) {
    if (z < kSeriesSwitch) {
        double term = 1.0;
        double fact = 2.0;
        double sa = 0.0, sb = 0.0;
        for (int k = 2; k < 14; ++k) {
            sa += term * (k - 1) / fact;
            sb += term / fact;
            term *= -z;
            fact *= k + 1;
        }
        wa = h * sa;
        wb = h * sb;
        return;
    }
    const double e = std::exp(-z);
    wa = h * (1.0 - e * (1.0 + z)) / (z * z);
    wb = h * (z - 1.0 + e) / (z * z);
}

std::vector<double> mode_rates(const Grid& g, const RunConfig& cfg) {
    std::vector<double> rates(g.size());
    for (int i1 = 0; i1 < g.n(); ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < g.n(); ++i2) {
            const double k2 = g.wavenumber(i2);
            rates[g.flat(i1, i2)] = linear_rate(std::sqrt(k1 * k1 + k2 * k2), cfg);
        }
    }
    return rates;
}

void require_uniform(const std::vector<double>& times) {
    if (times.size() < 2) throw std::invalid_argument("mild solver: need at least two time nodes");
    const double h = times[1] - times[0];
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (std::abs(times[i] - times[i - 1] - h) > 1e-9 * h) {
            throw std::invalid_argument("mild solver: time grid must be uniform");
        }
    }
}

Trajectory difference(const Trajectory& a, const Trajectory& b) {
    Trajectory out(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) out.push(a.times()[i], a[i] - b[i]);
    return out;
}

bool trajectory_finite(const Trajectory& t) {
    return std::all_of(t.snapshots().begin(), t.snapshots().end(), [](const SpectralField& f) { return all_finite(f); });
}

// -div(u rho) with u built from `u_field` and transported scalar `rho`.
SpectralField transport(const SpectralField& u_field, const SpectralField& rho, const RunConfig& cfg) {
    const VectorField u = transport_velocity(u_field, cfg);
    SpectralField out(rho.grid());
    for (int j = 0; j < 2; ++j) {
        SpectralField flux = dealiased_product(u[j], rho, cfg.dealias);
        out -= divergence(j == 0 ? VectorField(flux, SpectralField(rho.grid()))
                                 : VectorField(SpectralField(rho.grid()), flux));
    }
    out.at(0, 0) = 0.0;
    return out;
}

}  // namespace

double ep_norm(const Trajectory& traj, double p, const DyadicSpec& spec) {
    if (traj.empty()) throw std::invalid_argument("ep_norm: empty trajectory");
    const std::size_t shells = static_cast<std::size_t>(spec.j_max - spec.j_min + 1);
    std::vector<std::vector<double>> series(shells, std::vector<double>(traj.size()));
    for (std::size_t t = 0; t < traj.size(); ++t) {
        const auto norms = block_lp_norms(traj[t], p, spec);
        for (std::size_t j = 0; j < shells; ++j) series[j][t] = norms[j];
    }
    std::vector<double> sup(shells), integral(shells);
    for (std::size_t j = 0; j < shells; ++j) {
        sup[j] = *std::max_element(series[j].begin(), series[j].end());
        integral[j] = traj.size() > 1 ? trapezoid(traj.times(), series[j]) : 0.0;
    }
    return dyadic_lq_sum(sup, spec.j_min, 2.0 / p, 1.0) + dyadic_lq_sum(integral, spec.j_min, 2.0 / p + 1.0, 1.0);
}

std::vector<double> mild_time_grid(double final_time, int intervals) {
    if (!(final_time > 0.0) || intervals < 1) throw std::invalid_argument("mild time grid: need T > 0 and M >= 1");
    std::vector<double> times(static_cast<std::size_t>(intervals) + 1);
    for (int i = 0; i <= intervals; ++i) times[static_cast<std::size_t>(i)] = final_time * i / intervals;
    return times;
}

Trajectory free_evolution(const SpectralField& rho0, const std::vector<double>& times, const RunConfig& cfg) {
    const Grid& g = rho0.grid();
    const std::vector<double> rates = mode_rates(g, cfg);
    Trajectory out(g);
    for (double t : times) {
        SpectralField f = rho0;
        auto c = f.coeffs();
        for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::exp(-t * rates[i]);
        out.push(t, std::move(f));
    }
    return out;
}

Trajectory duhamel_correction(const Trajectory& u_source, const Trajectory& rho_source, const RunConfig& cfg) {
    if (!(u_source.grid() == rho_source.grid()) || u_source.size() != rho_source.size()) {
        throw std::invalid_argument("duhamel: trajectories do not share a grid");
    }
    const Grid& g = rho_source.grid();
    const auto& times = rho_source.times();
    require_uniform(times);
    const double h = times[1] - times[0];
    const std::vector<double> rates = mode_rates(g, cfg);
    std::vector<double> decay(rates.size()), wa(rates.size()), wb(rates.size());
    for (std::size_t i = 0; i < rates.size(); ++i) {
        decay[i] = std::exp(-rates[i] * h);
        exponential_trapezoid_weights(rates[i] * h, h, wa[i], wb[i]);
    }

    Trajectory out(g);
    SpectralField acc(g);
    out.push(times[0], acc);
    SpectralField prev_n = transport(u_source[0], rho_source[0], cfg);
    for (std::size_t step = 1; step < times.size(); ++step) {
        const SpectralField next_n = transport(u_source[step], rho_source[step], cfg);
        auto a = acc.coeffs();
        auto pn = prev_n.coeffs();
        auto nn = next_n.coeffs();
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = decay[i] * a[i] + wa[i] * pn[i] + wb[i] * nn[i];
        out.push(times[step], acc);
        prev_n = next_n;
    }
    return out;
}

Trajectory duhamel_apply(const Trajectory& prev, const SpectralField& rho0, const RunConfig& cfg) {
    if (!(prev.grid() == rho0.grid())) throw std::invalid_argument("duhamel: initial data grid mismatch");
    require_mean_zero(rho0, "duhamel");
    Trajectory out = free_evolution(rho0, prev.times(), cfg);
    if (!cfg.nonlinear) return out;
    const Trajectory corr = duhamel_correction(prev, prev, cfg);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += corr[i];
    return out;
}

PicardResult iterate_to_fixed_point(const SpectralField& rho0, const PicardOptions& opts, const RunConfig& cfg) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("picard: tol must be > 0");
    if (opts.max_iter < 1) throw std::invalid_argument("picard: max_iter must be >= 1");
    const Grid& g = rho0.grid();
    const DyadicSpec spec = make_dyadic_spec(g);
    const std::vector<double> times = mild_time_grid(opts.final_time, opts.intervals);

    Trajectory current(g);
    for (double t : times) current.push(t, SpectralField(g));

    PicardResult result{current, {}, {}, {}, 0, false, true};
    int growing = 0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        Trajectory next = duhamel_apply(current, rho0, cfg);
        result.iterations = it;
        if (!trajectory_finite(next)) {
            result.contracted = false;
            break;
        }
        const double diff = ep_norm(difference(next, current), opts.p, spec);
        const double norm = ep_norm(next, opts.p, spec);
        if (!std::isfinite(diff) || !std::isfinite(norm)) {
            result.contracted = false;
            break;
        }
        if (!result.differences.empty() && result.differences.back() > 0.0) {
            const double r = diff / result.differences.back();
            result.factors.push_back(r);
            growing = r >= 1.0 ? growing + 1 : 0;
        }
        result.differences.push_back(diff);
        result.norms.push_back(norm);
        current = std::move(next);
        if (diff <= opts.tol * norm) {
            result.converged = true;
            break;
        }
        // Two successive non-shrinking steps: the map is not contracting here.
        if (growing >= 2) {
            result.contracted = false;
            break;
        }
    }
    if (!result.converged && result.contracted && !result.factors.empty()) {
        result.contracted = std::all_of(result.factors.begin(), result.factors.end(), [](double r) { return r < 1.0; });
    }
    result.solution = std::move(current);
    return result;
}

ScanResult smallness_scan(const SpectralField& profile, const std::vector<double>& scales, const PicardOptions& opts,
                          const RunConfig& cfg, double fit_max_scale) {
    if (!std::is_sorted(scales.begin(), scales.end())) throw std::invalid_argument("smallness scan: scales must be sorted");
    const DyadicSpec spec = make_dyadic_spec(profile.grid());
    const std::vector<double> times = mild_time_grid(opts.final_time, opts.intervals);
    ScanResult out;
    std::vector<double> xs, ys;
    for (double scale : scales) {
        if (!(scale >= 0.0)) throw std::invalid_argument("smallness scan: scales must be >= 0");
        ScanRow row;
        row.scale = scale;
        const SpectralField rho0 = scale * profile;
        const PicardResult pic = iterate_to_fixed_point(rho0, opts, cfg);
        row.contracted = pic.contracted;
        row.converged = pic.converged;
        row.iterations = pic.iterations;
        row.ep_norm = pic.norms.empty() ? 0.0 : pic.norms.back();
        row.max_factor = pic.factors.empty() ? 0.0 : *std::max_element(pic.factors.begin(), pic.factors.end());

        const Trajectory free = free_evolution(rho0, times, cfg);
        row.free_norm = ep_norm(free, opts.p, spec);
        const Trajectory bilinear = duhamel_correction(free, free, cfg);
        row.bilinear_norm = trajectory_finite(bilinear) ? ep_norm(bilinear, opts.p, spec) : kInfinity;
        if (scale > 0.0 && scale <= fit_max_scale && row.free_norm > 0.0 && row.bilinear_norm > 0.0 &&
            std::isfinite(row.bilinear_norm)) {
            xs.push_back(std::log(row.free_norm));
            ys.push_back(std::log(row.bilinear_norm));
        }
        if (!row.contracted && !out.threshold) out.threshold = scale;
        out.rows.push_back(row);
    }
    if (xs.size() >= 2) out.cubic_exponent = fit_line(xs, ys).slope;
    return out;
}

double gevrey_ep_norm(const Trajectory& traj, double a, double p, const DyadicSpec& spec) {
    if (!(a > 0.0 && a <= 0.25)) throw std::invalid_argument("gevrey_ep_norm: a must lie in (0, 1/4]");
    Trajectory weighted(traj.grid());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        weighted.push(traj.times()[i], gevrey_weight(traj[i], a * traj.times()[i]));
    }
    return ep_norm(weighted, p, spec);
}

std::optional<double> analyticity_radius(const SpectralField& rho) {
    const Grid& g = rho.grid();
    std::map<int, double> shell_max;
    double peak = 0.0;
    for (int i1 = 0; i1 < g.n(); ++i1) {
        for (int i2 = 0; i2 < g.n(); ++i2) {
            const int shell = std::abs(g.mode(i1)) + std::abs(g.mode(i2));
            if (shell == 0) continue;
            const double v = std::abs(rho.at(i1, i2));
            double& m = shell_max[shell];
            m = std::max(m, v);
            peak = std::max(peak, v);
        }
    }
    if (peak == 0.0) return std::nullopt;
    const double floor = 1e-14 * peak;
    int top = 0;
    for (const auto& [shell, v] : shell_max) {
        if (v > floor) top = std::max(top, shell);
    }
    std::vector<double> xs, ys;
    for (const auto& [shell, v] : shell_max) {
        if (v > floor && 8 * shell >= top) {
            xs.push_back(g.dk() * shell);
            ys.push_back(std::log(v));
        }
    }
    if (xs.size() < 2) return std::nullopt;
    return std::max(0.0, -fit_line(xs, ys).slope);
}

}  // namespace eclab
