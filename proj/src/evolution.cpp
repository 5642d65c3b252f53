#include "eclab/evolution.hpp"

#include <cmath>
#include <string>

#include "eclab/constitutive.hpp"
#include "eclab/fft.hpp"
#include "eclab/littlewood_paley.hpp"
#include "eclab/multipliers.hpp"

namespace eclab {

namespace {

constexpr double kVelocityFloor = 1e-12;
// The L^2 norm is non-increasing for the exact system; growth by this
// factor can only be numerical instability.
constexpr double kRunawayFactor = 1e3;

template <class Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
    const int n = g.n();
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            const double k2 = g.wavenumber(i2);
            fn(g.flat(i1, i2), std::sqrt(k1 * k1 + k2 * k2));
        }
    }
}

void scale_modes(SpectralField& f, const std::vector<double>& factors) {
    auto c = f.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= factors[i];
}

SpectralField scaled(const SpectralField& f, const std::vector<double>& factors) {
    SpectralField out = f;
    scale_modes(out, factors);
    return out;
}

// out = a * x + b * y, mode by mode.
SpectralField combine(const std::vector<double>& a, const SpectralField& x, const std::vector<double>& b,
                      const SpectralField& y) {
    SpectralField out(x.grid());
    auto o = out.coeffs();
    auto cx = x.coeffs();
    auto cy = y.coeffs();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = a[i] * cx[i] + b[i] * cy[i];
    return out;
}

void check_finite(const SpectralField& f, double time, const char* where) {
    if (!all_finite(f)) {
        throw BlowUpError(time, std::nan(""), std::nan(""), std::string("non-finite state in ") + where);
    }
}

}  // namespace

void RunConfig::validate() const {
    Grid(n, box_length);
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("alpha must lie in (0, 2]");
    if (!(viscosity >= 0.0)) throw std::invalid_argument("viscosity must be >= 0");
    if (!(mollifier >= 0.0)) throw std::invalid_argument("mollifier must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (!(final_time > 0.0)) throw std::invalid_argument("final time must be > 0");
    if (!(cfl_safety > 0.0)) throw std::invalid_argument("cfl safety must be > 0");
    if (output_every < 1) throw std::invalid_argument("output_every must be >= 1");
    const double slots = final_time / output_interval();
    if (std::abs(slots - std::round(slots)) > 1e-9 * std::max(1.0, slots) || std::round(slots) < 1.0) {
        throw std::invalid_argument("final time must be a positive multiple of dt * output_every");
    }
}

long RunConfig::output_count() const { return std::lround(final_time / output_interval()); }

BlowUpError::BlowUpError(double t, double l2_value, double linf_value, const std::string& what)
    : std::runtime_error(what + " at t = " + std::to_string(t)), time(t), l2(l2_value), linf(linf_value) {}

double linear_rate(double k, const RunConfig& cfg) {
    const double frac = cfg.alpha == 1.0 ? k : std::pow(k, cfg.alpha);
    return frac + cfg.viscosity * (k * k);
}

SpectralField mollify(const SpectralField& f, double eps) {
    if (!(eps >= 0.0)) throw std::invalid_argument("mollifier strength must be >= 0");
    if (eps == 0.0) return f;
    return apply_radial(f, [eps](double k) { return std::exp(-eps * k * k); }, 1.0);
}

VectorField mollify(const VectorField& v, double eps) { return VectorField(mollify(v.c1, eps), mollify(v.c2, eps)); }

VectorField transport_velocity(const SpectralField& rho, const RunConfig& cfg) {
    return mollify(velocity(rho, cfg.dealias), cfg.mollifier);
}

SpectralField nonlinear_term(const SpectralField& rho, const RunConfig& cfg) {
    if (!cfg.nonlinear) return SpectralField(rho.grid());
    require_mean_zero(rho, "nonlinear term");
    const Grid& g = rho.grid();
    const PhysicalField rho_phys = to_product_space(rho, cfg.dealias);
    const VectorField u = mollify(velocity_from_force(force(rho, rho_phys, cfg.dealias)), cfg.mollifier);
    const VectorField flux(
        from_product_space(multiply(to_product_space(u.c1, cfg.dealias), rho_phys), g, cfg.dealias),
        from_product_space(multiply(to_product_space(u.c2, cfg.dealias), rho_phys), g, cfg.dealias));
    SpectralField out = divergence(flux);
    out *= -1.0;
    out.at(0, 0) = 0.0;
    return out;
}

SpectralField rhs(const SpectralField& rho, const RunConfig& cfg) {
    SpectralField out = nonlinear_term(rho, cfg);
    auto o = out.coeffs();
    auto r = rho.coeffs();
    for_each_mode(rho.grid(), [&](std::size_t i, double k) { o[i] -= linear_rate(k, cfg) * r[i]; });
    out.at(0, 0) = 0.0;
    check_finite(out, std::nan(""), "rhs");
    return out;
}

Stepper::Stepper(const RunConfig& cfg) : cfg_(cfg), grid_(cfg.n, cfg.box_length) {}

void Stepper::prepare(double dt) {
    if (dt == cached_dt_) return;
    cached_dt_ = dt;
    const std::size_t size = grid_.size();
    half_.assign(size, 0.0);
    full_.assign(size, 0.0);
    for_each_mode(grid_, [&](std::size_t i, double k) {
        const double rate = linear_rate(k, cfg_);
        half_[i] = std::exp(-rate * (0.5 * dt));
        full_[i] = std::exp(-rate * dt);
    });
    if (cfg_.integrator != Integrator::ETDRK4) return;

    // Phi-function coefficients by contour averaging around z = -rate*dt.
    constexpr int kContour = 32;
    q_.assign(size, 0.0);
    f1_.assign(size, 0.0);
    f2_.assign(size, 0.0);
    f3_.assign(size, 0.0);
    std::vector<Complex> roots(kContour);
    for (int m = 0; m < kContour; ++m) {
        roots[static_cast<std::size_t>(m)] = std::polar(1.0, std::numbers::pi * (m + 0.5) / kContour);
    }
    for_each_mode(grid_, [&](std::size_t i, double k) {
        const double z = -linear_rate(k, cfg_) * dt;
        Complex q = 0.0, a = 0.0, b = 0.0, c = 0.0;
        for (const Complex& r : roots) {
            const Complex lr = z + r;
            const Complex e = std::exp(lr);
            const Complex lr3 = lr * lr * lr;
            q += (std::exp(0.5 * lr) - 1.0) / lr;
            a += (-4.0 - lr + e * (4.0 - 3.0 * lr + lr * lr)) / lr3;
            b += (2.0 + lr + e * (lr - 2.0)) / lr3;
            c += (-4.0 - 3.0 * lr - lr * lr + e * (4.0 - lr)) / lr3;
        }
        q_[i] = dt * q.real() / kContour;
        f1_[i] = dt * a.real() / kContour;
        f2_[i] = dt * b.real() / kContour;
        f3_[i] = dt * c.real() / kContour;
    });
}

SpectralField Stepper::step(const SpectralField& rho, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    if (!(rho.grid() == grid_)) throw std::invalid_argument("step: grid mismatch");
    prepare(dt);
    SpectralField out = cfg_.integrator == Integrator::ETDRK4 ? step_etdrk4(rho, dt) : step_ifrk4(rho, dt);
    out.at(0, 0) = 0.0;
    check_finite(out, std::nan(""), "step");
    return out;
}

// Integrating-factor RK4: the linear factor exp(-rate dt) is applied exactly,
// the transport term by classical RK4 in the rotated variable.
SpectralField Stepper::step_ifrk4(const SpectralField& rho, double dt) {
    const SpectralField k1 = nonlinear_term(rho, cfg_);
    SpectralField stage = rho;
    for (std::size_t i = 0; i < stage.coeffs().size(); ++i) stage.coeffs()[i] += (0.5 * dt) * k1.coeffs()[i];
    scale_modes(stage, half_);
    const SpectralField k2 = nonlinear_term(stage, cfg_);

    const SpectralField rho_half = scaled(rho, half_);
    stage = rho_half;
    for (std::size_t i = 0; i < stage.coeffs().size(); ++i) stage.coeffs()[i] += (0.5 * dt) * k2.coeffs()[i];
    const SpectralField k3 = nonlinear_term(stage, cfg_);

    for (std::size_t i = 0; i < stage.coeffs().size(); ++i) {
        stage.coeffs()[i] = full_[i] * rho.coeffs()[i] + dt * half_[i] * k3.coeffs()[i];
    }
    const SpectralField k4 = nonlinear_term(stage, cfg_);

    SpectralField out(rho.grid());
    auto o = out.coeffs();
    for (std::size_t i = 0; i < o.size(); ++i) {
        const Complex increment = full_[i] * k1.coeffs()[i] + 2.0 * half_[i] * (k2.coeffs()[i] + k3.coeffs()[i]) +
                                  k4.coeffs()[i];
        o[i] = full_[i] * rho.coeffs()[i] + (dt / 6.0) * increment;
    }
    return out;
}

// Cox-Matthews ETDRK4 with Kassam-Trefethen coefficients.
SpectralField Stepper::step_etdrk4(const SpectralField& rho, double) {
    const SpectralField n0 = nonlinear_term(rho, cfg_);
    const SpectralField a = combine(half_, rho, q_, n0);
    const SpectralField na = nonlinear_term(a, cfg_);
    const SpectralField b = combine(half_, rho, q_, na);
    const SpectralField nb = nonlinear_term(b, cfg_);
    SpectralField c(rho.grid());
    for (std::size_t i = 0; i < c.coeffs().size(); ++i) {
        c.coeffs()[i] = half_[i] * a.coeffs()[i] + q_[i] * (2.0 * nb.coeffs()[i] - n0.coeffs()[i]);
    }
    const SpectralField nc = nonlinear_term(c, cfg_);
    SpectralField out(rho.grid());
    for (std::size_t i = 0; i < out.coeffs().size(); ++i) {
        out.coeffs()[i] = full_[i] * rho.coeffs()[i] + f1_[i] * n0.coeffs()[i] +
                          2.0 * f2_[i] * (na.coeffs()[i] + nb.coeffs()[i]) + f3_[i] * nc.coeffs()[i];
    }
    return out;
}

SpectralField step(const SpectralField& rho, double dt, const RunConfig& cfg) { return Stepper(cfg).step(rho, dt); }

double cfl_dt(const SpectralField& rho, const RunConfig& cfg) {
    double umax = 0.0;
    if (cfg.nonlinear) {
        const VectorField u = transport_velocity(rho, cfg);
        umax = std::max(lp_norm(inverse_transform(u.c1), kInfinity), lp_norm(inverse_transform(u.c2), kInfinity));
    }
    const double dx = cfg.box_length / cfg.n;
    return std::min(cfg.dt, cfg.cfl_safety * dx / std::max(umax, kVelocityFloor));
}

Trajectory run(const RunConfig& cfg) {
    cfg.validate();
    const Grid grid(cfg.n, cfg.box_length);
    return run_from(prepare_initial_data(make_initial_data(cfg.ic, grid), cfg), cfg);
}

Trajectory run_from(const SpectralField& rho0, const RunConfig& cfg) {
    cfg.validate();
    const Grid grid(cfg.n, cfg.box_length);
    if (!(rho0.grid() == grid)) throw std::invalid_argument("run: initial data grid does not match config");
    Trajectory traj(grid);
    SpectralField rho = rho0;
    check_finite(rho, 0.0, "initial data");
    const double initial_l2 = l2_norm(rho);
    traj.push(0.0, rho);

    Stepper stepper(cfg);
    const long slots = cfg.output_count();
    const double interval = cfg.output_interval();
    auto guard = [&](const SpectralField& state, double t) {
        const double l2 = l2_norm(state);
        if (!all_finite(state) || l2 > kRunawayFactor * std::max(initial_l2, 1e-300)) {
            const double linf = all_finite(state) ? lp_norm(inverse_transform(state), kInfinity) : std::nan("");
            throw BlowUpError(t, l2, linf, "numerical blow-up");
        }
    };
    for (long slot = 1; slot <= slots; ++slot) {
        const double t_start = static_cast<double>(slot - 1) * interval;
        const double t_end = static_cast<double>(slot) * interval;
        if (!cfg.adaptive) {
            for (int s = 0; s < cfg.output_every; ++s) {
                try {
                    rho = stepper.step(rho, cfg.dt);
                } catch (const BlowUpError&) {
                    throw BlowUpError(t_start + (s + 1) * cfg.dt, std::nan(""), std::nan(""), "numerical blow-up");
                }
                guard(rho, t_start + (s + 1) * cfg.dt);
            }
        } else {
            double t = t_start;
            while (t < t_end) {
                double dt = cfl_dt(rho, cfg);
                const double remaining = t_end - t;
                bool last = false;
                if (dt >= remaining * (1.0 - 1e-12)) {
                    dt = remaining;
                    last = true;
                }
                try {
                    rho = stepper.step(rho, dt);
                } catch (const BlowUpError&) {
                    throw BlowUpError(t + dt, std::nan(""), std::nan(""), "numerical blow-up");
                }
                t = last ? t_end : t + dt;
                guard(rho, t);
            }
        }
        traj.push(t_end, rho);
    }
    return traj;
}

}  // namespace eclab
