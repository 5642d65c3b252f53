#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "eclab/field.hpp"
#include "eclab/products.hpp"
#include "eclab/trajectory.hpp"

namespace eclab {

enum class Integrator { IFRK4, ETDRK4 };

/// One term a * cos(m . x + phase) of an analytic initial profile.
struct Mode {
    int m1 = 1;
    int m2 = 0;
    double amplitude = 1.0;
    double phase = 0.0;
};

/// Named initial profiles.
///   single_mode    amplitude * cos(m . x) with m = modes[0] or (1, 0)
///   two_mode       amplitude * (cos x1 + cos(x1 + x2))
///   modes          sum of the listed modes, scaled by amplitude
///   random_smooth  seeded Gaussian-envelope spectrum, unit L^2 norm times amplitude
///   file           snapshot file at `path`, scaled by amplitude
struct InitialData {
    std::string kind = "single_mode";
    double amplitude = 1.0;
    std::vector<Mode> modes;
    std::uint64_t seed = 0;
    double spectral_width = 3.0;
    std::string path;
};

struct RunConfig {
    int n = 64;
    double box_length = 2.0 * std::numbers::pi;
    /// Dissipation order, in (0, 2].
    double alpha = 1.0;
    /// Coefficient of the -eps Laplacian term.
    double viscosity = 0.0;
    /// Gaussian mollifier strength applied to the velocity and the data.
    double mollifier = 0.0;
    /// Fixed step, or the step cap when adaptive.
    double dt = 1e-3;
    bool adaptive = false;
    double cfl_safety = 0.5;
    double final_time = 1.0;
    /// Snapshot cadence in units of dt.
    int output_every = 10;
    InitialData ic;
    DealiasMode dealias = DealiasMode::TwoThirds;
    Integrator integrator = Integrator::IFRK4;
    /// Disables the transport term; the step reduces to the linear semigroup.
    bool nonlinear = true;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
    double output_interval() const { return dt * output_every; }
    long output_count() const;
};

/// Non-finite or runaway state. Carries where and how it happened.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(double time, double l2, double linf, const std::string& what);
    double time;
    double l2;
    double linf;
};

/// The evolved dissipation rate |k|^alpha + eps |k|^2 at wavenumber k.
double linear_rate(double k, const RunConfig& cfg);

/// Gaussian mollifier exp(-eps |k|^2).
SpectralField mollify(const SpectralField& f, double eps);
VectorField mollify(const VectorField& v, double eps);

/// Advecting velocity for the configured system: J_eps0 P(-rho R rho).
VectorField transport_velocity(const SpectralField& rho, const RunConfig& cfg);

/// -div(u rho) with both products de-aliased; zero when nonlinear is off.
SpectralField nonlinear_term(const SpectralField& rho, const RunConfig& cfg);

/// Full right-hand side -div(u rho) - Lambda^alpha rho + eps Laplacian rho.
/// Throws BlowUpError on non-finite output.
SpectralField rhs(const SpectralField& rho, const RunConfig& cfg);

/// Stateful single-step integrator; caches the per-mode exponential
/// coefficients for the most recent dt.
class Stepper {
public:
    explicit Stepper(const RunConfig& cfg);
    SpectralField step(const SpectralField& rho, double dt);

private:
    void prepare(double dt);
    SpectralField step_ifrk4(const SpectralField& rho, double dt);
    SpectralField step_etdrk4(const SpectralField& rho, double dt);

    RunConfig cfg_;
    Grid grid_;
    double cached_dt_ = -1.0;
    std::vector<double> half_;
    std::vector<double> full_;
    std::vector<double> q_, f1_, f2_, f3_;
};

SpectralField step(const SpectralField& rho, double dt, const RunConfig& cfg);

/// safety * dx / max(||u||_inf, 1e-12), capped at cfg.dt.
double cfl_dt(const SpectralField& rho, const RunConfig& cfg);

/// Data preparation shared by every solver: mean removed, restricted to the
/// evolved band, mollified.
SpectralField prepare_initial_data(SpectralField rho0, const RunConfig& cfg);

/// Builds the configured profile on the configured grid (not yet prepared).
SpectralField make_initial_data(const InitialData& ic, const Grid& grid);

/// Integrates from the prepared configured data to final_time.
Trajectory run(const RunConfig& cfg);

/// Integrates from already prepared data.
Trajectory run_from(const SpectralField& rho0, const RunConfig& cfg);

}  // namespace eclab
