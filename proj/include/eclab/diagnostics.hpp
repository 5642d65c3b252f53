#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eclab/littlewood_paley.hpp"
#include "eclab/trajectory.hpp"

namespace eclab {

struct DiagnosticSeries {
    std::string name;
    std::vector<double> times;
    std::vector<double> values;
};

/// Result of fitting a model to a series. Parameter names depend on the model.
struct FitResult {
    std::string model;
    std::map<std::string, double> params;
    double residual = 0.0;
    double window_start = 0.0;
    double window_end = 0.0;
    bool pass = false;
};

/// Default fraction of the run excluded from decay fits as transient.
inline constexpr double kTransientFraction = 0.05;

/// max |f| with the grid maximum refined by Newton iteration on the
/// trigonometric interpolant.
double linf_norm(const SpectralField& f);

/// ||f||_{L^p} by grid quadrature, or linf_norm for p = inf.
double lp_norm_refined(const SpectralField& f, double p);

/// Per-interval residual of 1/2 dE/dt + ||Lambda^{a/2} rho||^2 + eps ||grad rho||^2 = 0,
/// with E = ||rho||^2. The energy change is exact over each interval; the
/// dissipation average uses four-point interpolatory quadrature on uniform
/// grids (trapezoid otherwise). Residuals are divided by the interval
/// average of ||Lambda^{1/2} rho||^2 and stamped at the interval end.
struct EnergyBudget {
    DiagnosticSeries residual;
    double max_relative = 0.0;
};
EnergyBudget energy_budget(const Trajectory& traj, double alpha, double viscosity);

/// ||rho(t)||_{L^p} over the trajectory.
DiagnosticSeries lp_series(const Trajectory& traj, double p);

/// Indices i >= 1 where values[i] > values[i-1] * (1 + rel_tol).
std::vector<std::size_t> monotonicity_violations(const std::vector<double>& values, double rel_tol = 1e-9);
std::vector<std::size_t> lp_monotonicity(const Trajectory& traj, double p, double rel_tol = 1e-9);

/// Reciprocal-linear envelope 1/||rho(t)||_inf - 1/||rho0||_inf >= c t.
/// params: c (largest constant valid over the window), c_lsq (least squares
/// through the origin). pass iff c > 0. Throws std::invalid_argument when
/// ||rho0||_inf = 0.
FitResult linf_decay_fit(const Trajectory& traj, double window_fraction = kTransientFraction);

/// log(values) = rate * t + intercept over [t_lo, t_hi]. params: rate,
/// intercept. Throws std::invalid_argument on a nonpositive value in the
/// window or fewer than two samples.
FitResult exp_decay_rate(const DiagnosticSeries& series, double t_lo, double t_hi);

/// C1 = max_t log(||Lambda^s rho(t)|| / ||Lambda^s rho0||) / t and the
/// cumulative dissipation int ||Lambda^{s + a/2} rho||^2 dt.
/// params: C1, dissipation_integral. pass iff both finite.
FitResult hs_growth_check(const Trajectory& traj, double s, double alpha);

/// I = int |f|^{p-2} f Lambda f dx by grid quadrature, with the scale
/// int |f|^{p-1} |Lambda f| dx for judging roundoff.
struct CordobaResult {
    double integral = 0.0;
    double scale = 0.0;
    bool pass(double rel_tol = 1e-12) const { return integral >= -rel_tol * scale; }
};
CordobaResult cordoba_positivity(const SpectralField& f, double p);

/// int_0^t 2^j exp(-c (t - s) 2^j) s^{-alpha} ds.
double weighted_shell_integral(int j, double t, double alpha, double c, double rel_tol = 1e-12);

struct ShellIntegralRow {
    int j = 0;
    double t = 0.0;
    double alpha = 0.0;
    double ratio = 0.0;
    double refined_ratio = 0.0;
    double relative_change = 0.0;
};
struct ShellIntegralTable {
    std::vector<ShellIntegralRow> rows;
    double sup_ratio = 0.0;
    double max_relative_change = 0.0;
    /// Finite sup and every refinement change below 1e-3.
    bool pass = false;
};
ShellIntegralTable weighted_shell_check(const std::vector<int>& js, const std::vector<double>& ts, double alpha, double c);

/// Difference d(t) = ||rho1 - rho2||_{L^2} against d(0) exp(C/2 int K) with
/// K = (||rho1||^2_{H^{3/2}} + ||rho2||^2_{H^{3/2}}) ||rho1||^2_{H^{3/2}} and C
/// the smallest constant making the envelope hold.
struct UniquenessReport {
    DiagnosticSeries distance;
    DiagnosticSeries envelope;
    double fitted_constant = 0.0;
    bool identical = false;
    bool pass = false;
};
UniquenessReport uniqueness_divergence(const Trajectory& a, const Trajectory& b);

/// max over snapshots of t^aw ||rho(t)||_{B^beta_{inf,inf}}. Throws
/// std::invalid_argument for aw > 0 with a snapshot at t <= 0.
double weighted_besov_sup(const Trajectory& traj, double aw, double beta, const DyadicSpec& spec);

/// ||Lambda^s rho(t)||_{L^2}.
DiagnosticSeries sobolev_series(const Trajectory& traj, double s);

}  // namespace eclab
