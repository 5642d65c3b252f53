#pragma once

#include <optional>
#include <vector>

#include "eclab/evolution.hpp"
#include "eclab/littlewood_paley.hpp"

namespace eclab {

/// E_p = L~^inf_t B^{2/p}_{p,1} + L~^1_t B^{2/p+1}_{p,1}.
double ep_norm(const Trajectory& traj, double p, const DyadicSpec& spec);

/// Uniform node times 0, T/M, ..., T.
std::vector<double> mild_time_grid(double final_time, int intervals);

/// Free evolution exp(-t L) rho0 on the given nodes, L the configured linear rate.
Trajectory free_evolution(const SpectralField& rho0, const std::vector<double>& times, const RunConfig& cfg);

/// One Picard map: exp(-t L) rho0 + int_0^t exp(-(t-s) L) N(prev(s)) ds with
/// N = -div(u rho). The integrand is linear between nodes and the kernel is
/// integrated exactly. Throws std::invalid_argument on a grid mismatch.
Trajectory duhamel_apply(const Trajectory& prev, const SpectralField& rho0, const RunConfig& cfg);

/// The Duhamel correction alone, with the velocity taken from `u_source`
/// and the transported scalar from `rho_source`.
Trajectory duhamel_correction(const Trajectory& u_source, const Trajectory& rho_source, const RunConfig& cfg);

struct PicardOptions {
    double final_time = 1.0;
    int intervals = 100;
    double p = 2.0;
    double tol = 1e-10;
    int max_iter = 30;
};

struct PicardResult {
    Trajectory solution;
    /// r_n = ||rho^(n+1) - rho^(n)|| / ||rho^(n) - rho^(n-1)||.
    std::vector<double> factors;
    /// ||rho^(n) - rho^(n-1)||_{E_p} for n = 1, 2, ...
    std::vector<double> differences;
    std::vector<double> norms;
    int iterations = 0;
    bool converged = false;
    /// False once the differences stop shrinking or leave the double range.
    bool contracted = true;
};

/// Iterates from rho^(0) = 0 until the E_p difference drops below
/// tol * ||rho^(n)||_{E_p}, the iteration stops contracting, or max_iter.
PicardResult iterate_to_fixed_point(const SpectralField& rho0, const PicardOptions& opts, const RunConfig& cfg);

struct ScanRow {
    double scale = 0.0;
    bool contracted = false;
    bool converged = false;
    double ep_norm = 0.0;
    double max_factor = 0.0;
    int iterations = 0;
    /// ||B(u, rho)||_{E_p} and ||rho||_{E_p} for rho the free evolution.
    double bilinear_norm = 0.0;
    double free_norm = 0.0;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    /// Smallest scale that failed to contract, if any.
    std::optional<double> threshold;
    /// Log-log slope of bilinear_norm against free_norm over the rows with
    /// scale <= fit_max_scale; empty with fewer than two usable rows.
    std::optional<double> cubic_exponent;
};

ScanResult smallness_scan(const SpectralField& profile, const std::vector<double>& scales, const PicardOptions& opts,
                          const RunConfig& cfg, double fit_max_scale = 1e-2);

/// ep_norm of t -> exp(a t Lambda_1) rho(t). Requires a in (0, 1/4];
/// propagates OverflowError from the weight.
double gevrey_ep_norm(const Trajectory& traj, double a, double p, const DyadicSpec& spec);

/// Decay rate sigma of max |rho(k)| over shells |k1| + |k2| = K, fitted
/// against K over the top three octaves of shells above 1e-14 of the peak.
/// Empty when fewer than two shells qualify.
std::optional<double> analyticity_radius(const SpectralField& rho);

}  // namespace eclab
