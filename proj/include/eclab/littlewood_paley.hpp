#pragma once

#include <limits>
#include <map>
#include <optional>

#include "eclab/field.hpp"
#include "eclab/trajectory.hpp"

namespace eclab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Smooth radial cutoff: 1 on [0, 1/2], 0 on [5/8, inf), C^inf and
/// nonincreasing in between.
double dyadic_cutoff(double r);

/// Shell profile Psi(r) = cutoff(r / 2) - cutoff(r), supported in [1/2, 5/4].
double dyadic_shell(double r);

/// Active shell range for a grid. Shells outside [j_min, j_max] have no
/// grid wavevector in their annulus.
struct DyadicSpec {
    int j_min = 0;
    int j_max = 0;

    /// Psi_j(r) = Psi(2^-j r).
    static double shell(int j, double r);
    bool contains(int j) const { return j >= j_min && j <= j_max; }
};

/// j_min = floor(log2 k_min) - 1, j_max = ceil(log2 k_max) + 1.
DyadicSpec make_dyadic_spec(const Grid& grid);

/// Delta_j f. Throws std::out_of_range for j outside the spec.
SpectralField dyadic_block(const SpectralField& f, int j, const DyadicSpec& spec);

/// The blocks Delta_j f for every j in the spec.
struct BlockSet {
    std::map<int, SpectralField> blocks;
};
BlockSet decompose(const SpectralField& f, const DyadicSpec& spec);
SpectralField reconstruct(const BlockSet& blocks, const Grid& grid);

/// S_j f as the single multiplier cutoff(2^-j |k|) (zero at k = 0).
/// Accepts j in [j_min, j_max + 1].
SpectralField low_pass(const SpectralField& f, int j, const DyadicSpec& spec);

/// S_j f as the explicit sum of Delta_k f over k <= j - 1.
SpectralField low_pass_by_blocks(const SpectralField& f, int j, const DyadicSpec& spec);

/// (dx^2 sum |f|^p)^(1/p), or max |f| for p = inf.
double lp_norm(const PhysicalField& f, double p);
double lp_norm(const SpectralField& f, double p);

/// ||Delta_j f||_{L^p} for j = j_min..j_max (index j - j_min).
std::vector<double> block_lp_norms(const SpectralField& f, double p, const DyadicSpec& spec);

/// Homogeneous Besov norm restricted to the active shells.
double besov_norm(const SpectralField& f, double s, double p, double q, const DyadicSpec& spec);

/// Chemin-Lerner norm: time norm r in {1, inf} inside, dyadic l^q outside.
/// r = 1 uses the trapezoid rule over the trajectory's time grid.
double time_besov_norm(const Trajectory& traj, double s, double p, double q, double r, const DyadicSpec& spec);

/// Weighted l^q sum of per-shell values: (sum_j (2^{js} a_j)^q)^{1/q}.
double dyadic_lq_sum(const std::vector<double>& per_shell, int j_min, double s, double q);

/// Two halves of the paraproduct identity for Delta_j(f g), evaluated on the
/// 2n grid where every product is exact:
///   low_high  = sum_{k >= j-2} Delta_j(S_{k+1} f Delta_k g)
///   high_low  = sum_{k >= j-2} Delta_j(S_k g Delta_k f)
///   product_block = Delta_j(f g)
struct ParaproductSplit {
    SpectralField low_high;
    SpectralField high_low;
    SpectralField product_block;
};
ParaproductSplit paraproduct_split(const SpectralField& f, const SpectralField& g, int j, const DyadicSpec& spec);

/// Delta_j(S_{k+1} f Delta_k g) on the 2n grid.
SpectralField paraproduct_low_high_term(const SpectralField& f, const SpectralField& g, int j, int k);
/// Delta_j(S_k g Delta_k f) on the 2n grid.
SpectralField paraproduct_high_low_term(const SpectralField& f, const SpectralField& g, int j, int k);

/// ||Delta_j f||_q / (2^{2j(1/p - 1/q)} ||Delta_j f||_p); empty for a zero block.
std::optional<double> bernstein_ratio(const SpectralField& f, int j, double p, double q, const DyadicSpec& spec);

/// max over |a| = order of ||d^a Delta_j f||_p / (2^{j order} ||Delta_j f||_p).
std::optional<double> derivative_bernstein_ratio(const SpectralField& f, int j, int order, double p,
                                                 const DyadicSpec& spec);

/// ||exp(-t Lambda^a) Delta_j f||_p / ||Delta_j f||_p.
std::optional<double> localization_ratio(const SpectralField& f, int j, double t, double a, double p,
                                         const DyadicSpec& spec);

}  // namespace eclab
