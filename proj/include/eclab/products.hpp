#pragma once

#include "eclab/field.hpp"

namespace eclab {

/// How physical-space products are de-aliased.
///  - TwoThirds: multiply on the base grid, then keep |m1|, |m2| <= (n-1)/3.
///  - StrictPadded: multiply on a 2n grid and truncate back; Nyquist rows zero.
enum class DealiasMode { TwoThirds, StrictPadded };

/// Largest retained |m| under the 2/3 rule.
inline int two_thirds_cutoff(int n) { return (n - 1) / 3; }

void apply_two_thirds_mask(SpectralField& f);

/// Zero-pads onto a finer grid with the same box length. Source Nyquist rows
/// are dropped since they have no symmetric counterpart.
SpectralField pad_to(const SpectralField& f, int n_fine);

/// Keeps the modes representable on `target` (|m| < n_target / 2) and zeroes
/// the target Nyquist rows.
SpectralField truncate_to(const SpectralField& f, const Grid& target);

/// Restricts a field to the band the chosen scheme evolves in.
void project_to_band(SpectralField& f, DealiasMode mode);

/// Physical samples on the grid where products are formed.
PhysicalField to_product_space(const SpectralField& f, DealiasMode mode);

/// Pointwise product in product space.
PhysicalField multiply(const PhysicalField& a, const PhysicalField& b);

/// Transforms a product-space field back to `base` and de-aliases it.
SpectralField from_product_space(const PhysicalField& product, const Grid& base, DealiasMode mode);

/// De-aliased product of two spectral fields on their shared grid.
SpectralField dealiased_product(const SpectralField& a, const SpectralField& b, DealiasMode mode);

/// Exact product of two fields, returned on the 2n grid. Alias-free for any
/// inputs without Nyquist content.
SpectralField padded_product(const SpectralField& a, const SpectralField& b);

}  // namespace eclab
