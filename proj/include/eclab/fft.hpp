#pragma once

#include <vector>

#include "eclab/field.hpp"

namespace eclab {

/// Physical samples to Fourier coefficients (normalized by n^-2).
SpectralField forward_transform(const PhysicalField& f);

/// Fourier coefficients to point samples; the imaginary part is discarded.
PhysicalField inverse_transform(const SpectralField& f);

/// Full complex inverse, used to measure how far a coefficient array is
/// from representing a real field.
std::vector<Complex> inverse_transform_complex(const SpectralField& f);

/// max |Im f(x)| / max(|f(x)|, tiny) over grid points after inverse transform.
double imaginary_residue(const SpectralField& f);

}  // namespace eclab
