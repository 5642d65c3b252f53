#pragma once

#include "eclab/field.hpp"
#include "eclab/products.hpp"

namespace eclab {

// The electroconvection constitutive chain. Every function takes a mean-zero
// charge density rho and throws MeanNotZeroError otherwise.

/// Phi = Lambda^-1 rho.
SpectralField potential(const SpectralField& rho);

/// E = -grad Phi = -R rho.
VectorField electric_field(const SpectralField& rho);

/// F = rho E = -rho R rho, each product de-aliased.
VectorField force(const SpectralField& rho, DealiasMode mode = DealiasMode::TwoThirds);

/// Same as force() with rho already sampled in product space.
VectorField force(const SpectralField& rho, const PhysicalField& rho_product_space, DealiasMode mode);

/// u = P F = -P(rho R rho); the mean mode is set to zero.
VectorField velocity(const SpectralField& rho, DealiasMode mode = DealiasMode::TwoThirds);
VectorField velocity_from_force(const VectorField& force);

/// Zero-mean pressure solving u + grad p = F: p(k) = -i k.F(k) / |k|^2.
SpectralField pressure(const SpectralField& rho, DealiasMode mode = DealiasMode::TwoThirds);
SpectralField pressure_from_force(const VectorField& force);

/// ||u + grad p - F||_{L^2} / ||F||_{L^2} (0 when F = 0).
double darcy_residual(const VectorField& u, const SpectralField& p, const VectorField& force);

}  // namespace eclab
