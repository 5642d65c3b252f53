#include "eclab/constitutive.hpp"

#include "eclab/multipliers.hpp"

namespace eclab {

SpectralField potential(const SpectralField& rho) { return apply_inverse_lambda(rho); }

VectorField electric_field(const SpectralField& rho) {
    VectorField e = riesz_transform(rho);
    e.c1 *= -1.0;
    e.c2 *= -1.0;
    return e;
}

VectorField force(const SpectralField& rho, const PhysicalField& rho_product_space, DealiasMode mode) {
    const VectorField e = electric_field(rho);
    const Grid& g = rho.grid();
    return VectorField(from_product_space(multiply(rho_product_space, to_product_space(e.c1, mode)), g, mode),
                       from_product_space(multiply(rho_product_space, to_product_space(e.c2, mode)), g, mode));
}

VectorField force(const SpectralField& rho, DealiasMode mode) {
    require_mean_zero(rho, "force");
    return force(rho, to_product_space(rho, mode), mode);
}

VectorField velocity_from_force(const VectorField& f) {
    VectorField u = leray_project(f);
    u.c1.at(0, 0) = 0.0;
    u.c2.at(0, 0) = 0.0;
    return u;
}

VectorField velocity(const SpectralField& rho, DealiasMode mode) { return velocity_from_force(force(rho, mode)); }

SpectralField pressure_from_force(const VectorField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    SpectralField p(g);
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            if (i1 == 0 && i2 == 0) continue;
            const double k2 = g.wavenumber(i2);
            const Complex kf = k1 * f.c1.at(i1, i2) + k2 * f.c2.at(i1, i2);
            p.at(i1, i2) = Complex(0.0, -1.0) * kf / (k1 * k1 + k2 * k2);
        }
    }
    enforce_hermitian(p);
    return p;
}

SpectralField pressure(const SpectralField& rho, DealiasMode mode) { return pressure_from_force(force(rho, mode)); }

double darcy_residual(const VectorField& u, const SpectralField& p, const VectorField& f) {
    const VectorField grad_p = gradient(p);
    VectorField r(u.c1 + grad_p.c1 - f.c1, u.c2 + grad_p.c2 - f.c2);
    // The mean of F is not representable as a gradient; it is the mean of u.
    r.c1.at(0, 0) = 0.0;
    r.c2.at(0, 0) = 0.0;
    const double scale = l2_norm(f);
    return scale == 0.0 ? l2_norm(r) : l2_norm(r) / scale;
}

}  // namespace eclab
