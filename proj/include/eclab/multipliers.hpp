#pragma once

#include <stdexcept>

#include "eclab/field.hpp"

namespace eclab {

/// Raised when an exponential weight would leave the double range.
class OverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an operator with a singular symbol at k = 0 receives a field
/// with a nonzero mean.
class MeanNotZeroError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Applies a radial symbol m(|k|) mode by mode. The symbol is not evaluated
/// at k = 0; that coefficient is multiplied by `at_origin`.
template <class Symbol>
SpectralField apply_radial(const SpectralField& f, Symbol&& symbol, double at_origin) {
    SpectralField out = f;
    const Grid& g = f.grid();
    const int n = g.n();
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            if (i1 == 0 && i2 == 0) {
                out.at(0, 0) *= at_origin;
                continue;
            }
            const double k2 = g.wavenumber(i2);
            out.at(i1, i2) *= symbol(std::sqrt(k1 * k1 + k2 * k2));
        }
    }
    return out;
}

/// |k|^a, with the k = 0 coefficient sent to zero. Rejects a < 0.
SpectralField apply_fractional_laplacian(const SpectralField& f, double a);

/// |k|^-1 on a mean-zero field.
SpectralField apply_inverse_lambda(const SpectralField& f);

/// R_j f with symbol i k_j / |k|.
VectorField riesz_transform(const SpectralField& f);

/// Gradient with symbol i k_j.
VectorField gradient(const SpectralField& f);

/// i k . v
SpectralField divergence(const VectorField& v);

/// curl v = d1 v2 - d2 v1
SpectralField curl(const VectorField& v);

/// v - k (k . v) / |k|^2 for k != 0; the mean passes through. Nyquist rows
/// are zeroed.
VectorField leray_project(const VectorField& v);

/// exp(-t |k|^a). Rejects t < 0.
SpectralField heat_semigroup(const SpectralField& f, double t, double a);

/// exp(tau (|k1| + |k2|)); throws OverflowError once the exponent passes 700.
SpectralField gevrey_weight(const SpectralField& f, double tau);

/// max over k != 0 of |k . v(k)|.
double max_divergence(const VectorField& v);

/// Rejects fields with |coeff(0)| > 1e-13 * coefficient_norm(f).
void require_mean_zero(const SpectralField& f, const char* what);

}  // namespace eclab
