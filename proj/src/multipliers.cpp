#include "eclab/multipliers.hpp"

#include <cmath>
#include <string>

namespace eclab {

namespace {

constexpr double kGevreyExponentLimit = 700.0;

// Odd symbols (i k_j) break Hermitian symmetry on the Nyquist rows, where a
// stored mode has no stored partner. Projecting back restores a real field.
template <class Symbol>
SpectralField apply_vector_symbol(const SpectralField& f, Symbol&& symbol) {
    SpectralField out = f;
    const Grid& g = f.grid();
    const int n = g.n();
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            const double k2 = g.wavenumber(i2);
            out.at(i1, i2) *= symbol(k1, k2);
        }
    }
    enforce_hermitian(out);
    return out;
}

}  // namespace

void require_mean_zero(const SpectralField& f, const char* what) {
    const double norm = coefficient_norm(f);
    if (std::abs(f.mean()) > 1e-13 * norm) {
        throw MeanNotZeroError(std::string(what) + ": input field has nonzero mean");
    }
}

SpectralField apply_fractional_laplacian(const SpectralField& f, double a) {
    if (!(a >= 0.0)) throw std::invalid_argument("fractional Laplacian order must be >= 0");
    if (a == 0.0) return apply_radial(f, [](double) { return 1.0; }, 0.0);
    if (a == 1.0) return apply_radial(f, [](double k) { return k; }, 0.0);
    if (a == 2.0) return apply_radial(f, [](double k) { return k * k; }, 0.0);
    return apply_radial(f, [a](double k) { return std::pow(k, a); }, 0.0);
}

SpectralField apply_inverse_lambda(const SpectralField& f) {
    require_mean_zero(f, "inverse Lambda");
    return apply_radial(f, [](double k) { return 1.0 / k; }, 0.0);
}

VectorField riesz_transform(const SpectralField& f) {
    require_mean_zero(f, "Riesz transform");
    auto component = [&](int j) {
        return apply_vector_symbol(f, [j](double k1, double k2) {
            if (k1 == 0.0 && k2 == 0.0) return Complex(0.0);
            const double kk = std::sqrt(k1 * k1 + k2 * k2);
            return Complex(0.0, (j == 0 ? k1 : k2) / kk);
        });
    };
    return VectorField(component(0), component(1));
}

VectorField gradient(const SpectralField& f) {
    auto component = [&](int j) {
        return apply_vector_symbol(f, [j](double k1, double k2) { return Complex(0.0, j == 0 ? k1 : k2); });
    };
    return VectorField(component(0), component(1));
}

SpectralField divergence(const VectorField& v) {
    const Grid& g = v.grid();
    const int n = g.n();
    SpectralField out(g);
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            const double k2 = g.wavenumber(i2);
            out.at(i1, i2) = Complex(0.0, 1.0) * (k1 * v.c1.at(i1, i2) + k2 * v.c2.at(i1, i2));
        }
    }
    enforce_hermitian(out);
    return out;
}

SpectralField curl(const VectorField& v) {
    const Grid& g = v.grid();
    const int n = g.n();
    SpectralField out(g);
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            const double k2 = g.wavenumber(i2);
            out.at(i1, i2) = Complex(0.0, 1.0) * (k1 * v.c2.at(i1, i2) - k2 * v.c1.at(i1, i2));
        }
    }
    enforce_hermitian(out);
    return out;
}

VectorField leray_project(const VectorField& v) {
    const Grid& g = v.grid();
    const int n = g.n();
    VectorField out = v;
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            if (i1 == 0 && i2 == 0) continue;
            const double k2 = g.wavenumber(i2);
            const double kk = k1 * k1 + k2 * k2;
            const Complex kv = (k1 * v.c1.at(i1, i2) + k2 * v.c2.at(i1, i2)) / kk;
            out.c1.at(i1, i2) -= k1 * kv;
            out.c2.at(i1, i2) -= k2 * kv;
        }
    }
    // On the Nyquist rows the stored k and the wavevector of the conjugate
    // partner disagree, so no real projection is divergence-free for both.
    zero_nyquist(out.c1);
    zero_nyquist(out.c2);
    return out;
}

SpectralField heat_semigroup(const SpectralField& f, double t, double a) {
    if (!(t >= 0.0)) throw std::invalid_argument("heat semigroup time must be >= 0");
    if (!(a > 0.0)) throw std::invalid_argument("heat semigroup order must be > 0");
    if (t == 0.0) return f;
    if (a == 1.0) return apply_radial(f, [t](double k) { return std::exp(-t * k); }, 1.0);
    return apply_radial(f, [t, a](double k) { return std::exp(-t * std::pow(k, a)); }, 1.0);
}

SpectralField gevrey_weight(const SpectralField& f, double tau) {
    const Grid& g = f.grid();
    const double worst = std::abs(tau) * 2.0 * g.dk() * (g.n() / 2);
    if (worst > kGevreyExponentLimit) {
        throw OverflowError("Gevrey weight exponent " + std::to_string(worst) + " exceeds 700");
    }
    SpectralField out = f;
    const int n = g.n();
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = std::abs(g.wavenumber(i1));
        for (int i2 = 0; i2 < n; ++i2) {
            const double k2 = std::abs(g.wavenumber(i2));
            out.at(i1, i2) *= std::exp(tau * (k1 + k2));
        }
    }
    return out;
}

double max_divergence(const VectorField& v) {
    const Grid& g = v.grid();
    const int n = g.n();
    double m = 0.0;
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            if (i1 == 0 && i2 == 0) continue;
            const double k2 = g.wavenumber(i2);
            m = std::max(m, std::abs(k1 * v.c1.at(i1, i2) + k2 * v.c2.at(i1, i2)));
        }
    }
    return m;
}

}  // namespace eclab
