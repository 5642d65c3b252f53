#include "eclab/products.hpp"

#include <cstdlib>
#include <stdexcept>

#include "eclab/fft.hpp"

namespace eclab {

void apply_two_thirds_mask(SpectralField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    const int cutoff = two_thirds_cutoff(n);
    for (int i1 = 0; i1 < n; ++i1) {
        const bool drop1 = std::abs(g.mode(i1)) > cutoff;
        for (int i2 = 0; i2 < n; ++i2) {
            if (drop1 || std::abs(g.mode(i2)) > cutoff) f.at(i1, i2) = 0.0;
        }
    }
}

SpectralField pad_to(const SpectralField& f, int n_fine) {
    const Grid& g = f.grid();
    if (n_fine < g.n()) throw std::invalid_argument("pad_to: target grid is coarser");
    const Grid fine(n_fine, g.length());
    SpectralField out(fine);
    const int half = g.n() / 2;
    for (int m1 = -half + 1; m1 < half; ++m1) {
        for (int m2 = -half + 1; m2 < half; ++m2) {
            out.coeff(m1, m2) = f.coeff(m1, m2);
        }
    }
    return out;
}

SpectralField truncate_to(const SpectralField& f, const Grid& target) {
    if (target.length() != f.grid().length()) throw std::invalid_argument("truncate_to: box length mismatch");
    if (target.n() > f.grid().n()) throw std::invalid_argument("truncate_to: target grid is finer");
    SpectralField out(target);
    const int half = target.n() / 2;
    for (int m1 = -half + 1; m1 < half; ++m1) {
        for (int m2 = -half + 1; m2 < half; ++m2) {
            out.coeff(m1, m2) = f.coeff(m1, m2);
        }
    }
    return out;
}

void project_to_band(SpectralField& f, DealiasMode mode) {
    if (mode == DealiasMode::TwoThirds) {
        apply_two_thirds_mask(f);
    } else {
        zero_nyquist(f);
    }
}

PhysicalField to_product_space(const SpectralField& f, DealiasMode mode) {
    if (mode == DealiasMode::TwoThirds) return inverse_transform(f);
    return inverse_transform(pad_to(f, 2 * f.grid().n()));
}

PhysicalField multiply(const PhysicalField& a, const PhysicalField& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("multiply: grid mismatch");
    PhysicalField out(a.grid());
    auto va = a.values();
    auto vb = b.values();
    auto vo = out.values();
    for (std::size_t i = 0; i < vo.size(); ++i) vo[i] = va[i] * vb[i];
    return out;
}

SpectralField from_product_space(const PhysicalField& product, const Grid& base, DealiasMode mode) {
    SpectralField spectral = forward_transform(product);
    if (mode == DealiasMode::TwoThirds) {
        apply_two_thirds_mask(spectral);
        return spectral;
    }
    return truncate_to(spectral, base);
}

SpectralField dealiased_product(const SpectralField& a, const SpectralField& b, DealiasMode mode) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("dealiased_product: grid mismatch");
    return from_product_space(multiply(to_product_space(a, mode), to_product_space(b, mode)), a.grid(), mode);
}

SpectralField padded_product(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("padded_product: grid mismatch");
    const int fine = 2 * a.grid().n();
    return forward_transform(multiply(inverse_transform(pad_to(a, fine)), inverse_transform(pad_to(b, fine))));
}

}  // namespace eclab
