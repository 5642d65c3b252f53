#include "eclab/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eclab {

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw std::invalid_argument("grid mismatch");
}

}  // namespace

SpectralField::SpectralField(const Grid& grid) : grid_(grid), coeffs_(grid.size()) {}

SpectralField::SpectralField(const Grid& grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.size()) throw std::invalid_argument("coefficient count does not match grid");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
    for (auto& c : coeffs_) c *= scale;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

PhysicalField::PhysicalField(const Grid& grid) : grid_(grid), values_(grid.size()) {}

PhysicalField::PhysicalField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw std::invalid_argument("value count does not match grid");
}

VectorField::VectorField(SpectralField a, SpectralField b) : c1(std::move(a)), c2(std::move(b)) {
    require_same_grid(c1.grid(), c2.grid());
}

double coefficient_norm(const SpectralField& f) {
    double sum = 0.0;
    for (const auto& c : f.coeffs()) sum += std::norm(c);
    return std::sqrt(sum);
}

double max_abs_coeff(const SpectralField& f) {
    double m = 0.0;
    for (const auto& c : f.coeffs()) m = std::max(m, std::abs(c));
    return m;
}

double max_abs_coeff(const VectorField& v) { return std::max(max_abs_coeff(v.c1), max_abs_coeff(v.c2)); }

double l2_norm(const SpectralField& f) { return f.grid().length() * coefficient_norm(f); }

double l2_norm(const VectorField& v) {
    const double a = l2_norm(v.c1);
    const double b = l2_norm(v.c2);
    return std::sqrt(a * a + b * b);
}

double sobolev_norm(const SpectralField& f, double s) {
    const Grid& g = f.grid();
    const int n = g.n();
    double sum = 0.0;
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            if (i1 == 0 && i2 == 0) continue;
            const double k2 = g.wavenumber(i2);
            const double k2sum = k1 * k1 + k2 * k2;
            sum += std::pow(k2sum, s) * std::norm(f.at(i1, i2));
        }
    }
    return g.length() * std::sqrt(sum);
}

double hermitian_defect(const SpectralField& f) {
    const int n = f.grid().n();
    double defect = 0.0;
    for (int i1 = 0; i1 < n; ++i1) {
        const int j1 = (n - i1) % n;
        for (int i2 = 0; i2 < n; ++i2) {
            const int j2 = (n - i2) % n;
            defect = std::max(defect, std::abs(f.at(i1, i2) - std::conj(f.at(j1, j2))));
        }
    }
    return defect;
}

void enforce_hermitian(SpectralField& f) {
    const int n = f.grid().n();
    for (int i1 = 0; i1 < n; ++i1) {
        const int j1 = (n - i1) % n;
        for (int i2 = 0; i2 < n; ++i2) {
            const int j2 = (n - i2) % n;
            const std::size_t a = f.grid().flat(i1, i2);
            const std::size_t b = f.grid().flat(j1, j2);
            if (b < a) continue;
            auto coeffs = f.coeffs();
            const Complex avg = 0.5 * (coeffs[a] + std::conj(coeffs[b]));
            coeffs[a] = avg;
            coeffs[b] = std::conj(avg);
        }
    }
}

void zero_nyquist(SpectralField& f) {
    const int n = f.grid().n();
    const int ny = n / 2;
    for (int i = 0; i < n; ++i) {
        f.at(ny, i) = 0.0;
        f.at(i, ny) = 0.0;
    }
}

bool all_finite(const SpectralField& f) {
    return std::all_of(f.coeffs().begin(), f.coeffs().end(),
                       [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

}  // namespace eclab
