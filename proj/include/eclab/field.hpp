#pragma once

#include <complex>
#include <span>
#include <vector>

#include "eclab/grid.hpp"

namespace eclab {

using Complex = std::complex<double>;

/// Fourier coefficients of a real scalar field.
///
/// Normalization: coeff(k) = n^-2 * sum_x f(x) exp(-i k.x), so cos(k.x) has
/// coefficient 1/2 at +k and -k and a constant c has coeff(0) = c.
class SpectralField {
public:
    explicit SpectralField(const Grid& grid);
    SpectralField(const Grid& grid, std::vector<Complex> coeffs);

    const Grid& grid() const { return grid_; }
    std::span<Complex> coeffs() { return coeffs_; }
    std::span<const Complex> coeffs() const { return coeffs_; }

    Complex& at(int i1, int i2) { return coeffs_[grid_.flat(i1, i2)]; }
    const Complex& at(int i1, int i2) const { return coeffs_[grid_.flat(i1, i2)]; }
    /// Access by signed mode numbers m in [-n/2, n/2).
    Complex& coeff(int m1, int m2) { return at(grid_.index(m1), grid_.index(m2)); }
    const Complex& coeff(int m1, int m2) const { return at(grid_.index(m1), grid_.index(m2)); }
    Complex mean() const { return coeffs_[0]; }

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double scale);

private:
    Grid grid_;
    std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Real point samples f(i1*dx, i2*dx).
class PhysicalField {
public:
    explicit PhysicalField(const Grid& grid);
    PhysicalField(const Grid& grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    double& at(int i1, int i2) { return values_[grid_.flat(i1, i2)]; }
    double at(int i1, int i2) const { return values_[grid_.flat(i1, i2)]; }

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Two spectral components on a shared grid.
struct VectorField {
    SpectralField c1;
    SpectralField c2;

    explicit VectorField(const Grid& grid) : c1(grid), c2(grid) {}
    VectorField(SpectralField a, SpectralField b);

    const Grid& grid() const { return c1.grid(); }
    SpectralField& operator[](int j) { return j == 0 ? c1 : c2; }
    const SpectralField& operator[](int j) const { return j == 0 ? c1 : c2; }
};

/// sqrt(sum |c_k|^2) over all stored coefficients (coefficient-space l2).
double coefficient_norm(const SpectralField& f);
double max_abs_coeff(const SpectralField& f);
double max_abs_coeff(const VectorField& v);

/// ||f||_{L^2} via Parseval: L * sqrt(sum |c_k|^2).
double l2_norm(const SpectralField& f);
/// ||Lambda^s f||_{L^2}; the k = 0 mode is excluded for every s.
double sobolev_norm(const SpectralField& f, double s);
double l2_norm(const VectorField& v);

/// Max over k of |c(k) - conj(c(-k))|, zero for a real field.
double hermitian_defect(const SpectralField& f);

/// Projects onto the real-field subspace: c(k) <- (c(k) + conj(c(-k))) / 2.
void enforce_hermitian(SpectralField& f);

/// Zeroes every coefficient with m1 = -n/2 or m2 = -n/2.
void zero_nyquist(SpectralField& f);

bool all_finite(const SpectralField& f);

}  // namespace eclab
