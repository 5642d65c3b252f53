#pragma once

#include <cstddef>
#include <numbers>

namespace eclab {

/// Uniform periodic grid on the square torus [0, L)^2 with n points per side.
///
/// Wavevectors are k = (2*pi/L) * m with integer m in [-n/2, n/2). Storage
/// everywhere in the library uses FFT order: index i holds mode m = i for
/// i < n/2 and m = i - n otherwise, flattened as i1 * n + i2 with i1 the
/// x1 direction.
class Grid {
public:
    /// Throws std::invalid_argument for odd n, n < 8 or L <= 0.
    Grid(int n, double box_length = 2.0 * std::numbers::pi);

    int n() const { return n_; }
    double length() const { return length_; }
    double dx() const { return length_ / n_; }
    /// Smallest nonzero wavenumber 2*pi/L.
    double dk() const { return dk_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

    int mode(int index) const { return index < n_ / 2 ? index : index - n_; }
    /// Storage index of mode m, m in [-n/2, n/2).
    int index(int m) const { return m >= 0 ? m : m + n_; }
    std::size_t flat(int i1, int i2) const {
        return static_cast<std::size_t>(i1) * n_ + static_cast<std::size_t>(i2);
    }
    double wavenumber(int index) const { return dk_ * mode(index); }
    bool is_nyquist(int index) const { return index == n_ / 2; }

    /// Largest |k| on the grid, attained at the (-n/2, -n/2) corner.
    double max_wavenumber() const;

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.n_ == b.n_ && a.length_ == b.length_;
    }

private:
    int n_;
    double length_;
    double dk_;
};

Grid make_grid(int n, double box_length = 2.0 * std::numbers::pi);

}  // namespace eclab
