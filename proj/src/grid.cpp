#include "eclab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eclab {

Grid::Grid(int n, double box_length) : n_(n), length_(box_length) {
    if (n < 8 || n % 2 != 0) {
        throw std::invalid_argument("grid size must be even and >= 8, got " + std::to_string(n));
    }
    if (!(box_length > 0.0) || !std::isfinite(box_length)) {
        throw std::invalid_argument("box length must be positive and finite");
    }
    dk_ = 2.0 * std::numbers::pi / length_;
}

double Grid::max_wavenumber() const {
    return dk_ * std::sqrt(2.0) * (n_ / 2);
}

Grid make_grid(int n, double box_length) { return Grid(n, box_length); }

}  // namespace eclab
