#pragma once

#include <vector>

namespace eclab {

/// Ordinary least squares y = slope * x + intercept.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Root-mean-square residual.
    double residual = 0.0;
};

/// Throws std::invalid_argument for fewer than two points, mismatched sizes
/// or a degenerate abscissa.
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

/// Least-squares c in y = c * x (line through the origin).
double fit_proportional(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace eclab
