#pragma once

#include <functional>

namespace eclab {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b] with global error control
/// |error| <= max(abs_tol, rel_tol * |value|).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                    double rel_tol, int max_intervals = 2000);

}  // namespace eclab
