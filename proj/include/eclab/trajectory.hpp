#pragma once

#include <vector>

#include "eclab/field.hpp"

namespace eclab {

/// Spectral snapshots on a strictly increasing time grid.
class Trajectory {
public:
    explicit Trajectory(const Grid& grid) : grid_(grid) {}

    /// Throws std::invalid_argument on grid mismatch or non-increasing time.
    void push(double t, SpectralField snapshot);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return times_.size(); }
    bool empty() const { return times_.empty(); }
    const std::vector<double>& times() const { return times_; }
    const std::vector<SpectralField>& snapshots() const { return snapshots_; }
    const SpectralField& operator[](std::size_t i) const { return snapshots_[i]; }
    SpectralField& operator[](std::size_t i) { return snapshots_[i]; }
    double final_time() const { return times_.back(); }

private:
    Grid grid_;
    std::vector<double> times_;
    std::vector<SpectralField> snapshots_;
};

/// Trapezoid rule for samples on a (possibly nonuniform) increasing grid.
double trapezoid(const std::vector<double>& times, const std::vector<double>& values);

/// Running trapezoid integral, starting at 0.
std::vector<double> cumulative_trapezoid(const std::vector<double>& times, const std::vector<double>& values);

}  // namespace eclab
