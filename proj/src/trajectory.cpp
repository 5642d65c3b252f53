#include "eclab/trajectory.hpp"

#include <stdexcept>

namespace eclab {

void Trajectory::push(double t, SpectralField snapshot) {
    if (!(snapshot.grid() == grid_)) throw std::invalid_argument("trajectory: snapshot grid mismatch");
    if (!times_.empty() && !(t > times_.back())) throw std::invalid_argument("trajectory: times must increase");
    times_.push_back(t);
    snapshots_.push_back(std::move(snapshot));
}

double trapezoid(const std::vector<double>& times, const std::vector<double>& values) {
    double sum = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        sum += 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
    }
    return sum;
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& times, const std::vector<double>& values) {
    std::vector<double> out(times.size(), 0.0);
    for (std::size_t i = 1; i < times.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
    }
    return out;
}

}  // namespace eclab
