#pragma once

#include <string>
#include <vector>

#include "eclab/trajectory.hpp"

namespace eclab {

/// Shortest decimal that round-trips; "nan", "inf", "-inf" otherwise.
std::string format_double(double v);

struct SeriesTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Header row, then one line per row, comma separated, '\n' endings.
std::string to_csv(const SeriesTable& table);
void write_csv(const std::string& path, const SeriesTable& table);
SeriesTable read_csv(const std::string& path);

/// Per-snapshot run series: t, l2, lp4, linf, h_half, h1, h2, besov_b1_21,
/// energy_residual, radius. The residual of row i covers (t_{i-1}, t_i]
/// and is 0 in row 0; radius is nan where the estimator is undefined.
SeriesTable run_series(const Trajectory& traj, double alpha, double viscosity);

}  // namespace eclab
