#include "eclab/series_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "eclab/diagnostics.hpp"
#include "eclab/mild_solver.hpp"

namespace eclab {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string to_csv(const SeriesTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const std::string& path, const SeriesTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_csv(table);
}

SeriesTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    SeriesTable table;
    std::string line;
    if (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            if (cell == "nan") {
                row.push_back(std::nan(""));
            } else if (cell == "inf" || cell == "-inf") {
                row.push_back(cell[0] == '-' ? -kInfinity : kInfinity);
            } else {
                double v = 0.0;
                const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
                if (res.ec != std::errc()) throw std::runtime_error("bad number '" + cell + "' in " + path);
                row.push_back(v);
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

SeriesTable run_series(const Trajectory& traj, double alpha, double viscosity) {
    SeriesTable table;
    table.columns = {"t", "l2", "lp4", "linf", "h_half", "h1", "h2", "besov_b1_21", "energy_residual", "radius"};
    if (traj.empty()) return table;
    const DyadicSpec spec = make_dyadic_spec(traj.grid());
    const EnergyBudget budget = energy_budget(traj, alpha, viscosity);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const SpectralField& f = traj[i];
        const auto radius = analyticity_radius(f);
        table.rows.push_back({traj.times()[i], l2_norm(f), lp_norm_refined(f, 4.0), linf_norm(f), sobolev_norm(f, 0.5),
                              sobolev_norm(f, 1.0), sobolev_norm(f, 2.0), besov_norm(f, 1.0, 2.0, 1.0, spec),
                              i == 0 ? 0.0 : budget.residual.values[i - 1], radius ? *radius : std::nan("")});
    }
    return table;
}

}  // namespace eclab
