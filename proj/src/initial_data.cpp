#include <cmath>
#include <random>
#include <stdexcept>

#include "eclab/evolution.hpp"
#include "eclab/multipliers.hpp"
#include "eclab/snapshot_io.hpp"

namespace eclab {

namespace {

void add_cosine(SpectralField& f, const Mode& mode) {
    const int n = f.grid().n();
    const int half = n / 2;
    if (mode.m1 <= -half || mode.m1 >= half || mode.m2 <= -half || mode.m2 >= half) {
        throw std::invalid_argument("initial mode (" + std::to_string(mode.m1) + ", " + std::to_string(mode.m2) +
                                    ") not representable on an n = " + std::to_string(n) + " grid");
    }
    // a cos(m.x + phase) = (a/2) e^{i phase} e^{i m.x} + c.c.
    const Complex half_amp = 0.5 * mode.amplitude * std::polar(1.0, mode.phase);
    if (mode.m1 == 0 && mode.m2 == 0) {
        f.coeff(0, 0) += mode.amplitude * std::cos(mode.phase);
        return;
    }
    f.coeff(mode.m1, mode.m2) += half_amp;
    f.coeff(-mode.m1, -mode.m2) += std::conj(half_amp);
}

// 53-bit uniform in [0, 1) from the raw engine output, identical on every
// standard library.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

SpectralField random_smooth(const Grid& grid, std::uint64_t seed, double width) {
    std::mt19937_64 rng(seed);
    SpectralField f(grid);
    const int n = grid.n();
    for (int i1 = 0; i1 < n; ++i1) {
        for (int i2 = 0; i2 < n; ++i2) {
            const double u1 = unit_uniform(rng);
            const double u2 = unit_uniform(rng);
            if (grid.is_nyquist(i1) || grid.is_nyquist(i2)) continue;
            const double m1 = grid.mode(i1);
            const double m2 = grid.mode(i2);
            const double envelope = std::exp(-(m1 * m1 + m2 * m2) / (width * width));
            f.at(i1, i2) = std::polar(envelope * (0.5 + u1), 2.0 * std::numbers::pi * u2);
        }
    }
    enforce_hermitian(f);
    f.at(0, 0) = 0.0;
    const double norm = l2_norm(f);
    if (norm > 0.0) f *= 1.0 / norm;
    return f;
}

}  // namespace

SpectralField make_initial_data(const InitialData& ic, const Grid& grid) {
    SpectralField f(grid);
    if (ic.kind == "single_mode") {
        add_cosine(f, ic.modes.empty() ? Mode{} : ic.modes.front());
    } else if (ic.kind == "two_mode") {
        add_cosine(f, Mode{1, 0, 1.0, 0.0});
        add_cosine(f, Mode{1, 1, 1.0, 0.0});
    } else if (ic.kind == "modes") {
        for (const Mode& m : ic.modes) add_cosine(f, m);
    } else if (ic.kind == "random_smooth") {
        f = random_smooth(grid, ic.seed, ic.spectral_width);
    } else if (ic.kind == "file") {
        Snapshot snap = load_snapshot(ic.path);
        if (!(snap.field.grid() == grid)) throw std::invalid_argument("initial data file grid does not match config");
        f = std::move(snap.field);
    } else {
        throw std::invalid_argument("unknown initial data kind '" + ic.kind + "'");
    }
    f *= ic.amplitude;
    return f;
}

SpectralField prepare_initial_data(SpectralField rho0, const RunConfig& cfg) {
    rho0.at(0, 0) = 0.0;
    project_to_band(rho0, cfg.dealias);
    if (cfg.mollifier > 0.0) rho0 = mollify(rho0, cfg.mollifier);
    return rho0;
}

}  // namespace eclab
