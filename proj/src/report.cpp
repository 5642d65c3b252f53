#include "eclab/report.hpp"

#include <algorithm>
#include <cmath>

#include "eclab/diagnostics.hpp"
#include "eclab/series_io.hpp"

#ifndef ECLAB_VERSION
#define ECLAB_VERSION "0.0.0"
#endif

namespace eclab {

using nlohmann::json;

namespace {

// Finite doubles as numbers, everything else as the CSV spelling, so the
// JSON stays valid and byte-stable.
json number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

bool all_zero(const Trajectory& traj) {
    return std::all_of(traj.snapshots().begin(), traj.snapshots().end(),
                       [](const SpectralField& f) { return max_abs_coeff(f) == 0.0; });
}

VerdictEntry check_energy(const Trajectory& traj, const LabConfig& cfg) {
    VerdictEntry e{"energy_budget", Verdict::Pass, {}, {{"max_relative", cfg.tolerances.energy}}, ""};
    const EnergyBudget b = energy_budget(traj, cfg.run.alpha, cfg.run.viscosity);
    e.params["max_relative"] = b.max_relative;
    e.status = b.max_relative < cfg.tolerances.energy ? Verdict::Pass : Verdict::Fail;
    if (e.status == Verdict::Fail && cfg.run.output_every > 10) {
        e.status = Verdict::Flag;
        e.note = "snapshot cadence above 10 steps; residual dominated by quadrature";
    }
    return e;
}

VerdictEntry check_monotonicity(const Trajectory& traj, const LabConfig& cfg) {
    VerdictEntry e{"lp_monotonicity", Verdict::Pass, {}, {{"relative", cfg.tolerances.monotonicity}}, ""};
    const std::pair<const char*, double> norms[] = {{"violations_l2", 2.0}, {"violations_l4", 4.0}, {"violations_linf", kInfinity}};
    for (const auto& [key, p] : norms) {
        const auto bad = lp_monotonicity(traj, p, cfg.tolerances.monotonicity);
        e.params[key] = static_cast<double>(bad.size());
        if (!bad.empty()) e.status = Verdict::Fail;
    }
    return e;
}

VerdictEntry check_linf_decay(const Trajectory& traj, const LabConfig& cfg) {
    VerdictEntry e{"linf_decay", Verdict::Skip, {}, {{"h32_growth_flag", cfg.tolerances.h32_growth_flag}}, ""};
    if (traj.size() < 2 || linf_norm(traj[0]) == 0.0) {
        e.note = "zero initial data";
        return e;
    }
    const FitResult fit = linf_decay_fit(traj);
    e.params = fit.params;
    e.params["residual"] = fit.residual;
    const DiagnosticSeries h = sobolev_series(traj, 1.5);
    const double base = std::hypot(h.values.front(), l2_norm(traj[0]));
    double peak = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) peak = std::max(peak, std::hypot(h.values[i], l2_norm(traj[i])));
    e.params["h32_growth"] = peak / base;
    if (peak / base > cfg.tolerances.h32_growth_flag) {
        e.status = Verdict::Flag;
        e.note = "H^{3/2} norm grew past the flag factor; the envelope presumes bounded H^s";
        return e;
    }
    e.status = fit.pass ? Verdict::Pass : Verdict::Fail;
    return e;
}

VerdictEntry check_exp_decay(const Trajectory& traj, const LabConfig& cfg) {
    VerdictEntry e{"exp_decay", Verdict::Skip, {}, {{"max_rate", -1.0}}, ""};
    if (all_zero(traj)) {
        e.note = "zero data";
        return e;
    }
    const double horizon = traj.final_time();
    const double from = cfg.decay_from >= 0.0 ? cfg.decay_from : kTransientFraction * horizon;
    const double to = cfg.decay_to >= 0.0 ? cfg.decay_to : horizon;
    DiagnosticSeries half = sobolev_series(traj, 0.5);
    for (double& v : half.values) v *= v;
    DiagnosticSeries l2;
    l2.times = traj.times();
    for (const SpectralField& f : traj.snapshots()) l2.values.push_back(l2_norm(f));
    try {
        const FitResult a = exp_decay_rate(half, from, to);
        const FitResult b = exp_decay_rate(l2, from, to);
        e.params["rate_h_half_squared"] = a.params.at("rate");
        e.params["rate_l2"] = b.params.at("rate");
        e.params["window_from"] = a.window_start;
        e.params["window_to"] = a.window_end;
        e.status = a.params.at("rate") <= -1.0 && b.params.at("rate") <= -1.0 ? Verdict::Pass : Verdict::Fail;
    } catch (const std::invalid_argument& err) {
        e.status = Verdict::Fail;
        e.note = err.what();
    }
    return e;
}

VerdictEntry check_hs_growth(const Trajectory& traj, const LabConfig& cfg) {
    VerdictEntry e{"hs_growth", Verdict::Skip, {}, {}, ""};
    if (!(cfg.run.alpha > 1.0)) {
        e.note = "applies to alpha in (1, 2]";
        return e;
    }
    const FitResult fit = hs_growth_check(traj, cfg.hs_index, cfg.run.alpha);
    e.params = fit.params;
    e.params["s"] = cfg.hs_index;
    e.status = fit.pass ? Verdict::Pass : Verdict::Fail;
    return e;
}

VerdictEntry check_cordoba(const Trajectory& traj, const LabConfig& cfg) {
    VerdictEntry e{"cordoba", Verdict::Pass, {}, {{"relative", cfg.tolerances.cordoba}}, ""};
    double worst = kInfinity;
    for (std::size_t i : {std::size_t{0}, traj.size() - 1}) {
        for (double p : {2.0, 3.0, 4.0}) {
            const CordobaResult c = cordoba_positivity(traj[i], p);
            if (c.scale > 0.0) worst = std::min(worst, c.integral / c.scale);
            if (!c.pass(cfg.tolerances.cordoba)) e.status = Verdict::Fail;
        }
    }
    e.params["min_scaled_integral"] = std::isfinite(worst) ? worst : 0.0;
    return e;
}

VerdictEntry check_weighted_besov(const Trajectory& traj, const LabConfig&) {
    VerdictEntry e{"weighted_besov", Verdict::Pass, {}, {}, ""};
    Trajectory positive(traj.grid());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (traj.times()[i] > 0.0) positive.push(traj.times()[i], traj[i]);
    }
    const double sup = weighted_besov_sup(positive, 0.5, 1.5, make_dyadic_spec(traj.grid()));
    e.params["sup"] = sup;
    e.params["weight_exponent"] = 0.5;
    e.params["beta"] = 1.5;
    e.status = std::isfinite(sup) ? Verdict::Pass : Verdict::Fail;
    return e;
}

VerdictEntry check_sobolev(const Trajectory& traj, const LabConfig&) {
    VerdictEntry e{"sobolev", Verdict::Pass, {}, {}, ""};
    const DiagnosticSeries h1 = sobolev_series(traj, 1.0);
    const DiagnosticSeries h2 = sobolev_series(traj, 2.0);
    const double sup_grad = *std::max_element(h1.values.begin(), h1.values.end());
    const double int_lap = traj.size() > 1 ? trapezoid(traj.times(), h2.values) : 0.0;
    e.params["sup_grad_l2"] = sup_grad;
    e.params["int_laplacian_l2"] = int_lap;
    e.status = std::isfinite(sup_grad) && std::isfinite(int_lap) ? Verdict::Pass : Verdict::Fail;
    return e;
}

}  // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Flag: return "flag";
        case Verdict::Skip: return "skip";
    }
    return "unknown";
}

Verdict VerdictReport::overall() const {
    for (const VerdictEntry& e : entries) {
        if (e.status == Verdict::Fail) return Verdict::Fail;
    }
    return Verdict::Pass;
}

const char* artifact_version() { return ECLAB_VERSION; }

json to_json(const VerdictReport& report) {
    json entries = json::array();
    for (const VerdictEntry& e : report.entries) {
        json params = json::object(), tol = json::object();
        for (const auto& [k, v] : e.params) params[k] = number(v);
        for (const auto& [k, v] : e.tolerances) tol[k] = number(v);
        json entry = {{"name", e.name}, {"status", verdict_name(e.status)}, {"params", params}, {"tolerances", tol}};
        if (!e.note.empty()) entry["note"] = e.note;
        entries.push_back(entry);
    }
    return {{"version", report.version},
            {"config_hash", report.config_hash},
            {"command", report.command},
            {"overall", verdict_name(report.overall())},
            {"entries", entries}};
}

std::string report_text(const VerdictReport& report) { return to_json(report).dump(2) + "\n"; }

VerdictReport evaluate_run(const Trajectory& traj, const LabConfig& cfg) {
    VerdictReport report;
    report.version = artifact_version();
    report.config_hash = config_hash(cfg);
    report.command = "run";
    if (traj.empty()) throw std::invalid_argument("evaluate_run: empty trajectory");
    for (const std::string& name : cfg.diagnostics) {
        if (name == "energy_budget") report.entries.push_back(check_energy(traj, cfg));
        else if (name == "lp_monotonicity") report.entries.push_back(check_monotonicity(traj, cfg));
        else if (name == "linf_decay") report.entries.push_back(check_linf_decay(traj, cfg));
        else if (name == "exp_decay") report.entries.push_back(check_exp_decay(traj, cfg));
        else if (name == "hs_growth") report.entries.push_back(check_hs_growth(traj, cfg));
        else if (name == "cordoba") report.entries.push_back(check_cordoba(traj, cfg));
        else if (name == "weighted_besov") report.entries.push_back(check_weighted_besov(traj, cfg));
        else if (name == "sobolev") report.entries.push_back(check_sobolev(traj, cfg));
        else throw std::invalid_argument("unknown diagnostic " + name);
    }
    return report;
}

}  // namespace eclab
