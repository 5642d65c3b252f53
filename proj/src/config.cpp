#include "eclab/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace eclab {

using nlohmann::json;

ConfigError::ConfigError(const std::string& path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(path) {}

namespace {

// Walks one JSON object, checking types and remembering which keys were
// consumed so that leftovers can be reported.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ConfigError(path_, "expected an object");
    }

    std::string at(const std::string& key) const { return path_ + "." + key; }

    const json* find(const std::string& key) {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    void number(const std::string& key, double& out) {
        if (const json* v = find(key)) {
            if (!v->is_number()) throw ConfigError(at(key), "expected a number");
            out = v->get<double>();
        }
    }

    void integer(const std::string& key, int& out) {
        if (const json* v = find(key)) {
            if (!v->is_number_integer()) throw ConfigError(at(key), "expected an integer");
            out = v->get<int>();
        }
    }

    void unsigned64(const std::string& key, std::uint64_t& out) {
        if (const json* v = find(key)) {
            if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
                throw ConfigError(at(key), "expected a non-negative integer");
            }
            out = v->get<std::uint64_t>();
        }
    }

    void boolean(const std::string& key, bool& out) {
        if (const json* v = find(key)) {
            if (!v->is_boolean()) throw ConfigError(at(key), "expected true or false");
            out = v->get<bool>();
        }
    }

    void string(const std::string& key, std::string& out) {
        if (const json* v = find(key)) {
            if (!v->is_string()) throw ConfigError(at(key), "expected a string");
            out = v->get<std::string>();
        }
    }

    template <class T>
    void list(const std::string& key, std::vector<T>& out) {
        if (const json* v = find(key)) {
            if (!v->is_array()) throw ConfigError(at(key), "expected an array");
            out.clear();
            for (std::size_t i = 0; i < v->size(); ++i) {
                const json& e = (*v)[i];
                const std::string where = at(key) + "[" + std::to_string(i) + "]";
                if constexpr (std::is_same_v<T, int>) {
                    if (!e.is_number_integer()) throw ConfigError(where, "expected an integer");
                } else if constexpr (std::is_same_v<T, double>) {
                    if (!e.is_number()) throw ConfigError(where, "expected a number");
                } else {
                    if (!e.is_string()) throw ConfigError(where, "expected a string");
                }
                out.push_back(e.get<T>());
            }
        }
    }

    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!seen_.count(it.key())) throw ConfigError(at(it.key()), "unknown key");
        }
    }

private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& path, const std::string& message) {
    if (!ok) throw ConfigError(path, message);
}

void read_initial_data(const json& doc, InitialData& ic) {
    ObjectReader r(doc, "$.ic");
    r.string("kind", ic.kind);
    r.number("amplitude", ic.amplitude);
    r.unsigned64("seed", ic.seed);
    r.number("spectral_width", ic.spectral_width);
    r.string("path", ic.path);
    if (const json* modes = r.find("modes")) {
        require(modes->is_array(), "$.ic.modes", "expected an array");
        ic.modes.clear();
        for (std::size_t i = 0; i < modes->size(); ++i) {
            ObjectReader m((*modes)[i], "$.ic.modes[" + std::to_string(i) + "]");
            Mode mode;
            m.integer("m1", mode.m1);
            m.integer("m2", mode.m2);
            m.number("amplitude", mode.amplitude);
            m.number("phase", mode.phase);
            m.finish();
            ic.modes.push_back(mode);
        }
    }
    r.finish();
    static const std::set<std::string> kinds = {"single_mode", "two_mode", "modes", "random_smooth", "file"};
    require(kinds.count(ic.kind) == 1, "$.ic.kind",
            "unknown kind '" + ic.kind + "' (single_mode, two_mode, modes, random_smooth, file)");
    require(std::isfinite(ic.amplitude), "$.ic.amplitude", "must be finite");
    require(ic.spectral_width > 0.0, "$.ic.spectral_width", "must be > 0");
    require(ic.kind != "modes" || !ic.modes.empty(), "$.ic.modes", "kind 'modes' needs at least one mode");
    require(ic.kind != "file" || !ic.path.empty(), "$.ic.path", "kind 'file' needs a path");
}

void validate_run(const RunConfig& run) {
    require(run.n >= 8 && run.n % 2 == 0, "$.n", "must be even and >= 8");
    require(run.box_length > 0.0 && std::isfinite(run.box_length), "$.L", "must be positive");
    require(run.alpha > 0.0 && run.alpha <= 2.0, "$.alpha", "must lie in (0, 2]");
    require(run.viscosity >= 0.0, "$.epsilon", "must be >= 0");
    require(run.mollifier >= 0.0, "$.mollifier", "must be >= 0");
    require(run.dt > 0.0, "$.dt", "must be > 0");
    require(run.final_time > 0.0, "$.T", "must be > 0");
    require(run.cfl_safety > 0.0, "$.cfl_safety", "must be > 0");
    require(run.output_every >= 1, "$.output_every", "must be >= 1");
    try {
        run.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("$.T", e.what());
    }
}

std::string dealias_name(DealiasMode m) { return m == DealiasMode::TwoThirds ? "two_thirds" : "strict_padded"; }
std::string integrator_name(Integrator i) { return i == Integrator::IFRK4 ? "ifrk4" : "etdrk4"; }

}  // namespace

const std::vector<std::string>& known_diagnostics() {
    static const std::vector<std::string> names = {"energy_budget", "lp_monotonicity", "linf_decay", "exp_decay",
                                                   "hs_growth",     "cordoba",         "weighted_besov", "sobolev"};
    return names;
}

const std::vector<std::string>& default_diagnostics() {
    static const std::vector<std::string> names = {"energy_budget", "lp_monotonicity", "linf_decay", "cordoba",
                                                   "sobolev"};
    return names;
}

LabConfig parse_config_json(const json& doc) {
    LabConfig cfg;
    cfg.diagnostics = default_diagnostics();
    ObjectReader r(doc, "$");
    RunConfig& run = cfg.run;
    r.integer("n", run.n);
    r.number("L", run.box_length);
    r.number("alpha", run.alpha);
    r.number("epsilon", run.viscosity);
    r.number("mollifier", run.mollifier);
    r.number("dt", run.dt);
    r.boolean("adaptive", run.adaptive);
    r.number("cfl_safety", run.cfl_safety);
    r.number("T", run.final_time);
    r.integer("output_every", run.output_every);
    r.boolean("nonlinear", run.nonlinear);
    std::string dealias = dealias_name(run.dealias);
    r.string("dealias", dealias);
    require(dealias == "two_thirds" || dealias == "strict_padded", r.at("dealias"),
            "expected 'two_thirds' or 'strict_padded'");
    run.dealias = dealias == "two_thirds" ? DealiasMode::TwoThirds : DealiasMode::StrictPadded;
    std::string integrator = integrator_name(run.integrator);
    r.string("integrator", integrator);
    require(integrator == "ifrk4" || integrator == "etdrk4", r.at("integrator"), "expected 'ifrk4' or 'etdrk4'");
    run.integrator = integrator == "ifrk4" ? Integrator::IFRK4 : Integrator::ETDRK4;
    if (const json* ic = r.find("ic")) read_initial_data(*ic, run.ic);

    r.list("diagnostics", cfg.diagnostics);
    std::set<std::string> unique;
    for (std::size_t i = 0; i < cfg.diagnostics.size(); ++i) {
        const std::string& d = cfg.diagnostics[i];
        const std::string where = "$.diagnostics[" + std::to_string(i) + "]";
        require(std::find(known_diagnostics().begin(), known_diagnostics().end(), d) != known_diagnostics().end(),
                where, "unknown diagnostic '" + d + "'");
        require(unique.insert(d).second, where, "duplicate diagnostic '" + d + "'");
    }
    r.number("hs_index", cfg.hs_index);
    require(cfg.hs_index > 0.0, r.at("hs_index"), "must be > 0");
    if (const json* w = r.find("decay_window")) {
        require(w->is_array() && w->size() == 2 && (*w)[0].is_number() && (*w)[1].is_number(), r.at("decay_window"),
                "expected [t_from, t_to]");
        cfg.decay_from = (*w)[0].get<double>();
        cfg.decay_to = (*w)[1].get<double>();
        require(cfg.decay_from >= 0.0 && cfg.decay_to > cfg.decay_from, r.at("decay_window"),
                "need 0 <= t_from < t_to");
    }

    if (const json* p = r.find("picard")) {
        ObjectReader pr(*p, "$.picard");
        PicardSettings& ps = cfg.picard;
        pr.number("p", ps.p);
        pr.number("tol", ps.tol);
        pr.integer("max_iter", ps.max_iter);
        pr.integer("intervals", ps.intervals);
        pr.list("scales", ps.scales);
        pr.number("fit_max_scale", ps.fit_max_scale);
        pr.number("gevrey_a", ps.gevrey_a);
        pr.finish();
        require(ps.p >= 1.0 && std::isfinite(ps.p), "$.picard.p", "must lie in [1, inf)");
        require(ps.tol > 0.0, "$.picard.tol", "must be > 0");
        require(ps.max_iter >= 1, "$.picard.max_iter", "must be >= 1");
        require(ps.intervals >= 1, "$.picard.intervals", "must be >= 1");
        require(ps.gevrey_a > 0.0 && ps.gevrey_a <= 0.25, "$.picard.gevrey_a", "must lie in (0, 1/4]");
        require(std::is_sorted(ps.scales.begin(), ps.scales.end()), "$.picard.scales", "must be sorted");
        for (double s : ps.scales) require(s >= 0.0, "$.picard.scales", "entries must be >= 0");
    }
    if (const json* s = r.find("sweep")) {
        ObjectReader sr(*s, "$.sweep");
        SweepSettings& ss = cfg.sweep;
        sr.list("scales", ss.scales);
        sr.list("alpha", ss.alpha);
        sr.list("epsilon", ss.epsilon);
        sr.list("n", ss.n);
        sr.boolean("picard", ss.picard);
        sr.finish();
    }
    if (const json* t = r.find("tolerances")) {
        ObjectReader tr(*t, "$.tolerances");
        tr.number("energy", cfg.tolerances.energy);
        tr.number("monotonicity", cfg.tolerances.monotonicity);
        tr.number("cordoba", cfg.tolerances.cordoba);
        tr.number("h32_growth_flag", cfg.tolerances.h32_growth_flag);
        tr.finish();
    }
    r.finish();
    validate_run(run);
    return cfg;
}

LabConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("$", std::string("malformed JSON: ") + e.what());
    }
    return parse_config_json(doc);
}

LabConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("$", "cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(std::string_view(ss.str()));
}

json to_json(const LabConfig& cfg) {
    const RunConfig& run = cfg.run;
    json ic = {{"kind", run.ic.kind},
               {"amplitude", run.ic.amplitude},
               {"seed", run.ic.seed},
               {"spectral_width", run.ic.spectral_width},
               {"path", run.ic.path},
               {"modes", json::array()}};
    for (const Mode& m : run.ic.modes) {
        ic["modes"].push_back({{"m1", m.m1}, {"m2", m.m2}, {"amplitude", m.amplitude}, {"phase", m.phase}});
    }
    json out = {{"n", run.n},
                {"L", run.box_length},
                {"alpha", run.alpha},
                {"epsilon", run.viscosity},
                {"mollifier", run.mollifier},
                {"dt", run.dt},
                {"adaptive", run.adaptive},
                {"cfl_safety", run.cfl_safety},
                {"T", run.final_time},
                {"output_every", run.output_every},
                {"nonlinear", run.nonlinear},
                {"dealias", dealias_name(run.dealias)},
                {"integrator", integrator_name(run.integrator)},
                {"ic", ic},
                {"diagnostics", cfg.diagnostics},
                {"hs_index", cfg.hs_index},
                {"picard",
                 {{"p", cfg.picard.p},
                  {"tol", cfg.picard.tol},
                  {"max_iter", cfg.picard.max_iter},
                  {"intervals", cfg.picard.intervals},
                  {"scales", cfg.picard.scales},
                  {"fit_max_scale", cfg.picard.fit_max_scale},
                  {"gevrey_a", cfg.picard.gevrey_a}}},
                {"sweep",
                 {{"scales", cfg.sweep.scales},
                  {"alpha", cfg.sweep.alpha},
                  {"epsilon", cfg.sweep.epsilon},
                  {"n", cfg.sweep.n},
                  {"picard", cfg.sweep.picard}}},
                {"tolerances",
                 {{"energy", cfg.tolerances.energy},
                  {"monotonicity", cfg.tolerances.monotonicity},
                  {"cordoba", cfg.tolerances.cordoba},
                  {"h32_growth_flag", cfg.tolerances.h32_growth_flag}}}};
    if (cfg.decay_from >= 0.0) out["decay_window"] = {cfg.decay_from, cfg.decay_to};
    return out;
}

std::string canonical_config(const LabConfig& cfg) { return to_json(cfg).dump(2); }

std::string config_hash(const LabConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_config(cfg)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace eclab
