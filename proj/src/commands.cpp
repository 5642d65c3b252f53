#include "eclab/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "eclab/diagnostics.hpp"
#include "eclab/multipliers.hpp"
#include "eclab/series_io.hpp"
#include "eclab/snapshot_io.hpp"

namespace eclab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string snapshot_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%06zu.pecf", index);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SpectralField configured_initial_data(const RunConfig& run) {
    const Grid grid(run.n, run.box_length);
    return prepare_initial_data(make_initial_data(run.ic, grid), run);
}

PicardOptions picard_options(const LabConfig& cfg) {
    PicardOptions o;
    o.final_time = cfg.run.final_time;
    o.intervals = cfg.picard.intervals;
    o.p = cfg.picard.p;
    o.tol = cfg.picard.tol;
    o.max_iter = cfg.picard.max_iter;
    return o;
}

// Maps exceptions onto exit codes and failure JSON.
template <class Fn>
int guarded(const CommandOptions& opts, std::ostream& err, Fn&& fn) {
    auto fail = [&](int code, const std::string& kind, const std::string& message, const json& extra = json::object()) {
        json doc = json::parse(failure_json(code, kind, message));
        for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
        const std::string line = doc.dump();
        err << line << "\n";
        if (!opts.out_dir.empty()) {
            std::error_code ec;
            fs::create_directories(opts.out_dir, ec);
            if (!ec) {
                std::ofstream f(fs::path(opts.out_dir) / "failure.json", std::ios::binary);
                f << line << "\n";
            }
        }
        return code;
    };
    try {
        return fn();
    } catch (const ConfigError& e) {
        return fail(kExitConfig, "config", e.what(), {{"path", e.path()}});
    } catch (const BlowUpError& e) {
        auto num = [](double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); };
        return fail(kExitBlowUp, "blow_up", e.what(), {{"time", num(e.time)}, {"l2", num(e.l2)}, {"linf", num(e.linf)}});
    } catch (const SnapshotFormatError& e) {
        return fail(kExitConfig, "input", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kExitConfig, "config", e.what());
    } catch (const std::exception& e) {
        return fail(kExitDiagnostic, "error", e.what());
    }
}

}  // namespace

std::string failure_json(int exit_code, const std::string& kind, const std::string& message) {
    return json{{"status", "error"}, {"exit_code", exit_code}, {"kind", kind}, {"message", message}}.dump();
}

LabConfig resolve_config(const CommandOptions& opts) {
    LabConfig cfg = opts.config_path.empty() ? parse_config(std::string_view("{}")) : load_config_file(opts.config_path);
    if (opts.seed) cfg.run.ic.seed = *opts.seed;
    if (opts.strict_dealias) cfg.run.dealias = DealiasMode::StrictPadded;
    return cfg;
}

RunArtifacts execute_run(const LabConfig& cfg, const std::string& out_dir) {
    Trajectory traj = run_from(configured_initial_data(cfg.run), cfg.run);
    VerdictReport report = evaluate_run(traj, cfg);
    if (!out_dir.empty()) {
        const fs::path dir(out_dir);
        fs::create_directories(dir / "snapshots");
        write_text(dir / "config.json", canonical_config(cfg) + "\n");
        write_csv((dir / "series.csv").string(), run_series(traj, cfg.run.alpha, cfg.run.viscosity));
        for (std::size_t i = 0; i < traj.size(); ++i) {
            save_snapshot(dir / "snapshots" / snapshot_name(i), traj[i], traj.times()[i], cfg.run.alpha,
                          cfg.run.viscosity);
        }
        write_text(dir / "report.json", report_text(report));
    }
    return {std::move(traj), std::move(report)};
}

RunArtifacts analyze_run_dir(const std::string& dir_name) {
    const fs::path dir(dir_name);
    if (!fs::is_directory(dir)) throw std::invalid_argument("not a run directory: " + dir_name);
    const LabConfig cfg = load_config_file((dir / "config.json").string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir / "snapshots")) {
        if (entry.path().extension() == ".pecf") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::invalid_argument("no snapshots in " + dir_name);
    const Grid grid(cfg.run.n, cfg.run.box_length);
    Trajectory traj(grid);
    for (const fs::path& f : files) {
        Snapshot s = load_snapshot(f);
        if (!(s.field.grid() == grid)) throw SnapshotFormatError(f.string() + ": grid does not match config");
        traj.push(s.time, std::move(s.field));
    }
    VerdictReport report = evaluate_run(traj, cfg);
    return {std::move(traj), std::move(report)};
}

PicardArtifacts execute_picard(const LabConfig& cfg, const std::string& out_dir) {
    const SpectralField rho0 = configured_initial_data(cfg.run);
    const PicardOptions opts = picard_options(cfg);
    PicardArtifacts art{iterate_to_fixed_point(rho0, opts, cfg.run), std::nullopt, {}};
    const PicardResult& pic = art.picard;
    const DyadicSpec spec = make_dyadic_spec(rho0.grid());

    VerdictReport& report = art.report;
    report.version = artifact_version();
    report.config_hash = config_hash(cfg);
    report.command = "picard";

    VerdictEntry contraction{"contraction", Verdict::Pass, {}, {{"tol", opts.tol}}, ""};
    contraction.params["iterations"] = pic.iterations;
    contraction.params["max_factor"] =
        pic.factors.empty() ? 0.0 : *std::max_element(pic.factors.begin(), pic.factors.end());
    contraction.params["final_difference"] = pic.differences.empty() ? 0.0 : pic.differences.back();
    contraction.params["ep_norm"] = pic.norms.empty() ? 0.0 : pic.norms.back();
    if (!(pic.contracted && pic.converged)) {
        contraction.status = Verdict::Flag;
        contraction.note = pic.contracted ? "iteration budget exhausted" : "Picard map is not contracting at this size";
    }
    report.entries.push_back(contraction);

    VerdictEntry gevrey{"gevrey_ep_norm", Verdict::Pass, {}, {}, ""};
    gevrey.params["a"] = cfg.picard.gevrey_a;
    if (pic.contracted) {
        try {
            gevrey.params["value"] = gevrey_ep_norm(pic.solution, cfg.picard.gevrey_a, opts.p, spec);
            if (!std::isfinite(gevrey.params["value"])) gevrey.status = Verdict::Fail;
        } catch (const OverflowError& e) {
            gevrey.status = Verdict::Flag;
            gevrey.note = e.what();
        }
    } else {
        gevrey.status = Verdict::Skip;
        gevrey.note = "no fixed point";
    }
    report.entries.push_back(gevrey);

    VerdictEntry radius{"analyticity_radius", Verdict::Pass, {}, {}, ""};
    SeriesTable radius_table;
    radius_table.columns = {"t", "l2", "radius"};
    double min_ratio = kInfinity;
    bool undefined = false;
    for (std::size_t i = 0; i < pic.solution.size(); ++i) {
        const double t = pic.solution.times()[i];
        const auto r = analyticity_radius(pic.solution[i]);
        radius_table.rows.push_back({t, l2_norm(pic.solution[i]), r ? *r : std::nan("")});
        if (t >= 0.1 * opts.final_time && t > 0.0) {
            if (r) min_ratio = std::min(min_ratio, *r / t);
            else undefined = true;
        }
    }
    radius.params["min_radius_over_t"] = std::isfinite(min_ratio) ? min_ratio : std::nan("");
    if (undefined || !pic.contracted) {
        radius.status = Verdict::Flag;
        radius.note = undefined ? "radius undefined at some times" : "no fixed point";
    }
    report.entries.push_back(radius);

    if (!cfg.picard.scales.empty()) {
        art.scan = smallness_scan(rho0, cfg.picard.scales, opts, cfg.run, cfg.picard.fit_max_scale);
        VerdictEntry scan{"smallness_scan", Verdict::Pass, {}, {}, ""};
        scan.params["threshold"] = art.scan->threshold ? *art.scan->threshold : std::nan("");
        scan.params["cubic_exponent"] = art.scan->cubic_exponent ? *art.scan->cubic_exponent : std::nan("");
        if (!art.scan->cubic_exponent) {
            scan.status = Verdict::Flag;
            scan.note = "fewer than two small scales for the cubic fit";
        }
        report.entries.push_back(scan);
    }

    if (!out_dir.empty()) {
        const fs::path dir(out_dir);
        fs::create_directories(dir);
        write_text(dir / "config.json", canonical_config(cfg) + "\n");
        SeriesTable table;
        table.columns = {"iteration", "difference", "ep_norm", "factor"};
        for (std::size_t i = 0; i < pic.differences.size(); ++i) {
            table.rows.push_back({static_cast<double>(i + 1), pic.differences[i], pic.norms[i],
                                  i == 0 ? std::nan("") : pic.factors[i - 1]});
        }
        write_csv((dir / "picard.csv").string(), table);
        write_csv((dir / "radius.csv").string(), radius_table);
        if (art.scan) {
            SeriesTable scan;
            scan.columns = {"scale", "contracted", "converged", "iterations", "ep_norm", "max_factor", "free_norm",
                            "bilinear_norm"};
            for (const ScanRow& r : art.scan->rows) {
                scan.rows.push_back({r.scale, r.contracted ? 1.0 : 0.0, r.converged ? 1.0 : 0.0,
                                     static_cast<double>(r.iterations), r.ep_norm, r.max_factor, r.free_norm,
                                     r.bilinear_norm});
            }
            write_csv((dir / "scan.csv").string(), scan);
        }
        write_text(dir / "report.json", report_text(report));
    }
    return art;
}

int cmd_run(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(opts, err, [&] {
        const LabConfig cfg = resolve_config(opts);
        const RunArtifacts art = execute_run(cfg, opts.out_dir);
        out << report_text(art.report);
        return art.report.exit_code();
    });
}

int cmd_picard(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(opts, err, [&] {
        const LabConfig cfg = resolve_config(opts);
        const PicardArtifacts art = execute_picard(cfg, opts.out_dir);
        out << report_text(art.report);
        return art.report.exit_code();
    });
}

int cmd_analyze(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(opts, err, [&] {
        if (opts.paths.empty()) throw std::invalid_argument("analyze: no run directories given");
        int code = kExitPass;
        for (const std::string& path : opts.paths) {
            const RunArtifacts art = analyze_run_dir(path);
            const std::string text = report_text(art.report);
            out << text;
            const fs::path stored = fs::path(path) / "report.json";
            if (fs::exists(stored)) {
                const bool same = read_text(stored) == text;
                err << path << ": " << (same ? "report reproduced" : "report differs from stored report.json") << "\n";
                if (!same) code = kExitDiagnostic;
            }
            if (!opts.out_dir.empty()) {
                fs::create_directories(opts.out_dir);
                write_text(fs::path(opts.out_dir) / (fs::path(path).filename().string() + "_report.json"), text);
            }
            code = std::max(code, art.report.exit_code());
        }
        return code;
    });
}

int cmd_sweep(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(opts, err, [&] {
        const LabConfig base = resolve_config(opts);
        if (opts.out_dir.empty()) throw std::invalid_argument("sweep: --out is required");
        if (opts.workers < 1) throw std::invalid_argument("sweep: --workers must be >= 1");
        const SweepSettings& sw = base.sweep;
        const std::vector<double> scales = sw.scales.empty() ? std::vector<double>{1.0} : sw.scales;
        const std::vector<double> alphas = sw.alpha.empty() ? std::vector<double>{base.run.alpha} : sw.alpha;
        const std::vector<double> epsilons = sw.epsilon.empty() ? std::vector<double>{base.run.viscosity} : sw.epsilon;
        const std::vector<int> ns = sw.n.empty() ? std::vector<int>{base.run.n} : sw.n;

        std::vector<LabConfig> points;
        for (int n : ns)
            for (double a : alphas)
                for (double e : epsilons)
                    for (double s : scales) {
                        LabConfig c = base;
                        c.run.n = n;
                        c.run.alpha = a;
                        c.run.viscosity = e;
                        c.run.ic.amplitude = base.run.ic.amplitude * s;
                        c.sweep = SweepSettings{};
                        c.picard.scales.clear();
                        c.run.validate();
                        points.push_back(c);
                    }

        struct Outcome {
            int exit_code = 0;
            double final_l2 = std::nan("");
            double contracted = std::nan("");
            double max_factor = std::nan("");
            std::string message;
        };
        std::vector<Outcome> outcomes(points.size());
        std::atomic<std::size_t> next{0};
        const fs::path root(opts.out_dir);
        fs::create_directories(root);
        auto worker = [&] {
            for (std::size_t i = next++; i < points.size(); i = next++) {
                char name[32];
                std::snprintf(name, sizeof name, "run_%03zu", i);
                const fs::path dir = root / name;
                Outcome& o = outcomes[i];
                try {
                    const RunArtifacts art = execute_run(points[i], dir.string());
                    o.exit_code = art.report.exit_code();
                    o.final_l2 = l2_norm(art.trajectory[art.trajectory.size() - 1]);
                } catch (const BlowUpError& e) {
                    o.exit_code = kExitBlowUp;
                    o.message = e.what();
                    fs::create_directories(dir);
                    write_text(dir / "failure.json", failure_json(kExitBlowUp, "blow_up", e.what()) + "\n");
                }
                if (sw.picard) {
                    const PicardResult pic =
                        iterate_to_fixed_point(configured_initial_data(points[i].run), picard_options(points[i]), points[i].run);
                    o.contracted = pic.contracted && pic.converged ? 1.0 : 0.0;
                    o.max_factor = pic.factors.empty() ? 0.0 : *std::max_element(pic.factors.begin(), pic.factors.end());
                }
            }
        };
        std::vector<std::thread> pool;
        const int threads = std::min<int>(opts.workers, static_cast<int>(points.size()));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();

        SeriesTable table;
        table.columns = {"index", "n", "alpha", "epsilon", "scale", "exit_code", "final_l2", "contracted", "max_factor"};
        std::map<std::tuple<int, double, double>, double> thresholds;
        std::size_t idx = 0;
        for (int n : ns)
            for (double a : alphas)
                for (double e : epsilons) {
                    auto& th = thresholds[{n, a, e}];
                    th = std::nan("");
                    for (double s : scales) {
                        const Outcome& o = outcomes[idx];
                        table.rows.push_back({static_cast<double>(idx), static_cast<double>(n), a, e, s,
                                              static_cast<double>(o.exit_code), o.final_l2, o.contracted, o.max_factor});
                        if (o.contracted == 0.0 && std::isnan(th)) th = s;
                        ++idx;
                    }
                }
        write_csv((root / "sweep.csv").string(), table);
        SeriesTable threshold_table;
        threshold_table.columns = {"n", "alpha", "epsilon", "threshold_scale"};
        for (const auto& [key, th] : thresholds) {
            threshold_table.rows.push_back({static_cast<double>(std::get<0>(key)), std::get<1>(key), std::get<2>(key), th});
        }
        write_csv((root / "thresholds.csv").string(), threshold_table);
        out << to_csv(table);
        err << "sweep: " << points.size() << " runs written under " << root.string() << "\n";
        return kExitPass;
    });
}

int cmd_selftest(std::ostream& out) {
    const std::vector<SelfTestCase> cases = run_selftest();
    int failed = 0;
    for (const SelfTestCase& c : cases) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (!c.pass && !c.detail.empty()) out << " (" << c.detail << ")";
        out << "\n";
        if (!c.pass) ++failed;
    }
    out << cases.size() - static_cast<std::size_t>(failed) << "/" << cases.size() << " self-test cases passed\n";
    return failed == 0 ? kExitPass : kExitDiagnostic;
}

}  // namespace eclab
