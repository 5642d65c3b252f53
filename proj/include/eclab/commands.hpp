#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eclab/config.hpp"
#include "eclab/mild_solver.hpp"
#include "eclab/report.hpp"

namespace eclab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitDiagnostic = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowUp = 3;

/// Flags shared by the subcommands. Environment overrides are applied by the
/// CLI front end before these reach the commands.
struct CommandOptions {
    std::string config_path;
    std::string out_dir;
    int workers = 1;
    std::optional<std::uint64_t> seed;
    bool strict_dealias = false;
    /// Run directories for `analyze`.
    std::vector<std::string> paths;
};

/// Loads the config and applies --seed and --strict-dealias.
LabConfig resolve_config(const CommandOptions& opts);

struct RunArtifacts {
    Trajectory trajectory;
    VerdictReport report;
};

/// Steps the configured system and evaluates its diagnostics. When out_dir
/// is non-empty writes config.json, series.csv, report.json and
/// snapshots/snap_NNNNNN.pecf there. Throws BlowUpError.
RunArtifacts execute_run(const LabConfig& cfg, const std::string& out_dir);

struct PicardArtifacts {
    PicardResult picard;
    std::optional<ScanResult> scan;
    VerdictReport report;
};
PicardArtifacts execute_picard(const LabConfig& cfg, const std::string& out_dir);

/// Rebuilds the trajectory of a run directory and re-evaluates its report.
RunArtifacts analyze_run_dir(const std::string& dir);

/// One-line JSON describing a failed command.
std::string failure_json(int exit_code, const std::string& kind, const std::string& message);

/// Each returns the process exit code; `out` receives the JSON report(s),
/// `err` receives progress notes and failure JSON.
int cmd_run(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_picard(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_analyze(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_selftest(std::ostream& out);

struct SelfTestCase {
    std::string name;
    bool pass = false;
    std::string detail;
};
std::vector<SelfTestCase> run_selftest();

}  // namespace eclab
