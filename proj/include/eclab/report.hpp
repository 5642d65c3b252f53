#pragma once

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "eclab/config.hpp"
#include "eclab/trajectory.hpp"

namespace eclab {

enum class Verdict { Pass, Fail, Flag, Skip };
std::string verdict_name(Verdict v);

struct VerdictEntry {
    std::string name;
    Verdict status = Verdict::Skip;
    std::map<std::string, double> params;
    std::map<std::string, double> tolerances;
    std::string note;
};

struct VerdictReport {
    std::string version;
    std::string config_hash;
    std::string command;
    std::vector<VerdictEntry> entries;

    /// Fail if any entry failed, pass otherwise.
    Verdict overall() const;
    /// 0 for pass, 1 for a diagnostic failure.
    int exit_code() const { return overall() == Verdict::Fail ? 1 : 0; }
};

nlohmann::json to_json(const VerdictReport& report);
std::string report_text(const VerdictReport& report);

const char* artifact_version();

/// Evaluates every diagnostic listed in the config on a stepped trajectory;
/// each appears exactly once, in config order.
VerdictReport evaluate_run(const Trajectory& traj, const LabConfig& cfg);

}  // namespace eclab
