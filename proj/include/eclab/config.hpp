#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eclab/evolution.hpp"

namespace eclab {

/// Schema violation; the message starts with the JSON path of the offender.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& path, const std::string& message);
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct PicardSettings {
    double p = 2.0;
    double tol = 1e-10;
    int max_iter = 30;
    int intervals = 100;
    /// Amplitude multipliers for the smallness scan; empty skips the scan.
    std::vector<double> scales;
    double fit_max_scale = 1e-2;
    double gevrey_a = 0.25;
};

/// Parameter lists crossed by `sweep`. An empty list keeps the base value.
struct SweepSettings {
    std::vector<double> scales;
    std::vector<double> alpha;
    std::vector<double> epsilon;
    std::vector<int> n;
    bool picard = true;
};

struct Tolerances {
    double energy = 1e-6;
    double monotonicity = 1e-9;
    double cordoba = 1e-12;
    /// Growth of ||rho||_{H^{3/2}} beyond this factor flags the sup-norm envelope.
    double h32_growth_flag = 1e3;
};

struct LabConfig {
    RunConfig run;
    PicardSettings picard;
    SweepSettings sweep;
    Tolerances tolerances;
    std::vector<std::string> diagnostics;
    /// Sobolev index for hs_growth.
    double hs_index = 2.0;
    /// Fit window for exp_decay; negative entries mean "5% of T" and "T".
    double decay_from = -1.0;
    double decay_to = -1.0;
};

/// Names accepted in the "diagnostics" list.
const std::vector<std::string>& known_diagnostics();
const std::vector<std::string>& default_diagnostics();

/// Parses and validates; unknown keys are rejected.
LabConfig parse_config(std::string_view text);
LabConfig parse_config_json(const nlohmann::json& doc);
LabConfig load_config_file(const std::string& path);

/// Full config with every default filled in, keys sorted.
nlohmann::json to_json(const LabConfig& cfg);
std::string canonical_config(const LabConfig& cfg);
/// 16 hex digits of FNV-1a 64 over the canonical text.
std::string config_hash(const LabConfig& cfg);

}  // namespace eclab
