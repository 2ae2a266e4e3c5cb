#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sfront/nonlinearity.hpp"

namespace sfront {

struct GridSpec {
    double L = 40.0;
    int N = 2000;
    double dt = 1e-3;
    double T_end = 10.0;
};

/// Declarative description of one experiment. One JSON file = one run;
/// sweeps are arrays of runs. Everything is deterministic: no randomness,
/// perturbed initial data are explicit exponential/trigonometric shapes.
struct ScenarioConfig {
    std::string scenario;  // semiwave_hold, convergence_from_step, two_phase,
                           // time_ap_attraction, space_ap_attraction, cstar_sweep
    std::optional<NonlinearitySpec> nonlinearity;
    double mu = 1.0;
    GridSpec grid;
    std::vector<double> snapshot_times;
    std::vector<std::string> diagnostics;
    std::string output_dir;          // empty: no files are written
    nlohmann::json params;           // scenario-specific knobs

    static ScenarioConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    static ScenarioConfig load(const std::string& path);
};

struct CriterionResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double bound = 0.0;
    std::string detail;
};

struct ExitReport {
    std::string scenario;
    bool pass = true;
    std::vector<CriterionResult> criteria;
    nlohmann::json extra;  // reported-not-asserted observations

    void add(const std::string& name, bool ok, double value, double bound,
             const std::string& detail = "");
    nlohmann::json to_json() const;
};

ExitReport run_semiwave_hold(const ScenarioConfig& cfg);
ExitReport run_convergence_from_step(const ScenarioConfig& cfg);
ExitReport run_two_phase(const ScenarioConfig& cfg);
ExitReport run_time_ap_attraction(const ScenarioConfig& cfg);
ExitReport run_space_ap_attraction(const ScenarioConfig& cfg);
ExitReport run_cstar_sweep(const ScenarioConfig& cfg);

/// Dispatch on cfg.scenario.
ExitReport run_scenario(const ScenarioConfig& cfg);

/// Independent runs may fan out concurrently; the report list is assembled
/// in config order regardless of completion order.
std::vector<ExitReport> run_sweep(const std::vector<ScenarioConfig>& configs,
                                  bool concurrent = true);

}  // namespace sfront
