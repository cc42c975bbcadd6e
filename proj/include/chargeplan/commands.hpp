#pragma once

#include <string>

#include "chargeplan/config.hpp"

namespace chargeplan {

// Screening pipeline output: ranked network, demand points and the merged
// candidate pool with demand attached.
struct ScreeningResult {
    HighwayGraph graph;
    CentralityReport report;
    std::vector<DemandPoint> demand;
    CandidatePool pool;
};

ScreeningResult run_screening(const RunConfig& cfg);

// Instance from either a prepared candidate file or the full screening
// pipeline, with the config's model block applied and finalized.
PlanningInstance build_planning_instance(const RunConfig& cfg);

// <output_dir>/<command>-<config hash>: reruns of one configuration land in
// the same directory, which keeps outputs byte-comparable.
std::string run_dir_for(const RunConfig& cfg, const std::string& command);

// Commands print their primary table to stdout, write artifacts under the
// run directory and return the process exit code (0 on success; failures
// are reported by throwing Error).
int cmd_evaluate_network(const RunConfig& cfg);
int cmd_select_candidates(const RunConfig& cfg);
int cmd_optimize(const RunConfig& cfg);
int cmd_scenario(const RunConfig& cfg);
int cmd_sensitivity(const RunConfig& cfg);
// baseline_dir empty = compare against itself (all percentages 100).
int cmd_report(const std::string& run_dir, const std::string& baseline_dir);

} // namespace chargeplan
