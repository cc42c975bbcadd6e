#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chargeplan/nsga2.hpp"

namespace chargeplan {

// How one solution is picked from each horizon's Pareto front. The myopic
// policy also zeroes every look-ahead weight before optimizing.
enum class ScenarioPolicy {
    max_coverage_lookahead,  // scenario1
    median_coverage_lookahead, // scenario2
    max_coverage_myopic,     // scenario3
};

const char* policy_name(ScenarioPolicy p);        // canonical CLI token
const char* policy_description(ScenarioPolicy p); // one-line human label
ScenarioPolicy policy_from_name(const std::string& name);

// Index of the solution the policy picks from a feasible front. Both max
// policies compare current-horizon coverage first; the look-ahead variant
// resolves coverage ties toward next-horizon coverage, the myopic one toward
// the cheaper plan. The median policy takes the lower-middle element of the
// coverage-sorted front.
int select_by_policy(const std::vector<HorizonSolution>& front, ScenarioPolicy policy);

struct HorizonRun {
    std::vector<HorizonSolution> front;
    int selected = -1;
};

// One optimization stage: evolve the front for horizon k from `prev`, then
// apply the policy's selection rule.
HorizonRun run_horizon(const PlanningInstance& inst, const HorizonSolution& prev, int k,
                       ScenarioPolicy policy, const EvolveParams& params);

struct TimelineEntry {
    int k = 0; // 0 = existing layout
    HorizonSolution plan;
    int active_stations = 0;
    int active_togo = 0;
    int new_stations = 0; // activated at this horizon
    int new_togo = 0;
    int front_size = 0;
};

struct PlanTimeline {
    ScenarioPolicy policy = ScenarioPolicy::max_coverage_lookahead;
    std::vector<TimelineEntry> entries; // k = 0..K
    double total_cost_meur = 0.0;       // sum of per-horizon costs
    double final_coverage = 0.0;        // coverage at the last horizon
};

// Full rolling run over k = 1..K. Horizon k draws from seed + k so the whole
// scenario reproduces from one seed while horizons stay independent. The
// optional callback sees every horizon's full front right after selection.
PlanTimeline run_scenario(const PlanningInstance& inst, ScenarioPolicy policy,
                          const EvolveParams& params,
                          const std::function<void(int k, const HorizonRun&)>& per_horizon = {});

struct SweepRow {
    double theta = 1.0;
    std::vector<double> coverage; // selected D_k per horizon 1..K
    double total_cost_meur = 0.0;
    double final_coverage = 0.0;
};

// The seven default investment-rate steps, 0.4 through 1.6.
std::vector<double> default_thetas();

// Re-runs the scenario with every budget scaled by each theta; all cells use
// the same seed schedule so differences come from the budgets alone.
std::vector<SweepRow> sensitivity_sweep(const PlanningInstance& inst, ScenarioPolicy policy,
                                        const std::vector<double>& thetas,
                                        const EvolveParams& params);

} // namespace chargeplan
