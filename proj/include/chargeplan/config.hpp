#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "chargeplan/candidates.hpp"
#include "chargeplan/geodata.hpp"
#include "chargeplan/horizons.hpp"

namespace chargeplan {

// Effective settings for one run: defaults, overlaid by the config file,
// overlaid by CLI flags. Hashing the canonical rendering gives the run id,
// so identical settings always land in the same output directory.
struct RunConfig {
    // Input files; empty means not provided.
    std::string network_path;
    std::string flows_path;
    std::string pois_path;
    std::string provider_path;
    std::string layout0_path;
    std::string instance_path; // prepared candidate pool, bypasses screening

    // Candidate screening.
    double buffer_radius_m = 500.0;
    int top_nodes = 10;
    NetworkSelectOptions net_select;
    double densify_step_m = 100.0;

    // Demand aggregation.
    VehicleClass vehicle_class = VehicleClass::truck;
    std::set<std::string> window; // empty = every period

    // Planning model block.
    int max_scale = 5;
    int max_piles = 5;
    std::vector<double> cap_scale{0, 30, 35, 40, 45, 50};
    double cap_pile = 2.0;
    double pile_cost_eur = 2000.0;
    std::vector<std::vector<double>> station_cost_meur; // defaulted on construction
    std::vector<double> penetration{0.2, 0.4, 0.6, 0.8, 1.0};
    std::vector<double> budget_meur{1.5, 1.5, 1.5, 1.5, 1.5};
    std::vector<int> min_new_stations{0};  // broadcast to K horizons on validate
    std::vector<int> max_new_stations{5};
    std::vector<int> min_new_togo{0};
    std::vector<int> max_new_togo{15};
    double min_station_spacing_km = 3.0;
    std::vector<double> gamma; // empty = 1,...,1,0

    // Algorithm block.
    EvolveParams algo;

    // Run controls.
    ScenarioPolicy policy = ScenarioPolicy::max_coverage_lookahead;
    std::vector<double> thetas; // empty = default seven steps
    int horizon = 1;            // single-horizon optimize target
    std::string output_dir = "out";

    std::string config_path; // provenance, excluded from the hash

    RunConfig();

    // Sorted-key JSON rendering of every effective setting.
    std::string canonical_json() const;
    uint64_t hash() const;
};

// Upgrade cost table used when the config does not override it: moving a
// station from scale a to scale b costs row a, column b (MEUR).
std::vector<std::vector<double>> default_station_cost();

RunConfig load_run_config(const std::string& path);

// Broadcasts per-horizon shorthands and checks documented ranges. Run after
// CLI overrides; model-structure invariants are re-checked when the planning
// instance is finalized.
void validate_config(RunConfig& cfg);

} // namespace chargeplan
