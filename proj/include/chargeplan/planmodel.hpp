#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chargeplan/candidates.hpp"

namespace chargeplan {

// Immutable problem data for one scenario run. Indices into `stations`
// (set I) and `togo` (set J) are fixed by natural site id order; horizon
// indices k run 1..num_horizons().
struct PlanningInstance {
    CoordinateMode mode = CoordinateMode::wgs84;
    std::vector<CandidateSite> stations; // I
    std::vector<CandidateSite> togo;     // J

    int max_scale = 5;  // s
    int max_piles = 5;  // n
    std::vector<double> cap_scale{0, 30, 35, 40, 45, 50}; // veh/h per scale level
    double cap_pile = 2.0;                                 // veh/h per pile
    double pile_cost_eur = 2000.0;
    // (s+1)x(s+1), MEUR; [from][to], zero diagonal, lower triangle unused.
    std::vector<std::vector<double>> station_cost_meur;

    std::vector<double> penetration;  // p^k, non-decreasing
    std::vector<double> budget_meur;  // b^k
    std::vector<int> min_new_stations, max_new_stations; // per horizon
    std::vector<int> min_new_togo, max_new_togo;
    double min_station_spacing_km = 3.0;
    std::vector<double> gamma; // look-ahead weights; default 1,1,...,1,0

    // Horizon-0 state (the existing layout).
    std::vector<int> x0, y0;

    // Derived at build time.
    std::vector<std::vector<double>> station_dist_km;
    std::vector<std::vector<char>> spacing_exempt; // pairs active in horizon 0

    int num_stations() const { return static_cast<int>(stations.size()); }
    int num_togo() const { return static_cast<int>(togo.size()); }
    int num_horizons() const { return static_cast<int>(penetration.size()); }

    // Fills derived members and checks every structural invariant.
    void finalize();
    uint64_t hash() const;
};

// Default weights realizing the look-ahead schedule: 1 for every horizon
// except the last, which gets 0.
std::vector<double> default_gamma(int num_horizons);

struct Violation {
    enum class Kind {
        budget,
        spacing,
        downgrade,
        station_count,
        togo_count,
        scale_bounds,
        pile_bounds,
    };
    Kind kind;
    std::string detail;
    double magnitude = 0.0;  // in the constraint's native unit
    double normalized = 0.0; // dimensionless, used by the violation scalar
};

const char* violation_kind_name(Violation::Kind k);

struct HorizonSolution {
    std::vector<int> x; // station scales over I
    std::vector<int> y; // pile counts over J
    double cost_meur = 0.0;
    double coverage = 0.0;           // D_k at this horizon's penetration
    double lookahead_coverage = 0.0; // same decision vector at p^{k+1}
    bool feasible = true;
    std::vector<Violation> violations;

    bool station_active(int i) const { return x[i] > 0; }
    bool togo_active(int j) const { return y[j] > 0; }
};

// The existing layout as a zero-cost solution (coverage at p=0).
HorizonSolution initial_solution(const PlanningInstance& inst);

// Construction cost of moving prev -> cur: station upgrade table plus pile
// increments. Cost arithmetic runs in EUR and is reported in MEUR. Throws
// DowngradeAttempt if any scale or pile count decreases.
double horizon_cost(const HorizonSolution& prev, const HorizonSolution& cur,
                    const PlanningInstance& inst);

// Demand coverage at an explicit penetration rate.
double coverage_at_penetration(const HorizonSolution& sol, const PlanningInstance& inst,
                               double p);

// D_k: per-site min(q*p^k, capacity), summed over stations and to-go sites.
double horizon_coverage(const HorizonSolution& sol, const PlanningInstance& inst, int k);

// (Z1, Z2) for horizon k: Z1 = cost, Z2 = -(D_k + gamma_k * D_{k+1}) where
// D_{k+1} evaluates the same decision vector at the next penetration rate.
std::pair<double, double> objective_pair(const HorizonSolution& sol, const HorizonSolution& prev,
                                         const PlanningInstance& inst, int k);

// Every violated constraint with its magnitude; empty means feasible.
std::vector<Violation> check_constraints(const HorizonSolution& sol, const HorizonSolution& prev,
                                         const PlanningInstance& inst, int k);

// Sum of normalized violation magnitudes (0 iff feasible).
double violation_scalar(const std::vector<Violation>& violations);

} // namespace chargeplan
