#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "chargeplan/planmodel.hpp"

namespace chargeplan {

// Deterministic, portable randomness: the mt19937_64 stream is pinned by the
// standard and the derived draws below avoid implementation-defined
// std::*_distribution behaviour.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t u64() { return eng_(); }
    double real01() { return double(u64() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return real01() < p; }
    // Inclusive bounds; the modulo bias is irrelevant at genome ranges.
    int uniform_int(int lo, int hi) {
        return lo + int(u64() % uint64_t(hi - lo + 1));
    }

    static const char* describe() { return "mt19937_64 + shift/modulo uniforms"; }

private:
    std::mt19937_64 eng_;
};

struct Individual {
    std::vector<int> genome; // [x over I | y over J]
    double z1 = 0.0;
    double z2 = 0.0;
    double violation = 0.0; // 0 iff feasible
    bool feasible = true;
};

// Constrained domination: feasible beats infeasible, infeasibles compare by
// violation scalar, feasibles by Pareto dominance on (z1, z2) minimization.
bool dominates(const Individual& a, const Individual& b);

// Partition into fronts consistent with dominates(); front 0 is the
// non-dominated set.
std::vector<std::vector<int>> fast_nondominated_sort(const std::vector<Individual>& pop);

// Crowding distances for one front (parallel to `front`); extremes get the
// +infinity sentinel, zero-range objectives contribute 0.
std::vector<double> crowding_distance(const std::vector<Individual>& pop,
                                      const std::vector<int>& front);

struct EvolveParams {
    int pop_size = 500;
    int generations = 300;
    double pc = 0.9;
    double pm = 0.1;
    uint64_t seed = 1;
    // Called once per generation with the current feasible first front.
    std::function<void(int generation, const std::vector<Individual>&)> observer;
};

// One horizon of the bi-objective model: returns the deduplicated feasible
// first front as evaluated HorizonSolutions, sorted by (cost, coverage,
// genome). Same seed and inputs give identical output.
std::vector<HorizonSolution> evolve(const PlanningInstance& inst, const HorizonSolution& prev,
                                    int k, const EvolveParams& params);

} // namespace chargeplan
