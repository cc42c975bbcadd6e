#include "chargeplan/nsga2.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "chargeplan/errors.hpp"

namespace chargeplan {

bool dominates(const Individual& a, const Individual& b) {
    if (a.feasible != b.feasible) return a.feasible;
    if (!a.feasible) return a.violation < b.violation;
    if (a.z1 > b.z1 || a.z2 > b.z2) return false;
    return a.z1 < b.z1 || a.z2 < b.z2;
}

// Bi-objective fronts in O(N log N log F): process feasible points in
// (z1, z2) order and binary-search the first front whose staircase does not
// dominate the point. Each front is represented by its lowest z2 so far and,
// among points at that z2, the lowest z1; that representative dominates the
// incoming point iff any member does. Infeasible points always sort behind
// every feasible one and are grouped by equal violation scalar.
std::vector<std::vector<int>> fast_nondominated_sort(const std::vector<Individual>& pop) {
    std::vector<int> feas;
    std::vector<int> infeas;
    feas.reserve(pop.size());
    for (int i = 0; i < static_cast<int>(pop.size()); ++i) {
        (pop[i].feasible ? feas : infeas).push_back(i);
    }

    std::vector<std::vector<int>> fronts;

    if (!feas.empty()) {
        std::sort(feas.begin(), feas.end(), [&](int a, int b) {
            if (pop[a].z1 != pop[b].z1) return pop[a].z1 < pop[b].z1;
            if (pop[a].z2 != pop[b].z2) return pop[a].z2 < pop[b].z2;
            return a < b;
        });
        std::vector<double> min_z2; // per front
        std::vector<double> min_z1_at_min_z2;
        for (int idx : feas) {
            const double z1 = pop[idx].z1;
            const double z2 = pop[idx].z2;
            int lo = 0;
            int hi = static_cast<int>(fronts.size());
            while (lo < hi) {
                const int mid = (lo + hi) / 2;
                const bool dominated =
                    min_z2[mid] < z2 || (min_z2[mid] == z2 && min_z1_at_min_z2[mid] < z1);
                if (dominated) {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            if (lo == static_cast<int>(fronts.size())) {
                fronts.emplace_back();
                min_z2.push_back(z2);
                min_z1_at_min_z2.push_back(z1);
            } else if (z2 < min_z2[lo]) {
                min_z2[lo] = z2;
                min_z1_at_min_z2[lo] = z1;
            }
            fronts[lo].push_back(idx);
        }
    }

    if (!infeas.empty()) {
        std::sort(infeas.begin(), infeas.end(), [&](int a, int b) {
            if (pop[a].violation != pop[b].violation) return pop[a].violation < pop[b].violation;
            return a < b;
        });
        for (size_t i = 0; i < infeas.size(); ++i) {
            if (i == 0 || pop[infeas[i]].violation != pop[infeas[i - 1]].violation) {
                fronts.emplace_back();
            }
            fronts.back().push_back(infeas[i]);
        }
    }

    return fronts;
}

std::vector<double> crowding_distance(const std::vector<Individual>& pop,
                                      const std::vector<int>& front) {
    const int n = static_cast<int>(front.size());
    std::vector<double> dist(n, 0.0);
    if (n == 0) return dist;
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<int> order(n);
    for (int obj = 0; obj < 2; ++obj) {
        auto value = [&](int slot) { return obj == 0 ? pop[front[slot]].z1 : pop[front[slot]].z2; };
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (value(a) != value(b)) return value(a) < value(b);
            return front[a] < front[b];
        });
        const double range = value(order[n - 1]) - value(order[0]);
        if (range == 0.0) continue; // degenerate objective adds nothing
        dist[order[0]] = inf;
        dist[order[n - 1]] = inf;
        for (int i = 1; i + 1 < n; ++i) {
            if (dist[order[i]] == inf) continue;
            dist[order[i]] += (value(order[i + 1]) - value(order[i - 1])) / range;
        }
    }
    return dist;
}

namespace {

struct Evaluated {
    Individual ind;
    int rank = 0;
    double crowding = 0.0;
};

class HorizonEvaluator {
public:
    HorizonEvaluator(const PlanningInstance& inst, const HorizonSolution& prev, int k)
        : inst_(inst), prev_(prev), k_(k), num_stations_(inst.num_stations()) {}

    HorizonSolution decode(const std::vector<int>& genome) const {
        HorizonSolution sol;
        sol.x.assign(genome.begin(), genome.begin() + num_stations_);
        sol.y.assign(genome.begin() + num_stations_, genome.end());
        return sol;
    }

    Individual evaluate(std::vector<int> genome) const {
        Individual ind;
        ind.genome = std::move(genome);
        const HorizonSolution sol = decode(ind.genome);
        const auto [z1, z2] = objective_pair(sol, prev_, inst_, k_);
        ind.z1 = z1;
        ind.z2 = z2;
        ind.violation = violation_scalar(check_constraints(sol, prev_, inst_, k_));
        ind.feasible = ind.violation == 0.0;
        return ind;
    }

    // Fully populated solution for reporting the final front.
    HorizonSolution materialize(const Individual& ind) const {
        HorizonSolution sol = decode(ind.genome);
        sol.cost_meur = horizon_cost(prev_, sol, inst_);
        sol.coverage = horizon_coverage(sol, inst_, k_);
        sol.lookahead_coverage = k_ < inst_.num_horizons()
                                     ? coverage_at_penetration(sol, inst_, inst_.penetration[k_])
                                     : sol.coverage;
        sol.violations = check_constraints(sol, prev_, inst_, k_);
        sol.feasible = sol.violations.empty();
        return sol;
    }

private:
    const PlanningInstance& inst_;
    const HorizonSolution& prev_;
    int k_;
    int num_stations_;
};

void assign_ranks(std::vector<Evaluated>& pop) {
    std::vector<Individual> bare;
    bare.reserve(pop.size());
    for (const auto& e : pop) bare.push_back(e.ind);
    const auto fronts = fast_nondominated_sort(bare);
    for (size_t f = 0; f < fronts.size(); ++f) {
        const auto crowd = crowding_distance(bare, fronts[f]);
        for (size_t s = 0; s < fronts[f].size(); ++s) {
            pop[fronts[f][s]].rank = static_cast<int>(f);
            pop[fronts[f][s]].crowding = crowd[s];
        }
    }
}

int tournament(const std::vector<Evaluated>& pop, Rng& rng) {
    const int n = static_cast<int>(pop.size());
    const int a = rng.uniform_int(0, n - 1);
    const int b = rng.uniform_int(0, n - 1);
    if (pop[a].rank != pop[b].rank) return pop[a].rank < pop[b].rank ? a : b;
    if (pop[a].crowding != pop[b].crowding) return pop[a].crowding > pop[b].crowding ? a : b;
    return std::min(a, b);
}

std::vector<Individual> feasible_first_front(const std::vector<Evaluated>& pop) {
    std::vector<Individual> out;
    for (const auto& e : pop) {
        if (e.rank == 0 && e.ind.feasible) out.push_back(e.ind);
    }
    return out;
}

} // namespace

std::vector<HorizonSolution> evolve(const PlanningInstance& inst, const HorizonSolution& prev,
                                    int k, const EvolveParams& params) {
    const int num_stations = inst.num_stations();
    const int num_togo = inst.num_togo();
    const int genes = num_stations + num_togo;
    if (genes == 0) fail(Errc::invalid_config, "planning instance has no candidate sites");
    if (k < 1 || k > inst.num_horizons()) {
        fail(Errc::invalid_config, "horizon index " + std::to_string(k) + " out of range 1.." +
                                       std::to_string(inst.num_horizons()));
    }
    if (static_cast<int>(prev.x.size()) != num_stations ||
        static_cast<int>(prev.y.size()) != num_togo) {
        fail(Errc::invalid_config, "previous solution does not match the instance dimensions");
    }
    if (params.pop_size < 2) fail(Errc::invalid_config, "population size must be at least 2");
    if (params.generations < 0) fail(Errc::invalid_config, "generation count must be non-negative");
    if (params.pc < 0.0 || params.pc > 1.0 || params.pm < 0.0 || params.pm > 1.0) {
        fail(Errc::invalid_config, "crossover and mutation rates must lie in [0, 1]");
    }

    // Monotone build rule baked into the gene bounds: nothing shrinks.
    std::vector<int> lo(genes), hi(genes);
    for (int i = 0; i < num_stations; ++i) {
        lo[i] = prev.x[i];
        hi[i] = inst.max_scale;
    }
    for (int j = 0; j < num_togo; ++j) {
        lo[num_stations + j] = prev.y[j];
        hi[num_stations + j] = inst.max_piles;
    }

    const HorizonEvaluator eval(inst, prev, k);
    Rng rng(params.seed);

    // Seed with the carried-over layout, then sparse upgrades: dense random
    // genomes almost always blow the budget, which stalls early generations.
    const double upgrade_rate = std::min(1.0, 10.0 / genes);
    std::vector<Evaluated> pop;
    pop.reserve(params.pop_size);
    pop.push_back({eval.evaluate(lo), 0, 0.0});
    while (static_cast<int>(pop.size()) < params.pop_size) {
        std::vector<int> genome(genes);
        for (int g = 0; g < genes; ++g) {
            genome[g] = rng.bernoulli(upgrade_rate) ? rng.uniform_int(lo[g], hi[g]) : lo[g];
        }
        pop.push_back({eval.evaluate(std::move(genome)), 0, 0.0});
    }
    assign_ranks(pop);
    if (params.observer) params.observer(0, feasible_first_front(pop));

    auto mutate = [&](std::vector<int>& genome) {
        for (int g = 0; g < genes; ++g) {
            if (rng.bernoulli(params.pm)) genome[g] = rng.uniform_int(lo[g], hi[g]);
        }
    };

    for (int gen = 1; gen <= params.generations; ++gen) {
        std::vector<Evaluated> combined;
        combined.reserve(2 * params.pop_size);
        combined = pop;
        while (static_cast<int>(combined.size()) < 2 * params.pop_size) {
            const int p1 = tournament(pop, rng);
            const int p2 = tournament(pop, rng);
            std::vector<int> c1 = pop[p1].ind.genome;
            std::vector<int> c2 = pop[p2].ind.genome;
            if (rng.bernoulli(params.pc)) {
                for (int g = 0; g < genes; ++g) {
                    if (rng.bernoulli(0.5)) std::swap(c1[g], c2[g]);
                }
            }
            mutate(c1);
            mutate(c2);
            combined.push_back({eval.evaluate(std::move(c1)), 0, 0.0});
            if (static_cast<int>(combined.size()) < 2 * params.pop_size) {
                combined.push_back({eval.evaluate(std::move(c2)), 0, 0.0});
            }
        }

        std::vector<Individual> bare;
        bare.reserve(combined.size());
        for (const auto& e : combined) bare.push_back(e.ind);
        const auto fronts = fast_nondominated_sort(bare);

        std::vector<Evaluated> next;
        next.reserve(params.pop_size);
        for (size_t f = 0; f < fronts.size() && static_cast<int>(next.size()) < params.pop_size;
             ++f) {
            const auto& front = fronts[f];
            const auto crowd = crowding_distance(bare, front);
            std::vector<int> slots(front.size());
            for (size_t s = 0; s < slots.size(); ++s) slots[s] = static_cast<int>(s);
            if (static_cast<int>(next.size() + front.size()) > params.pop_size) {
                std::sort(slots.begin(), slots.end(), [&](int a, int b) {
                    if (crowd[a] != crowd[b]) return crowd[a] > crowd[b];
                    return front[a] < front[b];
                });
            }
            for (int s : slots) {
                if (static_cast<int>(next.size()) == params.pop_size) break;
                next.push_back(
                    {std::move(combined[front[s]].ind), static_cast<int>(f), crowd[s]});
            }
        }
        pop = std::move(next);
        if (params.observer) params.observer(gen, feasible_first_front(pop));
    }

    // Report the feasible non-dominated set, deduplicated by genome.
    std::vector<Individual> finalists = feasible_first_front(pop);
    std::sort(finalists.begin(), finalists.end(),
              [](const Individual& a, const Individual& b) { return a.genome < b.genome; });
    finalists.erase(std::unique(finalists.begin(), finalists.end(),
                                [](const Individual& a, const Individual& b) {
                                    return a.genome == b.genome;
                                }),
                    finalists.end());
    if (finalists.empty()) {
        fail(Errc::no_feasible_solution,
             "no feasible solution survived to the final front at horizon " + std::to_string(k));
    }

    std::vector<HorizonSolution> out;
    out.reserve(finalists.size());
    for (const auto& ind : finalists) out.push_back(eval.materialize(ind));
    std::sort(out.begin(), out.end(), [](const HorizonSolution& a, const HorizonSolution& b) {
        if (a.cost_meur != b.cost_meur) return a.cost_meur < b.cost_meur;
        if (a.coverage != b.coverage) return a.coverage < b.coverage;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    return out;
}

} // namespace chargeplan
