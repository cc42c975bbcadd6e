#include "chargeplan/horizons.hpp"

#include <algorithm>
#include <numeric>

#include "chargeplan/errors.hpp"

namespace chargeplan {

const char* policy_name(ScenarioPolicy p) {
    switch (p) {
    case ScenarioPolicy::max_coverage_lookahead: return "scenario1";
    case ScenarioPolicy::median_coverage_lookahead: return "scenario2";
    case ScenarioPolicy::max_coverage_myopic: return "scenario3";
    }
    return "scenario1";
}

const char* policy_description(ScenarioPolicy p) {
    switch (p) {
    case ScenarioPolicy::max_coverage_lookahead:
        return "maximum-coverage selection with look-ahead objective";
    case ScenarioPolicy::median_coverage_lookahead:
        return "median-coverage selection with look-ahead objective";
    case ScenarioPolicy::max_coverage_myopic:
        return "maximum-coverage selection, current horizon only";
    }
    return "";
}

ScenarioPolicy policy_from_name(const std::string& name) {
    if (name == "scenario1" || name == "max-coverage-lookahead") {
        return ScenarioPolicy::max_coverage_lookahead;
    }
    if (name == "scenario2" || name == "median-coverage-lookahead") {
        return ScenarioPolicy::median_coverage_lookahead;
    }
    if (name == "scenario3" || name == "max-coverage-myopic") {
        return ScenarioPolicy::max_coverage_myopic;
    }
    fail(Errc::invalid_config,
         "unknown policy '" + name + "' (expected scenario1, scenario2 or scenario3)");
}

int select_by_policy(const std::vector<HorizonSolution>& front, ScenarioPolicy policy) {
    if (front.empty()) fail(Errc::empty_selection, "cannot select from an empty front");

    if (policy == ScenarioPolicy::median_coverage_lookahead) {
        std::vector<int> order(front.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (front[a].coverage != front[b].coverage) return front[a].coverage < front[b].coverage;
            if (front[a].cost_meur != front[b].cost_meur) return front[a].cost_meur < front[b].cost_meur;
            if (front[a].x != front[b].x) return front[a].x < front[b].x;
            return front[a].y < front[b].y;
        });
        // Even-sized fronts take the lower-coverage middle element.
        return order[(order.size() - 1) / 2];
    }

    // Max-coverage policies: coverage decides first. The look-ahead variant
    // resolves coverage ties toward next-horizon coverage — that is where
    // budget left over after saturating current demand goes — while the
    // myopic variant resolves them toward the cheaper plan. The front arrives
    // sorted by (cost, coverage, genome), so "first strict improvement" keeps
    // the cheaper, lexicographically smaller plan on remaining ties.
    const bool lookahead = policy == ScenarioPolicy::max_coverage_lookahead;
    int best = 0;
    for (int i = 1; i < static_cast<int>(front.size()); ++i) {
        if (front[i].coverage != front[best].coverage) {
            if (front[i].coverage > front[best].coverage) best = i;
        } else if (lookahead &&
                   front[i].lookahead_coverage > front[best].lookahead_coverage) {
            best = i;
        }
    }
    return best;
}

HorizonRun run_horizon(const PlanningInstance& inst, const HorizonSolution& prev, int k,
                       ScenarioPolicy policy, const EvolveParams& params) {
    HorizonRun run;
    run.front = evolve(inst, prev, k, params);
    run.selected = select_by_policy(run.front, policy);
    return run;
}

namespace {

int count_active(const std::vector<int>& v) {
    int n = 0;
    for (int value : v) {
        if (value > 0) ++n;
    }
    return n;
}

int count_newly_active(const std::vector<int>& prev, const std::vector<int>& cur) {
    int n = 0;
    for (size_t i = 0; i < cur.size(); ++i) {
        if (cur[i] > 0 && prev[i] == 0) ++n;
    }
    return n;
}

TimelineEntry make_entry(int k, const HorizonSolution& prev, HorizonSolution plan,
                         int front_size) {
    TimelineEntry e;
    e.k = k;
    e.new_stations = count_newly_active(prev.x, plan.x);
    e.new_togo = count_newly_active(prev.y, plan.y);
    e.active_stations = count_active(plan.x);
    e.active_togo = count_active(plan.y);
    e.front_size = front_size;
    e.plan = std::move(plan);
    return e;
}

} // namespace

PlanTimeline run_scenario(const PlanningInstance& inst, ScenarioPolicy policy,
                          const EvolveParams& params,
                          const std::function<void(int k, const HorizonRun&)>& per_horizon) {
    PlanningInstance work = inst;
    if (policy == ScenarioPolicy::max_coverage_myopic) {
        work.gamma.assign(work.num_horizons(), 0.0);
    }

    PlanTimeline timeline;
    timeline.policy = policy;

    HorizonSolution prev = initial_solution(work);
    timeline.entries.push_back(make_entry(0, prev, prev, 0));

    for (int k = 1; k <= work.num_horizons(); ++k) {
        EvolveParams stage = params;
        stage.seed = params.seed + static_cast<uint64_t>(k);
        const HorizonRun run = run_horizon(work, prev, k, policy, stage);
        if (per_horizon) per_horizon(k, run);
        const HorizonSolution& chosen = run.front[run.selected];
        timeline.entries.push_back(
            make_entry(k, prev, chosen, static_cast<int>(run.front.size())));
        timeline.total_cost_meur += chosen.cost_meur;
        prev = chosen;
    }
    timeline.final_coverage = timeline.entries.back().plan.coverage;
    return timeline;
}

std::vector<double> default_thetas() { return {0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6}; }

std::vector<SweepRow> sensitivity_sweep(const PlanningInstance& inst, ScenarioPolicy policy,
                                        const std::vector<double>& thetas,
                                        const EvolveParams& params) {
    if (thetas.empty()) fail(Errc::invalid_config, "sensitivity sweep needs at least one theta");
    for (double t : thetas) {
        if (!(t > 0.0)) fail(Errc::invalid_config, "investment rates must be positive");
    }

    std::vector<SweepRow> rows;
    rows.reserve(thetas.size());
    for (double theta : thetas) {
        PlanningInstance scaled = inst;
        for (double& b : scaled.budget_meur) b *= theta;
        const PlanTimeline timeline = run_scenario(scaled, policy, params);
        SweepRow row;
        row.theta = theta;
        for (size_t k = 1; k < timeline.entries.size(); ++k) {
            row.coverage.push_back(timeline.entries[k].plan.coverage);
        }
        row.total_cost_meur = timeline.total_cost_meur;
        row.final_coverage = timeline.final_coverage;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace chargeplan
