#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "chargeplan/errors.hpp"
#include "chargeplan/horizons.hpp"
#include "oracles.hpp"

using namespace chargeplan;

namespace {

HorizonSolution front_entry(double cost, double coverage, double lookahead) {
    HorizonSolution s;
    s.cost_meur = cost;
    s.coverage = coverage;
    s.lookahead_coverage = lookahead;
    s.feasible = true;
    return s;
}

oracle::InstanceSpec small_spec() {
    oracle::InstanceSpec spec;
    spec.stations = 8;
    spec.togo = 4;
    spec.q_station = {90, 80, 70, 60, 50, 40, 30, 20};
    spec.q_togo = {30, 24, 18, 12};
    // Keep budgets off the 0.002 cost lattice so no plan sits exactly on the
    // boundary where one rounding step could flip feasibility.
    spec.b = {1.5035, 1.5035, 1.5035, 1.5035, 1.5035};
    return spec;
}

EvolveParams quick_params(uint64_t seed) {
    EvolveParams params;
    params.pop_size = 40;
    params.generations = 40;
    params.seed = seed;
    return params;
}

} // namespace

TEST_CASE("policy names round-trip and reject unknowns") {
    for (const ScenarioPolicy p :
         {ScenarioPolicy::max_coverage_lookahead, ScenarioPolicy::median_coverage_lookahead,
          ScenarioPolicy::max_coverage_myopic}) {
        CHECK(policy_from_name(policy_name(p)) == p);
        CHECK(std::string(policy_description(p)).size() > 0);
    }
    CHECK(policy_from_name("scenario2") == ScenarioPolicy::median_coverage_lookahead);
    CHECK(policy_from_name("max-coverage-lookahead") == ScenarioPolicy::max_coverage_lookahead);
    CHECK(policy_from_name("median-coverage-lookahead") ==
          ScenarioPolicy::median_coverage_lookahead);
    CHECK(policy_from_name("max-coverage-myopic") == ScenarioPolicy::max_coverage_myopic);
    try {
        policy_from_name("scenario9");
        FAIL("expected invalid_config");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_config);
    }
}

TEST_CASE("selection rules pick max and lower-middle median") {
    const std::vector<HorizonSolution> front{front_entry(1.0, 10, 15), front_entry(2.0, 20, 25),
                                             front_entry(3.0, 30, 35)};
    CHECK(select_by_policy(front, ScenarioPolicy::max_coverage_lookahead) == 2);
    CHECK(select_by_policy(front, ScenarioPolicy::max_coverage_myopic) == 2);
    CHECK(select_by_policy(front, ScenarioPolicy::median_coverage_lookahead) == 1);

    const std::vector<HorizonSolution> four{front_entry(1.0, 10, 15), front_entry(2.0, 20, 25),
                                            front_entry(3.0, 30, 35),
                                            front_entry(4.0, 40, 45)};
    CHECK(select_by_policy(four, ScenarioPolicy::median_coverage_lookahead) == 1);

    const std::vector<HorizonSolution> one{front_entry(1.0, 10, 15)};
    CHECK(select_by_policy(one, ScenarioPolicy::max_coverage_lookahead) == 0);
    CHECK(select_by_policy(one, ScenarioPolicy::median_coverage_lookahead) == 0);

    try {
        select_by_policy({}, ScenarioPolicy::max_coverage_lookahead);
        FAIL("expected empty_selection");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::empty_selection);
    }
}

TEST_CASE("coverage ties split the max policies apart") {
    // Same current coverage; the pricier plan buys more next-horizon coverage.
    const std::vector<HorizonSolution> front{front_entry(1.0, 30, 35), front_entry(1.2, 30, 40)};
    CHECK(select_by_policy(front, ScenarioPolicy::max_coverage_lookahead) == 1);
    CHECK(select_by_policy(front, ScenarioPolicy::max_coverage_myopic) == 0);
}

TEST_CASE("median sorts by coverage before cost") {
    std::vector<HorizonSolution> front{front_entry(2.0, 20, 20), front_entry(1.0, 20, 20),
                                       front_entry(5.0, 10, 10)};
    // Coverage order: (10,5), (20,1), (20,2); the middle is the cheap 20.
    CHECK(select_by_policy(front, ScenarioPolicy::median_coverage_lookahead) == 1);
}

TEST_CASE("default investment-rate ladder") {
    CHECK(default_thetas() == std::vector<double>{0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6});
}

TEST_CASE("zero budgets freeze the timeline at the existing layout") {
    oracle::InstanceSpec spec = small_spec();
    spec.x0 = {2, 0, 1, 0, 0, 0, 0, 0};
    spec.y0 = {1, 0, 0, 2};
    spec.b = {0, 0, 0, 0, 0};
    const PlanningInstance inst = oracle::make_instance(spec);

    const PlanTimeline t =
        run_scenario(inst, ScenarioPolicy::max_coverage_lookahead, quick_params(9));
    REQUIRE(t.entries.size() == 6);
    CHECK(t.total_cost_meur == 0.0);
    for (const auto& e : t.entries) {
        CHECK(e.plan.x == spec.x0);
        CHECK(e.plan.y == spec.y0);
        CHECK(e.new_stations == 0);
        CHECK(e.new_togo == 0);
        CHECK(e.active_stations == 2);
        CHECK(e.active_togo == 2);
    }
    CHECK(t.final_coverage ==
          doctest::Approx(oracle::coverage_ref(spec.x0, spec.y0, inst, 1.0)));
}

TEST_CASE("scenario run matches a hand-rolled stage loop with per-horizon seeds") {
    const PlanningInstance inst = oracle::make_instance(small_spec());
    const EvolveParams params = quick_params(100);
    const ScenarioPolicy policy = ScenarioPolicy::max_coverage_lookahead;

    const PlanTimeline t = run_scenario(inst, policy, params);

    HorizonSolution prev = initial_solution(inst);
    double total = 0.0;
    for (int k = 1; k <= inst.num_horizons(); ++k) {
        EvolveParams stage = params;
        stage.seed = params.seed + uint64_t(k);
        const auto front = evolve(inst, prev, k, stage);
        const int sel = select_by_policy(front, policy);
        prev = front[sel];
        total += prev.cost_meur;

        const TimelineEntry& e = t.entries[k];
        CHECK(e.k == k);
        CHECK(e.plan.x == prev.x);
        CHECK(e.plan.y == prev.y);
        CHECK(e.front_size == int(front.size()));
    }
    CHECK(t.total_cost_meur == doctest::Approx(total).epsilon(1e-12));
    CHECK(t.final_coverage == doctest::Approx(prev.coverage).epsilon(1e-12));
}

TEST_CASE("timeline satisfies the plan invariants and the cost oracle") {
    const PlanningInstance inst = oracle::make_instance(small_spec());
    for (const ScenarioPolicy policy :
         {ScenarioPolicy::max_coverage_lookahead, ScenarioPolicy::median_coverage_lookahead,
          ScenarioPolicy::max_coverage_myopic}) {
        CAPTURE(policy_name(policy));
        std::vector<int> seen_k;
        const PlanTimeline t = run_scenario(inst, policy, quick_params(42),
                                            [&](int k, const HorizonRun& run) {
                                                seen_k.push_back(k);
                                                REQUIRE(run.selected >= 0);
                                                REQUIRE(run.selected < int(run.front.size()));
                                            });
        CHECK(seen_k == std::vector<int>{1, 2, 3, 4, 5});
        REQUIRE(t.entries.size() == 6);

        double total = 0.0;
        for (size_t k = 1; k < t.entries.size(); ++k) {
            const auto& prev = t.entries[k - 1].plan;
            const auto& cur = t.entries[k].plan;

            // Monotone build-out, within bounds.
            for (size_t i = 0; i < cur.x.size(); ++i) {
                CHECK(cur.x[i] >= prev.x[i]);
                CHECK(cur.x[i] <= inst.max_scale);
            }
            for (size_t j = 0; j < cur.y.size(); ++j) {
                CHECK(cur.y[j] >= prev.y[j]);
                CHECK(cur.y[j] <= inst.max_piles);
            }

            // Reported economics agree with the straight-line oracle.
            const double cost = oracle::cost_meur_ref(prev.x, prev.y, cur.x, cur.y, inst);
            CHECK(cur.cost_meur == doctest::Approx(cost).epsilon(1e-9));
            CHECK(cur.cost_meur <= inst.budget_meur[k - 1] + 1e-9);
            CHECK(cur.coverage ==
                  doctest::Approx(oracle::coverage_ref(cur.x, cur.y, inst,
                                                       inst.penetration[k - 1]))
                      .epsilon(1e-9));
            CHECK(oracle::feasible_ref(prev.x, prev.y, cur.x, cur.y, inst, int(k)));

            // Coverage never drops: plans only grow and penetration rises.
            CHECK(cur.coverage + 1e-9 >= prev.coverage);
            total += cur.cost_meur;

            // Facility counters re-derived by hand.
            int ns = 0, nt = 0, as = 0, at = 0;
            for (size_t i = 0; i < cur.x.size(); ++i) {
                ns += cur.x[i] > 0 && prev.x[i] == 0;
                as += cur.x[i] > 0;
            }
            for (size_t j = 0; j < cur.y.size(); ++j) {
                nt += cur.y[j] > 0 && prev.y[j] == 0;
                at += cur.y[j] > 0;
            }
            CHECK(t.entries[k].new_stations == ns);
            CHECK(t.entries[k].new_togo == nt);
            CHECK(t.entries[k].active_stations == as);
            CHECK(t.entries[k].active_togo == at);
        }
        CHECK(t.total_cost_meur == doctest::Approx(total).epsilon(1e-12));
    }
}

TEST_CASE("scenario runs reproduce from a single seed") {
    const PlanningInstance inst = oracle::make_instance(small_spec());
    const PlanTimeline a =
        run_scenario(inst, ScenarioPolicy::median_coverage_lookahead, quick_params(4));
    const PlanTimeline b =
        run_scenario(inst, ScenarioPolicy::median_coverage_lookahead, quick_params(4));
    REQUIRE(a.entries.size() == b.entries.size());
    for (size_t k = 0; k < a.entries.size(); ++k) {
        CHECK(a.entries[k].plan.x == b.entries[k].plan.x);
        CHECK(a.entries[k].plan.y == b.entries[k].plan.y);
        CHECK(a.entries[k].plan.cost_meur == b.entries[k].plan.cost_meur);
    }
    CHECK(a.total_cost_meur == b.total_cost_meur);
    CHECK(a.final_coverage == b.final_coverage);
}

TEST_CASE("myopic policy optimizes with zeroed look-ahead weights") {
    const PlanningInstance inst = oracle::make_instance(small_spec());
    const EvolveParams params = quick_params(8);

    std::vector<HorizonSolution> first_front;
    run_scenario(inst, ScenarioPolicy::max_coverage_myopic, params,
                 [&](int k, const HorizonRun& run) {
                     if (k == 1) first_front = run.front;
                 });

    PlanningInstance myopic = inst;
    myopic.gamma.assign(myopic.num_horizons(), 0.0);
    EvolveParams stage = params;
    stage.seed = params.seed + 1;
    const auto expect = evolve(myopic, initial_solution(myopic), 1, stage);

    REQUIRE(first_front.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i) {
        CHECK(first_front[i].x == expect[i].x);
        CHECK(first_front[i].y == expect[i].y);
    }
}

TEST_CASE("sensitivity sweep scales budgets and keeps the seed schedule") {
    const PlanningInstance inst = oracle::make_instance(small_spec());
    const EvolveParams params = quick_params(21);
    const ScenarioPolicy policy = ScenarioPolicy::max_coverage_lookahead;

    const auto rows = sensitivity_sweep(inst, policy, {0.5, 1.0, 1.5}, params);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.coverage.size() == size_t(inst.num_horizons()));
        CHECK(row.final_coverage == doctest::Approx(row.coverage.back()));
        for (size_t k = 1; k < row.coverage.size(); ++k) {
            CHECK(row.coverage[k] + 1e-9 >= row.coverage[k - 1]);
        }
    }
    CHECK(rows[0].theta == 0.5);
    CHECK(rows[2].theta == 1.5);

    // The unit cell reproduces the plain scenario run exactly.
    const PlanTimeline plain = run_scenario(inst, policy, params);
    CHECK(rows[1].total_cost_meur == doctest::Approx(plain.total_cost_meur).epsilon(1e-12));
    CHECK(rows[1].final_coverage == doctest::Approx(plain.final_coverage).epsilon(1e-12));
    for (int k = 1; k <= inst.num_horizons(); ++k) {
        CHECK(rows[1].coverage[k - 1] ==
              doctest::Approx(plain.entries[k].plan.coverage).epsilon(1e-12));
    }

    // A bigger budget never hurts by much: totals stay within the scaled caps.
    for (const auto& row : rows) {
        double cap = 0.0;
        for (double b : inst.budget_meur) cap += b * row.theta;
        CHECK(row.total_cost_meur <= cap + 1e-9);
    }

    try {
        sensitivity_sweep(inst, policy, {}, params);
        FAIL("expected invalid_config");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_config);
    }
    try {
        sensitivity_sweep(inst, policy, {1.0, 0.0}, params);
        FAIL("expected invalid_config");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_config);
    }
}
