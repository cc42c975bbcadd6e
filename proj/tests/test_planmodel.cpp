#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "chargeplan/errors.hpp"
#include "chargeplan/planmodel.hpp"
#include "oracles.hpp"

using namespace chargeplan;

namespace {

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error to be thrown");
    return Errc::internal;
}

HorizonSolution state(std::vector<int> x, std::vector<int> y) {
    HorizonSolution sol;
    sol.x = std::move(x);
    sol.y = std::move(y);
    return sol;
}

bool has_kind(const std::vector<Violation>& vs, Violation::Kind kind) {
    for (const auto& v : vs) {
        if (v.kind == kind) return true;
    }
    return false;
}

// Random monotone (prev, cur) pair within the instance bounds.
struct Triple {
    HorizonSolution prev, cur;
};

Triple random_transition(const PlanningInstance& inst, std::mt19937_64& rng) {
    Triple t;
    for (int i = 0; i < inst.num_stations(); ++i) {
        const int lo = int(rng() % uint64_t(inst.max_scale + 1));
        t.prev.x.push_back(lo);
        t.cur.x.push_back(lo + int(rng() % uint64_t(inst.max_scale - lo + 1)));
    }
    for (int j = 0; j < inst.num_togo(); ++j) {
        const int lo = int(rng() % uint64_t(inst.max_piles + 1));
        t.prev.y.push_back(lo);
        t.cur.y.push_back(lo + int(rng() % uint64_t(inst.max_piles - lo + 1)));
    }
    return t;
}

PlanningInstance random_instance(std::mt19937_64& rng) {
    oracle::InstanceSpec spec;
    spec.stations = 1 + int(rng() % 8);
    spec.togo = int(rng() % 5);
    spec.q_station.clear();
    for (int i = 0; i < spec.stations; ++i) spec.q_station.push_back(double(rng() % 2000) / 10.0);
    spec.q_togo.clear();
    for (int j = 0; j < spec.togo; ++j) spec.q_togo.push_back(double(rng() % 600) / 10.0);
    if (rng() % 2 == 0) {
        // Randomized strictly increasing capacity ladder and upgrade table.
        spec.cap_scale.assign(1, 0.0);
        for (int l = 1; l <= 5; ++l) {
            spec.cap_scale.push_back(spec.cap_scale.back() + 1.0 + double(rng() % 200) / 10.0);
        }
        spec.cost.assign(6, std::vector<double>(6, 0.0));
        for (int a = 0; a < 6; ++a) {
            for (int b = a + 1; b < 6; ++b) {
                spec.cost[a][b] = double(rng() % 1000) / 500.0;
            }
        }
    }
    spec.p.clear();
    const int K = 1 + int(rng() % 5);
    double p = 0.0;
    for (int k = 0; k < K; ++k) {
        p = std::min(1.0, p + 0.05 + double(rng() % 30) / 100.0);
        spec.p.push_back(p);
    }
    spec.b.assign(K, 10.0);
    spec.cap_pile = 0.5 + double(rng() % 40) / 10.0;
    spec.pile_cost_eur = double(rng() % 5000);
    return oracle::make_instance(spec);
}

} // namespace

TEST_CASE("default look-ahead weights end with zero") {
    CHECK(default_gamma(5) == std::vector<double>{1, 1, 1, 1, 0});
    CHECK(default_gamma(1) == std::vector<double>{0});
}

TEST_CASE("instance validation rejects malformed tables") {
    auto broken = [](auto mutate) {
        oracle::InstanceSpec spec;
        PlanningInstance inst = oracle::make_instance(spec);
        mutate(inst);
        return code_of([&] { inst.finalize(); });
    };
    CHECK(broken([](PlanningInstance& i) { i.cap_scale[0] = 5.0; }) == Errc::invalid_config);
    CHECK(broken([](PlanningInstance& i) { i.cap_scale[3] = i.cap_scale[2]; }) ==
          Errc::invalid_config);
    CHECK(broken([](PlanningInstance& i) { i.penetration[2] = 0.1; }) == Errc::invalid_config);
    CHECK(broken([](PlanningInstance& i) { i.penetration[4] = 1.5; }) == Errc::invalid_config);
    CHECK(broken([](PlanningInstance& i) { i.budget_meur.pop_back(); }) == Errc::invalid_config);
    CHECK(broken([](PlanningInstance& i) { i.station_cost_meur[2][2] = 0.1; }) ==
          Errc::invalid_config);
    CHECK(broken([](PlanningInstance& i) { i.x0.assign(i.num_stations(), 9); }) ==
          Errc::invalid_config);
    CHECK(broken([](PlanningInstance& i) { i.min_new_stations.assign(5, 7); }) ==
          Errc::invalid_config);
    CHECK(broken([](PlanningInstance& i) { i.stations[0].q = -1.0; }) == Errc::invalid_config);
    CHECK(broken([](PlanningInstance& i) { i.gamma.assign(2, 1.0); }) == Errc::invalid_config);
}

TEST_CASE("construction cost reproduces the cost table entries") {
    oracle::InstanceSpec spec;
    spec.stations = 1;
    spec.togo = 1;
    const PlanningInstance inst = oracle::make_instance(spec);

    // Direct jump from bare ground to scale 2.
    CHECK(horizon_cost(state({0}, {0}), state({2}, {0}), inst) == doctest::Approx(0.6));
    // No change costs nothing.
    CHECK(horizon_cost(state({3}, {2}), state({3}, {2}), inst) == 0.0);
    // Five new piles at 2000 EUR each.
    CHECK(horizon_cost(state({0}, {0}), state({0}, {5}), inst) == doctest::Approx(0.01));
    // Stepwise upgrades cost more than the direct jump.
    const double direct = horizon_cost(state({0}, {0}), state({2}, {0}), inst);
    const double stepwise = horizon_cost(state({0}, {0}), state({1}, {0}), inst) +
                            horizon_cost(state({1}, {0}), state({2}, {0}), inst);
    CHECK(stepwise > direct);

    CHECK(code_of([&] { horizon_cost(state({2}, {0}), state({1}, {0}), inst); }) ==
          Errc::downgrade_attempt);
    CHECK(code_of([&] { horizon_cost(state({0}, {3}), state({0}, {2}), inst); }) ==
          Errc::downgrade_attempt);
}

TEST_CASE("coverage takes the demand/capacity minimum per site") {
    oracle::InstanceSpec spec;
    spec.stations = 1;
    spec.togo = 1;
    spec.q_station = {100.0};
    spec.q_togo = {10.0};
    const PlanningInstance inst = oracle::make_instance(spec);

    CHECK(coverage_at_penetration(state({1}, {0}), inst, 0.2) == doctest::Approx(20.0));
    CHECK(coverage_at_penetration(state({1}, {0}), inst, 1.0) == doctest::Approx(30.0));
    // Three piles of 2 veh/h cap against q*p = 10.
    CHECK(coverage_at_penetration(state({0}, {3}), inst, 1.0) == doctest::Approx(6.0));
    CHECK(coverage_at_penetration(state({5}, {5}), inst, 0.0) == 0.0);

    CHECK(horizon_coverage(state({1}, {0}), inst, 1) == doctest::Approx(20.0));
    CHECK(code_of([&] { horizon_coverage(state({1}, {0}), inst, 9); }) == Errc::internal);
}

TEST_CASE("objective pair applies the look-ahead schedule") {
    oracle::InstanceSpec spec;
    spec.stations = 1;
    spec.togo = 0;
    spec.q_station = {100.0};
    const PlanningInstance inst = oracle::make_instance(spec);
    const HorizonSolution prev = initial_solution(inst);

    // Horizon 1 at p=0.2 with look-ahead to p=0.4: -(20 + 30).
    const auto [z1_a, z2_a] = objective_pair(state({1}, {}), prev, inst, 1);
    CHECK(z1_a == doctest::Approx(0.5));
    CHECK(z2_a == doctest::Approx(-50.0));

    // Final horizon ignores the look-ahead term.
    const auto [z1_b, z2_b] = objective_pair(state({1}, {}), prev, inst, 5);
    CHECK(z1_b == doctest::Approx(0.5));
    CHECK(z2_b == doctest::Approx(-30.0));

    // Degenerate schedule p^{k+1} = p^k doubles the coverage term.
    oracle::InstanceSpec flat;
    flat.stations = 1;
    flat.togo = 0;
    flat.q_station = {100.0};
    flat.p = {0.5, 0.5};
    flat.b = {10.0, 10.0};
    flat.gamma = {1.0, 0.0};
    const PlanningInstance inst2 = oracle::make_instance(flat);
    const auto [z1_c, z2_c] = objective_pair(state({1}, {}), initial_solution(inst2), inst2, 1);
    CHECK(z1_c == doctest::Approx(0.5));
    CHECK(z2_c == doctest::Approx(-2.0 * 30.0));
}

TEST_CASE("initial layout is a zero-cost solution") {
    oracle::InstanceSpec spec;
    spec.stations = 2;
    spec.togo = 1;
    spec.x0 = {1, 0};
    spec.y0 = {2};
    spec.q_station = {100.0, 80.0};
    spec.q_togo = {10.0};
    const PlanningInstance inst = oracle::make_instance(spec);
    const HorizonSolution sol = initial_solution(inst);
    CHECK(sol.x == spec.x0);
    CHECK(sol.y == spec.y0);
    CHECK(sol.cost_meur == 0.0);
    CHECK(sol.coverage == 0.0); // nothing electrified before horizon 1
    CHECK(sol.lookahead_coverage ==
          doctest::Approx(coverage_at_penetration(sol, inst, inst.penetration[0])));
    CHECK(sol.feasible);
}

TEST_CASE("constraint checks report each violated rule with magnitude") {
    oracle::InstanceSpec spec;
    spec.stations = 6;
    spec.togo = 2;
    spec.spacing_km = 10.0;
    spec.b = {1.5, 1.5, 1.5, 1.5, 1.5};
    const PlanningInstance inst = oracle::make_instance(spec);
    const HorizonSolution prev = initial_solution(inst);

    // Two direct 0->4 upgrades burst the 1.5 MEUR budget by 0.1.
    {
        const auto vs = check_constraints(state({4, 4, 0, 0, 0, 0}, {0, 0}), prev, inst, 1);
        REQUIRE(vs.size() == 1);
        CHECK(vs[0].kind == Violation::Kind::budget);
        CHECK(vs[0].magnitude == doctest::Approx(0.1));
        CHECK(violation_scalar(vs) > 0.0);
    }

    // Six new stations break the per-horizon count cap of 5 (and the budget).
    {
        const auto vs =
            check_constraints(state({1, 1, 1, 1, 1, 1}, {0, 0}), prev, inst, 1);
        CHECK(has_kind(vs, Violation::Kind::station_count));
    }

    // Spacing: 2 km apart with a 3 km floor.
    {
        oracle::InstanceSpec tight = spec;
        tight.stations = 2;
        tight.spacing_km = 2.0;
        const PlanningInstance inst2 = oracle::make_instance(tight);
        const auto vs =
            check_constraints(state({1, 1}, {0, 0}), initial_solution(inst2), inst2, 1);
        REQUIRE(has_kind(vs, Violation::Kind::spacing));
        for (const auto& v : vs) {
            if (v.kind == Violation::Kind::spacing) CHECK(v.magnitude == doctest::Approx(1.0));
        }

        // The same pair is exempt when both stations pre-exist.
        oracle::InstanceSpec grand = tight;
        grand.x0 = {1, 1};
        const PlanningInstance inst3 = oracle::make_instance(grand);
        const auto vs2 =
            check_constraints(state({2, 2}, {0, 0}), initial_solution(inst3), inst3, 1);
        CHECK_FALSE(has_kind(vs2, Violation::Kind::spacing));
    }

    // Bound and monotonicity breaches are flagged as data.
    {
        const auto vs = check_constraints(state({7, 0, 0, 0, 0, 0}, {0, -1}),
                                          state({1, 0, 0, 0, 0, 0}, {1, 0}), inst, 1);
        CHECK(has_kind(vs, Violation::Kind::scale_bounds));
        CHECK(has_kind(vs, Violation::Kind::pile_bounds));
        CHECK(has_kind(vs, Violation::Kind::downgrade));
    }

    // A clean in-budget move is violation free.
    {
        const auto vs = check_constraints(state({2, 0, 0, 0, 0, 0}, {1, 0}), prev, inst, 1);
        CHECK(vs.empty());
        CHECK(violation_scalar(vs) == 0.0);
    }
}

TEST_CASE("cost and coverage match the straight-line oracle on random triples") {
    std::mt19937_64 rng(20260819);
    for (int trial = 0; trial < 300; ++trial) {
        const PlanningInstance inst = random_instance(rng);
        const auto t = random_transition(inst, rng);

        const double cost = horizon_cost(t.prev, t.cur, inst);
        const double cost_ref = oracle::cost_meur_ref(t.prev.x, t.prev.y, t.cur.x, t.cur.y, inst);
        CHECK(cost == doctest::Approx(cost_ref).epsilon(1e-9));
        CHECK(cost >= 0.0);

        const int K = inst.num_horizons();
        const int k = 1 + int(rng() % K);
        const double p = inst.penetration[k - 1];
        const double cov = coverage_at_penetration(t.cur, inst, p);
        CHECK(cov == doctest::Approx(oracle::coverage_ref(t.cur.x, t.cur.y, inst, p))
                         .epsilon(1e-9));

        // Monotone in the penetration rate and in the decision vector.
        CHECK(cov + 1e-12 >= coverage_at_penetration(t.prev, inst, p));
        if (k < K) {
            CHECK(coverage_at_penetration(t.cur, inst, inst.penetration[k]) + 1e-12 >= cov);
        }

        const auto [z1, z2] = objective_pair(t.cur, t.prev, inst, k);
        CHECK(z1 == doctest::Approx(cost_ref).epsilon(1e-9));
        CHECK(z2 == doctest::Approx(oracle::z2_ref(t.cur.x, t.cur.y, inst, k)).epsilon(1e-9));
    }
}

TEST_CASE("cost is additive over disjoint site subsets") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 50; ++trial) {
        const PlanningInstance inst = random_instance(rng);
        const auto t = random_transition(inst, rng);

        // Split the changes: `left` applies station changes only, `right`
        // applies to-go changes only.
        HorizonSolution left = t.prev;
        left.x = t.cur.x;
        HorizonSolution right = t.prev;
        right.y = t.cur.y;
        const double whole = horizon_cost(t.prev, t.cur, inst);
        const double parts =
            horizon_cost(t.prev, left, inst) + horizon_cost(t.prev, right, inst);
        CHECK(whole == doctest::Approx(parts).epsilon(1e-9));
    }
}

TEST_CASE("instance hashing tracks content") {
    oracle::InstanceSpec spec;
    const PlanningInstance a = oracle::make_instance(spec);
    const PlanningInstance b = oracle::make_instance(spec);
    CHECK(a.hash() == b.hash());

    oracle::InstanceSpec changed = spec;
    changed.q_station = {100, 100, 100, 99};
    CHECK(oracle::make_instance(changed).hash() != a.hash());

    oracle::InstanceSpec budget = spec;
    budget.b[4] = 2.0;
    CHECK(oracle::make_instance(budget).hash() != a.hash());
}
