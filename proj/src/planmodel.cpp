#include "chargeplan/planmodel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chargeplan/errors.hpp"

namespace chargeplan {

std::vector<double> default_gamma(int num_horizons) {
    std::vector<double> g(num_horizons, 1.0);
    if (num_horizons > 0) g.back() = 0.0;
    return g;
}

void PlanningInstance::finalize() {
    const int s = max_scale;
    const int K = num_horizons();
    auto check = [](bool ok, const std::string& msg) {
        if (!ok) fail(Errc::invalid_config, msg);
    };
    check(s >= 1, "max scale s must be >= 1");
    check(max_piles >= 1, "max piles n must be >= 1");
    check(static_cast<int>(cap_scale.size()) == s + 1, "cap_l needs s+1 entries");
    check(cap_scale[0] == 0.0, "cap_0 must be 0");
    for (int l = 1; l <= s; ++l) {
        check(cap_scale[l] > cap_scale[l - 1], "cap_l must be strictly increasing");
    }
    check(cap_pile > 0.0, "cap_t must be positive");
    check(pile_cost_eur >= 0.0, "c_t must be non-negative");
    check(static_cast<int>(station_cost_meur.size()) == s + 1,
          "station cost matrix needs s+1 rows");
    for (int a = 0; a <= s; ++a) {
        check(static_cast<int>(station_cost_meur[a].size()) == s + 1,
              "station cost matrix needs s+1 columns");
        check(station_cost_meur[a][a] == 0.0, "station cost diagonal must be 0");
        for (int b = a + 1; b <= s; ++b) {
            check(station_cost_meur[a][b] >= 0.0 && std::isfinite(station_cost_meur[a][b]),
                  "station upgrade costs must be finite and non-negative");
        }
    }
    check(K >= 1, "at least one horizon required");
    for (int k = 0; k < K; ++k) {
        check(penetration[k] > 0.0 && penetration[k] <= 1.0, "p^k must lie in (0, 1]");
        if (k > 0) check(penetration[k] >= penetration[k - 1], "p^k must be non-decreasing");
    }
    check(static_cast<int>(budget_meur.size()) == K, "b^k needs one entry per horizon");
    for (double b : budget_meur) check(b >= 0.0, "budgets must be non-negative");
    for (const auto* v : {&min_new_stations, &max_new_stations, &min_new_togo, &max_new_togo}) {
        check(static_cast<int>(v->size()) == K, "facility count bounds need one entry per horizon");
    }
    for (int k = 0; k < K; ++k) {
        check(min_new_stations[k] >= 0 && min_new_stations[k] <= max_new_stations[k],
              "Nmin/Nmax bounds inconsistent");
        check(min_new_togo[k] >= 0 && min_new_togo[k] <= max_new_togo[k],
              "Mmin/Mmax bounds inconsistent");
    }
    if (gamma.empty()) gamma = default_gamma(K);
    check(static_cast<int>(gamma.size()) == K, "gamma needs one entry per horizon");
    check(min_station_spacing_km >= 0.0, "dist_min must be non-negative");

    const int I = num_stations();
    const int J = num_togo();
    if (x0.empty()) x0.assign(I, 0);
    if (y0.empty()) y0.assign(J, 0);
    check(static_cast<int>(x0.size()) == I && static_cast<int>(y0.size()) == J,
          "horizon-0 layout size mismatch");
    for (int i = 0; i < I; ++i) check(x0[i] >= 0 && x0[i] <= s, "initial scale out of bounds");
    for (int j = 0; j < J; ++j) {
        check(y0[j] >= 0 && y0[j] <= max_piles, "initial pile count out of bounds");
    }
    for (int i = 0; i < I; ++i) check(stations[i].q >= 0.0, "station q must be non-negative");
    for (int j = 0; j < J; ++j) check(togo[j].q >= 0.0, "togo q must be non-negative");

    station_dist_km.assign(I, std::vector<double>(I, 0.0));
    spacing_exempt.assign(I, std::vector<char>(I, 0));
    for (int i = 0; i < I; ++i) {
        for (int j = i + 1; j < I; ++j) {
            const double d =
                geo_distance(stations[i].location, stations[j].location, mode) / 1000.0;
            station_dist_km[i][j] = station_dist_km[j][i] = d;
            const char exempt = (x0[i] > 0 && x0[j] > 0) ? 1 : 0;
            spacing_exempt[i][j] = spacing_exempt[j][i] = exempt;
        }
    }
}

namespace {

uint64_t fnv1a(uint64_t h, const void* data, size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

uint64_t fnv1a_str(uint64_t h, const std::string& s) { return fnv1a(h, s.data(), s.size()); }

uint64_t fnv1a_f64(uint64_t h, double v) { return fnv1a(h, &v, sizeof v); }

uint64_t fnv1a_i32(uint64_t h, int v) { return fnv1a(h, &v, sizeof v); }

} // namespace

uint64_t PlanningInstance::hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a_i32(h, static_cast<int>(mode));
    for (const auto* list : {&stations, &togo}) {
        h = fnv1a_i32(h, static_cast<int>(list->size()));
        for (const auto& site : *list) {
            h = fnv1a_str(h, site.site_id);
            h = fnv1a_f64(h, site.location.lon);
            h = fnv1a_f64(h, site.location.lat);
            h = fnv1a_f64(h, site.q);
            h = fnv1a_i32(h, site.initial_level);
        }
    }
    h = fnv1a_i32(h, max_scale);
    h = fnv1a_i32(h, max_piles);
    for (double c : cap_scale) h = fnv1a_f64(h, c);
    h = fnv1a_f64(h, cap_pile);
    h = fnv1a_f64(h, pile_cost_eur);
    for (const auto& row : station_cost_meur) {
        for (double c : row) h = fnv1a_f64(h, c);
    }
    for (double p : penetration) h = fnv1a_f64(h, p);
    for (double b : budget_meur) h = fnv1a_f64(h, b);
    for (const auto* v : {&min_new_stations, &max_new_stations, &min_new_togo, &max_new_togo}) {
        for (int b : *v) h = fnv1a_i32(h, b);
    }
    h = fnv1a_f64(h, min_station_spacing_km);
    for (double g : gamma) h = fnv1a_f64(h, g);
    for (int v : x0) h = fnv1a_i32(h, v);
    for (int v : y0) h = fnv1a_i32(h, v);
    return h;
}

const char* violation_kind_name(Violation::Kind k) {
    switch (k) {
    case Violation::Kind::budget: return "budget";
    case Violation::Kind::spacing: return "spacing";
    case Violation::Kind::downgrade: return "downgrade";
    case Violation::Kind::station_count: return "station_count";
    case Violation::Kind::togo_count: return "togo_count";
    case Violation::Kind::scale_bounds: return "scale_bounds";
    case Violation::Kind::pile_bounds: return "pile_bounds";
    }
    return "unknown";
}

HorizonSolution initial_solution(const PlanningInstance& inst) {
    HorizonSolution sol;
    sol.x = inst.x0;
    sol.y = inst.y0;
    sol.cost_meur = 0.0;
    sol.coverage = 0.0; // no electrified demand before horizon 1
    sol.lookahead_coverage =
        inst.num_horizons() > 0 ? coverage_at_penetration(sol, inst, inst.penetration[0]) : 0.0;
    sol.feasible = true;
    return sol;
}

double horizon_cost(const HorizonSolution& prev, const HorizonSolution& cur,
                    const PlanningInstance& inst) {
    const int I = inst.num_stations();
    const int J = inst.num_togo();
    double cost_eur = 0.0;
    for (int i = 0; i < I; ++i) {
        const int from = prev.x[i];
        const int to = cur.x[i];
        if (to < from) {
            fail(Errc::downgrade_attempt, "station " + inst.stations[i].site_id +
                                              " scale would drop from " + std::to_string(from) +
                                              " to " + std::to_string(to));
        }
        cost_eur += inst.station_cost_meur[from][to] * 1e6;
    }
    for (int j = 0; j < J; ++j) {
        const int added = cur.y[j] - prev.y[j];
        if (added < 0) {
            fail(Errc::downgrade_attempt, "togo site " + inst.togo[j].site_id +
                                              " piles would drop from " +
                                              std::to_string(prev.y[j]) + " to " +
                                              std::to_string(cur.y[j]));
        }
        cost_eur += added * inst.pile_cost_eur;
    }
    return cost_eur / 1e6;
}

double coverage_at_penetration(const HorizonSolution& sol, const PlanningInstance& inst,
                               double p) {
    double total = 0.0;
    const int I = inst.num_stations();
    const int J = inst.num_togo();
    for (int i = 0; i < I; ++i) {
        total += std::min(inst.stations[i].q * p, inst.cap_scale[sol.x[i]]);
    }
    for (int j = 0; j < J; ++j) {
        total += std::min(inst.togo[j].q * p, inst.cap_pile * sol.y[j]);
    }
    return total;
}

double horizon_coverage(const HorizonSolution& sol, const PlanningInstance& inst, int k) {
    if (k < 1 || k > inst.num_horizons()) {
        fail(Errc::internal, "horizon index " + std::to_string(k) + " out of range");
    }
    return coverage_at_penetration(sol, inst, inst.penetration[k - 1]);
}

std::pair<double, double> objective_pair(const HorizonSolution& sol, const HorizonSolution& prev,
                                         const PlanningInstance& inst, int k) {
    const double z1 = horizon_cost(prev, sol, inst);
    const double dk = horizon_coverage(sol, inst, k);
    const double g = inst.gamma[k - 1];
    double lookahead = 0.0;
    if (g != 0.0 && k < inst.num_horizons()) {
        lookahead = coverage_at_penetration(sol, inst, inst.penetration[k]);
    }
    return {z1, -(dk + g * lookahead)};
}

std::vector<Violation> check_constraints(const HorizonSolution& sol, const HorizonSolution& prev,
                                         const PlanningInstance& inst, int k) {
    std::vector<Violation> out;
    const int I = inst.num_stations();
    const int J = inst.num_togo();
    const int s = inst.max_scale;
    const int n = inst.max_piles;

    // Variable bounds and monotonicity first; the cost below is only defined
    // for in-bounds, non-decreasing states.
    bool evaluable = true;
    for (int i = 0; i < I; ++i) {
        if (sol.x[i] < 0 || sol.x[i] > s) {
            out.push_back({Violation::Kind::scale_bounds,
                           "station " + inst.stations[i].site_id,
                           double(std::max(-sol.x[i], sol.x[i] - s)),
                           double(std::max(-sol.x[i], sol.x[i] - s)) / std::max(1, s)});
            evaluable = false;
        }
        if (sol.x[i] < prev.x[i]) {
            const double mag = prev.x[i] - sol.x[i];
            out.push_back({Violation::Kind::downgrade, "station " + inst.stations[i].site_id, mag,
                           mag / std::max(1, s)});
            evaluable = false;
        }
    }
    for (int j = 0; j < J; ++j) {
        if (sol.y[j] < 0 || sol.y[j] > n) {
            out.push_back({Violation::Kind::pile_bounds, "togo " + inst.togo[j].site_id,
                           double(std::max(-sol.y[j], sol.y[j] - n)),
                           double(std::max(-sol.y[j], sol.y[j] - n)) / std::max(1, n)});
            evaluable = false;
        }
        if (sol.y[j] < prev.y[j]) {
            const double mag = prev.y[j] - sol.y[j];
            out.push_back({Violation::Kind::downgrade, "togo " + inst.togo[j].site_id, mag,
                           mag / std::max(1, n)});
            evaluable = false;
        }
    }

    const double budget = inst.budget_meur[k - 1];
    if (evaluable) {
        const double cost = horizon_cost(prev, sol, inst);
        if (cost > budget) {
            const double mag = cost - budget;
            out.push_back({Violation::Kind::budget,
                           "cost " + std::to_string(cost) + " MEUR vs budget " +
                               std::to_string(budget),
                           mag, mag / std::max(budget, 1e-9)});
        }
    }

    // Station spacing over active pairs, pre-existing pairs exempt.
    for (int i = 0; i < I; ++i) {
        if (!sol.station_active(i)) continue;
        for (int j = i + 1; j < I; ++j) {
            if (!sol.station_active(j)) continue;
            if (inst.spacing_exempt[i][j]) continue;
            const double d = inst.station_dist_km[i][j];
            if (d < inst.min_station_spacing_km) {
                const double mag = inst.min_station_spacing_km - d;
                out.push_back({Violation::Kind::spacing,
                               inst.stations[i].site_id + " / " + inst.stations[j].site_id, mag,
                               mag / std::max(inst.min_station_spacing_km, 1e-9)});
            }
        }
    }

    // Newly activated facility counts, inclusive bounds.
    int new_stations = 0;
    for (int i = 0; i < I; ++i) {
        if (sol.x[i] > 0 && prev.x[i] == 0) ++new_stations;
    }
    int new_togo = 0;
    for (int j = 0; j < J; ++j) {
        if (sol.y[j] > 0 && prev.y[j] == 0) ++new_togo;
    }
    const int nmin = inst.min_new_stations[k - 1];
    const int nmax = inst.max_new_stations[k - 1];
    if (new_stations < nmin || new_stations > nmax) {
        const double mag = new_stations < nmin ? nmin - new_stations : new_stations - nmax;
        out.push_back({Violation::Kind::station_count,
                       std::to_string(new_stations) + " new stations vs [" +
                           std::to_string(nmin) + ", " + std::to_string(nmax) + "]",
                       mag, mag / std::max(1, nmax)});
    }
    const int mmin = inst.min_new_togo[k - 1];
    const int mmax = inst.max_new_togo[k - 1];
    if (new_togo < mmin || new_togo > mmax) {
        const double mag = new_togo < mmin ? mmin - new_togo : new_togo - mmax;
        out.push_back({Violation::Kind::togo_count,
                       std::to_string(new_togo) + " new togo sites vs [" + std::to_string(mmin) +
                           ", " + std::to_string(mmax) + "]",
                       mag, mag / std::max(1, mmax)});
    }
    return out;
}

double violation_scalar(const std::vector<Violation>& violations) {
    double total = 0.0;
    for (const auto& v : violations) total += v.normalized;
    return total;
}

} // namespace chargeplan
