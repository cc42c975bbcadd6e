#include "chargeplan/artifacts.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "chargeplan/errors.hpp"

namespace chargeplan {

using json = nlohmann::json;

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string format_meur(double v) { return format_fixed(v, 3); }

std::string format_vehh(double v) { return std::to_string(std::llround(v)); }

std::string format_hash(uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string join_levels(const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += '|';
        out += std::to_string(v[i]);
    }
    return out;
}

std::string render_centrality_csv(const CentralityReport& report) {
    std::string out = "rank,score,dc,cc,bc,node_id\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.rank) + ',' + format_fixed(row.score, 3) + ',' +
               format_fixed(row.dc, 3) + ',' + format_fixed(row.cc, 3) + ',' +
               format_fixed(row.bc, 3) + ',' + row.node_id + '\n';
    }
    return out;
}

std::string render_front_csv(const std::vector<HorizonSolution>& front) {
    std::string out = "solution_id,cost_meur,coverage_vehh,lookahead_coverage_vehh,x,y\n";
    for (size_t i = 0; i < front.size(); ++i) {
        const auto& s = front[i];
        out += std::to_string(i + 1) + ',' + format_meur(s.cost_meur) + ',' +
               format_vehh(s.coverage) + ',' + format_vehh(s.lookahead_coverage) + ',' +
               join_levels(s.x) + ',' + join_levels(s.y) + '\n';
    }
    return out;
}

std::string render_timeline_csv(const PlanTimeline& timeline) {
    std::string out = "k,cost_meur,coverage_vehh,new_stations,new_togo,active_stations,"
                      "active_togo,front_size,x,y\n";
    int new_stations = 0;
    int new_togo = 0;
    for (const auto& e : timeline.entries) {
        out += std::to_string(e.k) + ',' + format_meur(e.plan.cost_meur) + ',' +
               format_vehh(e.plan.coverage) + ',' + std::to_string(e.new_stations) + ',' +
               std::to_string(e.new_togo) + ',' + std::to_string(e.active_stations) + ',' +
               std::to_string(e.active_togo) + ',' + std::to_string(e.front_size) + ',' +
               join_levels(e.plan.x) + ',' + join_levels(e.plan.y) + '\n';
        new_stations += e.new_stations;
        new_togo += e.new_togo;
    }
    const auto& last = timeline.entries.back();
    out += "total," + format_meur(timeline.total_cost_meur) + ',' +
           format_vehh(timeline.final_coverage) + ',' + std::to_string(new_stations) + ',' +
           std::to_string(new_togo) + ',' + std::to_string(last.active_stations) + ',' +
           std::to_string(last.active_togo) + ",,,\n";
    return out;
}

std::string render_sweep_csv(const std::vector<SweepRow>& rows) {
    if (rows.empty()) return "theta\n";
    const size_t horizons = rows[0].coverage.size();
    std::string out = "theta";
    for (size_t k = 1; k <= horizons; ++k) out += ",coverage_h" + std::to_string(k);
    out += ",total_cost_meur,final_coverage_vehh,cost_pct_of_theta1,coverage_pct_of_theta1\n";

    const SweepRow* base = nullptr;
    for (const auto& r : rows) {
        if (r.theta == 1.0) base = &r;
    }

    for (const auto& r : rows) {
        out += format_fixed(r.theta, 2);
        for (double c : r.coverage) out += ',' + format_vehh(c);
        out += ',' + format_meur(r.total_cost_meur) + ',' + format_vehh(r.final_coverage);
        if (base != nullptr && base->total_cost_meur > 0.0) {
            out += ',' + format_fixed(100.0 * r.total_cost_meur / base->total_cost_meur, 1);
        } else {
            out += ",na";
        }
        if (base != nullptr && base->final_coverage > 0.0) {
            out += ',' + format_fixed(100.0 * r.final_coverage / base->final_coverage, 1);
        } else {
            out += ",na";
        }
        out += '\n';
    }
    return out;
}

std::string render_candidates_summary_csv(const CandidatePool& pool) {
    std::string out = "source,stations,togo\n";
    for (const SiteSource source :
         {SiteSource::existing, SiteSource::network_recommended, SiteSource::provider_selected,
          SiteSource::togo_poi}) {
        int stations = 0;
        int togo = 0;
        for (const auto& s : pool.stations) {
            if (s.source == source) ++stations;
        }
        for (const auto& s : pool.togo) {
            if (s.source == source) ++togo;
        }
        out += std::string(site_source_name(source)) + ',' + std::to_string(stations) + ',' +
               std::to_string(togo) + '\n';
    }
    out += "total," + std::to_string(pool.stations.size()) + ',' +
           std::to_string(pool.togo.size()) + '\n';
    return out;
}

namespace {

json site_feature(const CandidateSite& site) {
    json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "Point"},
                     {"coordinates", {site.location.lon, site.location.lat}}};
    f["properties"] = {{"site_id", site.site_id},
                       {"kind", site_kind_name(site.kind)},
                       {"source", site_source_name(site.source)},
                       {"q", site.q},
                       {"initial_level", site.initial_level}};
    return f;
}

} // namespace

std::string render_candidates_geojson(const CandidatePool& pool, CoordinateMode mode) {
    json doc;
    doc["type"] = "FeatureCollection";
    doc["coordinate_mode"] = coordinate_mode_name(mode);
    doc["features"] = json::array();
    for (const auto& s : pool.stations) doc["features"].push_back(site_feature(s));
    for (const auto& s : pool.togo) doc["features"].push_back(site_feature(s));
    return doc.dump(2) + "\n";
}

std::string render_plan_geojson(const PlanningInstance& inst, const PlanTimeline& timeline) {
    json doc;
    doc["type"] = "FeatureCollection";
    doc["coordinate_mode"] = coordinate_mode_name(inst.mode);
    doc["policy"] = policy_name(timeline.policy);
    doc["features"] = json::array();

    auto add_sites = [&](const std::vector<CandidateSite>& sites, bool is_station) {
        for (size_t i = 0; i < sites.size(); ++i) {
            json f = site_feature(sites[i]);
            json levels = json::array();
            for (const auto& e : timeline.entries) {
                levels.push_back(is_station ? e.plan.x[i] : e.plan.y[i]);
            }
            int built_horizon = -1;
            for (size_t k = 0; k < levels.size(); ++k) {
                if (levels[k].get<int>() > 0) {
                    built_horizon = static_cast<int>(k);
                    break;
                }
            }
            f["properties"]["levels"] = levels;
            f["properties"]["final_level"] = levels.back().get<int>();
            f["properties"]["built_horizon"] = built_horizon;
            f["properties"]["newly_built"] = built_horizon >= 1;
            doc["features"].push_back(std::move(f));
        }
    };
    add_sites(inst.stations, true);
    add_sites(inst.togo, false);
    return doc.dump(2) + "\n";
}

std::string render_manifest(const RunConfig& cfg, const std::string& command,
                            const std::vector<std::string>& outputs,
                            const PlanningInstance* inst) {
    json j;
    j["tool"] = {{"name", "chargeplan"}, {"version", "0.1.0"}};
    j["command"] = command;
    j["config"] = json::parse(cfg.canonical_json());
    j["config_hash"] = format_hash(cfg.hash());
    j["seed"] = cfg.algo.seed;
    j["rng"] = Rng::describe();
    if (inst != nullptr) {
        j["instance_hash"] = format_hash(inst->hash());
        j["instance_size"] = {{"stations", inst->num_stations()},
                              {"togo", inst->num_togo()},
                              {"horizons", inst->num_horizons()}};
    }
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::internal, "cannot write '" + path + "'");
    out << content;
    if (!out) fail(Errc::internal, "short write on '" + path + "'");
}

} // namespace chargeplan
