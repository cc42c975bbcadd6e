#include "chargeplan/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "chargeplan/csvio.hpp"
#include "chargeplan/errors.hpp"

namespace chargeplan {

const char* site_kind_name(SiteKind kind) {
    return kind == SiteKind::station ? "station" : "togo";
}

const char* site_source_name(SiteSource source) {
    switch (source) {
    case SiteSource::existing: return "existing";
    case SiteSource::network_recommended: return "network_recommended";
    case SiteSource::provider_selected: return "provider_selected";
    case SiteSource::togo_poi: return "togo_poi";
    }
    return "existing";
}

SiteKind site_kind_from_name(const std::string& name) {
    const std::string s = lowercase(trim(name));
    if (s == "station") return SiteKind::station;
    if (s == "togo") return SiteKind::togo;
    fail(Errc::malformed_file, "unknown site kind '" + name + "'");
}

SiteSource site_source_from_name(const std::string& name) {
    const std::string s = lowercase(trim(name));
    if (s == "existing") return SiteSource::existing;
    if (s == "network_recommended") return SiteSource::network_recommended;
    if (s == "provider_selected") return SiteSource::provider_selected;
    if (s == "togo_poi") return SiteSource::togo_poi;
    fail(Errc::malformed_file, "unknown site source '" + name + "'");
}

std::map<SiteSource, int> CandidatePool::provenance_counts() const {
    std::map<SiteSource, int> counts;
    for (const auto& s : stations) counts[s.source] += 1;
    for (const auto& s : togo) counts[s.source] += 1;
    return counts;
}

void CandidatePool::sort_sites() {
    auto by_id = [](const CandidateSite& a, const CandidateSite& b) {
        return natural_less(a.site_id, b.site_id);
    };
    std::sort(stations.begin(), stations.end(), by_id);
    std::sort(togo.begin(), togo.end(), by_id);
}

CandidatePool select_from_pois(const std::vector<Poi>& pois, const HighwayGraph& g,
                               double radius_m, double densify_step_m) {
    if (radius_m <= 0.0) fail(Errc::invalid_config, "buffer radius must be positive");
    CandidatePool pool;
    for (const auto& poi : pois) {
        if (poi.label == PoiLabel::other) continue;
        if (!within_buffer(poi.location, g, radius_m, densify_step_m)) continue;
        CandidateSite site;
        site.site_id = poi.id;
        site.location = poi.location;
        if (poi.label == PoiLabel::supermarket) {
            site.kind = SiteKind::togo;
            site.source = SiteSource::togo_poi;
            pool.togo.push_back(std::move(site));
        } else {
            site.kind = SiteKind::station;
            site.source = SiteSource::existing;
            pool.stations.push_back(std::move(site));
        }
    }
    pool.sort_sites();
    return pool;
}

namespace {

bool near_any(const GeoPoint& p, const std::vector<GeoPoint>& accepted, CoordinateMode mode,
              double radius_m) {
    for (const auto& loc : accepted) {
        if (geo_distance(p, loc, mode) <= radius_m) return true;
    }
    return false;
}

// Moves `offset_m` from the junction toward the neighbor along the arc chord.
GeoPoint offset_towards(const GeoPoint& from, const GeoPoint& to, double offset_m,
                        CoordinateMode mode) {
    const double len = geo_distance(from, to, mode);
    if (len <= 0.0) return from;
    const double t = std::min(1.0, offset_m / len);
    return {from.lon + t * (to.lon - from.lon), from.lat + t * (to.lat - from.lat)};
}

} // namespace

std::vector<CandidateSite> select_from_network(const CentralityReport& report,
                                               const HighwayGraph& g, int top_k,
                                               const NetworkSelectOptions& opts,
                                               const std::vector<CandidateSite>& existing) {
    if (top_k > g.num_nodes()) {
        fail(Errc::invalid_config, "top_k exceeds the number of network nodes");
    }
    std::vector<GeoPoint> accepted;
    accepted.reserve(existing.size());
    for (const auto& s : existing) accepted.push_back(s.location);

    std::vector<CandidateSite> out;
    for (const std::string& node_id : report.top(top_k)) {
        const int ni = g.index_of(node_id);
        if (ni < 0) fail(Errc::internal, "ranked node '" + node_id + "' missing from graph");

        std::vector<std::pair<std::string, GeoPoint>> locs;
        locs.emplace_back("net:" + node_id, g.node_pos[ni]);
        if (opts.sites_per_node > 1) {
            // Arm sites along incident arcs, in deterministic neighbor order.
            for (const auto& [nbr, ai] : g.adj[ni]) {
                if (static_cast<int>(locs.size()) >= opts.sites_per_node) break;
                locs.emplace_back("net:" + node_id + ":" + g.arcs[ai].arc_id,
                                  offset_towards(g.node_pos[ni], g.node_pos[nbr], opts.offset_m,
                                                 g.mode));
            }
        }
        for (auto& [id, pos] : locs) {
            if (near_any(pos, accepted, g.mode, opts.dedupe_radius_m)) continue;
            CandidateSite site;
            site.site_id = id;
            site.kind = SiteKind::station;
            site.source = SiteSource::network_recommended;
            site.location = pos;
            out.push_back(std::move(site));
            accepted.push_back(pos);
        }
    }
    return out;
}

CandidatePool attach_demand(CandidatePool pool, const std::vector<DemandPoint>& demand,
                            CoordinateMode mode) {
    if (demand.empty()) fail(Errc::no_demand_data, "no demand points supplied");
    auto assign = [&](CandidateSite& site) {
        double best = std::numeric_limits<double>::infinity();
        size_t best_i = 0;
        for (size_t i = 0; i < demand.size(); ++i) {
            const double d = geo_distance(site.location, demand[i].location, mode);
            if (d < best) { // strict: equidistant keeps the lower index
                best = d;
                best_i = i;
            }
        }
        site.q = demand[best_i].q;
    };
    for (auto& site : pool.stations) assign(site);
    for (auto& site : pool.togo) assign(site);
    return pool;
}

std::map<std::string, int> load_layout(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::malformed_file, "cannot open layout file '" + path + "'");
    std::map<std::string, int> layout;
    CsvContext ctx{path, 0};
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++ctx.line;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto fields = split_fields(t);
        if (!header_seen) {
            header_seen = true;
            if (lowercase(fields[0]) == "site_id") continue; // header row
        }
        if (fields.size() != 2) {
            fail(Errc::malformed_file, ctx.where() + ": layout row needs 'site_id,level'");
        }
        const long long level = parse_int(fields[1], ctx, "level");
        if (level < 0) fail(Errc::malformed_file, ctx.where() + ": negative level");
        if (!layout.emplace(fields[0], int(level)).second) {
            fail(Errc::malformed_file, ctx.where() + ": duplicate site '" + fields[0] + "'");
        }
    }
    return layout;
}

std::vector<CandidateSite> load_provider_sites(const std::string& path, CoordinateMode mode) {
    std::ifstream in(path);
    if (!in) fail(Errc::malformed_file, "cannot open provider sites file '" + path + "'");
    std::vector<CandidateSite> out;
    CsvContext ctx{path, 0};
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++ctx.line;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto fields = split_fields(t);
        if (!header_seen) {
            header_seen = true;
            if (lowercase(fields[0]) == "site_id") continue;
        }
        if (fields.size() != 3) {
            fail(Errc::malformed_file, ctx.where() + ": provider row needs 'site_id,lon,lat'");
        }
        CandidateSite site;
        site.site_id = fields[0];
        site.kind = SiteKind::station;
        site.source = SiteSource::provider_selected;
        site.location = {parse_double(fields[1], ctx, "lon"), parse_double(fields[2], ctx, "lat")};
        if (!valid_coordinates(site.location, mode)) {
            fail(Errc::malformed_file, ctx.where() + ": coordinates out of range");
        }
        out.push_back(std::move(site));
    }
    return out;
}

CandidatePool merge_pool(const std::vector<CandidatePool>& parts,
                         const std::vector<CandidateSite>& provider_sites,
                         const std::map<std::string, int>& layout0, const HighwayGraph& g,
                         double radius_m, double densify_step_m) {
    CandidatePool merged;
    std::set<std::string> ids;
    auto add = [&](const CandidateSite& site) {
        if (!ids.insert(site.site_id).second) {
            fail(Errc::duplicate_site_id, "site id '" + site.site_id + "' appears twice");
        }
        (site.kind == SiteKind::station ? merged.stations : merged.togo).push_back(site);
    };
    for (const auto& part : parts) {
        for (const auto& s : part.stations) add(s);
        for (const auto& s : part.togo) add(s);
    }
    for (const auto& s : provider_sites) {
        if (!within_buffer(s.location, g, radius_m, densify_step_m)) continue;
        add(s);
    }
    for (const auto& [site_id, level] : layout0) {
        bool found = false;
        for (auto* list : {&merged.stations, &merged.togo}) {
            for (auto& site : *list) {
                if (site.site_id == site_id) {
                    site.initial_level = level;
                    found = true;
                }
            }
        }
        if (!found) {
            fail(Errc::malformed_file,
                 "layout references unknown candidate site '" + site_id + "'");
        }
    }
    merged.sort_sites();
    return merged;
}

PreparedSites load_prepared_sites(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::malformed_file, path + ": " + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection") {
        fail(Errc::malformed_file, path + ": expected a GeoJSON FeatureCollection");
    }

    PreparedSites out;
    if (doc.contains("coordinate_mode")) {
        out.mode = coordinate_mode_from_name(doc["coordinate_mode"].get<std::string>());
    }

    std::set<std::string> seen;
    for (const auto& feature : doc.value("features", nlohmann::json::array())) {
        const auto& geom = feature.at("geometry");
        if (geom.value("type", "") != "Point") {
            fail(Errc::malformed_file, path + ": prepared sites must be Point features");
        }
        const auto& coords = geom.at("coordinates");
        if (!coords.is_array() || coords.size() < 2) {
            fail(Errc::malformed_file, path + ": Point needs [x, y] coordinates");
        }
        const auto props = feature.value("properties", nlohmann::json::object());
        for (const char* key : {"site_id", "kind", "q"}) {
            if (!props.contains(key)) {
                fail(Errc::malformed_file,
                     path + ": prepared site without " + std::string(key) + " property");
            }
        }

        CandidateSite site;
        site.site_id = props["site_id"].is_string() ? props["site_id"].get<std::string>()
                                                    : props["site_id"].dump();
        site.kind = site_kind_from_name(props["kind"].get<std::string>());
        site.location = {coords[0].get<double>(), coords[1].get<double>()};
        site.q = props["q"].get<double>();
        site.initial_level = props.value("initial_level", 0);
        site.source = props.contains("source")
                          ? site_source_from_name(props["source"].get<std::string>())
                          : SiteSource::existing;
        if (!valid_coordinates(site.location, out.mode)) {
            fail(Errc::malformed_file, path + ": site '" + site.site_id +
                                           "' has out-of-range coordinates");
        }
        if (!(site.q >= 0.0) || !std::isfinite(site.q)) {
            fail(Errc::malformed_file, path + ": site '" + site.site_id + "' has invalid q");
        }
        if (site.initial_level < 0) {
            fail(Errc::malformed_file,
                 path + ": site '" + site.site_id + "' has negative initial level");
        }
        if (!seen.insert(site.site_id).second) {
            fail(Errc::duplicate_site_id, path + ": '" + site.site_id + "'");
        }
        (site.kind == SiteKind::station ? out.pool.stations : out.pool.togo).push_back(site);
    }
    if (out.pool.size() == 0) {
        fail(Errc::empty_selection, path + ": no candidate sites in file");
    }
    out.pool.sort_sites();
    return out;
}

} // namespace chargeplan
