#include "chargeplan/geodata.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "chargeplan/csvio.hpp"
#include "chargeplan/errors.hpp"

namespace chargeplan {

using json = nlohmann::json;

VehicleClass vehicle_class_from_name(const std::string& name) {
    const std::string s = lowercase(trim(name));
    if (s == "all") return VehicleClass::all;
    if (s == "truck") return VehicleClass::truck;
    fail(Errc::malformed_file, "unknown vehicle class '" + name + "' (expected all or truck)");
}

const char* vehicle_class_name(VehicleClass vc) {
    return vc == VehicleClass::all ? "all" : "truck";
}

PoiLabel poi_label_from_name(const std::string& raw) {
    std::string s = lowercase(trim(raw));
    std::replace(s.begin(), s.end(), ' ', '_');
    std::replace(s.begin(), s.end(), '-', '_');
    if (s == "fuel_station" || s == "fuel") return PoiLabel::fuel_station;
    if (s == "truck_stop") return PoiLabel::truck_stop;
    if (s == "parking_area" || s == "parking") return PoiLabel::parking_area;
    if (s == "supermarket") return PoiLabel::supermarket;
    return PoiLabel::other;
}

const char* poi_label_name(PoiLabel label) {
    switch (label) {
    case PoiLabel::fuel_station: return "fuel_station";
    case PoiLabel::truck_stop: return "truck_stop";
    case PoiLabel::parking_area: return "parking_area";
    case PoiLabel::supermarket: return "supermarket";
    case PoiLabel::other: return "other";
    }
    return "other";
}

namespace {

json parse_json_file(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(Errc::malformed_file, path + ": invalid JSON (" + e.what() + ")");
    }
}

GeoPoint json_point(const json& coords, const std::string& path) {
    if (!coords.is_array() || coords.size() < 2 || !coords[0].is_number() ||
        !coords[1].is_number()) {
        fail(Errc::malformed_file, path + ": coordinates must be [lon, lat]");
    }
    return {coords[0].get<double>(), coords[1].get<double>()};
}

std::vector<GeoPoint> parse_polyline(const std::string& field, const CsvContext& ctx) {
    std::vector<GeoPoint> pts;
    if (field.empty()) return pts;
    for (const auto& pair : split_fields(field, ';')) {
        const auto parts = split_fields(pair, ' ');
        std::vector<std::string> nonempty;
        for (const auto& p : parts) {
            if (!p.empty()) nonempty.push_back(p);
        }
        if (nonempty.size() != 2) {
            fail(Errc::malformed_file, ctx.where() + ": polyline vertex '" + pair +
                                           "' is not 'lon lat'");
        }
        pts.push_back({parse_double(nonempty[0], ctx, "polyline lon"),
                       parse_double(nonempty[1], ctx, "polyline lat")});
    }
    return pts;
}

bool header_matches(const std::vector<std::string>& fields,
                    const std::vector<std::string>& expected) {
    if (fields.size() < expected.size()) return false;
    for (size_t i = 0; i < expected.size(); ++i) {
        if (lowercase(fields[i]) != expected[i]) return false;
    }
    return true;
}

HighwayGraph load_network_delimited(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::malformed_file, "cannot open network file '" + path + "'");

    CoordinateMode mode = CoordinateMode::wgs84;
    enum class Section { none, nodes, arcs };
    Section section = Section::none;
    bool header_seen = false;
    std::vector<std::tuple<std::string, GeoPoint>> nodes;
    struct RawArc {
        std::string id, from, to;
        double length;
        std::vector<GeoPoint> poly;
    };
    std::vector<RawArc> arcs;

    CsvContext ctx{path, 0};
    std::string line;
    while (std::getline(in, line)) {
        ++ctx.line;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (lowercase(t.substr(0, 15)) == "coordinate_mode") {
            std::string rest = t.substr(15);
            if (!rest.empty() && (rest[0] == ':' || rest[0] == ',')) rest = rest.substr(1);
            mode = coordinate_mode_from_name(lowercase(trim(rest)));
            continue;
        }
        if (lowercase(t) == "[nodes]") {
            section = Section::nodes;
            header_seen = false;
            continue;
        }
        if (lowercase(t) == "[arcs]") {
            section = Section::arcs;
            header_seen = false;
            continue;
        }
        const auto fields = split_fields(t);
        if (section == Section::none) {
            fail(Errc::malformed_file, ctx.where() + ": data before [nodes]/[arcs] section");
        }
        if (!header_seen) {
            header_seen = true;
            if (section == Section::nodes) {
                if (!header_matches(fields, {"node_id", "lon", "lat"})) {
                    fail(Errc::malformed_file,
                         ctx.where() + ": expected header 'node_id,lon,lat'");
                }
            } else if (!header_matches(fields, {"arc_id", "from_node", "to_node", "length_m"})) {
                fail(Errc::malformed_file,
                     ctx.where() + ": expected header 'arc_id,from_node,to_node,length_m[,polyline]'");
            }
            continue;
        }
        if (section == Section::nodes) {
            if (fields.size() != 3) {
                fail(Errc::malformed_file, ctx.where() + ": node row needs 3 fields");
            }
            nodes.emplace_back(fields[0], GeoPoint{parse_double(fields[1], ctx, "lon"),
                                                   parse_double(fields[2], ctx, "lat")});
        } else {
            if (fields.size() != 4 && fields.size() != 5) {
                fail(Errc::malformed_file, ctx.where() + ": arc row needs 4 or 5 fields");
            }
            RawArc a;
            a.id = fields[0];
            a.from = fields[1];
            a.to = fields[2];
            a.length = parse_double(fields[3], ctx, "length_m");
            if (fields.size() == 5) a.poly = parse_polyline(fields[4], ctx);
            arcs.push_back(std::move(a));
        }
    }
    if (nodes.empty()) fail(Errc::malformed_file, path + ": no nodes found");

    HighwayGraphBuilder builder(mode);
    for (const auto& [id, pos] : nodes) builder.add_node(id, pos);
    for (auto& a : arcs) builder.add_arc(a.id, a.from, a.to, a.length, std::move(a.poly));
    return builder.build();
}

double polyline_length(const std::vector<GeoPoint>& pts, CoordinateMode mode) {
    double total = 0.0;
    for (size_t i = 1; i < pts.size(); ++i) total += geo_distance(pts[i - 1], pts[i], mode);
    return total;
}

HighwayGraph load_network_geojson(const std::string& path) {
    const json doc = parse_json_file(path);
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection") {
        fail(Errc::malformed_file, path + ": expected a GeoJSON FeatureCollection");
    }
    CoordinateMode mode = CoordinateMode::wgs84;
    if (doc.contains("coordinate_mode")) {
        mode = coordinate_mode_from_name(doc["coordinate_mode"].get<std::string>());
    }
    HighwayGraphBuilder builder(mode);
    bool any_node = false;
    for (const auto& feature : doc.value("features", json::array())) {
        const auto& geom = feature.at("geometry");
        const auto props = feature.value("properties", json::object());
        const std::string gtype = geom.value("type", "");
        if (gtype == "Point") {
            if (!props.contains("node_id")) {
                fail(Errc::malformed_file, path + ": Point feature without node_id property");
            }
            builder.add_node(props["node_id"].is_string()
                                 ? props["node_id"].get<std::string>()
                                 : props["node_id"].dump(),
                             json_point(geom.at("coordinates"), path));
            any_node = true;
        } else if (gtype == "LineString") {
            for (const char* key : {"arc_id", "from_node", "to_node"}) {
                if (!props.contains(key)) {
                    fail(Errc::malformed_file,
                         path + ": LineString feature without " + std::string(key));
                }
            }
            std::vector<GeoPoint> poly;
            for (const auto& c : geom.at("coordinates")) poly.push_back(json_point(c, path));
            double length = props.value("length_m", 0.0);
            if (length <= 0.0) length = polyline_length(poly, mode);
            auto as_str = [](const json& v) {
                return v.is_string() ? v.get<std::string>() : v.dump();
            };
            builder.add_arc(as_str(props["arc_id"]), as_str(props["from_node"]),
                            as_str(props["to_node"]), length, std::move(poly));
        } else {
            fail(Errc::malformed_file, path + ": unsupported geometry type '" + gtype + "'");
        }
    }
    if (!any_node) fail(Errc::malformed_file, path + ": no node features found");
    return builder.build();
}

} // namespace

HighwayGraph load_network(const std::string& path) {
    if (has_json_extension(path)) return load_network_geojson(path);
    return load_network_delimited(path);
}

std::vector<FlowRecord> load_flow_records(const std::string& path, CoordinateMode mode) {
    std::ifstream in(path);
    if (!in) fail(Errc::malformed_file, "cannot open flow file '" + path + "'");
    std::vector<FlowRecord> out;
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
            if (!header_matches(fields, {"date", "period", "route_id", "lon", "lat", "flow",
                                         "speed", "vehicle_class"})) {
                fail(Errc::malformed_file,
                     ctx.where() +
                         ": expected header 'date,period,route_id,lon,lat,flow,speed,vehicle_class'");
            }
            continue;
        }
        if (fields.size() != 8) {
            fail(Errc::malformed_file, ctx.where() + ": flow row needs 8 fields");
        }
        FlowRecord rec;
        rec.date = fields[0];
        rec.period = fields[1];
        rec.route_id = fields[2];
        rec.segment_start = {parse_double(fields[3], ctx, "lon"),
                             parse_double(fields[4], ctx, "lat")};
        if (!valid_coordinates(rec.segment_start, mode)) {
            fail(Errc::malformed_file, ctx.where() + ": coordinates out of range");
        }
        rec.flow = parse_double(fields[5], ctx, "flow");
        rec.speed = parse_double(fields[6], ctx, "speed");
        if (rec.flow < 0.0 || rec.speed < 0.0) {
            fail(Errc::malformed_file, ctx.where() + ": negative flow or speed");
        }
        try {
            rec.vehicle_class = vehicle_class_from_name(fields[7]);
        } catch (const Error&) {
            fail(Errc::malformed_file, ctx.where() + ": unknown vehicle class '" + fields[7] + "'");
        }
        out.push_back(std::move(rec));
    }
    if (out.empty()) fail(Errc::malformed_file, path + ": no flow records found");
    return out;
}

std::vector<Poi> load_pois(const std::string& path, CoordinateMode mode) {
    std::vector<Poi> out;
    if (has_json_extension(path)) {
        const json doc = parse_json_file(path);
        if (!doc.is_object() || doc.value("type", "") != "FeatureCollection") {
            fail(Errc::malformed_file, path + ": expected a GeoJSON FeatureCollection");
        }
        for (const auto& feature : doc.value("features", json::array())) {
            const auto& geom = feature.at("geometry");
            if (geom.value("type", "") != "Point") {
                fail(Errc::malformed_file, path + ": POI features must be Points");
            }
            const auto props = feature.value("properties", json::object());
            Poi poi;
            poi.id = props.contains("id")
                         ? (props["id"].is_string() ? props["id"].get<std::string>()
                                                    : props["id"].dump())
                         : std::to_string(out.size());
            poi.label = poi_label_from_name(props.value("label", "other"));
            poi.location = json_point(geom.at("coordinates"), path);
            if (!valid_coordinates(poi.location, mode)) {
                fail(Errc::malformed_file, path + ": POI '" + poi.id + "' coordinates out of range");
            }
            out.push_back(std::move(poi));
        }
        return out;
    }
    std::ifstream in(path);
    if (!in) fail(Errc::malformed_file, "cannot open POI file '" + path + "'");
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
            if (!header_matches(fields, {"id", "label", "lon", "lat"})) {
                fail(Errc::malformed_file, ctx.where() + ": expected header 'id,label,lon,lat'");
            }
            continue;
        }
        if (fields.size() != 4) {
            fail(Errc::malformed_file, ctx.where() + ": POI row needs 4 fields");
        }
        Poi poi;
        poi.id = fields[0];
        poi.label = poi_label_from_name(fields[1]);
        poi.location = {parse_double(fields[2], ctx, "lon"), parse_double(fields[3], ctx, "lat")};
        if (!valid_coordinates(poi.location, mode)) {
            fail(Errc::malformed_file, ctx.where() + ": coordinates out of range");
        }
        out.push_back(std::move(poi));
    }
    return out;
}

std::vector<DemandPoint> aggregate_freight_demand(const std::vector<FlowRecord>& records,
                                                  VehicleClass class_filter,
                                                  const std::set<std::string>& window) {
    struct Acc {
        double sum = 0.0;
        long long count = 0;
    };
    std::map<std::pair<double, double>, Acc> groups;
    for (const auto& rec : records) {
        if (rec.vehicle_class != class_filter) continue;
        if (!window.empty() && window.count(rec.period) == 0) continue;
        auto& acc = groups[{rec.segment_start.lon, rec.segment_start.lat}];
        acc.sum += rec.flow;
        acc.count += 1;
    }
    if (groups.empty()) {
        fail(Errc::empty_selection,
             std::string("no flow records match class '") + vehicle_class_name(class_filter) +
                 "' and the period window");
    }
    std::vector<DemandPoint> out;
    out.reserve(groups.size());
    for (const auto& [key, acc] : groups) {
        out.push_back({{key.first, key.second}, acc.sum / double(acc.count)});
    }
    return out; // map iteration is already sorted by (lon, lat)
}

namespace {

double min_distance_with_cutoff(const GeoPoint& p, const HighwayGraph& g, double densify_step_m,
                                double cutoff) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pos : g.node_pos) {
        best = std::min(best, geo_distance(p, pos, g.mode));
        if (best <= cutoff) return best;
    }
    for (const auto& arc : g.arcs) {
        std::vector<GeoPoint> chord;
        const std::vector<GeoPoint>* geom = &arc.polyline;
        if (arc.polyline.size() < 2) {
            chord = {g.node_pos[arc.u], g.node_pos[arc.v]};
            geom = &chord;
        }
        for (size_t i = 1; i < geom->size(); ++i) {
            const GeoPoint& a = (*geom)[i - 1];
            const GeoPoint& b = (*geom)[i];
            const double seg_len = geo_distance(a, b, g.mode);
            const int steps = std::max(1, int(std::ceil(seg_len / densify_step_m)));
            for (int s = 0; s <= steps; ++s) {
                const double t = double(s) / steps;
                const GeoPoint sample{a.lon + t * (b.lon - a.lon), a.lat + t * (b.lat - a.lat)};
                best = std::min(best, geo_distance(p, sample, g.mode));
                if (best <= cutoff) return best;
            }
        }
    }
    return best;
}

} // namespace

double distance_to_network(const GeoPoint& p, const HighwayGraph& g, double densify_step_m) {
    return min_distance_with_cutoff(p, g, densify_step_m, -1.0);
}

bool within_buffer(const GeoPoint& p, const HighwayGraph& g, double radius_m,
                   double densify_step_m) {
    return min_distance_with_cutoff(p, g, densify_step_m, radius_m) <= radius_m;
}

} // namespace chargeplan
