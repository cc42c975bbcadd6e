#pragma once

#include <set>
#include <string>
#include <vector>

#include "chargeplan/geo.hpp"
#include "chargeplan/netgraph.hpp"

namespace chargeplan {

enum class VehicleClass { all, truck };

VehicleClass vehicle_class_from_name(const std::string& name);
const char* vehicle_class_name(VehicleClass vc);

struct FlowRecord {
    std::string date;
    std::string period; // time-window label, e.g. "07:00-08:00"
    std::string route_id;
    GeoPoint segment_start;
    double flow = 0.0;  // veh/h
    double speed = 0.0; // km/h
    VehicleClass vehicle_class = VehicleClass::all;
};

// One per distinct segment start, q = average freight flow (veh/h).
struct DemandPoint {
    GeoPoint location;
    double q = 0.0;
};

enum class PoiLabel { fuel_station, truck_stop, parking_area, supermarket, other };

PoiLabel poi_label_from_name(const std::string& raw); // unknown labels map to `other`
const char* poi_label_name(PoiLabel label);

struct Poi {
    std::string id;
    PoiLabel label = PoiLabel::other;
    GeoPoint location;
};

// Network file: delimited sections ([nodes]/[arcs]) or GeoJSON, with a
// coordinate_mode header key (wgs84 default). See README for the schema.
HighwayGraph load_network(const std::string& path);

// Flow file columns: date, period, route_id, lon, lat, flow, speed,
// vehicle_class. Negative or non-finite flow/speed is rejected.
std::vector<FlowRecord> load_flow_records(const std::string& path,
                                          CoordinateMode mode = CoordinateMode::wgs84);

// POI file: delimited (id, label, lon, lat) or GeoJSON points.
std::vector<Poi> load_pois(const std::string& path, CoordinateMode mode = CoordinateMode::wgs84);

// Mean flow per distinct segment start over records matching the class
// filter and the period window (empty window = all periods). The result is
// sorted by location (lon, lat) so output order does not depend on record
// order; the index in this list is the demand point id used in tie-breaks.
std::vector<DemandPoint> aggregate_freight_demand(const std::vector<FlowRecord>& records,
                                                  VehicleClass class_filter,
                                                  const std::set<std::string>& window = {});

// True iff p lies within radius_m of any network node or arc-sample point.
// Arcs are sampled every densify_step_m along their geometry.
bool within_buffer(const GeoPoint& p, const HighwayGraph& g, double radius_m,
                   double densify_step_m = 100.0);

// Smallest distance from p to the sampled network geometry.
double distance_to_network(const GeoPoint& p, const HighwayGraph& g,
                           double densify_step_m = 100.0);

} // namespace chargeplan
