#pragma once

#include <string>

namespace chargeplan {

// Coordinate interpretation declared in the network file header.
// wgs84: lon/lat degrees, distances are great-circle meters.
// planar: x/y stored in the lon/lat slots, already in meters.
enum class CoordinateMode { wgs84, planar };

CoordinateMode coordinate_mode_from_name(const std::string& name);
const char* coordinate_mode_name(CoordinateMode mode);

struct GeoPoint {
    double lon = 0.0; // or x (meters) in planar mode
    double lat = 0.0; // or y (meters) in planar mode

    friend bool operator==(const GeoPoint& a, const GeoPoint& b) {
        return a.lon == b.lon && a.lat == b.lat;
    }
};

inline constexpr double kEarthRadiusM = 6'371'000.0;

// Haversine great-circle distance for wgs84 input, Euclidean for planar.
// Symmetric, non-negative, zero iff the points coincide.
double geo_distance(const GeoPoint& a, const GeoPoint& b,
                    CoordinateMode mode = CoordinateMode::wgs84);

// Range validation for wgs84 coordinates (planar coordinates are unconstrained).
bool valid_coordinates(const GeoPoint& p, CoordinateMode mode);

} // namespace chargeplan
