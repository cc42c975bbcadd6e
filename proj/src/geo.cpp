#include "chargeplan/geo.hpp"

#include <cmath>

#include "chargeplan/errors.hpp"

namespace chargeplan {

CoordinateMode coordinate_mode_from_name(const std::string& name) {
    if (name == "wgs84") return CoordinateMode::wgs84;
    if (name == "planar") return CoordinateMode::planar;
    fail(Errc::malformed_file, "unknown coordinate_mode '" + name + "' (expected wgs84 or planar)");
}

const char* coordinate_mode_name(CoordinateMode mode) {
    return mode == CoordinateMode::wgs84 ? "wgs84" : "planar";
}

double geo_distance(const GeoPoint& a, const GeoPoint& b, CoordinateMode mode) {
    if (mode == CoordinateMode::planar) {
        return std::hypot(a.lon - b.lon, a.lat - b.lat);
    }
    if (a == b) return 0.0;
    constexpr double deg = M_PI / 180.0;
    const double phi1 = a.lat * deg;
    const double phi2 = b.lat * deg;
    const double dphi = (b.lat - a.lat) * deg;
    const double dlam = (b.lon - a.lon) * deg;
    const double s1 = std::sin(dphi / 2.0);
    const double s2 = std::sin(dlam / 2.0);
    const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

bool valid_coordinates(const GeoPoint& p, CoordinateMode mode) {
    if (!std::isfinite(p.lon) || !std::isfinite(p.lat)) return false;
    if (mode == CoordinateMode::planar) return true;
    return p.lon >= -180.0 && p.lon <= 180.0 && p.lat >= -90.0 && p.lat <= 90.0;
}

} // namespace chargeplan
