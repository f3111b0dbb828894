#ifndef NTNSIM_GEO_HPP
#define NTNSIM_GEO_HPP

// Geodetic points, Earth-fixed Cartesian vectors, and great-circle geometry.

#include <algorithm>
#include <cmath>

#include "ntnsim/constants.hpp"

namespace ntnsim {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(const Vec3& a, double s) { return {a.x * s, a.y * s, a.z * s}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Geodetic position, degrees. Longitude wrapped to [-180, 180).
struct GeoPoint {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
};

// Wraps a longitude in degrees to [-180, 180).
inline double wrap_lon_deg(double lon) {
    double w = std::fmod(lon + 180.0, 360.0);
    if (w < 0.0) w += 360.0;
    return w - 180.0;
}

// Earth-fixed Cartesian position of a point at altitude above the spherical Earth [km].
inline Vec3 ecef_from_geodetic(const GeoPoint& p, double altitude_km,
                               double earth_radius_km = kEarthRadiusKm) {
    const double r = earth_radius_km + altitude_km;
    const double lat = deg_to_rad(p.lat_deg);
    const double lon = deg_to_rad(p.lon_deg);
    return {r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon),
            r * std::sin(lat)};
}

// Central angle between two surface points [rad], via the haversine form.
inline double central_angle_rad(const GeoPoint& a, const GeoPoint& b) {
    const double phi1 = deg_to_rad(a.lat_deg);
    const double phi2 = deg_to_rad(b.lat_deg);
    const double dphi = phi2 - phi1;
    const double dlam = deg_to_rad(b.lon_deg - a.lon_deg);
    const double s = std::sin(dphi / 2.0);
    const double t = std::sin(dlam / 2.0);
    double h = s * s + std::cos(phi1) * std::cos(phi2) * t * t;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * std::asin(std::sqrt(h));
}

// Great-circle distance between two surface points [km].
inline double haversine_km(const GeoPoint& a, const GeoPoint& b,
                           double earth_radius_km = kEarthRadiusKm) {
    return earth_radius_km * central_angle_rad(a, b);
}

}  // namespace ntnsim

#endif  // NTNSIM_GEO_HPP
