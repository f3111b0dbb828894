#include "ntnsim/orbital.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ntnsim {

const char* layer_name(LayerId id) {
    switch (id) {
        case LayerId::Leo: return "LEO";
        case LayerId::Meo: return "MEO";
        case LayerId::Geo: return "GEO";
    }
    return "?";
}

double raan_of_plane(int plane, int plane_count) {
    if (plane < 0 || plane >= plane_count) {
        throw std::out_of_range("raan_of_plane: plane index " + std::to_string(plane) +
                                " outside [0, " + std::to_string(plane_count) + ")");
    }
    return 2.0 * kPi * static_cast<double>(plane) / static_cast<double>(plane_count);
}

double mean_anomaly_of(int sat, int plane, int sats_per_plane) {
    if (sat < 0 || sat >= sats_per_plane) {
        throw std::out_of_range("mean_anomaly_of: sat index " + std::to_string(sat) +
                                " outside [0, " + std::to_string(sats_per_plane) + ")");
    }
    const double s = static_cast<double>(sat);
    const double p = static_cast<double>(plane);
    const double n = static_cast<double>(sats_per_plane);
    return std::fmod(2.0 * kPi * s / n + kPi * p / n, 2.0 * kPi);
}

double orbital_period_s(double altitude_km, double mu_km3_s2, double earth_radius_km) {
    if (altitude_km <= 0.0) {
        throw std::invalid_argument("orbital_period_s: altitude must be positive");
    }
    const double a = earth_radius_km + altitude_km;
    return 2.0 * kPi * std::sqrt(a * a * a / mu_km3_s2);
}

Vec3 satellite_position_km(const Constellation& c, const LayerConfig& layer, int plane,
                           int sat, double t_s) {
    const double raan = raan_of_plane(plane, layer.planes);
    const double m0 = mean_anomaly_of(sat, plane, layer.sats_per_plane);
    const double period = orbital_period_s(layer.altitude_km, c.mu_km3_s2, c.earth_radius_km);
    const double mean_motion = 2.0 * kPi / period;
    const double inc = deg_to_rad(layer.inclination_deg);

    // Circular orbit: the argument angle in the plane is the mean anomaly.
    const double u = m0 + mean_motion * t_s;
    const double r = c.earth_radius_km + layer.altitude_km;

    // In-plane position, then Rx(inclination), then Rz(RAAN) -> inertial.
    const double xp = r * std::cos(u);
    const double yp = r * std::sin(u);
    const double xi = xp;
    const double yi = yp * std::cos(inc);
    const double zi = yp * std::sin(inc);
    const double cos_o = std::cos(raan);
    const double sin_o = std::sin(raan);
    const Vec3 eci{cos_o * xi - sin_o * yi, sin_o * xi + cos_o * yi, zi};

    // Inertial -> Earth-fixed: rotate about the polar axis by the accumulated
    // Earth rotation, plus the layer's Earth-fixed longitude offset.
    const double theta = deg_to_rad(layer.longitude_offset_deg) - c.earth_rotation_rad_s * t_s;
    const double cos_t = std::cos(theta);
    const double sin_t = std::sin(theta);
    return {cos_t * eci.x - sin_t * eci.y, sin_t * eci.x + cos_t * eci.y, eci.z};
}

std::vector<SatelliteSnapshot> propagate(const Constellation& c, double t_s) {
    std::vector<SatelliteSnapshot> out;
    std::size_t count = 0;
    for (const auto& layer : c.layers) {
        count += static_cast<std::size_t>(layer.planes) * layer.sats_per_plane;
    }
    out.reserve(count);

    for (const auto& layer : c.layers) {
        for (int p = 0; p < layer.planes; ++p) {
            for (int s = 0; s < layer.sats_per_plane; ++s) {
                const Vec3 pos = satellite_position_km(c, layer, p, s, t_s);
                const double rn = pos.norm();
                SatelliteSnapshot snap;
                snap.id = {layer.layer_id, p, s};
                snap.lat_deg = rad_to_deg(std::asin(pos.z / rn));
                snap.lon_deg = wrap_lon_deg(rad_to_deg(std::atan2(pos.y, pos.x)));
                snap.altitude_km = layer.altitude_km;
                out.push_back(snap);
            }
        }
    }
    return out;
}

}  // namespace ntnsim
