#ifndef NTNSIM_ORBITAL_HPP
#define NTNSIM_ORBITAL_HPP

// Multi-layer Walker-Delta constellation generation and circular two-body
// propagation to Earth-fixed geodetic positions.

#include <compare>
#include <vector>

#include "ntnsim/constants.hpp"
#include "ntnsim/geo.hpp"

namespace ntnsim {

enum class LayerId { Leo = 0, Meo = 1, Geo = 2 };

const char* layer_name(LayerId id);

// One orbital layer's design parameters.
struct LayerConfig {
    LayerId layer_id = LayerId::Leo;
    int planes = 1;               // P_k
    int sats_per_plane = 1;       // S_k
    double altitude_km = 600.0;   // h_k
    double inclination_deg = 53.0;
    double longitude_offset_deg = 0.0;  // Earth-fixed phase of the pattern at epoch
};

// Identity of a satellite within the constellation.
struct SatId {
    LayerId layer = LayerId::Leo;
    int plane = 0;
    int sat = 0;

    auto operator<=>(const SatId&) const = default;
};

// A satellite's identity plus geodetic position at one time step.
struct SatelliteSnapshot {
    SatId id;
    double lat_deg = 0.0;
    double lon_deg = 0.0;   // wrapped to [-180, 180)
    double altitude_km = 0.0;

    GeoPoint subpoint() const { return {lat_deg, lon_deg}; }
};

struct Constellation {
    std::vector<LayerConfig> layers;
    double epoch_s = 0.0;
    double mu_km3_s2 = kMuEarthKm3S2;
    double earth_radius_km = kEarthRadiusKm;
    double earth_rotation_rad_s = kEarthRotationRadS;
};

// RAAN of plane p in a layer of P planes: 2*pi*p/P, in [0, 2*pi).
// Throws std::out_of_range for p outside [0, P).
double raan_of_plane(int plane, int plane_count);

// Mean anomaly of satellite s in plane p: (2*pi*s/S + pi*p/S) mod 2*pi.
// Throws std::out_of_range for s outside [0, S).
double mean_anomaly_of(int sat, int plane, int sats_per_plane);

// Circular orbital period 2*pi*sqrt(a^3/mu) with a = R + h [s].
// Throws std::invalid_argument for h <= 0.
double orbital_period_s(double altitude_km, double mu_km3_s2 = kMuEarthKm3S2,
                        double earth_radius_km = kEarthRadiusKm);

// Earth-fixed Cartesian position of one satellite at t seconds past epoch [km].
Vec3 satellite_position_km(const Constellation& c, const LayerConfig& layer, int plane,
                           int sat, double t_s);

// Propagates every satellite to t seconds past epoch. Snapshot order is
// layer, then plane, then in-plane index, so output is deterministic.
std::vector<SatelliteSnapshot> propagate(const Constellation& c, double t_s);

}  // namespace ntnsim

#endif  // NTNSIM_ORBITAL_HPP
