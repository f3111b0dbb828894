#include "ntnsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ntnsim {

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

double slant_range_km(const GeoPoint& user, const SatelliteSnapshot& sat, SlantRangeMode mode,
                      double earth_radius_km) {
    const GeoPoint sub = sat.subpoint();
    if (mode == SlantRangeMode::SurfaceHaversine) {
        return haversine_km(user, sub, earth_radius_km);
    }
    const Vec3 u = ecef_from_geodetic(user, 0.0, earth_radius_km);
    const Vec3 s = ecef_from_geodetic(sub, sat.altitude_km, earth_radius_km);
    return (s - u).norm();
}

double fspl_db(double distance_km, double carrier_ghz) {
    if (distance_km <= 0.0 || carrier_ghz <= 0.0) {
        throw std::domain_error("fspl_db: distance and frequency must be positive");
    }
    return 20.0 * std::log10(distance_km) + 20.0 * std::log10(carrier_ghz) + 92.45;
}

double noise_power_dbm(double bandwidth_hz, double system_temp_k, double noise_figure_db) {
    return 10.0 * std::log10(kBoltzmannJPerK * system_temp_k * bandwidth_hz * 1.0e3) +
           noise_figure_db;
}

double received_power_dbm(const ChannelParams& p, double pl_total_db) {
    return p.tx_power_dbm + p.tx_gain_dbi + p.rx_gain_dbi - pl_total_db;
}

double interference_power_dbm(const ChannelParams& p, double fspl_int_db) {
    return p.tx_power_dbm + (p.tx_gain_dbi - p.sidelobe_atten_db) + p.rx_gain_dbi - fspl_int_db;
}

double elevation_deg(const SatelliteSnapshot& sat, const GeoPoint& user, double earth_radius_km) {
    const double psi = central_angle_rad(user, sat.subpoint());
    const double ratio = earth_radius_km / (earth_radius_km + sat.altitude_km);
    return rad_to_deg(std::atan2(std::cos(psi) - ratio, std::sin(psi)));
}

bool visible(const SatelliteSnapshot& sat, const GeoPoint& user, double min_elevation_deg,
             double earth_radius_km) {
    return elevation_deg(sat, user, earth_radius_km) >= min_elevation_deg;
}

namespace {

double interference_contribution_mw(const GeoPoint& user, const SatelliteSnapshot& sat,
                                    const ChannelParams& p) {
    const double d = slant_range_km(user, sat, p.slant_mode, kEarthRadiusKm);
    if (d <= 0.0) {
        // Surface mode at nadir: zero ground distance carries no defined FSPL.
        return 0.0;
    }
    return dbm_to_mw(interference_power_dbm(p, fspl_db(d, p.carrier_ghz)));
}

}  // namespace

InterferenceSplit total_interference_mw(const GeoPoint& user, const ActiveBeam& serving,
                                        std::span<const ActiveBeam> active,
                                        const ChannelParams& p) {
    InterferenceSplit split;
    for (const auto& beam : active) {
        if (beam.beam_id == serving.beam_id) continue;
        if (beam.sat.id.layer != serving.sat.id.layer) continue;
        if (beam.sat.id == serving.sat.id) {
            split.intra_mw += interference_contribution_mw(user, beam.sat, p);
        } else if (visible(beam.sat, user, p.min_elevation_deg)) {
            split.inter_mw += interference_contribution_mw(user, beam.sat, p);
        }
    }
    return split;
}

double sinr_linear(const GeoPoint& user, const ActiveBeam& serving,
                   std::span<const ActiveBeam> active, const ChannelParams& p) {
    const double d = slant_range_km(user, serving.sat, p.slant_mode, kEarthRadiusKm);
    const double pl_total = fspl_db(d, p.carrier_ghz) + p.epl_db();
    const double rx_mw = dbm_to_mw(received_power_dbm(p, pl_total));
    const double noise_mw = dbm_to_mw(noise_power_dbm(p.bandwidth_hz, p.system_temp_k,
                                                      p.noise_figure_db));
    const InterferenceSplit interference = total_interference_mw(user, serving, active, p);
    return rx_mw / (interference.total_mw() + noise_mw);
}

}  // namespace ntnsim
