#ifndef NTNSIM_CHANNEL_HPP
#define NTNSIM_CHANNEL_HPP

// Link geometry, path loss, noise, interference, and SINR for user-beam pairs.

#include <span>
#include <vector>

#include "ntnsim/geo.hpp"
#include "ntnsim/orbital.hpp"

namespace ntnsim {

// How the satellite-user distance entering the FSPL is measured.
// SurfaceHaversine is the ground-projected distance, which is 0 at nadir;
// Geometric is the 3-D chord and is the physically sound default.
enum class SlantRangeMode { Geometric, SurfaceHaversine };

struct ChannelParams {
    double carrier_ghz = 2.2;
    double bandwidth_hz = 2.0e7;
    double tx_power_dbm = 40.0;        // P_t
    double tx_gain_dbi = 30.0;         // G_t
    double rx_gain_dbi = 0.0;          // G_r
    double noise_figure_db = 2.0;      // NF
    double system_temp_k = 290.0;      // T
    double sidelobe_atten_db = 20.0;   // A_sl, so G_t_eff = G_t - A_sl
    double rain_loss_db = 0.3;
    double cloud_loss_db = 0.2;
    double vapor_loss_db = 0.1;
    double min_elevation_deg = 10.0;
    SlantRangeMode slant_mode = SlantRangeMode::Geometric;

    double epl_db() const { return rain_loss_db + cloud_loss_db + vapor_loss_db; }
};

// Per-user link ledger for one time step.
struct LinkRecord {
    int user_id = -1;
    int beam_id = -1;
    double slant_range_km = 0.0;
    double fspl_db = 0.0;
    double pl_total_db = 0.0;
    double rx_power_dbm = 0.0;
    double intra_interference_mw = 0.0;
    double inter_interference_mw = 0.0;
    double total_interference_mw = 0.0;
    double sinr_linear = 0.0;
    double rate_bps = 0.0;
};

// Minimal view of an active beam needed for interference sums: its id and
// the owning satellite's snapshot.
struct ActiveBeam {
    int beam_id = -1;
    SatelliteSnapshot sat;
};

struct InterferenceSplit {
    double intra_mw = 0.0;
    double inter_mw = 0.0;

    double total_mw() const { return intra_mw + inter_mw; }
};

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

// Satellite-user distance [km] under the chosen mode.
double slant_range_km(const GeoPoint& user, const SatelliteSnapshot& sat, SlantRangeMode mode,
                      double earth_radius_km = kEarthRadiusKm);

// Free-space path loss 20log10(d_km) + 20log10(f_GHz) + 92.45 [dB].
// Throws std::domain_error for d <= 0 or f <= 0.
double fspl_db(double distance_km, double carrier_ghz);

// Thermal noise floor 10log10(k*T*B*1e3) + NF [dBm].
double noise_power_dbm(double bandwidth_hz, double system_temp_k, double noise_figure_db);

// Serving-link received power P_t + G_t + G_r - PL_tot [dBm].
double received_power_dbm(const ChannelParams& p, double pl_total_db);

// Interfering-beam received power P_t + (G_t - A_sl) + G_r - FSPL_int [dBm].
double interference_power_dbm(const ChannelParams& p, double fspl_int_db);

// Elevation of the satellite above the user's horizon [deg].
double elevation_deg(const SatelliteSnapshot& sat, const GeoPoint& user,
                     double earth_radius_km = kEarthRadiusKm);

bool visible(const SatelliteSnapshot& sat, const GeoPoint& user, double min_elevation_deg,
             double earth_radius_km = kEarthRadiusKm);

// Splits interference into intra (other beams on the serving satellite) and
// inter (beams on other visible satellites of the same layer). Interferer
// path loss is FSPL only. Cross-layer beams do not contribute.
InterferenceSplit total_interference_mw(const GeoPoint& user, const ActiveBeam& serving,
                                        std::span<const ActiveBeam> active,
                                        const ChannelParams& p);

// Linear SINR: rx power over interference plus noise, all in mW.
double sinr_linear(const GeoPoint& user, const ActiveBeam& serving,
                   std::span<const ActiveBeam> active, const ChannelParams& p);

}  // namespace ntnsim

#endif  // NTNSIM_CHANNEL_HPP
