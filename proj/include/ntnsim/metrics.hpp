#ifndef NTNSIM_METRICS_HPP
#define NTNSIM_METRICS_HPP

// Throughput, fairness, scalarized objective, beam radii, and
// multi-realization confidence intervals.

#include <array>
#include <span>
#include <vector>

#include "ntnsim/channel.hpp"

namespace ntnsim {

// Bandwidth handed to each served user: the full channel (frequency reuse
// across beams, default) or an equal split among the beam's admitted users.
enum class BandwidthPolicy { FullReuse, EqualSplit };

struct LayerStepMetrics {
    int users_covered = 0;
    int active_sats = 0;
    double mean_beams_per_active_sat = 0.0;  // valid only when active_sats > 0
    double mean_beam_radius_km = 0.0;        // valid only when beam_radius_defined
    bool beam_radius_defined = false;
};

struct StepMetrics {
    int t = 0;
    std::array<LayerStepMetrics, 3> layers;  // indexed by LayerId
    double sum_rate_bps = 0.0;
    double jfi = 0.0;
};

struct MeanCi {
    double mean = 0.0;
    double ci_half_width = 0.0;
    bool ci_defined = false;  // needs >= 2 samples
    int n = 0;
};

// Shannon rate B * log2(1 + sinr) [bps].
double user_rate_bps(double bandwidth_hz, double sinr_linear);

// Sum of per-user rates over all served users.
double sum_rate_bps(std::span<const LinkRecord> links);

// Jain fairness index over n users; rates of unserved users are implicit
// zeros. Returns 0 when every rate is zero.
double jfi(std::span<const double> served_rates, int n_total_users);

// Weighted-sum objective: omega * min(sum_rate / rate_ref, 1) + (1-omega) * jfi.
double scalarize(double mean_sum_rate_bps, double mean_jfi, double omega, double rate_ref_bps);

// Largest haversine distance from the beam centroid to any admitted member [km].
double beam_radius_km(const GeoPoint& centroid, std::span<const GeoPoint> admitted_positions);

// Sample mean with a 95% normal-approximation CI (1.96 * s / sqrt(n)).
MeanCi aggregate_values(std::span<const double> values);

// Per-step aggregation across realizations: series[r][t] -> one MeanCi per t.
std::vector<MeanCi> aggregate_series(const std::vector<std::vector<double>>& series);

}  // namespace ntnsim

#endif  // NTNSIM_METRICS_HPP
