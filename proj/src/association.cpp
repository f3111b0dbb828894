#include "ntnsim/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ntnsim {

int feasible_cluster_count(int n_remaining, int n_sats, int max_beams_per_sat,
                           int max_users_per_beam) {
    if (n_remaining < 0 || n_sats < 0 || max_beams_per_sat < 0 || max_users_per_beam < 0) {
        throw std::invalid_argument("feasible_cluster_count: inputs must be non-negative");
    }
    if (n_remaining == 0) return 0;
    const long long k_max = static_cast<long long>(n_sats) * max_beams_per_sat;
    const long long k_min =
        max_users_per_beam > 0
            ? (n_remaining + max_users_per_beam - 1) / static_cast<long long>(max_users_per_beam)
            : n_remaining;
    const long long k = std::min({k_max, k_min, static_cast<long long>(n_remaining)});
    return static_cast<int>(k);
}

namespace {

double sq_dist(const GeoPoint& a, const GeoPoint& b) {
    const double dlat = a.lat_deg - b.lat_deg;
    const double dlon = a.lon_deg - b.lon_deg;
    return dlat * dlat + dlon * dlon;
}

// k-means++ seeding: D^2-weighted draws from rng; degenerate (zero total
// weight) falls back to the lowest-index unchosen point.
std::vector<GeoPoint> seed_centroids(std::span<const GeoPoint> points, int k, Rng& rng) {
    const std::size_t n = points.size();
    std::vector<GeoPoint> centroids;
    centroids.reserve(static_cast<std::size_t>(k));
    std::vector<bool> chosen(n, false);

    const std::size_t first = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(n) - 1));
    centroids.push_back(points[first]);
    chosen[first] = true;

    std::vector<double> d2(n);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::max();
            for (const auto& cen : centroids) best = std::min(best, sq_dist(points[i], cen));
            d2[i] = chosen[i] ? 0.0 : best;
            total += d2[i];
        }
        std::size_t pick = n;
        if (total > 0.0) {
            const double target = rng.uniform01() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target && !chosen[i]) {
                    pick = i;
                    break;
                }
            }
        }
        if (pick == n) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
            }
        }
        centroids.push_back(points[pick]);
        chosen[pick] = true;
    }
    return centroids;
}

// Moves the farthest point of the largest cluster into each empty cluster.
// Returns true when any repair happened.
bool repair_empty_clusters(std::span<const GeoPoint> points, std::vector<int>& assign,
                           std::vector<GeoPoint>& centroids, std::vector<int>& counts) {
    bool repaired = false;
    const int k = static_cast<int>(centroids.size());
    for (int c = 0; c < k; ++c) {
        if (counts[c] > 0) continue;
        int donor = -1;
        for (int d = 0; d < k; ++d) {
            if (counts[d] >= 2 && (donor < 0 || counts[d] > counts[donor])) donor = d;
        }
        if (donor < 0) continue;
        std::size_t victim = points.size();
        double worst = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (assign[i] != donor) continue;
            const double d = sq_dist(points[i], centroids[donor]);
            if (d > worst) {
                worst = d;
                victim = i;
            }
        }
        assign[victim] = c;
        centroids[c] = points[victim];
        --counts[donor];
        ++counts[c];
        repaired = true;
    }
    return repaired;
}

}  // namespace

KMeansResult kmeans_cluster(std::span<const GeoPoint> points, int k, Rng& rng, int max_iters) {
    const std::size_t n = points.size();
    if (k < 1 || static_cast<std::size_t>(k) > n) {
        throw std::invalid_argument("kmeans_cluster: k must be in [1, point count]");
    }

    std::vector<GeoPoint> centroids = seed_centroids(points, k, rng);
    std::vector<int> assign(n, -1);
    std::vector<int> counts(static_cast<std::size_t>(k), 0);

    for (int iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sq_dist(points[i], centroids[0]);
            for (int c = 1; c < k; ++c) {
                const double d = sq_dist(points[i], centroids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
            ++counts[static_cast<std::size_t>(best)];
        }

        const bool repaired = repair_empty_clusters(points, assign, centroids, counts);
        if (!changed && !repaired) break;

        std::vector<double> lat_sum(static_cast<std::size_t>(k), 0.0);
        std::vector<double> lon_sum(static_cast<std::size_t>(k), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            lat_sum[static_cast<std::size_t>(assign[i])] += points[i].lat_deg;
            lon_sum[static_cast<std::size_t>(assign[i])] += points[i].lon_deg;
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                centroids[c] = {lat_sum[c] / counts[c], lon_sum[c] / counts[c]};
            }
        }
    }

    KMeansResult out;
    out.centroids = std::move(centroids);
    out.clusters.resize(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < n; ++i) {
        out.clusters[static_cast<std::size_t>(assign[i])].push_back(static_cast<int>(i));
    }
    return out;
}

std::optional<std::size_t> assign_cluster_to_satellite(const GeoPoint& centroid,
                                                       std::span<const SatelliteSnapshot> sats,
                                                       std::span<const int> beams_used,
                                                       int max_beams_per_sat,
                                                       double min_elevation_deg) {
    std::optional<std::size_t> best;
    double best_d = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < sats.size(); ++i) {
        if (beams_used[i] >= max_beams_per_sat) continue;
        if (!visible(sats[i], centroid, min_elevation_deg)) continue;
        const double d = haversine_km(centroid, sats[i].subpoint());
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

std::vector<int> select_top_z(std::span<const int> user_ids, std::span<const double> sinr,
                              int max_users_per_beam) {
    if (user_ids.size() != sinr.size()) {
        throw std::invalid_argument("select_top_z: ids and SINR lists differ in length");
    }
    std::vector<std::size_t> order(user_ids.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (sinr[a] != sinr[b]) return sinr[a] > sinr[b];
        return user_ids[a] < user_ids[b];
    });
    const std::size_t take =
        std::min(order.size(), static_cast<std::size_t>(std::max(max_users_per_beam, 0)));
    std::vector<int> admitted;
    admitted.reserve(take);
    for (std::size_t i = 0; i < take; ++i) admitted.push_back(user_ids[order[i]]);
    return admitted;
}

StepAssignment run_association_step(std::span<const UserState> users,
                                    std::span<const SatelliteSnapshot> sats,
                                    const AssociationConfig& cfg, Rng& rng, int t,
                                    std::span<const int> covered) {
    StepAssignment out;
    out.t = t;
    out.beam_of_user.assign(users.size(), -1);

    std::vector<bool> is_covered(users.size(), false);
    for (int uid : covered) {
        if (uid >= 0 && static_cast<std::size_t>(uid) < users.size()) is_covered[uid] = true;
    }

    // Per-layer satellite lists, in snapshot order (already deterministic).
    std::array<std::vector<SatelliteSnapshot>, 3> layer_sats;
    for (const auto& s : sats) layer_sats[static_cast<int>(s.id.layer)].push_back(s);

    std::vector<ActiveBeam> active;
    int next_beam_id = 0;

    for (LayerId layer : {LayerId::Leo, LayerId::Meo, LayerId::Geo}) {
        const auto& lsats = layer_sats[static_cast<int>(layer)];
        if (lsats.empty()) continue;

        std::vector<int> remaining;
        for (const auto& u : users) {
            if (!is_covered[u.user_id]) remaining.push_back(u.user_id);
        }
        const int k = feasible_cluster_count(static_cast<int>(remaining.size()),
                                             static_cast<int>(lsats.size()),
                                             cfg.max_beams_per_sat, cfg.max_users_per_beam);
        if (k == 0) continue;

        std::vector<GeoPoint> points;
        points.reserve(remaining.size());
        for (int uid : remaining) points.push_back(users[uid].position);
        const KMeansResult km = kmeans_cluster(points, k, rng);

        std::vector<int> beams_used(lsats.size(), 0);
        for (std::size_t c = 0; c < km.clusters.size(); ++c) {
            if (km.clusters[c].empty()) continue;
            const auto sat_idx = assign_cluster_to_satellite(
                km.centroids[c], lsats, beams_used, cfg.max_beams_per_sat,
                cfg.channel.min_elevation_deg);
            if (!sat_idx) continue;

            Beam beam;
            beam.beam_id = next_beam_id++;
            beam.sat = lsats[*sat_idx];
            beam.centroid = km.centroids[c];
            for (int local : km.clusters[c]) beam.members.push_back(remaining[local]);

            // Admission-time SINR against everything activated so far,
            // including this beam.
            active.push_back({beam.beam_id, beam.sat});
            std::vector<double> sinr(beam.members.size());
            for (std::size_t m = 0; m < beam.members.size(); ++m) {
                sinr[m] = sinr_linear(users[beam.members[m]].position, active.back(), active,
                                      cfg.channel);
            }
            beam.admitted = select_top_z(beam.members, sinr, cfg.max_users_per_beam);

            for (int uid : beam.admitted) {
                is_covered[uid] = true;
                out.beam_of_user[uid] = beam.beam_id;
            }
            ++beams_used[*sat_idx];
            ++out.beams_per_sat[beam.sat.id];
            out.beams.push_back(std::move(beam));
        }
    }

    // Final pass: recompute every admitted user's link against the complete
    // active-beam set, and fill rates under the bandwidth policy.
    for (const auto& beam : out.beams) {
        const ActiveBeam serving{beam.beam_id, beam.sat};
        const double b_alloc = cfg.bandwidth_policy == BandwidthPolicy::FullReuse
                                   ? cfg.channel.bandwidth_hz
                                   : cfg.channel.bandwidth_hz /
                                         static_cast<double>(beam.admitted.size());
        for (int uid : beam.admitted) {
            const GeoPoint& pos = users[uid].position;
            LinkRecord rec;
            rec.user_id = uid;
            rec.beam_id = beam.beam_id;
            rec.slant_range_km =
                slant_range_km(pos, beam.sat, cfg.channel.slant_mode);
            rec.fspl_db = fspl_db(rec.slant_range_km, cfg.channel.carrier_ghz);
            rec.pl_total_db = rec.fspl_db + cfg.channel.epl_db();
            rec.rx_power_dbm = received_power_dbm(cfg.channel, rec.pl_total_db);
            const InterferenceSplit split =
                total_interference_mw(pos, serving, active, cfg.channel);
            rec.intra_interference_mw = split.intra_mw;
            rec.inter_interference_mw = split.inter_mw;
            rec.total_interference_mw = split.total_mw();
            const double noise_mw = dbm_to_mw(noise_power_dbm(
                cfg.channel.bandwidth_hz, cfg.channel.system_temp_k, cfg.channel.noise_figure_db));
            rec.sinr_linear = dbm_to_mw(rec.rx_power_dbm) / (rec.total_interference_mw + noise_mw);
            rec.rate_bps = user_rate_bps(b_alloc, rec.sinr_linear);
            out.links.push_back(rec);
        }
    }
    return out;
}

}  // namespace ntnsim
