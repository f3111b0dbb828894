#ifndef NTNSIM_ASSOCIATION_HPP
#define NTNSIM_ASSOCIATION_HPP

// Per-step beam formation: cluster uncovered users, map clusters to
// capacity-feasible satellites, admit the top-Z users per beam by SINR.

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ntnsim/channel.hpp"
#include "ntnsim/metrics.hpp"
#include "ntnsim/mobility.hpp"
#include "ntnsim/orbital.hpp"
#include "ntnsim/rng.hpp"

namespace ntnsim {

struct Beam {
    int beam_id = -1;
    SatelliteSnapshot sat;
    GeoPoint centroid;
    std::vector<int> members;   // candidate user ids from the cluster
    std::vector<int> admitted;  // user ids actually served, <= Z
};

struct StepAssignment {
    int t = 0;
    std::vector<Beam> beams;           // activation order across all layers
    std::vector<int> beam_of_user;     // per user id; -1 when unserved
    std::vector<LinkRecord> links;     // one per admitted user, final active set
    std::map<SatId, int> beams_per_sat;
};

struct AssociationConfig {
    int max_beams_per_sat = 15;   // X
    int max_users_per_beam = 20;  // Z
    ChannelParams channel;
    BandwidthPolicy bandwidth_policy = BandwidthPolicy::FullReuse;
};

// Feasible cluster count min(n_sats * X, ceil(n_rem / Z), n_rem); 0 when
// nothing remains to cover.
int feasible_cluster_count(int n_remaining, int n_sats, int max_beams_per_sat,
                           int max_users_per_beam);

struct KMeansResult {
    std::vector<GeoPoint> centroids;
    std::vector<std::vector<int>> clusters;  // indices into the input points
};

// Lloyd's iterations on (lat, lon) as planar coordinates, k-means++ seeded
// from rng. Empty clusters are repaired by stealing the farthest point from
// the largest cluster. All ties break toward the lowest index.
// Throws std::invalid_argument when k is outside [1, |points|].
KMeansResult kmeans_cluster(std::span<const GeoPoint> points, int k, Rng& rng,
                            int max_iters = 50);

// Nearest visible satellite (haversine to sub-satellite point) that still has
// beam capacity; ties by lowest (plane, sat). Returns the index into `sats`,
// or nullopt when no satellite qualifies.
std::optional<std::size_t> assign_cluster_to_satellite(const GeoPoint& centroid,
                                                       std::span<const SatelliteSnapshot> sats,
                                                       std::span<const int> beams_used,
                                                       int max_beams_per_sat,
                                                       double min_elevation_deg);

// The min(Z, |cluster|) users with highest SINR; ties admit lower user ids.
std::vector<int> select_top_z(std::span<const int> user_ids, std::span<const double> sinr,
                              int max_users_per_beam);

// Runs one full association step over layers L, M, G. `covered` lists user
// ids already served before this step (empty for the per-step-reset policy).
// Admission-time SINR sees the beams activated so far within the step; all
// link records are then recomputed against the final active set.
StepAssignment run_association_step(std::span<const UserState> users,
                                    std::span<const SatelliteSnapshot> sats,
                                    const AssociationConfig& cfg, Rng& rng, int t = 0,
                                    std::span<const int> covered = {});

}  // namespace ntnsim

#endif  // NTNSIM_ASSOCIATION_HPP
