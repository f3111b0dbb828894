#ifndef NTNSIM_MOBILITY_HPP
#define NTNSIM_MOBILITY_HPP

// User placement on a land region and per-step kinematic motion.

#include <cstdint>
#include <vector>

#include "ntnsim/geo.hpp"
#include "ntnsim/region.hpp"
#include "ntnsim/rng.hpp"

namespace ntnsim {

// Per-component velocity/acceleration in degrees per step.
struct Kinematics2 {
    double dlat = 0.0;
    double dlon = 0.0;
};

struct MobilityParams {
    double v_max_deg = 0.05;       // initial |v| component bound [deg/step]
    double sigma_a_deg = 0.005;    // acceleration std dev [deg/step^2]
    double sigma_eta_deg = 0.01;   // per-step perturbation std dev [deg/step]
    double v_clamp_deg = 0.1;      // hard per-component speed limit [deg/step]
};

struct UserState {
    int user_id = 0;
    GeoPoint position;
    Kinematics2 velocity;
    Kinematics2 acceleration;  // drawn once at init, constant per user
    Rng rng{0};                // per-user stream, derived from seed + user_id
};

// Places n users uniformly over the region via rejection sampling on the
// bounding box. Velocities uniform in [-v_max, v_max] per component;
// accelerations Gaussian N(0, sigma_a^2). Each user gets its own RNG stream
// forked from `seed` by user id.
// Throws std::invalid_argument for n < 1 and std::runtime_error if rejection
// sampling exhausts 10^6 attempts for a user (degenerate region).
std::vector<UserState> init_users(int n, const RegionModel& region, const MobilityParams& params,
                                  std::uint64_t seed);

// One kinematic step for every user: v += a + eta, clamp, x += v. Positions
// leaving the region are retried with reflected velocities (up to 8 sign /
// half-magnitude patterns); if all fail the user holds position with the
// fully reversed velocity.
void step_users(std::vector<UserState>& users, const MobilityParams& params,
                const RegionModel& region);

}  // namespace ntnsim

#endif  // NTNSIM_MOBILITY_HPP
