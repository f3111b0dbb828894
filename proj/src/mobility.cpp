#include "ntnsim/mobility.hpp"

#include <algorithm>
#include <stdexcept>

namespace ntnsim {

namespace {

constexpr int kMaxPlacementAttempts = 1000000;

double clamp_component(double v, double limit) { return std::clamp(v, -limit, limit); }

}  // namespace

std::vector<UserState> init_users(int n, const RegionModel& region, const MobilityParams& params,
                                  std::uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("init_users: user count must be >= 1");
    }
    const Rng master(seed);
    const BoundingBox& box = region.bbox();

    std::vector<UserState> users;
    users.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        UserState u;
        u.user_id = i;
        u.rng = master.fork(static_cast<std::uint64_t>(i));

        bool placed = false;
        for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
            const GeoPoint candidate{u.rng.uniform(box.lat_min, box.lat_max),
                                     u.rng.uniform(box.lon_min, box.lon_max)};
            if (region.contains(candidate)) {
                u.position = candidate;
                placed = true;
                break;
            }
        }
        if (!placed) {
            throw std::runtime_error("init_users: rejection sampling exhausted; region is degenerate");
        }

        u.velocity = {u.rng.uniform(-params.v_max_deg, params.v_max_deg),
                      u.rng.uniform(-params.v_max_deg, params.v_max_deg)};
        u.acceleration = {u.rng.gaussian(0.0, params.sigma_a_deg),
                          u.rng.gaussian(0.0, params.sigma_a_deg)};
        users.push_back(std::move(u));
    }
    return users;
}

void step_users(std::vector<UserState>& users, const MobilityParams& params,
                const RegionModel& region) {
    for (auto& u : users) {
        Kinematics2 v = u.velocity;
        v.dlat += u.acceleration.dlat + u.rng.gaussian(0.0, params.sigma_eta_deg);
        v.dlon += u.acceleration.dlon + u.rng.gaussian(0.0, params.sigma_eta_deg);
        v.dlat = clamp_component(v.dlat, params.v_clamp_deg);
        v.dlon = clamp_component(v.dlon, params.v_clamp_deg);

        GeoPoint next{u.position.lat_deg + v.dlat, u.position.lon_deg + v.dlon};
        if (region.contains(next)) {
            u.position = next;
            u.velocity = v;
            continue;
        }

        // Reflection attempts: the three sign patterns at full magnitude,
        // then the same at half magnitude, then at quarter (8 total).
        static constexpr double kSigns[][2] = {{-1.0, 1.0}, {1.0, -1.0}, {-1.0, -1.0}};
        bool moved = false;
        double scale = 1.0;
        for (int attempt = 0; attempt < 8 && !moved; ++attempt) {
            const auto& sgn = kSigns[attempt % 3];
            if (attempt > 0 && attempt % 3 == 0) scale *= 0.5;
            const Kinematics2 w{sgn[0] * scale * v.dlat, sgn[1] * scale * v.dlon};
            const GeoPoint reflected{u.position.lat_deg + w.dlat, u.position.lon_deg + w.dlon};
            if (region.contains(reflected)) {
                u.position = reflected;
                u.velocity = w;
                moved = true;
            }
        }
        if (!moved) {
            // Hold position; bounce the velocity so the next step points back.
            u.velocity = {-v.dlat, -v.dlon};
        }
    }
}

}  // namespace ntnsim
