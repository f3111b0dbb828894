#ifndef NTNSIM_CONFIG_HPP
#define NTNSIM_CONFIG_HPP

// Scenario configuration: JSON ingestion with defaults, strict unknown-key
// rejection, and cross-field validation.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "ntnsim/association.hpp"
#include "ntnsim/metrics.hpp"
#include "ntnsim/optimizer.hpp"
#include "ntnsim/orbital.hpp"

#include "json.hpp"

namespace ntnsim {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Whether the covered-user set resets every time step (default) or persists
// across the whole trial.
enum class CoverageReset { PerStep, Persistent };

struct OptimizerConfig {
    SearchStrategy strategy = SearchStrategy::GpEi;
    int budget = 40;
    int n_init = 10;
    int trial_realizations = 3;
};

struct ScenarioConfig {
    int users = 500;
    int steps = 24;
    double step_seconds = 3600.0;
    int realizations = 50;
    std::uint64_t seed = 42;
    double omega = 0.5;
    double rate_ref_bps = 2.0e10;
    int threads = 0;  // 0 = hardware concurrency

    ChannelParams radio;
    int beams_per_satellite = 15;  // X
    int users_per_beam = 20;       // Z
    BandwidthPolicy bandwidth_policy = BandwidthPolicy::FullReuse;
    CoverageReset coverage_reset = CoverageReset::PerStep;

    LayerConfig leo{LayerId::Leo, 9, 15, 600.0, 53.0, 0.0};
    LayerConfig meo{LayerId::Meo, 7, 3, 20200.0, 56.0, 0.0};
    LayerConfig geo{LayerId::Geo, 1, 3, 35786.0, 0.0, -100.0};

    MobilityParams mobility;
    std::string region_file = "data/canada.geojson";

    SearchSpace search_space;
    OptimizerConfig optimizer;

    // Design point implied by the configured LEO/MEO layers.
    DesignPoint design() const {
        return {leo.planes, leo.sats_per_plane, meo.planes, meo.sats_per_plane};
    }

    // Three-layer constellation for a given design; GEO stays as configured.
    Constellation make_constellation(const DesignPoint& d) const;

    AssociationConfig association() const;

    // Resolved config as JSON (all defaults applied), used for the summary echo.
    nlohmann::json to_json() const;
};

// Parses and validates a scenario JSON document. Unknown keys, type
// mismatches, and out-of-range values raise ConfigError with the field path.
ScenarioConfig parse_config(const nlohmann::json& doc);

// Loads from file; relative region paths resolve against the file's directory.
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace ntnsim

#endif  // NTNSIM_CONFIG_HPP
