#ifndef NTNSIM_SIMULATION_HPP
#define NTNSIM_SIMULATION_HPP

// Scenario orchestration: seeded realizations, step loops, aggregation, and
// the optimize-mode objective wrapper.

#include <cstdint>
#include <vector>

#include "ntnsim/association.hpp"
#include "ntnsim/config.hpp"
#include "ntnsim/metrics.hpp"
#include "ntnsim/region.hpp"

namespace ntnsim {

struct RealizationResult {
    std::uint64_t seed = 0;
    std::vector<StepAssignment> steps;
    std::vector<StepMetrics> metrics;
};

struct EvaluateResult {
    DesignPoint design;
    std::vector<RealizationResult> realizations;
    double mean_sum_rate_bps = 0.0;   // grand mean over steps and realizations
    double mean_jfi = 0.0;            // grand mean of per-step JFI
    double jfi_of_mean_user_rates = 0.0;  // JFI of per-user time-averaged rates
    double objective = 0.0;
    MeanCi sum_rate_ci;  // across per-realization means
    MeanCi jfi_ci;
};

struct OptimizeRunResult {
    OptimizeResult search;
    EvaluateResult best_eval;  // best design re-evaluated at trial realizations
};

// Per-step metric extraction from one assignment.
StepMetrics compute_step_metrics(const StepAssignment& assignment,
                                 std::span<const UserState> users, int n_users);

// One seeded end-to-end realization of a design.
RealizationResult run_realization(const ScenarioConfig& cfg, const RegionModel& region,
                                  const DesignPoint& design, std::uint64_t seed);

// Runs `n_realizations` realizations (seed = master_seed + r), in parallel
// when cfg.threads allows, and aggregates. Output is independent of the
// thread count.
EvaluateResult run_evaluate(const ScenarioConfig& cfg, const RegionModel& region,
                            const DesignPoint& design, int n_realizations,
                            std::uint64_t master_seed);

// Outer-loop search over the configured space; each trial evaluates at
// cfg.optimizer.trial_realizations with the master seed.
OptimizeRunResult run_optimize(const ScenarioConfig& cfg, const RegionModel& region);

}  // namespace ntnsim

#endif  // NTNSIM_SIMULATION_HPP
