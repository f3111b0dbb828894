#include "ntnsim/simulation.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace ntnsim {

namespace {

// Substream key spaces under the realization seed: users are forked directly
// by user id inside init_users; association draws fork under this offset.
constexpr std::uint64_t kStepStreamBase = 0x200000000ull;

}  // namespace

StepMetrics compute_step_metrics(const StepAssignment& assignment,
                                 std::span<const UserState> users, int n_users) {
    StepMetrics out;
    out.t = assignment.t;

    std::array<std::map<SatId, int>, 3> sat_beams;
    std::array<std::vector<double>, 3> radii;
    for (const auto& beam : assignment.beams) {
        const int li = static_cast<int>(beam.sat.id.layer);
        out.layers[li].users_covered += static_cast<int>(beam.admitted.size());
        ++sat_beams[li][beam.sat.id];

        std::vector<GeoPoint> admitted_pos;
        admitted_pos.reserve(beam.admitted.size());
        for (int uid : beam.admitted) admitted_pos.push_back(users[uid].position);
        radii[li].push_back(beam_radius_km(beam.centroid, admitted_pos));
    }
    for (int li = 0; li < 3; ++li) {
        auto& layer = out.layers[li];
        layer.active_sats = static_cast<int>(sat_beams[li].size());
        if (layer.active_sats > 0) {
            int beams = 0;
            for (const auto& [sat, count] : sat_beams[li]) beams += count;
            layer.mean_beams_per_active_sat =
                static_cast<double>(beams) / static_cast<double>(layer.active_sats);
        }
        if (!radii[li].empty()) {
            double sum = 0.0;
            for (double r : radii[li]) sum += r;
            layer.mean_beam_radius_km = sum / static_cast<double>(radii[li].size());
            layer.beam_radius_defined = true;
        }
    }

    out.sum_rate_bps = sum_rate_bps(assignment.links);
    std::vector<double> rates;
    rates.reserve(assignment.links.size());
    for (const auto& l : assignment.links) rates.push_back(l.rate_bps);
    out.jfi = jfi(rates, n_users);
    return out;
}

RealizationResult run_realization(const ScenarioConfig& cfg, const RegionModel& region,
                                  const DesignPoint& design, std::uint64_t seed) {
    RealizationResult result;
    result.seed = seed;
    result.steps.reserve(cfg.steps);
    result.metrics.reserve(cfg.steps);

    const Constellation constellation = cfg.make_constellation(design);
    const AssociationConfig assoc = cfg.association();
    const Rng realization_rng(seed);

    std::vector<UserState> users = init_users(cfg.users, region, cfg.mobility, seed);
    std::vector<int> covered;  // persists only under CoverageReset::Persistent

    for (int t = 0; t < cfg.steps; ++t) {
        if (t > 0) step_users(users, cfg.mobility, region);
        const auto sats = propagate(constellation, t * cfg.step_seconds);
        Rng step_rng = realization_rng.fork(kStepStreamBase + static_cast<std::uint64_t>(t));

        std::span<const int> prior_covered =
            cfg.coverage_reset == CoverageReset::Persistent ? std::span<const int>(covered)
                                                            : std::span<const int>();
        StepAssignment assignment =
            run_association_step(users, sats, assoc, step_rng, t, prior_covered);

        if (cfg.coverage_reset == CoverageReset::Persistent) {
            for (const auto& beam : assignment.beams) {
                covered.insert(covered.end(), beam.admitted.begin(), beam.admitted.end());
            }
        }

        result.metrics.push_back(compute_step_metrics(assignment, users, cfg.users));
        result.steps.push_back(std::move(assignment));
    }
    return result;
}

EvaluateResult run_evaluate(const ScenarioConfig& cfg, const RegionModel& region,
                            const DesignPoint& design, int n_realizations,
                            std::uint64_t master_seed) {
    EvaluateResult out;
    out.design = design;
    out.realizations.resize(static_cast<std::size_t>(n_realizations));

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const int workers = std::min<int>(
        n_realizations, cfg.threads > 0 ? cfg.threads : static_cast<int>(hw));

    auto run_one = [&](int r) {
        out.realizations[r] =
            run_realization(cfg, region, design, master_seed + static_cast<std::uint64_t>(r));
    };

    if (workers <= 1) {
        for (int r = 0; r < n_realizations; ++r) run_one(r);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int r = w; r < n_realizations; r += workers) run_one(r);
            });
        }
        for (auto& th : pool) th.join();
    }

    // Grand means over steps and realizations, plus per-realization means
    // for the confidence intervals.
    std::vector<double> rate_means;
    std::vector<double> jfi_means;
    std::vector<double> jfi_time_avg;
    rate_means.reserve(out.realizations.size());
    for (const auto& real : out.realizations) {
        double rate_sum = 0.0;
        double jfi_sum = 0.0;
        std::vector<double> user_rate_total(static_cast<std::size_t>(cfg.users), 0.0);
        for (const auto& m : real.metrics) {
            rate_sum += m.sum_rate_bps;
            jfi_sum += m.jfi;
        }
        for (const auto& step : real.steps) {
            for (const auto& link : step.links) user_rate_total[link.user_id] += link.rate_bps;
        }
        for (auto& v : user_rate_total) v /= static_cast<double>(cfg.steps);
        rate_means.push_back(rate_sum / cfg.steps);
        jfi_means.push_back(jfi_sum / cfg.steps);
        jfi_time_avg.push_back(jfi(user_rate_total, cfg.users));
    }

    out.sum_rate_ci = aggregate_values(rate_means);
    out.jfi_ci = aggregate_values(jfi_means);
    out.mean_sum_rate_bps = out.sum_rate_ci.mean;
    out.mean_jfi = out.jfi_ci.mean;
    out.jfi_of_mean_user_rates = aggregate_values(jfi_time_avg).mean;
    out.objective = scalarize(out.mean_sum_rate_bps, out.mean_jfi, cfg.omega, cfg.rate_ref_bps);
    return out;
}

OptimizeRunResult run_optimize(const ScenarioConfig& cfg, const RegionModel& region) {
    const Evaluator evaluate = [&](const DesignPoint& d) {
        const EvaluateResult r =
            run_evaluate(cfg, region, d, cfg.optimizer.trial_realizations, cfg.seed);
        return EvalOutcome{r.objective, r.mean_sum_rate_bps, r.mean_jfi};
    };

    Rng search_rng(cfg.seed);
    OptimizeRunResult out;
    out.search = optimize(cfg.search_space, evaluate, cfg.optimizer.budget,
                          cfg.optimizer.strategy, search_rng, cfg.optimizer.n_init, cfg.seed);
    out.best_eval = run_evaluate(cfg, region, out.search.best,
                                 cfg.optimizer.trial_realizations, cfg.seed);
    return out;
}

}  // namespace ntnsim
