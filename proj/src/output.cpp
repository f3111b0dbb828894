#include "ntnsim/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ntnsim {

namespace {

std::string fmt(double v) {
    if (!std::isfinite(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

nlohmann::json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round_to_output_precision(v);
}

nlohmann::json design_json(const DesignPoint& d) {
    return {{"leo_planes", d.leo_planes},
            {"leo_sats_per_plane", d.leo_sats},
            {"meo_planes", d.meo_planes},
            {"meo_sats_per_plane", d.meo_sats}};
}

std::string render_step_metrics_csv(const EvaluateResult& result) {
    std::ostringstream os;
    os << "realization,t,layer,users_covered,active_sats,mean_beams_per_sat,"
          "mean_beam_radius_km,sum_rate_bps,jfi\n";
    for (std::size_t r = 0; r < result.realizations.size(); ++r) {
        const auto& real = result.realizations[r];
        for (const auto& m : real.metrics) {
            for (int li = 0; li < 3; ++li) {
                const auto& layer = m.layers[li];
                os << r << ',' << m.t << ',' << layer_name(static_cast<LayerId>(li)) << ','
                   << layer.users_covered << ',' << layer.active_sats << ',';
                if (layer.active_sats > 0) os << fmt(layer.mean_beams_per_active_sat);
                os << ',';
                if (layer.beam_radius_defined) os << fmt(layer.mean_beam_radius_km);
                os << ',' << fmt(m.sum_rate_bps) << ',' << fmt(m.jfi) << '\n';
            }
        }
    }
    return os.str();
}

// Mean and CI over realizations; undefined per-realization entries are
// skipped, so the sample count can shrink per cell.
void append_agg(std::ostringstream& os, const std::vector<double>& values) {
    const MeanCi agg = aggregate_values(values);
    if (agg.n > 0) os << fmt(agg.mean);
    os << ',';
    if (agg.ci_defined) os << fmt(agg.ci_half_width);
    os << ',';
}

std::string render_step_aggregate_csv(const EvaluateResult& result) {
    std::ostringstream os;
    os << "t,layer,users_covered_mean,users_covered_ci95,active_sats_mean,active_sats_ci95,"
          "mean_beams_per_sat_mean,mean_beams_per_sat_ci95,mean_beam_radius_km_mean,"
          "mean_beam_radius_km_ci95,sum_rate_bps_mean,sum_rate_bps_ci95,jfi_mean,jfi_ci95\n";
    if (result.realizations.empty()) return os.str();
    const std::size_t steps = result.realizations.front().metrics.size();
    for (std::size_t t = 0; t < steps; ++t) {
        for (int li = 0; li < 3; ++li) {
            std::vector<double> covered, active, beams, radius, rate, fairness;
            for (const auto& real : result.realizations) {
                const auto& m = real.metrics[t];
                const auto& layer = m.layers[li];
                covered.push_back(layer.users_covered);
                active.push_back(layer.active_sats);
                if (layer.active_sats > 0) beams.push_back(layer.mean_beams_per_active_sat);
                if (layer.beam_radius_defined) radius.push_back(layer.mean_beam_radius_km);
                rate.push_back(m.sum_rate_bps);
                fairness.push_back(m.jfi);
            }
            os << t << ',' << layer_name(static_cast<LayerId>(li)) << ',';
            append_agg(os, covered);
            append_agg(os, active);
            append_agg(os, beams);
            append_agg(os, radius);
            append_agg(os, rate);
            const MeanCi f = aggregate_values(fairness);
            os << fmt(f.mean) << ',';
            if (f.ci_defined) os << fmt(f.ci_half_width);
            os << '\n';
        }
    }
    return os.str();
}

std::string render_trials_csv(const std::vector<TrialRecord>& history) {
    std::ostringstream os;
    os << "trial,P_L,S_L,P_M,S_M,f,mean_R_gbps,mean_JFI,seed\n";
    for (const auto& rec : history) {
        os << rec.trial << ',' << rec.config.leo_planes << ',' << rec.config.leo_sats << ','
           << rec.config.meo_planes << ',' << rec.config.meo_sats << ',' << fmt(rec.objective)
           << ',' << fmt(rec.mean_sum_rate_bps / 1e9) << ',' << fmt(rec.mean_jfi) << ','
           << rec.seed << '\n';
    }
    return os.str();
}

nlohmann::json evaluation_json(const EvaluateResult& result) {
    nlohmann::json seeds = nlohmann::json::array();
    for (const auto& real : result.realizations) seeds.push_back(real.seed);
    return {
        {"design", design_json(result.design)},
        {"seeds", seeds},
        {"mean_sum_rate_bps", num(result.mean_sum_rate_bps)},
        {"mean_sum_rate_gbps", num(result.mean_sum_rate_bps / 1e9)},
        {"mean_jfi", num(result.mean_jfi)},
        {"jfi_of_mean_user_rates", num(result.jfi_of_mean_user_rates)},
        {"objective", num(result.objective)},
        {"ci95",
         {{"sum_rate_bps_half_width",
           result.sum_rate_ci.ci_defined ? num(result.sum_rate_ci.ci_half_width) : nullptr},
          {"jfi_half_width",
           result.jfi_ci.ci_defined ? num(result.jfi_ci.ci_half_width) : nullptr}}},
    };
}

}  // namespace

double round_to_output_precision(double v) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    const double mag = std::pow(10.0, 8 - std::floor(std::log10(std::fabs(v))));
    return std::round(v * mag) / mag;
}

RunOutputs render_evaluate_outputs(const ScenarioConfig& cfg, const EvaluateResult& result) {
    RunOutputs out;
    out.step_metrics_csv = render_step_metrics_csv(result);
    out.step_aggregate_csv = render_step_aggregate_csv(result);

    nlohmann::json summary = evaluation_json(result);
    summary["version"] = kVersion;
    summary["mode"] = "evaluate";
    summary["config"] = cfg.to_json();
    out.summary_json = summary.dump(2) + "\n";
    return out;
}

RunOutputs render_optimize_outputs(const ScenarioConfig& cfg, const OptimizeRunResult& result) {
    RunOutputs out;
    out.step_metrics_csv = render_step_metrics_csv(result.best_eval);
    out.step_aggregate_csv = render_step_aggregate_csv(result.best_eval);
    out.trials_csv = render_trials_csv(result.search.history);

    nlohmann::json summary = evaluation_json(result.best_eval);
    summary["version"] = kVersion;
    summary["mode"] = "optimize";
    summary["strategy"] = strategy_name(cfg.optimizer.strategy);
    summary["trials"] = result.search.history.size();
    summary["best_design"] = design_json(result.search.best);
    summary["best_objective"] = num(result.search.best_objective);
    summary["config"] = cfg.to_json();
    out.summary_json = summary.dump(2) + "\n";
    return out;
}

void emit_outputs(const RunOutputs& outputs, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + out_dir.string() +
                                 "': " + ec.message());
    }
    auto write = [&](const std::string& name, const std::string& content) {
        const auto path = out_dir / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot open '" + path.string() + "' for writing");
        }
        f << content;
        if (!f) {
            throw std::runtime_error("write failed for '" + path.string() + "'");
        }
    };
    write("step_metrics.csv", outputs.step_metrics_csv);
    write("step_aggregate.csv", outputs.step_aggregate_csv);
    if (outputs.trials_csv) write("trials.csv", *outputs.trials_csv);
    write("summary.json", outputs.summary_json);
}

}  // namespace ntnsim
