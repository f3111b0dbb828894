// ntnsim command line: evaluate a constellation design or search for one.
//
//   ntnsim --config scenario.json --mode evaluate --out-dir out/
//   ntnsim --config scenario.json --mode optimize --trials 40 --out-dir out/
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error, 1 anything else.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ntnsim/config.hpp"
#include "ntnsim/output.hpp"
#include "ntnsim/region.hpp"
#include "ntnsim/simulation.hpp"

using namespace ntnsim;

int main(int argc, char** argv) {
    CLI::App app{"Multi-layer satellite constellation simulator and optimizer"};

    std::string config_path;
    std::string mode = "evaluate";
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed_override;
    std::optional<int> realizations_override;
    std::optional<int> trials_override;

    app.add_option("--config", config_path, "Scenario config JSON")->required();
    app.add_option("--mode", mode, "evaluate | optimize")
        ->check(CLI::IsMember({"evaluate", "optimize"}));
    app.add_option("--seed", seed_override, "Master seed override");
    app.add_option("--out-dir", out_dir, "Output directory");
    app.add_option("--realizations", realizations_override, "Realization count override");
    app.add_option("--trials", trials_override, "Optimizer budget override");

    CLI11_PARSE(app, argc, argv);

    try {
        ScenarioConfig cfg = load_config(config_path);
        if (seed_override) cfg.seed = *seed_override;
        if (realizations_override) {
            if (*realizations_override < 1) throw ConfigError("--realizations must be >= 1");
            cfg.realizations = *realizations_override;
        }
        if (trials_override) {
            if (*trials_override < 1) throw ConfigError("--trials must be >= 1");
            cfg.optimizer.budget = *trials_override;
        }

        const RegionModel region = RegionModel::from_geojson_file(cfg.region_file);

        RunOutputs outputs;
        if (mode == "evaluate") {
            const EvaluateResult result =
                run_evaluate(cfg, region, cfg.design(), cfg.realizations, cfg.seed);
            outputs = render_evaluate_outputs(cfg, result);
            std::printf("evaluate: design (P_L=%d, S_L=%d, P_M=%d, S_M=%d)\n",
                        result.design.leo_planes, result.design.leo_sats,
                        result.design.meo_planes, result.design.meo_sats);
            std::printf("  mean sum rate : %.4f Gbps\n", result.mean_sum_rate_bps / 1e9);
            std::printf("  mean JFI      : %.4f\n", result.mean_jfi);
            std::printf("  objective     : %.6f\n", result.objective);
        } else {
            const OptimizeRunResult result = run_optimize(cfg, region);
            outputs = render_optimize_outputs(cfg, result);
            std::printf("optimize: %zu trials (%s)\n", result.search.history.size(),
                        strategy_name(cfg.optimizer.strategy));
            std::printf("  best design   : P_L=%d, S_L=%d, P_M=%d, S_M=%d\n",
                        result.search.best.leo_planes, result.search.best.leo_sats,
                        result.search.best.meo_planes, result.search.best.meo_sats);
            std::printf("  best objective: %.6f\n", result.search.best_objective);
            std::printf("  mean sum rate : %.4f Gbps\n",
                        result.best_eval.mean_sum_rate_bps / 1e9);
            std::printf("  mean JFI      : %.4f\n", result.best_eval.mean_jfi);
        }

        emit_outputs(outputs, out_dir);
        std::printf("outputs written to %s\n", out_dir.c_str());
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
