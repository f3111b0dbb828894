#ifndef NTNSIM_OUTPUT_HPP
#define NTNSIM_OUTPUT_HPP

// Deterministic CSV/JSON rendering and file emission. Floats are written
// with 9 significant digits; undefined values become empty CSV fields and
// JSON nulls; NaN/Inf are never serialized.

#include <filesystem>
#include <optional>
#include <string>

#include "ntnsim/simulation.hpp"

namespace ntnsim {

struct RunOutputs {
    std::string step_metrics_csv;
    std::string step_aggregate_csv;
    std::optional<std::string> trials_csv;  // optimize mode only
    std::string summary_json;
};

// Value rounded to 9 significant digits, as serialized everywhere.
double round_to_output_precision(double v);

RunOutputs render_evaluate_outputs(const ScenarioConfig& cfg, const EvaluateResult& result);
RunOutputs render_optimize_outputs(const ScenarioConfig& cfg, const OptimizeRunResult& result);

// Writes step_metrics.csv, step_aggregate.csv, trials.csv (when present),
// and summary.json into out_dir, creating it if needed.
// Throws std::runtime_error on I/O failure, naming the path.
void emit_outputs(const RunOutputs& outputs, const std::filesystem::path& out_dir);

}  // namespace ntnsim

#endif  // NTNSIM_OUTPUT_HPP
