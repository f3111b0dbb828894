#ifndef NTNSIM_OPTIMIZER_HPP
#define NTNSIM_OPTIMIZER_HPP

// Integer constellation design search: Gaussian-process Bayesian optimization
// with expected improvement, plus random and grid baselines.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntnsim/rng.hpp"

namespace ntnsim {

struct IntRange {
    int lo = 0;
    int hi = 0;

    int size() const { return hi - lo + 1; }
};

struct SearchSpace {
    IntRange leo_planes{2, 10};
    IntRange leo_sats{2, 15};
    IntRange meo_planes{2, 10};
    IntRange meo_sats{2, 15};

    std::size_t grid_size() const;
};

struct DesignPoint {
    int leo_planes = 0;
    int leo_sats = 0;
    int meo_planes = 0;
    int meo_sats = 0;

    auto operator<=>(const DesignPoint&) const = default;
};

enum class SearchStrategy { GpEi, Random, Grid };

SearchStrategy parse_strategy(const std::string& name);
const char* strategy_name(SearchStrategy s);

struct EvalOutcome {
    double objective = 0.0;
    double mean_sum_rate_bps = 0.0;
    double mean_jfi = 0.0;
};

struct TrialRecord {
    int trial = 0;
    DesignPoint config;
    double objective = 0.0;
    double mean_sum_rate_bps = 0.0;
    double mean_jfi = 0.0;
    std::uint64_t seed = 0;
};

struct OptimizeResult {
    DesignPoint best;
    double best_objective = 0.0;
    std::vector<TrialRecord> history;
};

using Evaluator = std::function<EvalOutcome(const DesignPoint&)>;

// Gaussian-process regression with a Matern-5/2 kernel, constant prior mean
// equal to mean(y), and diagonal observation jitter. Dimension-agnostic;
// optimize() feeds it designs scaled to the unit cube.
class GaussianProcess {
  public:
    // Throws std::runtime_error if the kernel stays singular after the
    // jitter has been escalated x10 three times.
    GaussianProcess(std::vector<std::vector<double>> x, std::vector<double> y,
                    double length_scale, double signal_variance, double jitter = 1e-6);

    struct Posterior {
        double mean = 0.0;
        double variance = 0.0;  // clamped to >= 0
    };

    Posterior posterior(std::span<const double> query) const;
    double log_marginal_likelihood() const;

    // Hyperparameter selection by log marginal likelihood over a fixed 8x8
    // log-grid of (length scale, signal variance).
    static GaussianProcess fit(std::vector<std::vector<double>> x, std::vector<double> y);

    double length_scale() const { return length_scale_; }
    double signal_variance() const { return signal_variance_; }

  private:
    std::vector<std::vector<double>> x_;
    std::vector<double> y_;
    double mean_y_ = 0.0;
    double length_scale_ = 1.0;
    double signal_variance_ = 1.0;
    double jitter_ = 1e-6;
    std::vector<double> chol_;   // lower-triangular factor of K + jitter*I
    std::vector<double> alpha_;  // (K + jitter*I)^{-1} (y - mean_y)

    double kernel(std::span<const double> a, std::span<const double> b) const;
    void factorize();
};

// EI = (mean - f_best) * Phi(z) + sigma * phi(z); max(mean - f_best, 0) when
// sigma is zero.
double expected_improvement(double mean, double variance, double f_best);

// Exhaustive EI argmax over the untried grid; ties resolve lexicographically.
// nullopt once the grid is exhausted. History must be non-empty.
std::optional<DesignPoint> propose_next(std::span<const TrialRecord> history,
                                        const SearchSpace& space);

// Runs the search. gp-ei: n_init distinct random points, then EI proposals.
// Never re-evaluates a configuration; caps at the grid size. Returns the
// argmax over the history (earliest trial on ties).
OptimizeResult optimize(const SearchSpace& space, const Evaluator& evaluate, int budget,
                        SearchStrategy strategy, Rng& rng, int n_init = 10,
                        std::uint64_t eval_seed = 0);

}  // namespace ntnsim

#endif  // NTNSIM_OPTIMIZER_HPP
