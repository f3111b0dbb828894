#include "ntnsim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "ntnsim/constants.hpp"

namespace ntnsim {

std::size_t SearchSpace::grid_size() const {
    return static_cast<std::size_t>(leo_planes.size()) * leo_sats.size() * meo_planes.size() *
           meo_sats.size();
}

SearchStrategy parse_strategy(const std::string& name) {
    if (name == "gp-ei") return SearchStrategy::GpEi;
    if (name == "random") return SearchStrategy::Random;
    if (name == "grid") return SearchStrategy::Grid;
    throw std::invalid_argument("unknown search strategy '" + name + "'");
}

const char* strategy_name(SearchStrategy s) {
    switch (s) {
        case SearchStrategy::GpEi: return "gp-ei";
        case SearchStrategy::Random: return "random";
        case SearchStrategy::Grid: return "grid";
    }
    return "?";
}

namespace {

// Unit-cube scaling per dimension; collapses a zero-width range to 0.5.
double scale_dim(int v, const IntRange& r) {
    if (r.hi == r.lo) return 0.5;
    return static_cast<double>(v - r.lo) / static_cast<double>(r.hi - r.lo);
}

std::vector<double> scale_design(const DesignPoint& d, const SearchSpace& s) {
    return {scale_dim(d.leo_planes, s.leo_planes), scale_dim(d.leo_sats, s.leo_sats),
            scale_dim(d.meo_planes, s.meo_planes), scale_dim(d.meo_sats, s.meo_sats)};
}

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double norm_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }

// Lexicographic enumeration of the whole design grid.
template <typename Fn>
void for_each_design(const SearchSpace& s, Fn&& fn) {
    for (int a = s.leo_planes.lo; a <= s.leo_planes.hi; ++a)
        for (int b = s.leo_sats.lo; b <= s.leo_sats.hi; ++b)
            for (int c = s.meo_planes.lo; c <= s.meo_planes.hi; ++c)
                for (int d = s.meo_sats.lo; d <= s.meo_sats.hi; ++d)
                    fn(DesignPoint{a, b, c, d});
}

}  // namespace

GaussianProcess::GaussianProcess(std::vector<std::vector<double>> x, std::vector<double> y,
                                 double length_scale, double signal_variance, double jitter)
    : x_(std::move(x)),
      y_(std::move(y)),
      length_scale_(length_scale),
      signal_variance_(signal_variance),
      jitter_(jitter) {
    if (x_.empty() || x_.size() != y_.size()) {
        throw std::invalid_argument("GaussianProcess: needs matching non-empty x and y");
    }
    double sum = 0.0;
    for (double v : y_) sum += v;
    mean_y_ = sum / static_cast<double>(y_.size());
    factorize();
}

double GaussianProcess::kernel(std::span<const double> a, std::span<const double> b) const {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        d2 += d * d;
    }
    const double u = std::sqrt(5.0 * d2) / length_scale_;
    return signal_variance_ * (1.0 + u + u * u / 3.0) * std::exp(-u);
}

void GaussianProcess::factorize() {
    const std::size_t n = x_.size();
    std::vector<double> base(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            base[i * n + j] = kernel(x_[i], x_[j]);
            base[j * n + i] = base[i * n + j];
        }
    }

    double jitter = jitter_;
    for (int attempt = 0; attempt < 4; ++attempt) {
        chol_ = base;
        for (std::size_t i = 0; i < n; ++i) chol_[i * n + i] += jitter;

        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            double diag = chol_[j * n + j];
            for (std::size_t k = 0; k < j; ++k) diag -= chol_[j * n + k] * chol_[j * n + k];
            if (diag <= 0.0) {
                ok = false;
                break;
            }
            chol_[j * n + j] = std::sqrt(diag);
            for (std::size_t i = j + 1; i < n; ++i) {
                double v = chol_[i * n + j];
                for (std::size_t k = 0; k < j; ++k) v -= chol_[i * n + k] * chol_[j * n + k];
                chol_[i * n + j] = v / chol_[j * n + j];
            }
        }
        if (ok) {
            jitter_ = jitter;
            // alpha = (K + jitter I)^{-1} (y - m) via two triangular solves.
            alpha_.assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                double v = y_[i] - mean_y_;
                for (std::size_t k = 0; k < i; ++k) v -= chol_[i * n + k] * alpha_[k];
                alpha_[i] = v / chol_[i * n + i];
            }
            for (std::size_t ii = n; ii-- > 0;) {
                double v = alpha_[ii];
                for (std::size_t k = ii + 1; k < n; ++k) v -= chol_[k * n + ii] * alpha_[k];
                alpha_[ii] = v / chol_[ii * n + ii];
            }
            return;
        }
        jitter *= 10.0;
    }
    throw std::runtime_error("GaussianProcess: kernel matrix not positive definite");
}

GaussianProcess::Posterior GaussianProcess::posterior(std::span<const double> query) const {
    const std::size_t n = x_.size();
    std::vector<double> k_star(n);
    for (std::size_t i = 0; i < n; ++i) k_star[i] = kernel(x_[i], query);

    Posterior out;
    out.mean = mean_y_;
    for (std::size_t i = 0; i < n; ++i) out.mean += k_star[i] * alpha_[i];

    // v = L^{-1} k*, variance = k(x,x) - v.v
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = k_star[i];
        for (std::size_t k = 0; k < i; ++k) s -= chol_[i * n + k] * v[k];
        v[i] = s / chol_[i * n + i];
    }
    double var = kernel(query, query);
    for (std::size_t i = 0; i < n; ++i) var -= v[i] * v[i];
    out.variance = std::max(var, 0.0);
    return out;
}

double GaussianProcess::log_marginal_likelihood() const {
    const std::size_t n = x_.size();
    double fit = 0.0;
    for (std::size_t i = 0; i < n; ++i) fit += (y_[i] - mean_y_) * alpha_[i];
    double log_det = 0.0;
    for (std::size_t i = 0; i < n; ++i) log_det += std::log(chol_[i * n + i]);
    return -0.5 * fit - log_det - 0.5 * static_cast<double>(n) * std::log(2.0 * kPi);
}

GaussianProcess GaussianProcess::fit(std::vector<std::vector<double>> x, std::vector<double> y) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double var = 0.0;
    for (double v : y) var += (v - mean) * (v - mean);
    var = std::max(var / static_cast<double>(y.size()), 1e-12);

    // 8x8 log-grid: length scales over [0.03, 3], signal variances over
    // [0.01, 100] x var(y).
    double best_ll = -std::numeric_limits<double>::infinity();
    double best_ls = 1.0;
    double best_sv = var;
    for (int i = 0; i < 8; ++i) {
        const double ls = std::pow(10.0, -1.5 + 2.0 * i / 7.0);
        for (int j = 0; j < 8; ++j) {
            const double sv = var * std::pow(10.0, -2.0 + 4.0 * j / 7.0);
            try {
                GaussianProcess gp(x, y, ls, sv);
                const double ll = gp.log_marginal_likelihood();
                if (ll > best_ll) {
                    best_ll = ll;
                    best_ls = ls;
                    best_sv = sv;
                }
            } catch (const std::runtime_error&) {
                // Singular at this setting; skip.
            }
        }
    }
    return GaussianProcess(std::move(x), std::move(y), best_ls, best_sv);
}

double expected_improvement(double mean, double variance, double f_best) {
    if (variance < 0.0) {
        throw std::invalid_argument("expected_improvement: variance must be >= 0");
    }
    const double sigma = std::sqrt(variance);
    if (sigma < 1e-12) return std::max(mean - f_best, 0.0);
    const double z = (mean - f_best) / sigma;
    return (mean - f_best) * norm_cdf(z) + sigma * norm_pdf(z);
}

std::optional<DesignPoint> propose_next(std::span<const TrialRecord> history,
                                        const SearchSpace& space) {
    if (history.empty()) {
        throw std::invalid_argument("propose_next: history must be non-empty");
    }
    std::set<DesignPoint> tried;
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    double f_best = -std::numeric_limits<double>::infinity();
    for (const auto& rec : history) {
        tried.insert(rec.config);
        x.push_back(scale_design(rec.config, space));
        y.push_back(rec.objective);
        f_best = std::max(f_best, rec.objective);
    }
    if (tried.size() >= space.grid_size()) return std::nullopt;

    const GaussianProcess gp = GaussianProcess::fit(std::move(x), std::move(y));

    std::optional<DesignPoint> best;
    double best_ei = -1.0;
    for_each_design(space, [&](const DesignPoint& d) {
        if (tried.count(d)) return;
        const auto post = gp.posterior(scale_design(d, space));
        const double ei = expected_improvement(post.mean, post.variance, f_best);
        if (ei > best_ei) {
            best_ei = ei;
            best = d;
        }
    });
    return best;
}

namespace {

DesignPoint random_design(const SearchSpace& s, Rng& rng) {
    return {rng.uniform_int(s.leo_planes.lo, s.leo_planes.hi),
            rng.uniform_int(s.leo_sats.lo, s.leo_sats.hi),
            rng.uniform_int(s.meo_planes.lo, s.meo_planes.hi),
            rng.uniform_int(s.meo_sats.lo, s.meo_sats.hi)};
}

// Distinct random draw; falls back to the first untried point in
// lexicographic order if rejection stalls on a nearly full grid.
std::optional<DesignPoint> random_untried(const SearchSpace& s, const std::set<DesignPoint>& tried,
                                          Rng& rng) {
    if (tried.size() >= s.grid_size()) return std::nullopt;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const DesignPoint d = random_design(s, rng);
        if (!tried.count(d)) return d;
    }
    std::optional<DesignPoint> fallback;
    for_each_design(s, [&](const DesignPoint& d) {
        if (!fallback && !tried.count(d)) fallback = d;
    });
    return fallback;
}

}  // namespace

OptimizeResult optimize(const SearchSpace& space, const Evaluator& evaluate, int budget,
                        SearchStrategy strategy, Rng& rng, int n_init,
                        std::uint64_t eval_seed) {
    if (budget < 1) {
        throw std::invalid_argument("optimize: budget must be >= 1");
    }
    const std::size_t grid = space.grid_size();
    const std::size_t max_trials = std::min<std::size_t>(budget, grid);

    OptimizeResult result;
    std::set<DesignPoint> tried;

    auto run_trial = [&](const DesignPoint& d) {
        const EvalOutcome o = evaluate(d);
        TrialRecord rec;
        rec.trial = static_cast<int>(result.history.size());
        rec.config = d;
        rec.objective = o.objective;
        rec.mean_sum_rate_bps = o.mean_sum_rate_bps;
        rec.mean_jfi = o.mean_jfi;
        rec.seed = eval_seed;
        result.history.push_back(rec);
        tried.insert(d);
    };

    if (strategy == SearchStrategy::Grid) {
        for_each_design(space, [&](const DesignPoint& d) {
            if (result.history.size() < max_trials) run_trial(d);
        });
    } else if (strategy == SearchStrategy::Random) {
        while (result.history.size() < max_trials) {
            const auto d = random_untried(space, tried, rng);
            if (!d) break;
            run_trial(*d);
        }
    } else {
        const std::size_t init_count = std::min<std::size_t>(std::max(n_init, 1), max_trials);
        while (result.history.size() < init_count) {
            const auto d = random_untried(space, tried, rng);
            if (!d) break;
            run_trial(*d);
        }
        while (result.history.size() < max_trials) {
            const auto d = propose_next(result.history, space);
            if (!d) break;
            run_trial(*d);
        }
    }

    double best = -std::numeric_limits<double>::infinity();
    for (const auto& rec : result.history) {
        if (rec.objective > best) {
            best = rec.objective;
            result.best = rec.config;
            result.best_objective = rec.objective;
        }
    }
    return result;
}

}  // namespace ntnsim
