#include "ntnsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ntnsim {

double user_rate_bps(double bandwidth_hz, double sinr_linear) {
    if (bandwidth_hz <= 0.0) {
        throw std::invalid_argument("user_rate_bps: bandwidth must be positive");
    }
    return bandwidth_hz * std::log2(1.0 + sinr_linear);
}

double sum_rate_bps(std::span<const LinkRecord> links) {
    double total = 0.0;
    for (const auto& l : links) total += l.rate_bps;
    return total;
}

double jfi(std::span<const double> served_rates, int n_total_users) {
    if (n_total_users < 1) {
        throw std::invalid_argument("jfi: total user count must be >= 1");
    }
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double r : served_rates) {
        sum += r;
        sum_sq += r * r;
    }
    if (sum_sq <= 0.0) return 0.0;
    return (sum * sum) / (static_cast<double>(n_total_users) * sum_sq);
}

double scalarize(double mean_sum_rate_bps, double mean_jfi, double omega, double rate_ref_bps) {
    if (omega < 0.0 || omega > 1.0) {
        throw std::invalid_argument("scalarize: omega must be in [0, 1]");
    }
    if (rate_ref_bps <= 0.0) {
        throw std::invalid_argument("scalarize: rate reference must be positive");
    }
    const double normalized = std::min(mean_sum_rate_bps / rate_ref_bps, 1.0);
    return omega * normalized + (1.0 - omega) * mean_jfi;
}

double beam_radius_km(const GeoPoint& centroid, std::span<const GeoPoint> admitted_positions) {
    if (admitted_positions.empty()) {
        throw std::invalid_argument("beam_radius_km: beam has no admitted members");
    }
    double radius = 0.0;
    for (const auto& p : admitted_positions) {
        radius = std::max(radius, haversine_km(centroid, p));
    }
    return radius;
}

MeanCi aggregate_values(std::span<const double> values) {
    MeanCi out;
    out.n = static_cast<int>(values.size());
    if (values.empty()) return out;

    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());

    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) {
            const double d = v - out.mean;
            ss += d * d;
        }
        const double stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
        out.ci_half_width = 1.96 * stddev / std::sqrt(static_cast<double>(values.size()));
        out.ci_defined = true;
    }
    return out;
}

std::vector<MeanCi> aggregate_series(const std::vector<std::vector<double>>& series) {
    if (series.empty()) return {};
    const std::size_t steps = series.front().size();
    for (const auto& s : series) {
        if (s.size() != steps) {
            throw std::invalid_argument("aggregate_series: realizations have unequal lengths");
        }
    }
    std::vector<MeanCi> out;
    out.reserve(steps);
    std::vector<double> column(series.size());
    for (std::size_t t = 0; t < steps; ++t) {
        for (std::size_t r = 0; r < series.size(); ++r) column[r] = series[r][t];
        out.push_back(aggregate_values(column));
    }
    return out;
}

}  // namespace ntnsim
