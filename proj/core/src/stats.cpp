#include "lolab/stats.hpp"

#include "lolab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lolab {

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) throw ArgumentError("wilson_interval: trials must be positive");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
    const double hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
    return {lo, hi};
}

double dkw_band(std::size_t samples, double alpha) {
    if (samples == 0) throw ArgumentError("dkw_band: samples must be positive");
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(samples)));
}

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw ArgumentError("quantile of an empty sample");
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Summary summarize(std::vector<double> xs) {
    Summary s;
    if (xs.empty()) return s;
    std::sort(xs.begin(), xs.end());
    s.mean = mean(xs);
    s.median = quantile_sorted(xs, 0.5);
    s.q01 = quantile_sorted(xs, 0.01);
    s.q05 = quantile_sorted(xs, 0.05);
    s.q25 = quantile_sorted(xs, 0.25);
    s.q75 = quantile_sorted(xs, 0.75);
    s.q95 = quantile_sorted(xs, 0.95);
    s.min = xs.front();
    s.max = xs.back();
    return s;
}

double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw ArgumentError("loglog_slope: need >= 2 paired points");
    std::vector<double> lx(xs.size()), ly(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] <= 0.0 || ys[i] <= 0.0) throw ArgumentError("loglog_slope: values must be positive");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    const double mx = mean(lx);
    const double my = mean(ly);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

double slope_through_origin(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.empty()) throw ArgumentError("slope_through_origin: need paired points");
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += xs[i] * ys[i];
        sxx += xs[i] * xs[i];
    }
    return sxy / sxx;
}

} // namespace lolab
