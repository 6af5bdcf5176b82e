#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lolab {

struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double p) const { return lo <= p && p <= hi; }
};

/// Wilson score interval for a binomial proportion (default 95%).
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

/// Dvoretzky-Kiefer-Wolfowitz half-width sqrt(ln(2/alpha) / 2N).
double dkw_band(std::size_t samples, double alpha = 0.05);

double mean(std::span<const double> xs);

/// Linear-interpolation quantile (type 7) of an already sorted sample.
double quantile_sorted(std::span<const double> sorted, double q);

struct Summary {
    double mean = 0.0;
    double median = 0.0;
    double q01 = 0.0;
    double q05 = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
    double q95 = 0.0;
    double min = 0.0;
    double max = 0.0;
};

Summary summarize(std::vector<double> xs);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

/// Least-squares slope of y = b x (line through the origin).
double slope_through_origin(std::span<const double> xs, std::span<const double> ys);

} // namespace lolab
