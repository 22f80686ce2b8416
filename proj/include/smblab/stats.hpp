#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace smblab {

/// Standard normal CDF via erf.
double normal_cdf(double t);

/// Kolmogorov-Smirnov distance of a sample against the standard normal CDF.
/// Sorts a copy of the sample.
double ks_distance_normal(std::span<const double> sample);

struct SampleSummary {
    int64_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  // population (divide by N)
    double skewness = 0.0;
};

SampleSummary summarize(std::span<const double> sample);

/// Least-squares line y = intercept + slope * x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Fit y ~ a + b * n^(-1/4) and return a (the extrapolated limit).
double extrapolate_quarter_power(std::span<const double> n, std::span<const double> y);

/// Slope of log|y| vs log n, restricted to entries with y > floor.
/// Returns 0 when fewer than two usable points remain (degenerate decay,
/// e.g. i.i.d. variance deviations that are exactly zero).
double fit_decay_exponent(std::span<const double> n, std::span<const double> y,
                          double floor = 1e-15);

double median(std::vector<double> values);

double percentile(std::vector<double> values, double q);

}  // namespace smblab
