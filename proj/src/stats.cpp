#include "smblab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "smblab/errors.hpp"
#include "smblab/parallel.hpp"

namespace smblab {

int worker_count() {
    if (const char* env = std::getenv("SMB_LAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(v);
        return 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

double ks_distance_normal(std::span<const double> sample) {
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i) {
        double cdf = normal_cdf(sorted[i]);
        d = std::max(d, cdf - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - cdf);
    }
    return d;
}

SampleSummary summarize(std::span<const double> sample) {
    SampleSummary s;
    s.count = static_cast<int64_t>(sample.size());
    if (s.count == 0) return s;
    double mean = 0.0;
    for (double v : sample) mean += v;
    mean /= static_cast<double>(s.count);
    double m2 = 0.0, m3 = 0.0;
    for (double v : sample) {
        double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= static_cast<double>(s.count);
    m3 /= static_cast<double>(s.count);
    s.mean = mean;
    s.variance = m2;
    s.skewness = m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0;
    return s;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidArgumentError("fit_line needs two or more points");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    LineFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

double extrapolate_quarter_power(std::span<const double> n, std::span<const double> y) {
    std::vector<double> x(n.size());
    for (size_t i = 0; i < n.size(); ++i) x[i] = std::pow(n[i], -0.25);
    return fit_line(x, y).intercept;
}

double fit_decay_exponent(std::span<const double> n, std::span<const double> y, double floor) {
    std::vector<double> lx, ly;
    for (size_t i = 0; i < n.size(); ++i) {
        if (y[i] > floor && n[i] > 0) {
            lx.push_back(std::log(n[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() < 2) return 0.0;
    return fit_line(lx, ly).slope;
}

double median(std::vector<double> values) { return percentile(std::move(values), 50.0); }

double percentile(std::vector<double> values, double q) {
    if (values.empty()) throw InvalidArgumentError("percentile of empty sample");
    std::sort(values.begin(), values.end());
    double rank = q / 100.0 * static_cast<double>(values.size() - 1);
    size_t lo = static_cast<size_t>(rank);
    size_t hi = std::min(lo + 1, values.size() - 1);
    double frac = rank - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

}  // namespace smblab
