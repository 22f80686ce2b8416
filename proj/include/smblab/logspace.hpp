#pragma once

#include <cmath>
#include <limits>

namespace smblab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) without leaving log space.
inline double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (b > a) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

/// log(exp(a) - exp(b)), requires a >= b.
inline double log_sub(double a, double b) {
    if (b == kNegInf) return a;
    if (a == b) return kNegInf;
    return a + std::log1p(-std::exp(b - a));
}

/// Neumaier-compensated accumulator. Used for sums over many cylinder atoms,
/// where plain doubles would not support 1e-10 identities at 1e6+ terms.
class CompensatedSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// |log mu|^w with the conventions pow(0, 0) = 1 and 0^w = 0 for w > 0.
/// Non-integer exponents go through exp(w log |t|).
inline double abs_log_pow(double abs_log_mu, double w) {
    if (w == 0.0) return 1.0;
    if (abs_log_mu == 0.0) return 0.0;
    if (w == 1.0) return abs_log_mu;
    if (w == 2.0) return abs_log_mu * abs_log_mu;
    return std::exp(w * std::log(abs_log_mu));
}

}  // namespace smblab
