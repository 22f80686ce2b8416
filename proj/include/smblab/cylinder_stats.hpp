#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "smblab/enumeration.hpp"
#include "smblab/process.hpp"

namespace smblab {

/// Per-n record of the exact join statistics.
struct MomentRow {
    int n = 0;
    double entropy = 0.0;               // H(A^n), nats
    std::map<double, double> k_moments; // w -> K_w(A^n)
    std::map<double, double> m_moments; // ell -> M_ell(A^n)
    double variance = 0.0;              // K_2 - H^2
};

struct MomentTable {
    std::vector<MomentRow> rows;
};

struct VarianceReport {
    double sigma2_limit = 0.0;
    std::vector<int> n_values;
    std::vector<double> sigma2_by_n;  // var_n / n
    double fitted_rate = 0.0;         // log-log slope of |sigma2 - var_n/n|
    std::string method;               // "formula" or "extrapolation"
};

/// Slacks of the partition-pair inequalities for B = A^n, C = T^{-gap-n} A^m;
/// every slack must come out >= 0 (up to accumulation noise).
struct SubadditivityReport {
    int n = 0, m = 0;
    int64_t gap = 0;
    double w = 0.0;
    double slack_conditional;  // K_w(C) - K_w(C|B)
    double slack_chain;        // K_w(C|B)^{1/w} + K_w(B)^{1/w} - K_w(B v C)^{1/w}
    double slack_joint;        // K_w(C)^{1/w}   + K_w(B)^{1/w} - K_w(B v C)^{1/w}
};

/// Closed-form entropy rate in nats.
double entropy_rate(const ProcessSpec& spec);

/// H(A^n) by pruned enumeration.
double join_entropy(const ProcessSpec& spec, int n, uint64_t budget = kDefaultBudget);

/// Closed-form H(A^n): n h for Bernoulli, H(p) + (n-1) h for Markov.
/// Oracle for the enumerator and the H source for long-block diagnostics.
double join_entropy_closed(const ProcessSpec& spec, int64_t n);

/// K_w(A^n) = sum over atoms of mu |log mu|^w; w >= 0, non-integer allowed.
double moment_k(const ProcessSpec& spec, int n, double w, uint64_t budget = kDefaultBudget);

/// M_ell(A^n) = sum over atoms of mu |-log mu - H(A^n)|^ell, ell >= 1.
double centered_moment_m(const ProcessSpec& spec, int n, double ell,
                         uint64_t budget = kDefaultBudget);

/// K_w(C|B) over the pair partition via shift_concat_measure.
double conditional_moment_k(const ProcessSpec& spec, int n, int m, int64_t gap, double w,
                            uint64_t budget = kDefaultBudget);

SubadditivityReport subadditivity_check(const ProcessSpec& spec, int n, int m, int64_t gap,
                                        double w, uint64_t budget = kDefaultBudget);

/// L1 distance between the one-symbol conditional log-probability given an
/// n-past and its infinite-past limit. Structurally zero for Bernoulli (all
/// n >= 0) and for Markov once n >= 1.
double conditional_prob_gap(const ProcessSpec& spec, int n);

/// Limiting variance sigma^2 of the information function.
///
/// Bernoulli closed form:  (1/2) sum_{ij} p_i p_j log^2(p_i / p_j).
/// Markov: per-step variance of g(a, b) = -log P_ab plus twice the summed
/// lag covariances, evaluated through cached matrix powers and truncated at
/// the first term below 1e-14 (hard cap 1e4 terms -> SeriesNotConverged).
/// Also tabulates var_n / n for n <= max_n and fits its decay exponent.
VarianceReport limit_variance(const ProcessSpec& spec, int max_n = 16,
                              uint64_t budget = kDefaultBudget);

/// Independent route: extrapolate (K_2(A^n) - H_n^2)/n with an a + b n^{-1/4}
/// fit over the largest 8 available n. Cross-check for the formula method.
VarianceReport variance_extrapolation(const ProcessSpec& spec, int max_n = 16,
                                      uint64_t budget = kDefaultBudget);

/// Exact table of H, K_w, M_ell, var for each n in n_values.
MomentTable moment_table(const ProcessSpec& spec, const std::vector<int>& n_values,
                         const std::vector<double>& ws, const std::vector<double>& ells,
                         uint64_t budget = kDefaultBudget);

}  // namespace smblab
