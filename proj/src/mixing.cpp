#include "smblab/mixing.hpp"

#include <algorithm>
#include <cmath>

#include "smblab/cylinder_stats.hpp"
#include "smblab/stats.hpp"

namespace smblab {

double beta_bruteforce(const ProcessSpec& spec, int n, int m, int64_t gap, uint64_t budget) {
    CompensatedSum acc;
    for_each_pair(spec, n, m, gap, budget, [&](double log_joint, double log_b, double log_c) {
        double joint = log_joint == kNegInf ? 0.0 : std::exp(log_joint);
        acc.add(std::abs(joint - std::exp(log_b + log_c)));
    });
    return acc.value();
}

double beta_markov_closed(const ProcessSpec& spec, int64_t gap) {
    if (gap < 0) throw InvalidArgumentError("gap must be >= 0");
    if (spec.is_bernoulli()) return 0.0;
    const int k = spec.alphabet_size();
    Matrix bridge = spec.powers().power(static_cast<uint64_t>(gap) + 1);
    CompensatedSum acc;
    for (int b = 0; b < k; ++b) {
        double pb = spec.marginal()[static_cast<size_t>(b)];
        if (pb == 0.0) continue;
        for (int c = 0; c < k; ++c) {
            acc.add(pb * std::abs(bridge(b, c) - spec.marginal()[static_cast<size_t>(c)]));
        }
    }
    return acc.value();
}

std::pair<double, double> atom_psi_phi(const ProcessSpec& spec, int n, int m, int64_t gap,
                                       uint64_t budget) {
    CylinderList left = enumerate_cylinders(spec, n, budget);
    CylinderList right = enumerate_cylinders(spec, m, budget);
    uint64_t pairs = static_cast<uint64_t>(left.words.size()) * right.words.size();
    if (pairs > budget) {
        throw BudgetExceededError("pair enumeration needs " + std::to_string(pairs) +
                                  " pairs, budget is " + std::to_string(budget));
    }
    double psi = 0.0;
    double phi = 0.0;
    for (size_t b = 0; b < left.words.size(); ++b) {
        CompensatedSum tv;  // L1 distance between mu(.|B) and mu over C-atoms
        for (size_t c = 0; c < right.words.size(); ++c) {
            LogMeasure joint = shift_concat_measure(spec, left.words[b], gap, right.words[c]);
            double mu_joint = joint.is_zero() ? 0.0 : std::exp(joint.log());
            double mu_b = std::exp(left.log_mu[b]);
            double mu_c = std::exp(right.log_mu[c]);
            psi = std::max(psi, std::abs(mu_joint / (mu_b * mu_c) - 1.0));
            tv.add(std::abs(mu_joint / mu_b - mu_c));
        }
        phi = std::max(phi, 0.5 * tv.value());
    }
    return {psi, phi};
}

int64_t weak_bernoulli_threshold(const MixingCurve& curve, double eps) {
    if (curve.gaps.empty()) throw InvalidArgumentError("empty mixing curve");
    for (size_t i = 0; i < curve.gaps.size(); ++i) {
        if (curve.beta[i] <= eps) return curve.gaps[i];
    }
    throw NotReachedError("beta never reaches " + std::to_string(eps) +
                          " on the tabulated gaps");
}

PairDiscrepancy rho_discrepancy(const ProcessSpec& spec, int n, int m, int64_t gap, double a,
                                uint64_t budget) {
    if (a < 1.0) throw InvalidArgumentError("discrepancy exponent a must be >= 1");
    PairDiscrepancy d;
    d.n = n;
    d.m = m;
    d.gap = gap;
    d.a = a;
    CompensatedSum acc;
    for_each_pair(spec, n, m, gap, budget, [&](double log_joint, double log_b, double log_c) {
        if (log_joint == kNegInf) return;
        // log(1 + rho/(mu_b mu_c)) = log(mu_joint / (mu_b mu_c))
        double t = std::abs(log_joint - log_b - log_c);
        acc.add(std::exp(log_joint) * abs_log_pow(t, a));
    });
    d.value = acc.value();
    return d;
}

double entropy_additivity_defect(const ProcessSpec& spec, int n, int64_t gap, uint64_t budget) {
    CompensatedSum joint_entropy;
    for_each_pair(spec, n, n, gap, budget, [&](double log_joint, double, double) {
        if (log_joint == kNegInf) return;
        joint_entropy.add(-std::exp(log_joint) * log_joint);
    });
    return std::abs(joint_entropy.value() - 2.0 * join_entropy(spec, n, budget));
}

MixingCurve mixing_curve(const ProcessSpec& spec, const std::vector<int64_t>& gaps, int n,
                         int m, bool brute_force, uint64_t budget) {
    MixingCurve curve;
    curve.gaps = gaps;
    for (int64_t gap : gaps) {
        double b = (brute_force || spec.is_bernoulli())
                       ? beta_bruteforce(spec, n, m, gap, budget)
                       : beta_markov_closed(spec, gap);
        auto [psi, phi] = atom_psi_phi(spec, n, m, gap, budget);
        curve.beta.push_back(b);
        curve.psi_atom.push_back(psi);
        curve.phi_atom.push_back(phi);
    }
    std::vector<double> xs, ys;
    for (size_t i = 0; i < curve.gaps.size(); ++i) {
        if (curve.gaps[i] >= 1 && curve.beta[i] > 0.0) {
            xs.push_back(std::log(static_cast<double>(curve.gaps[i])));
            ys.push_back(std::log(curve.beta[i]));
        }
    }
    if (xs.size() >= 2) curve.fitted_power = fit_line(xs, ys).slope;
    return curve;
}

std::vector<int64_t> doubling_gap_grid(int64_t max_gap) {
    std::vector<int64_t> gaps{0};
    for (int64_t g = 1; g <= max_gap; g *= 2) gaps.push_back(g);
    return gaps;
}

}  // namespace smblab
