#include "smblab/cylinder_stats.hpp"

#include <algorithm>
#include <cmath>

#include "smblab/stats.hpp"

namespace smblab {

namespace {

constexpr double kSeriesTol = 1e-14;
constexpr int kSeriesCap = 10000;

double eta1(double log_mu) { return -std::exp(log_mu) * log_mu; }  // mu |log mu|

}  // namespace

double entropy_rate(const ProcessSpec& spec) {
    CompensatedSum h;
    const int k = spec.alphabet_size();
    if (spec.is_bernoulli()) {
        for (int i = 0; i < k; ++i) {
            double p = spec.marginal()[static_cast<size_t>(i)];
            if (p > 0.0) h.add(-p * std::log(p));
        }
    } else {
        for (int i = 0; i < k; ++i) {
            double pi = spec.marginal()[static_cast<size_t>(i)];
            if (pi == 0.0) continue;
            for (int j = 0; j < k; ++j) {
                double t = spec.transition()(i, j);
                if (t > 0.0) h.add(-pi * t * std::log(t));
            }
        }
    }
    return h.value();
}

double join_entropy(const ProcessSpec& spec, int n, uint64_t budget) {
    if (n < 1) throw InvalidArgumentError("join order must be >= 1");
    CompensatedSum h;
    for_each_cylinder(spec, n, budget,
                      [&](std::span<const Symbol>, double log_mu) { h.add(eta1(log_mu)); });
    return h.value();
}

double join_entropy_closed(const ProcessSpec& spec, int64_t n) {
    if (n < 1) throw InvalidArgumentError("join order must be >= 1");
    double h = entropy_rate(spec);
    if (spec.is_bernoulli()) return static_cast<double>(n) * h;
    CompensatedSum hp;
    for (double p : spec.marginal()) {
        if (p > 0.0) hp.add(-p * std::log(p));
    }
    return hp.value() + static_cast<double>(n - 1) * h;
}

double moment_k(const ProcessSpec& spec, int n, double w, uint64_t budget) {
    if (w < 0.0) throw InvalidArgumentError("moment order w must be >= 0");
    CompensatedSum acc;
    for_each_cylinder(spec, n, budget, [&](std::span<const Symbol>, double log_mu) {
        acc.add(std::exp(log_mu) * abs_log_pow(-log_mu, w));
    });
    return acc.value();
}

double centered_moment_m(const ProcessSpec& spec, int n, double ell, uint64_t budget) {
    if (ell < 1.0) throw InvalidArgumentError("moment order ell must be >= 1");
    const double h_n = join_entropy(spec, n, budget);
    CompensatedSum acc;
    for_each_cylinder(spec, n, budget, [&](std::span<const Symbol>, double log_mu) {
        acc.add(std::exp(log_mu) * abs_log_pow(std::abs(-log_mu - h_n), ell));
    });
    return acc.value();
}

double conditional_moment_k(const ProcessSpec& spec, int n, int m, int64_t gap, double w,
                            uint64_t budget) {
    if (w < 0.0) throw InvalidArgumentError("moment order w must be >= 0");
    CompensatedSum acc;
    for_each_pair(spec, n, m, gap, budget, [&](double log_joint, double log_b, double) {
        if (log_joint == kNegInf) return;
        acc.add(std::exp(log_joint) * abs_log_pow(std::abs(log_joint - log_b), w));
    });
    return acc.value();
}

SubadditivityReport subadditivity_check(const ProcessSpec& spec, int n, int m, int64_t gap,
                                        double w, uint64_t budget) {
    if (w <= 0.0) throw InvalidArgumentError("subadditivity check needs w > 0");
    SubadditivityReport r;
    r.n = n;
    r.m = m;
    r.gap = gap;
    r.w = w;

    const double k_b = moment_k(spec, n, w, budget);
    const double k_c = moment_k(spec, m, w, budget);
    const double k_cond = conditional_moment_k(spec, n, m, gap, w, budget);
    CompensatedSum joint;
    for_each_pair(spec, n, m, gap, budget, [&](double log_joint, double, double) {
        if (log_joint == kNegInf) return;
        joint.add(std::exp(log_joint) * abs_log_pow(-log_joint, w));
    });
    const double k_join = joint.value();

    const double inv_w = 1.0 / w;
    r.slack_conditional = k_c - k_cond;
    r.slack_chain = std::pow(k_cond, inv_w) + std::pow(k_b, inv_w) - std::pow(k_join, inv_w);
    r.slack_joint = std::pow(k_c, inv_w) + std::pow(k_b, inv_w) - std::pow(k_join, inv_w);
    return r;
}

double conditional_prob_gap(const ProcessSpec& spec, int n) {
    if (n < 0) throw InvalidArgumentError("past length must be >= 0");
    if (spec.is_bernoulli()) return 0.0;
    if (n >= 1) return 0.0;  // one-step memory: f_n = f exactly from n = 1 on
    // n = 0: || log P(x_0 | past) - log p(x_0) ||_1 under the joint law
    CompensatedSum acc;
    const int k = spec.alphabet_size();
    for (int i = 0; i < k; ++i) {
        double pi = spec.marginal()[static_cast<size_t>(i)];
        if (pi == 0.0) continue;
        for (int j = 0; j < k; ++j) {
            double t = spec.transition()(i, j);
            if (t == 0.0) continue;
            acc.add(pi * t * std::abs(std::log(t) - spec.log_marginal(j)));
        }
    }
    return acc.value();
}

namespace {

double bernoulli_sigma2(const ProcessSpec& spec) {
    const auto& p = spec.marginal();
    CompensatedSum acc;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        for (size_t j = 0; j < p.size(); ++j) {
            if (p[j] == 0.0) continue;
            double r = std::log(p[i] / p[j]);
            acc.add(0.5 * p[i] * p[j] * r * r);
        }
    }
    return acc.value();
}

/// Markov limit: Var(g) + 2 sum_{lag >= 1} Cov(g_0, g_lag) for the per-step
/// information g(a, b) = -log P_ab. The lag-m covariance pairs the first and
/// last transitions of an (m+2)-word, so it carries P^(m-1) in the middle;
/// the lag terms decay like the subdominant eigenvalue and the series is cut
/// at the first term below kSeriesTol.
double markov_sigma2(const ProcessSpec& spec) {
    const int k = spec.alphabet_size();
    const auto& p = spec.marginal();
    const Matrix& tr = spec.transition();
    const double h = entropy_rate(spec);

    // per-transition weights and values
    Matrix weight(k, k), g(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            weight(i, j) = p[static_cast<size_t>(i)] * tr(i, j);
            g(i, j) = tr(i, j) > 0.0 ? -std::log(tr(i, j)) : 0.0;
        }
    }
    CompensatedSum var;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) var.add(weight(i, j) * g(i, j) * g(i, j));
    }
    double sigma2 = var.value() - h * h;

    // phi(j) = E[g(X_0, X_1) | X_0 = j]
    std::vector<double> phi(static_cast<size_t>(k), 0.0);
    for (int j = 0; j < k; ++j) {
        for (int l = 0; l < k; ++l) phi[static_cast<size_t>(j)] += tr(j, l) * g(j, l);
    }

    // left[j] = sum_i p_i P_ij g_ij: mass of the first transition ending at j
    std::vector<double> left(static_cast<size_t>(k), 0.0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) left[static_cast<size_t>(j)] += weight(i, j) * g(i, j);
    }

    CompensatedSum tail;
    Matrix mid = Matrix::identity(k);  // P^(m-1), starting at m = 1
    bool converged = false;
    for (int m = 1; m <= kSeriesCap; ++m) {
        double expect = 0.0;
        for (int j = 0; j < k; ++j) {
            double bridge = 0.0;
            for (int c = 0; c < k; ++c) bridge += mid(j, c) * phi[static_cast<size_t>(c)];
            expect += left[static_cast<size_t>(j)] * bridge;
        }
        double term = 2.0 * (expect - h * h);
        tail.add(term);
        if (std::abs(term) < kSeriesTol) {
            converged = true;
            break;
        }
        mid = mid.multiply(tr);
    }
    if (!converged) {
        throw SeriesNotConvergedError("variance correction series above 1e-14 after 1e4 terms");
    }
    return sigma2 + tail.value();
}

std::vector<int> feasible_orders(const ProcessSpec& spec, int max_n, uint64_t budget) {
    std::vector<int> ns;
    double log_budget = std::log(static_cast<double>(budget));
    for (int n = 1; n <= max_n; ++n) {
        if (static_cast<double>(n) * std::log(static_cast<double>(spec.alphabet_size())) >
            log_budget) {
            break;
        }
        ns.push_back(n);
    }
    return ns;
}

void fill_by_n(const ProcessSpec& spec, int max_n, uint64_t budget, VarianceReport& rep) {
    for (int n : feasible_orders(spec, max_n, budget)) {
        double h_n = join_entropy(spec, n, budget);
        double k2 = moment_k(spec, n, 2.0, budget);
        rep.n_values.push_back(n);
        rep.sigma2_by_n.push_back((k2 - h_n * h_n) / static_cast<double>(n));
    }
}

}  // namespace

VarianceReport limit_variance(const ProcessSpec& spec, int max_n, uint64_t budget) {
    VarianceReport rep;
    rep.method = "formula";
    rep.sigma2_limit = spec.is_bernoulli() ? bernoulli_sigma2(spec) : markov_sigma2(spec);
    fill_by_n(spec, max_n, budget, rep);

    std::vector<double> ns, dev;
    for (size_t i = 0; i < rep.n_values.size(); ++i) {
        ns.push_back(static_cast<double>(rep.n_values[i]));
        dev.push_back(std::abs(rep.sigma2_limit - rep.sigma2_by_n[i]));
    }
    rep.fitted_rate = fit_decay_exponent(ns, dev);
    return rep;
}

VarianceReport variance_extrapolation(const ProcessSpec& spec, int max_n, uint64_t budget) {
    VarianceReport rep;
    rep.method = "extrapolation";
    fill_by_n(spec, max_n, budget, rep);
    if (rep.n_values.size() < 2) {
        throw InvalidArgumentError("extrapolation needs at least two feasible join orders");
    }
    size_t take = std::min<size_t>(8, rep.n_values.size());
    std::vector<double> ns, ys;
    for (size_t i = rep.n_values.size() - take; i < rep.n_values.size(); ++i) {
        ns.push_back(static_cast<double>(rep.n_values[i]));
        ys.push_back(rep.sigma2_by_n[i]);
    }
    rep.sigma2_limit = extrapolate_quarter_power(ns, ys);

    std::vector<double> dev;
    for (size_t i = 0; i < rep.n_values.size(); ++i) {
        dev.push_back(std::abs(rep.sigma2_limit - rep.sigma2_by_n[i]));
    }
    std::vector<double> all_ns(rep.n_values.begin(), rep.n_values.end());
    rep.fitted_rate = fit_decay_exponent(all_ns, dev);
    return rep;
}

MomentTable moment_table(const ProcessSpec& spec, const std::vector<int>& n_values,
                         const std::vector<double>& ws, const std::vector<double>& ells,
                         uint64_t budget) {
    MomentTable table;
    for (int n : n_values) {
        MomentRow row;
        row.n = n;
        row.entropy = join_entropy(spec, n, budget);
        for (double w : ws) row.k_moments[w] = moment_k(spec, n, w, budget);
        for (double ell : ells) row.m_moments[ell] = centered_moment_m(spec, n, ell, budget);
        double k2 = row.k_moments.count(2.0) ? row.k_moments[2.0] : moment_k(spec, n, 2.0, budget);
        row.variance = k2 - row.entropy * row.entropy;
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace smblab
