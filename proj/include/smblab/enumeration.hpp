#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smblab/errors.hpp"
#include "smblab/process.hpp"

namespace smblab {

inline constexpr uint64_t kDefaultBudget = 1ull << 24;

/// Depth-first walk over all positive-measure n-cylinders in lexicographic
/// order, pruning zero-measure prefixes. visit(symbols, log_mu) is called at
/// every leaf. Throws BudgetExceeded when more than `budget` leaves would be
/// visited.
template <typename Visit>
void for_each_cylinder(const ProcessSpec& spec, int n, uint64_t budget, Visit&& visit) {
    if (n < 1) throw InvalidArgumentError("cylinder order must be >= 1");
    const int k = spec.alphabet_size();
    std::vector<Symbol> word(static_cast<size_t>(n), 0);
    std::vector<double> prefix_log(static_cast<size_t>(n), 0.0);
    uint64_t visited = 0;

    int depth = 0;
    Symbol sym = 0;
    while (true) {
        if (sym >= k) {
            // exhausted this level, backtrack
            if (depth == 0) return;
            --depth;
            sym = word[static_cast<size_t>(depth)] + 1;
            continue;
        }
        double step = depth == 0 ? spec.log_marginal(sym)
                      : spec.is_bernoulli()
                          ? spec.log_marginal(sym)
                          : spec.log_transition(word[static_cast<size_t>(depth - 1)], sym);
        if (step == kNegInf) {
            ++sym;  // prune the whole subtree
            continue;
        }
        double log_mu = (depth == 0 ? 0.0 : prefix_log[static_cast<size_t>(depth - 1)]) + step;
        word[static_cast<size_t>(depth)] = sym;
        prefix_log[static_cast<size_t>(depth)] = log_mu;
        if (depth == n - 1) {
            if (++visited > budget) {
                throw BudgetExceededError("cylinder enumeration exceeds budget of " +
                                          std::to_string(budget) + " atoms");
            }
            visit(std::span<const Symbol>(word), log_mu);
            ++sym;
        } else {
            ++depth;
            sym = 0;
        }
    }
}

/// Materialized positive-measure cylinder list (addresses plus log-measures).
struct CylinderList {
    int order = 0;
    std::vector<Word> words;
    std::vector<double> log_mu;
};

CylinderList enumerate_cylinders(const ProcessSpec& spec, int n,
                                 uint64_t budget = kDefaultBudget);

/// Visit every pair (B, C) with B an n-cylinder, C an m-cylinder shifted by
/// gap + n, enumerating only pairs with mu(B), mu(C) > 0. The joint measure is
/// evaluated through shift_concat_measure -- pair consumers are oracles and
/// must not shortcut it. visit(log_mu_joint, log_mu_b, log_mu_c) runs per pair;
/// the pair count is budgeted.
template <typename Visit>
void for_each_pair(const ProcessSpec& spec, int n, int m, int64_t gap, uint64_t budget,
                   Visit&& visit) {
    if (gap < 0) throw InvalidArgumentError("gap must be >= 0");
    CylinderList left = enumerate_cylinders(spec, n, budget);
    CylinderList right = enumerate_cylinders(spec, m, budget);
    uint64_t pairs = static_cast<uint64_t>(left.words.size()) * right.words.size();
    if (pairs > budget) {
        throw BudgetExceededError("pair enumeration needs " + std::to_string(pairs) +
                                  " pairs, budget is " + std::to_string(budget));
    }
    for (size_t b = 0; b < left.words.size(); ++b) {
        for (size_t c = 0; c < right.words.size(); ++c) {
            LogMeasure joint = shift_concat_measure(spec, left.words[b], gap, right.words[c]);
            visit(joint.log(), left.log_mu[b], right.log_mu[c]);
        }
    }
}

}  // namespace smblab
