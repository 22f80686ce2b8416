#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "smblab/enumeration.hpp"
#include "smblab/process.hpp"

namespace smblab {

/// Tabulated gap -> coefficient curve. Gaps default to a doubling grid so
/// polynomial and exponential decay separate cleanly in log-log space.
struct MixingCurve {
    std::vector<int64_t> gaps;
    std::vector<double> beta;
    std::vector<double> psi_atom;
    std::vector<double> phi_atom;
    std::optional<double> fitted_power;  // log-log slope where beta > 0
};

struct PairDiscrepancy {
    int n = 0, m = 0;
    int64_t gap = 0;
    double a = 1.0;
    double value = 0.0;
};

/// Total L1 discrepancy sum |mu(B cap C) - mu(B) mu(C)| over n x m cylinder
/// pairs with the given gap. Exact, via shift_concat_measure per pair.
double beta_bruteforce(const ProcessSpec& spec, int n, int m, int64_t gap,
                       uint64_t budget = kDefaultBudget);

/// Markov closed form, independent of n and m:
/// beta(gap) = sum_b p_b sum_c |(P^{gap+1})_bc - p_c|.
/// Returns 0 for Bernoulli specs by convention.
double beta_markov_closed(const ProcessSpec& spec, int64_t gap);

/// Atom-level psi and left-phi coefficients.
/// psi: max over atom pairs of |mu(B cap C)/(mu(B) mu(C)) - 1| (zero-measure
/// atoms skipped). phi: max over atoms B of the total-variation distance
/// between mu(.|B) and mu; the sup over unions of C-atoms equals half the L1
/// sum, so this realizes the set-sup exactly for fixed B.
std::pair<double, double> atom_psi_phi(const ProcessSpec& spec, int n, int m, int64_t gap,
                                       uint64_t budget = kDefaultBudget);

/// Smallest tabulated gap with beta(gap) <= eps; throws NotReached if the
/// curve never gets there.
int64_t weak_bernoulli_threshold(const MixingCurve& curve, double eps);

/// sum mu(B cap C) |log(1 + rho(B,C)/(mu(B) mu(C)))|^a, rho = mu(B cap C) -
/// mu(B) mu(C); the discrepancy functional whose decay in the gap drives the
/// variance and moment estimates.
PairDiscrepancy rho_discrepancy(const ProcessSpec& spec, int n, int m, int64_t gap, double a,
                                uint64_t budget = kDefaultBudget);

/// |H(A^n v T^{-gap-n} A^n) - 2 H(A^n)|, exact via the pair join.
double entropy_additivity_defect(const ProcessSpec& spec, int n, int64_t gap,
                                 uint64_t budget = kDefaultBudget);

/// Tabulate beta (closed form when Markov, else brute force), psi and phi
/// over a gap grid, plus the fitted decay power of the positive entries.
MixingCurve mixing_curve(const ProcessSpec& spec, const std::vector<int64_t>& gaps, int n,
                         int m, bool brute_force = false, uint64_t budget = kDefaultBudget);

/// Default doubling grid {0, 1, 2, 4, ..., <= max_gap}.
std::vector<int64_t> doubling_gap_grid(int64_t max_gap);

}  // namespace smblab
