#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "smblab/linalg.hpp"
#include "smblab/logspace.hpp"
#include "smblab/rng.hpp"

namespace smblab {

using Symbol = int32_t;

struct Alphabet {
    int size = 0;             // symbols are 0 .. size-1
    bool truncated = false;   // a countable alphabet was cut at `size`
    double tail_mass = 0.0;   // mass dropped by the truncation, 0 unless truncated
};

/// A finite symbol string: the address of an n-cylinder.
struct Word {
    std::vector<Symbol> symbols;

    Word() = default;
    explicit Word(std::vector<Symbol> s) : symbols(std::move(s)) {}
    Word(std::initializer_list<Symbol> s) : symbols(s) {}

    /// Parse "010" / "0,10,2" style strings.
    static Word parse(const std::string& text);

    size_t size() const { return symbols.size(); }
    Symbol front() const { return symbols.front(); }
    Symbol back() const { return symbols.back(); }
    std::string str() const;

    bool operator==(const Word&) const = default;
};

/// Log-scale probability mass of a cylinder. Zero measure is the -inf
/// sentinel, never an underflowed float: information values grow linearly in
/// the word length and direct probabilities die near length 700.
class LogMeasure {
  public:
    LogMeasure() : value_(kNegInf) {}

    static LogMeasure from_log(double log_value) { return LogMeasure(log_value); }
    static LogMeasure from_prob(double p);
    static LogMeasure zero() { return LogMeasure(kNegInf); }
    static LogMeasure one() { return LogMeasure(0.0); }

    double log() const { return value_; }
    double prob() const { return value_ == kNegInf ? 0.0 : std::exp(value_); }
    bool is_zero() const { return value_ == kNegInf; }

    /// Product of measures = sum of logs.
    LogMeasure operator*(LogMeasure o) const {
        if (is_zero() || o.is_zero()) return zero();
        return LogMeasure(value_ + o.value_);
    }

    bool operator==(const LogMeasure&) const = default;

  private:
    explicit LogMeasure(double v) : value_(v) {}
    double value_;
};

/// A stationary Bernoulli or Markov shift over a finite alphabet.
/// Immutable after construction and safe to share across workers.
class ProcessSpec {
  public:
    enum class Kind { Bernoulli, Markov };

    /// Bernoulli shift from weights. Weights must be nonnegative and sum to 1
    /// within 1e-12, except that a deficit below `truncation_epsilon` is
    /// treated as the tail of a truncated countable alphabet: the weights are
    /// renormalized and the dropped mass recorded in alphabet().tail_mass.
    static ProcessSpec bernoulli(std::vector<double> weights,
                                 double truncation_epsilon = 1e-9);

    /// Markov shift from an initial vector and a row-stochastic matrix.
    /// When `recompute_stationary` is set the initial vector is replaced by
    /// the dense-solve stationary vector; otherwise p P = p is required to
    /// hold within 1e-10. The chain must be irreducible and aperiodic.
    static ProcessSpec markov(std::vector<double> initial, Matrix transition,
                              bool recompute_stationary = false,
                              double truncation_epsilon = 1e-9);

    Kind kind() const { return kind_; }
    bool is_bernoulli() const { return kind_ == Kind::Bernoulli; }
    bool is_markov() const { return kind_ == Kind::Markov; }

    const Alphabet& alphabet() const { return alphabet_; }
    int alphabet_size() const { return alphabet_.size; }

    /// Marginal distribution of a single symbol (weights, or the stationary
    /// vector for Markov).
    const std::vector<double>& marginal() const { return marginal_; }
    const Matrix& transition() const;

    double log_marginal(Symbol a) const { return log_marginal_[static_cast<size_t>(a)]; }
    double log_transition(Symbol a, Symbol b) const {
        return log_transition_[static_cast<size_t>(a) * alphabet_.size + b];
    }

    /// Shared cache of transition-matrix powers (Markov only).
    const MatrixPowerCache& powers() const;

    /// FNV-1a hash of the canonical serialization; identifies the spec in
    /// report envelopes.
    std::string hash() const;

    std::string to_json() const;
    static ProcessSpec from_json(const std::string& text);
    static ProcessSpec load(const std::string& path);

  private:
    ProcessSpec() = default;
    void finalize_logs();

    Kind kind_ = Kind::Bernoulli;
    Alphabet alphabet_;
    std::vector<double> marginal_;
    Matrix transition_;
    std::vector<double> log_marginal_;
    std::vector<double> log_transition_;
    std::shared_ptr<MatrixPowerCache> powers_;
};

struct Trajectory {
    uint64_t seed = 0;
    std::vector<Symbol> symbols;

    size_t size() const { return symbols.size(); }
};

/// Deterministic lazy symbol source for (spec, seed); sample_trajectory and
/// the streaming recurrence search draw from the identical stream.
class SymbolStream {
  public:
    SymbolStream(const ProcessSpec& spec, uint64_t seed);
    Symbol next();

  private:
    const ProcessSpec* spec_;
    Rng rng_;
    std::vector<double> initial_cdf_;
    std::vector<double> row_cdf_;  // row-major per-state CDF for Markov
    Symbol state_ = -1;            // previous symbol, -1 before the first draw
};

/// Validation entry point used by the CLI; construction through the factories
/// already validates, this re-runs the checks on a deserialized spec.
ProcessSpec validate_spec(const ProcessSpec& spec);

/// log mu([word]). Bernoulli: sum of weight logs. Markov: initial log plus
/// transition logs. Zero factors give the -inf sentinel.
LogMeasure cylinder_measure(const ProcessSpec& spec, const Word& word);

/// Log-measure accumulated along a symbol span (same summation order as
/// cylinder_measure; information_path relies on bitwise agreement).
LogMeasure cylinder_measure(const ProcessSpec& spec, std::span<const Symbol> symbols);

/// log mu([left] intersect T^{-gap-n}[right]) for an n-letter left word.
/// Bernoulli: product of the parts. Markov: bridged by (P^{gap+1})_{last,first}.
LogMeasure shift_concat_measure(const ProcessSpec& spec, const Word& left, int64_t gap,
                                const Word& right);

Trajectory sample_trajectory(const ProcessSpec& spec, int64_t length, uint64_t seed);

}  // namespace smblab
