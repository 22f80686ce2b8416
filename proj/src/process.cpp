#include "smblab/process.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

#include "json.hpp"
#include "smblab/errors.hpp"

namespace smblab {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kStationaryTol = 1e-10;

void check_nonnegative(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw NonStochasticError(std::string(what) + " has a negative or non-finite entry");
        }
    }
}

/// Strong connectivity of the positive-entry digraph.
bool strongly_connected(const Matrix& p) {
    const int n = p.rows();
    auto reach = [&](bool reverse) {
        std::vector<char> seen(n, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int count = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v = 0; v < n; ++v) {
                double w = reverse ? p(v, u) : p(u, v);
                if (w > 0.0 && !seen[v]) {
                    seen[v] = 1;
                    ++count;
                    q.push(v);
                }
            }
        }
        return count == n;
    };
    return reach(false) && reach(true);
}

/// Period of an irreducible chain: gcd over edges u->v of d(u) + 1 - d(v),
/// d = BFS distance from state 0.
int chain_period(const Matrix& p) {
    const int n = p.rows();
    std::vector<int64_t> dist(n, -1);
    std::queue<int> q;
    q.push(0);
    dist[0] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < n; ++v) {
            if (p(u, v) > 0.0 && dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
    int64_t g = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (p(u, v) > 0.0) g = std::gcd(g, dist[u] + 1 - dist[v]);
        }
    }
    return static_cast<int>(g < 0 ? -g : g);
}

std::vector<double> cdf_of(const std::vector<double>& probs) {
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    if (!cdf.empty()) cdf.back() = 1.0;  // guard against rounding at the top
    return cdf;
}

Symbol draw(const std::vector<double>& cdf, size_t offset, size_t k, double u) {
    auto begin = cdf.begin() + static_cast<ptrdiff_t>(offset);
    auto it = std::upper_bound(begin, begin + static_cast<ptrdiff_t>(k), u);
    if (it == begin + static_cast<ptrdiff_t>(k)) --it;
    return static_cast<Symbol>(it - begin);
}

}  // namespace

Word Word::parse(const std::string& text) {
    Word w;
    if (text.find(',') != std::string::npos) {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) w.symbols.push_back(static_cast<Symbol>(std::stol(tok)));
        }
    } else {
        for (char c : text) {
            if (c < '0' || c > '9') throw InvalidArgumentError("bad symbol character in word");
            w.symbols.push_back(c - '0');
        }
    }
    if (w.symbols.empty()) throw InvalidArgumentError("empty word");
    return w;
}

std::string Word::str() const {
    std::string out;
    bool wide = false;
    for (Symbol s : symbols) wide = wide || s > 9;
    for (size_t i = 0; i < symbols.size(); ++i) {
        if (wide && i) out += ',';
        out += std::to_string(symbols[i]);
    }
    return out;
}

LogMeasure LogMeasure::from_prob(double p) {
    if (!(p >= 0.0) || p > 1.0 || !std::isfinite(p)) {
        throw InvalidArgumentError("probability outside [0, 1]");
    }
    return p == 0.0 ? zero() : LogMeasure(std::log(p));
}

ProcessSpec ProcessSpec::bernoulli(std::vector<double> weights, double truncation_epsilon) {
    if (weights.size() < 2) throw SpecError("alphabet needs at least 2 symbols");
    check_nonnegative(weights, "weights");
    double sum = 0.0;
    for (double w : weights) sum += w;
    double deficit = 1.0 - sum;

    ProcessSpec spec;
    spec.kind_ = Kind::Bernoulli;
    spec.alphabet_.size = static_cast<int>(weights.size());
    if (std::abs(deficit) <= kRowSumTol) {
        spec.alphabet_.truncated = false;
        spec.alphabet_.tail_mass = 0.0;
    } else if (deficit > 0.0 && deficit < truncation_epsilon) {
        // Truncated countable alphabet: fold the tail out and renormalize.
        spec.alphabet_.truncated = true;
        spec.alphabet_.tail_mass = deficit;
        for (double& w : weights) w /= sum;
    } else {
        throw NonStochasticError("weights sum to " + std::to_string(sum) + ", not 1");
    }
    spec.marginal_ = std::move(weights);
    spec.finalize_logs();
    return spec;
}

ProcessSpec ProcessSpec::markov(std::vector<double> initial, Matrix transition,
                                bool recompute_stationary, double truncation_epsilon) {
    const int k = transition.rows();
    if (k < 2) throw SpecError("alphabet needs at least 2 symbols");
    if (transition.cols() != k) throw SpecError("transition matrix must be square");

    double worst_deficit = 0.0;
    for (int i = 0; i < k; ++i) {
        double sum = 0.0;
        for (int j = 0; j < k; ++j) {
            double v = transition(i, j);
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw NonStochasticError("transition row " + std::to_string(i) +
                                         " has a negative or non-finite entry");
            }
            sum += v;
        }
        double deficit = 1.0 - sum;
        if (std::abs(deficit) <= kRowSumTol) continue;
        if (deficit > 0.0 && deficit < truncation_epsilon) {
            worst_deficit = std::max(worst_deficit, deficit);
            for (int j = 0; j < k; ++j) transition(i, j) /= sum;
        } else {
            throw NonStochasticError("transition row " + std::to_string(i) + " sums to " +
                                     std::to_string(sum) + ", not 1");
        }
    }

    if (!strongly_connected(transition)) throw ReducibleError("chain is not irreducible");
    if (chain_period(transition) != 1) throw ReducibleError("chain is periodic");

    if (recompute_stationary || initial.empty()) {
        initial = stationary_vector(transition);
        if (initial.empty()) throw SpecError("stationary solve failed");
        for (double& x : initial) x = std::max(x, 0.0);
    } else {
        if (static_cast<int>(initial.size()) != k) {
            throw SpecError("initial vector length does not match the matrix");
        }
        check_nonnegative(initial, "initial vector");
        double sum = 0.0;
        for (double x : initial) sum += x;
        if (std::abs(sum - 1.0) > 1e-10) {
            throw NonStochasticError("initial vector sums to " + std::to_string(sum));
        }
        for (int j = 0; j < k; ++j) {
            double pj = 0.0;
            for (int i = 0; i < k; ++i) pj += initial[i] * transition(i, j);
            if (std::abs(pj - initial[j]) > kStationaryTol) {
                throw NotStationaryError("p P != p at state " + std::to_string(j) +
                                         " (pass recompute to solve for p)");
            }
        }
    }

    ProcessSpec spec;
    spec.kind_ = Kind::Markov;
    spec.alphabet_.size = k;
    spec.alphabet_.truncated = worst_deficit > 0.0;
    spec.alphabet_.tail_mass = worst_deficit;
    spec.marginal_ = std::move(initial);
    spec.transition_ = std::move(transition);
    spec.finalize_logs();
    return spec;
}

void ProcessSpec::finalize_logs() {
    const int k = alphabet_.size;
    log_marginal_.resize(k);
    for (int i = 0; i < k; ++i) {
        log_marginal_[i] = marginal_[i] > 0.0 ? std::log(marginal_[i]) : kNegInf;
    }
    if (kind_ == Kind::Markov) {
        log_transition_.resize(static_cast<size_t>(k) * k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                double v = transition_(i, j);
                log_transition_[static_cast<size_t>(i) * k + j] = v > 0.0 ? std::log(v) : kNegInf;
            }
        }
        powers_ = std::make_shared<MatrixPowerCache>(transition_);
    }
}

const Matrix& ProcessSpec::transition() const {
    if (kind_ != Kind::Markov) throw UnsupportedError("transition matrix of a Bernoulli spec");
    return transition_;
}

const MatrixPowerCache& ProcessSpec::powers() const {
    if (!powers_) throw UnsupportedError("matrix powers of a Bernoulli spec");
    return *powers_;
}

std::string ProcessSpec::to_json() const {
    nlohmann::ordered_json j;
    if (kind_ == Kind::Bernoulli) {
        j["type"] = "bernoulli";
        j["weights"] = marginal_;
    } else {
        j["type"] = "markov";
        j["p"] = marginal_;
        std::vector<std::vector<double>> rows(alphabet_.size,
                                              std::vector<double>(alphabet_.size));
        for (int i = 0; i < alphabet_.size; ++i) {
            for (int k = 0; k < alphabet_.size; ++k) rows[i][k] = transition_(i, k);
        }
        j["P"] = rows;
    }
    if (alphabet_.truncated) {
        j["truncated"] = true;
        j["tail_mass"] = alphabet_.tail_mass;
    }
    return j.dump();
}

ProcessSpec ProcessSpec::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("spec file is not valid JSON: ") + e.what());
    }
    if (!j.contains("type")) throw SpecError("spec is missing \"type\"");
    std::string type = j.at("type").get<std::string>();
    double eps = j.value("truncation_epsilon", 1e-9);
    if (type == "bernoulli") {
        if (!j.contains("weights")) throw SpecError("bernoulli spec is missing \"weights\"");
        ProcessSpec spec = bernoulli(j.at("weights").get<std::vector<double>>(), eps);
        if (j.value("truncated", false)) {
            spec.alphabet_.truncated = true;
            spec.alphabet_.tail_mass = j.value("tail_mass", 0.0);
        }
        return spec;
    }
    if (type == "markov") {
        if (!j.contains("P")) throw SpecError("markov spec is missing \"P\"");
        auto rows = j.at("P").get<std::vector<std::vector<double>>>();
        const int k = static_cast<int>(rows.size());
        Matrix p(k, k);
        for (int i = 0; i < k; ++i) {
            if (static_cast<int>(rows[i].size()) != k) throw SpecError("\"P\" is not square");
            for (int c = 0; c < k; ++c) p(i, c) = rows[i][c];
        }
        std::vector<double> initial;
        bool recompute = !j.contains("p");
        if (!recompute) initial = j.at("p").get<std::vector<double>>();
        ProcessSpec spec = markov(std::move(initial), std::move(p), recompute, eps);
        if (j.value("truncated", false)) {
            spec.alphabet_.truncated = true;
            spec.alphabet_.tail_mass = j.value("tail_mass", 0.0);
        }
        return spec;
    }
    throw SpecError("unknown spec type \"" + type + "\"");
}

ProcessSpec ProcessSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

std::string ProcessSpec::hash() const {
    const std::string canon = to_json();
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ProcessSpec validate_spec(const ProcessSpec& spec) {
    // Round-trip through the factories; rejects anything inconsistent.
    return ProcessSpec::from_json(spec.to_json());
}

namespace {

void check_word(const ProcessSpec& spec, const Word& word) {
    if (word.size() == 0) throw InvalidArgumentError("word must have length >= 1");
    for (Symbol s : word.symbols) {
        if (s < 0 || s >= spec.alphabet_size()) {
            throw SymbolOutOfRangeError("symbol " + std::to_string(s) +
                                        " outside alphabet of size " +
                                        std::to_string(spec.alphabet_size()));
        }
    }
}

}  // namespace

LogMeasure cylinder_measure(const ProcessSpec& spec, std::span<const Symbol> symbols) {
    // Plain left-to-right accumulation; streaming consumers reproduce this
    // order bit for bit.
    double acc = spec.log_marginal(symbols[0]);
    if (spec.is_bernoulli()) {
        for (size_t i = 1; i < symbols.size(); ++i) {
            double t = spec.log_marginal(symbols[i]);
            if (t == kNegInf) return LogMeasure::zero();
            acc += t;
        }
    } else {
        for (size_t i = 0; i + 1 < symbols.size(); ++i) {
            double t = spec.log_transition(symbols[i], symbols[i + 1]);
            if (t == kNegInf) return LogMeasure::zero();
            acc += t;
        }
    }
    if (acc == kNegInf || std::isnan(acc)) return LogMeasure::zero();
    return LogMeasure::from_log(acc);
}

LogMeasure cylinder_measure(const ProcessSpec& spec, const Word& word) {
    check_word(spec, word);
    return cylinder_measure(spec, std::span<const Symbol>(word.symbols));
}

LogMeasure shift_concat_measure(const ProcessSpec& spec, const Word& left, int64_t gap,
                                const Word& right) {
    if (gap < 0) throw InvalidArgumentError("gap must be >= 0");
    check_word(spec, left);
    check_word(spec, right);
    LogMeasure lm = cylinder_measure(spec, left);
    LogMeasure rm = cylinder_measure(spec, right);
    if (spec.is_bernoulli()) return lm * rm;
    if (lm.is_zero() || rm.is_zero()) return LogMeasure::zero();
    // mu(B cap T^{-gap-n} C) = mu(B) (P^{gap+1})_{last(B) first(C)} mu(C) / p_{first(C)}
    Matrix bridge = spec.powers().power(static_cast<uint64_t>(gap) + 1);
    double b = bridge(left.back(), right.front());
    if (b <= 0.0) return LogMeasure::zero();
    double log_p_first = spec.log_marginal(right.front());
    return LogMeasure::from_log(lm.log() + std::log(b) + rm.log() - log_p_first);
}

SymbolStream::SymbolStream(const ProcessSpec& spec, uint64_t seed)
    : spec_(&spec), rng_(seed), initial_cdf_(cdf_of(spec.marginal())) {
    if (spec.is_markov()) {
        const int k = spec.alphabet_size();
        row_cdf_.resize(static_cast<size_t>(k) * k);
        for (int i = 0; i < k; ++i) {
            double acc = 0.0;
            for (int j = 0; j < k; ++j) {
                acc += spec.transition()(i, j);
                row_cdf_[static_cast<size_t>(i) * k + j] = acc;
            }
            row_cdf_[static_cast<size_t>(i) * k + k - 1] = 1.0;
        }
    }
}

Symbol SymbolStream::next() {
    const size_t k = static_cast<size_t>(spec_->alphabet_size());
    double u = rng_.next_double();
    if (state_ < 0 || spec_->is_bernoulli()) {
        Symbol s = draw(initial_cdf_, 0, k, u);
        state_ = s;
        return s;
    }
    Symbol s = draw(row_cdf_, static_cast<size_t>(state_) * k, k, u);
    state_ = s;
    return s;
}

Trajectory sample_trajectory(const ProcessSpec& spec, int64_t length, uint64_t seed) {
    if (length < 1) throw InvalidArgumentError("trajectory length must be >= 1");
    Trajectory t;
    t.seed = seed;
    t.symbols.resize(static_cast<size_t>(length));
    SymbolStream stream(spec, seed);
    for (int64_t i = 0; i < length; ++i) t.symbols[static_cast<size_t>(i)] = stream.next();
    return t;
}

}  // namespace smblab
