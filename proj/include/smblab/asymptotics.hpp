#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smblab/cylinder_stats.hpp"
#include "smblab/process.hpp"

namespace smblab {

/// Information values along a single path, evaluated at the grid points.
struct PathStats {
    uint64_t seed = 0;
    std::vector<int64_t> n_grid;
    std::vector<double> information;       // I_n at each grid point
    std::vector<int64_t> recurrence;       // optional, parallel to n_grid; empty if unused
};

struct CltReport {
    int64_t n = 0;
    int64_t samples = 0;
    double mean = 0.0;        // of the standardized sample
    double variance = 0.0;
    double skewness = 0.0;
    double ks_distance = 0.0;
    double h_used = 0.0;
    double sigma_used = 0.0;
    std::vector<double> standardized;  // unsorted, one entry per path
};

struct Block {
    int64_t length = 0;  // n_j = floor(sqrt(j))
    int64_t gap = 0;     // floor(n_j^alpha)
    int64_t start = 0;   // N_j, offset of the block
};

struct BlockSchedule {
    double alpha = 0.5;
    int64_t n_total = 0;
    std::vector<Block> blocks;
    int64_t remainder = 0;
};

struct RecurrencePath {
    bool found = false;
    int64_t r = 0;       // recurrence time, valid when found
    double information;  // I_n of the path's own prefix
};

struct RecurrenceReport {
    int n = 0;
    int64_t samples = 0;
    uint64_t seed = 0;
    int64_t scan_limit = 0;
    double h_used = 0.0;
    std::vector<RecurrencePath> paths;
    double notfound_rate = 0.0;
    double median_log_ratio = 0.0;       // median of (log R)/n over found paths
    double median_abs_dev = 0.0;         // median of |(log R)/n - h|
    double correction_p90 = 0.0;         // 90th percentile of |log R - I|
};

struct MomentGrowthRow {
    int64_t n = 0;
    double moment = 0.0;      // M_q(A^n)
    double ratio = 0.0;       // M_q / n^(q/2)
    std::string method;       // "exact" or "montecarlo"
};

struct MomentGrowthReport {
    double q = 0.0;
    std::vector<MomentGrowthRow> rows;
    double max_min_ratio = 0.0;
};

/// Streaming I_n along a trajectory at increasing grid points. The running
/// sum uses the same left-to-right order as cylinder_measure, so each value
/// equals the batch recomputation bit for bit.
PathStats information_path(const ProcessSpec& spec, const Trajectory& trajectory,
                           const std::vector<int64_t>& n_grid);

/// First k >= 1 whose length-n window repeats the prefix; overlapping returns
/// (k < n) count. Rolling-hash candidates, verified against the window before
/// accepting. Throws ScanExhausted when the window runs out.
int64_t recurrence_time(const Trajectory& trajectory, int n, int64_t scan_limit);

/// Reference rescan with no hashing; the oracle the fast matcher is held to.
int64_t recurrence_time_naive(const Trajectory& trajectory, int n, int64_t scan_limit);

RecurrenceReport recurrence_experiment(const ProcessSpec& spec, int n, int64_t samples,
                                       uint64_t seed, int64_t scan_limit = 1ll << 26);

/// Standardized (I_n - n h)/(sigma sqrt n) across independent seeded paths,
/// with its Kolmogorov-Smirnov distance to the standard normal. h and sigma
/// come from the closed forms, never from the sample itself.
CltReport clt_experiment(const ProcessSpec& spec, int64_t n, int64_t samples, uint64_t seed);

/// M_q(A^n)/n^(q/2) over a grid: exact enumeration where the budget allows,
/// Monte Carlo with closed-form centering beyond it.
MomentGrowthReport moment_growth_experiment(const ProcessSpec& spec, double q,
                                            const std::vector<int64_t>& n_grid,
                                            uint64_t budget = kDefaultBudget,
                                            int64_t mc_samples = 200000, uint64_t seed = 1);

/// Long-block/gap decomposition of [0, n): block lengths floor(sqrt(j)), gaps
/// floor(n_j^alpha), plus the remainder that keeps the partition exact.
BlockSchedule block_schedule(int64_t n_total, double alpha);

/// |J_n(x) - sum_j J_{n_j}(T^{N_j} x)| along one path, with every H taken
/// from the closed form.
double block_decomposition_error(const ProcessSpec& spec, const Trajectory& trajectory,
                                 int64_t n, double alpha);

/// max over 3 <= m <= n of |I_m - H_m| / (sigma sqrt(2 m log log m)).
/// Trend diagnostic only; nothing asserts on it.
double lil_max_ratio(const ProcessSpec& spec, const Trajectory& trajectory, int64_t n);

}  // namespace smblab
