#include "smblab/linalg.hpp"

#include <cmath>

namespace smblab {

bool solve_dense(Matrix a, std::vector<double> b, std::vector<double>& x) {
    const int n = a.rows();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(a(col, col));
        for (int r = col + 1; r < n; ++r) {
            double v = std::abs(a(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best < 1e-14) return false;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            std::swap(b[col], b[pivot]);
        }
        for (int r = col + 1; r < n; ++r) {
            double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            a(r, col) = 0.0;
            for (int j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }

    x.assign(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return true;
}

std::vector<double> stationary_vector(const Matrix& transition) {
    const int n = transition.rows();
    // (P^T - I) p = 0 with the first equation replaced by sum(p) = 1.
    Matrix a(n, n);
    std::vector<double> b(n, 0.0);
    for (int j = 0; j < n; ++j) a(0, j) = 1.0;
    b[0] = 1.0;
    for (int i = 1; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = transition(j, i) - (i == j ? 1.0 : 0.0);
    }
    std::vector<double> p;
    if (!solve_dense(std::move(a), std::move(b), p)) p.clear();
    return p;
}

Matrix MatrixPowerCache::power(uint64_t m) const {
    if (m == 0) return Matrix::identity(base_.rows());
    std::lock_guard<std::mutex> lock(mutex_);
    if (squares_.empty()) squares_.push_back(base_);
    int bits = 0;
    for (uint64_t v = m; v > 1; v >>= 1) ++bits;
    while (static_cast<int>(squares_.size()) <= bits) {
        squares_.push_back(squares_.back().multiply(squares_.back()));
    }
    Matrix out;
    bool first = true;
    for (int i = 0; i <= bits; ++i) {
        if ((m >> i) & 1ull) {
            out = first ? squares_[i] : out.multiply(squares_[i]);
            first = false;
        }
    }
    return out;
}

}  // namespace smblab
