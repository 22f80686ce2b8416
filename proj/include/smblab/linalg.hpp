#pragma once

#include <cstddef>
#include <mutex>
#include <vector>

namespace smblab {

/// Minimal dense row-major matrix. Only what stochastic-matrix work needs.
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    Matrix multiply(const Matrix& other) const {
        Matrix out(rows_, other.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int k = 0; k < cols_; ++k) {
                double a = (*this)(i, k);
                if (a == 0.0) continue;
                for (int j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
            }
        }
        return out;
    }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Solve A x = b by Gaussian elimination with partial pivoting.
/// Returns false if the system is singular to working precision.
bool solve_dense(Matrix a, std::vector<double> b, std::vector<double>& x);

/// Stationary vector of a row-stochastic matrix: solves p P = p, sum(p) = 1
/// as a dense linear system (not power iteration).
std::vector<double> stationary_vector(const Matrix& transition);

/// P^m by repeated squaring with the powers of two cached between calls.
/// Mixing curves evaluate many exponents against the same matrix.
class MatrixPowerCache {
  public:
    explicit MatrixPowerCache(Matrix base) : base_(std::move(base)) {}

    /// m >= 0; power(0) is the identity.
    Matrix power(uint64_t m) const;

  private:
    Matrix base_;
    mutable std::mutex mutex_;
    mutable std::vector<Matrix> squares_;  // squares_[i] = base^(2^i)
};

}  // namespace smblab
