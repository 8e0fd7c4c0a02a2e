#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bcsim {

/// Row-major dense square/rectangular matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> values() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// LU factorization with partial pivoting. Row updates go through the
/// dispatching axpy kernel.
///
/// Throws std::domain_error when a pivot falls below `singular_tol` times the
/// largest absolute entry of the input, which for hitting-time systems means
/// some node cannot reach the target.
class DenseLu {
 public:
  explicit DenseLu(Matrix a, double singular_tol = 1e-13);

  std::size_t size() const noexcept { return lu_.rows(); }

  /// Solves A x = b. `refinement_steps` rounds of iterative refinement are
  /// applied against the original matrix.
  std::vector<double> solve(std::span<const double> b, int refinement_steps = 0) const;

  /// Solves A X = B in place for a row-major right-hand side with size() rows.
  void solve_in_place(Matrix& rhs) const;

 private:
  void substitute(std::span<double> x) const;

  Matrix original_;
  Matrix lu_;
  std::vector<std::size_t> pivot_;
};

}  // namespace bcsim
