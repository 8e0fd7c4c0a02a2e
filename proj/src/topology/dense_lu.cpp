#include "bcsim/dense_lu.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bcsim/kernels.hpp"

namespace bcsim {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseLu::DenseLu(Matrix a, double singular_tol) : original_(a), lu_(std::move(a)) {
  const std::size_t n = lu_.rows();
  if (lu_.cols() != n) throw std::invalid_argument("DenseLu: matrix must be square");
  pivot_.resize(n);

  double scale = 0.0;
  for (double v : lu_.values()) scale = std::max(scale, std::abs(v));
  const double threshold = singular_tol * (scale > 0.0 ? scale : 1.0);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(lu_(r, k)) > std::abs(lu_(best, k))) best = r;
    }
    pivot_[k] = best;
    if (std::abs(lu_(best, k)) <= threshold) {
      throw std::domain_error("DenseLu: singular matrix at column " + std::to_string(k));
    }
    if (best != k) {
      auto a_row = lu_.row(k);
      auto b_row = lu_.row(best);
      std::swap_ranges(a_row.begin(), a_row.end(), b_row.begin());
    }
    const double inv_pivot = 1.0 / lu_(k, k);
    const auto pivot_tail = lu_.row(k).subspan(k + 1);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double factor = lu_(r, k) * inv_pivot;
      lu_(r, k) = factor;
      if (factor != 0.0) kernels::axpy(-factor, pivot_tail, lu_.row(r).subspan(k + 1));
    }
  }
}

void DenseLu::substitute(std::span<double> x) const {
  const std::size_t n = size();
  for (std::size_t k = 0; k < n; ++k) {
    if (pivot_[k] != k) std::swap(x[k], x[pivot_[k]]);
  }
  for (std::size_t r = 1; r < n; ++r) {
    x[r] -= kernels::dot(lu_.row(r).first(r), x.first(r));
  }
  for (std::size_t r = n; r-- > 0;) {
    const auto tail = lu_.row(r).subspan(r + 1);
    x[r] = (x[r] - kernels::dot(tail, x.subspan(r + 1))) / lu_(r, r);
  }
}

std::vector<double> DenseLu::solve(std::span<const double> b, int refinement_steps) const {
  const std::size_t n = size();
  if (b.size() != n) throw std::invalid_argument("DenseLu::solve: size mismatch");
  std::vector<double> x(b.begin(), b.end());
  substitute(x);
  std::vector<double> residual(n);
  for (int step = 0; step < refinement_steps; ++step) {
    for (std::size_t r = 0; r < n; ++r) residual[r] = b[r] - kernels::dot(original_.row(r), x);
    substitute(residual);
    kernels::axpy(1.0, residual, x);
  }
  return x;
}

void DenseLu::solve_in_place(Matrix& rhs) const {
  const std::size_t n = size();
  if (rhs.rows() != n) throw std::invalid_argument("DenseLu::solve_in_place: size mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    if (pivot_[k] != k) {
      auto a_row = rhs.row(k);
      auto b_row = rhs.row(pivot_[k]);
      std::swap_ranges(a_row.begin(), a_row.end(), b_row.begin());
    }
  }
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t k = 0; k < r; ++k) {
      const double factor = lu_(r, k);
      if (factor != 0.0) kernels::axpy(-factor, rhs.row(k), rhs.row(r));
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    for (std::size_t k = r + 1; k < n; ++k) {
      const double factor = lu_(r, k);
      if (factor != 0.0) kernels::axpy(-factor, rhs.row(k), rhs.row(r));
    }
    const double inv = 1.0 / lu_(r, r);
    for (double& v : rhs.row(r)) v *= inv;
  }
}

}  // namespace bcsim
