#pragma once

// Reference implementations used only by tests. Each one follows the
// textbook definition directly and shares no code path with the library
// routine it checks.

#include <algorithm>
#include <cmath>
#include <vector>

#include "ccnr/linalg.hpp"
#include "ccnr/random.hpp"

namespace ccnr::testing {

inline ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

// Block Z_{row,col} (0-based) of size n x n.
inline ComplexMatrix block(const ComplexMatrix& z, std::size_t n, std::size_t row,
                           std::size_t col) {
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) out(k, l) = z(row * n + k, col * n + l);
  }
  return out;
}

inline std::vector<Complex> column_stack(const ComplexMatrix& a) {
  std::vector<Complex> out;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) out.push_back(a(i, j));
  }
  return out;
}

// Stacks vec(Z_{1,1})^T, ..., vec(Z_{m,1})^T, ..., vec(Z_{m,m})^T as rows.
inline ComplexMatrix realign_by_definition(const ComplexMatrix& z, std::size_t m, std::size_t n) {
  std::vector<Complex> rows;
  for (std::size_t col = 0; col < m; ++col) {
    for (std::size_t row = 0; row < m; ++row) {
      const auto v = column_stack(block(z, n, row, col));
      rows.insert(rows.end(), v.begin(), v.end());
    }
  }
  return {m * m, n * n, rows};
}

// rho^{T_A} = sum_{ij} E_ji (x) Z_{ij}
inline ComplexMatrix partial_transpose_a_by_blocks(const ComplexMatrix& z, std::size_t m,
                                                   std::size_t n) {
  ComplexMatrix out(m * n, m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      ComplexMatrix e(m, m);
      e(j, i) = 1.0;
      out += kron(e, block(z, n, i, j));
    }
  }
  return out;
}

inline ComplexMatrix random_hermitian(std::size_t d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

inline ComplexMatrix random_density(std::size_t d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  ComplexMatrix rho = matmul(g, g.adjoint());
  rho *= 1.0 / rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

inline double max_abs_vector_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
    m = std::max(m, std::abs(a[k] - b[k]));
  }
  return a.size() == b.size() ? m : INFINITY;
}

inline double unitarity_error(const ComplexMatrix& u) {
  return max_abs_diff(matmul(u.adjoint(), u), ComplexMatrix::identity(u.cols()));
}

}  // namespace ccnr::testing
