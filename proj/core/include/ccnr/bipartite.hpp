#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ccnr/linalg.hpp"

namespace ccnr {

enum class Subsystem { A, B };

// Tolerances applied by validate().
inline constexpr double kStateTol = 1e-10;
// Largest |tr(rho) - 1| that opt-in trace normalization will repair.
inline constexpr double kTraceRepairTol = 1e-6;

// Why validate() rejected a matrix.
enum class Violation { Shape, NonFinite, NonHermitian, TraceNotUnit, NotPositive };

class ValidationError : public std::invalid_argument {
 public:
  ValidationError(Violation violation, double magnitude, const std::string& what)
      : std::invalid_argument(what), violation_(violation), magnitude_(magnitude) {}

  Violation violation() const noexcept { return violation_; }
  // Size of the violation (asymmetry, trace error, most negative eigenvalue...).
  double magnitude() const noexcept { return magnitude_; }

 private:
  Violation violation_;
  double magnitude_;
};

const char* to_string(Violation v);

struct ValidateOptions {
  bool normalize_trace = false;
};

// A density matrix on C^m (x) C^n. Basis order is |i>_A (x) |k>_B with the A
// index major, so the matrix is an m x m block matrix with n x n blocks.
// Instances are only produced by validate().
class BipartiteState {
 public:
  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  // True when validate() rescaled the trace to one.
  bool trace_normalized() const noexcept { return trace_normalized_; }

  // tr(rho^2)
  double purity() const;

 private:
  friend BipartiteState validate(const ComplexMatrix&, std::size_t, std::size_t,
                                 ValidateOptions);
  BipartiteState(std::size_t m, std::size_t n, ComplexMatrix rho, bool normalized)
      : dim_a_(m), dim_b_(n), matrix_(std::move(rho)), trace_normalized_(normalized) {}

  std::size_t dim_a_;
  std::size_t dim_b_;
  ComplexMatrix matrix_;
  bool trace_normalized_;
};

// Checks shape, finiteness, Hermiticity, positivity and unit trace (in that
// order) and throws ValidationError naming the first violated invariant.
BipartiteState validate(const ComplexMatrix& matrix, std::size_t m, std::size_t n,
                        ValidateOptions options = {});

// Realignment of an (m n) x (m n) matrix Z viewed as m x m blocks Z_{j,i} of
// size n x n: row i*m + j (0-based) is vec(Z_{j,i})^T, giving an m^2 x n^2
// matrix. Block columns are traversed outer, block rows inner.
ComplexMatrix realign(const ComplexMatrix& z, std::size_t m, std::size_t n);
ComplexMatrix realign(const BipartiteState& s);

ComplexMatrix partial_transpose(const ComplexMatrix& z, std::size_t m, std::size_t n,
                                Subsystem subsystem);
ComplexMatrix partial_transpose(const BipartiteState& s, Subsystem subsystem);

// S(m,n) = sum_{i,j} E_ij^(m,n) (x) (E_ij^(m,n))^T, an (mn) x (nm) permutation.
// S(n,m) (X (x) Y) S(m,n) == Y (x) X for m x m X and n x n Y.
ComplexMatrix swap_operator(std::size_t m, std::size_t n);

// rho_BA = S(n,m) rho_AB S(m,n), an n x m state.
BipartiteState swap_subsystems(const BipartiteState& s);

// Applies (U (x) V) rho (U (x) V)^H.
BipartiteState apply_local_unitary(const BipartiteState& s, const ComplexMatrix& u,
                                   const ComplexMatrix& v);

ComplexMatrix partial_trace(const ComplexMatrix& z, std::size_t m, std::size_t n,
                            Subsystem keep);
ComplexMatrix partial_trace(const BipartiteState& s, Subsystem keep);

struct KronFactor {
  double sigma;
  ComplexMatrix x;  // m x m
  ComplexMatrix y;  // n x n
};

struct KronDecomposition {
  std::size_t dim_a;
  std::size_t dim_b;
  std::vector<KronFactor> factors;  // decreasing sigma

  ComplexMatrix reconstruct() const;
};

// Factor pairs kept when sigma_i > kKronRankTol * sigma_1.
inline constexpr double kKronRankTol = 1e-10;

// Z = sum_i X_i (x) Y_i with vec(X_i) = sqrt(sigma_i) u_i and
// vec(Y_i) = sqrt(sigma_i) conj(v_i), from the SVD of the realigned matrix.
KronDecomposition kron_decompose(const ComplexMatrix& z, std::size_t m, std::size_t n);
KronDecomposition kron_decompose(const BipartiteState& s);

}  // namespace ccnr
