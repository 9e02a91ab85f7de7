#include "ccnr/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ccnr {

namespace {

void require_square_of(const ComplexMatrix& z, std::size_t m, std::size_t n, const char* op) {
  if (m == 0 || n == 0 || z.rows() != m * n || z.cols() != m * n) {
    throw ShapeError(std::string(op) + ": expected " + std::to_string(m * n) + "x" +
                     std::to_string(m * n) + " for dimensions (" + std::to_string(m) + "," +
                     std::to_string(n) + "), got " + shape_string(z));
  }
}

[[noreturn]] void reject(Violation v, double magnitude, const std::string& detail) {
  std::ostringstream msg;
  msg << "invalid density matrix: " << to_string(v) << " (" << detail << ")";
  throw ValidationError(v, magnitude, msg.str());
}

}  // namespace

const char* to_string(Violation v) {
  switch (v) {
    case Violation::Shape: return "wrong shape";
    case Violation::NonFinite: return "non-finite entries";
    case Violation::NonHermitian: return "not Hermitian";
    case Violation::TraceNotUnit: return "trace is not 1";
    case Violation::NotPositive: return "not positive semidefinite";
  }
  return "unknown";
}

double BipartiteState::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  const double f = matrix_.frobenius_norm();
  return f * f;
}

BipartiteState validate(const ComplexMatrix& matrix, std::size_t m, std::size_t n,
                        ValidateOptions options) {
  if (m == 0 || n == 0 || matrix.rows() != m * n || matrix.cols() != m * n) {
    reject(Violation::Shape, 0.0,
           "expected " + std::to_string(m * n) + "x" + std::to_string(m * n) + " for (m,n)=(" +
               std::to_string(m) + "," + std::to_string(n) + "), got " + shape_string(matrix));
  }
  if (!matrix.all_finite()) reject(Violation::NonFinite, 0.0, "NaN or Inf present");

  const double asym = max_abs_diff(matrix, matrix.adjoint());
  if (asym > kStateTol) {
    std::ostringstream d;
    d << "max |rho - rho^H| = " << asym;
    reject(Violation::NonHermitian, asym, d.str());
  }

  const double min_eig = hermitian_eigenvalues(matrix).back();
  if (min_eig < -kStateTol) {
    std::ostringstream d;
    d << "minimum eigenvalue " << min_eig;
    reject(Violation::NotPositive, -min_eig, d.str());
  }

  ComplexMatrix rho = matrix;
  bool normalized = false;
  const double trace = rho.trace().real();
  const double trace_error = std::abs(trace - 1.0);
  if (trace_error > kStateTol) {
    if (options.normalize_trace && trace_error <= kTraceRepairTol) {
      rho *= 1.0 / trace;
      normalized = true;
    } else {
      std::ostringstream d;
      d << "tr(rho) = " << trace << ", |tr - 1| = " << trace_error;
      reject(Violation::TraceNotUnit, trace_error, d.str());
    }
  }
  return BipartiteState(m, n, std::move(rho), normalized);
}

ComplexMatrix realign(const ComplexMatrix& z, std::size_t m, std::size_t n) {
  require_square_of(z, m, n, "realign");
  ComplexMatrix out(m * m, n * n);
  for (std::size_t i = 0; i < m; ++i) {      // block column
    for (std::size_t j = 0; j < m; ++j) {    // block row
      const std::size_t row = i * m + j;
      // vec of block Z_{j,i}: column-major over its n x n entries.
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t k = 0; k < n; ++k) out(row, l * n + k) = z(j * n + k, i * n + l);
      }
    }
  }
  return out;
}

ComplexMatrix realign(const BipartiteState& s) { return realign(s.matrix(), s.dim_a(), s.dim_b()); }

ComplexMatrix partial_transpose(const ComplexMatrix& z, std::size_t m, std::size_t n,
                                Subsystem subsystem) {
  require_square_of(z, m, n, "partial_transpose");
  ComplexMatrix out(m * n, m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          const Complex value = z(i * n + k, j * n + l);
          if (subsystem == Subsystem::A) {
            out(j * n + k, i * n + l) = value;
          } else {
            out(i * n + l, j * n + k) = value;
          }
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const BipartiteState& s, Subsystem subsystem) {
  return partial_transpose(s.matrix(), s.dim_a(), s.dim_b(), subsystem);
}

ComplexMatrix swap_operator(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw PreconditionError("swap_operator: dimensions must be >= 1");
  ComplexMatrix out(m * n, n * m);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const ComplexMatrix e = elementary(m, n, i, j);
      out += kron(e, e.transpose());
    }
  }
  return out;
}

BipartiteState swap_subsystems(const BipartiteState& s) {
  const std::size_t m = s.dim_a();
  const std::size_t n = s.dim_b();
  const ComplexMatrix swapped = matmul(matmul(swap_operator(n, m), s.matrix()), swap_operator(m, n));
  return validate(swapped, n, m);
}

BipartiteState apply_local_unitary(const BipartiteState& s, const ComplexMatrix& u,
                                   const ComplexMatrix& v) {
  if (u.rows() != s.dim_a() || !u.is_square() || v.rows() != s.dim_b() || !v.is_square()) {
    throw ShapeError("apply_local_unitary: factors " + shape_string(u) + ", " + shape_string(v) +
                     " do not match state dimensions");
  }
  const ComplexMatrix w = kron(u, v);
  ComplexMatrix out = matmul(matmul(w, s.matrix()), w.adjoint());
  // Restore exact Hermiticity lost to round-off.
  out = 0.5 * (out + out.adjoint());
  return validate(out, s.dim_a(), s.dim_b(), {.normalize_trace = true});
}

ComplexMatrix partial_trace(const ComplexMatrix& z, std::size_t m, std::size_t n, Subsystem keep) {
  require_square_of(z, m, n, "partial_trace");
  if (keep == Subsystem::A) {
    ComplexMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < n; ++k) out(i, j) += z(i * n + k, j * n + k);
      }
    }
    return out;
  }
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t i = 0; i < m; ++i) out(k, l) += z(i * n + k, i * n + l);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const BipartiteState& s, Subsystem keep) {
  return partial_trace(s.matrix(), s.dim_a(), s.dim_b(), keep);
}

ComplexMatrix KronDecomposition::reconstruct() const {
  ComplexMatrix out(dim_a * dim_b, dim_a * dim_b);
  for (const KronFactor& f : factors) out += kron(f.x, f.y);
  return out;
}

KronDecomposition kron_decompose(const ComplexMatrix& z, std::size_t m, std::size_t n) {
  const auto spectrum = svd(realign(z, m, n), true);
  KronDecomposition out{m, n, {}};
  if (spectrum.singular_values.empty()) return out;
  const double cutoff = kKronRankTol * spectrum.singular_values.front();
  const ComplexMatrix& u = *spectrum.left_vectors;
  const ComplexMatrix& v = *spectrum.right_vectors;
  for (std::size_t k = 0; k < spectrum.singular_values.size(); ++k) {
    const double sigma = spectrum.singular_values[k];
    if (!(sigma > cutoff)) break;
    const double root = std::sqrt(sigma);
    ComplexMatrix uk(m * m, 1);
    ComplexMatrix vk(n * n, 1);
    for (std::size_t i = 0; i < m * m; ++i) uk(i, 0) = root * u(i, k);
    for (std::size_t i = 0; i < n * n; ++i) vk(i, 0) = root * std::conj(v(i, k));
    out.factors.push_back({sigma, unvec(uk, m, m), unvec(vk, n, n)});
  }
  return out;
}

KronDecomposition kron_decompose(const BipartiteState& s) {
  return kron_decompose(s.matrix(), s.dim_a(), s.dim_b());
}

}  // namespace ccnr
