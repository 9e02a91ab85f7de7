#include "ccnr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace ccnr {

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kEigenOffDiagonalTol = 1e-13;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_string(a) + " vs " +
                     shape_string(b));
  }
}

void require_finite(std::span<const Complex> values) {
  for (const Complex& z : values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw PreconditionError("matrix entries must be finite");
    }
  }
}

// Jacobi rotation that annihilates the (p,q) coupling of a Hermitian 2x2
// problem with diagonal (app, aqq) and off-diagonal apq. Acting on columns:
//   col_p' = c col_p + gqp col_q,  col_q' = s col_p + gqq col_q.
struct Rotation {
  double c;
  double s;
  Complex gqp;
  Complex gqq;
};

Rotation make_rotation(double app, double aqq, Complex apq) {
  const double g = std::abs(apq);
  const Complex phase_conj = std::conj(apq / g);
  const double tau = (aqq - app) / (2.0 * g);
  double t;
  if (std::abs(tau) > 1e150) {
    t = 0.5 / tau;
  } else {
    t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  return {c, s, -s * phase_conj, c * phase_conj};
}

// Indices that sort values descending; ties keep their original order.
std::vector<std::size_t> descending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });
  return order;
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

using Column = std::vector<Complex>;

Complex dot(const Column& x, const Column& y) {
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < x.size(); ++k) acc += std::conj(x[k]) * y[k];
  return acc;
}

double norm2(const Column& x) {
  double acc = 0.0;
  for (const Complex& z : x) acc += std::norm(z);
  return std::sqrt(acc);
}

void rotate_columns(Column& p, Column& q, const Rotation& r) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Complex xp = p[k];
    const Complex xq = q[k];
    p[k] = r.c * xp + r.gqp * xq;
    q[k] = r.s * xp + r.gqq * xq;
  }
}

void project_out(Column& v, const Column& u) {
  const Complex overlap = dot(u, v);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] -= overlap * u[k];
}

// Extends an orthonormal set of columns of length dim to a full basis. The
// next vector is always the standard basis vector with the largest residual.
void complete_basis(std::vector<Column>& basis, std::size_t dim) {
  if (basis.size() >= dim) return;
  std::vector<Column> residual(dim, Column(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    residual[k][k] = 1.0;
    for (const Column& u : basis) project_out(residual[k], u);
  }
  std::vector<bool> used(dim, false);
  while (basis.size() < dim) {
    std::size_t best = dim;
    double best_norm = -1.0;
    for (std::size_t k = 0; k < dim; ++k) {
      if (used[k]) continue;
      const double nk = norm2(residual[k]);
      if (nk > best_norm) {
        best_norm = nk;
        best = k;
      }
    }
    used[best] = true;
    Column v(dim);
    v[best] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Column& u : basis) project_out(v, u);
    }
    const double nv = norm2(v);
    if (nv <= 0.0) throw NumericalError("svd: basis completion degenerated");
    for (Complex& z : v) z /= nv;
    for (std::size_t k = 0; k < dim; ++k) {
      if (!used[k]) project_out(residual[k], v);
    }
    basis.push_back(std::move(v));
  }
}

ComplexMatrix from_columns(const std::vector<Column>& columns, std::size_t rows) {
  ComplexMatrix out(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = columns[j][i];
  }
  return out;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw ShapeError("ComplexMatrix: " + std::to_string(data_.size()) +
                     " entries do not fill " + std::to_string(rows_) + "x" +
                     std::to_string(cols_));
  }
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ShapeError("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
  return {values.size(), 1, std::vector<Complex>(values.begin(), values.end())};
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out = *this;
  for (Complex& z : out.data_) z = std::conj(z);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw ShapeError("trace: matrix is " + shape_string(*this));
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < rows_; ++i) acc += (*this)(i, i);
  return acc;
}

double ComplexMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const Complex& z : data_) acc += std::norm(z);
  return std::sqrt(acc);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (Complex& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex scale) { return a *= scale; }
ComplexMatrix operator*(Complex scale, ComplexMatrix a) { return a *= scale; }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  }
  return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: " + shape_string(a) + " times " + shape_string(b));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const Complex xij = x(i, j);
      for (std::size_t k = 0; k < y.rows(); ++k) {
        for (std::size_t l = 0; l < y.cols(); ++l) {
          out(i * y.rows() + k, j * y.cols() + l) = xij * y(k, l);
        }
      }
    }
  }
  return out;
}

ComplexMatrix vec(const ComplexMatrix& a) {
  ComplexMatrix out(a.size(), 1);
  std::size_t k = 0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) out(k++, 0) = a(i, j);
  }
  return out;
}

ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols || (v.cols() != 1 && v.rows() != 1)) {
    throw ShapeError("unvec: cannot reshape " + shape_string(v) + " to " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
  ComplexMatrix out(rows, cols);
  const auto flat = v.entries();
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = flat[j * rows + i];
  }
  return out;
}

ComplexMatrix elementary(std::size_t k, std::size_t l, std::size_t i, std::size_t j) {
  if (i < 1 || i > k || j < 1 || j > l) {
    throw PreconditionError("elementary: index (" + std::to_string(i) + "," +
                            std::to_string(j) + ") outside " + std::to_string(k) + "x" +
                            std::to_string(l));
  }
  ComplexMatrix out(k, l);
  out(i - 1, j - 1) = 1.0;
  return out;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& input) {
  if (!input.is_square()) {
    throw PreconditionError("hermitian_eigen: matrix is " + shape_string(input));
  }
  if (!input.all_finite()) throw PreconditionError("hermitian_eigen: non-finite entries");
  const double asym = max_abs_diff(input, input.adjoint());
  if (asym > kHermitianTol) {
    std::ostringstream msg;
    msg << "hermitian_eigen: matrix is not Hermitian (max |a - a^H| = " << asym << ")";
    throw PreconditionError(msg.str());
  }

  const std::size_t n = input.rows();
  ComplexMatrix a = input;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = kEigenOffDiagonalTol * a.frobenius_norm();

  bool converged = off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        if (apq == Complex{0.0, 0.0}) continue;
        const Rotation r = make_rotation(a(p, p).real(), a(q, q).real(), apq);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = r.c * akp + r.gqp * akq;
          a(k, q) = r.s * akp + r.gqq * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = r.c * apk + std::conj(r.gqp) * aqk;
          a(q, k) = r.s * apk + std::conj(r.gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = r.c * vkp + r.gqp * vkq;
          v(k, q) = r.s * vkp + r.gqq * vkq;
        }
      }
    }
    converged = off_diagonal_norm(a) <= threshold;
  }
  if (!converged) {
    throw NumericalError("hermitian_eigen: no convergence after " +
                         std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  const auto order = descending_order(diag);
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = diag[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  return hermitian_eigen(a).eigenvalues;
}

SpectrumResult svd(const ComplexMatrix& a, bool want_vectors) {
  SpectrumResult out;
  if (a.empty()) {
    if (want_vectors) {
      out.left_vectors = ComplexMatrix::identity(a.rows());
      out.right_vectors = ComplexMatrix::identity(a.cols());
    }
    return out;
  }
  if (!a.all_finite()) throw PreconditionError("svd: non-finite entries");

  // Work on a tall matrix w (rows >= cols); a wide input is handled via a^H.
  const bool flipped = a.cols() > a.rows();
  const ComplexMatrix w_mat = flipped ? a.adjoint() : a;
  const std::size_t r = w_mat.rows();
  const std::size_t c = w_mat.cols();

  std::vector<Column> w(c, Column(r));
  for (std::size_t j = 0; j < c; ++j) {
    for (std::size_t i = 0; i < r; ++i) w[j][i] = w_mat(i, j);
  }
  std::vector<Column> v;
  if (want_vectors) {
    v.assign(c, Column(c));
    for (std::size_t j = 0; j < c; ++j) v[j][j] = 1.0;
  }

  const double tol = static_cast<double>(r) * kEps;
  // Columns this small are round-off; rotating them against each other
  // never settles.
  const double negligible = kEps * w_mat.frobenius_norm();
  const double negligible_sq = negligible * negligible;
  bool rotated = true;
  for (int sweep = 0; sweep < kMaxSweeps && rotated; ++sweep) {
    rotated = false;
    for (std::size_t p = 0; p + 1 < c; ++p) {
      for (std::size_t q = p + 1; q < c; ++q) {
        const Complex gamma = dot(w[p], w[q]);
        const double g = std::abs(gamma);
        if (g == 0.0) continue;
        const double alpha = dot(w[p], w[p]).real();
        const double beta = dot(w[q], w[q]).real();
        if (alpha <= negligible_sq || beta <= negligible_sq) continue;
        if (g <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Rotation rot = make_rotation(alpha, beta, gamma);
        rotate_columns(w[p], w[q], rot);
        if (want_vectors) rotate_columns(v[p], v[q], rot);
      }
    }
  }
  if (rotated) {
    throw NumericalError("svd: no convergence after " + std::to_string(kMaxSweeps) +
                         " sweeps");
  }

  std::vector<double> sigma(c);
  for (std::size_t j = 0; j < c; ++j) sigma[j] = norm2(w[j]);
  const auto order = descending_order(sigma);
  out.singular_values.resize(c);
  for (std::size_t k = 0; k < c; ++k) out.singular_values[k] = sigma[order[k]];
  if (!want_vectors) return out;

  const double rank_floor = out.singular_values.front() * static_cast<double>(r) * kEps;
  std::vector<Column> left;
  std::vector<Column> right;
  left.reserve(r);
  right.reserve(c);
  for (std::size_t k = 0; k < c; ++k) {
    right.push_back(v[order[k]]);
    const double s = out.singular_values[k];
    if (s > rank_floor && s > 0.0) {
      Column u = w[order[k]];
      for (Complex& z : u) z /= s;
      left.push_back(std::move(u));
    }
  }
  // Columns for (numerically) zero singular values are arbitrary; complete_basis
  // places them after the defined ones, which keeps column k paired with sigma_k.
  complete_basis(left, r);

  ComplexMatrix u_mat = from_columns(left, r);
  ComplexMatrix v_mat = from_columns(right, c);
  if (flipped) {
    out.left_vectors = std::move(v_mat);
    out.right_vectors = std::move(u_mat);
  } else {
    out.left_vectors = std::move(u_mat);
    out.right_vectors = std::move(v_mat);
  }
  return out;
}

double trace_norm(const ComplexMatrix& a) {
  const auto spectrum = svd(a, false);
  double sum = 0.0;
  for (double s : spectrum.singular_values) sum += s;
  return sum;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  const auto eig = hermitian_eigen(a);
  const std::size_t n = a.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double lambda = eig.eigenvalues[k];
    if (lambda < -kHermitianTol) {
      std::ostringstream msg;
      msg << "psd_sqrt: eigenvalue " << lambda << " below -" << kHermitianTol;
      throw NumericalError(msg.str());
    }
    const double root = std::sqrt(std::max(lambda, 0.0));
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = root * eig.eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

std::string shape_string(const ComplexMatrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace ccnr
