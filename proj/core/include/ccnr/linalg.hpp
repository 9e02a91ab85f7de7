#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccnr {

using Complex = std::complex<double>;

// Operand shapes do not fit the operation.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input violates a documented precondition (e.g. non-Hermitian input to an
// eigensolver, an out-of-range index).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative kernel failed to converge or produced out-of-tolerance
// round-off. Never swallowed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense complex matrix, row-major. A matrix with zero rows or zero columns is
// representable (it is the "empty" matrix); everything else must be finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix column(std::span<const Complex> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  ComplexMatrix adjoint() const;

  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex scale);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);

// Largest |a(i,j) - b(i,j)|; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product: block (i,j) of the result is x(i,j) * y.
ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y);

// Column-stacking vectorization: [a11..am1, a12..am2, ..., a1n..amn]^T.
ComplexMatrix vec(const ComplexMatrix& a);

// Inverse of vec for a rows x cols target.
ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols);

// k x l matrix with a single 1 at (i, j); indices are 1-based.
ComplexMatrix elementary(std::size_t k, std::size_t l, std::size_t i, std::size_t j);

struct HermitianEigen {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

inline constexpr double kHermitianTol = 1e-10;

// Cyclic two-sided Jacobi. Throws PreconditionError if the input is not
// square or not Hermitian to kHermitianTol, NumericalError on stall.
HermitianEigen hermitian_eigen(const ComplexMatrix& a);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

struct SpectrumResult {
  std::vector<double> singular_values;       // min(rows, cols) values, descending
  std::optional<ComplexMatrix> left_vectors;   // rows x rows, unitary
  std::optional<ComplexMatrix> right_vectors;  // cols x cols, unitary
};

// Singular value decomposition by one-sided (Hestenes) Jacobi.
SpectrumResult svd(const ComplexMatrix& a, bool want_vectors = false);

// Ky Fan / trace norm: sum of all singular values.
double trace_norm(const ComplexMatrix& a);

// Principal square root of a Hermitian PSD matrix. Eigenvalues in
// [-kHermitianTol, 0) are clamped to zero; anything lower is a NumericalError.
ComplexMatrix psd_sqrt(const ComplexMatrix& a);

std::string shape_string(const ComplexMatrix& a);

}  // namespace ccnr
