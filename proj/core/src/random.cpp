#include "ccnr/random.hpp"

#include <cmath>
#include <numbers>

namespace ccnr {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("Rng::below: bound must be positive");
  // Rejection sampling keeps the result unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix out(rows, cols);
  for (Complex& z : out.entries()) z = rng.complex_normal();
  return out;
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
  ComplexMatrix q = ginibre(d, d, rng);
  // Modified Gram-Schmidt on columns; dividing by the column norm makes R's
  // diagonal real positive, which is the Haar-correct phase convention.
  for (std::size_t j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex overlap{0.0, 0.0};
        for (std::size_t i = 0; i < d; ++i) overlap += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < d; ++i) q(i, j) -= overlap * q(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    if (norm == 0.0) throw NumericalError("random_unitary: rank-deficient sample");
    for (std::size_t i = 0; i < d; ++i) q(i, j) /= norm;
  }
  return q;
}

ComplexMatrix random_pure_vector(std::size_t d, Rng& rng) {
  ComplexMatrix v = ginibre(d, 1, rng);
  double norm;
  do {
    norm = v.frobenius_norm();
    if (norm == 0.0) v = ginibre(d, 1, rng);
  } while (norm == 0.0);
  v *= 1.0 / norm;
  return v;
}

}  // namespace ccnr
