#pragma once

#include <cstdint>
#include <random>

#include "ccnr/linalg.hpp"

namespace ccnr {

// Seeded sampler. Uses std::mt19937_64, whose output sequence is fixed by
// the standard; uniform and normal variates are derived here rather than
// through <random> distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  // Standard normal via Box-Muller.
  double normal();
  // Circular complex Gaussian with E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// rows x cols matrix of i.i.d. circular complex Gaussians.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

// Q from the QR factorization of a Ginibre matrix, with the phases of R's
// diagonal absorbed so the distribution is Haar.
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

// Unit column vector drawn from the unitarily invariant distribution.
ComplexMatrix random_pure_vector(std::size_t d, Rng& rng);

}  // namespace ccnr
