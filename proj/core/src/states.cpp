#include "ccnr/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ccnr {

namespace {

ComplexMatrix basis_ket(std::size_t d, std::size_t i) {
  ComplexMatrix out(d, 1);
  out(i, 0) = 1.0;
  return out;
}

ComplexMatrix projector(const ComplexMatrix& ket) { return matmul(ket, ket.adjoint()); }

ComplexMatrix real_ket(std::initializer_list<double> values) {
  ComplexMatrix out(values.size(), 1);
  std::size_t i = 0;
  for (double v : values) out(i++, 0) = v;
  return out;
}

void require_unit_interval(double x, const char* name, const char* family, bool open) {
  const bool ok = open ? (x > 0.0 && x < 1.0) : (x >= 0.0 && x <= 1.0);
  if (!ok || !std::isfinite(x)) {
    std::ostringstream msg;
    msg << family << ": " << name << " = " << x << " outside " << (open ? "(0, 1)" : "[0, 1]");
    throw PreconditionError(msg.str());
  }
}

ComplexMatrix max_entangled_ket(std::size_t d) {
  ComplexMatrix out(d * d, 1);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) out(i * d + i, 0) = amp;
  return out;
}

// |Phi+>, |Phi->, |Psi+>, |Psi->
std::array<ComplexMatrix, 4> bell_kets() {
  const double r = std::numbers::sqrt2 / 2.0;
  return {real_ket({r, 0, 0, r}), real_ket({r, 0, 0, -r}), real_ket({0, r, r, 0}),
          real_ket({0, r, -r, 0})};
}

}  // namespace

BipartiteState max_mixed(std::size_t d) {
  if (d == 0) throw PreconditionError("max_mixed: d must be >= 1");
  const double dd = static_cast<double>(d * d);
  return validate(ComplexMatrix::identity(d * d) * (1.0 / dd), d, d);
}

BipartiteState max_entangled(std::size_t d) {
  if (d == 0) throw PreconditionError("max_entangled: d must be >= 1");
  return validate(projector(max_entangled_ket(d)), d, d);
}

BipartiteState bell_diagonal(const std::array<double, 4>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw PreconditionError("bell_diagonal: weights must be finite and non-negative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "bell_diagonal: weights sum to " << total << ", expected 1";
    throw PreconditionError(msg.str());
  }
  const auto kets = bell_kets();
  ComplexMatrix rho(4, 4);
  for (std::size_t k = 0; k < 4; ++k) rho += projector(kets[k]) * weights[k];
  return validate(rho, 2, 2);
}

BipartiteState werner2(double phi) {
  require_unit_interval(phi, "phi", "werner2", false);
  const ComplexMatrix singlet = projector(bell_kets()[3]);
  const ComplexMatrix rest = ComplexMatrix::identity(4) - singlet;
  return validate(singlet * phi + rest * ((1.0 - phi) / 3.0), 2, 2);
}

BipartiteState isotropic(std::size_t d, double f) {
  if (d < 2) throw PreconditionError("isotropic: d must be >= 2");
  require_unit_interval(f, "f", "isotropic", false);
  const ComplexMatrix phi = projector(max_entangled_ket(d));
  const ComplexMatrix rest = ComplexMatrix::identity(d * d) - phi;
  const double others = static_cast<double>(d * d - 1);
  return validate(phi * f + rest * ((1.0 - f) / others), d, d);
}

std::vector<ComplexMatrix> tiles_upb_vectors() {
  const double r = std::numbers::sqrt2 / 2.0;
  const ComplexMatrix k0 = basis_ket(3, 0);
  const ComplexMatrix k1 = basis_ket(3, 1);
  const ComplexMatrix k2 = basis_ket(3, 2);
  const ComplexMatrix all = k0 + k1 + k2;
  return {
      kron(k0, k0 - k1) * r,
      kron(k0 - k1, k2) * r,
      kron(k2, k1 - k2) * r,
      kron(k1 - k2, k0) * r,
      kron(all, all) * (1.0 / 3.0),
  };
}

std::vector<ComplexMatrix> pyramid_upb_vectors() {
  const double h = 0.5 * std::sqrt(1.0 + std::sqrt(5.0));
  const double norm = 2.0 / std::sqrt(5.0 + std::sqrt(5.0));
  std::array<ComplexMatrix, 5> v;
  for (std::size_t j = 0; j < 5; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / 5.0;
    v[j] = real_ket({norm * std::cos(angle), norm * std::sin(angle), norm * h});
  }
  std::vector<ComplexMatrix> out;
  out.reserve(5);
  for (std::size_t j = 0; j < 5; ++j) out.push_back(kron(v[j], v[(2 * j) % 5]));
  return out;
}

BipartiteState upb_state(const std::vector<ComplexMatrix>& basis) {
  ComplexMatrix rho = ComplexMatrix::identity(9);
  for (const ComplexMatrix& psi : basis) {
    if (psi.rows() != 9 || psi.cols() != 1) {
      throw ShapeError("upb_state: expected 9x1 kets, got " + shape_string(psi));
    }
    rho -= projector(psi);
  }
  return validate(rho * 0.25, 3, 3);
}

BipartiteState tiles_upb() { return upb_state(tiles_upb_vectors()); }
BipartiteState pyramid_upb() { return upb_state(pyramid_upb_vectors()); }

BipartiteState horodecki3x3(double a) {
  require_unit_interval(a, "a", "horodecki3x3", true);
  ComplexMatrix rho(9, 9);
  for (std::size_t i = 0; i < 9; ++i) rho(i, i) = a;
  for (const std::size_t i : {std::size_t{0}, std::size_t{4}, std::size_t{8}}) {
    for (const std::size_t j : {std::size_t{0}, std::size_t{4}, std::size_t{8}}) rho(i, j) = a;
  }
  const double diag = 0.5 * (1.0 + a);
  const double off = 0.5 * std::sqrt(1.0 - a * a);
  rho(6, 6) = diag;
  rho(8, 8) = diag;
  rho(6, 8) = off;
  rho(8, 6) = off;
  return validate(rho * (1.0 / (8.0 * a + 1.0)), 3, 3);
}

BipartiteState horodecki_mix(double a, double p) {
  require_unit_interval(p, "p", "horodecki_mix", false);
  const BipartiteState bound = horodecki3x3(a);
  const ComplexMatrix mixed = ComplexMatrix::identity(9) * (1.0 / 9.0);
  return validate(bound.matrix() * p + mixed * (1.0 - p), 3, 3);
}

BipartiteState two_by_two_family(double a, double p) {
  require_unit_interval(a, "a", "two_by_two_family", false);
  require_unit_interval(p, "p", "two_by_two_family", false);
  const double b = std::sqrt(1.0 - a * a);
  const double q = 1.0 - p;
  const ComplexMatrix rho{
      {p * a * a, 0.0, 0.0, p * a * b},
      {0.0, q * a * a, q * a * b, 0.0},
      {0.0, q * a * b, q * b * b, 0.0},
      {p * a * b, 0.0, 0.0, p * b * b},
  };
  return validate(rho, 2, 2);
}

ComplexMatrix Ensemble::to_matrix() const {
  if (terms.empty()) return {};
  const std::size_t dim = terms.front().rho_a.rows() * terms.front().rho_b.rows();
  ComplexMatrix out(dim, dim);
  for (const EnsembleTerm& t : terms) out += kron(t.rho_a, t.rho_b) * t.probability;
  return out;
}

BipartiteState random_mixed(std::size_t m, std::size_t n, std::size_t rank, Rng& rng) {
  if (m == 0 || n == 0) throw PreconditionError("random_mixed: dimensions must be >= 1");
  if (rank == 0 || rank > m * n) {
    throw PreconditionError("random_mixed: rank must be in [1, m n]");
  }
  const ComplexMatrix g = ginibre(m * n, rank, rng);
  ComplexMatrix rho = matmul(g, g.adjoint());
  rho *= 1.0 / rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return validate(rho, m, n, {.normalize_trace = true});
}

BipartiteState random_mixed(std::size_t m, std::size_t n, std::size_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_mixed(m, n, rank, rng);
}

SeparableSample random_separable(std::size_t m, std::size_t n, std::size_t terms, Rng& rng) {
  if (m == 0 || n == 0) throw PreconditionError("random_separable: dimensions must be >= 1");
  if (terms == 0) throw PreconditionError("random_separable: terms must be >= 1");
  Ensemble ensemble;
  double total = 0.0;
  for (std::size_t t = 0; t < terms; ++t) {
    double w;
    do {
      w = rng.uniform();
    } while (w == 0.0);
    total += w;
    ensemble.terms.push_back(
        {w, projector(random_pure_vector(m, rng)), projector(random_pure_vector(n, rng))});
  }
  for (EnsembleTerm& t : ensemble.terms) t.probability /= total;
  ComplexMatrix rho = ensemble.to_matrix();
  rho = 0.5 * (rho + rho.adjoint());
  BipartiteState state = validate(rho, m, n, {.normalize_trace = true});
  return {std::move(state), std::move(ensemble)};
}

SeparableSample random_separable(std::size_t m, std::size_t n, std::size_t terms,
                                 std::uint64_t seed) {
  Rng rng(seed);
  return random_separable(m, n, terms, rng);
}

}  // namespace ccnr
