#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ccnr/criteria.hpp"
#include "ccnr/states.hpp"
#include "support/oracles.hpp"

using namespace ccnr;
using namespace ccnr::testing;

namespace {

std::size_t numerical_rank(const ComplexMatrix& rho) {
  std::size_t rank = 0;
  for (double l : hermitian_eigenvalues(rho)) {
    if (l > 1e-10) ++rank;
  }
  return rank;
}

Complex inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < x.rows(); ++i) acc += std::conj(x(i, 0)) * y(i, 0);
  return acc;
}

}  // namespace

TEST_CASE("simple families") {
  CHECK(max_abs_diff(max_mixed(3).matrix(), ComplexMatrix::identity(9) * (1.0 / 9.0)) == 0.0);
  const auto uniform = bell_diagonal({0.25, 0.25, 0.25, 0.25});
  CHECK(max_abs_diff(uniform.matrix(), ComplexMatrix::identity(4) * 0.25) <= 1e-15);
  CHECK(realignment_test(uniform).scalar == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(bell_diagonal({0.5, 0.5, 0.5, -0.5}), PreconditionError);
  CHECK_THROWS_AS(bell_diagonal({0.5, 0.5, 0.5, 0.5}), PreconditionError);
  CHECK_THROWS_AS(werner2(1.5), PreconditionError);
  CHECK_THROWS_AS(isotropic(1, 0.5), PreconditionError);
}

TEST_CASE("Horodecki 3x3 matches the printed matrix") {
  const double a = 0.5;
  const double d = (1.0 + a) / 2.0;
  const double o = std::sqrt(1.0 - a * a) / 2.0;
  const ComplexMatrix printed{
      {a, 0, 0, 0, a, 0, 0, 0, a},
      {0, a, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, a, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, a, 0, 0, 0, 0, 0},
      {a, 0, 0, 0, a, 0, 0, 0, a},
      {0, 0, 0, 0, 0, a, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, d, 0, o},
      {0, 0, 0, 0, 0, 0, 0, a, 0},
      {a, 0, 0, 0, a, 0, o, 0, d},
  };
  CHECK(max_abs_diff(horodecki3x3(a).matrix(), printed * 0.2) <= 1e-15);
  CHECK_THROWS_AS(horodecki3x3(0.0), PreconditionError);
  CHECK_THROWS_AS(horodecki3x3(1.0), PreconditionError);
  CHECK(max_abs_diff(build(parse_state_spec("horodecki3x3 a=0.5")).matrix(), printed * 0.2) <=
        1e-15);
}

TEST_CASE("Horodecki mixture endpoints") {
  CHECK(max_abs_diff(horodecki_mix(0.3, 0.0).matrix(), max_mixed(3).matrix()) <= 1e-15);
  CHECK(max_abs_diff(horodecki_mix(0.3, 1.0).matrix(), horodecki3x3(0.3).matrix()) <= 1e-15);
  CHECK_THROWS_AS(horodecki_mix(0.3, 1.1), PreconditionError);
}

TEST_CASE("UPB states") {
  for (const auto& basis : {tiles_upb_vectors(), pyramid_upb_vectors()}) {
    REQUIRE(basis.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        CHECK(std::abs(inner(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)) <= 1e-12);
      }
    }
    const auto s = upb_state(basis);
    CHECK(numerical_rank(s.matrix()) == 4);
    CHECK(s.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ppt_test(s).scalar >= -1e-10);
    CHECK_FALSE(ppt_test(s).detected_entangled);
    for (const auto& psi : basis) CHECK(matmul(s.matrix(), psi).max_abs() <= 1e-10);
    CHECK(realignment_test(s).detected_entangled);
  }
  CHECK(*realignment_test(tiles_upb()).log_n == doctest::Approx(0.121).epsilon(0.01));
  CHECK(*dual_realignment_test(tiles_upb()).log_n == doctest::Approx(0.121).epsilon(0.01));
  CHECK(*realignment_test(pyramid_upb()).log_n == doctest::Approx(0.134).epsilon(0.01));
}

TEST_CASE("two-by-two family") {
  for (double a = 0.0; a <= 1.0; a += 0.1) {
    const auto s = two_by_two_family(a, 0.5);
    CHECK_FALSE(ppt_test(s).detected_entangled);
    CHECK_FALSE(realignment_test(s).detected_entangled);
  }
  const auto diag = two_by_two_family(0.0, 0.3);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i != j) CHECK(diag.matrix()(i, j) == Complex{0.0, 0.0});
    }
  }
  CHECK_FALSE(ppt_test(diag).detected_entangled);
  for (double p : {0.0, 0.2, 0.45, 0.55, 0.9, 1.0}) {
    CHECK(ppt_test(two_by_two_family(std::numbers::sqrt2 / 2.0, p)).detected_entangled);
  }
  CHECK_THROWS_AS(two_by_two_family(1.2, 0.5), PreconditionError);
}

TEST_CASE("realignment boundary coincides with the PPT boundary") {
  const double step = 1e-4;
  SUBCASE("Werner") {
    CHECK(std::abs(realignment_test(werner2(0.5)).scalar - 1.0) <= 1e-6);
    for (double phi = 0.0; phi <= 1.0; phi += step) {
      const auto s = werner2(phi);
      CHECK(realignment_test(s).detected_entangled == ppt_test(s).detected_entangled);
    }
  }
  SUBCASE("isotropic") {
    for (std::size_t d : {2, 3, 4}) {
      const double boundary = 1.0 / d;
      CHECK(std::abs(realignment_test(isotropic(d, boundary)).scalar - 1.0) <= 1e-6);
      CHECK(std::abs(ppt_test(isotropic(d, boundary)).scalar) <= 1e-9);
      for (double f = 0.0; f <= 1.0; f += 0.01) {
        if (std::abs(f - boundary) < 1e-6) continue;
        const auto s = isotropic(d, f);
        CHECK(realignment_test(s).detected_entangled == (f > boundary));
        CHECK(ppt_test(s).detected_entangled == (f > boundary));
      }
    }
  }
  SUBCASE("Bell diagonal") {
    Rng rng(5);
    for (int k = 0; k < 500; ++k) {
      std::array<double, 4> w{};
      double total = 0.0;
      for (double& x : w) {
        x = rng.uniform();
        total += x;
      }
      for (double& x : w) x /= total;
      const auto s = bell_diagonal(w);
      const bool entangled = *std::max_element(w.begin(), w.end()) > 0.5;
      CHECK(realignment_test(s).detected_entangled == entangled);
      CHECK(ppt_test(s).detected_entangled == entangled);
    }
  }
}

TEST_CASE("random samplers are seeded") {
  CHECK(random_mixed(3, 3, 4, 42).matrix() == random_mixed(3, 3, 4, 42).matrix());
  CHECK_FALSE(random_mixed(3, 3, 4, 42).matrix() == random_mixed(3, 3, 4, 43).matrix());
  const auto a = random_separable(2, 3, 5, 9);
  const auto b = random_separable(2, 3, 5, 9);
  CHECK(a.state.matrix() == b.state.matrix());

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(random_mixed(2, 2, 1, seed).purity() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(random_mixed(2, 2, 5, 1), PreconditionError);
  CHECK_THROWS_AS(random_separable(2, 2, 0, 1), PreconditionError);
}

TEST_CASE("separable ensembles are valid witnesses") {
  const auto sample = random_separable(3, 2, 7, 123);
  double total = 0.0;
  for (const auto& t : sample.ensemble.terms) {
    CHECK(t.probability >= 0.0);
    total += t.probability;
    validate(kron(t.rho_a, t.rho_b), 3, 2, {.normalize_trace = true});
    CHECK(t.rho_a.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(std::abs(total - 1.0) <= 1e-12);
  CHECK(max_abs_diff(sample.ensemble.to_matrix(), sample.state.matrix()) <= 1e-12);
}

TEST_CASE("state spec parsing") {
  const auto spec = parse_state_spec("horodecki_mix a=0.236 p=0.99");
  CHECK(spec.family == Family::HorodeckiMix);
  CHECK(spec.params.at("a") == 0.236);
  CHECK(parse_state_spec(spec.to_string()).params == spec.params);

  const auto bell = parse_state_spec("bell_diagonal weights=0.7,0.1,0.1,0.1");
  CHECK(build(bell).matrix() == bell_diagonal({0.7, 0.1, 0.1, 0.1}).matrix());
  CHECK(max_abs_diff(build(parse_state_spec("max_mixed d=3")).matrix(),
                     ComplexMatrix::identity(9) * (1.0 / 9.0)) == 0.0);
  CHECK(build(parse_state_spec("random_mixed m=2 n=3 rank=2 seed=4")).matrix() ==
        random_mixed(2, 3, 2, 4).matrix());

  for (Family f : all_families()) CHECK(family_from_string(to_string(f)) == f);

  CHECK_THROWS_AS(parse_state_spec(""), PreconditionError);
  CHECK_THROWS_AS(parse_state_spec("nonsense"), PreconditionError);
  CHECK_THROWS_AS(parse_state_spec("max_mixed d"), PreconditionError);
  CHECK_THROWS_AS(parse_state_spec("max_mixed d=x"), PreconditionError);
  CHECK_THROWS_AS(parse_state_spec("max_mixed d=2 d=3"), PreconditionError);
  CHECK_THROWS_AS(parse_state_spec("max_mixed q=2"), PreconditionError);
  CHECK_THROWS_AS(build(parse_state_spec("horodecki3x3")), PreconditionError);
  CHECK_THROWS_AS(build(parse_state_spec("max_mixed d=2.5")), PreconditionError);
  CHECK_THROWS_AS(build(parse_state_spec("horodecki3x3 a=1")), PreconditionError);
  CHECK_THROWS_AS(parse_state_spec("bell_diagonal weights=1,0"), PreconditionError);
}
