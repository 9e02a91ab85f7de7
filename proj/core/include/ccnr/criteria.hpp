#pragma once

#include <optional>
#include <string>

#include "ccnr/bipartite.hpp"

namespace ccnr {

// Base of the logarithm in log N. Base 2 is the one under which the UPB and
// Horodecki reference values (0.121, 0.134, 0.0044) come out; natural log is
// kept for comparison.
enum class LogBase { Two, E };

inline constexpr LogBase kDefaultLogBase = LogBase::Two;
inline constexpr double kDetectionTol = 1e-9;

double log_in_base(double x, LogBase base);
const char* to_string(LogBase base);

enum class Criterion { Realignment, Ppt, PureProduct };
const char* to_string(Criterion c);

struct CriterionReport {
  Criterion criterion;
  bool detected_entangled;
  // Realignment: N, the trace norm of the realigned matrix.
  // Ppt: smallest eigenvalue of the partial transpose.
  // PureProduct: 1 - sigma_1 of the realigned matrix.
  double scalar;
  std::optional<double> log_n;  // realignment only
};

struct CriterionOptions {
  double tol = kDetectionTol;
  LogBase base = kDefaultLogBase;
};

// Entangled whenever N > 1 + tol; N <= 1 for every separable state.
CriterionReport realignment_test(const BipartiteState& s, CriterionOptions options = {});

// realignment_test on the subsystem-swapped state.
CriterionReport dual_realignment_test(const BipartiteState& s, CriterionOptions options = {});

CriterionReport ppt_test(const BipartiteState& s, Subsystem subsystem = Subsystem::A,
                         double tol = kDetectionTol);

// For pure states only: product iff the realigned matrix has the single
// singular value 1. Throws PreconditionError when tr(rho^2) < 1 - tol.
CriterionReport pure_product_test(const BipartiteState& s, double tol = kDetectionTol);

struct MeasureReport {
  double n;
  double log_n;
  double n_minus_one;
  double f;                    // max(0, log_n)
  std::optional<double> concurrence;  // 2 x 2 only
  std::optional<double> e_f;          // 2 x 2 only
};

MeasureReport measures(const BipartiteState& s, LogBase base = kDefaultLogBase);

// Wootters concurrence max(0, l1 - l2 - l3 - l4), where l_i are the singular
// values of sqrt(rho) sqrt(rho~) with rho~ = (sy (x) sy) rho* (sy (x) sy);
// these coincide with the square roots of the eigenvalues of rho rho~.
double concurrence(const BipartiteState& s);

// Binary entropy in bits; h(0) = h(1) = 0.
double binary_entropy(double x);

// E_f = h((1 + sqrt(1 - C^2)) / 2), in ebits.
double entanglement_of_formation_from_concurrence(double c);
double entanglement_of_formation_2x2(const BipartiteState& s);

}  // namespace ccnr
