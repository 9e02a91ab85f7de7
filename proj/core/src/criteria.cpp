#include "ccnr/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ccnr {

namespace {

void require_two_qubits(const BipartiteState& s, const char* op) {
  if (s.dim_a() != 2 || s.dim_b() != 2) {
    throw PreconditionError(std::string(op) + ": requires a 2x2 state, got (" +
                            std::to_string(s.dim_a()) + "," + std::to_string(s.dim_b()) + ")");
  }
}

ComplexMatrix sigma_y_sigma_y() {
  const ComplexMatrix sy{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}};
  return kron(sy, sy);
}

}  // namespace

double log_in_base(double x, LogBase base) {
  return base == LogBase::Two ? std::log2(x) : std::log(x);
}

const char* to_string(LogBase base) { return base == LogBase::Two ? "2" : "e"; }

const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::Realignment: return "realignment";
    case Criterion::Ppt: return "ppt";
    case Criterion::PureProduct: return "pure-product";
  }
  return "unknown";
}

CriterionReport realignment_test(const BipartiteState& s, CriterionOptions options) {
  const double n = trace_norm(realign(s));
  return {Criterion::Realignment, n > 1.0 + options.tol, n, log_in_base(n, options.base)};
}

CriterionReport dual_realignment_test(const BipartiteState& s, CriterionOptions options) {
  return realignment_test(swap_subsystems(s), options);
}

CriterionReport ppt_test(const BipartiteState& s, Subsystem subsystem, double tol) {
  const double min_eig = hermitian_eigenvalues(partial_transpose(s, subsystem)).back();
  return {Criterion::Ppt, min_eig < -tol, min_eig, std::nullopt};
}

CriterionReport pure_product_test(const BipartiteState& s, double tol) {
  const double purity = s.purity();
  if (purity < 1.0 - tol) {
    std::ostringstream msg;
    msg << "pure_product_test: state is mixed (tr(rho^2) = " << purity
        << "); use realignment_test for mixed states";
    throw PreconditionError(msg.str());
  }
  const auto sigma = svd(realign(s), false).singular_values;
  const double s1 = sigma.empty() ? 0.0 : sigma[0];
  const double s2 = sigma.size() > 1 ? sigma[1] : 0.0;
  const bool product = std::abs(s1 - 1.0) <= tol && s2 <= tol;
  return {Criterion::PureProduct, !product, 1.0 - s1, std::nullopt};
}

MeasureReport measures(const BipartiteState& s, LogBase base) {
  const double n = trace_norm(realign(s));
  const double log_n = log_in_base(n, base);
  MeasureReport out{n, log_n, n - 1.0, std::max(0.0, log_n), std::nullopt, std::nullopt};
  if (s.dim_a() == 2 && s.dim_b() == 2) {
    const double c = concurrence(s);
    out.concurrence = c;
    out.e_f = entanglement_of_formation_from_concurrence(c);
  }
  return out;
}

double concurrence(const BipartiteState& s) {
  require_two_qubits(s, "concurrence");
  const ComplexMatrix yy = sigma_y_sigma_y();
  ComplexMatrix flipped = matmul(matmul(yy, s.matrix().conj()), yy);
  flipped = 0.5 * (flipped + flipped.adjoint());
  const ComplexMatrix product = matmul(psd_sqrt(s.matrix()), psd_sqrt(flipped));
  const auto lambda = svd(product, false).singular_values;
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return std::clamp(c, 0.0, 1.0);
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double entanglement_of_formation_from_concurrence(double c) {
  const double clamped = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - clamped * clamped)));
}

double entanglement_of_formation_2x2(const BipartiteState& s) {
  require_two_qubits(s, "entanglement_of_formation_2x2");
  return entanglement_of_formation_from_concurrence(concurrence(s));
}

}  // namespace ccnr
