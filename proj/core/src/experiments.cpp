#include "ccnr/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace ccnr {

namespace {

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || !std::isfinite(v)) {
    throw PreconditionError("grid: invalid " + what + " '" + text + "'");
  }
  return v;
}

void require_grid_within(const Grid& g, double lo, double hi, bool open, const char* name) {
  const auto inside = [&](double x) { return open ? (x > lo && x < hi) : (x >= lo && x <= hi); };
  if (!inside(g.lo) || !inside(g.hi)) {
    std::ostringstream msg;
    msg << name << " grid " << g.to_string() << " must lie within " << (open ? "(" : "[") << lo
        << ", " << hi << (open ? ")" : "]");
    throw PreconditionError(msg.str());
  }
}

// Evaluates fn(k) for k in [0, count) into a vector, optionally on several
// threads; results are stored by index so output order never depends on
// scheduling.
template <typename T>
std::vector<T> evaluate_indexed(std::size_t count, unsigned threads,
                                const std::function<T(std::size_t)>& fn) {
  std::vector<std::optional<T>> slots(count);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) slots[k] = fn(k);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < count; k += workers) slots[k] = fn(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

SweepRow evaluate_point(const BipartiteState& s, double a, double p, const SweepOptions& options) {
  const MeasureReport m = measures(s, options.base);
  const CriterionReport ppt = ppt_test(s, Subsystem::A, options.tol);
  const bool realign_detected = m.n > 1.0 + options.tol;
  return {a,   p,          m.n,      m.log_n, m.f, ppt.scalar, m.concurrence,
          m.e_f, ppt.detected_entangled && !realign_detected};
}

double horodecki_n(double a, double p) {
  return trace_norm(realign(horodecki_mix(a, p)));
}

void write_optional(std::ostream& out, const std::optional<double>& v) {
  if (v) out << *v;
}

bool near(double x, double target) { return std::abs(x - target) <= 1e-12; }

}  // namespace

Grid Grid::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3) {
    throw PreconditionError("grid: expected lo:hi:step, got '" + text + "'");
  }
  Grid g{parse_double(parts[0], "lo"), parse_double(parts[1], "hi"),
         parse_double(parts[2], "step")};
  if (g.hi < g.lo) throw PreconditionError("grid: hi < lo in '" + text + "'");
  if (!(g.step > 0.0)) throw PreconditionError("grid: step must be positive in '" + text + "'");
  return g;
}

std::vector<double> Grid::points() const {
  const double span = (hi - lo) / step;
  const auto intervals = static_cast<std::size_t>(std::floor(span + 1e-9));
  std::vector<double> out;
  out.reserve(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    out.push_back(std::min(hi, lo + static_cast<double>(k) * step));
  }
  // Snap a last point that lands within round-off of hi.
  if (std::abs(out.back() - hi) <= 1e-9 * step) out.back() = hi;
  return out;
}

std::string Grid::to_string() const {
  std::ostringstream out;
  out << lo << ':' << hi << ':' << step;
  return out.str();
}

std::vector<SweepRow> sweep_horodecki_mix(const Grid& a_grid, const Grid& p_grid,
                                          const SweepOptions& options) {
  require_grid_within(a_grid, 0.0, 1.0, true, "a");
  require_grid_within(p_grid, 0.0, 1.0, false, "p");
  const auto as = a_grid.points();
  const auto ps = p_grid.points();
  return evaluate_indexed<SweepRow>(as.size() * ps.size(), options.threads, [&](std::size_t k) {
    const double a = as[k / ps.size()];
    const double p = ps[k % ps.size()];
    return evaluate_point(horodecki_mix(a, p), a, p, options);
  });
}

std::vector<SweepRow> sweep_two_by_two(const Grid& a_grid, const Grid& p_grid,
                                       const SweepOptions& options) {
  require_grid_within(a_grid, 0.0, 1.0, false, "a");
  require_grid_within(p_grid, 0.0, 1.0, false, "p");
  const auto as = a_grid.points();
  const auto ps = p_grid.points();
  return evaluate_indexed<SweepRow>(as.size() * ps.size(), options.threads, [&](std::size_t k) {
    const double a = as[k / ps.size()];
    const double p = ps[k % ps.size()];
    return evaluate_point(two_by_two_family(a, p), a, p, options);
  });
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  const auto old_precision = out.precision(17);
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << r.a << ',' << r.p << ',' << r.n << ',' << r.log_n << ',' << r.f << ','
        << r.ppt_min_eig << ',';
    write_optional(out, r.concurrence);
    out << ',';
    write_optional(out, r.e_f);
    out << ',' << (r.npt_undetected ? 1 : 0) << '\n';
  }
  out.precision(old_precision);
}

PeakResult horodecki_peak(const Grid& a_grid, LogBase base) {
  require_grid_within(a_grid, 0.0, 1.0, true, "a");
  PeakResult best{0.0, -1.0};
  for (double a : a_grid.points()) {
    const double f = std::max(0.0, log_in_base(horodecki_n(a, 1.0), base));
    if (f > best.f) best = {a, f};
  }
  return best;
}

ThresholdResult horodecki_p_threshold(double a, double lo, double hi, double tol) {
  if (!(lo < hi) || lo < 0.0 || hi > 1.0) {
    throw PreconditionError("horodecki_p_threshold: bracket must satisfy 0 <= lo < hi <= 1");
  }
  constexpr int kSamples = 21;
  double previous = -1.0;
  for (int k = 0; k < kSamples; ++k) {
    const double p = lo + (hi - lo) * k / (kSamples - 1);
    const double n = horodecki_n(a, p);
    if (n < previous - 1e-12) {
      std::ostringstream msg;
      msg << "horodecki_p_threshold: N is not monotone in p on [" << lo << ", " << hi
          << "] at a = " << a;
      throw PreconditionError(msg.str());
    }
    previous = n;
  }
  if (horodecki_n(a, lo) > 1.0 || !(horodecki_n(a, hi) > 1.0)) {
    std::ostringstream msg;
    msg << "horodecki_p_threshold: [" << lo << ", " << hi << "] does not bracket N = 1 at a = "
        << a;
    throw PreconditionError(msg.str());
  }
  ThresholdResult out{0.0, lo, hi, 0};
  while (out.hi - out.lo > tol) {
    const double mid = 0.5 * (out.lo + out.hi);
    if (horodecki_n(a, mid) > 1.0) {
      out.hi = mid;
    } else {
      out.lo = mid;
    }
    ++out.iterations;
  }
  out.p = 0.5 * (out.lo + out.hi);
  return out;
}

Fig1Summary summarize_fig1(const Grid& a_grid, double threshold_a, LogBase base) {
  return {horodecki_peak(a_grid, base), threshold_a, horodecki_p_threshold(threshold_a)};
}

Fig2Summary summarize_fig2(const std::vector<SweepRow>& rows, double tol) {
  Fig2Summary s;
  for (const SweepRow& r : rows) {
    ++s.points;
    if (r.ppt_min_eig < -tol) ++s.npt_points;
    if (r.npt_undetected) ++s.npt_undetected;
    const bool separable_line = near(r.p, 0.5) || near(r.a, 0.0) || near(r.a, 1.0);
    if (separable_line && r.f > tol) ++s.boundary_violations;
    if (r.e_f && r.n - 1.0 > *r.e_f + tol) ++s.n_minus_one_above_e_f;
    if (r.concurrence && r.n - 1.0 > *r.concurrence + tol) ++s.n_minus_one_above_concurrence;
    if (r.e_f && r.ppt_min_eig < -tol) {
      if (r.log_n > *r.e_f + tol) ++s.log_n_above_e_f;
      if (r.log_n < *r.e_f - tol) ++s.log_n_below_e_f;
    }
  }
  return s;
}

const char* to_string(SearchMode mode) {
  return mode == SearchMode::Mixed ? "mixed" : "separable";
}

SearchMode search_mode_from_string(const std::string& name) {
  if (name == "mixed") return SearchMode::Mixed;
  if (name == "separable") return SearchMode::Separable;
  throw PreconditionError("unknown search mode '" + name + "' (expected mixed or separable)");
}

SearchStats random_search(const SearchOptions& options) {
  if (options.count == 0) throw PreconditionError("search: count must be >= 1");
  if (options.m == 0 || options.n == 0) throw PreconditionError("search: dimensions must be >= 1");
  if (options.mode == SearchMode::Separable && options.max_terms == 0) {
    throw PreconditionError("search: max_terms must be >= 1");
  }
  const auto start = std::chrono::steady_clock::now();
  const std::size_t dim = options.m * options.n;
  const bool ppt_exact = dim <= 6;
  Rng rng(options.seed);
  SearchStats stats;
  stats.max_log_n = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < options.count; ++k) {
    BipartiteState state =
        options.mode == SearchMode::Mixed
            ? random_mixed(options.m, options.n, 1 + rng.below(dim), rng)
            : random_separable(options.m, options.n, 1 + rng.below(options.max_terms), rng).state;
    const CriterionReport r = realignment_test(state, {options.tol, options.base});
    const CriterionReport ppt = ppt_test(state, Subsystem::A, options.tol);
    ++stats.count;
    stats.max_log_n = std::max(stats.max_log_n, *r.log_n);
    const bool rd = r.detected_entangled;
    const bool pd = ppt.detected_entangled;
    if (rd && pd) ++stats.both;
    if (rd && !pd) ++stats.realignment_only;
    if (!rd && pd) ++stats.ppt_only;
    if (!rd && !pd) ++stats.neither;
    const bool anomaly = options.mode == SearchMode::Separable ? (rd || pd) : (rd && !pd && ppt_exact);
    if (anomaly) stats.anomalies.push_back(k);
    if (options.keep_samples) stats.samples.push_back({k, r.scalar, *r.log_n, ppt.scalar, rd, pd});
  }
  stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

void write_search_csv(std::ostream& out, const std::vector<SearchSample>& samples) {
  const auto old_precision = out.precision(17);
  out << "index,n,log_n,ppt_min_eig,realignment_detected,ppt_detected\n";
  for (const SearchSample& s : samples) {
    out << s.index << ',' << s.n << ',' << s.log_n << ',' << s.ppt_min_eig << ','
        << (s.realignment_detected ? 1 : 0) << ',' << (s.ppt_detected ? 1 : 0) << '\n';
  }
  out.precision(old_precision);
}

std::vector<CompareRow> compare_measures(Family family, const Grid& a_grid, const Grid& p_grid,
                                         LogBase base) {
  std::vector<std::pair<double, double>> params;
  if (family == Family::Werner2) {
    require_grid_within(p_grid, 0.0, 1.0, false, "phi");
    for (double phi : p_grid.points()) params.emplace_back(0.0, phi);
  } else if (family == Family::TwoByTwoFamily) {
    require_grid_within(a_grid, 0.0, 1.0, false, "a");
    require_grid_within(p_grid, 0.0, 1.0, false, "p");
    for (double a : a_grid.points()) {
      for (double p : p_grid.points()) params.emplace_back(a, p);
    }
  } else {
    throw PreconditionError(std::string("compare: unsupported family '") + to_string(family) +
                            "' (expected werner2 or two_by_two_family)");
  }
  std::vector<CompareRow> rows;
  rows.reserve(params.size());
  for (const auto& [a, p] : params) {
    const BipartiteState s = family == Family::Werner2 ? werner2(p) : two_by_two_family(a, p);
    const MeasureReport m = measures(s, base);
    const bool entangled = ppt_test(s).detected_entangled;
    rows.push_back({a, p, m.n, m.log_n, m.n_minus_one, *m.concurrence, *m.e_f, entangled});
  }
  return rows;
}

CompareSummary summarize_compare(const std::vector<CompareRow>& rows, double tol) {
  CompareSummary s;
  for (const CompareRow& r : rows) {
    ++s.points;
    if (!r.entangled) {
      if (r.log_n > tol || r.n_minus_one > tol || r.e_f > tol) ++s.boundary_nonzero;
      continue;
    }
    ++s.entangled;
    if (r.log_n >= r.e_f - tol) ++s.log_n_ge_e_f;
    if (r.n_minus_one <= r.e_f + tol) ++s.n_minus_one_le_e_f;
    if (r.log_n > r.e_f + tol) ++s.log_n_above_e_f;
    if (r.log_n < r.e_f - tol) ++s.log_n_below_e_f;
    s.max_abs_e_f_minus_n_minus_one =
        std::max(s.max_abs_e_f_minus_n_minus_one, std::abs(r.e_f - r.n_minus_one));
    s.max_abs_concurrence_minus_n_minus_one =
        std::max(s.max_abs_concurrence_minus_n_minus_one, std::abs(r.concurrence - r.n_minus_one));
  }
  return s;
}

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows) {
  const auto old_precision = out.precision(17);
  out << "a,p,n,log_n,n_minus_one,concurrence,e_f,entangled\n";
  for (const CompareRow& r : rows) {
    out << r.a << ',' << r.p << ',' << r.n << ',' << r.log_n << ',' << r.n_minus_one << ','
        << r.concurrence << ',' << r.e_f << ',' << (r.entangled ? 1 : 0) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace ccnr
