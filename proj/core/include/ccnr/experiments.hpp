#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ccnr/criteria.hpp"
#include "ccnr/states.hpp"

namespace ccnr {

// Inclusive arithmetic grid lo, lo+step, ..., hi. Textual form "lo:hi:step".
struct Grid {
  double lo;
  double hi;
  double step;

  static Grid parse(const std::string& text);
  std::vector<double> points() const;
  std::string to_string() const;
};

struct SweepOptions {
  LogBase base = kDefaultLogBase;
  double tol = kDetectionTol;
  unsigned threads = 1;
};

struct SweepRow {
  double a;
  double p;
  double n;
  double log_n;
  double f;  // max(0, log_n)
  double ppt_min_eig;
  std::optional<double> concurrence;
  std::optional<double> e_f;
  // PPT detects entanglement but the realignment criterion does not.
  bool npt_undetected;
};

// Rows are ordered a-major, p-minor.
std::vector<SweepRow> sweep_horodecki_mix(const Grid& a_grid, const Grid& p_grid,
                                          const SweepOptions& options = {});
std::vector<SweepRow> sweep_two_by_two(const Grid& a_grid, const Grid& p_grid,
                                       const SweepOptions& options = {});

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
inline constexpr const char* kSweepCsvHeader = "a,p,n,log_n,f,ppt_min_eig,concurrence,e_f,npt_undetected";

struct PeakResult {
  double a;
  double f;
};

// Maximum of f(a, p = 1) for the Horodecki family over the a-grid.
PeakResult horodecki_peak(const Grid& a_grid, LogBase base = kDefaultLogBase);

struct ThresholdResult {
  double p;        // midpoint of the final bracket
  double lo;       // largest p known with N <= 1
  double hi;       // smallest p known with N > 1
  int iterations;
};

// Smallest p in [lo, hi] with N(horodecki_mix(a, p)) > 1, by bisection to
// width `tol`. N is sampled on the bracket first and must be non-decreasing
// in p, with N(lo) <= 1 < N(hi); otherwise PreconditionError.
ThresholdResult horodecki_p_threshold(double a, double lo = 0.99, double hi = 1.0,
                                      double tol = 1e-5);

struct Fig1Summary {
  PeakResult peak;
  double threshold_a;
  ThresholdResult threshold;
};

Fig1Summary summarize_fig1(const Grid& a_grid, double threshold_a = 0.236,
                           LogBase base = kDefaultLogBase);

struct Fig2Summary {
  std::size_t points = 0;
  std::size_t npt_points = 0;
  std::size_t npt_undetected = 0;
  // Points with p = 1/2 or a in {0, 1} where f > 0 (should be zero).
  std::size_t boundary_violations = 0;
  // Points with N - 1 > E_f + tol.
  std::size_t n_minus_one_above_e_f = 0;
  // Points with N - 1 > C + tol.
  std::size_t n_minus_one_above_concurrence = 0;
  std::size_t log_n_above_e_f = 0;
  std::size_t log_n_below_e_f = 0;
};

Fig2Summary summarize_fig2(const std::vector<SweepRow>& rows, double tol = kDetectionTol);

enum class SearchMode { Mixed, Separable };
const char* to_string(SearchMode mode);
SearchMode search_mode_from_string(const std::string& name);

struct SearchOptions {
  std::size_t m = 2;
  std::size_t n = 2;
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  SearchMode mode = SearchMode::Mixed;
  std::size_t max_terms = 20;  // separable mode
  LogBase base = kDefaultLogBase;
  double tol = kDetectionTol;
  bool keep_samples = false;
};

struct SearchSample {
  std::size_t index;
  double n;
  double log_n;
  double ppt_min_eig;
  bool realignment_detected;
  bool ppt_detected;
};

struct SearchStats {
  std::size_t count = 0;
  std::size_t realignment_only = 0;
  std::size_t ppt_only = 0;
  std::size_t both = 0;
  std::size_t neither = 0;
  double max_log_n = 0.0;
  // Sample indices that contradict a known result: any detection of a
  // separable sample, or a realignment-only detection where PPT is
  // necessary and sufficient (m n <= 6).
  std::vector<std::size_t> anomalies;
  double elapsed_seconds = 0.0;
  std::vector<SearchSample> samples;

  double rate(std::size_t k) const { return count == 0 ? 0.0 : static_cast<double>(k) / count; }
};

SearchStats random_search(const SearchOptions& options);
void write_search_csv(std::ostream& out, const std::vector<SearchSample>& samples);

struct CompareRow {
  double a;  // 0 for one-parameter families
  double p;  // phi for werner2
  double n;
  double log_n;
  double n_minus_one;
  double concurrence;
  double e_f;
  bool entangled;  // by PPT, exact for 2 x 2
};

struct CompareSummary {
  std::size_t points = 0;
  std::size_t entangled = 0;
  // Counts over entangled points.
  std::size_t log_n_ge_e_f = 0;
  std::size_t n_minus_one_le_e_f = 0;
  std::size_t log_n_above_e_f = 0;
  std::size_t log_n_below_e_f = 0;
  double max_abs_e_f_minus_n_minus_one = 0.0;
  double max_abs_concurrence_minus_n_minus_one = 0.0;
  // Non-entangled points where any of log N > 0, N - 1 > 0, E_f > 0.
  std::size_t boundary_nonzero = 0;
};

// family must be werner2 (phi taken from p_grid) or two_by_two_family.
std::vector<CompareRow> compare_measures(Family family, const Grid& a_grid, const Grid& p_grid,
                                         LogBase base = kDefaultLogBase);
CompareSummary summarize_compare(const std::vector<CompareRow>& rows, double tol = kDetectionTol);
void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows);

}  // namespace ccnr
