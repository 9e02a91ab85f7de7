// ccnr: entanglement checks and figure sweeps from the command line.
//
// Exit codes: 0 no entanglement detected (or command finished), 2 entanglement
// detected by `check`, 1 any error.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccnr/experiments.hpp"
#include "ccnr/matrix_io.hpp"

namespace {

using namespace ccnr;

constexpr int kExitClean = 0;
constexpr int kExitError = 1;
constexpr int kExitDetected = 2;

struct Common {
  double tol = kDetectionTol;
  std::string log_base = "2";
  unsigned threads = 1;
};

LogBase parse_base(const std::string& text) { return text == "e" ? LogBase::E : LogBase::Two; }

// CSV goes to --out when given, otherwise stdout. The summary then goes to
// whichever stream the CSV is not using.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw MatrixFileError(path + ": cannot open for writing");
    }
  }
  std::ostream& csv() { return file_ ? *file_ : std::cout; }
  std::ostream& summary() { return file_ ? std::cout : std::cerr; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

BipartiteState load_input(const std::vector<std::string>& tokens, bool normalize) {
  if (tokens.size() == 1 && (tokens[0].ends_with(".json") || std::filesystem::is_regular_file(tokens[0]))) {
    return load_state(tokens[0], {.normalize_trace = normalize});
  }
  return build(parse_state_spec(tokens));
}

void print_report_line(const char* name, bool detected) {
  std::cout << std::left << std::setw(22) << name << (detected ? "entangled" : "not detected")
            << '\n';
}

int run_check(const std::vector<std::string>& tokens, bool normalize, const Common& common) {
  const BipartiteState s = load_input(tokens, normalize);
  const LogBase base = parse_base(common.log_base);
  const CriterionOptions opts{common.tol, base};
  const auto primal = realignment_test(s, opts);
  const auto dual = dual_realignment_test(s, opts);
  const auto ppt = ppt_test(s, Subsystem::A, common.tol);
  const auto m = measures(s, base);

  std::cout << std::setprecision(12);
  std::cout << "dimensions: " << s.dim_a() << " x " << s.dim_b() << '\n';
  if (s.trace_normalized()) std::cout << "note: trace renormalized to 1\n";
  std::cout << "N: " << primal.scalar << '\n'
            << "log N (base " << to_string(base) << "): " << *primal.log_n << '\n'
            << "f: " << m.f << '\n'
            << "N - 1: " << m.n_minus_one << '\n'
            << "ppt min eigenvalue: " << ppt.scalar << '\n';
  if (m.concurrence) {
    std::cout << "concurrence: " << *m.concurrence << '\n' << "E_f: " << *m.e_f << '\n';
  }
  print_report_line("realignment:", primal.detected_entangled);
  print_report_line("dual realignment:", dual.detected_entangled);
  print_report_line("ppt:", ppt.detected_entangled);
  if (s.purity() >= 1.0 - common.tol) {
    const auto pure = pure_product_test(s, common.tol);
    std::cout << std::left << std::setw(22) << "pure state:"
              << (pure.detected_entangled ? "entangled" : "product") << '\n';
  }
  const bool detected = primal.detected_entangled || ppt.detected_entangled;
  std::cout << "verdict: " << (detected ? "entangled" : "no entanglement detected") << '\n';
  return detected ? kExitDetected : kExitClean;
}

int run_sweep_fig1(const std::string& grid_a, const std::string& grid_p, double threshold_a,
                   const std::string& out, const Common& common) {
  const Grid a = Grid::parse(grid_a);
  const Grid p = Grid::parse(grid_p);
  const SweepOptions opts{parse_base(common.log_base), common.tol, common.threads};
  const auto rows = sweep_horodecki_mix(a, p, opts);
  const auto summary = summarize_fig1(a, threshold_a, opts.base);
  Output output(out);
  write_sweep_csv(output.csv(), rows);
  auto& s = output.summary();
  s << std::setprecision(10) << "points: " << rows.size() << '\n'
    << "peak at p=1: a = " << summary.peak.a << ", f = " << summary.peak.f << '\n'
    << "threshold at a = " << summary.threshold_a << ": f > 0 for p > " << summary.threshold.p
    << " (bracket " << summary.threshold.lo << " .. " << summary.threshold.hi << ")\n";
  return kExitClean;
}

int run_sweep_fig2(const std::string& grid_a, const std::string& grid_p, const std::string& out,
                   const Common& common) {
  const SweepOptions opts{parse_base(common.log_base), common.tol, common.threads};
  const auto rows = sweep_two_by_two(Grid::parse(grid_a), Grid::parse(grid_p), opts);
  const auto s = summarize_fig2(rows, common.tol);
  Output output(out);
  write_sweep_csv(output.csv(), rows);
  output.summary() << "points: " << s.points << '\n'
                   << "npt points: " << s.npt_points << '\n'
                   << "npt with f = 0: " << s.npt_undetected << '\n'
                   << "f > 0 on p = 1/2 or a in {0,1}: " << s.boundary_violations << '\n'
                   << "N - 1 > E_f: " << s.n_minus_one_above_e_f << '\n'
                   << "N - 1 > concurrence: " << s.n_minus_one_above_concurrence << '\n'
                   << "log N > E_f: " << s.log_n_above_e_f << '\n'
                   << "log N < E_f: " << s.log_n_below_e_f << '\n';
  return kExitClean;
}

int run_search(SearchOptions opts, const std::string& mode, const std::string& out,
               const Common& common) {
  opts.mode = search_mode_from_string(mode);
  opts.base = parse_base(common.log_base);
  opts.tol = common.tol;
  opts.keep_samples = !out.empty();
  const auto st = random_search(opts);
  if (!out.empty()) {
    Output output(out);
    write_search_csv(output.csv(), st.samples);
  }
  std::cout << std::setprecision(6) << "samples: " << st.count << " (" << to_string(opts.mode)
            << ", " << opts.m << " x " << opts.n << ", seed " << opts.seed << ")\n"
            << "realignment only: " << st.realignment_only << " (" << st.rate(st.realignment_only)
            << ")\n"
            << "ppt only: " << st.ppt_only << " (" << st.rate(st.ppt_only) << ")\n"
            << "both: " << st.both << " (" << st.rate(st.both) << ")\n"
            << "neither: " << st.neither << " (" << st.rate(st.neither) << ")\n"
            << "max log N: " << st.max_log_n << '\n'
            << "anomalies: " << st.anomalies.size() << '\n'
            << "elapsed: " << st.elapsed_seconds << " s\n";
  for (std::size_t k : st.anomalies) std::cout << "  anomaly at sample " << k << '\n';
  return kExitClean;
}

int run_compare(const std::string& family, const std::string& grid_a, const std::string& grid_p,
                const std::string& out, const Common& common) {
  const Family f = family_from_string(family);
  const auto rows = compare_measures(f, Grid::parse(grid_a), Grid::parse(grid_p),
                                     parse_base(common.log_base));
  const auto s = summarize_compare(rows, common.tol);
  Output output(out);
  write_compare_csv(output.csv(), rows);
  const auto held = [&](std::size_t k) {
    return k == s.entangled ? "holds" : (k == 0 ? "fails everywhere" : "mixed");
  };
  output.summary() << std::setprecision(6) << "points: " << s.points
                   << ", entangled: " << s.entangled << '\n'
                   << "log N >= E_f: " << held(s.log_n_ge_e_f) << " (" << s.log_n_ge_e_f << ")\n"
                   << "N - 1 <= E_f: " << held(s.n_minus_one_le_e_f) << " ("
                   << s.n_minus_one_le_e_f << ")\n"
                   << "log N > E_f at " << s.log_n_above_e_f << ", log N < E_f at "
                   << s.log_n_below_e_f << '\n'
                   << "max |E_f - (N - 1)|: " << s.max_abs_e_f_minus_n_minus_one << '\n'
                   << "max |C - (N - 1)|: " << s.max_abs_concurrence_minus_n_minus_one << '\n'
                   << "nonzero measures on separable points: " << s.boundary_nonzero << '\n';
  return kExitClean;
}

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--tol", common.tol, "Detection tolerance")->capture_default_str();
  cmd->add_option("--log-base", common.log_base, "Logarithm base for log N")
      ->check(CLI::IsMember({"2", "e"}))
      ->capture_default_str();
}

constexpr const char* kSweepColumns =
    "CSV columns: a,p,n,log_n,f,ppt_min_eig,concurrence,e_f,npt_undetected\n"
    "f = max(0, log_n); concurrence and e_f are empty outside 2 x 2; npt_undetected is 1 where\n"
    "PPT detects entanglement and realignment does not.";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realignment (computable cross norm) entanglement criterion tools"};
  app.require_subcommand(1);
  Common common;

  auto* check = app.add_subcommand(
      "check", "Run every criterion on one state: a state spec such as `horodecki3x3 a=0.236` or "
               "a JSON matrix file. Exit 0 = not detected, 2 = detected, 1 = error.");
  std::vector<std::string> tokens;
  bool normalize = false;
  check->add_option("state", tokens, "State spec tokens or a .json matrix file")->required();
  check->add_flag("--normalize", normalize, "Rescale a file's trace to 1 when within 1e-6");
  add_common(check, common);

  std::string out;
  std::string grid_a;
  std::string grid_p;
  double threshold_a = 0.236;
  auto* fig1 = app.add_subcommand("sweep-fig1", "Sweep the Horodecki 3x3 mixture p rho_a + (1-p) I/9");
  fig1->footer(kSweepColumns);
  fig1->add_option("--grid-a", grid_a, "a grid lo:hi:step inside (0,1)")->default_str("0.001:0.999:0.001");
  fig1->add_option("--grid-p", grid_p, "p grid lo:hi:step inside [0,1]")->default_str("0.99:1:0.001");
  fig1->add_option("--threshold-a", threshold_a, "a at which the p-threshold is bisected")
      ->capture_default_str();
  fig1->add_option("--out", out, "CSV path (default stdout; summary then goes to stderr)");
  fig1->add_option("--threads", common.threads, "Worker threads")->capture_default_str();
  add_common(fig1, common);

  auto* fig2 = app.add_subcommand("sweep-fig2", "Sweep the 2x2 family with b = sqrt(1 - a^2)");
  fig2->footer(kSweepColumns);
  fig2->add_option("--grid-a", grid_a, "a grid inside [0,1]")->default_str("0:1:0.02");
  fig2->add_option("--grid-p", grid_p, "p grid inside [0,1]")->default_str("0:1:0.02");
  fig2->add_option("--out", out, "CSV path (default stdout; summary then goes to stderr)");
  fig2->add_option("--threads", common.threads, "Worker threads")->capture_default_str();
  add_common(fig2, common);

  SearchOptions search_opts;
  std::string mode = "mixed";
  auto* search = app.add_subcommand("search", "Detection statistics over seeded random states");
  search->footer("CSV columns (with --out): index,n,log_n,ppt_min_eig,realignment,ppt");
  search->add_option("--m", search_opts.m, "Dimension of A")->capture_default_str();
  search->add_option("--n", search_opts.n, "Dimension of B")->capture_default_str();
  search->add_option("--count", search_opts.count, "Number of samples")->capture_default_str();
  search->add_option("--seed", search_opts.seed, "RNG seed (std::mt19937_64)")->capture_default_str();
  search->add_option("--mode", mode, "mixed or separable")
      ->check(CLI::IsMember({"mixed", "separable"}))
      ->capture_default_str();
  search->add_option("--max-terms", search_opts.max_terms, "Most product terms in separable mode")
      ->capture_default_str();
  search->add_option("--out", out, "Optional per-sample CSV");
  add_common(search, common);

  std::string family = "werner2";
  auto* compare = app.add_subcommand("compare", "Compare log N, N - 1 and E_f on a 2x2 family");
  compare->footer("CSV columns: a,p,n,log_n,n_minus_one,concurrence,e_f,entangled\n"
                  "For werner2 the singlet weight phi is read from --grid-p and a is 0.");
  compare->add_option("--family", family, "werner2 or two_by_two_family")
      ->check(CLI::IsMember({"werner2", "two_by_two_family"}))
      ->capture_default_str();
  compare->add_option("--grid-a", grid_a, "a grid (two_by_two_family)")->default_str("0:1:0.02");
  compare->add_option("--grid-p", grid_p, "p grid, or phi for werner2")->default_str("0:1:0.02");
  compare->add_option("--out", out, "CSV path (default stdout; summary then goes to stderr)");
  add_common(compare, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  // default_str only affects help text; fill in the defaults here.
  const auto or_default = [](const std::string& v, const char* d) { return v.empty() ? std::string(d) : v; };

  try {
    if (*check) return run_check(tokens, normalize, common);
    if (*fig1) {
      return run_sweep_fig1(or_default(grid_a, "0.001:0.999:0.001"), or_default(grid_p, "0.99:1:0.001"),
                            threshold_a, out, common);
    }
    if (*fig2) {
      return run_sweep_fig2(or_default(grid_a, "0:1:0.02"), or_default(grid_p, "0:1:0.02"), out,
                            common);
    }
    if (*search) return run_search(search_opts, mode, out, common);
    if (*compare) {
      return run_compare(family, or_default(grid_a, "0:1:0.02"), or_default(grid_p, "0:1:0.02"),
                         out, common);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
