#pragma once

// Command-line front end.  Exit codes: 0 success / PASS, 1 solver failure /
// FAIL / INCONCLUSIVE, 2 usage or input error.

#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "condlen/io.hpp"

namespace condlen {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

struct CliConfig {
  std::string input;
  std::string point;
  std::string out;
  std::string csv;
  std::string trace;
  std::string algo = "rand";
  std::string strategy;
  std::string center = "zero";
  std::string experiment;
  int n = 0;
  std::vector<int> degrees;
  double step_constant = 0.0;  // 0 keeps the library default
  long max_steps = 0;
  double mu_cap = 0.0;
  std::uint64_t seed = 1;
  long trials = 1000;
  double sigma = 1.0;
  int m = 4;
  double p = 2.0;
  bool calibration = false;
  bool no_pair = false;
};

namespace detail {

inline DegreeProfile cli_profile(const CliConfig& c) {
  if (c.n < 1) throw UsageError("--n is required and must be >= 1");
  if (c.degrees.empty()) throw UsageError("--degrees is required");
  if (static_cast<int>(c.degrees.size()) != c.n)
    throw UsageError("--degrees lists " + std::to_string(c.degrees.size()) + " values but --n is " + std::to_string(c.n));
  for (int d : c.degrees)
    if (d < 1) throw UsageError("--degrees must be positive");
  return DegreeProfile(c.n, c.degrees);
}

inline TrackerConfig cli_tracker(const CliConfig& c, Strategy fallback) {
  TrackerConfig t;
  t.strategy = fallback;
  if (c.strategy == "mu2")
    t.strategy = Strategy::MuSquared;
  else if (c.strategy == "condlen")
    t.strategy = Strategy::ConditionLength;
  if (c.step_constant > 0.0) t.step_constant = c.step_constant;
  if (c.max_steps > 0) t.max_steps = c.max_steps;
  if (c.mu_cap > 0.0) t.mu_cap = c.mu_cap;
  return t;
}

inline PolySystem cli_system(const CliConfig& c) {
  if (c.input.empty()) throw UsageError("--input is required");
  return system_from_json(read_json_file(c.input));
}

inline void emit(const CliConfig& c, const Json& j, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (c.out.empty())
    out << text;
  else
    write_file_atomic(c.out, text);
}

inline int cmd_solve(const CliConfig& c, std::ostream& out) {
  const PolySystem f = cli_system(c);
  const TrackerConfig cfg = cli_tracker(c, Strategy::ConditionLength);
  TrackerConfig run_cfg = cfg;
  run_cfg.record_trace = !c.trace.empty();
  SolveReport rep = c.algo == "det" ? solve_deterministic(f, run_cfg) : solve_randomized(f, run_cfg, c.seed);
  if (!c.trace.empty()) {
    const PolySystem target = normalized(f);
    const double alpha = spherical_distance(rep.start.system, target);
    for (auto& row : rep.track.trace) row.t = segment_to_arc(rep.start.system, f, std::min(row.s, alpha));
    write_file_atomic(c.trace, to_csv(rep.track.trace));
  }
  Json j = to_json(rep);
  j["strategy"] = to_string(cfg.strategy);
  j["step_constant"] = cfg.step_constant;
  emit(c, j, out);
  return rep.track.status == TrackStatus::Success ? kExitOk : kExitFailure;
}

inline int cmd_all_roots(const CliConfig& c, std::ostream& out) {
  const PolySystem f = cli_system(c);
  AllZerosOptions o;
  o.tracker = cli_tracker(c, Strategy::MuSquared);
  const AllZerosResult r = all_zeros(f, o);
  Json j = to_json(r);
  j["input_hash"] = system_hash(f);
  j["bezout"] = f.profile().bezout();
  emit(c, j, out);
  return r.complete ? kExitOk : kExitFailure;
}

inline int cmd_sample_pair(const CliConfig& c, std::ostream& out) {
  CounterRng rng(c.seed, 0);
  const InitialPair pair = bp_initial_pair(cli_profile(c), rng);
  Json j = to_json(pair);
  j["seed"] = c.seed;
  emit(c, j, out);
  return kExitOk;
}

inline int cmd_condition(const CliConfig& c, std::ostream& out) {
  const PolySystem f = cli_system(c);
  if (c.point.empty()) throw UsageError("--point is required");
  const ProjPoint x = point_from_json(read_json_file(c.point));
  if (x.num_vars() != f.profile().num_vars()) throw UsageError("--point has the wrong number of coordinates");
  const ConditionEstimate e = condition(f, x);
  Json j = {{"mu", number(e.mu)},
            {"mu_frobenius", number(e.mu_frobenius)},
            {"singular", e.singular},
            {"residual", evaluate(f, x.rep()).norm()},
            {"weyl_norm", weyl_norm(f)}};
  emit(c, j, out);
  return kExitOk;
}

inline std::optional<PolySystem> cli_center(const CliConfig& c, const DegreeProfile& p) {
  if (c.center == "zero") return std::nullopt;
  if (c.center == "gbar") return std::sqrt(static_cast<double>(p.size())) * gbar(p).system;
  PolySystem f = system_from_json(read_json_file(c.center));
  if (!(f.profile() == p)) throw UsageError("--center system does not match --n/--degrees");
  return f;
}

inline int cmd_experiment(const CliConfig& c, std::ostream& out) {
  const std::string& e = c.experiment;
  ExperimentReport r;
  if (e == "sphere-muF") {
    r = exp_sphere_muF(cli_profile(c), c.trials, c.seed);
  } else if (e == "gaussian-muF") {
    const DegreeProfile p = cli_profile(c);
    r = exp_gaussian_muF(p, cli_center(c, p), c.sigma, c.trials, c.seed);
  } else if (e == "bp-muF") {
    r = exp_bp_muF(cli_profile(c), c.trials, c.seed);
  } else if (e == "matrix-moment") {
    if (c.n < 1) throw UsageError("--n is required and must be >= 1");
    CMatrix center;
    if (c.center == "gbar" || c.center == "identity")
      center = CMatrix::Identity(c.n, c.n);
    else if (c.center != "zero")
      throw UsageError("matrix-moment: --center must be zero or identity");
    r = exp_matrix_moment(c.n, center, c.sigma, c.trials, c.seed);
  } else if (e == "tangent-average") {
    if (c.input.empty()) {
      const DegreeProfile p = cli_profile(c);
      r = exp_tangent_average(ubar(p), ubar_zeros(p).front(), c.trials, c.seed);
    } else {
      if (c.point.empty()) throw UsageError("--point is required with --input");
      r = exp_tangent_average(cli_system(c), point_from_json(read_json_file(c.point)), c.trials, c.seed);
    }
  } else if (e == "polar-moment") {
    r = exp_polar_moment(c.m, c.p, c.trials, c.seed);
  } else if (e == "sphere-lemma") {
    r = exp_sphere_lemma(cli_profile(c), c.trials, c.seed,
                         c.calibration ? SphereLemmaMode::Calibration : SphereLemmaMode::ConditionLength);
  } else if (e == "randomized-steps") {
    r = exp_randomized_steps(cli_profile(c), c.trials, cli_tracker(c, Strategy::ConditionLength), c.seed, !c.no_pair);
  } else {
    throw UsageError("unknown experiment '" + e + "'");
  }
  if (!c.csv.empty()) write_file_atomic(c.csv, to_csv(r.table));
  emit(c, to_json(r), out);
  return r.verdict == Verdict::Pass ? kExitOk : kExitFailure;
}

}  // namespace detail

inline const char* const kExperimentNames =
    "sphere-muF, gaussian-muF, bp-muF, matrix-moment, tangent-average, polar-moment, sphere-lemma, randomized-steps";

/// Parses argv and dispatches to a subcommand; returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Homotopy continuation with condition-length step control, and Monte Carlo checks of condition "
               "number identities.\nSOLVER_THREADS caps the number of worker threads."};
  app.require_subcommand(1);
  CliConfig c;

  auto add_tracker = [&c](CLI::App* s) {
    s->add_option("--strategy", c.strategy, "Step rule: condlen (c / (D^1.5 mu sqrt(1+|zeta_dot|^2))) or mu2 (c / (D^1.5 mu^2))")
        ->check(CLI::IsMember({"mu2", "condlen"}));
    s->add_option("--step-constant", c.step_constant, "Step constant c (default 0.04)")->check(CLI::PositiveNumber);
    s->add_option("--max-steps", c.max_steps, "Step limit per path (default 1000000)")->check(CLI::PositiveNumber);
    s->add_option("--mu-cap", c.mu_cap, "Abort a path when mu exceeds this (default 1e12)")->check(CLI::PositiveNumber);
  };
  auto add_profile = [&c](CLI::App* s) {
    s->add_option("--n", c.n, "Number of equations")->check(CLI::PositiveNumber);
    s->add_option("--degrees", c.degrees, "Degrees d_1,...,d_n")->delimiter(',')->check(CLI::PositiveNumber);
  };

  auto* solve = app.add_subcommand("solve", "Find one zero of a system by homotopy continuation");
  solve->add_option("--input", c.input, "System JSON file")->required();
  solve->add_option("--algo", c.algo, "rand: random initial pair; det: fixed start system")
      ->check(CLI::IsMember({"rand", "det"}));
  solve->add_option("--seed", c.seed, "Seed of the random initial pair (rand only)");
  solve->add_option("--out", c.out, "Report JSON file (default: stdout)");
  solve->add_option("--trace", c.trace, "Per-step CSV: s, t, mu, mu_F, ds, residual");
  add_tracker(solve);

  auto* roots = app.add_subcommand("all-roots", "Track all Bezout-many paths from the total-degree start system");
  roots->add_option("--input", c.input, "System JSON file")->required();
  roots->add_option("--out", c.out, "Zeros JSON file (default: stdout)");
  add_tracker(roots);

  auto* pair = app.add_subcommand("sample-pair", "Draw a random initial pair (system, zero)");
  add_profile(pair);
  pair->add_option("--seed", c.seed, "Seed");
  pair->add_option("--out", c.out, "Output JSON file (default: stdout)");

  auto* cond = app.add_subcommand("condition", "Print mu and mu_F of a (system, point) pair");
  cond->add_option("--input", c.input, "System JSON file")->required();
  cond->add_option("--point", c.point, "Point JSON file: [[re, im], ...]")->required();
  cond->add_option("--out", c.out, "Output JSON file (default: stdout)");

  auto* exp = app.add_subcommand("experiment", "Run a seeded Monte Carlo experiment");
  exp->add_option("name", c.experiment, std::string("One of: ") + kExperimentNames)->required();
  add_profile(exp);
  exp->add_option("--trials", c.trials, "Number of trials (default 1000)")->check(CLI::PositiveNumber);
  exp->add_option("--seed", c.seed, "Master seed; trial i uses stream i (default 1)");
  exp->add_option("--sigma", c.sigma, "Gaussian standard deviation (default 1)")->check(CLI::PositiveNumber);
  exp->add_option("--center", c.center,
                  "Gaussian center: zero, gbar (sqrt(N) times the start system gbar; identity for matrix-moment), "
                  "or a system JSON file");
  exp->add_option("--m", c.m, "polar-moment: real dimension (default 4)")->check(CLI::PositiveNumber);
  exp->add_option("--p", c.p, "polar-moment: exponent, p > -m (default 2)");
  exp->add_option("--input", c.input, "tangent-average: system JSON (default: Ubar)");
  exp->add_option("--point", c.point, "tangent-average: zero of the system (default: (1,...,1))");
  exp->add_flag("--calibration", c.calibration, "sphere-lemma: use phi = ||fdot|| instead of the condition integrand");
  exp->add_flag("--no-pair", c.no_pair, "randomized-steps: skip the paired mu2 runs");
  exp->add_option("--out", c.out, "Report JSON file (default: stdout)");
  exp->add_option("--csv", c.csv, "Per-trial CSV file");
  add_tracker(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return detail::cmd_solve(c, out);
    if (roots->parsed()) return detail::cmd_all_roots(c, out);
    if (pair->parsed()) return detail::cmd_sample_pair(c, out);
    if (cond->parsed()) return detail::cmd_condition(c, out);
    if (exp->parsed()) return detail::cmd_experiment(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace condlen
