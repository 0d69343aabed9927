#pragma once

// Seeded Monte Carlo checks of the condition-number identities and bounds.
//
// Trial i of an experiment with master seed S draws exclusively from
// CounterRng(S, i).  Per-trial statistics land in row i of a TrialTable, and
// every estimator reads the table in trial order, so reports are
// bit-identical for any thread count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "condlen/solvers.hpp"

namespace condlen {

enum class Relation { Equals, AtMost };
enum class Verdict { Pass, Fail, Inconclusive };

inline std::string_view to_string(Relation r) { return r == Relation::Equals ? "EQUALS" : "AT_MOST"; }

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "UNKNOWN";
}

inline constexpr int kBuckets = 16;
inline constexpr double kMaxDiscardFraction = 0.01;

/// One row of named doubles per trial; discarded trials keep their slot.
struct TrialTable {
  std::vector<std::string> columns;
  std::vector<double> values;  // row-major, trials x columns
  std::vector<char> valid;

  TrialTable() = default;
  TrialTable(std::vector<std::string> cols, std::size_t trials)
      : columns(std::move(cols)),
        values(trials * columns.size(), std::numeric_limits<double>::quiet_NaN()),
        valid(trials, 0) {}

  std::size_t trials() const { return valid.size(); }
  std::size_t width() const { return columns.size(); }
  double at(std::size_t row, std::size_t col) const { return values[row * width() + col]; }
  double* row(std::size_t r) { return values.data() + r * width(); }
  std::size_t used() const { return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), 1)); }
  std::size_t column(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw InvalidArgument("trial table: no column " + std::string(name));
    return static_cast<std::size_t>(it - columns.begin());
  }
};

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::vector<double> bucket_values;
};

namespace detail {

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  if (k == 0) return std::numeric_limits<double>::quiet_NaN();
  return k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

inline double spread(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

// Sums of a column per bucket (bucket = trial index mod kBuckets).
inline void bucket_sums(const TrialTable& t, std::size_t col, std::vector<double>& sum, std::vector<double>& cnt) {
  sum.assign(kBuckets, 0.0);
  cnt.assign(kBuckets, 0.0);
  for (std::size_t i = 0; i < t.trials(); ++i) {
    if (!t.valid[i]) continue;
    sum[i % kBuckets] += t.at(i, col);
    cnt[i % kBuckets] += 1.0;
  }
}

}  // namespace detail

/// Median over 16 buckets of the bucket means of column `col`.  The standard
/// error is the dispersion of the bucket means divided by sqrt(16).
inline Estimate median_of_means(const TrialTable& t, std::size_t col) {
  std::vector<double> sum, cnt;
  detail::bucket_sums(t, col, sum, cnt);
  Estimate e;
  for (int b = 0; b < kBuckets; ++b)
    if (cnt[static_cast<std::size_t>(b)] > 0) e.bucket_values.push_back(sum[static_cast<std::size_t>(b)] / cnt[static_cast<std::size_t>(b)]);
  e.value = detail::median(e.bucket_values);
  e.standard_error = detail::spread(e.bucket_values);
  return e;
}

inline Estimate plain_mean(const TrialTable& t, std::size_t col) {
  std::vector<double> sum, cnt;
  detail::bucket_sums(t, col, sum, cnt);
  Estimate e;
  double s = 0.0, c = 0.0;
  for (int b = 0; b < kBuckets; ++b) {
    s += sum[static_cast<std::size_t>(b)];
    c += cnt[static_cast<std::size_t>(b)];
    if (cnt[static_cast<std::size_t>(b)] > 0) e.bucket_values.push_back(sum[static_cast<std::size_t>(b)] / cnt[static_cast<std::size_t>(b)]);
  }
  e.value = c > 0 ? s / c : std::numeric_limits<double>::quiet_NaN();
  e.standard_error = detail::spread(e.bucket_values);
  return e;
}

/// mean(num) / mean(den); bucket values are the per-bucket ratios.
inline Estimate ratio_of_means(const TrialTable& t, std::size_t num, std::size_t den) {
  std::vector<double> sn, cn, sd, cd;
  detail::bucket_sums(t, num, sn, cn);
  detail::bucket_sums(t, den, sd, cd);
  Estimate e;
  double a = 0.0, b = 0.0;
  for (int k = 0; k < kBuckets; ++k) {
    const auto u = static_cast<std::size_t>(k);
    a += sn[u];
    b += sd[u];
    if (sd[u] != 0.0) e.bucket_values.push_back(sn[u] / sd[u]);
  }
  e.value = a / b;
  e.standard_error = detail::spread(e.bucket_values);
  return e;
}

struct ExperimentReport {
  std::string name;
  std::string identity;  // the relation under test, in words
  std::optional<DegreeProfile> profile;
  std::map<std::string, double> parameters;
  long trials = 0;
  long used = 0;
  long discarded = 0;
  std::uint64_t seed = 0;
  std::string estimator;
  double estimate = 0.0;
  double standard_error = 0.0;
  double target = 0.0;
  Relation relation = Relation::Equals;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Fail;
  int buckets = kBuckets;
  std::vector<double> bucket_values;
  std::map<std::string, double> extra;
  TrialTable table;
  double wall_seconds = 0.0;
};

inline Verdict judge(double estimate, double target, Relation rel, double tol, long trials, long discarded) {
  if (trials > 0 && static_cast<double>(discarded) > kMaxDiscardFraction * static_cast<double>(trials))
    return Verdict::Inconclusive;
  if (!std::isfinite(estimate)) return Verdict::Fail;
  const bool ok = rel == Relation::Equals ? std::abs(estimate - target) <= tol * target : estimate <= target * (1.0 + tol);
  return ok ? Verdict::Pass : Verdict::Fail;
}

namespace detail {

inline void check_trials(long trials) {
  if (trials < 1) throw InvalidArgument("experiment: trials must be >= 1");
}

inline void check_small(const DegreeProfile& p, std::int64_t limit) {
  if (p.bezout() > limit)
    throw InvalidArgument("experiment: Bezout number " + std::to_string(p.bezout()) + " exceeds " +
                          std::to_string(limit));
}

// Fills row i via fn(rng, row) for each trial; fn returns false to discard.
template <class Fn>
TrialTable run_trials(std::vector<std::string> columns, long trials, std::uint64_t seed, Fn&& fn) {
  TrialTable t(std::move(columns), static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
    CounterRng rng(seed, i);
    bool ok = false;
    try {
      ok = fn(rng, t.row(i));
    } catch (const Error&) {
      ok = false;
    }
    t.valid[i] = ok ? 1 : 0;
  });
  return t;
}

inline void finish(ExperimentReport& r, TrialTable table, const Estimate& e, std::chrono::steady_clock::time_point t0) {
  r.used = static_cast<long>(table.used());
  r.discarded = r.trials - r.used;
  r.estimate = e.value;
  r.standard_error = e.standard_error;
  r.bucket_values = e.bucket_values;
  r.table = std::move(table);
  r.verdict = judge(r.estimate, r.target, r.relation, r.tolerance, r.trials, r.discarded);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Settings for the all-roots ground truth inside experiments.  Completeness
/// (Bezout-many distinct certified zeros) is checked on every trial, so a
/// coarse step is safe: a trial that loses a path is retried finer or
/// discarded, never miscounted.
inline AllZerosOptions ground_truth_options() {
  AllZerosOptions o;
  o.tracker.strategy = Strategy::ConditionLength;
  o.tracker.step_constant = 0.1;
  o.retries = 3;
  return o;
}

// mu_F,av^2 and mu_av^2 from a complete zero list, or nullopt.
inline std::optional<MuAverages> fiber_averages(const PolySystem& f) {
  const AllZerosResult z = all_zeros(f, ground_truth_options());
  if (!z.complete) return std::nullopt;
  const MuAverages m = mu_averages(f, z.zeros);
  if (!std::isfinite(m.mu_f_av_sq)) return std::nullopt;
  return m;
}

/// E over the unit sphere of mu_F,av^2 against (N - 1) n.
inline ExperimentReport exp_sphere_muF(const DegreeProfile& profile, long trials, std::uint64_t seed,
                                       double tolerance = 0.10) {
  detail::check_trials(trials);
  detail::check_small(profile, 64);
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.name = "sphere-muF";
  r.identity = "mean over the unit sphere of the fiber average of mu_F^2 equals (N - 1) n";
  r.profile = profile;
  r.trials = trials;
  r.seed = seed;
  r.estimator = "median-of-means";
  r.target = static_cast<double>(profile.size() - 1) * profile.n();
  r.relation = Relation::Equals;
  r.tolerance = tolerance;
  TrialTable t = detail::run_trials({"mu_f_av_sq", "mu_av_sq"}, trials, seed, [&](CounterRng& rng, double* row) {
    const PolySystem f = uniform_sphere_system(profile, rng);
    const auto m = fiber_averages(f);
    if (!m) return false;
    row[0] = m->mu_f_av_sq;
    row[1] = m->mu_av_sq;
    return true;
  });
  const Estimate e = median_of_means(t, 0);
  r.extra["plain_mean"] = plain_mean(t, 0).value;
  detail::finish(r, std::move(t), e, t0);
  return r;
}

/// E over N(center, sigma^2 Id) of mu_F,av^2 / ||f||^2 against n / sigma^2:
/// equality for a zero center, upper bound otherwise.
inline ExperimentReport exp_gaussian_muF(const DegreeProfile& profile, const std::optional<PolySystem>& center,
                                         double sigma, long trials, std::uint64_t seed, double tolerance = 0.10) {
  detail::check_trials(trials);
  detail::check_small(profile, 64);
  if (!(sigma > 0.0)) throw InvalidArgument("experiment: sigma must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const bool centered = !center || weyl_norm(*center) == 0.0;
  ExperimentReport r;
  r.name = "gaussian-muF";
  r.identity = centered ? "Gaussian mean of mu_F,av^2 / ||f||^2 equals n / sigma^2"
                        : "Gaussian mean of mu_F,av^2 / ||f||^2 is at most n / sigma^2";
  r.profile = profile;
  r.parameters["sigma"] = sigma;
  r.parameters["center_norm"] = center ? weyl_norm(*center) : 0.0;
  r.trials = trials;
  r.seed = seed;
  r.estimator = "median-of-means";
  r.target = profile.n() / (sigma * sigma);
  r.relation = centered ? Relation::Equals : Relation::AtMost;
  r.tolerance = tolerance;
  TrialTable t = detail::run_trials({"ratio", "norm_sq"}, trials, seed, [&](CounterRng& rng, double* row) {
    const PolySystem f = gaussian_system(profile, center, sigma, rng);
    const auto m = fiber_averages(f);
    if (!m) return false;
    const double nrm = weyl_norm(f);
    row[0] = m->mu_f_av_sq / (nrm * nrm);
    row[1] = nrm * nrm;
    return true;
  });
  const Estimate e = median_of_means(t, 0);
  r.extra["plain_mean"] = plain_mean(t, 0).value;
  detail::finish(r, std::move(t), e, t0);
  return r;
}

/// E[mu_F^2(f0, zeta0) / ||f0||^2] for the random initial pair against n, the
/// value for a Gaussian system with a uniformly chosen zero.
inline ExperimentReport exp_bp_muF(const DegreeProfile& profile, long trials, std::uint64_t seed,
                                   double tolerance = 0.05) {
  detail::check_trials(trials);
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.name = "bp-muF";
  r.identity = "initial-pair mean of mu_F^2 / ||f0||^2 equals n";
  r.profile = profile;
  r.trials = trials;
  r.seed = seed;
  r.estimator = "median-of-means";
  r.target = profile.n();
  r.relation = Relation::Equals;
  r.tolerance = tolerance;
  TrialTable t = detail::run_trials({"ratio", "residual"}, trials, seed, [&](CounterRng& rng, double* row) {
    const InitialPair pair = bp_initial_pair(profile, rng);
    const double nrm = weyl_norm(pair.system);
    const double mf = mu_frobenius(pair.system, pair.zero);
    if (!std::isfinite(mf)) return false;
    row[0] = mf * mf / (nrm * nrm);
    row[1] = pair.residual / nrm;
    return true;
  });
  const Estimate e = median_of_means(t, 0);
  r.extra["plain_mean"] = plain_mean(t, 0).value;
  double worst = 0.0;
  for (std::size_t i = 0; i < t.trials(); ++i)
    if (t.valid[i]) worst = std::max(worst, t.at(i, 1));
  r.extra["max_relative_residual"] = worst;
  detail::finish(r, std::move(t), e, t0);
  return r;
}

/// E||A^{-1}||_F^2 |det A|^2 / E|det A|^2 for A ~ N(center, sigma^2 Id) on
/// n x n complex matrices, against n / sigma^2.  The numerator is evaluated
/// as ||adj A||_F^2 = sum_i prod_{j != i} s_j^2 from the singular values, so
/// it stays finite for singular draws.
inline ExperimentReport exp_matrix_moment(int n, const CMatrix& center, double sigma, long trials,
                                          std::uint64_t seed, double tolerance = 0.02) {
  detail::check_trials(trials);
  if (n < 1) throw InvalidArgument("experiment: n must be >= 1");
  if (!(sigma > 0.0)) throw InvalidArgument("experiment: sigma must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const bool centered = center.size() == 0 || center.norm() == 0.0;
  ExperimentReport r;
  r.name = "matrix-moment";
  r.identity = centered ? "E ||A^-1||_F^2 |det A|^2 equals (n / sigma^2) E |det A|^2"
                        : "E ||A^-1||_F^2 |det A|^2 is at most (n / sigma^2) E |det A|^2";
  r.parameters["n"] = n;
  r.parameters["sigma"] = sigma;
  r.parameters["center_norm"] = centered ? 0.0 : center.norm();
  r.trials = trials;
  r.seed = seed;
  r.estimator = "ratio-of-means";
  r.target = n / (sigma * sigma);
  r.relation = centered ? Relation::Equals : Relation::AtMost;
  r.tolerance = tolerance;
  TrialTable t = detail::run_trials({"adjugate_sq", "det_sq"}, trials, seed, [&](CounterRng& rng, double* row) {
    const CMatrix a = gaussian_matrix(n, n, center, sigma, rng);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<CMatrix>(a).singularValues();
    double det = 1.0, adj = 0.0;
    for (int i = 0; i < n; ++i) {
      det *= sv[i] * sv[i];
      double p = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) p *= sv[j] * sv[j];
      adj += p;
    }
    row[0] = adj;
    row[1] = det;
    return true;
  });
  const Estimate e = ratio_of_means(t, 0, 1);
  detail::finish(r, std::move(t), e, t0);
  return r;
}

/// Mean of ||zeta_dot||^2 over uniform unit tangent directions at f / ||f||
/// against ||M^{-1}||_F^2 / (N - 1/2), M the restricted Jacobian at zeta.
inline ExperimentReport exp_tangent_average(const PolySystem& f, const ProjPoint& zeta, long trials,
                                            std::uint64_t seed, double tolerance = 0.02) {
  detail::check_trials(trials);
  const auto t0 = std::chrono::steady_clock::now();
  const PolySystem g = normalized(f);
  const LocalModel model(g, zeta);
  if (model.singular()) throw SingularPair();
  const double big_n = static_cast<double>(g.profile().size());
  const double inv_f = model.inverse_frobenius();
  ExperimentReport r;
  r.name = "tangent-average";
  r.identity = "mean of ||zeta_dot||^2 over unit tangent directions equals ||M^-1||_F^2 / (N - 1/2)";
  r.profile = g.profile();
  r.trials = trials;
  r.seed = seed;
  r.estimator = "median-of-means";
  r.target = inv_f * inv_f / (big_n - 0.5);
  r.relation = Relation::Equals;
  r.tolerance = tolerance;
  double linearity = 0.0;
  TrialTable t = detail::run_trials({"zeta_dot_sq"}, trials, seed, [&](CounterRng& rng, double* row) {
    const PolySystem fdot = unit_tangent_system(g, rng);
    const CVector zd = detail::zeta_dot_from(model, fdot, zeta);
    row[0] = zd.squaredNorm();
    return true;
  });
  {
    CounterRng rng(seed, static_cast<std::uint64_t>(trials));
    const PolySystem fdot = unit_tangent_system(g, rng);
    const CVector a = detail::zeta_dot_from(model, fdot, zeta);
    const CVector b = detail::zeta_dot_from(model, 2.5 * fdot, zeta);
    linearity = (b - 2.5 * a).norm() / std::max(1e-300, b.norm());
  }
  r.extra["linearity_error"] = linearity;
  const Estimate e = median_of_means(t, 0);
  detail::finish(r, std::move(t), e, t0);
  return r;
}

/// E||x||^p for x standard Gaussian on R^m (variance 1/2 per coordinate, the
/// real picture of a standard complex Gaussian) against
/// Gamma((m + p)/2) / Gamma(m/2); the sphere average of ||u||^p is 1.
inline ExperimentReport exp_polar_moment(int m, double p, long trials, std::uint64_t seed, double tolerance = 0.01) {
  detail::check_trials(trials);
  if (m < 1) throw InvalidArgument("experiment: m must be >= 1");
  if (!(p > -m)) throw InvalidArgument("experiment: need p > -m");
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.name = "polar-moment";
  r.identity = "Gaussian mean of ||x||^p equals Gamma((m+p)/2) / Gamma(m/2) times the sphere mean";
  r.parameters["m"] = m;
  r.parameters["p"] = p;
  r.trials = trials;
  r.seed = seed;
  r.estimator = "median-of-means";
  r.target = std::exp(std::lgamma((m + p) / 2.0) - std::lgamma(m / 2.0));
  r.relation = Relation::Equals;
  r.tolerance = tolerance;
  TrialTable t = detail::run_trials({"norm_pow"}, trials, seed, [&](CounterRng& rng, double* row) {
    double s = 0.0;
    for (int k = 0; k < m; ++k) {
      const double x = rng.normal() * std::numbers::sqrt2 / 2.0;
      s += x * x;
    }
    row[0] = std::pow(s, p / 2.0);
    return true;
  });
  const Estimate e = median_of_means(t, 0);
  detail::finish(r, std::move(t), e, t0);
  return r;
}

inline constexpr int kSphereLemmaNodes = 64;

enum class SphereLemmaMode {
  ConditionLength,  // phi = fiber mean of mu * sqrt(||fdot||^2 + ||zeta_dot||^2)
  Calibration,      // phi = ||fdot||: both sides are exact, ratio pi/2
};

namespace detail {

// Fiber mean of the condition-length integrand at (h, zeros) along unit fdot.
inline double fiber_integrand(const PolySystem& h, const std::vector<ProjPoint>& zeros, const PolySystem& fdot) {
  double s = 0.0;
  for (const auto& z : zeros) s += condition_length_integrand(h, z, fdot);
  return s / static_cast<double>(zeros.size());
}

}  // namespace detail

/// Averaged path integral of phi along great circles between independent
/// uniform endpoints, against (pi/2) times the mean of phi at a uniform
/// (f, fdot).  The path integral uses 64 stratified nodes with a random shift
/// (an unbiased quadrature), and the zeros are carried from node to node by
/// the tracker.
inline ExperimentReport exp_sphere_lemma(const DegreeProfile& profile, long trials, std::uint64_t seed,
                                         SphereLemmaMode mode = SphereLemmaMode::ConditionLength,
                                         double tolerance = 0.05) {
  detail::check_trials(trials);
  detail::check_small(profile, 16);
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.name = "sphere-lemma";
  r.identity = "mean path integral of phi between uniform endpoints equals (pi/2) times the mean of phi";
  r.profile = profile;
  r.parameters["nodes"] = kSphereLemmaNodes;
  r.parameters["calibration"] = mode == SphereLemmaMode::Calibration ? 1.0 : 0.0;
  r.trials = trials;
  r.seed = seed;
  r.estimator = "ratio-of-means";
  r.target = std::numbers::pi / 2.0;
  r.relation = Relation::Equals;
  r.tolerance = tolerance;
  TrialTable t = detail::run_trials({"path_integral", "point_value", "angle"}, trials, seed, [&](CounterRng& rng, double* row) {
    const PolySystem f0 = uniform_sphere_system(profile, rng);
    const PolySystem f1 = uniform_sphere_system(profile, rng);
    const GreatCirclePath path(f0, f1);
    const double alpha = path.angle();
    const double shift = rng.uniform();
    std::vector<double> nodes(kSphereLemmaNodes);
    for (int k = 0; k < kSphereLemmaNodes; ++k) nodes[static_cast<std::size_t>(k)] = alpha * (k + shift) / kSphereLemmaNodes;
    const double weight = alpha / kSphereLemmaNodes;

    const PolySystem f = uniform_sphere_system(profile, rng);
    const PolySystem fdot = unit_tangent_system(f, rng);
    row[2] = alpha;
    if (mode == SphereLemmaMode::Calibration) {
      double left = 0.0;
      for (double s : nodes) left += weight * weyl_norm(path.velocity_at(s));
      row[0] = left;
      row[1] = weyl_norm(fdot);
      return true;
    }

    const AllZerosResult start = all_zeros(f0, ground_truth_options());
    if (!start.complete) return false;
    std::vector<std::vector<ProjPoint>> at_node(nodes.size());
    TrackerConfig cfg;
    cfg.certify = false;
    for (const auto& z : start.zeros) {
      const TrackResult tr = track(path, z, cfg, nodes);
      if (tr.status != TrackStatus::Success || tr.checkpoints.size() != nodes.size()) return false;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        const PolySystem h = path.point_at(nodes[k]);
        at_node[k].push_back(newton_step(h, newton_step(h, tr.checkpoints[k])));
      }
    }
    double left = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      left += weight * detail::fiber_integrand(path.point_at(nodes[k]), at_node[k], path.velocity_at(nodes[k]));

    const AllZerosResult here = all_zeros(f, ground_truth_options());
    if (!here.complete) return false;
    row[0] = left;
    row[1] = detail::fiber_integrand(f, here.zeros, fdot);
    return std::isfinite(row[0]) && std::isfinite(row[1]);
  });
  const Estimate e = ratio_of_means(t, 0, 1);
  r.extra["mean_angle"] = plain_mean(t, 2).value;
  detail::finish(r, std::move(t), e, t0);
  return r;
}

/// Mean step count K of the randomized solver on Gaussian targets against
/// 400 D^{3/2} n sqrt(N).  Each trial also runs the mu^2 step rule on the
/// same target and the same initial pair when `paired` is set.
inline ExperimentReport exp_randomized_steps(const DegreeProfile& profile, long trials, const TrackerConfig& config,
                                             std::uint64_t seed, bool paired = true) {
  detail::check_trials(trials);
  detail::check_small(profile, 64);
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.name = "randomized-steps";
  r.identity = "mean step count of the randomized solver is at most 400 D^{3/2} n sqrt(N)";
  r.profile = profile;
  r.parameters["step_constant"] = config.step_constant;
  r.trials = trials;
  r.seed = seed;
  r.estimator = "mean";
  r.target = step_count_bound(profile);
  r.relation = Relation::AtMost;
  r.tolerance = 0.0;
  TrackerConfig cl = config;
  cl.strategy = Strategy::ConditionLength;
  TrackerConfig mu2 = config;
  mu2.strategy = Strategy::MuSquared;
  TrialTable t = detail::run_trials({"k_condlen", "k_mu2", "condition_length", "mu2_success"}, trials, seed,
                                    [&](CounterRng& rng, double* row) {
    const PolySystem f = gaussian_system(profile, std::nullopt, 1.0, rng);
    const std::uint64_t solver_seed = rng.next_u64();
    const SolveReport a = solve_randomized(f, cl, solver_seed);
    row[0] = static_cast<double>(a.track.steps);
    row[2] = a.track.condition_length;
    if (paired) {
      bool ok = false;
      try {
        const SolveReport b = solve_randomized(f, mu2, solver_seed);
        row[1] = static_cast<double>(b.track.steps);
        ok = b.track.status == TrackStatus::Success;
      } catch (const Error&) {
      }
      row[3] = ok ? 1.0 : 0.0;
    }
    return a.track.status == TrackStatus::Success;
  });
  const Estimate e = plain_mean(t, 0);
  r.extra["median_of_means_k"] = median_of_means(t, 0).value;
  if (paired) {
    double k1 = 0.0, k2 = 0.0, c = 0.0, ok2 = 0.0;
    for (std::size_t i = 0; i < t.trials(); ++i) {
      ok2 += t.at(i, 3) == 1.0;
      if (!t.valid[i] || t.at(i, 3) != 1.0) continue;
      k1 += t.at(i, 0);
      k2 += t.at(i, 1);
      c += 1.0;
    }
    r.extra["paired_trials"] = c;
    r.extra["paired_mean_k_condlen"] = c > 0 ? k1 / c : 0.0;
    r.extra["paired_mean_k_mu2"] = c > 0 ? k2 / c : 0.0;
    r.extra["mu2_success_rate"] = ok2 / static_cast<double>(trials);
  }
  detail::finish(r, std::move(t), e, t0);
  r.extra["success_rate"] = static_cast<double>(r.used) / static_cast<double>(trials);
  return r;
}

}  // namespace condlen
