#pragma once

// Adaptive path tracking along great circles of the unit sphere of system
// space, with projective Newton corrections.

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "condlen/newton.hpp"

namespace condlen {

enum class Strategy {
  MuSquared,        // ds = c / (D^{3/2} mu^2)
  ConditionLength,  // ds = c / (D^{3/2} mu sqrt(1 + ||zeta_dot||^2))
};

enum class TrackStatus { Success, Singular, StepLimit, ConditionCap, DegeneratePath, Uncertified };

inline std::string_view to_string(Strategy s) {
  return s == Strategy::MuSquared ? "mu2" : "condlen";
}

inline std::string_view to_string(TrackStatus s) {
  switch (s) {
    case TrackStatus::Success: return "SUCCESS";
    case TrackStatus::Singular: return "SINGULAR";
    case TrackStatus::StepLimit: return "STEP_LIMIT";
    case TrackStatus::ConditionCap: return "CONDITION_CAP";
    case TrackStatus::DegeneratePath: return "DEGENERATE_PATH";
    case TrackStatus::Uncertified: return "UNCERTIFIED";
  }
  return "UNKNOWN";
}

struct TrackerConfig {
  Strategy strategy = Strategy::ConditionLength;
  double step_constant = 0.04;
  long max_steps = 1'000'000;
  double mu_cap = 1e12;
  int corrections = 1;
  bool certify = true;
  bool record_trace = false;
};

struct TraceRow {
  double s = 0.0;
  double t = std::numeric_limits<double>::quiet_NaN();  // filled by track_segment
  double mu = 0.0;
  double mu_frobenius = 0.0;
  double ds = 0.0;
  double residual = 0.0;
};

struct TrackResult {
  TrackResult(TrackStatus st, ProjPoint x) : status(st), final_point(std::move(x)) {}

  TrackStatus status;
  ProjPoint final_point;
  long steps = 0;
  double condition_length = 0.0;
  double mu_peak = 0.0;
  bool certified = false;
  double max_jump = 0.0;  // largest projective distance between consecutive iterates
  std::vector<TraceRow> trace;
  std::vector<ProjPoint> checkpoints;
};

inline void validate(const TrackerConfig& c) {
  if (!(c.step_constant > 0.0)) throw InvalidArgument("tracker: step constant must be positive");
  if (c.max_steps < 1) throw InvalidArgument("tracker: max steps must be >= 1");
  if (!(c.mu_cap > 0.0)) throw InvalidArgument("tracker: mu cap must be positive");
  if (c.corrections < 1) throw InvalidArgument("tracker: need at least one Newton correction per step");
}

/// Follows the zero x0 of path.start() to a zero of path.end().
///
/// Each step picks ds by the configured strategy from mu (and zeta_dot) at
/// the current pair, moves to s + ds, and applies `corrections` Newton steps
/// for the new system.  The condition length accumulates the integrand at
/// the current pair times ds, so under ConditionLength every unclamped step
/// contributes exactly c / D^{3/2}.
///
/// `checkpoints` (ascending, in (0, angle]) are landed on exactly and the
/// tracked point there is recorded in TrackResult::checkpoints.
inline TrackResult track(const GreatCirclePath& path, const ProjPoint& x0, const TrackerConfig& config,
                         std::span<const double> checkpoints = {}) {
  validate(config);
  const auto& profile = path.start().profile();
  const double d15 = std::pow(static_cast<double>(profile.max_degree()), 1.5);
  const double alpha = path.angle();

  const ApproximateZero start = is_approximate_zero(path.start(), x0);
  if (!start.certified) throw NotAnApproximateZero();

  TrackResult r(TrackStatus::Success, start.zero);
  ProjPoint x = start.zero;
  double s = 0.0;
  std::size_t next_cp = 0;
  bool failed = false;

  while (s < alpha) {
    const PolySystem h = path.point_at(s);
    const LocalModel m(h, x);
    if (m.singular()) {
      r.status = TrackStatus::Singular;
      failed = true;
      break;
    }
    const ConditionEstimate cond = detail::condition_from(m, profile, weyl_norm(h));
    r.mu_peak = std::max(r.mu_peak, cond.mu);
    if (cond.mu > config.mu_cap) {
      r.status = TrackStatus::ConditionCap;
      failed = true;
      break;
    }
    const CVector zd = detail::zeta_dot_from(m, path.velocity_at(s), x);
    const double integrand = cond.mu * std::sqrt(1.0 + zd.squaredNorm());
    double ds = config.strategy == Strategy::MuSquared ? config.step_constant / (d15 * cond.mu * cond.mu)
                                                       : config.step_constant / (d15 * integrand);

    double target = alpha;
    if (next_cp < checkpoints.size()) target = std::min(target, checkpoints[next_cp]);
    const double s_new = s + ds >= target ? target : s + ds;
    ds = s_new - s;
    r.condition_length += integrand * ds;

    const PolySystem h_new = path.point_at(s_new);
    const ProjPoint before = x;
    try {
      for (int k = 0; k < config.corrections; ++k) x = newton_step(h_new, x);
    } catch (const SingularJacobian&) {
      r.status = TrackStatus::Singular;
      failed = true;
      break;
    }
    r.max_jump = std::max(r.max_jump, projective_distance(before, x));
    ++r.steps;
    if (config.record_trace)
      r.trace.push_back({s_new, std::numeric_limits<double>::quiet_NaN(), cond.mu, cond.mu_frobenius, ds,
                         evaluate(h_new, x.rep()).norm()});
    while (next_cp < checkpoints.size() && checkpoints[next_cp] <= s_new) {
      r.checkpoints.push_back(x);
      ++next_cp;
    }
    s = s_new;
    if (r.steps >= config.max_steps && s < alpha) {
      r.status = TrackStatus::StepLimit;
      failed = true;
      break;
    }
  }

  r.final_point = x;
  if (failed) return r;
  if (!config.certify) {
    r.status = TrackStatus::Success;
    return r;
  }
  const ApproximateZero end = is_approximate_zero(path.end(), x);
  r.certified = end.certified;
  r.status = end.certified ? TrackStatus::Success : TrackStatus::Uncertified;
  if (end.certified) r.final_point = end.zero;
  return r;
}

/// Tracks the same spherical arc from g (unit) to f/||f|| and annotates each
/// trace row with the segment parameter t of (1-t) g + t f.
inline TrackResult track_segment(const PolySystem& g, const PolySystem& f, const ProjPoint& x0,
                                 const TrackerConfig& config) {
  const PolySystem target = normalized(f);
  std::optional<GreatCirclePath> path;
  try {
    path.emplace(g, target);
  } catch (const DegeneratePath&) {
    return TrackResult(TrackStatus::DegeneratePath, x0);
  }
  TrackResult r = track(*path, x0, config);
  for (auto& row : r.trace) row.t = segment_to_arc(g, f, std::min(row.s, path->angle()));
  return r;
}

/// 400 D^{3/2} n sqrt(N): the average step bound of the randomized algorithm
/// under the condition-length estimate, with the constant 400.
inline double step_count_bound(const DegreeProfile& profile) {
  return 400.0 * std::pow(static_cast<double>(profile.max_degree()), 1.5) * profile.n() *
         std::sqrt(static_cast<double>(profile.size()));
}

}  // namespace condlen
