#pragma once

// End-to-end algorithms: the randomized solver (random Gaussian start pair),
// the deterministic solver with its D > n / D <= n start-system split, and
// the all-roots solver used as ground truth.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "condlen/homotopy.hpp"
#include "condlen/parallel.hpp"
#include "condlen/sampling.hpp"

namespace condlen {

struct StartPair {
  PolySystem system;
  ProjPoint zero;
};

/// g_i = (1/d_1 + ... + 1/d_n)^{-1/2} X_0^{d_i - 1} X_i with zero e_0.
inline StartPair gbar(const DegreeProfile& profile) {
  const int n = profile.n();
  double inv = 0.0;
  for (int d : profile.degrees()) inv += 1.0 / d;
  const double scale = 1.0 / std::sqrt(inv);
  PolySystem g(profile);
  for (int i = 0; i < n; ++i) {
    MultiIndex a{std::vector<int>(static_cast<std::size_t>(n + 1), 0)};
    a.exponents[0] = profile.degree(i) - 1;
    a.exponents[static_cast<std::size_t>(i + 1)] += 1;
    g[i].coeff(a) = scale;
  }
  return {std::move(g), ProjPoint::basis(n + 1, 0)};
}

/// U_i = (X_0^{d_i} - X_i^{d_i}) / sqrt(2n).
inline PolySystem ubar(const DegreeProfile& profile) {
  const int n = profile.n();
  const double scale = 1.0 / std::sqrt(2.0 * n);
  PolySystem u(profile);
  for (int i = 0; i < n; ++i) {
    const int d = profile.degree(i);
    MultiIndex a{std::vector<int>(static_cast<std::size_t>(n + 1), 0)};
    a.exponents[0] = d;
    u[i].coeff(a) = scale;
    a.exponents[0] = 0;
    a.exponents[static_cast<std::size_t>(i + 1)] = d;
    u[i].coeff(a) = -scale;
  }
  return u;
}

/// The Bezout-many zeros (1, w_1, ..., w_n)/sqrt(n+1), w_i^{d_i} = 1, with
/// the first one (all w_i = 1) listed first.
inline std::vector<ProjPoint> ubar_zeros(const DegreeProfile& profile) {
  const int n = profile.n();
  std::vector<ProjPoint> out;
  out.reserve(static_cast<std::size_t>(profile.bezout()));
  std::vector<int> k(static_cast<std::size_t>(n), 0);
  for (;;) {
    CVector v(n + 1);
    v[0] = 1.0;
    for (int i = 0; i < n; ++i)
      v[i + 1] = std::polar(1.0, 2.0 * std::numbers::pi * k[static_cast<std::size_t>(i)] / profile.degree(i));
    out.emplace_back(v);
    int i = n - 1;
    while (i >= 0 && ++k[static_cast<std::size_t>(i)] == profile.degree(i)) k[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
  }
  return out;
}

enum class Algorithm { Randomized, Deterministic };

inline std::string_view to_string(Algorithm a) { return a == Algorithm::Randomized ? "RANDOMIZED" : "DETERMINISTIC"; }

struct SolveReport {
  SolveReport(std::string hash, Algorithm algo, StartPair s, TrackResult t)
      : input_hash(std::move(hash)), algorithm(algo), start(std::move(s)), track(std::move(t)) {}

  std::string input_hash;
  Algorithm algorithm = Algorithm::Randomized;
  StartPair start;
  TrackResult track;
  double wall_seconds = 0.0;
  std::optional<std::uint64_t> seed;
  int redraws = 0;
};

/// FNV-1a over the profile and the raw coefficient bytes.
inline std::string system_hash(const PolySystem& f) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto eat = [&h](const void* p, std::size_t len) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  const int n = f.n();
  eat(&n, sizeof n);
  for (int i = 0; i < n; ++i) {
    const int d = f.profile().degree(i);
    eat(&d, sizeof d);
    eat(f[i].coeffs().data(), static_cast<std::size_t>(f[i].coeffs().size()) * sizeof(Complex));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline constexpr int kMaxRedraws = 3;

/// Draws a random initial pair (f0, zeta0), then follows the great circle
/// from f0/||f0|| to f/||f||.  Degenerate circles and start pairs that fail
/// certification are redrawn at most kMaxRedraws times.
inline SolveReport solve_randomized(const PolySystem& f, const TrackerConfig& config, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const PolySystem target = normalized(f);
  CounterRng rng(seed, 0);
  for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    const InitialPair pair = bp_initial_pair(f.profile(), rng);
    const PolySystem g = normalized(pair.system);
    try {
      const GreatCirclePath path(g, target);
      SolveReport rep(system_hash(f), Algorithm::Randomized, {g, pair.zero}, track(path, pair.zero, config));
      rep.seed = seed;
      rep.redraws = attempt;
      rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return rep;
    } catch (const DegeneratePath&) {
    } catch (const NotAnApproximateZero&) {
    }
  }
  throw DegeneratePath("randomized solver: start pair rejected after " + std::to_string(kMaxRedraws) + " redraws");
}

/// Start pair by case split: (gbar, e_0) when D > n, (Ubar, z_1) when D <= n.
inline StartPair deterministic_start(const DegreeProfile& profile) {
  if (profile.max_degree() > profile.n()) return gbar(profile);
  return {ubar(profile), ubar_zeros(profile).front()};
}

inline SolveReport solve_deterministic(const PolySystem& f, const TrackerConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const PolySystem target = normalized(f);
  StartPair start = deterministic_start(f.profile());
  SolveReport rep(system_hash(f), Algorithm::Deterministic, start, TrackResult(TrackStatus::Success, start.zero));
  try {
    const GreatCirclePath path(start.system, target);
    rep.track = track(path, start.zero, config);
  } catch (const DegeneratePath&) {
    // f/||f|| = +-start: the start zero is already a zero of the target.
    const ApproximateZero z = is_approximate_zero(target, start.zero);
    rep.track.status = z.certified ? TrackStatus::Success : TrackStatus::DegeneratePath;
    rep.track.certified = z.certified;
    rep.track.final_point = z.zero;
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline constexpr double kDedupDistance = 1e-6;

struct AllZerosOptions {
  TrackerConfig tracker = [] {
    TrackerConfig c;
    c.strategy = Strategy::MuSquared;
    return c;
  }();
  // Paths that fail or land on an already-found zero are retracked with the
  // step constant divided by 4, this many times.
  int retries = 2;
};

struct AllZerosResult {
  std::vector<ProjPoint> zeros;  // distinct, certified, canonical order
  bool complete = false;         // exactly Bezout-many distinct zeros
  std::vector<int> failed_paths;
  int suspected_duplicates = 0;
  long total_steps = 0;
};

namespace detail {

inline bool canonical_less(const ProjPoint& a, const ProjPoint& b) {
  for (Eigen::Index k = 0; k < a.rep().size(); ++k) {
    if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
    if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
  }
  return false;
}

}  // namespace detail

/// Tracks every zero of Ubar along the great circle to f/||f||.
inline AllZerosResult all_zeros(const PolySystem& f, const AllZerosOptions& options = {}) {
  const DegreeProfile& profile = f.profile();
  const PolySystem target = normalized(f);
  const PolySystem start = ubar(profile);
  const std::vector<ProjPoint> starts = ubar_zeros(profile);
  const std::size_t count = starts.size();
  AllZerosResult out;

  std::optional<GreatCirclePath> path;
  try {
    path.emplace(start, target);
  } catch (const DegeneratePath&) {
    out.zeros = starts;
    std::sort(out.zeros.begin(), out.zeros.end(), detail::canonical_less);
    out.complete = true;
    return out;
  }

  std::vector<std::optional<ProjPoint>> ends(count);
  std::vector<std::size_t> todo(count);
  for (std::size_t i = 0; i < count; ++i) todo[i] = i;
  TrackerConfig cfg = options.tracker;

  for (int attempt = 0; attempt <= options.retries && !todo.empty(); ++attempt) {
    std::vector<long> steps(todo.size(), 0);
    parallel_for(todo.size(), [&](std::size_t j) {
      const std::size_t i = todo[j];
      try {
        const TrackResult r = track(*path, starts[i], cfg);
        steps[j] = r.steps;
        ends[i] = r.status == TrackStatus::Success ? std::optional<ProjPoint>(r.final_point) : std::nullopt;
      } catch (const Error&) {
        ends[i].reset();
      }
    });
    for (long k : steps) out.total_steps += k;

    std::vector<char> bad(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
      if (!ends[i]) {
        bad[i] = 1;
        continue;
      }
      for (std::size_t j = i + 1; j < count; ++j)
        if (ends[j] && projective_distance(*ends[i], *ends[j]) < kDedupDistance) bad[i] = bad[j] = 1;
    }
    todo.clear();
    for (std::size_t i = 0; i < count; ++i)
      if (bad[i]) todo.push_back(i);
    cfg.step_constant /= 4.0;
  }

  for (std::size_t i = 0; i < count; ++i) {
    if (!ends[i]) {
      out.failed_paths.push_back(static_cast<int>(i));
      continue;
    }
    bool dup = false;
    for (const auto& z : out.zeros)
      if (projective_distance(z, *ends[i]) < kDedupDistance) dup = true;
    if (dup)
      ++out.suspected_duplicates;
    else
      out.zeros.push_back(*ends[i]);
  }
  std::sort(out.zeros.begin(), out.zeros.end(), detail::canonical_less);
  out.complete = out.failed_paths.empty() && out.suspected_duplicates == 0 && out.zeros.size() == count;
  return out;
}

}  // namespace condlen
