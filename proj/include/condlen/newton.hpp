#pragma once

// Projective Newton operator N_h(y) = y - (Dh(y)|_{y^perp})^{-1} h(y) and the
// approximate-zero certificate built on it.

#include <vector>

#include "condlen/conditioning.hpp"

namespace condlen {

namespace detail {

inline ProjPoint newton_from(const LocalModel& m, const ProjPoint& y) {
  if (m.singular()) throw SingularJacobian();
  const CVector w = m.frame().lift(m.solve(m.values()));
  return ProjPoint(y.rep() - w);
}

}  // namespace detail

inline ProjPoint newton_step(const PolySystem& h, const ProjPoint& y) {
  return detail::newton_from(LocalModel(h, y), y);
}

struct NewtonReport {
  std::vector<ProjPoint> iterates;
  std::vector<double> distances;  // between consecutive iterates
  bool singular = false;
  bool certified = false;
};

// Steps used by the certificate: four contraction checks need five iterates
// past the start.
inline constexpr int kCertificateSteps = 5;
inline constexpr double kResidualTolerance = 1e-10;

namespace detail {

// Forward-error floor of a Newton step in double precision.  Distances below
// it carry no information about the contraction rate.
inline double newton_noise_floor(const PolySystem& h, const ProjPoint& x) {
  const double m = condition(h, x).mu;
  const double scale = std::isfinite(m) ? std::max(1.0, m) : 1.0;
  return 256.0 * std::numeric_limits<double>::epsilon() * std::sqrt(static_cast<double>(h.profile().size())) *
         scale;
}

// dist(x_{k+1}, x_k) <= (1/2)^{2^k - 1} dist(x_1, x_0) for k = 1..4.
inline bool halving_pattern(const std::vector<double>& d, double floor) {
  if (d.size() < static_cast<std::size_t>(kCertificateSteps)) return false;
  for (int k = 1; k < kCertificateSteps; ++k) {
    const double bound = std::ldexp(d[0], -((1 << k) - 1));
    if (d[static_cast<std::size_t>(k)] > std::max(bound, floor)) return false;
  }
  return true;
}

}  // namespace detail

/// k projective Newton steps from y.  Stops early if a step is singular.
/// `certified` is set when at least five steps ran and they follow the
/// quadratic halving pattern.
inline NewtonReport refine(const PolySystem& h, const ProjPoint& y, int k) {
  if (k < 1) throw InvalidArgument("refine: need at least one iteration");
  NewtonReport r;
  r.iterates.push_back(y);
  for (int i = 0; i < k; ++i) {
    const LocalModel m(h, r.iterates.back());
    if (m.singular()) {
      r.singular = true;
      return r;
    }
    r.iterates.push_back(detail::newton_from(m, r.iterates.back()));
    r.distances.push_back(projective_distance(r.iterates[r.iterates.size() - 2], r.iterates.back()));
  }
  r.certified = detail::halving_pattern(r.distances, detail::newton_noise_floor(h, r.iterates.back()));
  return r;
}

struct ApproximateZero {
  bool certified = false;
  ProjPoint zero;  // final Newton iterate
  double residual = kInfinity;
};

/// True iff Newton from x converges immediately and quadratically: five
/// nonsingular steps whose successive displacements follow the halving
/// pattern (up to the double-precision noise floor), ending with
/// ||h(x_final)|| <= 1e-10 ||h||.
inline ApproximateZero is_approximate_zero(const PolySystem& h, const ProjPoint& x) {
  const NewtonReport r = refine(h, x, kCertificateSteps);
  ApproximateZero out{false, r.iterates.back(), kInfinity};
  if (r.singular) return out;
  out.residual = evaluate(h, out.zero.rep()).norm();
  out.certified = r.certified && out.residual <= kResidualTolerance * weyl_norm(h);
  return out;
}

}  // namespace condlen
