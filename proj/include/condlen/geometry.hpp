#pragma once

// Spherical geometry of system space and projective geometry of C^{n+1}.

#include <cmath>
#include <numbers>

#include "condlen/algebra.hpp"

namespace condlen {

/// Orthonormal basis of zeta^perp.  Built from the Householder reflection
/// that maps zeta to a multiple of e_0; the basis is the image of e_1..e_n,
/// so it is a deterministic function of the (phase-normalized) point.
class TangentFrame {
 public:
  explicit TangentFrame(const ProjPoint& zeta) : point_(zeta) {
    const CVector& z = zeta.rep();
    const Eigen::Index nv = z.size();
    const double a0 = std::abs(z[0]);
    const Complex phase = a0 > 0.0 ? z[0] / a0 : Complex(1.0);
    CVector v = z;
    v[0] += phase;
    const double vv = v.squaredNorm();  // = 2 + 2|z_0| >= 2
    basis_.resize(nv, nv - 1);
    for (Eigen::Index j = 1; j < nv; ++j) {
      CVector col = -2.0 * std::conj(v[j]) / vv * v;
      col[j] += 1.0;
      basis_.col(j - 1) = col;
    }
  }

  const ProjPoint& point() const { return point_; }
  // (n+1) x n, columns orthonormal and orthogonal to the point.
  const CMatrix& basis() const { return basis_; }

  CVector coordinates(const CVector& v) const { return basis_.adjoint() * v; }
  CVector lift(const CVector& coords) const { return basis_ * coords; }

 private:
  ProjPoint point_;
  CMatrix basis_;
};

inline TangentFrame tangent_frame(const ProjPoint& zeta) { return TangentFrame(zeta); }

// Df(zeta)|_{zeta^perp} expressed in the frame basis.
struct RestrictedJacobian {
  TangentFrame frame;
  CMatrix matrix;
};

inline RestrictedJacobian restricted_jacobian(const PolySystem& f, const ProjPoint& zeta) {
  TangentFrame frame(zeta);
  CMatrix m = jacobian(f, zeta.rep()) * frame.basis();
  return {std::move(frame), std::move(m)};
}

/// Angle between two unit systems, in [0, pi].
inline double spherical_distance(const PolySystem& g, const PolySystem& f) {
  const double c = weyl_inner(g, f).real();
  const double s = weyl_norm(combine(1.0, f, -c, g));
  return std::atan2(s, c);
}

/// arccos |<x, y>| in [0, pi/2], evaluated through atan2 so that small
/// distances keep full relative accuracy.
inline double projective_distance(const ProjPoint& x, const ProjPoint& y) {
  const Complex c = x.rep().dot(y.rep());  // <y, x>
  const double s = (y.rep() - c * x.rep()).norm();
  return std::atan2(s, std::abs(c));
}

inline constexpr double kDegenerateAngle = 1e-10;

/// The great circle h(s) = g cos s + w sin s, s in [0, angle], joining the
/// unit systems g and f on the sphere of system space.
class GreatCirclePath {
 public:
  GreatCirclePath(PolySystem g, PolySystem f) : g_(std::move(g)), f_(std::move(f)), w_(g_.profile()) {
    if (!(g_.profile() == f_.profile())) throw ProfileMismatch();
    if (std::abs(weyl_norm(g_) - 1.0) > 1e-8 || std::abs(weyl_norm(f_) - 1.0) > 1e-8)
      throw InvalidArgument("great circle endpoints must have unit Weyl norm");
    const double c = weyl_inner(g_, f_).real();
    PolySystem r = combine(1.0, f_, -c, g_);
    const double s = weyl_norm(r);
    angle_ = std::atan2(s, c);
    if (angle_ < kDegenerateAngle || std::numbers::pi - angle_ < kDegenerateAngle) throw DegeneratePath();
    w_ = Complex(1.0 / s) * r;
  }

  const PolySystem& start() const { return g_; }
  const PolySystem& end() const { return f_; }
  const PolySystem& direction() const { return w_; }
  double angle() const { return angle_; }

  PolySystem point_at(double s) const {
    if (s == angle_) return f_;
    return combine(std::cos(s), g_, std::sin(s), w_);
  }
  // Unit tangent in the direction of increasing s.
  PolySystem velocity_at(double s) const { return combine(-std::sin(s), g_, std::cos(s), w_); }

 private:
  PolySystem g_;
  PolySystem f_;
  PolySystem w_;
  double angle_ = 0.0;
};

inline GreatCirclePath great_circle(const PolySystem& g, const PolySystem& f) { return GreatCirclePath(g, f); }

/// Parameter t in [0, 1] such that ((1-t) g + t f) / ||(1-t) g + t f|| is the
/// point at arc length s on the great circle from g to f/||f||.  g must be a
/// unit system; f may have any nonzero norm.
///
/// Inside the real 2-plane spanned by g and the circle direction w, f equals
/// ||f|| (g cos a + w sin a); the normalized segment point sits at angle s
/// exactly when t = sin s / (||f|| sin(a - s) + sin s).
inline double segment_to_arc(const PolySystem& g, const PolySystem& f, double s) {
  const double fn = weyl_norm(f);
  if (!(fn > 0.0)) throw InvalidArgument("segment_to_arc: zero target system");
  const double alpha = spherical_distance(g, Complex(1.0 / fn) * f);
  constexpr double slack = 1e-12;
  if (s < -slack || s > alpha + slack)
    throw InvalidArgument("segment_to_arc: arc length outside [0, angle]");
  s = std::clamp(s, 0.0, alpha);
  if (s == 0.0) return 0.0;
  if (s == alpha) return 1.0;
  const double ss = std::sin(s);
  return ss / (fn * std::sin(alpha - s) + ss);
}

}  // namespace condlen
