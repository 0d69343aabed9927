#pragma once

// Condition numbers mu and mu_F of a pair (f, zeta), the implicit derivative
// of a zero along a path of systems, and the condition-length integrand.

#include <Eigen/SVD>

#include <limits>
#include <span>

#include "condlen/geometry.hpp"

namespace condlen {

// Smallest singular value <= this times the largest means "singular".
inline constexpr double kSingularThreshold = 1e-14;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Linearization of f at a unit representative zeta: values, Jacobian, the
/// tangent frame, the restricted Jacobian M and its SVD.
class LocalModel {
 public:
  LocalModel(const PolySystem& f, const ProjPoint& zeta) : frame_(zeta) {
    evaluate_with_jacobian(f, zeta.rep(), values_, jac_);
    restricted_ = jac_ * frame_.basis();
    svd_.compute(restricted_, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd_.singularValues();
    const double smax = sv.size() ? sv[0] : 0.0;
    const double smin = sv.size() ? sv[sv.size() - 1] : 0.0;
    singular_ = !(smax > 0.0) || smin <= kSingularThreshold * smax || !std::isfinite(smax);
  }

  const TangentFrame& frame() const { return frame_; }
  const CVector& values() const { return values_; }
  const CMatrix& jacobian() const { return jac_; }
  const CMatrix& restricted() const { return restricted_; }
  bool singular() const { return singular_; }

  // M^{-1} rhs via the SVD; caller checks singular() first.
  CVector solve(const CVector& rhs) const {
    const auto& sv = svd_.singularValues();
    CVector tmp = svd_.matrixU().adjoint() * rhs;
    for (Eigen::Index k = 0; k < tmp.size(); ++k) tmp[k] /= sv[k];
    return svd_.matrixV() * tmp;
  }

  CMatrix solve(const CMatrix& rhs) const {
    const auto& sv = svd_.singularValues();
    CMatrix tmp = svd_.matrixU().adjoint() * rhs;
    for (Eigen::Index k = 0; k < tmp.rows(); ++k) tmp.row(k) /= sv[k];
    return svd_.matrixV() * tmp;
  }

  // ||M^{-1}||_F
  double inverse_frobenius() const {
    double s = 0.0;
    for (Eigen::Index k = 0; k < svd_.singularValues().size(); ++k) {
      const double v = svd_.singularValues()[k];
      s += 1.0 / (v * v);
    }
    return std::sqrt(s);
  }

 private:
  TangentFrame frame_;
  CVector values_;
  CMatrix jac_;
  CMatrix restricted_;
  Eigen::JacobiSVD<CMatrix> svd_;
  bool singular_ = true;
};

struct ConditionEstimate {
  double mu = kInfinity;
  double mu_frobenius = kInfinity;
  bool singular = true;
};

namespace detail {

inline ConditionEstimate condition_from(const LocalModel& m, const DegreeProfile& profile, double fnorm) {
  if (m.singular()) return {};
  const int n = profile.n();
  CMatrix scale = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) scale(i, i) = std::sqrt(static_cast<double>(profile.degree(i)));
  const CMatrix a = m.solve(scale);
  Eigen::JacobiSVD<CMatrix> svd(a);
  return {fnorm * svd.singularValues()[0], fnorm * a.norm(), false};
}

}  // namespace detail

/// mu and mu_F together: ||f|| times the spectral / Frobenius norm of
/// M^{-1} diag(sqrt(d_i)), M the restricted Jacobian at the unit point zeta.
inline ConditionEstimate condition(const PolySystem& f, const ProjPoint& zeta) {
  return detail::condition_from(LocalModel(f, zeta), f.profile(), weyl_norm(f));
}

inline double mu(const PolySystem& f, const ProjPoint& zeta) { return condition(f, zeta).mu; }
inline double mu_frobenius(const PolySystem& f, const ProjPoint& zeta) { return condition(f, zeta).mu_frobenius; }

namespace detail {

inline CVector zeta_dot_from(const LocalModel& m, const PolySystem& fdot, const ProjPoint& zeta) {
  if (m.singular()) throw SingularPair();
  return -m.frame().lift(m.solve(evaluate(fdot, zeta.rep())));
}

}  // namespace detail

/// Derivative of the zero along a path of systems with velocity fdot: the
/// vector v in zeta^perp with Df(zeta) v + fdot(zeta) = 0.
inline CVector zeta_dot(const PolySystem& f, const ProjPoint& zeta, const PolySystem& fdot) {
  return detail::zeta_dot_from(LocalModel(f, zeta), fdot, zeta);
}

/// mu(f, zeta) * sqrt(||fdot||^2 + ||zeta_dot||^2).
inline double condition_length_integrand(const PolySystem& f, const ProjPoint& zeta, const PolySystem& fdot) {
  const LocalModel m(f, zeta);
  if (m.singular()) throw SingularPair();
  const double mu_val = detail::condition_from(m, f.profile(), weyl_norm(f)).mu;
  const double fd = weyl_norm(fdot);
  const double zd = detail::zeta_dot_from(m, fdot, zeta).norm();
  return mu_val * std::sqrt(fd * fd + zd * zd);
}

struct MuAverages {
  double mu_av_sq = kInfinity;
  double mu_f_av_sq = kInfinity;
};

/// Fiber averages of mu^2 and mu_F^2 over the supplied zeros; infinite if any
/// pair is ill-posed.
inline MuAverages mu_averages(const PolySystem& f, std::span<const ProjPoint> zeros) {
  if (zeros.empty()) throw EmptyZeroList();
  double s = 0.0, sf = 0.0;
  for (const auto& z : zeros) {
    const auto c = condition(f, z);
    if (c.singular) return {};
    s += c.mu * c.mu;
    sf += c.mu_frobenius * c.mu_frobenius;
  }
  const double k = static_cast<double>(zeros.size());
  return {s / k, sf / k};
}

}  // namespace condlen
