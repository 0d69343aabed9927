#include <gtest/gtest.h>

#include "condlen/solvers.hpp"
#include "oracles.hpp"

using namespace condlen;

namespace {

CVector random_vector(int size, CounterRng& rng) {
  CVector v(size);
  for (int k = 0; k < size; ++k) v[k] = rng.complex_normal();
  return v;
}

PolySystem linear_coordinates(int n) {
  PolySystem f(DegreeProfile(n, std::vector<int>(static_cast<std::size_t>(n), 1)));
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(static_cast<std::size_t>(n + 1), 0);
    e[static_cast<std::size_t>(i + 1)] = 1;
    f[i].coeff(MultiIndex{e}) = 1.0;
  }
  return f;
}

// Printed closed form for t at arc length s, with the cotangent argument
// passed in.
double printed_t(double fn, double alpha, double cot_arg) {
  return 1.0 / (fn * std::sin(alpha) / std::tan(cot_arg) - fn * std::cos(alpha) + 1.0);
}

}  // namespace

TEST(TangentFrame, IdentityAtE0) {
  const TangentFrame fr(ProjPoint::basis(4, 0));
  const CMatrix expect = CMatrix::Identity(4, 4).rightCols(3);
  EXPECT_LT(oracle::max_abs(fr.basis() - expect), 1e-15);
}

TEST(TangentFrame, OrthonormalAndPhaseIndependent) {
  CounterRng rng(1, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const CVector v = random_vector(4, rng);
    const ProjPoint z(v);
    const TangentFrame fr(z);
    CMatrix all(4, 4);
    all.col(0) = z.rep();
    all.rightCols(3) = fr.basis();
    EXPECT_LT(oracle::max_abs(all.adjoint() * all - CMatrix::Identity(4, 4)), 1e-13);
    const TangentFrame fr2{ProjPoint(std::polar(1.0, 0.7) * v)};
    EXPECT_LT(oracle::max_abs(fr.basis() - fr2.basis()), 1e-14);
  }
}

TEST(RestrictedJacobian, Examples) {
  for (int n = 1; n <= 3; ++n) {
    const auto rj = restricted_jacobian(linear_coordinates(n), ProjPoint::basis(n + 1, 0));
    EXPECT_LT(oracle::max_abs(rj.matrix - CMatrix::Identity(n, n)), 1e-15);
  }
  const DegreeProfile p(3, {2, 3, 2});
  const auto ru = restricted_jacobian(ubar(p), ubar_zeros(p).front());
  EXPECT_GT(std::abs(ru.matrix.determinant()), 1e-3);
  PolySystem pure(p);
  for (int i = 0; i < 3; ++i) {
    std::vector<int> e(4, 0);
    e[0] = p.degree(i);
    pure[i].coeff(MultiIndex{e}) = 1.0;
  }
  EXPECT_LT(oracle::max_abs(restricted_jacobian(pure, ProjPoint::basis(4, 0)).matrix), 1e-15);
}

TEST(RestrictedJacobian, ActsOnTangentVectors) {
  CounterRng rng(2, 0);
  const DegreeProfile p(2, {3, 2});
  const PolySystem f = gaussian_system(p, std::nullopt, 1.0, rng);
  const ProjPoint z(random_vector(3, rng));
  const auto rj = restricted_jacobian(f, z);
  const CMatrix full = jacobian(f, z.rep());
  for (int trial = 0; trial < 5; ++trial) {
    CVector v = random_vector(3, rng);
    v -= z.rep() * z.rep().dot(v);
    const CVector lhs = rj.matrix * rj.frame.coordinates(v);
    EXPECT_LT((lhs - full * v).norm(), 1e-12 * std::max(1.0, (full * v).norm()));
  }
}

TEST(SphericalDistance, Examples) {
  CounterRng rng(3, 0);
  const PolySystem g = uniform_sphere_system(DegreeProfile(2, {2, 2}), rng);
  EXPECT_NEAR(spherical_distance(g, g), 0.0, 1e-15);
  EXPECT_NEAR(spherical_distance(g, -1.0 * g), std::numbers::pi, 1e-15);
  const PolySystem h = uniform_sphere_system(g.profile(), rng);
  const PolySystem w = normalized(combine(1.0, h, -weyl_inner(h, g).real(), g));
  EXPECT_NEAR(spherical_distance(g, w), std::numbers::pi / 2, 1e-14);
  // only the real part of <g, f> matters
  EXPECT_NEAR(spherical_distance(g, Complex(0, 1) * g), std::numbers::pi / 2, 1e-14);
}

TEST(ProjectiveDistance, Examples) {
  CounterRng rng(4, 0);
  const CVector v = random_vector(3, rng);
  const ProjPoint x(v);
  EXPECT_NEAR(projective_distance(x, x), 0.0, 1e-15);
  EXPECT_NEAR(projective_distance(x, ProjPoint(std::polar(1.0, 2.0) * v)), 0.0, 1e-15);
  EXPECT_NEAR(projective_distance(ProjPoint::basis(3, 0), ProjPoint::basis(3, 1)), std::numbers::pi / 2, 1e-15);
  CVector w = v;
  w[1] += 1e-9;
  const double d = projective_distance(x, ProjPoint(w));
  EXPECT_GT(d, 0.0);
  EXPECT_LT(d, 1e-9);
}

TEST(GreatCircle, EndpointsNormsAndTangency) {
  CounterRng rng(5, 0);
  const DegreeProfile p(2, {2, 3});
  for (int trial = 0; trial < 10; ++trial) {
    const PolySystem g = uniform_sphere_system(p, rng), f = uniform_sphere_system(p, rng);
    const GreatCirclePath path(g, f);
    EXPECT_NEAR(path.angle(), spherical_distance(g, f), 1e-14);
    EXPECT_LT(weyl_norm(path.point_at(0.0) - g), 1e-15);
    EXPECT_LT(weyl_norm(path.point_at(path.angle()) - f), 1e-12);
    EXPECT_LT(weyl_norm(combine(std::cos(path.angle()), g, std::sin(path.angle()), path.direction()) - f), 1e-12);
    for (int k = 0; k <= 10; ++k) {
      const double s = path.angle() * k / 10.0;
      const PolySystem h = path.point_at(s), v = path.velocity_at(s);
      EXPECT_NEAR(weyl_norm(h), 1.0, 1e-12);
      EXPECT_NEAR(weyl_norm(v), 1.0, 1e-12);
      EXPECT_NEAR(weyl_inner(h, v).real(), 0.0, 1e-12);
    }
  }
}

TEST(GreatCircle, RejectsDegenerateAndNonUnit) {
  CounterRng rng(6, 0);
  const PolySystem g = uniform_sphere_system(DegreeProfile(1, {2}), rng);
  EXPECT_THROW(GreatCirclePath(g, g), DegeneratePath);
  EXPECT_THROW(GreatCirclePath(g, -1.0 * g), DegeneratePath);
  EXPECT_THROW(GreatCirclePath(g, 2.0 * g), InvalidArgument);
}

TEST(SegmentToArc, EndpointsResidualAndMonotone) {
  CounterRng rng(7, 0);
  const DegreeProfile p(2, {2, 2});
  for (int trial = 0; trial < 50; ++trial) {
    const PolySystem g = uniform_sphere_system(p, rng);
    const PolySystem f = (0.1 + 5.0 * rng.uniform()) * gaussian_system(p, std::nullopt, 1.0, rng);
    const GreatCirclePath path(g, normalized(f));
    EXPECT_EQ(segment_to_arc(g, f, 0.0), 0.0);
    EXPECT_EQ(segment_to_arc(g, f, path.angle()), 1.0);
    double prev = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double s = path.angle() * k / 21.0;
      const double t = segment_to_arc(g, f, s);
      EXPECT_GT(t, prev);
      prev = t;
      const PolySystem seg = normalized(combine(1.0 - t, g, t, f));
      EXPECT_LT(weyl_norm(seg - path.point_at(s)), 1e-10);
    }
    EXPECT_THROW(segment_to_arc(g, f, path.angle() + 1e-6), InvalidArgument);
    EXPECT_THROW(segment_to_arc(g, f, -1e-6), InvalidArgument);
  }
}

// Diagnostic: the printed closed form with cot(s) reproduces the geometric
// parameter; with cot(s * alpha) it does not.
TEST(SegmentToArc, PrintedFormulaCotangentArgument) {
  CounterRng rng(8, 0);
  const DegreeProfile p(1, {3});
  double worst_s = 0.0, best_s_alpha = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const PolySystem g = uniform_sphere_system(p, rng);
    const PolySystem f = (0.2 + 3.0 * rng.uniform()) * gaussian_system(p, std::nullopt, 1.0, rng);
    const double fn = weyl_norm(f);
    const double alpha = spherical_distance(g, normalized(f));
    const double s = alpha * (0.05 + 0.9 * rng.uniform());
    const double t = segment_to_arc(g, f, s);
    worst_s = std::max(worst_s, std::abs(printed_t(fn, alpha, s) - t));
    best_s_alpha = std::min(best_s_alpha, std::abs(printed_t(fn, alpha, s * alpha) - t));
  }
  EXPECT_LT(worst_s, 1e-10);
  EXPECT_GT(best_s_alpha, 0.0);
  RecordProperty("max_error_cot_s", std::to_string(worst_s));
}

TEST(TiltBound, FiniteDifferencesOnGrid) {
  CounterRng rng(9, 0);
  const DegreeProfile p(2, {2, 3});
  constexpr double h = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    const PolySystem g = uniform_sphere_system(p, rng), f = uniform_sphere_system(p, rng);
    for (int k = 1; k < 20; ++k) {
      const double t = k / 20.0;
      const PolySystem up = normalized(combine(1.0 - t - h, g, t + h, f));
      const PolySystem dn = normalized(combine(1.0 - t + h, g, t - h, f));
      const double deriv = weyl_norm(up - dn) / (2 * h);
      const double ft = weyl_norm(combine(1.0 - t, g, t, f));
      EXPECT_LE(deriv, weyl_norm(f) / (ft * ft) + 1e-4);
    }
  }
}
