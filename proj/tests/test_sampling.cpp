#include <gtest/gtest.h>

#include "condlen/solvers.hpp"
#include "oracles.hpp"

using namespace condlen;

TEST(CounterRng, DeterministicPerStream) {
  CounterRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  for (int k = 0; k < 100; ++k) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    EXPECT_NE(x, d.next_u64());
  }
  EXPECT_EQ(a.counter(), 100u);
}

TEST(CounterRng, ComplexNormalMoments) {
  CounterRng rng(1, 0);
  double re2 = 0.0, im2 = 0.0, reim = 0.0, abs2 = 0.0, mean_re = 0.0;
  constexpr int n = 200000;
  for (int k = 0; k < n; ++k) {
    const Complex z = rng.complex_normal();
    re2 += z.real() * z.real();
    im2 += z.imag() * z.imag();
    reim += z.real() * z.imag();
    abs2 += std::norm(z);
    mean_re += z.real();
  }
  EXPECT_NEAR(re2 / n, 0.5, 0.01);
  EXPECT_NEAR(im2 / n, 0.5, 0.01);
  EXPECT_NEAR(reim / n, 0.0, 0.01);
  EXPECT_NEAR(abs2 / n, 1.0, 0.01);
  EXPECT_NEAR(mean_re / n, 0.0, 0.01);
  double u = 0.0, v = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = rng.normal();
    u += x;
    v += x * x;
  }
  EXPECT_NEAR(u / n, 0.0, 0.01);
  EXPECT_NEAR(v / n, 1.0, 0.01);
}

TEST(GaussianSystem, MeanSquaredNormIsN) {
  const DegreeProfile p(2, {2, 3});
  CounterRng rng(2, 0);
  double s = 0.0;
  constexpr int n = 100000;
  for (int k = 0; k < n; ++k) s += std::pow(weyl_norm(gaussian_system(p, std::nullopt, 1.0, rng)), 2);
  EXPECT_NEAR(s / n, double(p.size()), 0.01 * p.size());
}

TEST(GaussianSystem, CenterAndSmallSigma) {
  const DegreeProfile p(1, {3});
  CounterRng rng(3, 0);
  const PolySystem c = gaussian_system(p, std::nullopt, 1.0, rng);
  const PolySystem f = gaussian_system(p, c, 1e-12, rng);
  EXPECT_LT(weyl_norm(f - c), 1e-10);
  EXPECT_THROW(gaussian_system(p, std::nullopt, 0.0, rng), InvalidArgument);
  EXPECT_THROW(gaussian_system(p, PolySystem(DegreeProfile(1, {2})), 1.0, rng), ProfileMismatch);
}

TEST(UniformSphere, UnitNormZeroMeanSymmetric) {
  const DegreeProfile p(1, {2});
  CounterRng rng(4, 0);
  const PolySystem fixed = uniform_sphere_system(p, rng);
  PolySystem mean(p);
  int positive = 0;
  constexpr int n = 20000;
  for (int k = 0; k < n; ++k) {
    const PolySystem f = uniform_sphere_system(p, rng);
    EXPECT_NEAR(weyl_norm(f), 1.0, 1e-14);
    mean += f;
    positive += weyl_inner(f, fixed).real() > 0.0;
  }
  EXPECT_LT(weyl_norm(mean) / n, 0.02);
  // sign test: |positive - n/2| within 4 standard deviations
  EXPECT_LT(std::abs(positive - n / 2.0), 4.0 * std::sqrt(n / 4.0));
}

TEST(UnitTangent, TangentAndUnit) {
  const DegreeProfile p(2, {2, 2});
  CounterRng rng(5, 0);
  for (int k = 0; k < 100; ++k) {
    const PolySystem f = uniform_sphere_system(p, rng);
    const PolySystem t = unit_tangent_system(f, rng);
    EXPECT_NEAR(weyl_norm(t), 1.0, 1e-14);
    EXPECT_LT(std::abs(weyl_inner(t, f).real()), 1e-14);
  }
}

TEST(GaussianMatrix, DeterminantMoments) {
  CounterRng rng(6, 0);
  for (int n = 1; n <= 3; ++n) {
    double s = 0.0;
    constexpr int trials = 200000;
    for (int k = 0; k < trials; ++k) s += std::norm(gaussian_matrix(n, n, CMatrix(), 1.0, rng).determinant());
    EXPECT_NEAR(s / trials, std::tgamma(n + 1.0), 0.03 * std::tgamma(n + 1.0)) << "n=" << n;
  }
  CMatrix c(2, 2);
  c << 1.0, 2.0, 3.0, 4.0;
  EXPECT_NEAR(std::abs(gaussian_matrix(2, 2, c, 1e-12, rng).determinant() - c.determinant()), 0.0, 1e-10);
}

TEST(KernelVector, SpansKernel) {
  CounterRng rng(7, 0);
  for (int n = 1; n <= 4; ++n) {
    const CMatrix m = gaussian_matrix(n, n + 1, CMatrix(), 1.0, rng);
    const ProjPoint z = kernel_vector(m);
    EXPECT_LT((m * z.rep()).norm(), 1e-13 * m.norm());
  }
  CMatrix deg = CMatrix::Zero(2, 3);
  deg(0, 0) = 1.0;
  deg(1, 0) = 2.0;
  EXPECT_THROW(kernel_vector(deg), KernelDegenerate);
}

TEST(InitialPair, ResidualAndEmbeddedLinearPart) {
  for (const auto& degs : std::vector<std::vector<int>>{{3}, {2, 2}, {2, 3, 2}}) {
    const DegreeProfile p(static_cast<int>(degs.size()), degs);
    CounterRng rng(8, 0);
    double worst = 0.0;
    for (int k = 0; k < 10000 / p.n(); ++k) {
      const InitialPair pair = bp_initial_pair(p, rng);
      worst = std::max(worst, pair.residual / weyl_norm(pair.system));
    }
    EXPECT_LE(worst, 1e-12);

    // Before polishing the zero is exactly ker M, where D f0 restricted to
    // zeta^perp equals diag(sqrt(d_i)) M.
    const InitialPair pair = bp_initial_pair(p, rng);
    const ProjPoint zeta = kernel_vector(pair.linear_part);
    const TangentFrame fr(zeta);
    const CMatrix lhs = jacobian(pair.system, zeta.rep()) * fr.basis();
    CMatrix rhs = pair.linear_part * fr.basis();
    for (int i = 0; i < p.n(); ++i) rhs.row(i) *= std::sqrt(double(p.degree(i)));
    EXPECT_LT(oracle::max_abs(lhs - rhs), 1e-12 * std::max(1.0, oracle::max_abs(rhs)));
  }
}

TEST(InitialPair, Reproducible) {
  const DegreeProfile p(2, {2, 2});
  CounterRng a(9, 3), b(9, 3);
  const InitialPair x = bp_initial_pair(p, a), y = bp_initial_pair(p, b);
  EXPECT_EQ(x.zero.rep(), y.zero.rep());
  EXPECT_EQ(weyl_norm(x.system - y.system), 0.0);
}

// Pushing a centered Gaussian through the fiber projection: the second
// moment of <Pi(g), e> is 1 for a unit e in the fiber and 0 for e in the
// complement.
TEST(ProjectFiber, GaussianMoments) {
  const DegreeProfile p(1, {3});
  CounterRng rng(10, 0);
  CVector v(2);
  v << 0.6, Complex(0.0, 0.8);
  const ProjPoint z(v);
  CVector a(1);
  a << 1.0;
  const PolySystem in_complement = kernel_system(z, p, a);
  const PolySystem in_fiber = normalized(project_fiber(gaussian_system(p, std::nullopt, 1.0, rng), z));
  double s1 = 0.0, s2 = 0.0;
  constexpr int n = 50000;
  for (int k = 0; k < n; ++k) {
    const PolySystem g = project_fiber(gaussian_system(p, std::nullopt, 1.0, rng), z);
    s1 += std::norm(weyl_inner(g, in_fiber));
    s2 += std::norm(weyl_inner(g, in_complement));
  }
  EXPECT_NEAR(s1 / n, 1.0, 0.03);
  EXPECT_LT(s2 / n, 1e-20);
}
