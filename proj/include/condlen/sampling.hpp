#pragma once

// Reproducible randomness.  Every trial owns a CounterRng keyed by
// (master seed, stream id); draw k of a stream is a pure function of
// (seed, stream, k), so results never depend on thread scheduling.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>

#include "condlen/newton.hpp"

namespace condlen {

struct SeedSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed ^ mix(stream + 0xD1B54A32D192ED03ULL))) {}
  explicit CounterRng(SeedSpec s) : CounterRng(s.seed, s.stream) {}

  // SplitMix64 output for counter value k.
  std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }

  // Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  // Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
  Complex complex_normal() {
    const double r = std::sqrt(-std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(theta), r * std::sin(theta)};
  }

  // Real N(0, 1) by Box-Muller (cosine branch only).
  double normal() {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    return r * std::cos(2.0 * std::numbers::pi * uniform());
  }

  std::uint64_t counter() const { return counter_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// center + sigma * sum_alpha xi_alpha e_alpha with e_alpha = sqrt(binom(d, alpha)) z^alpha
/// the Weyl-orthonormal monomial basis and xi_alpha i.i.d. standard complex
/// Gaussians.
inline PolySystem gaussian_system(const DegreeProfile& profile, const std::optional<PolySystem>& center, double sigma,
                                  CounterRng& rng) {
  if (!(sigma > 0.0)) throw InvalidArgument("gaussian_system: sigma must be positive");
  PolySystem f = center ? *center : PolySystem(profile);
  if (!(f.profile() == profile)) throw ProfileMismatch();
  for (int i = 0; i < profile.n(); ++i) {
    auto& p = f[i];
    const auto& t = p.table();
    for (std::size_t k = 0; k < t.size(); ++k)
      p.coeffs()[static_cast<Eigen::Index>(k)] += sigma * std::sqrt(t.multinomial(k)) * rng.complex_normal();
  }
  return f;
}

inline PolySystem uniform_sphere_system(const DegreeProfile& profile, CounterRng& rng) {
  for (;;) {
    PolySystem f = gaussian_system(profile, std::nullopt, 1.0, rng);
    const double nrm = weyl_norm(f);
    if (nrm > 0.0) return Complex(1.0 / nrm) * f;
  }
}

/// i.i.d. complex Gaussian entries of variance sigma^2 around `center`
/// (an empty center means zero).
inline CMatrix gaussian_matrix(int rows, int cols, const CMatrix& center, double sigma, CounterRng& rng) {
  if (!(sigma > 0.0)) throw InvalidArgument("gaussian_matrix: sigma must be positive");
  CMatrix a(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) a(i, j) = sigma * rng.complex_normal();
  if (center.size() != 0) {
    if (center.rows() != rows || center.cols() != cols) throw InvalidArgument("gaussian_matrix: center shape");
    a += center;
  }
  return a;
}

/// Uniform unit vector of the real tangent space T_f S = {g : Re<g, f> = 0}.
inline PolySystem unit_tangent_system(const PolySystem& f, CounterRng& rng) {
  for (;;) {
    const PolySystem g = gaussian_system(f.profile(), std::nullopt, 1.0, rng);
    const PolySystem t = combine(1.0, g, -weyl_inner(g, f).real(), f);
    const double nrm = weyl_norm(t);
    if (nrm > 0.0) return Complex(1.0 / nrm) * t;
  }
}

/// <z, zeta>^k as a polynomial of degree k.
inline HomogeneousPoly kernel_power(const ProjPoint& zeta, int k) {
  const int n = zeta.num_vars() - 1;
  HomogeneousPoly p(n, k);
  const auto& t = p.table();
  const CMatrix pw = detail::power_table(zeta.rep().conjugate(), k);
  for (std::size_t m = 0; m < t.size(); ++m) {
    const auto e = t.exponents(m);
    Complex c = t.multinomial(m);
    for (std::size_t j = 0; j < e.size(); ++j) c *= pw(static_cast<Eigen::Index>(j), e[j]);
    p.coeffs()[static_cast<Eigen::Index>(m)] = c;
  }
  return p;
}

/// Unit vector spanning ker(M) for an n x (n+1) matrix M, from a QR
/// factorization of M^*.  Throws KernelDegenerate if M is rank deficient.
inline ProjPoint kernel_vector(const CMatrix& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n + 1) throw InvalidArgument("kernel_vector: expected n x (n+1)");
  Eigen::ColPivHouseholderQR<CMatrix> qr(m.adjoint());
  const auto& r = qr.matrixR();
  const double r0 = std::abs(r(0, 0));
  if (!(r0 > 0.0) || std::abs(r(n - 1, n - 1)) <= 1e-12 * r0) throw KernelDegenerate();
  const CMatrix q = qr.householderQ();
  return ProjPoint(q.col(n));
}

struct InitialPair {
  PolySystem system;
  ProjPoint zero;
  double residual = 0.0;
  CMatrix linear_part;  // the n x (n+1) matrix M with M zero = 0
};

/// Random (system, zero) pair whose law is that of a Gaussian system with one
/// of its zeros chosen uniformly.  The linear part M is drawn first, the zero
/// is its kernel, and the remaining Gaussian coordinates are drawn in the
/// subspace of systems vanishing to second order at the zero.
inline InitialPair bp_initial_pair(const DegreeProfile& profile, CounterRng& rng) {
  const int n = profile.n();
  for (;;) {
    const CMatrix m = gaussian_matrix(n, n + 1, CMatrix(), 1.0, rng);
    std::optional<ProjPoint> zeta;
    try {
      zeta = kernel_vector(m);
    } catch (const KernelDegenerate&) {
      continue;
    }
    const PolySystem g = gaussian_system(profile, std::nullopt, 1.0, rng);
    PolySystem h = project_fiber(g, *zeta);

    // Remove the part of h that is linear at zeta and add sqrt(d_i) <z,zeta>^{d_i-1} (M z)_i.
    const CVector& z = zeta->rep();
    const CMatrix proj = CMatrix::Identity(n + 1, n + 1) - z * z.adjoint();
    const CMatrix dh = jacobian(h, z) * proj;
    for (int i = 0; i < n; ++i) {
      const int d = profile.degree(i);
      const HomogeneousPoly base = kernel_power(*zeta, d - 1);
      const CVector ell = dh.row(i).transpose() - std::sqrt(static_cast<double>(d)) * m.row(i).transpose();
      h[i] -= multiply(base, linear_form(ell));
    }

    ProjPoint x = *zeta;
    for (int k = 0; k < 2; ++k) {
      const LocalModel lm(h, x);
      if (lm.singular()) break;
      x = detail::newton_from(lm, x);
    }
    const double res = evaluate(h, x.rep()).norm();
    return InitialPair{std::move(h), x, res, m};
  }
}

}  // namespace condlen
