#pragma once

// Independent reference computations for the tests.  Nothing here reuses the
// library's power tables, multinomial cache or linear algebra helpers beyond
// plain Eigen.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "condlen/sampling.hpp"

namespace oracle {

using condlen::CMatrix;
using condlen::Complex;
using condlen::CVector;

inline double factorial(int k) { return std::tgamma(k + 1.0); }

// d! / prod alpha_j!
inline double multinomial(const std::vector<int>& alpha) {
  int d = 0;
  double den = 1.0;
  for (int a : alpha) {
    d += a;
    den *= factorial(a);
  }
  return factorial(d) / den;
}

// Term-by-term sum of c_alpha prod x_j^alpha_j with std::pow.
inline Complex naive_eval(const condlen::HomogeneousPoly& p, const CVector& x) {
  Complex s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto e = p.table().exponents(k);
    Complex term = p.coeffs()[static_cast<Eigen::Index>(k)];
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j] > 0) term *= std::pow(x[static_cast<Eigen::Index>(j)], e[j]);
    s += term;
  }
  return s;
}

inline CVector naive_eval(const condlen::PolySystem& f, const CVector& x) {
  CVector v(f.n());
  for (int i = 0; i < f.n(); ++i) v[i] = naive_eval(f[i], x);
  return v;
}

// sum_alpha |c_alpha|^2 / multinomial(alpha)
inline double naive_weyl_norm_sq(const condlen::PolySystem& f) {
  double s = 0.0;
  for (int i = 0; i < f.n(); ++i)
    for (std::size_t k = 0; k < f[i].size(); ++k) {
      const auto e = f[i].table().exponents(k);
      s += std::norm(f[i].coeffs()[static_cast<Eigen::Index>(k)]) / multinomial(std::vector<int>(e.begin(), e.end()));
    }
  return s;
}

// Central differences along each coordinate; f is holomorphic, so a real
// step suffices.
inline CMatrix fd_jacobian(const condlen::PolySystem& f, const CVector& x, double h = 1e-6) {
  CMatrix j(f.n(), x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    CVector xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    j.col(k) = (naive_eval(f, xp) - naive_eval(f, xm)) / (2.0 * h);
  }
  return j;
}

// Product of random Householder reflections and a random diagonal phase.
inline CMatrix random_unitary(int dim, condlen::CounterRng& rng) {
  CMatrix u = CMatrix::Identity(dim, dim);
  for (int r = 0; r < dim; ++r) {
    CVector v(dim);
    for (int k = 0; k < dim; ++k) v[k] = rng.complex_normal();
    v /= v.norm();
    u = (CMatrix::Identity(dim, dim) - 2.0 * v * v.adjoint()) * u;
  }
  for (int k = 0; k < dim; ++k) u.row(k) *= std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  return u;
}

inline double max_abs(const CMatrix& a) { return a.cwiseAbs().maxCoeff(); }

// Zeros of a binary form sum_k c_k X0^{d-k} X1^k, as points (1, t) with t a
// root of sum_k c_k t^k from companion-matrix eigenvalues, polished by three
// Newton steps.  Assumes the X1^d coefficient is nonzero.
inline std::vector<CVector> binary_form_zeros(const condlen::HomogeneousPoly& p) {
  const int d = p.degree();
  std::vector<Complex> c(static_cast<std::size_t>(d + 1));
  for (int k = 0; k <= d; ++k) c[static_cast<std::size_t>(k)] = p.coeff(condlen::MultiIndex{{d - k, k}});
  CMatrix comp = CMatrix::Zero(d, d);
  for (int r = 1; r < d; ++r) comp(r, r - 1) = 1.0;
  for (int r = 0; r < d; ++r) comp(r, d - 1) = -c[static_cast<std::size_t>(r)] / c[static_cast<std::size_t>(d)];
  Eigen::ComplexEigenSolver<CMatrix> es(comp);
  std::vector<CVector> out;
  for (int r = 0; r < d; ++r) {
    Complex t = es.eigenvalues()[r];
    for (int it = 0; it < 3; ++it) {
      Complex v = 0.0, dv = 0.0;
      for (int k = d; k >= 0; --k) {
        dv = dv * t + v;
        v = v * t + c[static_cast<std::size_t>(k)];
      }
      if (std::abs(dv) > 0.0) t -= v / dv;
    }
    CVector x(2);
    x << 1.0, t;
    out.push_back(x);
  }
  return out;
}

// Horizontal representative of x relative to the unit vector ref: unit norm
// and <x, ref> real positive.
inline CVector horizontal(const CVector& x, const CVector& ref) {
  CVector y = x / x.norm();
  const Complex p = ref.dot(y);  // conj(ref) . y
  return y * (std::conj(p) / std::abs(p));
}

}  // namespace oracle
