#pragma once

// Dense homogeneous polynomial systems over C with the Weyl (Bombieri-Weyl)
// Hermitian structure.
//
// A system f = (f_1, ..., f_n) lives in n+1 variables X_0..X_n.  Each
// component stores its coefficients in the monomial basis, indexed by all
// exponent vectors of its degree in graded-lexicographic order, descending on
// alpha_0 first.  The Weyl weights binom(d, alpha)^{-1} are applied on the fly
// by the inner product, so evaluation and differentiation stay weight free.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "condlen/errors.hpp"

namespace condlen {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

// Number of monomials of degree d in m variables.
inline std::size_t monomial_count(int m, int d) {
  if (m <= 0) return d == 0 ? 1 : 0;
  return static_cast<std::size_t>(binomial(d + m - 1, m - 1));
}

/// The tuple (n, d_1..d_n) together with its derived quantities: the maximum
/// degree D, the Bezout number (product of degrees) and the system size N,
/// the total number of monomial coefficients.
class DegreeProfile {
 public:
  DegreeProfile(int n, std::vector<int> degrees) : n_(n), degrees_(std::move(degrees)) {
    if (n_ < 1) throw InvalidArgument("degree profile: n must be >= 1");
    if (static_cast<int>(degrees_.size()) != n_)
      throw InvalidArgument("degree profile: expected " + std::to_string(n_) + " degrees, got " +
                            std::to_string(degrees_.size()));
    for (int d : degrees_)
      if (d < 1) throw InvalidArgument("degree profile: degrees must be >= 1");
  }

  int n() const { return n_; }
  int num_vars() const { return n_ + 1; }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(int i) const { return degrees_[static_cast<std::size_t>(i)]; }

  int max_degree() const { return *std::max_element(degrees_.begin(), degrees_.end()); }

  std::int64_t bezout() const {
    std::int64_t b = 1;
    for (int d : degrees_) b *= d;
    return b;
  }

  std::size_t size() const {
    std::size_t total = 0;
    for (int d : degrees_) total += static_cast<std::size_t>(binomial(n_ + d, n_));
    return total;
  }

  bool operator==(const DegreeProfile&) const = default;

 private:
  int n_;
  std::vector<int> degrees_;
};

struct MultiIndex {
  std::vector<int> exponents;

  int degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }
  auto operator<=>(const MultiIndex&) const = default;
};

namespace detail {

inline void enumerate_into(int var, int remaining, std::vector<int>& current,
                           std::vector<MultiIndex>& out) {
  const int last = static_cast<int>(current.size()) - 1;
  if (var == last) {
    current[static_cast<std::size_t>(var)] = remaining;
    out.push_back({current});
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[static_cast<std::size_t>(var)] = e;
    enumerate_into(var + 1, remaining - e, current, out);
  }
}

}  // namespace detail

/// All exponent vectors of length n+1 and total degree d, graded-lex order
/// with alpha_0 descending first.
inline std::vector<MultiIndex> enumerate_monomials(int n, int d) {
  if (n < 0 || d < 0) throw InvalidArgument("enumerate_monomials: n and d must be >= 0");
  std::vector<MultiIndex> out;
  out.reserve(monomial_count(n + 1, d));
  std::vector<int> current(static_cast<std::size_t>(n + 1), 0);
  detail::enumerate_into(0, d, current, out);
  return out;
}

/// Exponent table and multinomial weights for one (n, d).  Shared between all
/// polynomials of the same shape through MonomialTable::get.
class MonomialTable {
 public:
  MonomialTable(int n, int d) : n_(n), d_(d) {
    const auto list = enumerate_monomials(n, d);
    count_ = list.size();
    exponents_.reserve(count_ * static_cast<std::size_t>(n + 1));
    multinomial_.reserve(count_);
    for (const auto& m : list) {
      double w = std::tgamma(d + 1.0);
      for (int e : m.exponents) {
        exponents_.push_back(e);
        w /= std::tgamma(e + 1.0);
      }
      multinomial_.push_back(std::round(w));
    }
  }

  static std::shared_ptr<const MonomialTable> get(int n, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialTable>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{n, d}];
    if (!slot) slot = std::make_shared<const MonomialTable>(n, d);
    return slot;
  }

  int n() const { return n_; }
  int num_vars() const { return n_ + 1; }
  int degree() const { return d_; }
  std::size_t size() const { return count_; }

  std::span<const int> exponents(std::size_t k) const {
    return {exponents_.data() + k * static_cast<std::size_t>(n_ + 1),
            static_cast<std::size_t>(n_ + 1)};
  }
  // binom(d, alpha) = d! / (alpha_0! ... alpha_n!)
  double multinomial(std::size_t k) const { return multinomial_[k]; }

  /// Position of alpha in the ordering; throws if alpha has the wrong length,
  /// a negative entry or the wrong total degree.
  std::size_t rank(std::span<const int> alpha) const {
    if (static_cast<int>(alpha.size()) != n_ + 1)
      throw InvalidArgument("exponent vector has length " + std::to_string(alpha.size()) +
                            ", expected " + std::to_string(n_ + 1));
    int total = 0;
    for (int e : alpha) {
      if (e < 0) throw InvalidArgument("negative exponent");
      total += e;
    }
    if (total != d_)
      throw InvalidArgument("exponent vector has degree " + std::to_string(total) +
                            ", expected " + std::to_string(d_));
    std::size_t r = 0;
    int remaining = d_;
    for (int j = 0; j < n_; ++j) {
      const int vars_after = n_ - j;
      for (int k = alpha[static_cast<std::size_t>(j)] + 1; k <= remaining; ++k)
        r += monomial_count(vars_after, remaining - k);
      remaining -= alpha[static_cast<std::size_t>(j)];
    }
    return r;
  }

 private:
  int n_;
  int d_;
  std::size_t count_ = 0;
  std::vector<int> exponents_;
  std::vector<double> multinomial_;
};

/// Unit-norm representative of a point of P(C^{n+1}).  The first coordinate
/// of largest modulus is made real and nonnegative (ties go to the lowest
/// index), so equal projective points have bitwise-equal representatives up
/// to rounding.
class ProjPoint {
 public:
  explicit ProjPoint(const CVector& v) : rep_(v) {
    const double nrm = rep_.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw InvalidArgument("ProjPoint: zero or non-finite vector");
    rep_ /= nrm;
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index k = 0; k < rep_.size(); ++k) {
      const double a = std::abs(rep_[k]);
      if (a > best_abs) {
        best_abs = a;
        best = k;
      }
    }
    const Complex c = rep_[best];
    rep_ *= std::conj(c) / std::abs(c);
    rep_[best] = Complex(std::abs(rep_[best]), 0.0);
  }

  static ProjPoint basis(int num_vars, int k) {
    return ProjPoint(CVector::Unit(num_vars, k));
  }

  const CVector& rep() const { return rep_; }
  int num_vars() const { return static_cast<int>(rep_.size()); }
  Complex operator[](Eigen::Index k) const { return rep_[k]; }

 private:
  CVector rep_;
};

namespace detail {

// powers(j, k) = x_j^k for k = 0..max_degree
inline CMatrix power_table(const CVector& x, int max_degree) {
  CMatrix p(x.size(), max_degree + 1);
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    p(j, 0) = 1.0;
    for (int k = 1; k <= max_degree; ++k) p(j, k) = p(j, k - 1) * x[j];
  }
  return p;
}

}  // namespace detail

class HomogeneousPoly {
 public:
  // Zero polynomial of degree d in n+1 variables.
  HomogeneousPoly(int n, int d)
      : table_(MonomialTable::get(n, d)), coeffs_(CVector::Zero(static_cast<Eigen::Index>(table_->size()))) {}

  HomogeneousPoly(std::shared_ptr<const MonomialTable> table, CVector coeffs)
      : table_(std::move(table)), coeffs_(std::move(coeffs)) {
    if (static_cast<std::size_t>(coeffs_.size()) != table_->size())
      throw InvalidArgument("coefficient vector has wrong length");
  }

  int n() const { return table_->n(); }
  int degree() const { return table_->degree(); }
  std::size_t size() const { return table_->size(); }
  const MonomialTable& table() const { return *table_; }
  const std::shared_ptr<const MonomialTable>& table_ptr() const { return table_; }

  const CVector& coeffs() const { return coeffs_; }
  CVector& coeffs() { return coeffs_; }

  Complex coeff(const MultiIndex& a) const { return coeffs_[static_cast<Eigen::Index>(table_->rank(a.exponents))]; }
  Complex& coeff(const MultiIndex& a) { return coeffs_[static_cast<Eigen::Index>(table_->rank(a.exponents))]; }

  HomogeneousPoly& operator+=(const HomogeneousPoly& o) {
    check_shape(o);
    coeffs_ += o.coeffs_;
    return *this;
  }
  HomogeneousPoly& operator-=(const HomogeneousPoly& o) {
    check_shape(o);
    coeffs_ -= o.coeffs_;
    return *this;
  }
  HomogeneousPoly& operator*=(Complex s) {
    coeffs_ *= s;
    return *this;
  }

 private:
  void check_shape(const HomogeneousPoly& o) const {
    if (o.n() != n() || o.degree() != degree()) throw ProfileMismatch();
  }

  std::shared_ptr<const MonomialTable> table_;
  CVector coeffs_;
};

inline HomogeneousPoly operator+(HomogeneousPoly a, const HomogeneousPoly& b) { return a += b; }
inline HomogeneousPoly operator-(HomogeneousPoly a, const HomogeneousPoly& b) { return a -= b; }
inline HomogeneousPoly operator*(Complex s, HomogeneousPoly a) { return a *= s; }

inline Complex evaluate(const HomogeneousPoly& p, const CVector& x) {
  const auto& t = p.table();
  if (x.size() != t.num_vars()) throw InvalidArgument("evaluate: point has wrong dimension");
  const CMatrix pw = detail::power_table(x, t.degree());
  Complex sum = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const Complex c = p.coeffs()[static_cast<Eigen::Index>(k)];
    if (c == Complex(0.0)) continue;
    const auto a = t.exponents(k);
    Complex term = c;
    for (std::size_t j = 0; j < a.size(); ++j) term *= pw(static_cast<Eigen::Index>(j), a[j]);
    sum += term;
  }
  return sum;
}

/// Weyl inner product <p, q> = sum_alpha binom(d, alpha)^{-1} p_alpha conj(q_alpha).
inline Complex weyl_inner(const HomogeneousPoly& p, const HomogeneousPoly& q) {
  if (p.n() != q.n() || p.degree() != q.degree()) throw ProfileMismatch();
  const auto& t = p.table();
  Complex s = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    s += p.coeffs()[i] * std::conj(q.coeffs()[i]) / t.multinomial(k);
  }
  return s;
}

inline HomogeneousPoly multiply(const HomogeneousPoly& p, const HomogeneousPoly& q) {
  if (p.n() != q.n()) throw ProfileMismatch();
  HomogeneousPoly out(p.n(), p.degree() + q.degree());
  const auto& tp = p.table();
  const auto& tq = q.table();
  const auto& to = out.table();
  std::vector<int> sum(static_cast<std::size_t>(p.n() + 1));
  for (std::size_t a = 0; a < tp.size(); ++a) {
    const Complex ca = p.coeffs()[static_cast<Eigen::Index>(a)];
    if (ca == Complex(0.0)) continue;
    const auto ea = tp.exponents(a);
    for (std::size_t b = 0; b < tq.size(); ++b) {
      const Complex cb = q.coeffs()[static_cast<Eigen::Index>(b)];
      if (cb == Complex(0.0)) continue;
      const auto eb = tq.exponents(b);
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = ea[j] + eb[j];
      out.coeffs()[static_cast<Eigen::Index>(to.rank(sum))] += ca * cb;
    }
  }
  return out;
}

/// The linear form z -> sum_j coeffs_j z_j as a degree-1 polynomial.
inline HomogeneousPoly linear_form(const CVector& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  return HomogeneousPoly(MonomialTable::get(n, 1), coeffs);
}

class PolySystem {
 public:
  explicit PolySystem(DegreeProfile profile) : profile_(std::move(profile)) {
    comps_.reserve(static_cast<std::size_t>(profile_.n()));
    for (int d : profile_.degrees()) comps_.emplace_back(profile_.n(), d);
  }

  PolySystem(DegreeProfile profile, std::vector<HomogeneousPoly> comps)
      : profile_(std::move(profile)), comps_(std::move(comps)) {
    if (static_cast<int>(comps_.size()) != profile_.n())
      throw InvalidArgument("system has wrong number of components");
    for (int i = 0; i < profile_.n(); ++i)
      if (comps_[static_cast<std::size_t>(i)].n() != profile_.n() ||
          comps_[static_cast<std::size_t>(i)].degree() != profile_.degree(i))
        throw ProfileMismatch("component " + std::to_string(i) + " does not match the profile");
  }

  const DegreeProfile& profile() const { return profile_; }
  int n() const { return profile_.n(); }
  int num_vars() const { return profile_.n() + 1; }

  const HomogeneousPoly& operator[](int i) const { return comps_[static_cast<std::size_t>(i)]; }
  HomogeneousPoly& operator[](int i) { return comps_[static_cast<std::size_t>(i)]; }
  const std::vector<HomogeneousPoly>& components() const { return comps_; }

  PolySystem& operator+=(const PolySystem& o) {
    check(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  PolySystem& operator-=(const PolySystem& o) {
    check(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
  }
  PolySystem& operator*=(Complex s) {
    for (auto& c : comps_) c *= s;
    return *this;
  }

 private:
  void check(const PolySystem& o) const {
    if (!(o.profile_ == profile_)) throw ProfileMismatch();
  }

  DegreeProfile profile_;
  std::vector<HomogeneousPoly> comps_;
};

inline PolySystem operator+(PolySystem a, const PolySystem& b) { return a += b; }
inline PolySystem operator-(PolySystem a, const PolySystem& b) { return a -= b; }
inline PolySystem operator*(Complex s, PolySystem a) { return a *= s; }
inline PolySystem operator*(double s, PolySystem a) { return a *= Complex(s); }

/// a * f + b * g, the workhorse of great-circle evaluation.
inline PolySystem combine(double a, const PolySystem& f, double b, const PolySystem& g) {
  if (!(f.profile() == g.profile())) throw ProfileMismatch();
  PolySystem out = f;
  for (int i = 0; i < f.n(); ++i) out[i].coeffs() = a * f[i].coeffs() + b * g[i].coeffs();
  return out;
}

inline CVector evaluate(const PolySystem& f, const CVector& x) {
  if (x.size() != f.num_vars()) throw InvalidArgument("evaluate: point has wrong dimension");
  const CMatrix pw = detail::power_table(x, f.profile().max_degree());
  CVector out(f.n());
  for (int i = 0; i < f.n(); ++i) {
    const auto& p = f[i];
    const auto& t = p.table();
    Complex sum = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const auto a = t.exponents(k);
      Complex term = p.coeffs()[static_cast<Eigen::Index>(k)];
      for (std::size_t j = 0; j < a.size(); ++j) term *= pw(static_cast<Eigen::Index>(j), a[j]);
      sum += term;
    }
    out[i] = sum;
  }
  return out;
}

/// Values f(x) and the n x (n+1) Jacobian Df(x) in one pass.
inline void evaluate_with_jacobian(const PolySystem& f, const CVector& x, CVector& values, CMatrix& jac) {
  const int nv = f.num_vars();
  if (x.size() != nv) throw InvalidArgument("evaluate: point has wrong dimension");
  const CMatrix pw = detail::power_table(x, f.profile().max_degree());
  values.setZero(f.n());
  jac.setZero(f.n(), nv);
  for (int i = 0; i < f.n(); ++i) {
    const auto& p = f[i];
    const auto& t = p.table();
    for (std::size_t k = 0; k < t.size(); ++k) {
      const Complex c = p.coeffs()[static_cast<Eigen::Index>(k)];
      if (c == Complex(0.0)) continue;
      const auto a = t.exponents(k);
      Complex term = c;
      for (int j = 0; j < nv; ++j) term *= pw(j, a[static_cast<std::size_t>(j)]);
      values[i] += term;
      for (int m = 0; m < nv; ++m) {
        const int am = a[static_cast<std::size_t>(m)];
        if (am == 0) continue;
        Complex d = c * static_cast<double>(am) * pw(m, am - 1);
        for (int j = 0; j < nv; ++j)
          if (j != m) d *= pw(j, a[static_cast<std::size_t>(j)]);
        jac(i, m) += d;
      }
    }
  }
}

inline CMatrix jacobian(const PolySystem& f, const CVector& x) {
  CVector v;
  CMatrix j;
  evaluate_with_jacobian(f, x, v, j);
  return j;
}

inline Complex weyl_inner(const PolySystem& f, const PolySystem& g) {
  if (!(f.profile() == g.profile())) throw ProfileMismatch();
  Complex s = 0.0;
  for (int i = 0; i < f.n(); ++i) s += weyl_inner(f[i], g[i]);
  return s;
}

inline double weyl_norm(const HomogeneousPoly& p) { return std::sqrt(std::max(0.0, weyl_inner(p, p).real())); }
inline double weyl_norm(const PolySystem& f) { return std::sqrt(std::max(0.0, weyl_inner(f, f).real())); }

inline PolySystem normalized(const PolySystem& f) {
  const double nrm = weyl_norm(f);
  if (!(nrm > 0.0)) throw InvalidArgument("cannot normalize the zero system");
  return Complex(1.0 / nrm) * f;
}

/// Component i is a_i <z, zeta>^{d_i}: the reproducing kernel of H_{d_i}
/// at zeta, scaled by a_i.  Coefficient of z^alpha is a_i binom(d_i, alpha) conj(zeta)^alpha.
inline PolySystem kernel_system(const ProjPoint& zeta, const DegreeProfile& profile, const CVector& a) {
  if (zeta.num_vars() != profile.num_vars()) throw InvalidArgument("kernel_system: dimension mismatch");
  if (a.size() != profile.n()) throw InvalidArgument("kernel_system: scale vector must have length n");
  PolySystem out(profile);
  const CMatrix pw = detail::power_table(zeta.rep().conjugate(), profile.max_degree());
  for (int i = 0; i < profile.n(); ++i) {
    auto& p = out[i];
    const auto& t = p.table();
    for (std::size_t k = 0; k < t.size(); ++k) {
      const auto e = t.exponents(k);
      Complex m = a[i] * t.multinomial(k);
      for (std::size_t j = 0; j < e.size(); ++j) m *= pw(static_cast<Eigen::Index>(j), e[j]);
      p.coeffs()[static_cast<Eigen::Index>(k)] = m;
    }
  }
  return out;
}

/// Orthogonal projection of f onto the fiber {g : g(zeta) = 0}.
inline PolySystem project_fiber(const PolySystem& f, const ProjPoint& zeta) {
  return f - kernel_system(zeta, f.profile(), evaluate(f, zeta.rep()));
}

/// The substituted system x -> f(A x) for a square matrix A, expanded back
/// into the monomial basis.  For unitary U, f o U^{-1} = compose_linear(f, U^*).
inline PolySystem compose_linear(const PolySystem& f, const CMatrix& a) {
  const int nv = f.num_vars();
  if (a.rows() != nv || a.cols() != nv) throw InvalidArgument("compose_linear: matrix has wrong shape");
  const int n = f.n();
  const int dmax = f.profile().max_degree();
  // forms[j][k] = (row_j(A) . x)^k
  std::vector<std::vector<HomogeneousPoly>> forms(static_cast<std::size_t>(nv));
  for (int j = 0; j < nv; ++j) {
    auto& fj = forms[static_cast<std::size_t>(j)];
    HomogeneousPoly one(n, 0);
    one.coeffs()[0] = 1.0;
    fj.push_back(one);
    const HomogeneousPoly row = linear_form(a.row(j).transpose());
    for (int k = 1; k <= dmax; ++k) fj.push_back(multiply(fj.back(), row));
  }
  PolySystem out(f.profile());
  for (int i = 0; i < n; ++i) {
    const auto& t = f[i].table();
    for (std::size_t k = 0; k < t.size(); ++k) {
      const Complex c = f[i].coeffs()[static_cast<Eigen::Index>(k)];
      if (c == Complex(0.0)) continue;
      const auto e = t.exponents(k);
      HomogeneousPoly term = forms[0][static_cast<std::size_t>(e[0])];
      for (int j = 1; j < nv; ++j)
        term = multiply(term, forms[static_cast<std::size_t>(j)][static_cast<std::size_t>(e[static_cast<std::size_t>(j)])]);
      term *= c;
      out[i] += term;
    }
  }
  return out;
}

}  // namespace condlen
