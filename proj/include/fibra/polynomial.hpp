#pragma once

// Dense univariate polynomials over an arbitrary coefficient ring.
//
// The coefficient type R must be copyable, constructible from an int
// (R(0), R(1)), and provide +, -, *, unary - and ==. Division-based
// algorithms (divmod, gcd, resultant) additionally need R to be a field.
// Coefficients are stored lowest degree first with no trailing zeros.

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fibra/arith.hpp"

namespace fibra {

template <class R>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<R> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(const R& constant) : c_{constant} { trim(); }

  static Polynomial monomial(const R& coeff, size_t deg) {
    std::vector<R> c(deg + 1, R(0));
    c[deg] = coeff;
    return Polynomial(std::move(c));
  }
  static Polynomial x() { return monomial(R(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  size_t size() const { return c_.size(); }
  const std::vector<R>& coefficients() const { return c_; }

  R coeff(size_t i) const { return i < c_.size() ? c_[i] : R(0); }
  const R& operator[](size_t i) const { return c_[i]; }
  const R& lc() const { return c_.back(); }

  void set_coeff(size_t i, const R& v) {
    if (i >= c_.size()) c_.resize(i + 1, R(0));
    c_[i] = v;
    trim();
  }

  Polynomial operator-() const {
    std::vector<R> c(c_.size(), R(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return Polynomial(std::move(c));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<R> c(a.c_.size() + b.c_.size() - 1, R(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == R(0)) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const R& s, const Polynomial& p) {
    std::vector<R> c(p.c_.size(), R(0));
    for (size_t i = 0; i < p.c_.size(); ++i) c[i] = s * p.c_[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& p, const R& s) { return s * p; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Evaluation by Horner's rule at any point type S with S * R -> S.
  template <class S>
  S evaluate(const S& x) const {
    S acc = S(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + S(c_[i]);
    return acc;
  }
  R operator()(const R& x) const { return evaluate<R>(x); }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<R> c(c_.size() - 1, R(0));
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = R(static_cast<long>(i)) * c_[i];
    return Polynomial(std::move(c));
  }

  /// f(g(x)).
  Polynomial compose(const Polynomial& g) const {
    Polynomial acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * g + Polynomial(c_[i]);
    return acc;
  }

  /// f(x + a).
  Polynomial shift(const R& a) const { return compose(Polynomial({a, R(1)})); }

  /// x^n f(1/x) with n = degree.
  Polynomial reversed() const {
    std::vector<R> c(c_.rbegin(), c_.rend());
    return Polynomial(std::move(c));
  }

  Polynomial pow(unsigned e) const {
    Polynomial r(R(1)), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  /// Lowest index with a nonzero coefficient.
  int order() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == R(0))) return static_cast<int>(i);
    return -1;
  }

  /// Truncate to terms of degree < n.
  Polynomial truncated(size_t n) const {
    std::vector<R> c(c_.begin(), c_.begin() + static_cast<long>(std::min(n, c_.size())));
    return Polynomial(std::move(c));
  }

  template <class F>
  auto map(F fn) const {
    using S = decltype(fn(std::declval<R>()));
    std::vector<S> c;
    c.reserve(c_.size());
    for (auto& x : c_) c.push_back(fn(x));
    return Polynomial<S>(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == R(0)) c_.pop_back();
  }
  std::vector<R> c_;
};

// Field algorithms.

template <class R>
std::pair<Polynomial<R>, Polynomial<R>> divmod(const Polynomial<R>& a, const Polynomial<R>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial<R>(), a};
  std::vector<R> rem = a.coefficients();
  std::vector<R> quo(static_cast<size_t>(a.degree() - b.degree() + 1), R(0));
  R inv = R(1) / b.lc();
  const auto& bc = b.coefficients();
  size_t db = static_cast<size_t>(b.degree());
  for (size_t k = quo.size(); k-- > 0;) {
    R q = rem[k + db] * inv;
    quo[k] = q;
    if (q == R(0)) continue;
    for (size_t j = 0; j <= db; ++j) rem[k + j] = rem[k + j] - q * bc[j];
  }
  rem.resize(db);
  return {Polynomial<R>(std::move(quo)), Polynomial<R>(std::move(rem))};
}

template <class R>
Polynomial<R> operator/(const Polynomial<R>& a, const Polynomial<R>& b) {
  return divmod(a, b).first;
}
template <class R>
Polynomial<R> operator%(const Polynomial<R>& a, const Polynomial<R>& b) {
  return divmod(a, b).second;
}

/// Quotient a/b, throwing if b does not divide a.
template <class R>
Polynomial<R> exact_quotient(const Polynomial<R>& a, const Polynomial<R>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

template <class R>
Polynomial<R> monic(const Polynomial<R>& a) {
  if (a.is_zero()) return a;
  return (R(1) / a.lc()) * a;
}

template <class R>
Polynomial<R> gcd(Polynomial<R> a, Polynomial<R> b) {
  while (!b.is_zero()) {
    Polynomial<R> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Returns (g, s, t) with s*a + t*b = g monic.
template <class R>
std::tuple<Polynomial<R>, Polynomial<R>, Polynomial<R>> extended_gcd(const Polynomial<R>& a,
                                                                     const Polynomial<R>& b) {
  Polynomial<R> r0 = a, r1 = b, s0(R(1)), s1, t0, t1(R(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial<R> s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  R inv = R(1) / r0.lc();
  return {inv * r0, inv * s0, inv * t0};
}

/// Resultant over a field via the Euclidean remainder sequence.
template <class R>
R resultant(Polynomial<R> f, Polynomial<R> g) {
  if (f.is_zero() || g.is_zero()) return R(0);
  R acc(1);
  while (true) {
    int m = f.degree(), n = g.degree();
    if (n == 0) {
      R lg = g.lc(), p(1);
      for (int i = 0; i < m; ++i) p = p * lg;
      return acc * p;
    }
    Polynomial<R> r = f % g;
    if (r.is_zero()) return R(0);
    if ((m % 2 == 1) && (n % 2 == 1)) acc = -acc;
    R lg = g.lc();
    for (int i = 0; i < m - r.degree(); ++i) acc = acc * lg;
    f = std::move(g);
    g = std::move(r);
  }
}

/// disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f).
template <class R>
R discriminant(const Polynomial<R>& f) {
  int n = f.degree();
  if (n < 1) return R(0);
  if (n == 1) return R(1);
  R r = resultant(f, f.derivative()) / f.lc();
  if ((n * (n - 1) / 2) % 2 == 1) r = -r;
  return r;
}

/// Yun's algorithm (characteristic zero): f = lc * prod_i s_i^i with s_i monic,
/// squarefree and pairwise coprime. Entry k of the result is s_{k+1}.
template <class R>
std::vector<Polynomial<R>> squarefree_decomposition(const Polynomial<R>& f) {
  std::vector<Polynomial<R>> out;
  if (f.degree() < 1) return out;
  Polynomial<R> fm = monic(f);
  Polynomial<R> d = fm.derivative();
  Polynomial<R> a = gcd(fm, d);
  Polynomial<R> b = exact_quotient(fm, a);
  Polynomial<R> c = exact_quotient(d, a);
  Polynomial<R> e = c - b.derivative();
  while (b.degree() > 0) {
    Polynomial<R> s = gcd(b, e);
    out.push_back(s);
    b = exact_quotient(b, s);
    c = exact_quotient(e, s);
    e = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

/// Monic radical f / gcd(f, f') in characteristic zero.
template <class R>
Polynomial<R> squarefree_part(const Polynomial<R>& f) {
  if (f.degree() < 1) return Polynomial<R>(R(1));
  return monic(exact_quotient(f, gcd(f, f.derivative())));
}

template <class R>
bool is_squarefree(const Polynomial<R>& f) {
  return f.degree() < 1 || gcd(f, f.derivative()).degree() == 0;
}

template <class R, class ToString>
std::string format_polynomial(const Polynomial<R>& p, const std::string& var, ToString fmt) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = p.size(); i-- > 0;) {
    if (p[i] == R(0)) continue;
    std::string c = fmt(p[i]);
    bool compound = c.find_first_of("+-", 1) != std::string::npos;
    bool neg = !compound && c[0] == '-';
    if (neg) c.erase(0, 1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (i == 0) {
      os << (compound && p.size() > 1 ? "(" + c + ")" : c);
      continue;
    }
    if (c != "1") os << (compound ? "(" + c + ")" : c) << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

}  // namespace fibra
