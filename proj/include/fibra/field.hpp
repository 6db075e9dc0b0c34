#pragma once

// The base field K = Q or Q(sqrt d), its elements, and exact archimedean sizes.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fibra/arith.hpp"
#include "fibra/errors.hpp"

namespace fibra {

/// Element a + b*sqrt(d). d == 0 marks a plain rational that adapts to
/// whatever field it is combined with.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(int v) : a_(v) {}
  FieldElement(long v) : a_(v) {}
  FieldElement(const Integer& v) : a_(v) {}
  FieldElement(const Rational& v) : a_(v) {}
  FieldElement(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d_ == 0 && b_ != 0) throw std::invalid_argument("irrational part without radicand");
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long d() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  FieldElement conjugate() const { return {a_, -b_, d_}; }
  /// a^2 - d b^2: the product of both conjugates.
  Rational conj_product() const { return a_ * a_ - Rational(d_) * b_ * b_; }

  FieldElement operator-() const { return {-a_, -b_, d_}; }
  friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    return {x.a_ + y.a_, x.b_ + y.b_, common_d(x, y)};
  }
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y) {
    return {x.a_ - y.a_, x.b_ - y.b_, common_d(x, y)};
  }
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    long d = common_d(x, y);
    if (x.b_ == 0) return {x.a_ * y.a_, x.a_ * y.b_, d};
    if (y.b_ == 0) return {x.a_ * y.a_, x.b_ * y.a_, d};
    return {x.a_ * y.a_ + Rational(d) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d};
  }
  FieldElement inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (b_ == 0) return {Rational(1) / a_, Rational(0), d_};
    Rational n = conj_product();
    return {a_ / n, -b_ / n, d_};
  }
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y) {
    if (y.b_ == 0) {
      if (y.a_ == 0) throw std::domain_error("division by zero");
      return {x.a_ / y.a_, x.b_ / y.a_, common_d(x, y)};
    }
    return x * y.inverse();
  }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }
  /// Lexicographic on (a, b); for containers only, not the size ordering.
  friend bool operator<(const FieldElement& x, const FieldElement& y) {
    if (x.a_ != y.a_) return x.a_ < y.a_;
    return x.b_ < y.b_;
  }

  FieldElement pow(long e) const {
    FieldElement r(1), base = *this;
    if (e < 0) {
      base = base.inverse();
      e = -e;
    }
    while (e > 0) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  std::string str() const {
    if (b_ == 0) return to_string(a_);
    std::string rad = d_ == -1 ? "i" : "sqrt(" + std::to_string(d_) + ")";
    std::string bs;
    Rational babs = abs(b_);
    if (babs != 1) bs = to_string(babs) + "*";
    std::string out;
    if (a_ != 0) out = to_string(a_) + (b_ < 0 ? " - " : " + ");
    else if (b_ < 0) out = "-";
    return out + bs + rad;
  }

 private:
  static long common_d(const FieldElement& x, const FieldElement& y) {
    if (x.d_ == y.d_) return x.d_;
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0) return x.d_;
    throw std::invalid_argument("elements of different fields");
  }

  Rational a_{0}, b_{0};
  long d_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.str(); }

class NumberField {
 public:
  NumberField() = default;
  static NumberField rational() { return NumberField(); }
  static NumberField quadratic(long d) {
    if (d == 0 || d == 1 || !is_squarefree(Integer(d)))
      throw Error(ErrorKind::InvalidInput, "d must be squarefree and not 0 or 1");
    NumberField k;
    k.d_ = d;
    return k;
  }

  bool is_rational() const { return d_ == 0; }
  bool is_quadratic() const { return d_ != 0; }
  long d() const { return d_; }
  int degree() const { return d_ == 0 ? 1 : 2; }
  bool is_real() const { return d_ >= 0; }
  bool is_imaginary() const { return d_ < 0; }
  Integer discriminant() const {
    if (d_ == 0) return 1;
    return mod(Integer(d_), 4) == 1 ? Integer(d_) : Integer(4 * d_);
  }
  bool omega_is_half() const { return d_ != 0 && mod(Integer(d_), 4) == 1; }

  FieldElement element(const Rational& a, const Rational& b = 0) const {
    if (d_ == 0) {
      if (b != 0) throw std::invalid_argument("irrational element of Q");
      return FieldElement(a);
    }
    return FieldElement(a, b, d_);
  }
  FieldElement embed(const FieldElement& x) const {
    if (x.d() != 0 && x.d() != d_) throw std::invalid_argument("element not in field");
    return element(x.a(), x.b());
  }
  FieldElement sqrt_d() const { return element(0, 1); }
  /// Second generator of the maximal order.
  FieldElement omega() const {
    if (d_ == 0) return element(0);
    return omega_is_half() ? element(Rational(1, 2), Rational(1, 2)) : element(0, 1);
  }
  /// omega^2 = omega_trace * omega - omega_norm.
  Integer omega_trace() const { return omega_is_half() ? 1 : 0; }
  Integer omega_norm() const {
    if (d_ == 0) return 0;
    return omega_is_half() ? Integer((1 - d_) / 4) : Integer(-d_);
  }

  std::string str() const { return d_ == 0 ? "Q" : "Q(sqrt(" + std::to_string(d_) + "))"; }
  friend bool operator==(const NumberField& x, const NumberField& y) { return x.d_ == y.d_; }
  friend bool operator!=(const NumberField& x, const NumberField& y) { return x.d_ != y.d_; }

 private:
  long d_ = 0;
};

inline Rational norm(const NumberField& K, const FieldElement& x) {
  if (K.is_rational()) return x.a();
  return x.a() * x.a() - Rational(K.d()) * x.b() * x.b();
}

inline Rational trace(const NumberField& K, const FieldElement& x) {
  return K.is_rational() ? x.a() : Rational(2 * x.a());
}

/// Coordinates (x0, x1) with x = x0 + x1*omega.
inline std::pair<Rational, Rational> coordinates(const NumberField& K, const FieldElement& x) {
  if (K.is_rational()) return {x.a(), Rational(0)};
  if (K.omega_is_half()) return {x.a() - x.b(), Rational(2 * x.b())};
  return {x.a(), x.b()};
}

inline FieldElement from_coordinates(const NumberField& K, const Rational& x0, const Rational& x1) {
  return K.element(x0) + K.omega() * K.element(x1);
}

inline bool is_integral(const NumberField& K, const FieldElement& x) {
  auto [x0, x1] = coordinates(K, x);
  return is_integer(x0) && is_integer(x1);
}

/// A square root of x in K, if there is one.
inline std::optional<FieldElement> sqrt_in_field(const NumberField& K, const FieldElement& x) {
  if (K.is_rational() || x.b() == 0) {
    if (auto r = rational_sqrt(x.a())) return K.element(*r);
    if (K.is_rational()) return std::nullopt;
    if (auto r = rational_sqrt(x.a() / Rational(K.d()))) return FieldElement(0, *r, K.d());
    return std::nullopt;
  }
  // (c + e sqrt d)^2 = x forces c^2 + d e^2 = a and c^2 - d e^2 = +-sqrt(N x)
  auto n = rational_sqrt(norm(K, x));
  if (!n) return std::nullopt;
  for (int s : {1, -1}) {
    auto c = rational_sqrt((x.a() + s * *n) / 2);
    auto e = rational_sqrt((x.a() - s * *n) / Rational(2 * K.d()));
    if (!c || !e) continue;
    FieldElement y(*c, *e, K.d());
    if (y * y == x) return y;
    FieldElement z(*c, -*e, K.d());
    if (z * z == x) return z;
  }
  return std::nullopt;
}

/// Exact real number sum c_i sqrt(r_i) with integer radicands r_i >= 1.
/// Normal form: radicand 1 holds the rational part, no other radicand is a
/// square, and no two radicands have a square product, so the sqrt(r_i) are
/// linearly independent over Q and the value is zero iff every c_i is.
class RadicalSum {
 public:
  RadicalSum() = default;
  RadicalSum(const Rational& q) { add(q, Integer(1)); }
  RadicalSum(int q) : RadicalSum(Rational(q)) {}

  /// c * sqrt(q) for rational q >= 0.
  static RadicalSum sqrt_of(const Rational& q, const Rational& c = 1) {
    if (q < 0) throw std::domain_error("sqrt of negative");
    RadicalSum s;
    // sqrt(n/m) = sqrt(n m) / m
    s.add(c / Rational(q.get_den()), Integer(q.get_num() * q.get_den()));
    return s;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].second == 1); }
  Rational rational_part() const {
    for (auto& [c, r] : terms_)
      if (r == 1) return c;
    return 0;
  }
  const std::vector<std::pair<Rational, Integer>>& terms() const { return terms_; }

  RadicalSum operator-() const {
    RadicalSum s = *this;
    for (auto& t : s.terms_) t.first = -t.first;
    return s;
  }
  friend RadicalSum operator+(RadicalSum x, const RadicalSum& y) {
    for (auto& [c, r] : y.terms_) x.add(c, r);
    return x;
  }
  friend RadicalSum operator-(const RadicalSum& x, const RadicalSum& y) { return x + (-y); }
  friend RadicalSum operator*(const RadicalSum& x, const RadicalSum& y) {
    RadicalSum s;
    for (auto& [c1, r1] : x.terms_)
      for (auto& [c2, r2] : y.terms_) s.add(c1 * c2, Integer(r1 * r2));
    return s;
  }

  /// Rational interval [lo, hi] of width at most 2^-bits * sum|c_i|.
  std::pair<Rational, Rational> interval(unsigned long bits) const {
    Rational lo = 0, hi = 0;
    Integer scale = ipow(2, bits);
    for (auto& [c, r] : terms_) {
      if (r == 1) {
        lo += c;
        hi += c;
        continue;
      }
      Integer s = isqrt(Integer(r * scale * scale));
      Rational l(s, scale), h(Integer(s + 1), scale);
      l.canonicalize();
      h.canonicalize();
      if (c > 0) {
        lo += c * l;
        hi += c * h;
      } else {
        lo += c * h;
        hi += c * l;
      }
    }
    return {lo, hi};
  }

  int sign() const {
    if (terms_.empty()) return 0;
    if (terms_.size() == 1) return sgn(terms_[0].first);
    if (terms_.size() == 2) {
      const auto& [c1, r1] = terms_[0];
      const auto& [c2, r2] = terms_[1];
      int s1 = sgn(c1), s2 = sgn(c2);
      if (s1 == s2) return s1;
      Rational q1 = c1 * c1 * Rational(r1), q2 = c2 * c2 * Rational(r2);
      return q1 > q2 ? s1 : s2;
    }
    for (unsigned long bits = 32;; bits *= 2) {
      auto [lo, hi] = interval(bits);
      if (lo > 0) return 1;
      if (hi < 0) return -1;
    }
  }

  double to_double() const {
    auto [lo, hi] = interval(64);
    return Rational((lo + hi) / 2).get_d();
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [c, r] : terms_) {
      Rational ac = first ? c : abs(c);
      if (!first) out += c < 0 ? " - " : " + ";
      first = false;
      if (r == 1) {
        out += to_string(ac);
        continue;
      }
      if (ac == -1) out += "-";
      else if (ac != 1) out += to_string(ac) + "*";
      out += "sqrt(" + r.get_str() + ")";
    }
    return out;
  }

 private:
  void add(const Rational& c, const Integer& r) {
    if (c == 0) return;
    Integer rad = r;
    Rational coef = c;
    if (rad != 1 && is_square(rad)) {
      coef *= Rational(isqrt(rad));
      rad = 1;
    }
    for (size_t i = 0; i < terms_.size(); ++i) {
      auto& [c2, r2] = terms_[i];
      Integer prod = rad * r2;
      if (!is_square(prod)) continue;
      // sqrt(rad) = sqrt(rad r2) / r2 * sqrt(r2)
      c2 += coef * make_rational(isqrt(prod), r2);
      c2.canonicalize();
      if (c2 == 0) terms_.erase(terms_.begin() + static_cast<long>(i));
      return;
    }
    terms_.emplace_back(coef, rad);
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& x, const auto& y) { return x.second < y.second; });
  }

  std::vector<std::pair<Rational, Integer>> terms_;
};

/// Nonnegative real base^(1/root) with base a RadicalSum and root >= 1.
class SizeValue {
 public:
  SizeValue() = default;
  SizeValue(const Rational& q) : base_(abs(q)) {}
  SizeValue(int q) : SizeValue(Rational(q)) {}
  SizeValue(RadicalSum base, int root) : base_(std::move(base)), root_(root) {
    if (base_.sign() < 0) throw std::domain_error("negative size base");
    if (root_ < 1) throw std::domain_error("bad root");
  }
  /// q^(1/root).
  static SizeValue root_of(const Rational& q, int root) { return SizeValue(RadicalSum(q), root); }

  const RadicalSum& base() const { return base_; }
  int root() const { return root_; }

  /// base raised so that its root becomes target (target a multiple of root).
  RadicalSum lifted(int target) const {
    RadicalSum r(1);
    for (int i = 0; i < target / root_; ++i) r = r * base_;
    return r;
  }

  friend int compare(const SizeValue& x, const SizeValue& y) {
    int l = std::lcm(x.root_, y.root_);
    return (x.lifted(l) - y.lifted(l)).sign();
  }
  friend bool operator<(const SizeValue& x, const SizeValue& y) { return compare(x, y) < 0; }
  friend bool operator<=(const SizeValue& x, const SizeValue& y) { return compare(x, y) <= 0; }
  friend bool operator>(const SizeValue& x, const SizeValue& y) { return compare(x, y) > 0; }
  friend bool operator>=(const SizeValue& x, const SizeValue& y) { return compare(x, y) >= 0; }
  friend bool operator==(const SizeValue& x, const SizeValue& y) { return compare(x, y) == 0; }
  friend bool operator!=(const SizeValue& x, const SizeValue& y) { return compare(x, y) != 0; }

  friend SizeValue operator*(const SizeValue& x, const SizeValue& y) {
    int l = std::lcm(x.root_, y.root_);
    return SizeValue(x.lifted(l) * y.lifted(l), l);
  }
  /// Sum; needs each operand to be a RadicalSum or the square root of a rational.
  friend SizeValue operator+(const SizeValue& x, const SizeValue& y) {
    return SizeValue(x.as_radical() + y.as_radical(), 1);
  }
  RadicalSum as_radical() const {
    if (root_ == 1) return base_;
    if (root_ == 2 && base_.is_rational()) return RadicalSum::sqrt_of(base_.rational_part());
    throw std::domain_error("size value is not a radical sum");
  }
  SizeValue pow(int e) const {
    RadicalSum r(1);
    for (int i = 0; i < e; ++i) r = r * base_;
    return SizeValue(r, root_);
  }
  /// Inverse; only for rational bases or single radical terms.
  SizeValue inverse() const {
    if (base_.is_rational()) return SizeValue(RadicalSum(Rational(1) / base_.rational_part()), root_);
    if (base_.terms().size() == 1) {
      auto [c, r] = base_.terms()[0];
      return SizeValue(RadicalSum::sqrt_of(Rational(1) / Rational(r), Rational(1) / c), root_);
    }
    throw std::domain_error("inverse of compound size");
  }

  double to_double() const { return std::pow(base_.to_double(), 1.0 / root_); }

  std::string str() const {
    if (root_ == 1) return base_.str();
    std::string b = base_.str();
    if (base_.terms().size() > 1 || b.find('/') != std::string::npos) b = "(" + b + ")";
    return b + "^(1/" + std::to_string(root_) + ")";
  }

 private:
  RadicalSum base_{0};
  int root_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const SizeValue& s) { return os << s.str(); }

/// |sigma(x)| for both real embeddings (Q or real quadratic K).
inline std::pair<RadicalSum, RadicalSum> real_abs_embeddings(const NumberField& K,
                                                              const FieldElement& x) {
  RadicalSum s1 = RadicalSum(x.a()) + RadicalSum::sqrt_of(Rational(K.d()), x.b());
  RadicalSum s2 = RadicalSum(x.a()) - RadicalSum::sqrt_of(Rational(K.d()), x.b());
  if (s1.sign() < 0) s1 = -s1;
  if (s2.sign() < 0) s2 = -s2;
  return {s1, s2};
}

inline SizeValue size(const NumberField& K, const FieldElement& x) {
  if (K.is_rational() || x.is_rational()) return SizeValue(abs(x.a()));
  if (K.is_imaginary()) return SizeValue::root_of(norm(K, x), 2);
  return SizeValue(RadicalSum(abs(x.a())) + RadicalSum::sqrt_of(Rational(K.d()), abs(x.b())), 1);
}

inline SizeValue lsize(const NumberField& K, const FieldElement& x) {
  if (K.is_rational() || x.is_rational()) return SizeValue(abs(x.a()));
  if (K.is_imaginary()) return SizeValue::root_of(norm(K, x), 2);
  RadicalSum s = RadicalSum(abs(x.a())) - RadicalSum::sqrt_of(Rational(K.d()), abs(x.b()));
  return SizeValue(s.sign() < 0 ? -s : s, 1);
}

/// Absolute multiplicative height, via the Mahler measure of the minimal polynomial.
inline SizeValue height(const NumberField& K, const FieldElement& x) {
  if (x.is_rational()) {
    return SizeValue(Rational(std::max(abs(x.a().get_num()), abs(x.a().get_den()))));
  }
  Rational tr = trace(K, x), nm = norm(K, x);
  Integer lead;
  mpz_lcm(lead.get_mpz_t(), tr.get_den().get_mpz_t(), nm.get_den().get_mpz_t());
  if (K.is_imaginary()) {
    // both roots have modulus sqrt(N)
    return SizeValue::root_of(Rational(lead) * std::max(Rational(1), nm), 2);
  }
  auto [s1, s2] = real_abs_embeddings(K, x);
  RadicalSum m(lead);
  if ((s1 - RadicalSum(1)).sign() > 0) m = m * s1;
  if ((s2 - RadicalSum(1)).sign() > 0) m = m * s2;
  return SizeValue(m, 2);
}

}  // namespace fibra
