#pragma once

// Simple algebraic extensions L = K[T]/(phi) with phi monic irreducible over K.

#include <memory>
#include <string>
#include <utility>

#include "fibra/factor.hpp"

namespace fibra {

struct ExtContext {
  NumberField K;
  KPoly phi;  // monic, irreducible over K
};

using ExtRef = std::shared_ptr<const ExtContext>;

inline ExtRef make_extension(const NumberField& K, const KPoly& phi) {
  if (phi.degree() < 1) throw Error(ErrorKind::InvalidInput, "extension needs a nonconstant polynomial");
  return std::make_shared<ExtContext>(ExtContext{K, monic(phi)});
}

/// Element of L as a polynomial in the generator, reduced mod phi. Like FqElem,
/// elements built from plain numbers carry no context until combined.
class ExtElement {
 public:
  ExtElement() = default;
  ExtElement(int v) : v_(FieldElement(v)) {}
  ExtElement(long v) : v_(FieldElement(v)) {}
  ExtElement(const FieldElement& v) : v_(v) {}
  ExtElement(ExtRef ctx, KPoly v) : v_(std::move(v)), ctx_(std::move(ctx)) { reduce(); }

  static ExtElement generator(const ExtRef& ctx) { return ExtElement(ctx, KPoly::x()); }

  const KPoly& value() const { return v_; }
  const ExtRef& context() const { return ctx_; }
  bool is_zero() const { return v_.is_zero(); }

  ExtElement operator-() const { return make(ctx_, -v_); }
  friend ExtElement operator+(const ExtElement& x, const ExtElement& y) { return make(common(x, y), x.v_ + y.v_); }
  friend ExtElement operator-(const ExtElement& x, const ExtElement& y) { return make(common(x, y), x.v_ - y.v_); }
  friend ExtElement operator*(const ExtElement& x, const ExtElement& y) { return make(common(x, y), x.v_ * y.v_); }

  ExtElement inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in extension");
    if (v_.degree() == 0) return make(ctx_, KPoly(FieldElement(1) / v_[0]));
    if (!ctx_) throw std::domain_error("inverse of context-free element");
    auto [g, s, t] = extended_gcd(v_, ctx_->phi);
    // g is a nonzero constant since phi is irreducible
    return make(ctx_, s * KPoly(FieldElement(1) / g[0]));
  }
  friend ExtElement operator/(const ExtElement& x, const ExtElement& y) {
    ExtRef c = common(x, y);
    ExtElement yy = y.ctx_ ? y : make(c, y.v_);
    return x * yy.inverse();
  }
  friend bool operator==(const ExtElement& x, const ExtElement& y) { return (x - y).is_zero(); }
  friend bool operator!=(const ExtElement& x, const ExtElement& y) { return !(x == y); }

  std::string str() const { return format_kpoly(v_, "a"); }

 private:
  static ExtElement make(const ExtRef& c, KPoly v) {
    ExtElement e;
    e.v_ = std::move(v);
    e.ctx_ = c;
    e.reduce();
    return e;
  }
  static ExtRef common(const ExtElement& x, const ExtElement& y) { return x.ctx_ ? x.ctx_ : y.ctx_; }
  void reduce() {
    if (ctx_ && v_.degree() >= ctx_->phi.degree()) v_ = v_ % ctx_->phi;
  }

  KPoly v_;
  ExtRef ctx_;
};

using EPoly = Polynomial<ExtElement>;

inline EPoly to_epoly(const ExtRef& L, const KPoly& f) {
  return f.map([&](const FieldElement& c) { return ExtElement(L, KPoly(c)); });
}

/// Evaluate each T-coefficient of a bivariate F(T, U) at the generator of L.
inline EPoly specialize_at_generator(const ExtRef& L, const Polynomial<KPoly>& F) {
  return F.map([&](const KPoly& c) { return ExtElement(L, c); });
}

inline std::string format_epoly(const EPoly& f, const std::string& var = "U") {
  return format_polynomial(f, var, [](const ExtElement& c) { return c.str(); });
}

}  // namespace fibra
