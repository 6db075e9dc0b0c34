#pragma once

// Finite fields F_p and F_{p^2}, and polynomial factorization over them.

#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "fibra/arith.hpp"
#include "fibra/polynomial.hpp"

namespace fibra {

/// F_p (degree 1) or F_p[theta]/(theta^2 - t*theta + n) (degree 2).
struct FqContext {
  Integer p;
  int degree = 1;
  Integer t = 0, n = 0;

  Integer order() const { return degree == 1 ? p : Integer(p * p); }
};

using FqRef = std::shared_ptr<const FqContext>;

inline FqRef make_prime_field(const Integer& p) {
  auto c = std::make_shared<FqContext>();
  c->p = p;
  return c;
}

/// Requires x^2 - t x + n irreducible mod p.
inline FqRef make_quadratic_field(const Integer& p, const Integer& t, const Integer& n) {
  auto c = std::make_shared<FqContext>();
  c->p = p;
  c->degree = 2;
  c->t = mod(t, p);
  c->n = mod(n, p);
  return c;
}

/// Element c0 + c1*theta. Elements built from plain integers carry no
/// context and pick one up from the other operand.
class FqElem {
 public:
  FqElem() = default;
  FqElem(int v) : c0_(v) {}
  FqElem(long v) : c0_(v) {}
  FqElem(const Integer& v) : c0_(v) {}
  FqElem(FqRef ctx, const Integer& c0, const Integer& c1 = 0) : c0_(c0), c1_(c1), ctx_(std::move(ctx)) {
    reduce();
  }

  const Integer& c0() const { return c0_; }
  const Integer& c1() const { return c1_; }
  const FqRef& context() const { return ctx_; }

  bool is_zero() const {
    if (!ctx_) return c0_ == 0 && c1_ == 0;
    return c0_ == 0 && c1_ == 0;
  }

  FqElem operator-() const { return make(ctx_, -c0_, -c1_); }
  friend FqElem operator+(const FqElem& x, const FqElem& y) {
    return make(common(x, y), x.c0_ + y.c0_, x.c1_ + y.c1_);
  }
  friend FqElem operator-(const FqElem& x, const FqElem& y) {
    return make(common(x, y), x.c0_ - y.c0_, x.c1_ - y.c1_);
  }
  friend FqElem operator*(const FqElem& x, const FqElem& y) {
    FqRef c = common(x, y);
    if (x.c1_ == 0 && y.c1_ == 0) return make(c, x.c0_ * y.c0_, 0);
    // theta^2 = t theta - n
    Integer a0 = x.c0_ * y.c0_, a1 = x.c0_ * y.c1_ + x.c1_ * y.c0_, a2 = x.c1_ * y.c1_;
    return make(c, a0 - c->n * a2, a1 + c->t * a2);
  }
  FqElem inverse() const {
    if (!ctx_) {
      if (c0_ == 1 || c0_ == -1) return *this;
      throw std::domain_error("inverse of context-free element");
    }
    if (is_zero()) throw std::domain_error("inverse of zero in finite field");
    const Integer& p = ctx_->p;
    if (c1_ == 0) return FqElem(ctx_, inverse_mod(c0_, p));
    // conjugate of theta is t - theta
    Integer n = mod(Integer(c0_ * c0_ + ctx_->t * c0_ * c1_ + ctx_->n * c1_ * c1_), p);
    Integer inv = inverse_mod(n, p);
    return FqElem(ctx_, (c0_ + c1_ * ctx_->t) * inv, -c1_ * inv);
  }
  friend FqElem operator/(const FqElem& x, const FqElem& y) {
    FqRef c = common(x, y);
    FqElem yy = y.ctx_ ? y : FqElem(c, y.c0_, y.c1_);
    return x * yy.inverse();
  }
  friend bool operator==(const FqElem& x, const FqElem& y) {
    FqRef c = x.ctx_ ? x.ctx_ : y.ctx_;
    if (!c) return x.c0_ == y.c0_ && x.c1_ == y.c1_;
    return mod(Integer(x.c0_ - y.c0_), c->p) == 0 && mod(Integer(x.c1_ - y.c1_), c->p) == 0;
  }
  friend bool operator!=(const FqElem& x, const FqElem& y) { return !(x == y); }
  friend bool operator<(const FqElem& x, const FqElem& y) {
    if (x.c1_ != y.c1_) return x.c1_ < y.c1_;
    return x.c0_ < y.c0_;
  }

  FqElem pow(Integer e) const {
    FqElem r = make(ctx_, 1, 0), b = *this;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  std::string str() const {
    if (c1_ == 0) return c0_.get_str();
    return c0_.get_str() + "+" + c1_.get_str() + "*th";
  }

 private:
  static FqElem make(const FqRef& c, const Integer& a0, const Integer& a1) {
    FqElem e;
    e.c0_ = a0;
    e.c1_ = a1;
    e.ctx_ = c;
    e.reduce();
    return e;
  }
  static FqRef common(const FqElem& x, const FqElem& y) { return x.ctx_ ? x.ctx_ : y.ctx_; }
  void reduce() {
    if (!ctx_) return;
    c0_ = mod(c0_, ctx_->p);
    c1_ = mod(c1_, ctx_->p);
  }

  Integer c0_ = 0, c1_ = 0;
  FqRef ctx_;
};

using FqPoly = Polynomial<FqElem>;

/// Reduce integer coefficients into F_q.
inline FqPoly to_fq(const FqRef& ctx, const Polynomial<Integer>& f) {
  return f.map([&](const Integer& c) { return FqElem(ctx, c); });
}

/// Attach the context to every coefficient.
inline FqPoly with_context(const FqRef& ctx, const FqPoly& f) {
  return f.map([&](const FqElem& c) { return FqElem(ctx, c.c0(), c.c1()); });
}

inline FqPoly powmod(FqPoly base, Integer e, const FqPoly& m) {
  FqPoly r(FqElem(1));
  base = base % m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r;
}

/// Coefficient-wise p-th root of a polynomial in x^p.
inline FqPoly pth_root(const FqRef& ctx, const FqPoly& f) {
  unsigned long p = ctx->p.get_ui();
  Integer e = ctx->degree == 1 ? Integer(1) : ctx->p;  // a^(q/p) is the p-th root
  std::vector<FqElem> c;
  for (size_t i = 0; i < f.size(); i += p) c.push_back(FqElem(ctx, f[i].c0(), f[i].c1()).pow(e));
  return FqPoly(std::move(c));
}

/// Squarefree factorization in characteristic p: pairs (squarefree monic, multiplicity).
inline std::vector<std::pair<FqPoly, int>> squarefree_factor_fq(const FqRef& ctx, const FqPoly& f_in) {
  std::vector<std::pair<FqPoly, int>> out;
  FqPoly f = monic(with_context(ctx, f_in));
  if (f.degree() < 1) return out;
  FqPoly df = f.derivative();
  if (df.is_zero()) {
    int p = static_cast<int>(ctx->p.get_si());
    for (auto& [g, m] : squarefree_factor_fq(ctx, pth_root(ctx, f))) out.emplace_back(g, m * p);
    return out;
  }
  FqPoly c = gcd(f, df);
  FqPoly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    FqPoly y = gcd(w, c);
    FqPoly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(monic(fac), i);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    int p = static_cast<int>(ctx->p.get_si());
    for (auto& [g, m] : squarefree_factor_fq(ctx, pth_root(ctx, c))) out.emplace_back(g, m * p);
  }
  return out;
}

/// Distinct-degree factorization of a squarefree monic f: pairs (product, degree).
inline std::vector<std::pair<FqPoly, int>> distinct_degree_fq(const FqRef& ctx, FqPoly f) {
  std::vector<std::pair<FqPoly, int>> out;
  FqPoly x = with_context(ctx, FqPoly::x());
  FqPoly h = x;
  Integer q = ctx->order();
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = powmod(h, q, f);
    FqPoly g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(monic(f), f.degree());
  return out;
}

inline FqElem random_fq(const FqRef& ctx, std::mt19937_64& rng) {
  unsigned long p = ctx->p.fits_ulong_p() ? ctx->p.get_ui() : ~0UL;
  std::uniform_int_distribution<unsigned long> dist(0, p - 1);
  if (ctx->degree == 1) return FqElem(ctx, Integer(dist(rng)));
  return FqElem(ctx, Integer(dist(rng)), Integer(dist(rng)));
}

/// Equal-degree splitting (Cantor-Zassenhaus) of a monic product of degree-d irreducibles.
inline void equal_degree_fq(const FqRef& ctx, const FqPoly& f, int d, std::mt19937_64& rng,
                            std::vector<FqPoly>& out) {
  if (f.degree() == d) {
    out.push_back(monic(f));
    return;
  }
  Integer q = ctx->order();
  Integer qd = ipow(q, static_cast<unsigned long>(d));
  bool even = ctx->p == 2;
  while (true) {
    std::vector<FqElem> c;
    for (int i = 0; i < f.degree(); ++i) c.push_back(random_fq(ctx, rng));
    FqPoly a(std::move(c));
    if (a.degree() < 1) continue;
    FqPoly b;
    if (even) {
      // trace map a + a^2 + ... + a^(2^(k d - 1))
      int steps = ctx->degree * d;
      FqPoly t = a % f, acc = t;
      for (int i = 1; i < steps; ++i) {
        t = (t * t) % f;
        acc = acc + t;
      }
      b = acc;
    } else {
      b = powmod(a, (qd - 1) / 2, f) - FqPoly(FqElem(ctx, 1));
    }
    FqPoly g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_fq(ctx, g, d, rng, out);
      equal_degree_fq(ctx, f / g, d, rng, out);
      return;
    }
  }
}

inline bool fq_poly_less(const FqPoly& a, const FqPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

/// Full factorization into monic irreducibles with multiplicities, deterministic order.
inline std::vector<std::pair<FqPoly, int>> factor_fq(const FqRef& ctx, const FqPoly& f,
                                                     unsigned long seed = 0x5eed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<FqPoly, int>> out;
  for (auto& [s, m] : squarefree_factor_fq(ctx, f)) {
    for (auto& [g, d] : distinct_degree_fq(ctx, s)) {
      std::vector<FqPoly> parts;
      equal_degree_fq(ctx, g, d, rng, parts);
      for (auto& h : parts) out.emplace_back(h, m);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (fq_poly_less(x.first, y.first)) return true;
    if (fq_poly_less(y.first, x.first)) return false;
    return x.second < y.second;
  });
  return out;
}

/// Distinct roots in F_q.
inline std::vector<FqElem> roots_fq(const FqRef& ctx, const FqPoly& f) {
  std::vector<FqElem> out;
  FqPoly g = monic(with_context(ctx, f));
  if (g.degree() < 1) return out;
  FqPoly x = with_context(ctx, FqPoly::x());
  FqPoly h = gcd(g, powmod(x, ctx->order(), g) - x);
  if (h.degree() < 1) return out;
  std::mt19937_64 rng(0x5eed);
  std::vector<FqPoly> parts;
  equal_degree_fq(ctx, h, 1, rng, parts);
  for (auto& l : parts) out.push_back(-l.coeff(0));
  std::sort(out.begin(), out.end());
  return out;
}

/// Monic radical f / gcd-structure in characteristic p.
inline FqPoly radical_fq(const FqRef& ctx, const FqPoly& f) {
  FqPoly r(FqElem(ctx, 1));
  for (auto& [g, m] : squarefree_factor_fq(ctx, f)) r = r * g;
  return monic(with_context(ctx, r));
}

}  // namespace fibra
