#pragma once

// Factorization over Q (Zassenhaus) and over Q(sqrt d) (Trager's norm method).

#include <algorithm>
#include <utility>
#include <vector>

#include "fibra/field.hpp"
#include "fibra/finite_field.hpp"
#include "fibra/polynomial.hpp"

namespace fibra {

using ZPoly = Polynomial<Integer>;
using QPoly = Polynomial<Rational>;
using KPoly = Polynomial<FieldElement>;

template <class P>
struct Factorization {
  typename std::decay_t<decltype(std::declval<P>().lc())> unit;  // leading coefficient
  std::vector<std::pair<P, int>> factors;                         // monic irreducibles

  P expand() const {
    P r(unit);
    for (auto& [g, m] : factors) r = r * g.pow(static_cast<unsigned>(m));
    return r;
  }
};

inline QPoly to_q(const ZPoly& f) {
  return f.map([](const Integer& c) { return Rational(c); });
}

inline ZPoly to_z(const QPoly& f) {
  return f.map([](const Rational& c) {
    if (!is_integer(c)) throw std::domain_error("non-integral coefficient");
    return Integer(c.get_num());
  });
}

inline Integer content(const ZPoly& f) {
  Integer g = 0;
  for (auto& c : f.coefficients()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

/// Primitive integer polynomial with positive leading coefficient proportional to f.
inline ZPoly primitive_part(const QPoly& f) {
  if (f.is_zero()) return {};
  Integer den = 1;
  for (auto& c : f.coefficients()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  ZPoly z = f.map([&](const Rational& c) { return Integer(c.get_num() * (den / c.get_den())); });
  Integer g = content(z);
  if (z.lc() < 0) g = -g;
  return z.map([&](const Integer& c) { return Integer(c / g); });
}

inline QPoly to_qpoly(const KPoly& f) {
  return f.map([](const FieldElement& c) {
    if (!c.is_rational()) throw std::domain_error("irrational coefficient");
    return c.a();
  });
}

inline KPoly to_kpoly(const QPoly& f) {
  return f.map([](const Rational& c) { return FieldElement(c); });
}

inline KPoly to_kpoly(const NumberField& K, const QPoly& f) {
  return f.map([&](const Rational& c) { return K.element(c); });
}

namespace detail {

inline ZPoly reduce_mod(const ZPoly& f, const Integer& m) {
  return f.map([&](const Integer& c) { return mod(c, m); });
}

inline ZPoly symmetric_mod(const ZPoly& f, const Integer& m) {
  return f.map([&](const Integer& c) { return fibra::symmetric_mod(c, m); });
}

inline ZPoly lift_from_fq(const FqPoly& f) {
  return f.map([](const FqElem& c) { return c.c0(); });
}

/// Division by a monic polynomial with integer arithmetic, reduced mod m.
inline std::pair<ZPoly, ZPoly> divmod_monic(const ZPoly& a, const ZPoly& b, const Integer& m) {
  auto [q, r] = divmod(a, b);
  return {reduce_mod(q, m), reduce_mod(r, m)};
}

/// Lift f = g*h mod p to mod p^k; f monic mod p^k, g and h monic.
inline std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& f, ZPoly g, ZPoly h, const Integer& p, int k,
                                           const FqRef& ctx) {
  auto [one, s, t] = extended_gcd(to_fq(ctx, g), to_fq(ctx, h));
  Integer pk = p;
  for (int i = 1; i < k; ++i) {
    ZPoly e = f - g * h;
    e = e.map([&](const Integer& c) {
      Integer r = mod(c, Integer(pk * p));
      return Integer(r / pk);
    });
    FqPoly ef = to_fq(ctx, e);
    FqPoly gf = to_fq(ctx, g);
    auto [q, sigma] = divmod(t * ef, gf);
    FqPoly tau = s * ef + q * to_fq(ctx, h);
    g = reduce_mod(g + lift_from_fq(sigma) * ZPoly(pk), Integer(pk * p));
    h = reduce_mod(h + lift_from_fq(tau) * ZPoly(pk), Integer(pk * p));
    pk *= p;
  }
  return {g, h};
}

inline void hensel_multi(const ZPoly& f, const std::vector<FqPoly>& parts, const Integer& p, int k,
                         const FqRef& ctx, std::vector<ZPoly>& out) {
  Integer pk = ipow(p, static_cast<unsigned long>(k));
  if (parts.size() == 1) {
    out.push_back(reduce_mod(f, pk));
    return;
  }
  size_t half = parts.size() / 2;
  FqPoly a(FqElem(ctx, 1)), b(FqElem(ctx, 1));
  std::vector<FqPoly> left(parts.begin(), parts.begin() + static_cast<long>(half));
  std::vector<FqPoly> right(parts.begin() + static_cast<long>(half), parts.end());
  for (auto& x : left) a = a * x;
  for (auto& x : right) b = b * x;
  auto [g, h] = hensel_pair(f, lift_from_fq(a), lift_from_fq(b), p, k, ctx);
  hensel_multi(g, left, p, k, ctx, out);
  hensel_multi(h, right, p, k, ctx, out);
}

inline bool divides_exactly(const ZPoly& g, const ZPoly& f, ZPoly& quotient) {
  if (g.degree() > f.degree()) return false;
  if (g.coeff(0) != 0 && f.coeff(0) % g.coeff(0) != 0) return false;
  auto [q, r] = divmod(to_q(f), to_q(g));
  if (!r.is_zero()) return false;
  for (auto& c : q.coefficients())
    if (!is_integer(c)) return false;
  quotient = to_z(q);
  return true;
}

/// Irreducible factors of a squarefree primitive integer polynomial.
inline std::vector<ZPoly> zassenhaus(ZPoly f) {
  std::vector<ZPoly> result;
  if (f.degree() <= 1) {
    if (f.degree() == 1) result.push_back(f);
    return result;
  }
  // pick among the first few good primes the one with fewest modular factors
  Integer best_p = 0;
  std::vector<FqPoly> best;
  int tried = 0;
  for (long pl = 3; tried < 6; pl += 2) {
    Integer p(pl);
    if (!is_prime(p)) continue;
    if (f.lc() % p == 0) continue;
    auto ctx = make_prime_field(p);
    FqPoly fp = to_fq(ctx, f);
    if (gcd(fp, fp.derivative()).degree() > 0) continue;
    ++tried;
    std::vector<FqPoly> parts;
    for (auto& [g, m] : factor_fq(ctx, fp)) parts.push_back(g);
    if (best_p == 0 || parts.size() < best.size()) {
      best_p = p;
      best = parts;
    }
    if (best.size() == 1) break;
  }
  if (best.size() <= 1) {
    result.push_back(f);
    return result;
  }
  const Integer& p = best_p;
  auto ctx = make_prime_field(p);
  // Mignotte-style bound on factor coefficients, times lc for the scaled candidates.
  Integer norm2 = 0;
  for (auto& c : f.coefficients()) norm2 += c * c;
  Integer bound = (isqrt(norm2) + 1) * ipow(2, static_cast<unsigned long>(f.degree())) * abs(f.lc());
  int k = 1;
  Integer pk = p;
  while (pk <= 2 * bound) {
    pk *= p;
    ++k;
  }
  Integer lcinv = inverse_mod(f.lc(), pk);
  ZPoly fm = reduce_mod(f * ZPoly(lcinv), pk);
  std::vector<ZPoly> lifted;
  hensel_multi(fm, best, p, k, ctx, lifted);

  // recombination
  std::vector<ZPoly> pool = lifted;
  size_t s = 1;
  while (2 * s <= pool.size()) {
    bool found = false;
    std::vector<size_t> idx(s);
    for (size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      ZPoly cand(f.lc());
      for (size_t i : idx) cand = reduce_mod(cand * pool[i], pk);
      cand = symmetric_mod(cand, pk);
      Integer cc = content(cand);
      if (cc != 0) {
        cand = cand.map([&](const Integer& c) { return Integer(c / cc); });
        if (cand.lc() < 0) cand = -cand;
        ZPoly q;
        if (divides_exactly(cand, f, q)) {
          result.push_back(cand);
          f = q;
          std::vector<ZPoly> rest;
          for (size_t i = 0; i < pool.size(); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(pool[i]);
          pool = rest;
          found = true;
          break;
        }
      }
      // next combination
      size_t i = s;
      while (i > 0 && idx[i - 1] == pool.size() - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (f.degree() > 0) result.push_back(f);
  return result;
}

template <class R>
bool poly_less(const Polynomial<R>& a, const Polynomial<R>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace detail

/// f = unit * prod g^m with g monic irreducible over Q.
inline Factorization<QPoly> factor_over_Q(const QPoly& f) {
  if (f.is_zero()) throw std::domain_error("factor of zero polynomial");
  Factorization<QPoly> out;
  out.unit = f.lc();
  auto parts = squarefree_decomposition(f);
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() < 1) continue;
    for (auto& g : detail::zassenhaus(primitive_part(parts[i])))
      out.factors.emplace_back(monic(to_q(g)), static_cast<int>(i + 1));
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
    return detail::poly_less(x.first, y.first);
  });
  return out;
}

inline KPoly conjugate(const KPoly& f) {
  return f.map([](const FieldElement& c) { return c.conjugate(); });
}

/// Norm f * conj(f) as a rational polynomial.
inline QPoly norm_poly(const KPoly& f) { return to_qpoly(f * conjugate(f)); }

namespace detail {

inline std::vector<KPoly> trager_squarefree(const NumberField& K, const KPoly& f) {
  std::vector<KPoly> out;
  if (f.degree() == 1) {
    out.push_back(monic(f));
    return out;
  }
  FieldElement alpha = K.sqrt_d();
  for (long s : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L, 6L, -6L, 7L, 8L, 9L, 10L, 11L, 12L}) {
    KPoly fs = f.shift(FieldElement(Rational(-s)) * alpha);
    QPoly n = norm_poly(fs);
    if (!is_squarefree(n)) continue;
    auto fac = factor_over_Q(n);
    for (auto& [g, m] : fac.factors) {
      KPoly h = gcd(fs, to_kpoly(K, g));
      if (h.degree() < 1) continue;
      out.push_back(monic(h.shift(FieldElement(Rational(s)) * alpha)));
    }
    return out;
  }
  throw std::runtime_error("no squarefree norm shift found");
}

}  // namespace detail

/// f = unit * prod g^m with g monic irreducible over K.
inline Factorization<KPoly> factor_over_K(const NumberField& K, const KPoly& f) {
  if (f.is_zero()) throw std::domain_error("factor of zero polynomial");
  Factorization<KPoly> out;
  out.unit = K.embed(f.lc());
  if (K.is_rational()) {
    auto fq = factor_over_Q(to_qpoly(f));
    for (auto& [g, m] : fq.factors) out.factors.emplace_back(to_kpoly(g), m);
    return out;
  }
  KPoly fk = f.map([&](const FieldElement& c) { return K.embed(c); });
  auto parts = squarefree_decomposition(fk);
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() < 1) continue;
    for (auto& g : detail::trager_squarefree(K, parts[i]))
      out.factors.emplace_back(g, static_cast<int>(i + 1));
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
    return detail::poly_less(x.first, y.first);
  });
  return out;
}

inline bool is_irreducible_over_K(const NumberField& K, const KPoly& f) {
  if (f.degree() < 1) return false;
  auto fac = factor_over_K(K, f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

/// Monic radical with content removed.
inline KPoly squarefree_monic(const KPoly& f) { return squarefree_part(f); }

inline std::string format_kpoly(const KPoly& f, const std::string& var = "x") {
  return format_polynomial(f, var, [](const FieldElement& c) { return c.str(); });
}

inline std::string format_qpoly(const QPoly& f, const std::string& var = "x") {
  return format_polynomial(f, var, [](const Rational& c) { return to_string(c); });
}

}  // namespace fibra
