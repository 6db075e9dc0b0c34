#pragma once

// Exact integer and rational helpers shared by every module.

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fibra {

using Integer = mpz_class;
using Rational = mpq_class;

/// Valuation reported for zero.
inline constexpr int kInfiniteValuation = INT_MAX / 4;

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '+') s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (text.find('+') != std::string::npos && text.find('+') != 0)
    throw std::invalid_argument("malformed rational literal: " + text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return make_rational(Integer(s));
    return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal: " + text);
  }
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline int valuation(const Integer& z, const Integer& p) {
  if (z == 0) return kInfiniteValuation;
  Integer r = z;
  int k = 0;
  while (mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
    ++k;
  }
  return k;
}

inline int valuation(const Rational& q, const Integer& p) {
  if (q == 0) return kInfiniteValuation;
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational rpow(const Rational& base, long e) {
  Rational r(1), b = base;
  if (e < 0) {
    if (b == 0) throw std::domain_error("zero to negative power");
    b = 1 / b;
    e = -e;
  }
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer floor_of(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0 || !is_square(q.get_num()) || !is_square(q.get_den())) return std::nullopt;
  return Rational(isqrt(q.get_num()), isqrt(q.get_den()));
}

/// Nonnegative residue of a modulo m.
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// a/b modulo m for rational a/b with gcd(b, m) = 1.
inline Integer mod(const Rational& q, const Integer& m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("denominator not invertible modulo " + m.get_str());
  return mod(Integer(q.get_num() * inv), m);
}

/// Symmetric residue in (-m/2, m/2].
inline Integer symmetric_mod(const Integer& a, const Integer& m) {
  Integer r = mod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

inline Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("not invertible modulo " + m.get_str());
  return inv;
}

inline Integer powm(const Integer& b, const Integer& e, const Integer& m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool is_prime(const Integer& n) {
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

inline int kronecker(const Integer& a, const Integer& n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline std::vector<long> primes_up_to(long n) {
  std::vector<long> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<size_t>(n) + 1, false);
  for (long i = 2; i <= n; ++i) {
    if (composite[static_cast<size_t>(i)]) continue;
    out.push_back(i);
    for (long j = i * i; j <= n; j += i) composite[static_cast<size_t>(j)] = true;
  }
  return out;
}

inline long prime_count(long n) { return static_cast<long>(primes_up_to(n).size()); }

namespace detail {

inline Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1, m = 64;
    auto f = [&](const Integer& v) { return mod(Integer(v * v + c), n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mod(Integer(q * abs(Integer(x - y))), n);
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(Integer(x - ys));
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(const Integer& n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(Integer(n / d), out);
}

}  // namespace detail

/// Prime factorization of |n| (n != 0), primes ascending.
inline std::vector<std::pair<Integer, int>> factor_integer(const Integer& n) {
  if (n == 0) throw std::domain_error("factor_integer(0)");
  Integer m = abs(n);
  std::map<Integer, int> found;
  for (unsigned long p = 2; p < 10000 && m > 1; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      found[Integer(p)] += 1;
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    }
  }
  detail::factor_into(m, found);
  return {found.begin(), found.end()};
}

inline std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  if (n == 0) return out;
  for (auto& [p, e] : factor_integer(n)) out.push_back(p);
  return out;
}

/// Primes dividing the numerator or the denominator.
inline std::vector<Integer> prime_support(const Rational& q) {
  std::vector<Integer> out = prime_divisors(q.get_num());
  for (auto& p : prime_divisors(q.get_den())) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Integer squarefree_kernel(const Integer& n) {
  if (n == 0) return 0;
  Integer k = n < 0 ? Integer(-1) : Integer(1);
  for (auto& [p, e] : factor_integer(n))
    if (e % 2 == 1) k *= p;
  return k;
}

inline bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  for (auto& [p, e] : factor_integer(n))
    if (e > 1) return false;
  return true;
}

/// Square root of a modulo an odd prime p (Tonelli-Shanks); a must be a square.
inline Integer sqrt_mod_prime(const Integer& a_in, const Integer& p) {
  Integer a = mod(a_in, p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (kronecker(a, p) != 1) throw std::domain_error("not a quadratic residue");
  Integer q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (kronecker(z, p) != -1) ++z;
  Integer m = s, c = powm(z, q, p), t = powm(a, q, p), r = powm(a, Integer((q + 1) / 2), p);
  while (t != 1) {
    unsigned long i = 0;
    Integer tt = t;
    while (tt != 1) {
      tt = mod(Integer(tt * tt), p);
      ++i;
    }
    Integer b = c;
    for (unsigned long j = 0; j + i + 1 < m.get_ui(); ++j) b = mod(Integer(b * b), p);
    m = i;
    c = mod(Integer(b * b), p);
    t = mod(Integer(t * c), p);
    r = mod(Integer(r * b), p);
  }
  return r;
}

}  // namespace fibra
