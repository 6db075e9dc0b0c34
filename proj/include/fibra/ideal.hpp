#pragma once

// Ideals of O_K, prime places, units and reduced elements.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibra/errors.hpp"
#include "fibra/field.hpp"
#include "fibra/ordering.hpp"

namespace fibra {

/// Nonzero integral ideal with Z-basis {a, b + c*omega} (coordinates in 1, omega),
/// a, c > 0, c | a, c | b, 0 <= b < a. Over Q only a is used.
struct IdealRep {
  Integer a = 1, b = 0, c = 1;
  int degree = 1;

  Integer norm() const { return degree == 1 ? a : Integer(a * c); }
  bool is_unit() const { return norm() == 1; }

  friend bool operator==(const IdealRep& x, const IdealRep& y) {
    return x.degree == y.degree && x.a == y.a && x.b == y.b && x.c == y.c;
  }
  friend bool operator<(const IdealRep& x, const IdealRep& y) {
    if (x.norm() != y.norm()) return x.norm() < y.norm();
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  }
};

inline std::pair<FieldElement, FieldElement> hnf_basis(const NumberField& K, const IdealRep& I) {
  if (I.degree == 1) return {K.element(Rational(I.a)), K.element(0)};
  return {K.element(Rational(I.a)), from_coordinates(K, Rational(I.b), Rational(I.c))};
}

inline std::string ideal_str(const NumberField& K, const IdealRep& I) {
  if (I.degree == 1) return "(" + I.a.get_str() + ")";
  auto [x, y] = hnf_basis(K, I);
  return "<" + x.str() + ", " + y.str() + ">";
}

/// Integer coordinates of an integral element; throws if not integral.
inline std::pair<Integer, Integer> int_coordinates(const NumberField& K, const FieldElement& x) {
  auto [x0, x1] = coordinates(K, x);
  if (!is_integer(x0) || !is_integer(x1)) throw std::domain_error("element not integral");
  return {x0.get_num(), x1.get_num()};
}

/// Lattice spanned by integer vectors (x0, x1), in Hermite normal form.
inline IdealRep hnf_from_vectors(std::vector<std::pair<Integer, Integer>> v) {
  // Euclid on the second coordinate
  while (true) {
    size_t piv = v.size();
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i].second != 0 && (piv == v.size() || abs(v[i].second) < abs(v[piv].second))) piv = i;
    if (piv == v.size()) throw std::domain_error("degenerate lattice");
    bool done = true;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i == piv || v[i].second == 0) continue;
      Integer q = floor_div(v[i].second, v[piv].second);
      v[i].first -= q * v[piv].first;
      v[i].second -= q * v[piv].second;
      if (v[i].second != 0) done = false;
    }
    if (done) {
      IdealRep I;
      I.degree = 2;
      I.c = abs(v[piv].second);
      Integer bb = v[piv].second < 0 ? Integer(-v[piv].first) : v[piv].first;
      Integer g = 0;
      for (size_t i = 0; i < v.size(); ++i)
        if (i != piv) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].first.get_mpz_t());
      if (g == 0) throw std::domain_error("degenerate lattice");
      I.a = g;
      I.b = mod(bb, I.a);
      return I;
    }
  }
}

/// Ideal generated by integral elements.
inline IdealRep ideal_from_generators(const NumberField& K, const std::vector<FieldElement>& gens) {
  if (K.is_rational()) {
    Integer g = 0;
    for (auto& x : gens) {
      if (!is_integer(x.a())) throw std::domain_error("element not integral");
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.a().get_num().get_mpz_t());
    }
    if (g == 0) throw std::domain_error("zero ideal");
    IdealRep I;
    I.a = g;
    return I;
  }
  std::vector<std::pair<Integer, Integer>> v;
  for (auto& x : gens) {
    v.push_back(int_coordinates(K, x));
    v.push_back(int_coordinates(K, x * K.omega()));
  }
  return hnf_from_vectors(v);
}

inline IdealRep principal_ideal(const NumberField& K, const FieldElement& x) {
  return ideal_from_generators(K, {x});
}

inline bool contains(const NumberField& K, const IdealRep& I, const FieldElement& x) {
  if (!is_integral(K, x)) return false;
  if (I.degree == 1) return x.a().get_num() % I.a == 0;
  auto [x0, x1] = int_coordinates(K, x);
  if (x1 % I.c != 0) return false;
  Integer k = x1 / I.c;
  return (x0 - k * I.b) % I.a == 0;
}

inline IdealRep multiply(const NumberField& K, const IdealRep& I, const IdealRep& J) {
  auto [i1, i2] = hnf_basis(K, I);
  auto [j1, j2] = hnf_basis(K, J);
  if (K.is_rational()) return ideal_from_generators(K, {i1 * j1});
  return ideal_from_generators(K, {i1 * j1, i1 * j2, i2 * j1, i2 * j2});
}

enum class PlaceKind { Split, Inert, Ramified };

inline const char* place_kind_name(PlaceKind k) {
  switch (k) {
    case PlaceKind::Split: return "split";
    case PlaceKind::Inert: return "inert";
    case PlaceKind::Ramified: return "ramified";
  }
  return "?";
}

/// Finite place of K above p. For split and ramified places the ideal is
/// (p, omega - r); r is unused for inert places and over Q.
struct PrimePlace {
  Integer p;
  PlaceKind kind = PlaceKind::Split;
  IdealRep ideal;
  int residue_degree = 1;
  int e = 1;
  Integer r = 0;
  Integer norm() const { return residue_degree == 1 ? p : Integer(p * p); }

  friend bool operator==(const PrimePlace& x, const PrimePlace& y) {
    return x.p == y.p && x.kind == y.kind && x.r == y.r;
  }
  friend bool operator<(const PrimePlace& x, const PrimePlace& y) {
    if (x.norm() != y.norm()) return x.norm() < y.norm();
    if (x.p != y.p) return x.p < y.p;
    return x.r < y.r;
  }
};

/// Roots mod p of the minimal polynomial x^2 - t x + n of omega.
inline std::vector<Integer> omega_roots_mod(const NumberField& K, const Integer& p) {
  std::vector<Integer> out;
  Integer t = K.omega_trace(), n = K.omega_norm();
  if (p == 2) {
    for (int r = 0; r < 2; ++r)
      if (mod(Integer(r * r - t * r + n), p) == 0) out.push_back(r);
    return out;
  }
  Integer D = t * t - 4 * n;
  int k = kronecker(D, p);
  if (k < 0) return out;
  Integer s = sqrt_mod_prime(D, p), inv2 = inverse_mod(2, p);
  Integer r1 = mod(Integer((t + s) * inv2), p), r2 = mod(Integer((t - s) * inv2), p);
  out.push_back(std::min(r1, r2));
  if (r1 != r2) out.push_back(std::max(r1, r2));
  return out;
}

inline std::vector<PrimePlace> prime_splitting(const NumberField& K, const Integer& p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidInput, p.get_str() + " is not prime");
  std::vector<PrimePlace> out;
  if (K.is_rational()) {
    PrimePlace P;
    P.p = p;
    P.ideal.a = p;
    out.push_back(P);
    return out;
  }
  auto roots = omega_roots_mod(K, p);
  if (roots.empty()) {
    PrimePlace P;
    P.p = p;
    P.kind = PlaceKind::Inert;
    P.residue_degree = 2;
    P.ideal = ideal_from_generators(K, {K.element(Rational(p))});
    out.push_back(P);
    return out;
  }
  bool ramified = roots.size() == 1;
  for (auto& r : roots) {
    PrimePlace P;
    P.p = p;
    P.kind = ramified ? PlaceKind::Ramified : PlaceKind::Split;
    P.e = ramified ? 2 : 1;
    P.r = r;
    P.ideal = ideal_from_generators(K, {K.element(Rational(p)), K.omega() - K.element(Rational(r))});
    out.push_back(P);
  }
  return out;
}

/// All places with norm <= M, ordered by (norm, p, r).
inline std::vector<PrimePlace> places_up_to(const NumberField& K, long M) {
  std::vector<PrimePlace> out;
  for (long p : primes_up_to(M))
    for (auto& P : prime_splitting(K, Integer(p)))
      if (P.norm() <= M) out.push_back(P);
  std::sort(out.begin(), out.end());
  return out;
}

inline PrimePlace place_from_prime(const NumberField& K, const Integer& p, int index = 0) {
  auto pl = prime_splitting(K, p);
  if (index < 0 || index >= static_cast<int>(pl.size()))
    throw Error(ErrorKind::InvalidInput, "no place with index " + std::to_string(index) + " above " + p.get_str());
  return pl[static_cast<size_t>(index)];
}

/// Exact valuation v_P(x) normalized so that v(uniformizer) = 1.
inline int valuation(const NumberField& K, const PrimePlace& P, const FieldElement& x) {
  if (x.is_zero()) return kInfiniteValuation;
  if (K.is_rational()) return valuation(x.a(), P.p);
  auto [x0, x1] = coordinates(K, x);
  Integer m;
  mpz_lcm(m.get_mpz_t(), x0.get_den().get_mpz_t(), x1.get_den().get_mpz_t());
  Integer y0 = x0.get_num() * (m / x0.get_den()), y1 = x1.get_num() * (m / x1.get_den());
  int vm = P.e * valuation(m, P.p);
  int vy;
  switch (P.kind) {
    case PlaceKind::Inert:
      vy = std::min(valuation(y0, P.p), valuation(y1, P.p));
      break;
    case PlaceKind::Ramified: {
      Rational ny = norm(K, from_coordinates(K, Rational(y0), Rational(y1)));
      vy = valuation(ny, P.p);
      break;
    }
    case PlaceKind::Split:
    default: {
      int k = std::min(valuation(y0, P.p), valuation(y1, P.p));
      Integer pk = ipow(P.p, static_cast<unsigned long>(k));
      Integer z0 = y0 / pk, z1 = y1 / pk;
      vy = k;
      if (mod(Integer(z0 + z1 * P.r), P.p) == 0) {
        Rational nz = norm(K, from_coordinates(K, Rational(z0), Rational(z1)));
        vy += valuation(nz, P.p);
      }
      break;
    }
  }
  return vy - vm;
}

struct UnitData {
  std::optional<FieldElement> fundamental_unit;
  int torsion_order = 2;
};

/// Torsion units of K.
inline std::vector<FieldElement> roots_of_unity(const NumberField& K) {
  std::vector<FieldElement> out{K.element(1), K.element(-1)};
  if (K.d() == -1) {
    out.push_back(K.element(0, 1));
    out.push_back(K.element(0, -1));
  } else if (K.d() == -3) {
    for (int s : {1, -1})
      for (int t : {1, -1}) out.push_back(K.element(Rational(s, 2), Rational(t, 2)));
  }
  return out;
}

inline bool exceeds_one_first_embedding(const NumberField& K, const FieldElement& x) {
  RadicalSum s = RadicalSum(x.a() - 1) + RadicalSum::sqrt_of(Rational(K.d()), x.b());
  return s.sign() > 0;
}

/// Fundamental unit > 1 from the continued fraction of omega.
inline UnitData fundamental_unit(const NumberField& K) {
  UnitData u;
  u.torsion_order = static_cast<int>(roots_of_unity(K).size());
  if (!K.is_quadratic() || K.is_imaginary()) return u;
  Integer d = K.d(), sd = isqrt(d);
  // omega = (P + sqrt d) / Q
  Integer P = K.omega_is_half() ? 1 : 0, Q = K.omega_is_half() ? 2 : 1;
  Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (int step = 0; step < 100000; ++step) {
    Integer a = floor_div(P + sd, Q);
    Integer h = a * h1 + h2, k = a * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    FieldElement cand = K.element(Rational(h)) - K.element(Rational(k)) * K.omega();
    Rational n = norm(K, cand);
    if (n == 1 || n == -1) {
      for (FieldElement c : {cand, -cand, cand.inverse(), -cand.inverse()})
        if (exceeds_one_first_embedding(K, c)) {
          u.fundamental_unit = c;
          return u;
        }
    }
    P = a * Q - P;
    Q = (d - P * P) / Q;
  }
  throw std::runtime_error("fundamental unit search did not terminate");
}

/// Deterministic choice among equally short associates: positive a, then small |b|.
inline bool canonical_before(const FieldElement& x, const FieldElement& y) {
  bool xp = x.a() > 0 || (x.a() == 0 && x.b() > 0);
  bool yp = y.a() > 0 || (y.a() == 0 && y.b() > 0);
  if (xp != yp) return xp;
  if (abs(x.b()) != abs(y.b())) return abs(x.b()) < abs(y.b());
  if (x.a() != y.a()) return x.a() > y.a();
  return x.b() > y.b();
}

/// Quadratic form a^2 + |d| b^2 (sum of squared embeddings up to a factor).
inline Rational qform(const NumberField& K, const FieldElement& x) {
  return x.a() * x.a() + Rational(std::abs(K.d())) * x.b() * x.b();
}

inline Rational qbilinear(const NumberField& K, const FieldElement& x, const FieldElement& y) {
  return x.a() * y.a() + Rational(std::abs(K.d())) * x.b() * y.b();
}

/// Gauss-reduced Z-basis of I (one element over Q).
inline std::vector<FieldElement> reduced_basis(const NumberField& K, const IdealRep& I) {
  auto [v1, v2] = hnf_basis(K, I);
  if (K.is_rational()) return {v1};
  if (qform(K, v2) < qform(K, v1)) std::swap(v1, v2);
  while (true) {
    Rational mu = qbilinear(K, v1, v2) / qform(K, v1);
    Integer m = floor_of(mu + Rational(1, 2));
    v2 = v2 - K.element(Rational(m)) * v1;
    if (qform(K, v2) < qform(K, v1)) {
      std::swap(v1, v2);
      continue;
    }
    break;
  }
  if (canonical_before(-v1, v1)) v1 = -v1;
  if (canonical_before(-v2, v2)) v2 = -v2;
  return {v1, v2};
}

/// A generator of minimal size (canonical among ties); NotPrincipal otherwise.
inline FieldElement reduced_generator(const NumberField& K, const IdealRep& I) {
  if (K.is_rational()) return K.element(Rational(I.a));
  Integer N = I.norm();
  // Some generator has size^2 <= eps * N (eps = 1 if imaginary), and qform <= size^2.
  Rational R(N);
  if (K.is_real()) R *= Rational(2 * fundamental_unit(K).fundamental_unit->a() + 1);
  auto basis = reduced_basis(K, I);
  const FieldElement &b1 = basis[0], &b2 = basis[1];
  // For a Gauss-reduced basis, qform(u b1 + v b2) >= (3/4) max(u^2 q1, v^2 q2).
  Rational q1 = qform(K, b1), q2 = qform(K, b2);
  Integer umax = isqrt(ceil_of(4 * R / (3 * q1))) + 1;
  Integer vmax = isqrt(ceil_of(4 * R / (3 * q2))) + 1;
  std::optional<FieldElement> best;
  SizeOrdering ord(K);
  for (Integer u = -umax; u <= umax; ++u)
    for (Integer v = -vmax; v <= vmax; ++v) {
      FieldElement x = K.element(Rational(u)) * b1 + K.element(Rational(v)) * b2;
      if (abs(norm(K, x)) != Rational(N)) continue;
      if (!best) {
        best = x;
        continue;
      }
      int c = ord.compare_sizes(x, *best);
      if (c < 0 || (c == 0 && canonical_before(x, *best))) best = x;
    }
  if (!best) throw Error(ErrorKind::NotPrincipal, "ideal " + ideal_str(K, I) + " is not principal");
  return *best;
}

/// First reduced-basis element with v_P = 1.
inline FieldElement primitive_element(const NumberField& K, const PrimePlace& P) {
  auto basis = reduced_basis(K, P.ideal);
  for (auto& x : basis)
    if (valuation(K, P, x) == 1) return x;
  throw std::logic_error("no primitive element in reduced basis");
}

/// Representative of x mod I in the fundamental parallelepiped of the reduced
/// basis, shortened over the neighbouring corners.
inline FieldElement reduced_residue(const NumberField& K, const FieldElement& x, const IdealRep& I) {
  if (!is_integral(K, x)) throw Error(ErrorKind::InvalidInput, "element not integral");
  auto basis = reduced_basis(K, I);
  if (K.is_rational()) {
    Integer a = I.a;
    return K.element(Rational(mod(x.a().get_num(), a)));
  }
  const FieldElement &b1 = basis[0], &b2 = basis[1];
  // solve x = s b1 + t b2 over Q using (a, b) coordinates
  Rational det = b1.a() * b2.b() - b2.a() * b1.b();
  Rational s = (x.a() * b2.b() - b2.a() * x.b()) / det;
  Rational t = (b1.a() * x.b() - x.a() * b1.b()) / det;
  FieldElement base = x - K.element(Rational(floor_of(s))) * b1 - K.element(Rational(floor_of(t))) * b2;
  FieldElement best = base;
  SizeOrdering ord(K);
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j) {
      FieldElement c = base - K.element(i) * b1 - K.element(j) * b2;
      if (ord(c, best)) best = c;
    }
  return best;
}

/// max(size(x) / N^(1/d), N^(1/d) / lsize(x)).
inline SizeValue kappa_ratio(const NumberField& K, const FieldElement& x, const Integer& N) {
  int deg = K.degree();
  SizeValue upper = size(K, x) * SizeValue::root_of(Rational(1) / Rational(N), deg);
  SizeValue lower = SizeValue::root_of(Rational(N), deg) * size(K, x.inverse());
  return upper < lower ? lower : upper;
}

/// All nonzero ideals of norm <= X.
inline std::vector<IdealRep> ideals_up_to(const NumberField& K, long X) {
  std::vector<IdealRep> out;
  if (K.is_rational()) {
    for (long n = 1; n <= X; ++n) {
      IdealRep I;
      I.a = n;
      out.push_back(I);
    }
    return out;
  }
  long t = K.omega_trace().get_si(), n = K.omega_norm().get_si();
  // primitive ideals <A, B + omega> with B^2 + t B + n = 0 mod A
  std::vector<std::pair<long, long>> prim;
  for (long A = 1; A <= X; ++A)
    for (long B = 0; B < A; ++B) {
      __int128 v = static_cast<__int128>(B) * B + static_cast<__int128>(t) * B + n;
      if (v % A == 0) prim.emplace_back(A, B);
    }
  for (long c = 1; c * c <= X; ++c)
    for (auto [A, B] : prim) {
      if (c * c * A > X) continue;
      IdealRep I;
      I.degree = 2;
      I.a = Integer(c * A);
      I.b = Integer(c * B);
      I.c = Integer(c);
      out.push_back(I);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fibra
