#pragma once

// Local analysis at a finite place v of K: Newton polygons, Strassmann bounds,
// Hensel lifting, root clustering, the Dedekind criterion and a ramification oracle.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "fibra/errors.hpp"
#include "fibra/factor.hpp"
#include "fibra/finite_field.hpp"
#include "fibra/ideal.hpp"

namespace fibra {

struct PAdicContext {
  NumberField K;
  PrimePlace place;
  int precision = 20;  // in powers of the uniformizer

  PAdicContext() = default;
  PAdicContext(NumberField k, PrimePlace p, int prec = 20) : K(k), place(std::move(p)), precision(prec) {}

  FieldElement uniformizer() const {
    if (place.kind == PlaceKind::Ramified) return K.omega() - K.element(Rational(place.r));
    return K.element(Rational(place.p));
  }
};

inline int valuation(const PAdicContext& ctx, const FieldElement& x) {
  return valuation(ctx.K, ctx.place, x);
}

/// v(f) = min over coefficients.
inline int poly_valuation(const PAdicContext& ctx, const KPoly& f) {
  int v = kInfiniteValuation;
  for (auto& c : f.coefficients()) v = std::min(v, valuation(ctx, c));
  return v;
}

// ---------------------------------------------------------------- polygons

struct NPSegment {
  int start = 0, end = 0;
  Rational slope;  // of the lower hull, non-decreasing along the polygon
  int length() const { return end - start; }
  Rational root_valuation() const { return -slope; }
};

struct NewtonPolygon {
  std::vector<std::pair<int, int>> points;
  std::vector<std::pair<int, int>> vertices;
  std::vector<NPSegment> segments;

  /// Number of roots with valuation > 0, counted with multiplicity; roots at 0 included.
  int roots_with_positive_valuation() const {
    int n = points.empty() ? 0 : points.front().first;
    for (auto& s : segments)
      if (s.root_valuation() > 0) n += s.length();
    return n;
  }
};

/// Lower convex hull of points (x, y) given with increasing x.
inline NewtonPolygon newton_polygon_from_points(std::vector<std::pair<int, int>> pts) {
  NewtonPolygon np;
  np.points = pts;
  std::vector<std::pair<int, int>> hull;
  for (auto& q : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      // drop b if it lies on or above segment a-q
      long cross = static_cast<long>(b.first - a.first) * (q.second - a.second) -
                   static_cast<long>(b.second - a.second) * (q.first - a.first);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(q);
  }
  np.vertices = hull;
  for (size_t i = 0; i + 1 < hull.size(); ++i) {
    NPSegment s;
    s.start = hull[i].first;
    s.end = hull[i + 1].first;
    s.slope = make_rational(hull[i + 1].second - hull[i].second, hull[i + 1].first - hull[i].first);
    np.segments.push_back(s);
  }
  return np;
}

inline NewtonPolygon newton_polygon(const KPoly& f, const PAdicContext& ctx) {
  if (f.is_zero()) throw Error(ErrorKind::InvalidInput, "Newton polygon of zero polynomial");
  std::vector<std::pair<int, int>> pts;
  for (size_t k = 0; k < f.size(); ++k)
    if (!f[k].is_zero()) pts.emplace_back(static_cast<int>(k), valuation(ctx, f[k]));
  return newton_polygon_from_points(pts);
}

struct StrassmannBounds {
  int min_valuation = 0;  // v of the largest |a_k|
  int kappa_min = 0, kappa_max = 0;
};

inline StrassmannBounds strassmann_bounds(const KPoly& f, const PAdicContext& ctx) {
  if (f.is_zero()) throw Error(ErrorKind::InvalidInput, "Strassmann bounds of zero polynomial");
  StrassmannBounds b;
  b.min_valuation = poly_valuation(ctx, f);
  b.kappa_min = -1;
  for (size_t k = 0; k < f.size(); ++k) {
    if (f[k].is_zero() || valuation(ctx, f[k]) != b.min_valuation) continue;
    if (b.kappa_min < 0) b.kappa_min = static_cast<int>(k);
    b.kappa_max = static_cast<int>(k);
  }
  return b;
}

// ---------------------------------------------------------------- local ring

struct PrecisionExhausted : std::runtime_error {
  PrecisionExhausted() : std::runtime_error("p-adic precision exhausted") {}
};

/// O_v modulo p^M, as Z_p (Q or split place) or Z_p[theta] with
/// theta^2 = s1 theta + s0 (theta = omega if inert, the uniformizer if ramified).
class LocalRing {
 public:
  using Elem = std::pair<Integer, Integer>;
  using Poly = std::vector<Elem>;  // lowest degree first

  /// prec is measured in powers of the uniformizer.
  LocalRing(const NumberField& K, const PrimePlace& P, int prec) : K_(K), P_(P), p_(P.p) {
    e_ = P.e;
    if (K.is_rational() || P.kind == PlaceKind::Split) mode_ = 0;
    else if (P.kind == PlaceKind::Inert) mode_ = 1;
    else mode_ = 2;
    M_ = (prec + e_ - 1) / e_ + 1;
    pM_ = ipow(p_, static_cast<unsigned long>(M_));
    Integer t = K.omega_trace(), n = K.omega_norm();
    if (mode_ == 1) {
      s1_ = t;
      s0_ = -n;
      residue_ = make_quadratic_field(p_, t, n);
    } else {
      residue_ = make_prime_field(p_);
    }
    if (mode_ == 2) {
      // pi = omega - r: pi^2 = (t - 2r) pi - (r^2 - t r + n)
      const Integer& r = P.r;
      s1_ = t - 2 * r;
      s0_ = -(r * r - t * r + n);
    }
  }

  int cap() const { return e_ * M_; }
  int e() const { return e_; }
  const Integer& p() const { return p_; }
  const FqRef& residue_field() const { return residue_; }
  const NumberField& field() const { return K_; }
  const PrimePlace& place() const { return P_; }

  Elem make(const Integer& a, const Integer& b = 0) const { return {mod(a, pM_), mod(b, pM_)}; }
  Elem zero() const { return {0, 0}; }
  Elem one() const { return {1, 0}; }
  bool is_zero(const Elem& x) const { return x.first == 0 && x.second == 0; }

  Elem add(const Elem& x, const Elem& y) const { return make(x.first + y.first, x.second + y.second); }
  Elem sub(const Elem& x, const Elem& y) const { return make(x.first - y.first, x.second - y.second); }
  Elem neg(const Elem& x) const { return make(-x.first, -x.second); }
  Elem mul(const Elem& x, const Elem& y) const {
    if (mode_ == 0) return make(x.first * y.first);
    Integer a2 = x.second * y.second;
    return make(x.first * y.first + s0_ * a2, x.first * y.second + x.second * y.first + s1_ * a2);
  }

  /// Valuation in powers of the uniformizer, cap() for zero.
  int val(const Elem& x) const {
    int v0 = x.first == 0 ? kInfiniteValuation : valuation(x.first, p_);
    int v1 = x.second == 0 ? kInfiniteValuation : valuation(x.second, p_);
    int v;
    if (mode_ == 0) v = v0 == kInfiniteValuation ? cap() : v0;
    else if (mode_ == 1) v = std::min(v0, v1) == kInfiniteValuation ? cap() : std::min(v0, v1);
    else {
      long a = v0 == kInfiniteValuation ? cap() : 2L * v0;
      long b = v1 == kInfiniteValuation ? cap() : 2L * v1 + 1;
      v = static_cast<int>(std::min<long>(std::min(a, b), cap()));
    }
    return std::min(v, cap());
  }

  Elem uniformizer() const { return mode_ == 2 ? Elem{0, 1} : Elem{p_, 0}; }

  /// x / pi^k, for val(x) >= k. Digits above the precision become garbage.
  Elem div_pi(Elem x, int k) const {
    for (int i = 0; i < k; ++i) {
      if (mode_ == 2) {
        // x / pi = x (pi - s1) / s0, and s0 = p * unit
        Elem y = mul(x, Elem{mod(Integer(-s1_), pM_), 1});
        Integer u = s0_ / p_;
        Integer uinv = inverse_mod(u, pM_);
        x = {mod(Integer((y.first / p_) * uinv), pM_), mod(Integer((y.second / p_) * uinv), pM_)};
      } else {
        x = {x.first / p_, x.second / p_};
      }
    }
    return x;
  }

  Elem inv_unit(const Elem& x) const {
    if (mode_ == 0) return make(inverse_mod(x.first, pM_));
    // conjugate of theta is s1 - theta, theta * theta' = -s0
    Integer nm = x.first * x.first + s1_ * x.first * x.second - s0_ * x.second * x.second;
    Integer inv = inverse_mod(mod(nm, pM_), pM_);
    return make((x.first + s1_ * x.second) * inv, -x.second * inv);
  }

  /// x / y for val(x) >= val(y).
  Elem div(const Elem& x, const Elem& y) const {
    int k = val(y);
    if (k >= cap()) throw PrecisionExhausted();
    return mul(div_pi(x, k), inv_unit(div_pi(y, k)));
  }

  Elem pi_pow(int k) const {
    Elem r = one();
    for (int i = 0; i < k; ++i) r = mul(r, uniformizer());
    return r;
  }

  /// Image of a v-integral element of K.
  Elem from_field(const FieldElement& x) const {
    auto [x0, x1] = coordinates(K_, K_.embed(x));
    Integer m;
    mpz_lcm(m.get_mpz_t(), x0.get_den().get_mpz_t(), x1.get_den().get_mpz_t());
    int j = valuation(m, p_);
    Integer pj = ipow(p_, static_cast<unsigned long>(j));
    Integer mu = m / pj;
    Integer y0 = x0.get_num() * (m / x0.get_den()), y1 = x1.get_num() * (m / x1.get_den());
    Integer big = pM_ * pj;
    Integer c0, c1;
    if (mode_ == 0) {
      c0 = mod(Integer(y0 + y1 * omega_hat(M_ + j)), big);
      c1 = 0;
    } else if (mode_ == 1) {
      c0 = mod(y0, big);
      c1 = mod(y1, big);
    } else {
      c0 = mod(Integer(y0 + y1 * P_.r), big);
      c1 = mod(y1, big);
    }
    if (c0 % pj != 0 || c1 % pj != 0) throw Error(ErrorKind::InvalidInput, "element not integral at place");
    Integer inv = inverse_mod(mu, pM_);
    return make(Integer(c0 / pj) * inv, Integer(c1 / pj) * inv);
  }

  /// An element of O_K with the same image.
  FieldElement to_field(const Elem& x) const {
    Integer c0 = fibra::symmetric_mod(x.first, pM_), c1 = fibra::symmetric_mod(x.second, pM_);
    if (mode_ == 0) return K_.element(Rational(c0));
    if (mode_ == 1) return K_.element(Rational(c0)) + K_.element(Rational(c1)) * K_.omega();
    return K_.element(Rational(c0)) + K_.element(Rational(c1)) * (K_.omega() - K_.element(Rational(P_.r)));
  }

  FqElem residue(const Elem& x) const {
    if (mode_ == 1) return FqElem(residue_, x.first, x.second);
    return FqElem(residue_, x.first);
  }
  Elem lift(const FqElem& x) const {
    if (mode_ == 1) return make(x.c0(), x.c1());
    return make(x.c0());
  }

  // polynomials
  Poly from_kpoly(const KPoly& f) const {
    Poly out;
    for (auto& c : f.coefficients()) out.push_back(from_field(c));
    return out;
  }
  KPoly to_kpoly(const Poly& f) const {
    std::vector<FieldElement> c;
    for (auto& x : f) c.push_back(to_field(x));
    return KPoly(std::move(c));
  }
  FqPoly residue(const Poly& f) const {
    std::vector<FqElem> c;
    for (auto& x : f) c.push_back(residue(x));
    return with_context(residue_, FqPoly(std::move(c)));
  }
  Poly lift(const FqPoly& f) const {
    Poly out;
    for (size_t i = 0; i < f.size(); ++i) out.push_back(lift(FqElem(residue_, f[i].c0(), f[i].c1())));
    return out;
  }
  Poly trim(Poly f) const {
    while (!f.empty() && is_zero(f.back())) f.pop_back();
    return f;
  }
  Poly padd(const Poly& a, const Poly& b) const {
    Poly r(std::max(a.size(), b.size()), zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = add(r[i], a[i]);
    for (size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
    return r;
  }
  Poly psub(const Poly& a, const Poly& b) const {
    Poly r(std::max(a.size(), b.size()), zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = add(r[i], a[i]);
    for (size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
    return r;
  }
  Poly pmul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, zero());
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
    return r;
  }
  Poly pscale(const Poly& a, const Elem& s) const {
    Poly r;
    for (auto& x : a) r.push_back(mul(x, s));
    return r;
  }
  /// Division with remainder by a monic polynomial.
  std::pair<Poly, Poly> pdivmod(Poly a, const Poly& b) const {
    Poly bt = trim(b);
    int db = static_cast<int>(bt.size()) - 1;
    a = trim(a);
    if (static_cast<int>(a.size()) - 1 < db) return {{}, a};
    Poly q(a.size() - bt.size() + 1, zero());
    for (size_t k = q.size(); k-- > 0;) {
      Elem c = a[k + static_cast<size_t>(db)];
      q[k] = c;
      for (size_t j = 0; j <= static_cast<size_t>(db); ++j) a[k + j] = sub(a[k + j], mul(c, bt[j]));
    }
    a.resize(static_cast<size_t>(db));
    return {q, a};
  }
  Elem peval(const Poly& f, const Elem& x) const {
    Elem acc = zero();
    for (size_t i = f.size(); i-- > 0;) acc = add(mul(acc, x), f[i]);
    return acc;
  }
  Poly pderiv(const Poly& f) const {
    Poly r;
    for (size_t i = 1; i < f.size(); ++i) r.push_back(mul(make(Integer(static_cast<long>(i))), f[i]));
    return r;
  }
  /// f(x + c).
  Poly taylor_shift(const Poly& f, const Elem& c) const {
    Poly acc;
    Poly lin{c, one()};
    for (size_t i = f.size(); i-- > 0;) acc = padd(pmul(acc, lin), Poly{f[i]});
    acc.resize(f.size(), zero());
    return acc;
  }

 private:
  Integer omega_hat(int digits) const {
    // root of x^2 - t x + n congruent to r, lifted by Newton's method
    Integer t = K_.omega_trace(), n = K_.omega_norm();
    if (K_.is_rational()) return 0;
    Integer mod_big = ipow(p_, static_cast<unsigned long>(digits));
    Integer x = P_.r;
    for (int prec = 1; prec < 2 * digits + 2; prec *= 2) {
      Integer fx = x * x - t * x + n, dfx = 2 * x - t;
      x = mod(Integer(x - fx * inverse_mod(mod(dfx, mod_big), mod_big)), mod_big);
    }
    return x;
  }

  NumberField K_;
  PrimePlace P_;
  Integer p_;
  int e_ = 1, mode_ = 0, M_ = 1;
  Integer pM_, s1_ = 0, s0_ = 0;
  FqRef residue_;
};

/// Largest power of p making every coefficient of the monic f v-integral via x -> x / p^k.
inline KPoly integral_monic(const PAdicContext& ctx, const KPoly& f_in, Integer* scale = nullptr) {
  KPoly f = monic(f_in.map([&](const FieldElement& c) { return ctx.K.embed(c); }));
  int n = f.degree();
  int e = ctx.place.e;
  int k = 0;
  for (int i = 0; i < n; ++i) {
    if (f[static_cast<size_t>(i)].is_zero()) continue;
    int v = valuation(ctx, f[static_cast<size_t>(i)]);
    // need v + k e (n - i) >= 0
    while (v + k * e * (n - i) < 0) ++k;
  }
  Integer c = ipow(ctx.place.p, static_cast<unsigned long>(k));
  if (scale) *scale = c;
  if (k == 0) return f;
  std::vector<FieldElement> out;
  for (int i = 0; i <= n; ++i)
    out.push_back(f[static_cast<size_t>(i)] * FieldElement(Rational(ipow(c, static_cast<unsigned long>(n - i)))));
  return KPoly(std::move(out));
}

// ---------------------------------------------------------------- Hensel

/// Root of f near x0, correct modulo pi^precision, as an element of O_K.
inline FieldElement hensel_lift(const KPoly& f, const FieldElement& x0, const PAdicContext& ctx) {
  FieldElement fx = f(x0);
  if (fx.is_zero()) return x0;
  KPoly df = f.derivative();
  FieldElement dfx = df(x0);
  if (dfx.is_zero()) throw Error(ErrorKind::HenselFails, "derivative vanishes at the start point");
  int v0 = valuation(ctx, fx), v1 = valuation(ctx, dfx);
  if (!(v0 > 2 * v1)) throw Error(ErrorKind::HenselFails, "|f(x0)| < |f'(x0)|^2 fails");
  if (valuation(ctx, x0) < 0) throw Error(ErrorKind::InvalidInput, "start point not integral");
  // scale f to integral coefficients (does not move roots)
  KPoly g = f;
  int vf = poly_valuation(ctx, f);
  if (vf < 0) {
    int k = (-vf + ctx.place.e - 1) / ctx.place.e;
    g = KPoly(FieldElement(Rational(ipow(ctx.place.p, static_cast<unsigned long>(k))))) * f;
    v1 += k * ctx.place.e;
  }
  LocalRing R(ctx.K, ctx.place, ctx.precision + 2 * v1 + 4);
  auto G = R.from_kpoly(g), dG = R.pderiv(G);
  auto x = R.from_field(x0);
  for (int it = 0; it < 200; ++it) {
    auto gx = R.peval(G, x);
    if (R.val(gx) >= ctx.precision + v1 + 1) break;
    auto dgx = R.peval(dG, x);
    x = R.sub(x, R.div(gx, dgx));
  }
  return R.to_field(x);
}

/// Roots of g near each root of f0: pairs (alpha_i, number of roots of g with |beta - alpha_i| < 1).
inline std::vector<std::pair<FieldElement, int>> cluster_roots(
    const KPoly& f0, const std::vector<std::pair<FieldElement, int>>& roots, const KPoly& g,
    const PAdicContext& ctx) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::HypothesisViolated, what); };
  if (poly_valuation(ctx, f0) != 0 || valuation(ctx, f0.lc()) != 0)
    fail("f0 must have unit Gauss norm and unit leading coefficient");
  KPoly prod(f0.lc());
  for (auto& [a, e] : roots) prod = prod * KPoly({-a, FieldElement(1)}).pow(static_cast<unsigned>(e));
  if (prod != f0) fail("listed roots do not account for f0");
  for (size_t i = 0; i < roots.size(); ++i) {
    if (valuation(ctx, roots[i].first) < 0) fail("roots of f0 must be integral");
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (valuation(ctx, roots[i].first - roots[j].first) != 0) fail("roots of f0 must be at mutual distance 1");
    KPoly d = f0;
    Rational fact = 1;
    for (int k = 0; k < roots[i].second; ++k) {
      d = d.derivative();
      fact *= k + 1;
    }
    if (valuation(ctx, d(roots[i].first) / FieldElement(fact)) != 0)
      fail("e-th derivative coefficient at a root must be a unit");
  }
  KPoly diff = f0 - g;
  if (!diff.is_zero() && poly_valuation(ctx, diff) <= 0) fail("g is not a perturbation of f0 (|f0 - g| < 1)");
  std::vector<std::pair<FieldElement, int>> out;
  for (auto& [a, e] : roots) {
    KPoly h = g.shift(a);
    out.emplace_back(a, newton_polygon(h, ctx).roots_with_positive_valuation());
  }
  return out;
}

// ---------------------------------------------------------------- Dedekind

/// Whether v divides the index [O_L : O_v[x]/(g)] for monic v-integral g.
inline bool dedekind_index_test(const LocalRing& R, const LocalRing::Poly& g) {
  const FqRef& F = R.residue_field();
  FqPoly gb = R.residue(g);
  auto fac = factor_fq(F, gb);
  LocalRing::Poly g1{R.one()}, g2{R.one()};
  FqPoly h(FqElem(F, 1));
  for (auto& [phi, m] : fac) {
    auto lp = R.lift(phi);
    g1 = R.pmul(g1, lp);
    for (int i = 1; i < m; ++i) g2 = R.pmul(g2, lp);
    if (m > 1) h = h * phi;
  }
  if (h.degree() < 1) return false;
  auto diff = R.psub(g, R.pmul(g1, g2));
  LocalRing::Poly q;
  for (auto& c : diff) {
    if (R.val(c) < 1) throw std::logic_error("Dedekind lift inconsistent");
    q.push_back(R.div_pi(c, 1));
  }
  FqPoly Fb = R.residue(q);
  return gcd(with_context(F, Fb), h).degree() > 0;
}

inline bool dedekind_index_test(const QPoly& g, const Integer& p) {
  NumberField Q = NumberField::rational();
  PrimePlace P = place_from_prime(Q, p);
  if (!is_integer(g.lc()) || g.lc() != 1) throw Error(ErrorKind::InvalidInput, "Dedekind test needs a monic polynomial");
  for (auto& c : g.coefficients())
    if (!is_integer(c)) throw Error(ErrorKind::InvalidInput, "Dedekind test needs integral coefficients");
  LocalRing R(Q, P, 8);
  return dedekind_index_test(R, R.from_kpoly(to_kpoly(g)));
}

// ---------------------------------------------------------------- oracle

enum class Verdict { Ramified, Unramified, Undetermined };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Ramified: return "ramified";
    case Verdict::Unramified: return "unramified";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

struct OracleResult {
  Verdict status = Verdict::Undetermined;
  int stage = 0;
  int precision = 0;
};

namespace detail {

/// Monic factors of G (precision prec) lifting the coprime residue factors.
inline std::vector<LocalRing::Poly> local_hensel_split(const LocalRing& R, const LocalRing::Poly& G,
                                                       const std::vector<FqPoly>& parts, int prec) {
  if (parts.size() == 1) return {G};
  const FqRef& F = R.residue_field();
  size_t half = parts.size() / 2;
  FqPoly a(FqElem(F, 1)), b(FqElem(F, 1));
  std::vector<FqPoly> left(parts.begin(), parts.begin() + static_cast<long>(half));
  std::vector<FqPoly> right(parts.begin() + static_cast<long>(half), parts.end());
  for (auto& x : left) a = a * x;
  for (auto& x : right) b = b * x;
  auto [one, s, t] = extended_gcd(with_context(F, a), with_context(F, b));
  auto A = R.lift(monic(a)), B = R.lift(monic(b));
  for (int k = 1; k < prec; ++k) {
    auto E = R.psub(G, R.pmul(A, B));
    LocalRing::Poly Ek;
    bool zero = true;
    for (auto& c : E) {
      if (R.val(c) < k) throw std::logic_error("local Hensel lifting lost congruence");
      Ek.push_back(R.div_pi(c, k));
      if (!R.is_zero(Ek.back())) zero = false;
    }
    if (zero) continue;
    FqPoly ef = R.residue(Ek);
    auto [q, sigma] = divmod(t * ef, with_context(F, R.residue(A)));
    FqPoly tau = s * ef + q * R.residue(B);
    auto pk = R.pi_pow(k);
    A = R.padd(A, R.pscale(R.lift(sigma), pk));
    B = R.padd(B, R.pscale(R.lift(tau), pk));
  }
  auto L = local_hensel_split(R, A, left, prec);
  auto Rt = local_hensel_split(R, B, right, prec);
  L.insert(L.end(), Rt.begin(), Rt.end());
  return L;
}

/// Ramification of the roots of monic integral G, known modulo pi^prec.
inline Verdict local_analyze(const LocalRing& R, LocalRing::Poly G, int prec, int depth = 0) {
  G = R.trim(G);
  int n = static_cast<int>(G.size()) - 1;
  if (n <= 1) return Verdict::Unramified;
  if (prec <= 1 || depth > 64) throw PrecisionExhausted();
  const FqRef& F = R.residue_field();
  auto fac = factor_fq(F, R.residue(G));
  bool all_simple = true;
  for (auto& [phi, m] : fac)
    if (m > 1) all_simple = false;
  if (all_simple) return Verdict::Unramified;
  if (fac.size() > 1) {
    std::vector<FqPoly> parts;
    for (auto& [phi, m] : fac) parts.push_back(phi.pow(static_cast<unsigned>(m)));
    auto pieces = local_hensel_split(R, G, parts, prec);
    Verdict res = Verdict::Unramified;
    for (size_t i = 0; i < pieces.size(); ++i) {
      if (fac[i].second == 1) continue;
      Verdict v = local_analyze(R, pieces[i], prec, depth + 1);
      if (v == Verdict::Ramified) return v;
      if (v == Verdict::Undetermined) res = v;
    }
    return res;
  }
  const FqPoly& phi = fac[0].first;
  if (phi.degree() == 1) {
    auto c = R.lift(-phi.coeff(0));
    auto H = R.taylor_shift(G, c);
    int v0 = R.val(H[0]);
    if (v0 >= prec) throw PrecisionExhausted();
    std::vector<std::pair<int, int>> pts;
    for (int k = 0; k <= n; ++k) {
      int v = R.val(H[static_cast<size_t>(k)]);
      if (v >= prec) continue;  // lies above the hull, which stays below v0
      pts.emplace_back(k, v);
    }
    auto np = newton_polygon_from_points(pts);
    Rational smin = -1;
    for (auto& seg : np.segments) {
      Rational rv = seg.root_valuation();
      if (!is_integer(rv)) return Verdict::Ramified;
      if (smin < 0 || rv < smin) smin = rv;
    }
    int s = static_cast<int>(smin.get_num().get_si());
    LocalRing::Poly H2(H.size(), R.zero());
    for (int k = 0; k <= n; ++k) {
      int need = (n - k) * s;
      auto& c0 = H[static_cast<size_t>(k)];
      if (R.val(c0) >= prec) continue;
      H2[static_cast<size_t>(k)] = R.div_pi(c0, need);
    }
    return local_analyze(R, H2, prec - n * s, depth + 1);
  }
  // residue factor of higher degree: first-order phi-adic polygon
  auto lphi = R.lift(phi);
  std::vector<LocalRing::Poly> coeffs;
  LocalRing::Poly rest = G;
  while (!R.trim(rest).empty()) {
    auto [q, r] = R.pdivmod(rest, lphi);
    coeffs.push_back(r);
    rest = q;
  }
  std::vector<std::pair<int, int>> pts;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    int v = prec;
    for (auto& c : coeffs[i]) v = std::min(v, R.val(c));
    if (v >= prec) {
      if (i == 0) throw PrecisionExhausted();
      continue;
    }
    pts.emplace_back(static_cast<int>(i), v);
  }
  auto np = newton_polygon_from_points(pts);
  bool all_linear = true;
  for (auto& seg : np.segments) {
    if (!is_integer(seg.root_valuation())) return Verdict::Ramified;
    if (seg.length() > 1) all_linear = false;
  }
  return all_linear ? Verdict::Unramified : Verdict::Undetermined;
}

}  // namespace detail

/// Ramification of v in K(alpha)/K for a root alpha of the irreducible g.
inline OracleResult local_ramified_oracle(const NumberField& K, const KPoly& g, const PrimePlace& v) {
  OracleResult res;
  PAdicContext ctx(K, v);
  if (g.degree() <= 1) {
    res.status = Verdict::Unramified;
    res.stage = 1;
    return res;
  }
  KPoly h = integral_monic(ctx, g);
  FieldElement disc = discriminant(h);
  if (disc.is_zero()) throw Error(ErrorKind::InvalidInput, "oracle needs a separable polynomial");
  int vd = valuation(ctx, disc);
  if (vd == 0) {
    res.status = Verdict::Unramified;
    res.stage = 1;
    return res;
  }
  {
    LocalRing R(K, v, 8);
    if (!dedekind_index_test(R, R.from_kpoly(h))) {
      res.status = Verdict::Ramified;
      res.stage = 2;
      res.precision = 1;
      return res;
    }
  }
  int e = v.e;
  for (int N = 20 * e; N <= 320 * e; N *= 2) {
    try {
      LocalRing R(K, v, N + vd + 4);
      Verdict out = detail::local_analyze(R, R.from_kpoly(h), N);
      res.status = out;
      res.stage = out == Verdict::Undetermined ? 4 : 3;
      res.precision = N;
      return res;
    } catch (const PrecisionExhausted&) {
      continue;
    }
  }
  res.status = Verdict::Undetermined;
  res.stage = 4;
  res.precision = 320 * e;
  return res;
}

}  // namespace fibra
