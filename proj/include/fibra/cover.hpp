#pragma once

// The cover t: X -> P^1 given by a plane model F(T, U) = 0: fibers, singular
// points, critical values with ramification profiles, and Puiseux expansions.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fibra/bivariate.hpp"
#include "fibra/extension.hpp"
#include "fibra/ideal.hpp"
#include "fibra/padic.hpp"

namespace fibra {

struct PlaneCover {
  NumberField K;
  BiPoly F;
  int n = 0;
  std::optional<int> genus;
  std::string name;
  // F(witness, U) is irreducible of degree n and F has no factor free of U
  FieldElement irreducibility_witness;
  bool witness_in_U = false;  // witness specializes U instead of T
};

/// Rational primes where x is not a unit at some place (plus denominators of its coordinates).
inline std::set<Integer> element_support(const NumberField& K, const FieldElement& x) {
  std::set<Integer> out;
  if (x.is_zero()) return out;
  for (auto& p : prime_support(norm(K, x))) out.insert(p);
  auto [x0, x1] = coordinates(K, K.embed(x));
  for (auto& p : prime_divisors(x0.get_den())) out.insert(p);
  for (auto& p : prime_divisors(x1.get_den())) out.insert(p);
  return out;
}

inline bool is_irreducible_poly(const NumberField& K, const KPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  if (f.degree() == 2) return !sqrt_in_field(K, f[1] * f[1] - FieldElement(4) * f[0] * f[2]);
  auto fac = factor_over_K(K, f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

inline PlaneCover make_cover(const NumberField& K, BiPoly F, std::optional<int> genus = std::nullopt,
                             std::string name = "") {
  F = F.map([&](const KPoly& c) { return c.map([&](const FieldElement& x) { return K.embed(x); }); });
  PlaneCover C;
  C.K = K;
  C.F = F;
  C.n = deg_U(F);
  C.genus = genus;
  C.name = std::move(name);
  if (C.n < 2) throw Error(ErrorKind::InvalidInput, "cover needs degree n >= 2 in U");
  if (deg_T(F) < 1) throw Error(ErrorKind::InvalidInput, "F must involve T");
  if (genus && *genus < 0) throw Error(ErrorKind::InvalidInput, "genus must be nonnegative");
  KPoly content;
  for (auto& c : F.coefficients()) content = gcd(content, c);
  if (content.degree() > 0)
    throw Error(ErrorKind::InvalidInput, "F is reducible: factor " + format_kpoly(content, "T") + " free of U");
  KPoly rcontent;
  BiPoly Ft = transpose(F);
  for (auto& c : Ft.coefficients()) rcontent = gcd(rcontent, c);
  if (rcontent.degree() > 0)
    throw Error(ErrorKind::InvalidInput, "F is reducible: factor " + format_kpoly(rcontent, "U") + " free of T");
  for (long k = 0; k <= 60; ++k) {
    long tau = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
    FieldElement x(tau);
    if (F.lc()(x).is_zero()) continue;
    if (is_irreducible_poly(K, specialize_T(F, x))) {
      C.irreducibility_witness = x;
      return C;
    }
  }
  for (long k = 0; k <= 60; ++k) {
    long u = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
    FieldElement x(u);
    if (Ft.lc()(x).is_zero()) continue;
    if (is_irreducible_poly(K, specialize_T(Ft, x))) {
      C.irreducibility_witness = x;
      C.witness_in_U = true;
      return C;
    }
  }
  throw Error(ErrorKind::InvalidInput, "could not certify that F is irreducible over " + K.str());
}

inline KPoly fiber_poly(const PlaneCover& C, const FieldElement& tau) { return specialize_T(C.F, tau); }

/// S^{deg_T F} F(1/S, U): the model around t = infinity.
inline BiPoly inverted_model(const PlaneCover& C) {
  int dt = deg_T(C.F);
  return C.F.map([&](const KPoly& c) {
    std::vector<FieldElement> r(static_cast<size_t>(dt) + 1, FieldElement(0));
    for (size_t i = 0; i < c.size(); ++i) r[static_cast<size_t>(dt) - i] = c[i];
    return KPoly(std::move(r));
  });
}

inline KPoly fiber_poly_infinity(const PlaneCover& C) { return specialize_T(inverted_model(C), FieldElement(0)); }

// ---------------------------------------------------------------- branches

/// G(S, V) over L as a polynomial in V with coefficients in L[S].
using LocalBi = Polynomial<EPoly>;

namespace detail {

inline int s_order(const EPoly& a) { return a.is_zero() ? kInfiniteValuation : a.order(); }

/// Ramification indices (with respect to S) of the branches of G through (0, 0)
/// along which V -> 0, where V = 0 has multiplicity mult in G(0, V).
/// Empty optional when a branch needs a field larger than L.
inline std::optional<std::vector<int>> branch_indices(const LocalBi& G, int mult, int depth = 0) {
  std::vector<int> out;
  if (mult <= 0) return out;
  if (mult == 1) return std::vector<int>{1};
  if (depth > 40) return std::nullopt;
  if (G[0].is_zero()) {
    // V = 0 is itself a branch
    std::vector<EPoly> rest(G.coefficients().begin() + 1, G.coefficients().end());
    auto sub = branch_indices(LocalBi(std::move(rest)), mult - 1, depth + 1);
    if (!sub) return std::nullopt;
    sub->push_back(1);
    return sub;
  }
  std::vector<std::pair<int, int>> pts;
  for (int j = 0; j <= mult; ++j) {
    int o = s_order(G.coeff(static_cast<size_t>(j)));
    if (o < kInfiniteValuation) pts.emplace_back(j, o);
  }
  auto np = newton_polygon_from_points(pts);
  for (size_t si = 0; si < np.vertices.size() - 1; ++si) {
    auto [j0, i0] = np.vertices[si];
    auto [j1, i1] = np.vertices[si + 1];
    int dj = j1 - j0, di = i0 - i1;
    long g = std::gcd(dj, di);
    int p = dj / static_cast<int>(g), q = di / static_cast<int>(g);
    std::vector<ExtElement> ec;
    for (int k = 0; k <= g; ++k)
      ec.push_back(G.coeff(static_cast<size_t>(j0 + p * k)).coeff(static_cast<size_t>(i0 - q * k)));
    EPoly E(std::move(ec));
    auto sq = squarefree_decomposition(E);
    for (size_t m = 1; m <= sq.size(); ++m) {
      const EPoly& s = sq[m - 1];
      if (s.degree() < 1) continue;
      if (m == 1) {
        for (int r = 0; r < s.degree(); ++r) out.push_back(p);
        continue;
      }
      if (p != 1 || s.degree() != 1) return std::nullopt;
      ExtElement c = -s[0] / s[1];
      // V = S^q (c + V1), then strip the common power of S
      LocalBi acc;
      LocalBi lin({EPoly(c), EPoly(ExtElement(1))});
      for (size_t j = G.size(); j-- > 0;) {
        EPoly shifted = G[j] * EPoly::monomial(ExtElement(1), static_cast<size_t>(q) * j);
        acc = acc * lin + LocalBi(shifted);
      }
      int mn = kInfiniteValuation;
      for (auto& a : acc.coefficients()) mn = std::min(mn, s_order(a));
      LocalBi G1 = acc.map([&](const EPoly& a) {
        if (a.is_zero()) return a;
        std::vector<ExtElement> c2(a.coefficients().begin() + mn, a.coefficients().end());
        return EPoly(std::move(c2));
      });
      auto sub = branch_indices(G1, static_cast<int>(m), depth + 1);
      if (!sub) return std::nullopt;
      out.insert(out.end(), sub->begin(), sub->end());
    }
  }
  return out;
}

/// G(S, V) = F(alpha + S, u0 + V).
inline LocalBi local_model(const ExtRef& L, const BiPoly& F, const ExtElement& u0) {
  ExtElement alpha = ExtElement::generator(L);
  LocalBi acc;
  LocalBi lin({EPoly(u0), EPoly(ExtElement(1))});
  for (size_t j = F.size(); j-- > 0;) acc = acc * lin + LocalBi(to_epoly(L, F[j]).shift(alpha));
  return acc;
}

/// G(S, V) = V^n F(alpha + S, 1/V).
inline LocalBi local_model_at_u_infinity(const ExtRef& L, const BiPoly& F) {
  ExtElement alpha = ExtElement::generator(L);
  int n = F.degree();
  std::vector<EPoly> c(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) c[static_cast<size_t>(n - j)] = to_epoly(L, F[static_cast<size_t>(j)]).shift(alpha);
  return LocalBi(std::move(c));
}

}  // namespace detail

struct FiberAnalysis {
  bool critical = false;
  bool decided = true;                    // false when no e >= 2 is known but some branch is unresolved
  std::optional<std::vector<int>> profile;  // sorted descending
  bool has_singular_point = false;
};

/// Ramification of t over the root alpha of the irreducible phi, for the model F.
inline FiberAnalysis analyze_fiber(const NumberField& K, const BiPoly& F, const KPoly& phi) {
  ExtRef L = make_extension(K, phi);
  int n = F.degree();
  EPoly f = specialize_at_generator(L, F);
  EPoly ft = specialize_at_generator(L, d_dT(F));
  std::vector<int> es;
  bool available = true;
  FiberAnalysis out;
  auto sq = squarefree_decomposition(f);
  for (size_t m = 1; m <= sq.size(); ++m) {
    const EPoly& s = sq[m - 1];
    if (s.degree() < 1) continue;
    if (m == 1) {
      for (int r = 0; r < s.degree(); ++r) es.push_back(1);
      continue;
    }
    EPoly h = gcd(s, ft);
    EPoly smooth = exact_quotient(monic(s), h);
    for (int r = 0; r < smooth.degree(); ++r) es.push_back(static_cast<int>(m));
    if (h.degree() < 1) continue;
    out.has_singular_point = true;
    std::vector<ExtElement> roots;
    if (h.degree() == 1) {
      roots.push_back(-h[0] / h[1]);
    } else if (phi.degree() == 1) {
      KPoly hk = h.map([](const ExtElement& c) { return c.value().coeff(0); });
      for (auto& [g, e] : factor_over_K(K, hk).factors) {
        if (g.degree() == 1) roots.push_back(ExtElement(L, KPoly(-g[0] / g[1])));
        else available = false;
      }
    } else {
      available = false;
    }
    for (auto& u0 : roots) {
      auto b = detail::branch_indices(detail::local_model(L, F, u0), static_cast<int>(m));
      if (b) es.insert(es.end(), b->begin(), b->end());
      else available = false;
    }
  }
  int drop = n - f.degree();
  if (drop > 0) {
    auto b = detail::branch_indices(detail::local_model_at_u_infinity(L, F), drop);
    if (b) es.insert(es.end(), b->begin(), b->end());
    else available = false;
  }
  std::sort(es.rbegin(), es.rend());
  out.critical = !es.empty() && es.front() >= 2;
  if (available) out.profile = es;
  out.decided = available || out.critical;
  return out;
}

// ---------------------------------------------------------------- critical data

struct CriticalValue {
  bool at_infinity = false;
  KPoly factor;  // monic irreducible over K, unused at infinity
  std::optional<std::vector<int>> profile;
};

struct CriticalData {
  KPoly R;
  KPoly Delta;
  bool infinity_critical = false;
  std::vector<CriticalValue> values;  // finite factors of Delta in order, then infinity if critical

  std::vector<KPoly> delta_factors() const {
    std::vector<KPoly> out;
    for (auto& v : values)
      if (!v.at_infinity) out.push_back(v.factor);
    return out;
  }
  const CriticalValue* infinity() const {
    for (auto& v : values)
      if (v.at_infinity) return &v;
    return nullptr;
  }
  const CriticalValue* value_for(const KPoly& factor) const {
    for (auto& v : values)
      if (!v.at_infinity && v.factor == factor) return &v;
    return nullptr;
  }
  /// Number of finite critical values.
  int m() const { return Delta.degree(); }
};

inline CriticalData critical_polynomial(const PlaneCover& C) {
  CriticalData cd;
  cd.R = resultant_U(C.F, d_dU(C.F));
  if (cd.R.is_zero()) throw Error(ErrorKind::DegenerateModel, "resultant of F and dF/dU vanishes");
  KPoly delta(FieldElement(1));
  std::vector<std::string> undecided;
  if (cd.R.degree() > 0) {
    auto fac = factor_over_K(C.K, squarefree_part(cd.R));
    for (auto& [phi, mult] : fac.factors) {
      auto fa = analyze_fiber(C.K, C.F, phi);
      if (!fa.decided) {
        undecided.push_back(format_kpoly(phi, "T"));
        continue;
      }
      if (!fa.critical) continue;
      delta = delta * phi;
      cd.values.push_back(CriticalValue{false, phi, fa.profile});
    }
  }
  // finite values by degree, then by coefficients from the constant term up
  auto key_less = [](const CriticalValue& x, const CriticalValue& y) {
    if (x.factor.degree() != y.factor.degree()) return x.factor.degree() < y.factor.degree();
    for (int i = 0; i <= x.factor.degree(); ++i) {
      const FieldElement &a = x.factor[i], &b = y.factor[i];
      if (a.a() != b.a()) return a.a() > b.a();
      if (a.b() != b.b()) return a.b() > b.b();
    }
    return false;
  };
  std::sort(cd.values.begin(), cd.values.end(), key_less);
  auto fi = analyze_fiber(C.K, inverted_model(C), KPoly::x());
  if (!fi.decided) undecided.push_back("infinity");
  if (!undecided.empty()) {
    std::string msg = "cannot decide criticality at";
    for (auto& s : undecided) msg += " [" + s + "]";
    throw Error(ErrorKind::DegenerateModel, msg);
  }
  cd.infinity_critical = fi.critical;
  if (fi.critical) cd.values.push_back(CriticalValue{true, KPoly(), fi.profile});
  cd.Delta = monic(delta);
  if (C.genus) {
    int bound = 2 * *C.genus + 2 * C.n - 2;
    if (cd.m() > bound)
      throw Error(ErrorKind::InvalidInput, "deg Delta = " + std::to_string(cd.m()) + " exceeds 2g + 2n - 2 = " +
                                               std::to_string(bound) + "; the supplied genus is inconsistent");
  }
  return cd;
}

// ---------------------------------------------------------------- singular points

struct SingularLocus {
  KPoly t_factor;  // irreducible over K
  EPoly u_poly;    // over K[T]/(t_factor)
  int degree = 0;  // number of geometric points
  std::optional<FieldElement> t, u;
};

inline std::vector<SingularLocus> singular_points(const PlaneCover& C) {
  std::vector<SingularLocus> out;
  KPoly R = resultant_U(C.F, d_dU(C.F));
  if (R.degree() < 1) return out;
  BiPoly FT = d_dT(C.F), FU = d_dU(C.F);
  for (auto& [phi, mult] : factor_over_K(C.K, squarefree_part(R)).factors) {
    ExtRef L = make_extension(C.K, phi);
    EPoly h = gcd(gcd(specialize_at_generator(L, C.F), specialize_at_generator(L, FU)),
                  specialize_at_generator(L, FT));
    if (h.degree() < 1) continue;
    SingularLocus s;
    s.t_factor = phi;
    s.u_poly = h;
    s.degree = phi.degree() * h.degree();
    if (phi.degree() == 1 && h.degree() == 1) {
      s.t = -phi[0];
      s.u = (-h[0] / h[1]).value().coeff(0);
    }
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------- Puiseux

struct PuiseuxSeries {
  FieldElement tau0, u0;
  int nu = 0;                    // order of u - u0 in t - tau0; 0 if the computed part vanishes
  std::vector<FieldElement> a;   // a[0] = u0, a[k] coefficient of (t - tau0)^k
  int N = 0;

  bool is_zero() const { return nu == 0; }
  FieldElement evaluate(const FieldElement& t) const {
    FieldElement acc(0);
    for (size_t k = a.size(); k-- > 0;) acc = acc * t + a[k];
    return acc;
  }
};

/// F(tau0 + t, u0 + w) with index the power of w.
inline BiPoly recentred(const BiPoly& F, const FieldElement& tau0, const FieldElement& u0) {
  BiPoly acc;
  BiPoly lin({KPoly(u0), KPoly(FieldElement(1))});
  for (size_t j = F.size(); j-- > 0;) acc = acc * lin + BiPoly(F[j].shift(tau0));
  return acc;
}

inline void check_on_curve(const BiPoly& F, const FieldElement& tau0, const FieldElement& u0) {
  if (!specialize_T(F, tau0)(u0).is_zero())
    throw Error(ErrorKind::InvalidInput, "(" + tau0.str() + ", " + u0.str() + ") is not on the curve");
}

/// Works on any plane model, including degree one in U.
inline PuiseuxSeries puiseux_expand(const BiPoly& F, const FieldElement& tau0, const FieldElement& u0, int N) {
  if (N < 1) throw Error(ErrorKind::InvalidInput, "truncation order must be positive");
  check_on_curve(F, tau0, u0);
  FieldElement fu = specialize_T(d_dU(F), tau0)(u0);
  FieldElement ft = specialize_T(d_dT(F), tau0)(u0);
  if (fu.is_zero() && ft.is_zero()) throw Error(ErrorKind::NotRegular, "base point is singular on the model");
  if (fu.is_zero()) throw Error(ErrorKind::RamifiedBasePoint, "t is ramified at the base point");
  BiPoly G = recentred(F, tau0, u0);
  KPoly w;
  PuiseuxSeries s;
  s.tau0 = tau0;
  s.u0 = u0;
  s.N = N;
  s.a.push_back(u0);
  auto eval_trunc = [&](size_t terms) {
    KPoly acc;
    for (size_t j = G.size(); j-- > 0;) acc = (acc * w + G[j]).truncated(terms);
    return acc;
  };
  for (int k = 1; k <= N; ++k) {
    FieldElement r = eval_trunc(static_cast<size_t>(k) + 1).coeff(static_cast<size_t>(k));
    FieldElement ak = -r / fu;
    s.a.push_back(ak);
    if (!ak.is_zero()) {
      w = w + KPoly::monomial(ak, static_cast<size_t>(k));
      if (s.nu == 0) s.nu = k;
    }
  }
  if (!eval_trunc(static_cast<size_t>(N) + 1).is_zero())
    throw std::logic_error("Puiseux recursion failed to annihilate F");
  return s;
}

inline PuiseuxSeries puiseux_expand(const PlaneCover& C, const FieldElement& tau0, const FieldElement& u0, int N) {
  return puiseux_expand(C.F, tau0, u0, N);
}

struct EisensteinReport {
  std::vector<std::pair<PrimePlace, bool>> places;  // (place, all coefficients integral)
  std::vector<Integer> failing_primes;
};

inline EisensteinReport eisenstein_check(const NumberField& K, const PuiseuxSeries& s, long P) {
  EisensteinReport rep;
  std::set<Integer> bad;
  for (auto& v : places_up_to(K, P)) {
    bool ok = true;
    for (auto& c : s.a)
      if (!c.is_zero() && valuation(K, v, c) < 0) ok = false;
    rep.places.emplace_back(v, ok);
    if (!ok) bad.insert(v.p);
  }
  rep.failing_primes.assign(bad.begin(), bad.end());
  return rep;
}

// ---------------------------------------------------------------- norm relation

struct NormRelationSample {
  FieldElement tau;
  std::optional<FieldElement> u;
  int v_t = 0, v_u = 0;
  bool holds = false;
  std::string skipped;  // nonempty when no nearby point was found
};

struct NormRelationReport {
  int e_t = 1, e_u = 1;  // orders of t - t(A) and u - u(A) at A
  std::vector<NormRelationSample> samples;
  int violations = 0;
};

/// Primes where the identity is not claimed: data of F, of A, and of the relevant derivative.
inline std::set<Integer> norm_relation_exceptional(const PlaneCover& C, const FieldElement& tau0,
                                                   const FieldElement& u0) {
  std::set<Integer> out;
  for (auto& c : C.F.coefficients())
    for (auto& x : c.coefficients()) {
      auto [x0, x1] = coordinates(C.K, x);
      for (auto& p : prime_divisors(x0.get_den())) out.insert(p);
      for (auto& p : prime_divisors(x1.get_den())) out.insert(p);
    }
  for (auto& x : {tau0, u0}) {
    auto [x0, x1] = coordinates(C.K, C.K.embed(x));
    for (auto& p : prime_divisors(x0.get_den())) out.insert(p);
    for (auto& p : prime_divisors(x1.get_den())) out.insert(p);
  }
  FieldElement fu = specialize_T(d_dU(C.F), tau0)(u0);
  FieldElement ft = specialize_T(d_dT(C.F), tau0)(u0);
  auto add = [&](const FieldElement& x) {
    for (auto& p : element_support(C.K, x)) out.insert(p);
  };
  if (!fu.is_zero()) {
    add(fu);
    KPoly g = specialize_U(C.F, u0).shift(tau0);
    if (g.order() >= 0) add(g[static_cast<size_t>(g.order())]);
  } else {
    add(ft);
    KPoly g = specialize_T(C.F, tau0).shift(u0);
    if (g.order() >= 0) add(g[static_cast<size_t>(g.order())]);
  }
  for (long p : primes_up_to(C.n)) out.insert(Integer(p));
  return out;
}

inline NormRelationReport verify_norm_relation(const PlaneCover& C, const FieldElement& tau0, const FieldElement& u0,
                                               const PrimePlace& v, const std::vector<FieldElement>& samples) {
  check_on_curve(C.F, tau0, u0);
  FieldElement fu = specialize_T(d_dU(C.F), tau0)(u0);
  FieldElement ft = specialize_T(d_dT(C.F), tau0)(u0);
  if (fu.is_zero() && ft.is_zero()) throw Error(ErrorKind::NotRegular, "base point is singular on the model");
  if (norm_relation_exceptional(C, tau0, u0).count(v.p))
    throw Error(ErrorKind::BadPlace, "place above " + v.p.get_str() + " is exceptional for this base point");
  NormRelationReport rep;
  if (!fu.is_zero()) rep.e_u = specialize_U(C.F, u0).shift(tau0).order();
  else rep.e_t = specialize_T(C.F, tau0).shift(u0).order();
  for (auto& tau : samples) {
    NormRelationSample smp;
    smp.tau = tau;
    smp.v_t = valuation(C.K, v, tau - tau0);
    if (smp.v_t < 1 || smp.v_t >= kInfiniteValuation) {
      smp.skipped = "sample not in the residue disc of A";
      rep.samples.push_back(smp);
      continue;
    }
    KPoly f = fiber_poly(C, tau);
    int want = smp.v_t * rep.e_u / rep.e_t + 2;
    PAdicContext ctx(C.K, v, 4 * want + 20);
    std::vector<FieldElement> cands;
    if (rep.e_t == 1) {
      try {
        cands.push_back(hensel_lift(f, u0, ctx));
      } catch (const Error&) {
      }
    } else {
      for (auto& [g, m] : factor_over_K(C.K, f).factors)
        if (g.degree() == 1) cands.push_back(-g[0] / g[1]);
    }
    bool found = false;
    for (auto& u : cands) {
      int vu = valuation(C.K, v, u - u0);
      if (vu < 1) continue;
      found = true;
      smp.u = u;
      smp.v_u = vu;
      smp.holds = make_rational(smp.v_t, rep.e_t) == make_rational(vu, rep.e_u);
      if (!smp.holds) ++rep.violations;
      rep.samples.push_back(smp);
    }
    if (!found) {
      smp.skipped = "no point of X(K_v) over the sample near A";
      rep.samples.push_back(smp);
    }
  }
  return rep;
}

}  // namespace fibra
