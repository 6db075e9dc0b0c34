#pragma once

// Arithmetic ramification in the fibers of a cover: the bad set S, predictions
// from the critical polynomial and profiles, and cross-checks against the local oracle.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fibra/cover.hpp"
#include "fibra/ordering.hpp"

namespace fibra {

inline std::string place_label(const NumberField& K, const PrimePlace& v) {
  if (K.is_rational()) return v.p.get_str();
  if (v.kind == PlaceKind::Inert) return "(" + v.p.get_str() + ")";
  return "(" + v.p.get_str() + ", " + (K.omega() - K.element(Rational(v.r))).str() + ")";
}

struct BadSet {
  std::set<Integer> vertical, collision, definition_field, all;
  bool contains(const Integer& p) const { return all.count(p) > 0; }
  bool contains(const PrimePlace& v) const { return contains(v.p); }
};

namespace detail {

inline void add_support(std::set<Integer>& s, const NumberField& K, const FieldElement& x) {
  for (auto& p : element_support(K, x)) s.insert(p);
}

inline void add_denominators(std::set<Integer>& s, const NumberField& K, const FieldElement& x) {
  auto [x0, x1] = coordinates(K, K.embed(x));
  for (auto& p : prime_divisors(x0.get_den())) s.insert(p);
  for (auto& p : prime_divisors(x1.get_den())) s.insert(p);
}

/// Primes p such that some place above p could divide every given element.
inline void add_common_support(std::set<Integer>& s, const NumberField& K, const std::vector<FieldElement>& xs) {
  Integer g = 0;
  for (auto& x : xs) {
    if (x.is_zero()) continue;
    Rational nx = norm(K, x);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nx.get_num().get_mpz_t());
  }
  if (g == 0 || abs(g) == 1) return;
  for (auto& p : prime_divisors(abs(g))) s.insert(p);
}

inline std::vector<FieldElement> all_coefficients(const BiPoly& F) {
  std::vector<FieldElement> out;
  for (auto& c : F.coefficients())
    for (auto& x : c.coefficients()) out.push_back(x);
  return out;
}

}  // namespace detail

inline BadSet compute_bad_set(const PlaneCover& C, const CriticalData& cd) {
  const NumberField& K = C.K;
  BadSet S;
  // clear denominators so that the remaining conditions are about integral data
  Integer den = 1;
  for (auto& x : detail::all_coefficients(C.F)) {
    auto [x0, x1] = coordinates(K, x);
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x0.get_den().get_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x1.get_den().get_mpz_t());
  }
  for (auto& p : prime_divisors(den)) S.vertical.insert(p);
  BiPoly Fi = C.F.map([&](const KPoly& c) { return KPoly(FieldElement(Rational(den))) * c; });
  detail::add_common_support(S.vertical, K, detail::all_coefficients(Fi));
  detail::add_common_support(S.vertical, K, Fi.lc().coefficients());
  KPoly Ri = resultant_U(Fi, d_dU(Fi));
  detail::add_common_support(S.vertical, K, Ri.coefficients());
  for (long p : primes_up_to(C.n)) S.vertical.insert(Integer(p));

  // roots of R meeting each other or infinity modulo v
  detail::add_support(S.collision, K, Ri.lc());
  KPoly sq = squarefree_part(Ri);
  for (auto& c : sq.coefficients()) detail::add_denominators(S.collision, K, c);
  if (sq.degree() >= 1) detail::add_support(S.collision, K, discriminant(sq));
  auto fac = cd.delta_factors();
  for (size_t i = 0; i < fac.size(); ++i) {
    for (auto& c : fac[i].coefficients()) detail::add_denominators(S.collision, K, c);
    for (size_t j = i + 1; j < fac.size(); ++j) detail::add_support(S.collision, K, resultant(fac[i], fac[j]));
    if (fac[i].degree() >= 2) detail::add_support(S.definition_field, K, discriminant(fac[i]));
  }
  S.all.insert(S.vertical.begin(), S.vertical.end());
  S.all.insert(S.collision.begin(), S.collision.end());
  S.all.insert(S.definition_field.begin(), S.definition_field.end());
  for (auto& p : prime_divisors(abs(K.discriminant()))) S.all.insert(p);
  return S;
}

// ---------------------------------------------------------------- prediction

enum class PredictVerdict { Ramified, Unramified, NeedsOracle };

inline const char* predict_verdict_name(PredictVerdict v) {
  switch (v) {
    case PredictVerdict::Ramified: return "ramified";
    case PredictVerdict::Unramified: return "unramified";
    case PredictVerdict::NeedsOracle: return "needs_oracle";
  }
  return "?";
}

struct Prediction {
  PredictVerdict verdict = PredictVerdict::Unramified;
  std::optional<size_t> witness;  // index into CriticalData::values
  int k = 0;                      // v(tau - alpha), or -v(tau) at infinity
  int v_delta = 0, v_tau = 0;
};

inline std::string critical_value_label(const CriticalValue& cv) {
  if (cv.at_infinity) return "inf";
  if (cv.factor.degree() == 1) return (-cv.factor[0]).str();
  return format_kpoly(cv.factor, "T");
}

inline std::string witness_label(const CriticalData& cd, const Prediction& p) {
  return p.witness ? critical_value_label(cd.values[*p.witness]) : "";
}

inline Prediction predict(const PlaneCover& C, const CriticalData& cd, const BadSet& S, const FieldElement& tau,
                          const PrimePlace& v) {
  if (S.contains(v)) throw Error(ErrorKind::BadPlace, "place above " + v.p.get_str() + " lies in the bad set");
  const NumberField& K = C.K;
  Prediction out;
  FieldElement dt = cd.Delta(tau);
  if (dt.is_zero()) throw Error(ErrorKind::CriticalFiber, tau.str() + " is a critical value");
  out.v_delta = valuation(K, v, dt);
  out.v_tau = tau.is_zero() ? kInfiniteValuation : valuation(K, v, tau);
  bool near_infinity = cd.infinity_critical && out.v_tau < 0;
  if (out.v_delta <= 0 && !near_infinity) {
    out.verdict = PredictVerdict::Unramified;
    return out;
  }
  const std::vector<int>* profile = nullptr;
  if (near_infinity) {
    for (size_t i = 0; i < cd.values.size(); ++i)
      if (cd.values[i].at_infinity) out.witness = i;
    out.k = -out.v_tau;
  } else {
    for (size_t i = 0; i < cd.values.size(); ++i) {
      if (cd.values[i].at_infinity) continue;
      int vk = valuation(K, v, cd.values[i].factor(tau));
      if (vk > 0) {
        // outside S at most one factor can be small at tau
        out.witness = i;
        out.k = vk;
        break;
      }
    }
    if (!out.witness) throw std::logic_error("no witness although v(Delta(tau)) > 0");
  }
  const CriticalValue& cv = cd.values[*out.witness];
  if (cv.profile) profile = &*cv.profile;
  if (profile) {
    bool ram = false;
    for (int e : *profile)
      if (out.k % e != 0) ram = true;
    out.verdict = ram ? PredictVerdict::Ramified : PredictVerdict::Unramified;
  } else {
    out.verdict = out.k == 1 ? PredictVerdict::Ramified : PredictVerdict::NeedsOracle;
  }
  return out;
}

// ---------------------------------------------------------------- fiber ramification

struct PlaceVerdict {
  PrimePlace place;
  Verdict status = Verdict::Ramified;  // ramified or undetermined; unramified places are omitted
  bool in_bad_set = false;
};

struct FiberRamification {
  FieldElement tau;
  std::vector<KPoly> factors;  // distinct irreducible factors of the fiber polynomial
  std::vector<PlaceVerdict> places;

  bool ramified_at(const PrimePlace& v) const {
    for (auto& pv : places)
      if (pv.place == v && pv.status == Verdict::Ramified) return true;
    return false;
  }
  bool undetermined_at(const PrimePlace& v) const {
    for (auto& pv : places)
      if (pv.place == v && pv.status == Verdict::Undetermined) return true;
    return false;
  }
};

namespace detail {

inline std::vector<KPoly> fiber_factors(const NumberField& K, const KPoly& f) {
  std::vector<KPoly> out;
  if (f.degree() < 1) return out;
  if (f.degree() <= 2 && is_irreducible_poly(K, f)) return {monic(f)};
  for (auto& [g, m] : factor_over_K(K, f).factors) out.push_back(g);
  return out;
}

/// Oracle verdict for one irreducible factor; stage 0 means v is trivially unramified
/// (linear factor, or integral with unit discriminant).
inline OracleResult factor_verdict(const NumberField& K, const KPoly& g, const PrimePlace& v) {
  OracleResult trivial{Verdict::Unramified, 0, 0};
  if (g.degree() < 2) return trivial;
  bool integral = true;
  for (auto& c : g.coefficients())
    if (!c.is_zero() && valuation(K, v, c) < 0) integral = false;
  if (integral && valuation(K, v, discriminant(g)) == 0) return trivial;
  return local_ramified_oracle(K, g, v);
}

/// Verdict for v in the fields of the given irreducible factors.
inline Verdict factors_verdict(const NumberField& K, const std::vector<KPoly>& factors, const PrimePlace& v) {
  Verdict res = Verdict::Unramified;
  for (auto& g : factors) {
    auto r = factor_verdict(K, g, v);
    if (r.status == Verdict::Ramified) return Verdict::Ramified;
    if (r.status == Verdict::Undetermined) res = Verdict::Undetermined;
  }
  return res;
}

}  // namespace detail

/// Places of norm <= M (all places if M <= 0) ramified in some root field of the fiber.
inline FiberRamification ramified_places_of_fiber(const PlaneCover& C, const CriticalData& cd, const BadSet& S,
                                                  const FieldElement& tau, long M = 0) {
  if (cd.Delta(tau).is_zero()) throw Error(ErrorKind::CriticalFiber, tau.str() + " is a critical value");
  const NumberField& K = C.K;
  FiberRamification fr;
  fr.tau = tau;
  fr.factors = detail::fiber_factors(K, fiber_poly(C, tau));
  std::set<Integer> cand;
  for (auto& g : fr.factors) {
    if (g.degree() < 2) continue;
    detail::add_support(cand, K, discriminant(g));
    for (auto& c : g.coefficients()) detail::add_denominators(cand, K, c);
  }
  for (auto& p : cand) {
    for (auto& v : prime_splitting(K, p)) {
      if (M > 0 && v.norm() > M) continue;
      Verdict r = detail::factors_verdict(K, fr.factors, v);
      if (r == Verdict::Unramified) continue;
      fr.places.push_back(PlaceVerdict{v, r, S.contains(v)});
    }
  }
  std::sort(fr.places.begin(), fr.places.end(),
            [](const PlaceVerdict& a, const PlaceVerdict& b) { return a.place < b.place; });
  return fr;
}

/// Ramification of v in the fiber over tau, from the prediction when it is decisive
/// and from the oracle otherwise (also for critical tau).
inline Verdict fiber_ramified_at(const PlaneCover& C, const CriticalData& cd, const BadSet& S, const FieldElement& tau,
                                 const PrimePlace& v) {
  if (!cd.Delta(tau).is_zero() && !S.contains(v)) {
    auto pr = predict(C, cd, S, tau, v);
    if (pr.verdict == PredictVerdict::Ramified) return Verdict::Ramified;
    if (pr.verdict == PredictVerdict::Unramified) return Verdict::Unramified;
  }
  return detail::factors_verdict(C.K, detail::fiber_factors(C.K, fiber_poly(C, tau)), v);
}

struct FactorOracle {
  KPoly factor;
  OracleResult result;
};

/// The local oracle run on every irreducible factor of the fiber; works for critical tau too.
inline std::vector<FactorOracle> oracle_fiber(const PlaneCover& C, const FieldElement& tau, const PrimePlace& v) {
  std::vector<FactorOracle> out;
  for (auto& g : detail::fiber_factors(C.K, fiber_poly(C, tau))) out.push_back({g, detail::factor_verdict(C.K, g, v)});
  return out;
}

inline Verdict combined_verdict(const std::vector<FactorOracle>& rs) {
  Verdict res = Verdict::Unramified;
  for (auto& r : rs) {
    if (r.result.status == Verdict::Ramified) return Verdict::Ramified;
    if (r.result.status == Verdict::Undetermined) res = Verdict::Undetermined;
  }
  return res;
}

// ---------------------------------------------------------------- cross validation

struct ValidationRow {
  FieldElement tau;
  PrimePlace place;
  Prediction prediction;
  Verdict oracle = Verdict::Unramified;
  bool compared = false, agree = true;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  std::vector<ValidationRow> mismatches;
  int comparisons = 0, needs_oracle = 0, undetermined = 0, critical_skipped = 0;
};

inline ValidationReport cross_validate(const PlaneCover& C, const CriticalData& cd, const BadSet& S,
                                       std::vector<FieldElement> taus, long M) {
  ValidationReport rep;
  const NumberField& K = C.K;
  SizeOrdering ord(K);
  std::sort(taus.begin(), taus.end(), ord);
  auto places = places_up_to(K, M);
  for (auto& tau : taus) {
    if (cd.Delta(tau).is_zero()) {
      ++rep.critical_skipped;
      continue;
    }
    auto fr = ramified_places_of_fiber(C, cd, S, tau, M);
    for (auto& v : places) {
      if (S.contains(v)) continue;
      ValidationRow row;
      row.tau = tau;
      row.place = v;
      row.prediction = predict(C, cd, S, tau, v);
      row.oracle = fr.ramified_at(v) ? Verdict::Ramified
                                     : (fr.undetermined_at(v) ? Verdict::Undetermined : Verdict::Unramified);
      if (row.prediction.verdict == PredictVerdict::NeedsOracle) {
        ++rep.needs_oracle;
      } else if (row.oracle == Verdict::Undetermined) {
        ++rep.undetermined;
      } else {
        row.compared = true;
        ++rep.comparisons;
        row.agree = (row.prediction.verdict == PredictVerdict::Ramified) == (row.oracle == Verdict::Ramified);
        if (!row.agree) rep.mismatches.push_back(row);
      }
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace fibra
