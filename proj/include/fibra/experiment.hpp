#pragma once

// The counting experiment: primitive places in size order, the sets Omega(B) and
// Omega'(B), distinct-field and reducible-fiber counts, and the constants.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fibra/ramification.hpp"

namespace fibra {

struct PrimitiveAssignment {
  PrimePlace place;
  FieldElement tau;
  FieldElement gamma;  // certificate: v(phi(gamma)) = 1 for a factor phi of Delta
  std::size_t scanned = 0;
  int undetermined_in_prefix = 0;
  double ratio = 0;  // size(tau) / Nv^(1/d)
  bool certified = false;
};

namespace detail {

inline Integer ceil_root(const Integer& n, int d) {
  if (d == 1) return n;
  Integer r = isqrt(n);
  return r * r == n ? r : r + 1;
}

inline Rational ceil_size(const NumberField& K, const FieldElement& x) {
  return Rational(Integer(static_cast<long>(std::ceil(size(K, x).to_double() + 1e-9))));
}

}  // namespace detail

/// A root in O_K of some factor of Delta modulo v, lifted to a small representative.
inline std::optional<std::pair<FieldElement, KPoly>> degree_one_root(const PlaneCover& C, const CriticalData& cd,
                                                                      const PrimePlace& v) {
  const NumberField& K = C.K;
  LocalRing R(K, v, 1);
  for (auto& phi : cd.delta_factors()) {
    auto roots = roots_fq(R.residue_field(), R.residue(R.from_kpoly(phi)));
    if (roots.empty()) continue;
    FieldElement g = R.to_field(R.lift(roots[0]));
    return std::make_pair(reduced_residue(K, g, v.ideal), phi);
  }
  return std::nullopt;
}

inline PrimitiveAssignment find_primitive(const PlaneCover& C, const CriticalData& cd, const BadSet& S,
                                          const PrimePlace& v) {
  if (S.contains(v)) throw Error(ErrorKind::BadPlace, "place above " + v.p.get_str() + " lies in the bad set");
  const NumberField& K = C.K;
  auto root = degree_one_root(C, cd, v);
  if (!root)
    throw Error(ErrorKind::NoDegreeOnePlace,
                "no factor of Delta has a root modulo the place above " + v.p.get_str());
  auto [g0, phi] = *root;
  PrimitiveAssignment out;
  out.place = v;
  out.gamma = valuation(K, v, phi(g0)) == 1 ? g0 : g0 + primitive_element(K, v);
  out.certified = predict(C, cd, S, out.gamma, v).verdict == PredictVerdict::Ramified;

  Rational cap = detail::ceil_size(K, out.gamma);
  Rational base(detail::ceil_root(v.norm(), K.degree()));
  std::size_t done = 0;
  for (Rational lam = 1;; lam *= 2) {
    Rational bound = lam * base;
    if (bound > cap) bound = cap;
    auto taus = enumerate_integers(K, bound);
    for (; done < taus.size(); ++done) {
      const FieldElement& tau = taus[done];
      Verdict r = fiber_ramified_at(C, cd, S, tau, v);
      if (r == Verdict::Undetermined) ++out.undetermined_in_prefix;
      if (r != Verdict::Ramified) continue;
      out.tau = tau;
      out.scanned = done + 1;
      out.ratio = size(K, tau).to_double() / std::pow(v.norm().get_d(), 1.0 / K.degree());
      return out;
    }
    if (bound == cap) break;
  }
  throw std::logic_error("scan ended before reaching the certificate");
}

/// Largest ratio size(tau(v)) / Nv^(1/d) over usable places of norm <= max_norm,
/// rounded up to a multiple of 1/1000 and at least 1.
inline Rational calibrate_lambda(const PlaneCover& C, const CriticalData& cd, const BadSet& S, long max_norm = 50) {
  double best = 1;
  for (auto& v : places_up_to(C.K, max_norm)) {
    if (S.contains(v) || !degree_one_root(C, cd, v)) continue;
    best = std::max(best, find_primitive(C, cd, S, v).ratio);
  }
  return make_rational(Integer(static_cast<long>(std::ceil(best * 1000 - 1e-9))), Integer(1000));
}

// ---------------------------------------------------------------- counts

inline bool fiber_irreducible(const PlaneCover& C, const FieldElement& tau) {
  KPoly f = fiber_poly(C, tau);
  return f.degree() == C.n && is_irreducible_poly(C.K, f);
}

inline long reducible_fiber_count(const PlaneCover& C, const Rational& B) {
  long count = 0;
  for (auto& tau : enumerate_integers(C.K, B))
    if (!fiber_irreducible(C, tau)) ++count;
  return count;
}

/// Number of distinct ramification signatures among irreducible fibers with size <= B.
inline long distinct_field_count(const PlaneCover& C, const CriticalData& cd, const BadSet& S, const Rational& B) {
  std::set<std::vector<std::string>> sigs;
  long M = floor_of(B * B).get_si();
  for (auto& tau : enumerate_integers(C.K, B)) {
    if (cd.Delta(tau).is_zero() || !fiber_irreducible(C, tau)) continue;
    auto fr = ramified_places_of_fiber(C, cd, S, tau, M);
    bool determinate = true;
    std::vector<std::string> sig{std::to_string(C.n)};
    for (auto& pv : fr.places) {
      if (pv.status == Verdict::Undetermined) determinate = false;
      sig.push_back(place_label(C.K, pv.place));
    }
    if (determinate) sigs.insert(sig);
  }
  return static_cast<long>(sigs.size());
}

/// log2 of the degree of the compositum of the fiber fields of a quadratic cover over Q.
inline int compositum_degree_log2(const PlaneCover& C, const std::vector<FieldElement>& taus) {
  if (!C.K.is_rational() || C.n != 2)
    throw Error(ErrorKind::InvalidInput, "compositum degree is implemented for quadratic covers over Q");
  // Gaussian elimination over F_2 on squarefree kernels; -1 is a generator too
  std::map<Integer, std::set<Integer>> pivots;
  for (auto& tau : taus) {
    KPoly f = fiber_poly(C, tau);
    if (f.degree() != 2) continue;
    Rational D = (f[1] * f[1] - FieldElement(4) * f[0] * f[2]).a();
    if (D == 0) continue;
    Integer k = squarefree_kernel(D.get_num() * D.get_den());
    std::set<Integer> vec;
    if (k < 0) vec.insert(Integer(-1));
    for (auto& [p, e] : factor_integer(abs(k))) vec.insert(p);
    while (!vec.empty()) {
      Integer top = *vec.rbegin();
      auto it = pivots.find(top);
      if (it == pivots.end()) {
        pivots.emplace(top, vec);
        break;
      }
      std::set<Integer> x;
      std::set_symmetric_difference(vec.begin(), vec.end(), it->second.begin(), it->second.end(),
                                    std::inserter(x, x.begin()));
      vec = std::move(x);
    }
  }
  return static_cast<int>(pivots.size());
}

// ---------------------------------------------------------------- constants

struct ConstantsReport {
  int m = 0;
  bool infinity_critical = false;
  std::optional<int> bound;  // 2g + 2n - 2
  bool bound_holds = true;
  Rational lambda = 1;
  std::optional<Rational> c;  // 1 / (16 (g+n)^2 d lambda^d)
};

inline ConstantsReport constants_report(const PlaneCover& C, const CriticalData& cd, const Rational& lambda = 1) {
  ConstantsReport r;
  r.m = cd.m();
  r.infinity_critical = cd.infinity_critical;
  r.lambda = lambda;
  if (C.genus) {
    int g = *C.genus, d = C.K.degree();
    r.bound = 2 * g + 2 * C.n - 2;
    r.bound_holds = r.m <= *r.bound;
    r.c = Rational(1) / (Rational(16 * (g + C.n) * (g + C.n) * d) * rpow(lambda, d));
  }
  return r;
}

// ---------------------------------------------------------------- experiment

struct ExperimentReport {
  Rational B, lambda;
  Rational norm_low, norm_high;  // the window (B / 2 lambda)^d <= Nv <= (B / lambda)^d
  std::vector<PrimitiveAssignment> assignments;
  std::vector<PrimePlace> bad_places, no_degree_one;
  std::vector<FieldElement> omega, omega_prime;
  int degree_log2_lower_bound = 0;
  long distinct_field_lower_bound = 0;
  long reducible_count = 0;
  int max_places_per_tau = 0;
  bool sizes_within_B = true;
  ConstantsReport constants;
  std::size_t window_count() const { return assignments.size(); }
};

inline ExperimentReport run_experiment(const PlaneCover& C, const CriticalData& cd, const BadSet& S,
                                       const Rational& B, const Rational& lambda = 1) {
  const NumberField& K = C.K;
  int d = K.degree();
  ExperimentReport rep;
  rep.B = B;
  rep.lambda = lambda;
  rep.norm_low = rpow(B / (2 * lambda), d);
  rep.norm_high = rpow(B / lambda, d);
  SizeOrdering ord(K);
  std::map<std::string, int> per_tau;
  if (rep.norm_high >= 2) {
    for (auto& v : places_up_to(K, floor_of(rep.norm_high).get_si())) {
      if (Rational(v.norm()) < rep.norm_low) continue;
      if (S.contains(v)) {
        rep.bad_places.push_back(v);
        continue;
      }
      try {
        auto a = find_primitive(C, cd, S, v);
        if (size(K, a.tau) > SizeValue(B)) rep.sizes_within_B = false;
        rep.assignments.push_back(a);
        int& c = per_tau[a.tau.str()];
        if (c++ == 0) rep.omega.push_back(a.tau);
        rep.max_places_per_tau = std::max(rep.max_places_per_tau, c);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoDegreeOnePlace) throw;
        rep.no_degree_one.push_back(v);
      }
    }
  }
  std::sort(rep.omega.begin(), rep.omega.end(), ord);
  for (auto& tau : rep.omega)
    if (fiber_irreducible(C, tau)) rep.omega_prime.push_back(tau);
  rep.degree_log2_lower_bound = static_cast<int>(rep.omega_prime.size());
  rep.distinct_field_lower_bound = distinct_field_count(C, cd, S, B);
  rep.reducible_count = reducible_fiber_count(C, B);
  rep.constants = constants_report(C, cd, lambda);
  return rep;
}

// ---------------------------------------------------------------- few ramified places

struct FewPlacesReport {
  Rational epsilon, kappa;
  SizeValue threshold;  // kappa * epsilon^(-m-1)
  int m = 0;
  long checked = 0, violations = 0;
  int max_count = 0;
  std::vector<FieldElement> violating;
};

/// 1 + the largest norm of a place above a prime of S.
inline Rational default_kappa(const NumberField& K, const BadSet& S) {
  Integer best = 0;
  for (auto& p : S.all)
    for (auto& v : prime_splitting(K, p)) best = std::max(best, v.norm());
  return Rational(best + 1);
}

/// For size(tau) >= kappa eps^(-m-1), count places outside S with Nv >= (eps size tau)^d
/// that ramify in the fiber; at most m are allowed.
inline FewPlacesReport few_ramified_places_check(const PlaneCover& C, const CriticalData& cd, const BadSet& S,
                                                 const Rational& B, const Rational& eps, const Rational& kappa) {
  const NumberField& K = C.K;
  FewPlacesReport r;
  r.epsilon = eps;
  r.kappa = kappa;
  r.m = cd.m();
  r.threshold = SizeValue(kappa * rpow(Rational(1) / eps, r.m + 1));
  int d = K.degree();
  for (auto& tau : enumerate_integers(K, B)) {
    SizeValue st = size(K, tau);
    if (st < r.threshold || cd.Delta(tau).is_zero()) continue;
    ++r.checked;
    SizeValue floor_norm = (SizeValue(eps) * st).pow(d);
    auto fr = ramified_places_of_fiber(C, cd, S, tau);
    int count = 0;
    for (auto& pv : fr.places)
      if (!pv.in_bad_set && pv.status == Verdict::Ramified && SizeValue(Rational(pv.place.norm())) >= floor_norm)
        ++count;
    r.max_count = std::max(r.max_count, count);
    if (count > r.m) {
      ++r.violations;
      r.violating.push_back(tau);
    }
  }
  return r;
}

}  // namespace fibra
