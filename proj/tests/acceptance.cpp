// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every check pairs a library computation with an independent one written here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fibra/fibra.hpp"

using namespace fibra;

namespace {

BiPoly Cst(const Rational& c) { return constant_bipoly(KPoly(FieldElement(c))); }
const BiPoly T = T_var();
const BiPoly U = U_var();

// ---------------------------------------------------------------- independent oracles

std::vector<long> sieve(long n) {
  std::vector<bool> comp(static_cast<size_t>(n + 1), false);
  std::vector<long> out;
  for (long i = 2; i <= n; ++i) {
    if (comp[static_cast<size_t>(i)]) continue;
    out.push_back(i);
    for (long j = i * i; j <= n; j += i) comp[static_cast<size_t>(j)] = true;
  }
  return out;
}

int vp(Integer n, long p) {
  if (n == 0) return 1 << 20;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::vector<long> prime_factors(Integer n) {
  std::vector<long> out;
  n = abs(n);
  for (long q = 2; Integer(q) * q <= n; ++q)
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) out.push_back(n.get_si());
  return out;
}

Integer sqfree(Integer n) {
  Integer k = n < 0 ? -1 : 1;
  n = abs(n);
  for (long q = 2; Integer(q) * q <= n; ++q) {
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e % 2) k *= q;
  }
  return k * n;
}

// discriminant of Q(sqrt D); 1 when D is a square
Integer fund_disc(const Integer& D) {
  Integer k = sqfree(D);
  if (k == 1) return 1;
  Integer r = k % 4;
  if (r < 0) r += 4;
  return r == 1 ? k : Integer(4 * k);
}

bool disc_ramified(const Integer& D, long p) { return D != 0 && fund_disc(D) % p == 0; }

struct Line {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << (note.tellp() > 0 ? "; " : "") << "failed: " << what;
    pass = pass && ok;
  }
};

int failures = 0;

void run(int id, const std::string& title, const std::function<void(Line&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Line line;
  try {
    body(line);
  } catch (const std::exception& e) {
    line.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!line.pass) ++failures;
  std::printf("%s %d %s: %s (%.2f s)\n", line.pass ? "PASS" : "FAIL", id, title.c_str(), line.note.str().c_str(),
              secs);
  std::fflush(stdout);
}

// ---------------------------------------------------------------- criteria

void legendre_appendix(Line& L) {
  auto Q = NumberField::rational();
  auto C = make_cover(Q, U * U - T * (T - Cst(1)) * (T - Cst(3)), 1, "legendre");
  auto cd = critical_polynomial(C);
  auto S = compute_bad_set(C, cd);
  L.require(cd.Delta == (T * (T - Cst(1)) * (T - Cst(3)))[0], "Delta = T(T-1)(T-3)");
  std::vector<std::string> branch;
  for (auto& cv : cd.values) branch.push_back(critical_value_label(cv));
  L.require(branch == std::vector<std::string>{"0", "1", "3", "inf"}, "branch set {0, 1, 3, inf}");
  L.require(S.all == std::set<Integer>{2, 3}, "S = {2, 3}");

  std::vector<FieldElement> taus;
  for (long t = -50; t <= 50; ++t) taus.emplace_back(t);
  auto rep = cross_validate(C, cd, S, taus, 101);
  L.require(rep.mismatches.empty(), "library cross-validation");

  // parity criterion against fundamental discriminants, independently of the library
  long pairs = 0, parity_vs_disc = 0, library_vs_disc = 0;
  for (auto& row : rep.rows) {
    Integer t = row.tau.a().get_num(), D = t * (t - 1) * (t - 3);
    long p = row.place.p.get_si();
    int v = vp(D, p);
    bool parity = v > 0 && v % 2 == 1;
    bool disc = disc_ramified(D, p);
    ++pairs;
    if (parity != disc) ++parity_vs_disc;
    if ((row.prediction.verdict == PredictVerdict::Ramified) != disc || (row.oracle == Verdict::Ramified) != disc)
      ++library_vs_disc;
  }
  L.require(pairs == 98 * 24, "every (tau, p) pair visited");
  L.require(parity_vs_disc == 0 && library_vs_disc == 0, "parity and discriminant agree");
  L.note << "Delta = " << format_kpoly(cd.Delta, "T") << ", S = {2, 3}, " << pairs
         << " pairs, mismatches " << rep.mismatches.size() << "/" << parity_vs_disc << "/" << library_vs_disc;
}

void intro_example(Line& L) {
  auto Q = NumberField::rational();
  auto C = make_cover(Q, U * U - T, 0, "sqrt");
  auto cd = critical_polynomial(C);
  auto S = compute_bad_set(C, cd);
  std::vector<FieldElement> taus;
  for (long t = 1; t <= 100; ++t) taus.emplace_back(t);
  int rank = compositum_degree_log2(C, taus);
  int pi100 = static_cast<int>(sieve(100).size());
  L.require(pi100 == 25 && rank == pi100, "compositum degree 2^pi(100)");

  auto lambda = calibrate_lambda(C, cd, S);
  auto rep = run_experiment(C, cd, S, 100, lambda);
  int omega = rep.degree_log2_lower_bound;
  L.require(omega > 0 && omega <= pi100, "0 < |Omega'| <= 25");
  L.require(rep.sizes_within_B, "sizes within B");

  // prefix scans in the order 0, -1, 1, -2, 2, ... with the discriminant oracle
  int verified = 0;
  for (auto& a : rep.assignments) {
    long p = a.place.p.get_si();
    Integer target = a.tau.a().get_num();
    bool found = false;
    for (long m = 0; m <= 1000 && !found; ++m)
      for (long s : {-1L, 1L}) {
        if (m == 0 && s == 1) continue;
        Integer t = s * m;
        bool ram = disc_ramified(t, p);
        if (t == target) {
          found = true;
          L.require(ram, "tau(v) ramifies at v");
          break;
        }
        L.require(!ram, "no earlier tau ramifies at v");
      }
    L.require(found, "tau(v) reached by the scan");
    if (a.certified) ++verified;
  }
  L.require(verified == static_cast<int>(rep.assignments.size()), "every assignment certified");
  L.note << "log2 compositum degree = " << rank << ", |Omega'(100)| = " << omega << ", " << verified
         << " primitive assignments verified, lambda = " << lambda;
}

void few_places(Line& L) {
  auto Q = NumberField::rational();
  struct Case {
    std::string name;
    PlaneCover C;
    std::function<Integer(const Integer&)> D;
  };
  std::vector<Case> cases{
      {"U^2 - T", make_cover(Q, U * U - T, 0), [](const Integer& t) { return t; }},
      {"Legendre", make_cover(Q, U * U - T * (T - Cst(1)) * (T - Cst(3)), 1),
       [](const Integer& t) { return Integer(t * (t - 1) * (t - 3)); }}};
  for (auto& c : cases) {
    auto cd = critical_polynomial(c.C);
    auto S = compute_bad_set(c.C, cd);
    Rational kappa = default_kappa(Q, S);
    for (Rational eps : {Rational(1, 2), Rational(1, 4)}) {
      auto r = few_ramified_places_check(c.C, cd, S, 200, eps, kappa);
      // recount from fundamental discriminants
      int m = cd.m(), worst = 0;
      long checked = 0, violations = 0;
      Rational thr = kappa * rpow(1 / eps, m + 1);
      for (long t = -200; t <= 200; ++t) {
        Integer D = c.D(Integer(t));
        if (Rational(std::labs(t)) < thr || D == 0) continue;
        ++checked;
        int count = 0;
        Integer fd = fund_disc(D);
        for (long p : prime_factors(fd)) {
          if (S.contains(Integer(p))) continue;
          if (Rational(p) >= eps * std::labs(t)) ++count;
        }
        worst = std::max(worst, count);
        if (count > m) ++violations;
      }
      L.require(r.violations == 0 && violations == 0, c.name + " has no violations");
      L.require(r.checked == checked && r.max_count == worst, c.name + " counts match the recount");
      L.note << c.name << " eps=" << eps << ": kappa=" << kappa << ", checked " << r.checked << ", max " << r.max_count
             << " <= m=" << m << "; ";
    }
  }
}

KPoly poly_from_roots(const std::vector<std::pair<Rational, int>>& roots, const Rational& lead) {
  KPoly f{FieldElement(lead)};
  for (auto& [a, e] : roots)
    for (int i = 0; i < e; ++i) f = f * KPoly({FieldElement(-a), FieldElement(1)});
  return f;
}

void strassmann_clusters(Line& L) {
  auto Q = NumberField::rational();
  std::mt19937 rng(20240611);
  long polys = 0, bound_violations = 0;
  for (long p : {3L, 5L, 7L}) {
    PAdicContext ctx(Q, place_from_prime(Q, Integer(p)), 20);
    long nonres = p == 7 ? 3 : 2;
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<std::pair<Rational, int>> roots;
      int closed = 0, open = 0;
      int k = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < k; ++i) {
        int v = static_cast<int>(rng() % 7) - 3;
        Rational a = Rational(static_cast<long>(1 + rng() % (p * p - 1))) * rpow(Rational(p), v);
        a.canonicalize();
        int e = 1 + static_cast<int>(rng() % 2);
        roots.emplace_back(a, e);
        if (valuation(a, Integer(p)) >= 0) closed += e;
        if (valuation(a, Integer(p)) > 0) open += e;
      }
      Rational lead = Rational(static_cast<long>(1 + rng() % 20)) * rpow(Rational(p), static_cast<int>(rng() % 3) - 1);
      lead.canonicalize();
      KPoly f = poly_from_roots(roots, lead);
      // factors without roots in Q_p
      int closed_all = closed, open_all = open;
      if (rng() % 3 == 0) {
        f = f * KPoly({FieldElement(-nonres), FieldElement(0), FieldElement(1)});
        closed_all += 2;
      }
      if (rng() % 3 == 0) {
        f = f * KPoly({FieldElement(-p), FieldElement(0), FieldElement(1)});
        closed_all += 2;
        open_all += 2;
      }
      auto b = strassmann_bounds(f, ctx);
      ++polys;
      // rational roots are bounded; roots over C_p are counted exactly
      if (closed > b.kappa_max || open > b.kappa_min) ++bound_violations;
      if (closed_all != b.kappa_max || open_all != b.kappa_min) ++bound_violations;
    }
  }
  L.require(bound_violations == 0, "root counts within Strassmann bounds");

  // clusters: f0 with roots distinct mod p, g = f0 + p h
  long pairs = 0, cluster_violations = 0;
  for (int trial = 0; pairs < 200 && trial < 1000; ++trial) {
    long p = std::vector<long>{3, 5, 7}[static_cast<size_t>(trial % 3)];
    PAdicContext ctx(Q, place_from_prime(Q, Integer(p)), 30);
    int s = 1 + static_cast<int>(rng() % std::min<long>(3, p));
    std::vector<long> residues;
    for (long r = 0; r < p; ++r) residues.push_back(r);
    std::shuffle(residues.begin(), residues.end(), rng);
    std::vector<std::pair<Rational, int>> roots;
    std::vector<std::pair<FieldElement, int>> lib_roots;
    for (int i = 0; i < s; ++i) {
      long alpha = residues[static_cast<size_t>(i)] + p * static_cast<long>(rng() % 5) - 2 * p;
      int e = 1 + static_cast<int>(rng() % 3);
      roots.emplace_back(Rational(alpha), e);
      lib_roots.emplace_back(FieldElement(alpha), e);
    }
    KPoly f0 = poly_from_roots(roots, 1);
    std::vector<FieldElement> h;
    for (int i = 0; i < f0.degree(); ++i) h.emplace_back(static_cast<long>(rng() % 11) - 5);
    KPoly g = f0 + KPoly(FieldElement(p)) * KPoly(h);
    auto clusters = cluster_roots(f0, lib_roots, g, ctx);
    ++pairs;
    for (size_t i = 0; i < roots.size(); ++i) {
      // independent count: multiplicity of alpha mod p as a root of g mod p
      std::vector<long> c;
      for (auto& x : g.coefficients()) c.push_back(mod(x.a().get_num(), Integer(p)).get_si());
      long a = mod(roots[i].first.get_num(), Integer(p)).get_si();
      int mult = 0;
      while (c.size() > 1) {
        std::vector<long> q(c.size() - 1);
        long acc = 0;
        for (size_t j = c.size(); j-- > 0;) {
          acc = (acc * a + c[j]) % p;
          if (j > 0) q[j - 1] = acc;
        }
        if (acc != 0) break;
        c = q;
        ++mult;
      }
      if (clusters[i].second != roots[i].second || mult != roots[i].second) ++cluster_violations;
    }
  }
  L.require(pairs == 200, "200 cluster pairs");
  L.require(cluster_violations == 0, "cluster sizes equal multiplicities");
  L.note << polys << " polynomials, " << bound_violations << " bound violations; " << pairs << " cluster pairs, "
         << cluster_violations << " violations";
}

void puiseux_eisenstein(Line& L) {
  auto Q = NumberField::rational();
  auto cat = make_cover(Q, U * U - U + T, 0, "catalan");
  auto s = puiseux_expand(cat, FieldElement(0), FieldElement(0), 12);
  // Catalan numbers binom(2k, k) / (k + 1), shifted by one
  bool match = true;
  for (int k = 1; k <= 5; ++k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), 2 * (k - 1), k - 1);
    if (s.a[static_cast<size_t>(k)] != FieldElement(make_rational(b, k))) match = false;
  }
  L.require(match, "a_1..a_5 = 1, 1, 2, 5, 14");
  auto e = eisenstein_check(Q, s, 50);
  L.require(e.failing_primes.empty(), "integral at every p <= 50");

  // series against Hensel lifts of the root near 0 of U^2 - U + tau
  std::mt19937 rng(7);
  auto primes = sieve(50);
  int samples = 0, bad = 0;
  const int N = 12;
  for (int i = 0; i < 50; ++i) {
    long p = primes[static_cast<size_t>(i) % primes.size()];
    int k = 1 + static_cast<int>(rng() % 2);
    long j = 1 + static_cast<long>(rng() % 9);
    if (j % p == 0) ++j;
    FieldElement tau = FieldElement(Integer(Integer(j) * ipow(Integer(p), static_cast<unsigned long>(k))));
    PAdicContext ctx(Q, place_from_prime(Q, Integer(p)), (N + 1) * k + 10);
    KPoly f({tau, FieldElement(-1), FieldElement(1)});
    FieldElement u = hensel_lift(f, FieldElement(0), ctx);
    ++samples;
    if (valuation(ctx, s.evaluate(tau) - u) < (N + 1) * k) ++bad;
  }
  L.require(bad == 0, "series agrees with Hensel lifts");

  // valuation identity at smooth and ramified base points
  int norm_samples = 0, violations = 0;
  auto P = [&](long p) { return place_from_prime(Q, Integer(p)); };
  struct NR {
    PlaneCover C;
    long p;
    std::vector<long> ts;
  };
  std::vector<NR> nrs{{make_cover(Q, U * U * U - T), 7, {343, 8 * 343, 343 * 343, -27 * 343}},
                      {cat, 5, {5, 25, -10, 125, 3 * 625}},
                      {cat, 11, {11, 121, 22, -33}},
                      {make_cover(Q, U * U - T), 5, {25, 625, 4 * 25}},
                      {make_cover(Q, U * U - T), 13, {169, 13 * 13 * 9}}};
  for (auto& nr : nrs) {
    std::vector<FieldElement> ts;
    for (long t : nr.ts) ts.emplace_back(t);
    auto r = verify_norm_relation(nr.C, FieldElement(0), FieldElement(0), P(nr.p), ts);
    for (auto& smp : r.samples)
      if (smp.skipped.empty()) ++norm_samples;
    violations += r.violations;
  }
  L.require(norm_samples > 0 && violations == 0, "valuation identity");
  L.note << "Catalan 1,1,2,5,14; Eisenstein failures " << e.failing_primes.size() << " for p <= 50; " << samples
         << " Hensel samples, " << bad << " disagreements; " << norm_samples << " valuation samples, " << violations
         << " violations";
}

struct KappaRun {
  double kappa = 0;
  long ideals = 0, primes = 0;
};

KappaRun ideal_kappa(const NumberField& K, long X) {
  KappaRun r;
  std::mt19937 rng(1234);
  auto upd = [&](const FieldElement& x, const Integer& N, bool lower) {
    double n = std::sqrt(N.get_d());
    r.kappa = std::max(r.kappa, size(K, x).to_double() / n);
    if (lower) r.kappa = std::max(r.kappa, n / lsize(K, x).to_double());
  };
  for (auto& I : ideals_up_to(K, X)) {
    ++r.ideals;
    Integer N = I.norm();
    upd(reduced_generator(K, I), N, true);
    for (auto& b : reduced_basis(K, I)) upd(b, N, true);
    FieldElement a = K.element(static_cast<long>(rng() % 100000) - 50000, static_cast<long>(rng() % 100000) - 50000);
    FieldElement res = reduced_residue(K, a, I);
    if (!contains(K, I, a - res)) r.kappa = 1e9;  // wrong residue class
    upd(res, N, false);
  }
  for (auto& v : places_up_to(K, X)) {
    ++r.primes;
    FieldElement pi = primitive_element(K, v);
    if (valuation(K, v, pi) != 1) r.kappa = 1e9;
    upd(pi, v.norm(), true);
  }
  return r;
}

void ideal_lemmas(Line& L) {
  struct F {
    NumberField K;
    double theoretical;
  };
  // Gauss-reduced lattices: 2/sqrt(3) for Z[i]; 4/sqrt(3) for Z[sqrt 2] in the trace form
  std::vector<F> fields{{NumberField::quadratic(2), 4 / std::sqrt(3.0)}, {NumberField::quadratic(-1), 2 / std::sqrt(3.0)}};
  for (auto& f : fields) {
    auto a = ideal_kappa(f.K, 10000);
    auto b = ideal_kappa(f.K, 10000);
    L.require(a.kappa == b.kappa, f.K.str() + " kappa stable");
    L.require(a.kappa <= f.theoretical + 1e-9, f.K.str() + " kappa within the lattice bound");
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: %ld ideals, %ld primes, kappa_emp = %.6f (bound %.6f); ", f.K.str().c_str(),
                  a.ideals, a.primes, a.kappa, f.theoretical);
    L.note << buf;
  }
}

void hilbert_counting(Line& L) {
  auto C = make_cover(NumberField::rational(), U * U - T, 0);
  for (long B : {25L, 100L, 400L, 2500L}) {
    long c = reducible_fiber_count(C, B);
    long squares = isqrt(Integer(B)).get_si() + 1;  // tau = 0, 1, 4, ..., floor(sqrt B)^2
    double ratio = static_cast<double>(c) / std::sqrt(static_cast<double>(B));
    L.require(c == squares, "count equals the number of squares");
    L.require(ratio <= 2, "count / sqrt(B) <= 2");
    char buf[64];
    std::snprintf(buf, sizeof buf, "B=%ld: %ld (%.2f); ", B, c, ratio);
    L.note << buf;
  }
}

void gaussian_pipeline(Line& L) {
  auto K = NumberField::quadratic(-1);
  auto C = make_cover(K, U * U - T, 0, "sqrt over Q(i)");
  auto cd = critical_polynomial(C);
  auto S = compute_bad_set(C, cd);
  L.require(cd.Delta == KPoly::x() && S.all == std::set<Integer>{2}, "Delta = T, S = {2}");

  std::vector<PrimePlace> places{place_from_prime(K, 2),    place_from_prime(K, 3),    place_from_prime(K, 7),
                                 place_from_prime(K, 5, 0), place_from_prime(K, 5, 1), place_from_prime(K, 13, 0),
                                 place_from_prime(K, 13, 1), place_from_prime(K, 17, 0), place_from_prime(K, 17, 1),
                                 place_from_prime(K, 29, 0)};
  std::vector<FieldElement> taus;
  for (long t : {3L, -5L, 6L, 12L, 98L}) taus.push_back(K.element(t));
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 2}, {3, 2}, {2, 3}, {5, 10}, {0, 7}})
    taus.push_back(K.element(a, b));

  int pairs = 0, mismatches = 0;
  std::set<PlaceKind> kinds;
  for (auto& tau : taus)
    for (auto& v : places) {
      ++pairs;
      kinds.insert(v.kind);
      Verdict oracle = combined_verdict(oracle_fiber(C, tau, v));
      if (oracle == Verdict::Undetermined) {
        ++mismatches;
        continue;
      }
      bool ram = oracle == Verdict::Ramified;
      if (v.p != 2) {
        // odd places: ramified iff the valuation is odd
        bool expect = valuation(K, v, tau) % 2 == 1;
        auto pr = predict(C, cd, S, tau, v);
        if (ram != expect || (pr.verdict == PredictVerdict::Ramified) != expect) ++mismatches;
      } else if (tau.b() == 0) {
        // Q(i, sqrt m) / Q(i) ramifies above 2 iff the squarefree part of m is even
        bool expect = sqfree(tau.a().get_num()) % 2 == 0;
        if (ram != expect) ++mismatches;
      }
    }
  L.require(pairs == 100 && kinds.size() == 3, "100 pairs over split, inert and ramified places");
  L.require(mismatches == 0, "predictions and oracle agree");

  auto rep = run_experiment(C, cd, S, 20, 1);
  bool certified = true;
  for (auto& a : rep.assignments) certified = certified && a.certified && a.undetermined_in_prefix == 0;
  L.require(rep.degree_log2_lower_bound > 0 && rep.sizes_within_B && certified, "experiment at B = 20");
  L.note << pairs << " pairs, " << mismatches << " mismatches; experiment B=20: " << rep.window_count()
         << " places, |Omega'| = " << rep.degree_log2_lower_bound << ", distinct fields >= "
         << rep.distinct_field_lower_bound;
}

}  // namespace

int main() {
  run(1, "Legendre appendix reproduction", legendre_appendix);
  run(2, "intro example U^2 - T at B = 100", intro_example);
  run(3, "few ramified places", few_places);
  run(4, "Strassmann and clustering", strassmann_clusters);
  run(5, "Puiseux and Eisenstein", puiseux_eisenstein);
  run(6, "ideal lemmas", ideal_lemmas);
  run(7, "Hilbert counting", hilbert_counting);
  run(8, "Q(i) pipeline", gaussian_pipeline);
  return failures == 0 ? 0 : 1;
}
