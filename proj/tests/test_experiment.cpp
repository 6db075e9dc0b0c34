#include <gtest/gtest.h>

#include "fibra/experiment.hpp"

using namespace fibra;

namespace {

BiPoly C(const Rational& c) { return constant_bipoly(KPoly(FieldElement(c))); }
const BiPoly T = T_var();
const BiPoly U = U_var();

struct Fixture {
  PlaneCover cover;
  CriticalData cd;
  BadSet S;
  explicit Fixture(PlaneCover c) : cover(std::move(c)), cd(critical_polynomial(cover)), S(compute_bad_set(cover, cd)) {}
};

Fixture sqrt_cover() { return Fixture(make_cover(NumberField::rational(), U * U - T, 0)); }
Fixture legendre() { return Fixture(make_cover(NumberField::rational(), U * U - T * (T - C(1)) * (T - C(3)), 1)); }

PrimePlace P(long p) { return place_from_prime(NumberField::rational(), Integer(p)); }

// fundamental discriminant of Q(sqrt(D))
Integer field_disc(Integer D) {
  Integer k = squarefree_kernel(D);
  return mod(k, 4) == 1 ? k : Integer(4 * k);
}

}  // namespace

TEST(Primitive, SquareRoot) {
  auto s = sqrt_cover();
  auto a = find_primitive(s.cover, s.cd, s.S, P(5));
  EXPECT_EQ(a.tau, FieldElement(-5));
  EXPECT_TRUE(a.certified);
  EXPECT_EQ(a.undetermined_in_prefix, 0);
  EXPECT_DOUBLE_EQ(a.ratio, 1.0);
  try {
    find_primitive(s.cover, s.cd, s.S, P(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadPlace);
  }
}

TEST(Primitive, Legendre) {
  auto s = legendre();
  // 7 already divides Delta(-4) = -140 exactly once
  auto a = find_primitive(s.cover, s.cd, s.S, P(7));
  EXPECT_EQ(a.tau, FieldElement(-4));
  for (long p : {5, 7, 11, 13, 17, 19, 23}) {
    auto b = find_primitive(s.cover, s.cd, s.S, P(p));
    // brute-force primitivity against fundamental discriminants
    for (auto& tau : enumerate_integers(NumberField::rational(), abs(b.tau.a()))) {
      Integer D = tau.a().get_num() * (tau.a().get_num() - 1) * (tau.a().get_num() - 3);
      bool ram = D != 0 && !is_square(D) && field_disc(D) % p == 0;
      if (tau == b.tau) {
        EXPECT_TRUE(ram) << p;
        break;
      }
      EXPECT_FALSE(ram) << p << " " << tau;
    }
  }
}

TEST(Primitive, NoDegreeOnePlace) {
  // branch points are the roots of T^2 + 1: no root modulo 3
  auto s = Fixture(make_cover(NumberField::rational(), U * U - (T * T + C(1)), 0));
  try {
    find_primitive(s.cover, s.cd, s.S, P(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoDegreeOnePlace);
  }
  auto a = find_primitive(s.cover, s.cd, s.S, P(5));
  EXPECT_TRUE(a.certified);
  EXPECT_EQ(a.tau, FieldElement(-2));
}

TEST(Experiment, SquareRootB30) {
  auto s = sqrt_cover();
  auto rep = run_experiment(s.cover, s.cd, s.S, 30, 1);
  ASSERT_EQ(rep.assignments.size(), 4u);
  std::vector<long> ps;
  for (auto& a : rep.assignments) ps.push_back(a.place.p.get_si());
  EXPECT_EQ(ps, (std::vector<long>{17, 19, 23, 29}));
  EXPECT_EQ(rep.degree_log2_lower_bound, 4);
  EXPECT_EQ(rep.omega_prime.size(), 4u);
  EXPECT_TRUE(rep.sizes_within_B);
  EXPECT_EQ(rep.max_places_per_tau, 1);
  // below the smallest window
  auto empty = run_experiment(s.cover, s.cd, s.S, 1, 1);
  EXPECT_TRUE(empty.assignments.empty());
  EXPECT_EQ(empty.degree_log2_lower_bound, 0);
}

TEST(Experiment, LegendreB30) {
  auto s = legendre();
  auto lam = calibrate_lambda(s.cover, s.cd, s.S);
  EXPECT_GE(lam, 1);
  auto rep = run_experiment(s.cover, s.cd, s.S, 30, lam);
  EXPECT_GT(rep.degree_log2_lower_bound, 0);
  EXPECT_TRUE(rep.sizes_within_B);
  EXPECT_LE(rep.max_places_per_tau, 3);
  for (auto& a : rep.assignments) EXPECT_TRUE(a.certified);
  EXPECT_LE(rep.omega_prime.size(), rep.omega.size());
}

TEST(Counts, DistinctFields) {
  auto s = sqrt_cover();
  EXPECT_GE(distinct_field_count(s.cover, s.cd, s.S, 20), 12);
  EXPECT_EQ(distinct_field_count(s.cover, s.cd, s.S, 20), 17);
  EXPECT_LE(distinct_field_count(s.cover, s.cd, s.S, 1), 1);
  auto l = legendre();
  long prev = 0;
  for (long B : {5, 10, 20}) {
    long c = distinct_field_count(l.cover, l.cd, l.S, B);
    EXPECT_GE(c, prev);
    prev = c;
  }
}

TEST(Counts, Reducible) {
  auto s = sqrt_cover();
  EXPECT_EQ(reducible_fiber_count(s.cover, 100), 11);
  EXPECT_EQ(reducible_fiber_count(s.cover, 0), 1);
  auto cub = make_cover(NumberField::rational(), U * U * U - C(3) * U - T, 0);
  std::set<long> values;
  for (long u = -10; u <= 10; ++u) {
    long t = u * u * u - 3 * u;
    if (std::labs(t) <= 50) values.insert(t);
  }
  EXPECT_EQ(reducible_fiber_count(cub, 50), static_cast<long>(values.size()));
}

TEST(Counts, Compositum) {
  auto s = sqrt_cover();
  std::vector<FieldElement> pos, sym;
  for (long t = 1; t <= 100; ++t) pos.emplace_back(t);
  for (long t = -100; t <= 100; ++t) sym.emplace_back(t);
  EXPECT_EQ(compositum_degree_log2(s.cover, pos), 25);
  EXPECT_EQ(compositum_degree_log2(s.cover, sym), 26);
}

TEST(Constants, Examples) {
  auto l = legendre();
  auto r = constants_report(l.cover, l.cd);
  EXPECT_EQ(r.m, 3);
  EXPECT_EQ(*r.bound, 4);
  EXPECT_TRUE(r.bound_holds);
  EXPECT_EQ(*r.c, Rational(1, 144));
  auto s = sqrt_cover();
  EXPECT_EQ(constants_report(s.cover, s.cd).m, 1);
  EXPECT_EQ(*constants_report(s.cover, s.cd).bound, 2);
  auto cub = Fixture(make_cover(NumberField::rational(), U * U * U - C(3) * U - T, 0));
  EXPECT_EQ(constants_report(cub.cover, cub.cd).m, 2);
  EXPECT_EQ(*constants_report(cub.cover, cub.cd).bound, 4);
  auto nog = Fixture(make_cover(NumberField::rational(), U * U - T));
  EXPECT_FALSE(constants_report(nog.cover, nog.cd).c);
}

TEST(FewPlaces, SquareRoot) {
  auto s = sqrt_cover();
  auto kappa = default_kappa(s.cover.K, s.S);
  EXPECT_EQ(kappa, 3);
  for (Rational eps : {Rational(1, 2), Rational(1, 4)}) {
    auto r = few_ramified_places_check(s.cover, s.cd, s.S, 200, eps, kappa);
    EXPECT_GT(r.checked, 0);
    EXPECT_EQ(r.violations, 0);
  }
}
