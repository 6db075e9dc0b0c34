#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "fibra/ordering.hpp"

using namespace fibra;

namespace {

// Floating-point embeddings, used only as an independent check.
double emb_max(const NumberField& K, const FieldElement& x) {
  double a = x.a().get_d(), b = x.b().get_d();
  if (K.is_rational()) return std::fabs(a);
  if (K.is_imaginary()) return std::sqrt(a * a - K.d() * b * b);
  double r = std::sqrt(double(K.d()));
  return std::max(std::fabs(a + b * r), std::fabs(a - b * r));
}
double emb_min(const NumberField& K, const FieldElement& x) {
  double a = x.a().get_d(), b = x.b().get_d();
  if (K.is_rational()) return std::fabs(a);
  if (K.is_imaginary()) return std::sqrt(a * a - K.d() * b * b);
  double r = std::sqrt(double(K.d()));
  return std::min(std::fabs(a + b * r), std::fabs(a - b * r));
}

}  // namespace

TEST(Size, Examples) {
  auto Q = NumberField::rational();
  auto K2 = NumberField::quadratic(2);
  auto Ki = NumberField::quadratic(-1);
  EXPECT_EQ(size(Q, 7), SizeValue(7));
  EXPECT_EQ(size(K2, K2.element(1, 1)).str(), "1 + sqrt(2)");
  EXPECT_EQ(size(Ki, Ki.element(3, 4)), SizeValue(5));
  EXPECT_EQ(lsize(Q, 7), SizeValue(7));
  EXPECT_EQ(lsize(K2, K2.element(1, 1)).str(), "-1 + sqrt(2)");
  EXPECT_EQ(lsize(Ki, Ki.element(3, 4)), SizeValue(5));
}

TEST(Height, Examples) {
  auto Q = NumberField::rational();
  auto K2 = NumberField::quadratic(2);
  // H(p/q) = max(|p|, |q|)
  EXPECT_EQ(height(Q, Rational(3, 2)), SizeValue(3));
  EXPECT_EQ(height(Q, 5), SizeValue(5));
  SizeValue h = height(K2, K2.element(1, 1));
  EXPECT_EQ(h.root(), 2);
  EXPECT_EQ(h.base().str(), "1 + sqrt(2)");
  EXPECT_NEAR(h.to_double(), std::sqrt(1 + std::sqrt(2.0)), 1e-12);
}

TEST(FieldOps, NormTraceIntegral) {
  auto Ki = NumberField::quadratic(-1);
  auto K5 = NumberField::quadratic(5);
  auto K2 = NumberField::quadratic(2);
  EXPECT_EQ(norm(Ki, Ki.element(2, 1)), 5);
  EXPECT_TRUE(is_integral(K5, K5.element(Rational(1, 2), Rational(1, 2))));
  EXPECT_FALSE(is_integral(K2, K2.element(Rational(1, 2), Rational(1, 2))));
  EXPECT_EQ(trace(K2, K2.element(1, 1)), 2);
  EXPECT_EQ(K5.discriminant(), 5);
  EXPECT_EQ(K2.discriminant(), 8);
  EXPECT_EQ(Ki.discriminant(), -4);
  EXPECT_THROW(NumberField::quadratic(4), Error);
}

TEST(FieldOps, Arithmetic) {
  auto K = NumberField::quadratic(-7);
  FieldElement x = K.element(Rational(3, 2), Rational(-1, 3)), y = K.element(2, 5);
  EXPECT_EQ((x * y) / y, x);
  EXPECT_EQ(x * x.inverse(), FieldElement(1));
  EXPECT_EQ(norm(K, x * y), norm(K, x) * norm(K, y));
  EXPECT_EQ(FieldElement(3) + K.sqrt_d(), K.element(3, 1));
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(enumerate_integers(NumberField::rational(), 3).size(), 7u);
  EXPECT_EQ(enumerate_integers(NumberField::quadratic(-1), 2).size(), 13u);
  EXPECT_EQ(enumerate_integers(NumberField::quadratic(2), 3).size(), 15u);
}

TEST(Enumerate, MatchesBruteForce) {
  for (long d : {-1, -3, 2, 5, -5}) {
    auto K = NumberField::quadratic(d);
    for (int B : {1, 4, 9, 17}) {
      auto got = enumerate_integers(K, B);
      // brute force over a, b with half-integers allowed, in floating point
      std::set<std::pair<Rational, Rational>> expect;
      for (int ta = -8 * B; ta <= 8 * B; ++ta)
        for (int tb = -8 * B; tb <= 8 * B; ++tb) {
          FieldElement x = K.element(make_rational(ta, 2), make_rational(tb, 2));
          if (!is_integral(K, x)) continue;
          if (emb_max(K, x) <= B + 1e-9) expect.insert({x.a(), x.b()});
        }
      ASSERT_EQ(got.size(), expect.size()) << d << " " << B;
      SizeOrdering ord(K);
      for (size_t i = 0; i < got.size(); ++i) {
        EXPECT_TRUE(expect.count({got[i].a(), got[i].b()}));
        if (i == 0) continue;
        EXPECT_LT(ord.compare(got[i - 1], got[i]), 0);
        EXPECT_LE(size(K, got[i - 1]), size(K, got[i]));
      }
    }
  }
}

TEST(Ordering, TieBreak) {
  SizeOrdering ord(NumberField::rational());
  EXPECT_TRUE(ord(-5, 5));
  EXPECT_TRUE(ord(4, -5));
}

TEST(Size, Properties) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dist(-30, 30);
  for (long d : {2, 3, 5, -1, -2, -3, 13}) {
    auto K = NumberField::quadratic(d);
    for (int it = 0; it < 200; ++it) {
      FieldElement x = from_coordinates(K, dist(rng), dist(rng));
      FieldElement y = from_coordinates(K, dist(rng), dist(rng));
      if (x.is_zero() || y.is_zero()) continue;
      SizeValue sx = size(K, x), sy = size(K, y), lx = lsize(K, x);
      EXPECT_LE(size(K, x + y), sx + sy);
      EXPECT_LE(size(K, x * y), sx * sy);
      SizeValue h = height(K, x);
      EXPECT_LE(lx, h) << x;
      EXPECT_LE(h, sx) << x;
      EXPECT_NEAR(sx.to_double(), emb_max(K, x), 1e-9 * (1 + emb_max(K, x)));
      EXPECT_NEAR(lx.to_double(), emb_min(K, x), 1e-9 * (1 + emb_max(K, x)));
      SizeValue n(abs(norm(K, x)));
      EXPECT_LE(lx.pow(2), n);
      EXPECT_LE(n, sx.pow(2));
      // lsize(x) = 1 / size(1/x)
      EXPECT_EQ(lx * size(K, x.inverse()), SizeValue(1));
    }
  }
}

TEST(RadicalSum, SignOfSeveralTerms) {
  RadicalSum s = RadicalSum::sqrt_of(2) + RadicalSum::sqrt_of(3) - RadicalSum::sqrt_of(10);
  EXPECT_EQ(s.sign(), -1);
  EXPECT_EQ((-s).sign(), 1);
  RadicalSum z = RadicalSum::sqrt_of(8) - RadicalSum::sqrt_of(2) * RadicalSum(2);
  EXPECT_TRUE(z.is_zero());
}

TEST(Field, SquareRoots) {
  auto K = NumberField::quadratic(-1);
  auto r = sqrt_in_field(K, K.element(0, 2));  // 2i = (1 + i)^2
  ASSERT_TRUE(r);
  EXPECT_EQ(*r * *r, K.element(0, 2));
  EXPECT_TRUE(sqrt_in_field(K, K.element(-4)));
  EXPECT_FALSE(sqrt_in_field(K, K.element(0, 1)));
  EXPECT_FALSE(sqrt_in_field(K, K.element(2)));
  auto K2 = NumberField::quadratic(2);
  EXPECT_TRUE(sqrt_in_field(K2, K2.element(2)));
  EXPECT_TRUE(sqrt_in_field(K2, K2.element(3, 2)));  // (1 + sqrt 2)^2
  EXPECT_FALSE(sqrt_in_field(K2, K2.element(-2)));
  EXPECT_EQ(*sqrt_in_field(NumberField::rational(), FieldElement(Rational(9, 4))), FieldElement(Rational(3, 2)));
}
