#pragma once

// The N-ordering of O_K: by size, ties broken by (|a|, a, |b|, b).

#include <algorithm>
#include <vector>

#include "fibra/field.hpp"

namespace fibra {

class SizeOrdering {
 public:
  explicit SizeOrdering(NumberField K) : K_(K) {}

  /// Negative, zero or positive as x precedes, equals or follows y.
  int compare(const FieldElement& x, const FieldElement& y) const {
    int c = compare_sizes(x, y);
    if (c != 0) return c;
    if (abs(x.a()) != abs(y.a())) return abs(x.a()) < abs(y.a()) ? -1 : 1;
    if (x.a() != y.a()) return x.a() < y.a() ? -1 : 1;
    if (abs(x.b()) != abs(y.b())) return abs(x.b()) < abs(y.b()) ? -1 : 1;
    if (x.b() != y.b()) return x.b() < y.b() ? -1 : 1;
    return 0;
  }
  bool operator()(const FieldElement& x, const FieldElement& y) const { return compare(x, y) < 0; }

  int compare_sizes(const FieldElement& x, const FieldElement& y) const {
    if (K_.is_rational()) return cmp(abs(x.a()), abs(y.a()));
    if (K_.is_imaginary()) return cmp(norm(K_, x), norm(K_, y));
    RadicalSum diff = RadicalSum(abs(x.a()) - abs(y.a())) +
                      RadicalSum::sqrt_of(Rational(K_.d()), abs(x.b()) - abs(y.b()));
    return diff.sign();
  }

  const NumberField& field() const { return K_; }

 private:
  NumberField K_;
};

/// All tau in O_K with size(tau) <= B, in N-order.
inline std::vector<FieldElement> enumerate_integers(const NumberField& K, const Rational& B) {
  std::vector<FieldElement> out;
  if (B < 0) return out;
  Integer ib = floor_of(B);
  if (K.is_rational()) {
    for (Integer a = -ib; a <= ib; ++a) out.push_back(K.element(Rational(a)));
  } else {
    // |a| <= size and |b| sqrt|d| <= size, so both coordinates are bounded by 2B + 1.
    Integer lim = 2 * ib + 1;
    SizeValue bound(B);
    for (Integer x1 = -lim; x1 <= lim; ++x1) {
      for (Integer x0 = -lim; x0 <= lim; ++x0) {
        FieldElement x = from_coordinates(K, Rational(x0), Rational(x1));
        if (abs(x.a()) > B) continue;
        if (K.is_imaginary()) {
          if (norm(K, x) > B * B) continue;
        } else if (size(K, x) > bound) {
          continue;
        }
        out.push_back(x);
      }
    }
  }
  std::sort(out.begin(), out.end(), SizeOrdering(K));
  return out;
}

}  // namespace fibra
