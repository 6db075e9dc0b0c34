#pragma once

// Bivariate polynomials F(T, U) = sum_j a_j(T) U^j over K.

#include <utility>
#include <vector>

#include "fibra/factor.hpp"

namespace fibra {

using BiPoly = Polynomial<KPoly>;

/// grid[j][i] is the coefficient of T^i U^j.
inline BiPoly bipoly_from_grid(const std::vector<std::vector<FieldElement>>& grid) {
  std::vector<KPoly> c;
  for (auto& row : grid) c.emplace_back(row);
  return BiPoly(std::move(c));
}

inline int deg_U(const BiPoly& F) { return F.degree(); }

inline int deg_T(const BiPoly& F) {
  int d = -1;
  for (auto& c : F.coefficients()) d = std::max(d, c.degree());
  return d;
}

inline BiPoly d_dU(const BiPoly& F) { return F.derivative(); }

inline BiPoly d_dT(const BiPoly& F) {
  return F.map([](const KPoly& c) { return c.derivative(); });
}

/// F(tau, U).
inline KPoly specialize_T(const BiPoly& F, const FieldElement& tau) {
  return F.map([&](const KPoly& c) { return c(tau); });
}

/// F(T, u).
inline KPoly specialize_U(const BiPoly& F, const FieldElement& u) {
  KPoly acc;
  for (size_t j = F.size(); j-- > 0;) acc = acc * KPoly(u) + F[j];
  return acc;
}

/// Swap the roles of T and U.
inline BiPoly transpose(const BiPoly& F) {
  int dt = deg_T(F);
  std::vector<KPoly> rows;
  for (int i = 0; i <= dt; ++i) {
    std::vector<FieldElement> r;
    for (size_t j = 0; j < F.size(); ++j) r.push_back(F[j].coeff(static_cast<size_t>(i)));
    rows.emplace_back(std::move(r));
  }
  return BiPoly(std::move(rows));
}

inline BiPoly constant_bipoly(const KPoly& c) { return BiPoly(c); }

inline BiPoly U_var() { return BiPoly({KPoly(), KPoly(FieldElement(1))}); }
inline BiPoly T_var() { return BiPoly(KPoly::x()); }

/// Fraction-free (Bareiss) determinant over K[T].
inline KPoly determinant(std::vector<std::vector<KPoly>> m) {
  size_t n = m.size();
  if (n == 0) return KPoly(FieldElement(1));
  KPoly prev(FieldElement(1));
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return KPoly();
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_quotient(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = KPoly();
    }
    prev = m[k][k];
  }
  KPoly d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

/// Sylvester matrix of F and G with respect to U.
inline std::vector<std::vector<KPoly>> sylvester_U(const BiPoly& F, const BiPoly& G) {
  int m = F.degree(), n = G.degree();
  size_t N = static_cast<size_t>(m + n);
  std::vector<std::vector<KPoly>> S(N, std::vector<KPoly>(N));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) S[static_cast<size_t>(r)][static_cast<size_t>(r + m - j)] = F[static_cast<size_t>(j)];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j)
      S[static_cast<size_t>(n + r)][static_cast<size_t>(r + n - j)] = G[static_cast<size_t>(j)];
  return S;
}

/// Res_U(F, G) as a polynomial in T.
inline KPoly resultant_U(const BiPoly& F, const BiPoly& G) {
  if (F.is_zero() || G.is_zero()) return KPoly();
  if (F.degree() == 0 && G.degree() == 0) return KPoly(FieldElement(1));
  if (F.degree() == 0) return F[0].pow(static_cast<unsigned>(G.degree()));
  if (G.degree() == 0) return G[0].pow(static_cast<unsigned>(F.degree()));
  return determinant(sylvester_U(F, G));
}

inline std::string format_bipoly(const BiPoly& F) {
  if (F.is_zero()) return "0";
  std::string out;
  for (size_t j = F.size(); j-- > 0;) {
    if (F[j].is_zero()) continue;
    std::string c = format_kpoly(F[j], "T");
    bool compound = c.find(" + ") != std::string::npos || c.find(" - ") != std::string::npos;
    bool neg = !compound && c[0] == '-';
    if (neg) c.erase(0, 1);
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (j == 0) {
      out += compound && F.size() > 1 ? "(" + c + ")" : c;
      continue;
    }
    if (c != "1") out += (compound ? "(" + c + ")" : c) + "*";
    out += "U";
    if (j > 1) out += "^" + std::to_string(j);
  }
  return out;
}

}  // namespace fibra
