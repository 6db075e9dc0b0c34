#pragma once

// JSON configs and report serialization. Polynomials may be given as a coefficient
// grid (row i holds the T-coefficients of U^i) or as an expression in T, U and the
// field generator: s for sqrt(d), i when d = -1, w for the integral generator omega.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fibra/experiment.hpp"

namespace fibra {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- expressions

namespace detail {

class ExprParser {
 public:
  ExprParser(const NumberField& K, std::string src) : K_(K), s_(std::move(src)) {}

  BiPoly parse() {
    BiPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::InvalidInput,
                "expression \"" + s_ + "\": " + what + " at column " + std::to_string(pos_ + 1));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  static BiPoly constant(const FieldElement& x) { return constant_bipoly(KPoly(x)); }

  BiPoly expr() {
    BiPoly acc;
    bool first = true;
    for (;;) {
      char c = peek();
      int sign = 1;
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        return acc;
      }
      BiPoly t = term();
      acc = sign < 0 ? acc - t : acc + t;
      first = false;
    }
  }

  BiPoly term() {
    BiPoly acc = power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * power();
      } else if (c == '/') {
        ++pos_;
        BiPoly d = power();
        if (d.degree() != 0 || d[0].degree() != 0) fail("division by a non-constant");
        if (d[0][0].is_zero()) fail("division by zero");
        acc = acc * constant(FieldElement(1) / d[0][0]);
      } else if (c == '(' || std::isalnum(static_cast<unsigned char>(c))) {
        acc = acc * power();  // juxtaposition
      } else {
        return acc;
      }
    }
  }

  BiPoly power() {
    BiPoly b = atom();
    if (peek() == '^') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      unsigned long e = std::stoul(s_.substr(start, pos_ - start));
      if (e > 64) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(e));
    }
    return b;
  }

  BiPoly atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      BiPoly r = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return constant(FieldElement(Integer(s_.substr(start, pos_ - start))));
    }
    ++pos_;
    switch (c) {
      case 'T': return T_var();
      case 'U': return U_var();
      case 's':
        if (K_.is_rational()) fail("s needs a quadratic field");
        return constant(FieldElement(0, 1, K_.d()));
      case 'i':
        if (K_.d() != -1) fail("i needs the field Q(i)");
        return constant(FieldElement(0, 1, -1));
      case 'w':
        if (K_.is_rational()) fail("w needs a quadratic field");
        return constant(K_.omega());
      default:
        --pos_;
        fail(c == '\0' ? "unexpected end" : "unexpected '" + std::string(1, c) + "'");
    }
  }

  NumberField K_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline BiPoly parse_bipoly(const NumberField& K, const std::string& s) { return detail::ExprParser(K, s).parse(); }

inline FieldElement parse_element(const NumberField& K, const std::string& s) {
  BiPoly b = parse_bipoly(K, s);
  if (b.is_zero()) return FieldElement(0);
  if (b.degree() != 0 || b[0].degree() != 0)
    throw Error(ErrorKind::InvalidInput, "\"" + s + "\" is not a constant");
  return K.embed(b[0][0]);
}

// ---------------------------------------------------------------- JSON input

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, origin + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

inline NumberField field_from_json(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "Q" || s == "rational") return NumberField::rational();
    throw Error(ErrorKind::InvalidInput, "field: unknown field \"" + s + "\"");
  }
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "field: expected an object");
  std::string kind = j.value("kind", std::string(j.contains("d") ? "quadratic" : "rational"));
  if (kind == "rational") return NumberField::rational();
  if (kind != "quadratic") throw Error(ErrorKind::InvalidInput, "field.kind: expected rational or quadratic");
  if (!j.contains("d") || !j["d"].is_number_integer()) throw Error(ErrorKind::InvalidInput, "field.d: expected an integer");
  long d = j["d"].get<long>();
  if (d == 0 || d == 1 || !is_squarefree(Integer(d)))
    throw Error(ErrorKind::InvalidInput, "field.d: " + std::to_string(d) + " is not a squarefree integer other than 0, 1");
  return NumberField::quadratic(d);
}

inline Json field_to_json(const NumberField& K) {
  if (K.is_rational()) return Json{{"kind", "rational"}};
  return Json{{"kind", "quadratic"}, {"d", K.d()}};
}

inline FieldElement element_from_json(const NumberField& K, const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return FieldElement(Integer(j.get<long>()));
    if (j.is_string()) return parse_element(K, j.get<std::string>());
    if (j.is_object()) {
      auto coord = [&](const char* key) {
        if (!j.contains(key)) return Rational(0);
        const Json& c = j[key];
        if (c.is_number_integer()) return Rational(c.get<long>());
        if (c.is_string()) return Rational(c.get<std::string>());
        throw Error(ErrorKind::InvalidInput, where + "." + key + ": expected an integer or a \"p/q\" string");
      };
      Rational a = coord("a"), b = coord("b");
      if (a.get_den() == 0 || b.get_den() == 0) throw Error(ErrorKind::InvalidInput, where + ": zero denominator");
      a.canonicalize();
      b.canonicalize();
      if (b != 0 && K.is_rational()) throw Error(ErrorKind::InvalidInput, where + ": irrational element of Q");
      return K.is_rational() ? FieldElement(a) : FieldElement(a, b, K.d());
    }
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::InvalidInput, where + ": not a number");
  }
  throw Error(ErrorKind::InvalidInput, where + ": expected a number, a string or {\"a\", \"b\"}");
}

inline Json element_to_json(const NumberField& K, const FieldElement& x) {
  if (K.is_rational()) return x.a().get_str();
  return Json{{"a", x.a().get_str()}, {"b", x.b().get_str()}};
}

inline BiPoly bipoly_from_json(const NumberField& K, const Json& j) {
  if (j.is_string()) return parse_bipoly(K, j.get<std::string>());
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "F: expected an expression or a coefficient grid");
  std::vector<KPoly> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) throw Error(ErrorKind::InvalidInput, "F[" + std::to_string(i) + "]: expected an array");
    std::vector<FieldElement> c;
    for (std::size_t k = 0; k < j[i].size(); ++k)
      c.push_back(element_from_json(K, j[i][k], "F[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    rows.emplace_back(std::move(c));
  }
  return BiPoly(std::move(rows));
}

inline PlaneCover cover_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "config: expected an object");
  NumberField K = j.contains("field") ? field_from_json(j["field"]) : NumberField::rational();
  if (!j.contains("F")) throw Error(ErrorKind::InvalidInput, "config: missing \"F\"");
  std::optional<int> genus;
  if (j.contains("genus")) {
    if (!j["genus"].is_number_integer() || j["genus"].get<int>() < 0)
      throw Error(ErrorKind::InvalidInput, "genus: expected a nonnegative integer");
    genus = j["genus"].get<int>();
  }
  return make_cover(K, bipoly_from_json(K, j["F"]), genus, j.value("name", std::string()));
}

// ---------------------------------------------------------------- JSON output

inline Json kpoly_to_json(const NumberField& K, const KPoly& f) {
  Json c = Json::array();
  for (auto& x : f.coefficients()) c.push_back(element_to_json(K, x));
  return Json{{"str", format_kpoly(f, "T")}, {"coefficients", c}};
}

inline Json place_to_json(const NumberField& K, const PrimePlace& v) {
  return Json{{"label", place_label(K, v)},
              {"p", v.p.get_str()},
              {"kind", place_kind_name(v.kind)},
              {"norm", v.norm().get_str()}};
}

inline Json cover_to_json(const PlaneCover& C) {
  Json j{{"field", field_to_json(C.K)}, {"F", format_bipoly(C.F)}, {"n", C.n}};
  if (C.genus) j["genus"] = *C.genus;
  if (!C.name.empty()) j["name"] = C.name;
  return j;
}

inline Json critical_to_json(const PlaneCover& C, const CriticalData& cd) {
  Json vals = Json::array();
  for (auto& cv : cd.values) {
    Json v{{"value", critical_value_label(cv)}};
    if (cv.profile) v["profile"] = *cv.profile;
    vals.push_back(v);
  }
  return Json{{"R", kpoly_to_json(C.K, cd.R)},
              {"Delta", kpoly_to_json(C.K, cd.Delta)},
              {"infinity_critical", cd.infinity_critical},
              {"m", cd.m()},
              {"critical_values", vals}};
}

inline Json prime_set_json(const std::set<Integer>& s) {
  Json a = Json::array();
  for (auto& p : s) a.push_back(p.get_si());
  return a;
}

inline Json bad_set_to_json(const BadSet& S) {
  return Json{{"all", prime_set_json(S.all)},
              {"vertical", prime_set_json(S.vertical)},
              {"collision", prime_set_json(S.collision)},
              {"definition_field", prime_set_json(S.definition_field)}};
}

inline std::string valuation_str(int v) { return v >= kInfiniteValuation ? "inf" : std::to_string(v); }

inline Json prediction_to_json(const CriticalData& cd, const Prediction& p) {
  Json j{{"verdict", predict_verdict_name(p.verdict)}};
  if (p.witness) {
    j["witness"] = witness_label(cd, p);
    j["k"] = p.k;
  } else {
    j["witness"] = nullptr;
  }
  j["v_delta"] = valuation_str(p.v_delta);
  j["v_tau"] = valuation_str(p.v_tau);
  return j;
}

inline Json constants_to_json(const ConstantsReport& r) {
  Json j{{"m", r.m}, {"infinity_critical", r.infinity_critical}, {"lambda", r.lambda.get_str()}};
  if (r.bound) {
    j["bound_2g_2n_2"] = *r.bound;
    j["bound_holds"] = r.bound_holds;
  }
  if (r.c) j["c"] = r.c->get_str();
  return j;
}

inline Json experiment_to_json(const NumberField& K, const ExperimentReport& r) {
  Json assigns = Json::array();
  for (auto& a : r.assignments)
    assigns.push_back(Json{{"place", place_label(K, a.place)},
                           {"norm", a.place.norm().get_str()},
                           {"tau", a.tau.str()},
                           {"size", size(K, a.tau).str()},
                           {"scanned", a.scanned},
                           {"certificate", a.gamma.str()},
                           {"certified", a.certified && a.undetermined_in_prefix == 0}});
  auto elems = [](const std::vector<FieldElement>& xs) {
    Json a = Json::array();
    for (auto& x : xs) a.push_back(x.str());
    return a;
  };
  auto labels = [&](const std::vector<PrimePlace>& vs) {
    Json a = Json::array();
    for (auto& v : vs) a.push_back(place_label(K, v));
    return a;
  };
  return Json{{"B", r.B.get_str()},
              {"lambda", r.lambda.get_str()},
              {"norm_window", Json::array({r.norm_low.get_str(), r.norm_high.get_str()})},
              {"M_B_count", r.window_count()},
              {"primitive_assignments", assigns},
              {"bad_places_in_window", labels(r.bad_places)},
              {"no_degree_one_places", labels(r.no_degree_one)},
              {"Omega_B", elems(r.omega)},
              {"OmegaPrime_B", elems(r.omega_prime)},
              {"degree_log2_lower_bound", r.degree_log2_lower_bound},
              {"distinct_field_lower_bound", r.distinct_field_lower_bound},
              {"reducible_count", r.reducible_count},
              {"max_places_per_tau", r.max_places_per_tau},
              {"sizes_within_B", r.sizes_within_B},
              {"constants", constants_to_json(r.constants)}};
}

inline Json puiseux_to_json(const PuiseuxSeries& s) {
  Json a = Json::array();
  for (auto& x : s.a) a.push_back(x.str());
  return Json{{"tau0", s.tau0.str()}, {"u0", s.u0.str()}, {"N", s.N}, {"order", s.nu}, {"coefficients", a}};
}

inline Json validation_summary(const ValidationReport& r) {
  return Json{{"rows", r.rows.size()},
              {"comparisons", r.comparisons},
              {"mismatches", r.mismatches.size()},
              {"needs_oracle", r.needs_oracle},
              {"undetermined", r.undetermined},
              {"critical_skipped", r.critical_skipped}};
}

// ---------------------------------------------------------------- CSV

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_field(cells[i]);
  return out + "\n";
}

inline std::string validation_csv(const NumberField& K, const CriticalData& cd, const ValidationReport& r) {
  std::string out = csv_line({"tau", "place", "verdict", "witness", "k", "oracle_verdict", "agree"});
  for (auto& row : r.rows) {
    const auto& p = row.prediction;
    out += csv_line({row.tau.str(), place_label(K, row.place), predict_verdict_name(p.verdict), witness_label(cd, p),
                     p.witness ? std::to_string(p.k) : "", verdict_name(row.oracle),
                     row.compared ? (row.agree ? "yes" : "no") : "n/a"});
  }
  return out;
}

inline std::string omega_csv(const NumberField& K, const PlaneCover& C, const ExperimentReport& r) {
  std::string out = csv_line({"tau", "size", "primitive_place", "irreducible"});
  for (auto& a : r.assignments)
    out += csv_line({a.tau.str(), size(K, a.tau).str(), place_label(K, a.place),
                     fiber_irreducible(C, a.tau) ? "yes" : "no"});
  return out;
}

}  // namespace fibra
