#include <gtest/gtest.h>

#include "fibra/io.hpp"

using namespace fibra;

namespace {

BiPoly C(const FieldElement& c) { return constant_bipoly(KPoly(c)); }
const BiPoly T = T_var();
const BiPoly U = U_var();
const NumberField Q = NumberField::rational();
const NumberField Gi = NumberField::quadratic(-1);

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::HenselFails;  // sentinel: nothing thrown
}

}  // namespace

TEST(Expr, Polynomials) {
  EXPECT_EQ(parse_bipoly(Q, "U^2 - T*(T - 1)*(T - 3)"), U * U - T * (T - C(1)) * (T - C(3)));
  EXPECT_EQ(parse_bipoly(Q, "2U^2 - U + T"), C(2) * U * U - U + T);
  EXPECT_EQ(parse_bipoly(Q, "-U^3 + 3/2*T"), -(U * U * U) + C(Rational(3, 2)) * T);
  EXPECT_EQ(parse_bipoly(Q, "(T+1)^2"), (T + C(1)) * (T + C(1)));
  EXPECT_EQ(parse_bipoly(Gi, "U^2 - i*T"), U * U - C(Gi.element(0, 1)) * T);
  EXPECT_EQ(parse_element(Gi, "3 + 2i"), Gi.element(3, 2));
  auto K5 = NumberField::quadratic(5);
  EXPECT_EQ(parse_element(K5, "w"), K5.omega());
  EXPECT_EQ(parse_element(K5, "(1 + s)/2"), K5.omega());
  EXPECT_EQ(parse_element(Q, "-7/21"), FieldElement(Rational(-1, 3)));
}

TEST(Expr, Errors) {
  for (const char* bad : {"U^", "T/U", "i", "(T", "U +", "T $ U", "1/0", ""})
    EXPECT_EQ(kind_of([&] { parse_bipoly(Q, bad); }), ErrorKind::InvalidInput) << bad;
  EXPECT_EQ(kind_of([&] { parse_element(Q, "T + 1"); }), ErrorKind::InvalidInput);
}

TEST(Config, Covers) {
  auto grid = cover_from_json(Json::parse(R"({"F": [[0, -1], [0], [1]], "genus": 0})"));
  auto expr = cover_from_json(Json::parse(R"({"field": {"kind": "rational"}, "F": "U^2 - T"})"));
  EXPECT_EQ(grid.F, expr.F);
  EXPECT_EQ(*grid.genus, 0);
  auto gi = cover_from_json(Json::parse(R"({"field": {"kind": "quadratic", "d": -1}, "F": [[0, {"a": "0", "b": "1"}], [], [1]]})"));
  EXPECT_EQ(gi.F, U * U + C(Gi.element(0, 1)) * T);
  EXPECT_EQ(element_from_json(Gi, Json::parse(R"({"a": "3/2", "b": "0"})"), "x"), FieldElement(Rational(3, 2)));
}

TEST(Config, Errors) {
  EXPECT_EQ(kind_of([] { parse_json_text("{\"F\": [[1,", "cfg"); }), ErrorKind::InvalidInput);
  try {
    parse_json_text("{\n  \"F\": ]\n}", "cfg");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  for (const char* bad : {R"({"field": {"kind": "quadratic", "d": 4}, "F": "U^2 - T"})",
                          R"({"field": {"kind": "quadratic", "d": 1}, "F": "U^2 - T"})",
                          R"({"field": {"kind": "cubic"}, "F": "U^2 - T"})",
                          R"({"F": "U^2 - T", "genus": -1})",
                          R"({"genus": 0})",
                          R"({"F": [[0, "1/0"], [], [1]]})",
                          R"({"F": [[0, {"a": "1", "b": "1"}], [], [1]]})",
                          R"({"F": [[0, true], [], [1]]})",
                          R"({"F": "U^2 - T^2"})",
                          R"([1, 2])"})
    EXPECT_EQ(kind_of([&] { cover_from_json(Json::parse(bad)); }), ErrorKind::InvalidInput) << bad;
}

TEST(Reports, Legendre) {
  auto C = cover_from_json(Json::parse(R"j({"F": "U^2 - T*(T - 1)*(T - 3)", "genus": 1})j"));
  auto cd = critical_polynomial(C);
  auto j = critical_to_json(C, cd);
  EXPECT_EQ(j["Delta"]["str"], "T^3 - 4*T^2 + 3*T");
  EXPECT_EQ(j["infinity_critical"], true);
  std::vector<std::string> labels;
  for (auto& v : j["critical_values"]) labels.push_back(v["value"]);
  EXPECT_EQ(labels, (std::vector<std::string>{"0", "1", "3", "inf"}));
  auto S = compute_bad_set(C, cd);
  EXPECT_EQ(bad_set_to_json(S)["all"], Json::parse("[2, 3]"));
  EXPECT_EQ(format_bipoly(C.F), "U^2 + (-T^3 + 4*T^2 - 3*T)");
  // same input, same bytes
  EXPECT_EQ(critical_to_json(C, critical_polynomial(C)).dump(), j.dump());
}

TEST(Reports, Csv) {
  EXPECT_EQ(csv_line({"a", "b,c", "say \"hi\""}), "a,\"b,c\",\"say \"\"hi\"\"\"\n");
  auto C = cover_from_json(Json::parse(R"({"F": "U^2 - T"})"));
  auto cd = critical_polynomial(C);
  auto S = compute_bad_set(C, cd);
  auto rep = cross_validate(C, cd, S, {FieldElement(3), FieldElement(4)}, 5);
  EXPECT_EQ(validation_csv(C.K, cd, rep),
            "tau,place,verdict,witness,k,oracle_verdict,agree\n"
            "3,3,ramified,0,1,ramified,yes\n"
            "3,5,unramified,,,unramified,yes\n"
            "4,3,unramified,,,unramified,yes\n"
            "4,5,unramified,,,unramified,yes\n");
}
