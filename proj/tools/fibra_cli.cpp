// fibra: command-line front end.
//
//   fibra analyze    --config cover.json
//   fibra bad-set    --config cover.json
//   fibra predict    --config cover.json --tau 5 --p 5
//   fibra oracle     --config cover.json --tau 25 --p 5
//   fibra puiseux    --config cover.json --tau0 0 --u0 0 --N 5
//   fibra experiment --config cover.json --B 30
//   fibra verify     --config cover.json --tau-min -50 --tau-max 50 --prime-bound 101
//
// Exit codes: 0 success, 1 verify found mismatches, 2 invalid input, 3 degenerate
// model, 4 bad place, 5-11 the remaining library errors, 70 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "fibra/fibra.hpp"

using namespace fibra;

namespace {

struct Options {
  std::string config, format = "json", out;
  std::string field, F, genus;
  std::map<std::string, std::string> params;  // flag overrides, by config key
};

struct Context {
  PlaneCover cover;
  Json params;
};

Context load(const Options& o) {
  Json cfg = o.config.empty() ? Json::object() : read_json_file(o.config);
  if (!cfg.is_object()) throw Error(ErrorKind::InvalidInput, "config: expected an object");
  if (!o.field.empty()) {
    if (o.field == "Q") {
      cfg["field"] = Json{{"kind", "rational"}};
    } else {
      try {
        cfg["field"] = Json{{"kind", "quadratic"}, {"d", std::stol(o.field)}};
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "--field: expected Q or an integer d");
      }
    }
  }
  if (!o.F.empty()) cfg["F"] = o.F;
  if (!o.genus.empty()) {
    try {
      cfg["genus"] = std::stoi(o.genus);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput, "--genus: expected an integer");
    }
  }
  Json params = cfg.contains("params") ? cfg["params"] : Json::object();
  if (!params.is_object()) throw Error(ErrorKind::InvalidInput, "params: expected an object");
  for (auto& [k, v] : o.params) params[k] = v;
  return Context{cover_from_json(cfg), params};
}

bool has(const Json& p, const std::string& key) { return p.contains(key) && !p[key].is_null(); }

std::string param_str(const Json& p, const std::string& key) {
  if (!has(p, key)) throw Error(ErrorKind::InvalidInput, "missing parameter " + key);
  const Json& v = p[key];
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  throw Error(ErrorKind::InvalidInput, key + ": expected an integer or a string");
}

long param_long(const Json& p, const std::string& key, std::optional<long> fallback = std::nullopt) {
  if (!has(p, key)) {
    if (fallback) return *fallback;
    throw Error(ErrorKind::InvalidInput, "missing parameter " + key);
  }
  std::string s = param_str(p, key);
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidInput, key + ": expected an integer, got \"" + s + "\"");
}

Rational param_rational(const Json& p, const std::string& key) {
  std::string s = param_str(p, key);
  try {
    Rational q(s);
    if (q.get_den() != 0) {
      q.canonicalize();
      return q;
    }
  } catch (const std::invalid_argument&) {
  }
  throw Error(ErrorKind::InvalidInput, key + ": expected a rational number, got \"" + s + "\"");
}

FieldElement param_element(const NumberField& K, const Json& p, const std::string& key) {
  return element_from_json(K, p[key], key);
}

PrimePlace param_place(const NumberField& K, const Json& p) {
  long prime = param_long(p, "p");
  if (prime < 2 || !is_prime(Integer(prime))) throw Error(ErrorKind::InvalidInput, "p: " + std::to_string(prime) + " is not prime");
  return place_from_prime(K, Integer(prime), static_cast<int>(param_long(p, "place", 0)));
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + o.out);
  f << text;
}

void emit_json(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

// ---------------------------------------------------------------- commands

int cmd_analyze(const Options& o) {
  auto ctx = load(o);
  const PlaneCover& C = ctx.cover;
  auto cd = critical_polynomial(C);
  auto S = compute_bad_set(C, cd);
  if (o.format == "csv") {
    std::string out = csv_line({"critical_value", "profile"});
    for (auto& cv : cd.values) {
      std::string prof;
      if (cv.profile)
        for (std::size_t i = 0; i < cv.profile->size(); ++i) prof += (i ? " " : "") + std::to_string((*cv.profile)[i]);
      out += csv_line({critical_value_label(cv), prof});
    }
    emit(o, out);
    return 0;
  }
  Json branch = Json::array();
  for (auto& cv : cd.values) branch.push_back(critical_value_label(cv));
  emit_json(o, Json{{"cover", cover_to_json(C)},
                    {"critical", critical_to_json(C, cd)},
                    {"branch_set", branch},
                    {"bad_set", bad_set_to_json(S)},
                    {"constants", constants_to_json(constants_report(C, cd))}});
  return 0;
}

int cmd_bad_set(const Options& o) {
  auto ctx = load(o);
  auto cd = critical_polynomial(ctx.cover);
  auto S = compute_bad_set(ctx.cover, cd);
  if (o.format == "csv") {
    std::string out = csv_line({"prime", "vertical", "collision", "definition_field"});
    for (auto& p : S.all)
      out += csv_line({p.get_str(), S.vertical.count(p) ? "yes" : "no", S.collision.count(p) ? "yes" : "no",
                       S.definition_field.count(p) ? "yes" : "no"});
    emit(o, out);
    return 0;
  }
  emit_json(o, bad_set_to_json(S));
  return 0;
}

int cmd_predict(const Options& o) {
  auto ctx = load(o);
  const PlaneCover& C = ctx.cover;
  auto cd = critical_polynomial(C);
  auto S = compute_bad_set(C, cd);
  FieldElement tau = param_element(C.K, ctx.params, "tau");
  if (!is_integral(C.K, tau)) throw Error(ErrorKind::InvalidInput, "tau must be an algebraic integer");
  PrimePlace v = param_place(C.K, ctx.params);
  auto pr = predict(C, cd, S, tau, v);
  std::string summary = predict_verdict_name(pr.verdict);
  if (pr.witness) summary += ", witness " + witness_label(cd, pr) + ", k=" + std::to_string(pr.k);
  if (o.format == "csv") {
    emit(o, csv_line({"tau", "place", "verdict", "witness", "k", "v_delta", "v_tau"}) +
                csv_line({tau.str(), place_label(C.K, v), predict_verdict_name(pr.verdict), witness_label(cd, pr),
                          pr.witness ? std::to_string(pr.k) : "", valuation_str(pr.v_delta), valuation_str(pr.v_tau)}));
    return 0;
  }
  Json j{{"tau", tau.str()}, {"place", place_to_json(C.K, v)}};
  j["prediction"] = prediction_to_json(cd, pr);
  j["summary"] = summary;
  emit_json(o, j);
  return 0;
}

int cmd_oracle(const Options& o) {
  auto ctx = load(o);
  const PlaneCover& C = ctx.cover;
  FieldElement tau = param_element(C.K, ctx.params, "tau");
  PrimePlace v = param_place(C.K, ctx.params);
  auto rs = oracle_fiber(C, tau, v);
  Verdict verdict = combined_verdict(rs);
  if (o.format == "csv") {
    std::string out = csv_line({"tau", "place", "factor", "verdict", "stage", "precision"});
    for (auto& r : rs)
      out += csv_line({tau.str(), place_label(C.K, v), format_kpoly(r.factor, "U"), verdict_name(r.result.status),
                       std::to_string(r.result.stage), std::to_string(r.result.precision)});
    emit(o, out);
    return 0;
  }
  Json factors = Json::array();
  for (auto& r : rs)
    factors.push_back(Json{{"factor", format_kpoly(r.factor, "U")},
                           {"verdict", verdict_name(r.result.status)},
                           {"stage", r.result.stage},
                           {"precision", r.result.precision}});
  emit_json(o, Json{{"tau", tau.str()},
                    {"place", place_to_json(C.K, v)},
                    {"verdict", verdict_name(verdict)},
                    {"factors", factors}});
  return 0;
}

int cmd_puiseux(const Options& o) {
  auto ctx = load(o);
  const PlaneCover& C = ctx.cover;
  FieldElement t0 = param_element(C.K, ctx.params, "tau0");
  FieldElement u0 = param_element(C.K, ctx.params, "u0");
  long N = param_long(ctx.params, "N", 8);
  if (N < 0 || N > 200) throw Error(ErrorKind::InvalidInput, "N: expected 0 <= N <= 200");
  auto s = puiseux_expand(C, t0, u0, static_cast<int>(N));
  long bound = param_long(ctx.params, "eisenstein_bound", 50);
  auto e = eisenstein_check(C.K, s, bound);
  if (o.format == "csv") {
    std::string out = csv_line({"k", "coefficient"});
    for (std::size_t k = 0; k < s.a.size(); ++k) out += csv_line({std::to_string(k), s.a[k].str()});
    emit(o, out);
    return 0;
  }
  Json fails = Json::array();
  for (auto& p : e.failing_primes) fails.push_back(p.get_si());
  emit_json(o, Json{{"series", puiseux_to_json(s)},
                    {"eisenstein", Json{{"prime_bound", bound}, {"failing_primes", fails}}}});
  return 0;
}

int cmd_experiment(const Options& o) {
  auto ctx = load(o);
  const PlaneCover& C = ctx.cover;
  auto cd = critical_polynomial(C);
  auto S = compute_bad_set(C, cd);
  Rational B = param_rational(ctx.params, "B");
  if (B < 0) throw Error(ErrorKind::InvalidInput, "B must be nonnegative");
  Rational lambda = has(ctx.params, "lambda") ? param_rational(ctx.params, "lambda") : calibrate_lambda(C, cd, S);
  if (lambda <= 0) throw Error(ErrorKind::InvalidInput, "lambda must be positive");
  auto rep = run_experiment(C, cd, S, B, lambda);
  if (o.format == "csv") {
    emit(o, omega_csv(C.K, C, rep));
    return 0;
  }
  emit_json(o, experiment_to_json(C.K, rep));
  return 0;
}

int cmd_verify(const Options& o) {
  auto ctx = load(o);
  const PlaneCover& C = ctx.cover;
  auto cd = critical_polynomial(C);
  auto S = compute_bad_set(C, cd);
  std::vector<FieldElement> taus;
  if (has(ctx.params, "size_bound")) {
    taus = enumerate_integers(C.K, param_rational(ctx.params, "size_bound"));
  } else {
    long lo = param_long(ctx.params, "tau_min", -50), hi = param_long(ctx.params, "tau_max", 50);
    for (long t = lo; t <= hi; ++t) taus.push_back(C.K.element(Rational(t)));
  }
  long M = param_long(ctx.params, "prime_bound", 101);
  auto rep = cross_validate(C, cd, S, taus, M);
  if (o.format == "csv") {
    emit(o, validation_csv(C.K, cd, rep));
  } else {
    Json mism = Json::array();
    for (auto& row : rep.mismatches)
      mism.push_back(Json{{"tau", row.tau.str()},
                          {"place", place_label(C.K, row.place)},
                          {"prediction", prediction_to_json(cd, row.prediction)},
                          {"oracle", verdict_name(row.oracle)}});
    Json j = validation_summary(rep);
    j["bad_set"] = prime_set_json(S.all);
    j["mismatch_list"] = mism;
    emit_json(o, j);
  }
  return rep.mismatches.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramification in fibers of plane covers"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON config file");
    sub->add_option("--field", o.field, "Q, or d for Q(sqrt d)");
    sub->add_option("--F", o.F, "polynomial F(T, U) as an expression");
    sub->add_option("--genus", o.genus, "genus of the curve");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out, "output file (default stdout)");
  };
  auto param = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>(flag, [&o, key](const std::string& v) { o.params[key] = v; }, help);
  };

  std::map<std::string, std::function<int(const Options&)>> run;
  auto add = [&](const std::string& name, const std::string& help, std::function<int(const Options&)> f) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    run[name] = std::move(f);
    return sub;
  };

  add("analyze", "critical values, profiles and the bad set", cmd_analyze);
  add("bad-set", "the bad set S", cmd_bad_set);
  auto* pred = add("predict", "predicted ramification of a fiber at a place", cmd_predict);
  param(pred, "--tau", "tau", "fiber value");
  param(pred, "--p", "p", "rational prime below the place");
  param(pred, "--place", "place", "index of the place above p");
  auto* orc = add("oracle", "local oracle on the fiber at a place", cmd_oracle);
  param(orc, "--tau", "tau", "fiber value");
  param(orc, "--p", "p", "rational prime below the place");
  param(orc, "--place", "place", "index of the place above p");
  auto* pui = add("puiseux", "power series branch through a point", cmd_puiseux);
  param(pui, "--tau0", "tau0", "base point t-coordinate");
  param(pui, "--u0", "u0", "base point u-coordinate");
  param(pui, "--N", "N", "number of terms after the constant");
  param(pui, "--eisenstein-bound", "eisenstein_bound", "check integrality at primes up to this bound");
  auto* exp = add("experiment", "primitive places and the counting experiment", cmd_experiment);
  param(exp, "--B", "B", "size bound");
  param(exp, "--lambda", "lambda", "window constant (default: calibrated)");
  auto* ver = add("verify", "compare predictions with the oracle", cmd_verify);
  param(ver, "--tau-min", "tau_min", "smallest rational tau");
  param(ver, "--tau-max", "tau_max", "largest rational tau");
  param(ver, "--size-bound", "size_bound", "use all integers of size at most this bound");
  param(ver, "--prime-bound", "prime_bound", "largest place norm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (auto& [name, f] : run)
      if (app.got_subcommand(name)) return f(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return 2;
}
