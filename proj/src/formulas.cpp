#include "kstab/formulas.hpp"

#include "kstab/error.hpp"
#include "kstab/functionals.hpp"

namespace kstab {

namespace {

// a^m - (a-1)^m
Rational diff_pow(const Rational& a, int m) { return a.pow(m) - (a - 1).pow(m); }

void require_n(const FamilyParams& p, int lo) {
  if (p.n < lo) throw Error("InvalidParameters", "n must be at least " + std::to_string(lo));
}

}  // namespace

FamilyParams FamilyParams::from_json(const Json& j) {
  if (!j.is_object()) throw Error("SchemaError", "formula parameters must be a JSON object");
  FamilyParams p;
  if (j.contains("n")) p.n = j.at("n").get<int>();
  if (j.contains("a")) p.a = rational_from_json(j.at("a"), "params.a");
  if (j.contains("d")) p.d = rational_from_json(j.at("d"), "params.d");
  if (j.contains("mu")) p.mu = rational_from_json(j.at("mu"), "params.mu");
  if (j.contains("deltaV")) p.delta_v = rational_from_json(j.at("deltaV"), "params.deltaV");
  if (j.contains("r")) p.r = j.at("r").get<int>();
  return p;
}

Rational vol_Da(const FamilyParams& p) {
  require_n(p, 2);
  return p.d * diff_pow(p.a, p.n);
}

Rational s_sminus(const FamilyParams& p) {
  require_n(p, 2);
  int n = p.n;
  return ((Rational(n + 1) - p.a) * p.a.pow(n) + (p.a - 1).pow(n + 1)) / (Rational(n + 1) * diff_pow(p.a, n));
}

Rational s_vertical(const FamilyParams& p) {
  require_n(p, 2);
  if (p.mu.sign() <= 0) throw Error("InvalidParameters", "mu must be positive");
  return diff_pow(p.a, p.n + 1) / (p.mu * Rational(p.n + 1) * diff_pow(p.a, p.n));
}

Rational res_n(const FamilyParams& p) {
  require_n(p, 2);
  int n = p.n;
  return (p.a.pow(n + 1) - (p.a + Rational(n)) * (p.a - 1).pow(n)) / (Rational(2 * (n + 1)) * diff_pow(p.a, n));
}

Rational lambda_n(const FamilyParams& p) {
  require_n(p, 2);
  int n = p.n;
  return (p.a.pow(n + 1) - (p.a + Rational(n)) * (p.a - 1).pow(n)) / (Rational(2 * (n + 1)) * diff_pow(p.a, n));
}

Rational k_general(const FamilyParams& p) {
  require_n(p, 2);
  int n = p.n;
  Rational lead = diff_pow(p.a, n + 1) / (Rational(n + 1) * diff_pow(p.a, n));
  return lead * p.d * p.mu.pow(n - 2) + res_n(p);
}

Rational k3(const Rational& a, const Rational& d, const Rational& mu) {
  Rational dm = d * mu;
  Rational num = Rational(8) * dm * a.pow(3) + Rational(6) * (Rational(1) - Rational(2) * dm) * a.pow(2) +
                 Rational(8) * (dm - 1) * a - Rational(2) * dm + Rational(3);
  return num / (Rational(8) * (Rational(3) * a.pow(2) - Rational(3) * a + 1));
}

GammaResult gamma_criterion(const FamilyParams& p) {
  require_n(p, 3);
  int n = p.n;
  GammaResult g;
  g.entries.push_back(k_general(p).inverse());
  g.entries.push_back(Rational(n + 1) * diff_pow(p.a, n) /
                      ((Rational(n + 1) - p.a) * p.a.pow(n) + (p.a - 1).pow(n + 1)));
  g.entries.push_back(p.a * p.delta_v * Rational(n + 1) * diff_pow(p.a, n) / (Rational(n) * diff_pow(p.a, n + 1)));
  g.gamma = g.entries[0];
  for (const auto& e : g.entries) g.gamma = min(g.gamma, e);
  g.certified = p.d * p.mu.pow(n - 2) >= Rational(2) && g.gamma > 1;
  return g;
}

FamilyParams theorem15_params(int n, int r) {
  FamilyParams p;
  p.n = n;
  p.r = r;
  p.mu = Rational(1, r);
  p.d = Rational(r).pow(n - 1);
  p.a = Rational(n, r);
  p.delta_v = 1;
  return p;
}

Theorem15Verdict theorem15_check(int n, int r) {
  // n > r > n/2 > 1
  if (!(n > r && 2 * r > n && n > 2)) {
    throw Error("HypothesisViolated", "need n > r > n/2 > 1, got n=" + std::to_string(n) + ", r=" + std::to_string(r));
  }
  Theorem15Verdict v;
  FamilyParams p = theorem15_params(n, r);
  v.k = k_general(p);
  v.gamma = gamma_criterion(p);
  v.holds = v.k < 1 && v.gamma.entries[1] > 1 && v.gamma.entries[2] > 1 && v.gamma.certified;
  return v;
}

FanoSignature fano_signature(const Rational& a, const Rational& a1, const Rational& a2) {
  if (a1 < a2) throw Error("UnsortedInput", "need a1 >= a2");
  FanoSignature s;
  s.is_fano = a > a1;
  s.k_unstable = s.is_fano && a1 > a2;
  return s;
}

Rational euler_char_tangent(const Rational& minus_k3, long b2, long b3) {
  return minus_k3 / Rational(2) - Rational(18) + Rational(b2) - Rational(b3) / Rational(2);
}

Rational sminus_tail_ratio(int n, const Rational& a) {
  return Rational(n) * diff_pow(a, n + 1) / ((Rational(n + 1) - a) * a.pow(n) + (a - 1).pow(n + 1));
}

std::vector<std::string> formula_names() {
  return {"vol_Da", "s_sminus", "s_vertical", "res_n", "lambda_n", "k_general", "k3", "gamma_criterion",
          "theorem15_check", "fano_signature", "euler_char_tangent", "log_discrepancy_weighted_blowup",
          "sminus_tail_ratio"};
}

Json evaluate_formula(const std::string& name, const Json& params) {
  auto value = [](const Rational& r) { return Json{{"value", r.str()}}; };
  if (name == "vol_Da") return value(vol_Da(FamilyParams::from_json(params)));
  if (name == "s_sminus") return value(s_sminus(FamilyParams::from_json(params)));
  if (name == "s_vertical") return value(s_vertical(FamilyParams::from_json(params)));
  if (name == "res_n") return value(res_n(FamilyParams::from_json(params)));
  if (name == "lambda_n") return value(lambda_n(FamilyParams::from_json(params)));
  if (name == "k_general") return value(k_general(FamilyParams::from_json(params)));
  if (name == "k3") {
    FamilyParams p = FamilyParams::from_json(params);
    return value(k3(p.a, p.d, p.mu));
  }
  if (name == "gamma_criterion") {
    GammaResult g = gamma_criterion(FamilyParams::from_json(params));
    Json entries = Json::array();
    for (const auto& e : g.entries) entries.push_back(e.str());
    return {{"value", g.gamma.str()}, {"entries", entries}, {"certified", g.certified}};
  }
  if (name == "theorem15_check") {
    int n = require(params, "n", "params").get<int>();
    int r = require(params, "r", "params").get<int>();
    Theorem15Verdict v = theorem15_check(n, r);
    Json entries = Json::array();
    for (const auto& e : v.gamma.entries) entries.push_back(e.str());
    return {{"value", v.holds}, {"gamma", v.gamma.gamma.str()}, {"k", v.k.str()}, {"entries", entries}};
  }
  if (name == "fano_signature") {
    FanoSignature s = fano_signature(rational_from_json(require(params, "a", "params"), "params.a"),
                                     rational_from_json(require(params, "a1", "params"), "params.a1"),
                                     rational_from_json(require(params, "a2", "params"), "params.a2"));
    return {{"value", s.k_unstable}, {"is_fano", s.is_fano}, {"k_unstable", s.k_unstable}};
  }
  if (name == "euler_char_tangent") {
    return value(euler_char_tangent(rational_from_json(require(params, "minusK3", "params"), "params.minusK3"),
                                    require(params, "b2", "params").get<long>(),
                                    require(params, "b3", "params").get<long>()));
  }
  if (name == "log_discrepancy_weighted_blowup") {
    std::vector<BoundaryTerm> boundary;
    for (const auto& b : params.value("boundary", Json::array())) {
      if (b.is_object()) {
        boundary.push_back({rational_from_json(require(b, "coeff", "params.boundary"), "params.boundary.coeff"),
                            rational_from_json(require(b, "order", "params.boundary"), "params.boundary.order")});
      } else if (b.is_array() && b.size() == 2) {
        boundary.push_back({rational_from_json(b[0], "params.boundary"), rational_from_json(b[1], "params.boundary")});
      } else {
        throw Error("SchemaError", "params.boundary: expected [coeff, order] or {coeff, order}");
      }
    }
    LogDiscrepancy r = log_discrepancy_weighted_blowup(require(params, "w1", "params").get<long>(),
                                                       require(params, "w2", "params").get<long>(), boundary);
    Json out = value(r.value);
    if (r.non_positive) out["warning"] = "NonPositiveResult";
    return out;
  }
  if (name == "sminus_tail_ratio") {
    FamilyParams p = FamilyParams::from_json(params);
    return value(sminus_tail_ratio(p.n, p.a));
  }
  throw Error("UnknownFormula", "no formula named '" + name + "'");
}

}  // namespace kstab
