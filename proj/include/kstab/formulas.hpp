#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kstab/serialize.hpp"

namespace kstab {

struct FamilyParams {
  int n = 3;
  Rational a{3, 2};
  Rational d{1};
  Rational mu{1};
  Rational delta_v{1};
  std::optional<int> r;

  static FamilyParams from_json(const Json& j);
};

Rational vol_Da(const FamilyParams& p);
Rational s_sminus(const FamilyParams& p);
Rational s_vertical(const FamilyParams& p);
Rational res_n(const FamilyParams& p);
Rational lambda_n(const FamilyParams& p);
Rational k_general(const FamilyParams& p);
Rational k3(const Rational& a, const Rational& d, const Rational& mu);

struct GammaResult {
  Rational gamma;
  std::vector<Rational> entries;  // 1/k_n, the negative-section entry, the base entry
  bool certified = false;
};
GammaResult gamma_criterion(const FamilyParams& p);

struct Theorem15Verdict {
  bool holds = false;
  GammaResult gamma;
  Rational k;  // must be < 1
};
// Degree-r hypersurface family in dimension n: mu = 1/r, d = r^(n-1), a = n/r.
FamilyParams theorem15_params(int n, int r);
Theorem15Verdict theorem15_check(int n, int r);

struct FanoSignature {
  bool is_fano = false;
  bool k_unstable = false;
};
FanoSignature fano_signature(const Rational& a, const Rational& a1, const Rational& a2);

Rational euler_char_tangent(const Rational& minus_k3, long b2, long b3);

// Ratio n(a^(n+1)-(a-1)^(n+1)) / ((n+1-a)a^n + (a-1)^(n+1)), which must exceed a.
Rational sminus_tail_ratio(int n, const Rational& a);

// Names accepted by evaluate_formula, for the CLI.
std::vector<std::string> formula_names();
// Evaluates a named formula; the result is an object of exact values.
Json evaluate_formula(const std::string& name, const Json& params);

}  // namespace kstab
