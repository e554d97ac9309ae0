#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "kstab/integrate.hpp"
#include "kstab/polynomial.hpp"
#include "kstab/rational.hpp"

namespace kstab {

using Json = nlohmann::json;

// Rationals are written as "p/q" (or "p"); integers are also accepted on input.
Rational rational_from_json(const Json& j, const std::string& where);
Json to_json(const Rational& r);

// Polynomials are lists of [coeff, exp_u, exp_v].
Polynomial polynomial_from_json(const Json& j, const std::string& where);
Json to_json(const Polynomial& p);

// An affine form in u given as [c0] or [c0, cu] (or [c0, cu, cv]).
Polynomial affine_from_json(const Json& j, const std::string& where);

Interval interval_from_json(const Json& j, const std::string& where);

// Reads a JSON document; FixtureMissing if absent, ParseError if malformed.
Json load_json_file(const std::filesystem::path& path);

// Field access that reports SchemaError with a location.
const Json& require(const Json& obj, const std::string& key, const std::string& where);

}  // namespace kstab
