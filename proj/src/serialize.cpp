#include "kstab/serialize.hpp"

#include <fstream>
#include <sstream>

#include "kstab/error.hpp"

namespace kstab {

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      throw Error("SchemaError", where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error("SchemaError", where + ": expected a rational string or integer, got " + j.dump());
}

Json to_json(const Rational& r) { return r.str(); }

Polynomial polynomial_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw Error("SchemaError", where + ": polynomial must be a list of [coeff, exp_u, exp_v]");
  Polynomial p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& t = j[i];
    std::string loc = where + "[" + std::to_string(i) + "]";
    if (!t.is_array() || t.size() != 3 || !t[1].is_number_integer() || !t[2].is_number_integer()) {
      throw Error("SchemaError", loc + ": term must be [coeff, exp_u, exp_v]");
    }
    int eu = t[1].get<int>();
    int ev = t[2].get<int>();
    if (eu < 0 || ev < 0) throw Error("SchemaError", loc + ": negative exponent");
    p += Polynomial::monomial(rational_from_json(t[0], loc), eu, ev);
  }
  return p;
}

Json to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) out.push_back(Json::array({c.str(), e.first, e.second}));
  return out;
}

Polynomial affine_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) return Polynomial(rational_from_json(j, where));
  if (j.empty() || j.size() > 3) throw Error("SchemaError", where + ": affine form needs 1 to 3 coefficients");
  Rational c0 = rational_from_json(j[0], where);
  Rational cu = j.size() > 1 ? rational_from_json(j[1], where) : Rational(0);
  Rational cv = j.size() > 2 ? rational_from_json(j[2], where) : Rational(0);
  return Polynomial::affine(c0, cu, cv);
}

Interval interval_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw Error("SchemaError", where + ": interval must be [lo, hi]");
  Interval iv{rational_from_json(j[0], where), rational_from_json(j[1], where)};
  if (iv.hi < iv.lo) throw Error("SchemaError", where + ": interval endpoints reversed");
  return iv;
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("FixtureMissing", path.string() + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("ParseError", path.string() + ": " + e.what());
  }
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw Error("SchemaError", where + ": missing field '" + key + "'");
  return obj.at(key);
}

}  // namespace kstab
