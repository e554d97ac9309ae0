#include "kstab/toric.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "kstab/error.hpp"

namespace kstab {

namespace {

Matrix integer_matrix(const std::vector<std::vector<long>>& rows) {
  Matrix m;
  for (const auto& row : rows) {
    Vector r;
    for (long x : row) r.emplace_back(x);
    m.push_back(std::move(r));
  }
  return m;
}

// Scales a rational vector to a primitive integer vector with the same direction.
Vector primitive(Vector v) {
  mpz_class l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
  mpz_class g = 0;
  for (auto& x : v) {
    x *= Rational(mpq_class(l));
    mpz_class n = x.num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g != 0) {
    for (auto& x : v) x /= Rational(mpq_class(g));
  }
  return v;
}

// Visits subsets of {0..n-1} of size k in lexicographic order until f returns true.
bool for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& f) {
  if (k > n || k < 0) return false;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (f(idx)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<int> parse_index_list(const Json& j, const std::string& where) {
  std::vector<int> out;
  if (j.is_string()) {
    // Compact form "123" for single-digit indices.
    for (char c : j.get<std::string>()) {
      if (c < '0' || c > '9') throw Error("SchemaError", where + ": bad index list " + j.dump());
      out.push_back(c - '0');
    }
    return out;
  }
  if (!j.is_array()) throw Error("SchemaError", where + ": expected an index list");
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw Error("SchemaError", where + ": indices must be integers");
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

ToricModel::ToricModel(Input in)
    : name_(std::move(in.name)), rays_(std::move(in.rays)), mori_(std::move(in.mori_generators)),
      effective_(std::move(in.effective_generators)) {
  if (rays_.empty()) throw Error("SchemaError", name_ + ": no rays");
  dim_ = static_cast<int>(rays_[0].size());
  for (const auto& r : rays_) {
    if (static_cast<int>(r.size()) != dim_) throw Error("SchemaError", name_ + ": rays of different dimensions");
  }
  int n = num_rays();
  Matrix ray_matrix = integer_matrix(rays_);  // n x dim
  if (static_cast<int>(rank(ray_matrix)) != dim_) throw Error("SchemaError", name_ + ": rays do not span");

  if (!in.cones.empty()) {
    cones_ = std::move(in.cones);
  } else if (!in.irrelevant.empty()) {
    for_each_subset(n, dim_, [&](const std::vector<int>& s) {
      for (const auto& comp : in.irrelevant) {
        if (std::includes(s.begin(), s.end(), comp.begin(), comp.end())) return false;
      }
      cones_.push_back(s);
      return false;
    });
  } else {
    throw Error("SchemaError", name_ + ": need cones or irrelevant components");
  }
  for (auto& c : cones_) {
    std::sort(c.begin(), c.end());
    for (int i : c) check_index(i);
    if (static_cast<int>(c.size()) != dim_) throw Error("SchemaError", name_ + ": cone of wrong size");
    Matrix sub;
    for (int i : c) sub.push_back(ray_matrix[i]);
    if (determinant(sub).is_zero()) throw Error("DependentCone", name_ + ": a maximal cone has dependent rays");
  }
  std::sort(cones_.begin(), cones_.end());

  if (in.grading) {
    grading_ = std::move(*in.grading);
    for (const auto& row : grading_) {
      if (static_cast<int>(row.size()) < n) throw Error("SchemaError", name_ + ": grading has too few columns");
    }
    // Extra non-ray columns are ignored for intersection purposes.
    for (auto& row : grading_) row.resize(n);
    Matrix rel = multiply(grading_, ray_matrix);
    for (const auto& row : rel) {
      for (const auto& x : row) {
        if (!x.is_zero()) throw Error("GradingMismatch", name_ + ": grading rows are not relations among the rays");
      }
    }
    if (static_cast<int>(rank(grading_)) != n - dim_) {
      throw Error("GradingMismatch", name_ + ": grading rank differs from the number of rays minus the dimension");
    }
  } else {
    for (auto& row : nullspace(transpose(ray_matrix))) grading_.push_back(primitive(row));
  }

  for (int i = 0; i < n; ++i) aliases_["F" + std::to_string(i)] = DivisorClass{{i, Rational(1)}};
  for (auto& [k, d] : in.divisor_aliases) {
    for (const auto& [i, c] : d) check_index(i);
    aliases_[k] = d;
  }

  // All top products, memoized across the whole table.
  std::map<std::vector<int>, Rational> memo;
  std::vector<int> ms(dim_, 0);
  std::function<void(int, int)> fill = [&](int pos, int start) {
    if (pos == dim_) {
      tensor_[ms] = compute_product(ms, memo, 0);
      return;
    }
    for (int i = start; i < n; ++i) {
      ms[pos] = i;
      fill(pos + 1, i);
    }
  };
  fill(0, 0);

  for (const auto& [cname, cone] : in.curve_cones) curves_[cname] = curve_from_cone(cname, cone);
  for (const auto& [cname, pairing] : in.curve_pairings) curves_[cname] = CurveClass{cname, pairing};
  for (const auto& g : mori_) {
    if (!curves_.count(g)) throw Error("SchemaError", name_ + ": Mori generator '" + g + "' is not a named curve");
  }
  for (const auto& g : effective_) divisor(g);
}

void ToricModel::check_index(int i) const {
  if (i < 0 || i >= num_rays()) {
    throw Error("IndexOutOfRange", name_ + ": ray index " + std::to_string(i) + " out of range");
  }
}

bool ToricModel::is_cone(std::vector<int> indices) const {
  std::sort(indices.begin(), indices.end());
  for (const auto& c : cones_) {
    if (std::includes(c.begin(), c.end(), indices.begin(), indices.end())) return true;
  }
  return false;
}

bool ToricModel::is_complete() const {
  std::map<std::vector<int>, int> faces;
  for (const auto& c : cones_) {
    for (int skip = 0; skip < dim_; ++skip) {
      std::vector<int> f;
      for (int k = 0; k < dim_; ++k) {
        if (k != skip) f.push_back(c[k]);
      }
      ++faces[f];
    }
  }
  return std::all_of(faces.begin(), faces.end(), [](const auto& kv) { return kv.second == 2; });
}

Rational ToricModel::distinct_product(const std::vector<int>& indices) const {
  if (static_cast<int>(indices.size()) != dim_) throw Error("DimensionMismatch", name_ + ": wrong number of divisors");
  for (int i : indices) check_index(i);
  std::set<int> uniq(indices.begin(), indices.end());
  if (uniq.size() != indices.size()) throw Error("RepeatedIndex", name_ + ": indices must be distinct");
  if (!is_cone(indices)) return 0;
  Matrix sub;
  for (int i : indices) {
    Vector r;
    for (long x : rays_[i]) r.emplace_back(x);
    sub.push_back(std::move(r));
  }
  return determinant(sub).abs().inverse();
}

std::optional<DivisorClass> ToricModel::equivalent_representative(int i, const std::set<int>& avoid) const {
  check_index(i);
  // A character m with <m, v_i> = 1 vanishing on the other avoided rays gives
  // D_i ~ -sum_{j != i} <m, v_j> D_j, supported away from the avoided set.
  Matrix a;
  Vector b;
  auto ray_row = [&](int j) {
    Vector r;
    for (long x : rays_[j]) r.emplace_back(x);
    return r;
  };
  a.push_back(ray_row(i));
  b.emplace_back(1);
  for (int s : avoid) {
    if (s == i) continue;
    a.push_back(ray_row(s));
    b.emplace_back(0);
  }
  auto m = solve(a, b);
  if (!m) return std::nullopt;
  DivisorClass d;
  for (int j = 0; j < num_rays(); ++j) {
    if (j == i) continue;
    Rational c = -dot(*m, ray_row(j));
    if (!c.is_zero()) d[j] = c;
  }
  return d;
}

Rational ToricModel::compute_product(std::vector<int> ms, std::map<std::vector<int>, Rational>& memo,
                                     int depth) const {
  std::sort(ms.begin(), ms.end());
  if (auto it = memo.find(ms); it != memo.end()) return it->second;
  std::vector<int> support(ms.begin(), ms.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  Rational value;
  if (!is_cone(support)) {
    value = 0;
  } else if (support.size() == ms.size()) {
    value = distinct_product(ms);
  } else {
    // Each rewrite strictly enlarges the support, so depth stays below dim.
    if (depth > dim_) {
      throw Error("NoEquivalentRepresentative", name_ + ": self-intersection rewriting does not terminate");
    }
    int repeated = -1;
    for (std::size_t k = 1; k < ms.size(); ++k) {
      if (ms[k] == ms[k - 1]) {
        repeated = ms[k];
        break;
      }
    }
    auto rep = equivalent_representative(repeated, std::set<int>(support.begin(), support.end()));
    if (!rep) {
      throw Error("NoEquivalentRepresentative",
                  name_ + ": no combination equivalent to F" + std::to_string(repeated) + " avoids its cone");
    }
    std::vector<int> rest = ms;
    rest.erase(std::find(rest.begin(), rest.end(), repeated));
    for (const auto& [j, c] : *rep) {
      std::vector<int> next = rest;
      next.push_back(j);
      value += c * compute_product(next, memo, depth + 1);
    }
  }
  memo[ms] = value;
  return value;
}

Rational ToricModel::product(std::vector<int> indices) const {
  if (static_cast<int>(indices.size()) != dim_) throw Error("DimensionMismatch", name_ + ": wrong number of divisors");
  for (int i : indices) check_index(i);
  std::sort(indices.begin(), indices.end());
  return tensor_.at(indices);
}

Rational ToricModel::intersect(const std::vector<DivisorClass>& divisors) const {
  if (static_cast<int>(divisors.size()) != dim_) throw Error("DimensionMismatch", name_ + ": wrong number of divisors");
  Rational total;
  std::vector<int> idx(dim_);
  std::function<void(int, Rational)> rec = [&](int pos, Rational coeff) {
    if (pos == dim_) {
      total += coeff * product(idx);
      return;
    }
    for (const auto& [i, c] : divisors[pos]) {
      idx[pos] = i;
      rec(pos + 1, coeff * c);
    }
  };
  rec(0, Rational(1));
  return total;
}

Polynomial ToricModel::intersect(const std::vector<ParametricDivisor>& divisors) const {
  if (static_cast<int>(divisors.size()) != dim_) throw Error("DimensionMismatch", name_ + ": wrong number of divisors");
  Polynomial total;
  std::vector<int> idx(dim_);
  std::function<void(int, const Polynomial&)> rec = [&](int pos, const Polynomial& coeff) {
    if (pos == dim_) {
      total += coeff * Polynomial(product(idx));
      return;
    }
    for (const auto& [i, c] : divisors[pos]) {
      check_index(i);
      idx[pos] = i;
      rec(pos + 1, coeff * c);
    }
  };
  rec(0, Polynomial(1));
  return total;
}

Rational ToricModel::self_power(const DivisorClass& d) const {
  return intersect(std::vector<DivisorClass>(dim_, d));
}

Vector ToricModel::degree(const DivisorClass& d) const {
  Vector out(grading_.size());
  for (const auto& [i, c] : d) {
    check_index(i);
    for (std::size_t r = 0; r < grading_.size(); ++r) out[r] += grading_[r][i] * c;
  }
  return out;
}

std::vector<Polynomial> ToricModel::degree(const ParametricDivisor& d) const {
  std::vector<Polynomial> out(grading_.size());
  for (const auto& [i, c] : d) {
    check_index(i);
    for (std::size_t r = 0; r < grading_.size(); ++r) out[r] += c * Polynomial(grading_[r][i]);
  }
  return out;
}

DivisorClass ToricModel::divisor(const std::string& name) const {
  auto it = aliases_.find(name);
  if (it == aliases_.end()) throw Error("UnknownDivisor", name_ + ": no divisor named '" + name + "'");
  return it->second;
}

int ToricModel::ray_index(const std::string& name) const {
  DivisorClass d = divisor(name);
  if (d.size() != 1 || d.begin()->second != Rational(1)) {
    throw Error("UnknownDivisor", name_ + ": '" + name + "' is not a single boundary divisor");
  }
  return d.begin()->first;
}

const CurveClass& ToricModel::curve(const std::string& name) const {
  auto it = curves_.find(name);
  if (it == curves_.end()) throw Error("UnknownCurve", name_ + ": no curve named '" + name + "'");
  return it->second;
}

CurveClass ToricModel::curve_from_cone(const std::string& name, const std::vector<int>& cone) const {
  if (static_cast<int>(cone.size()) != dim_ - 1) {
    throw Error("SchemaError", name_ + ": curve '" + name + "' needs " + std::to_string(dim_ - 1) + " rays");
  }
  CurveClass c{name, {}};
  for (int k = 0; k < num_rays(); ++k) {
    std::vector<int> idx = cone;
    idx.push_back(k);
    Rational v = product(idx);
    if (!v.is_zero()) c.pairing[k] = v;
  }
  return c;
}

ToricModel ToricModel::from_json(const Json& j, const std::string& where) {
  Input in;
  in.name = require(j, "name", where).get<std::string>();
  for (const auto& r : require(j, "rays", where)) in.rays.push_back(r.get<std::vector<long>>());
  if (j.contains("cones")) {
    for (const auto& c : j.at("cones")) in.cones.push_back(parse_index_list(c, where + ".cones"));
  }
  if (j.contains("irrelevant")) {
    for (const auto& c : j.at("irrelevant")) {
      auto comp = parse_index_list(c, where + ".irrelevant");
      std::sort(comp.begin(), comp.end());
      in.irrelevant.push_back(comp);
    }
  }
  if (j.contains("grading")) {
    Matrix m;
    for (const auto& row : j.at("grading")) {
      Vector r;
      for (const auto& x : row) r.push_back(rational_from_json(x, where + ".grading"));
      m.push_back(std::move(r));
    }
    in.grading = std::move(m);
  }
  if (j.contains("divisors")) {
    for (const auto& [k, v] : j.at("divisors").items()) {
      DivisorClass d;
      for (const auto& [idx, c] : v.items()) d[std::stoi(idx)] = rational_from_json(c, where + ".divisors." + k);
      in.divisor_aliases[k] = d;
    }
  }
  if (j.contains("curves")) {
    for (const auto& [k, v] : j.at("curves").items()) {
      if (v.is_object()) {
        std::map<int, Rational> pairing;
        for (const auto& [idx, c] : v.items()) pairing[std::stoi(idx)] = rational_from_json(c, where + ".curves." + k);
        in.curve_pairings[k] = pairing;
      } else {
        in.curve_cones[k] = parse_index_list(v, where + ".curves." + k);
      }
    }
  }
  if (j.contains("mori_generators")) in.mori_generators = j.at("mori_generators").get<std::vector<std::string>>();
  if (j.contains("effective_generators")) {
    in.effective_generators = j.at("effective_generators").get<std::vector<std::string>>();
  }
  return ToricModel(std::move(in));
}

Rational pair_curve_divisor(const CurveClass& curve, const DivisorClass& d) {
  Rational s;
  for (const auto& [i, c] : d) {
    auto it = curve.pairing.find(i);
    if (it != curve.pairing.end()) s += it->second * c;
  }
  return s;
}

Polynomial pair_curve_divisor(const CurveClass& curve, const ParametricDivisor& d) {
  Polynomial s;
  for (const auto& [i, c] : d) {
    auto it = curve.pairing.find(i);
    if (it != curve.pairing.end()) s += c * Polynomial(it->second);
  }
  return s;
}

NefResult nef_check(const DivisorClass& d, const std::vector<CurveClass>& generators) {
  NefResult r;
  for (const auto& g : generators) {
    Rational p = pair_curve_divisor(g, d);
    r.pairings[g.name] = p;
    if (p < 0) {
      r.nef = false;
      r.violated.push_back(g.name);
    }
  }
  return r;
}

NefResult nef_check(const ToricModel& model, const DivisorClass& d) {
  std::vector<CurveClass> gens;
  for (const auto& g : model.mori_generators()) gens.push_back(model.curve(g));
  return nef_check(d, gens);
}

Vector effective_coordinates(const ToricModel& model, const DivisorClass& d,
                             const std::vector<DivisorClass>& generators) {
  std::size_t r = model.grading().size();
  if (generators.size() != r) {
    throw Error("SingularBasis", model.name() + ": need " + std::to_string(r) + " effective generators");
  }
  Matrix basis(r, Vector(r));
  for (std::size_t k = 0; k < r; ++k) {
    Vector deg = model.degree(generators[k]);
    for (std::size_t row = 0; row < r; ++row) basis[row][k] = deg[row];
  }
  if (determinant(basis).is_zero()) throw Error("SingularBasis", model.name() + ": generator degrees are dependent");
  return multiply(inverse(basis), model.degree(d));
}

bool effective_check(const ToricModel& model, const DivisorClass& d, const std::vector<DivisorClass>& generators) {
  Vector x = effective_coordinates(model, d, generators);
  return std::all_of(x.begin(), x.end(), [](const Rational& c) { return c.sign() >= 0; });
}

bool effective_check(const ToricModel& model, const DivisorClass& d) {
  std::vector<DivisorClass> gens;
  for (const auto& g : model.effective_generators()) gens.push_back(model.divisor(g));
  return effective_check(model, d, gens);
}

Rational pseudoeffective_threshold(const ToricModel& model, const ParametricDivisor& family) {
  std::vector<DivisorClass> gens;
  for (const auto& g : model.effective_generators()) gens.push_back(model.divisor(g));
  // Coordinates are affine in u: recover them from u = 0 and u = 1.
  Vector at0 = effective_coordinates(model, evaluate(family, 0), gens);
  Vector at1 = effective_coordinates(model, evaluate(family, 1), gens);
  std::optional<Rational> best;
  for (std::size_t k = 0; k < at0.size(); ++k) {
    Rational slope = at1[k] - at0[k];
    if (slope.sign() >= 0) continue;
    Rational root = -at0[k] / slope;
    if (!best || root < *best) best = root;
  }
  if (!best) throw Error("Unbounded", model.name() + ": no degree coordinate decreases in u");
  return *best;
}

DivisorClass evaluate(const ParametricDivisor& d, const Rational& u) {
  DivisorClass out;
  for (const auto& [i, p] : d) {
    Rational c = p.eval(u);
    if (!c.is_zero()) out[i] = c;
  }
  return out;
}

DivisorClass combine(const DivisorClass& a, const DivisorClass& b, const Rational& scale_b) {
  DivisorClass out = a;
  for (const auto& [i, c] : b) {
    out[i] += scale_b * c;
    if (out[i].is_zero()) out.erase(i);
  }
  return out;
}

namespace {

Point3 sub(const Point3& a, const Point3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Point3 cross(const Point3& a, const Point3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rational dot3(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Point3 centroid(const std::vector<Point3>& pts) {
  Point3 c{};
  for (const auto& p : pts) {
    for (int k = 0; k < 3; ++k) c[k] += p[k];
  }
  Rational n(static_cast<long>(pts.size()));
  for (auto& x : c) x /= n;
  return c;
}

struct Tetra {
  Rational volume;
  Point3 center;
};

// Decomposes the convex hull into tetrahedra (g, facet centroid, p, q) over
// all facet edges pq, where g is the vertex centroid.
std::vector<Tetra> decompose(const Polytope& poly) {
  const auto& v = poly.vertices;
  std::size_t n = v.size();
  if (n < 4) throw Error("DegeneratePolytope", "fewer than four vertices");
  Point3 g = centroid(v);
  std::set<std::vector<std::size_t>> facets;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        Point3 normal = cross(sub(v[b], v[a]), sub(v[c], v[a]));
        if (normal[0].is_zero() && normal[1].is_zero() && normal[2].is_zero()) continue;
        int pos = 0, neg = 0;
        std::vector<std::size_t> on;
        for (std::size_t k = 0; k < n; ++k) {
          int s = dot3(normal, sub(v[k], v[a])).sign();
          if (s > 0) ++pos;
          if (s < 0) ++neg;
          if (s == 0) on.push_back(k);
        }
        if (pos > 0 && neg > 0) continue;
        facets.insert(on);
      }
    }
  }
  std::vector<Tetra> out;
  for (const auto& f : facets) {
    std::vector<Point3> pts;
    for (auto k : f) pts.push_back(v[k]);
    Point3 fc = centroid(pts);
    Point3 normal = cross(sub(pts[1], pts[0]), sub(pts[2], pts[0]));
    for (std::size_t p = 0; p < pts.size(); ++p) {
      for (std::size_t q = p + 1; q < pts.size(); ++q) {
        Point3 dir = sub(pts[q], pts[p]);
        int pos = 0, neg = 0;
        bool blocked = false;
        for (std::size_t r = 0; r < pts.size(); ++r) {
          if (r == p || r == q) continue;
          int s = dot3(cross(dir, sub(pts[r], pts[p])), normal).sign();
          if (s > 0) ++pos;
          if (s < 0) ++neg;
          if (s == 0) blocked = true;  // collinear vertex: pq is not a minimal edge
        }
        if (blocked || (pos > 0 && neg > 0)) continue;
        Rational vol = dot3(sub(fc, g), cross(sub(pts[p], g), sub(pts[q], g))).abs() / Rational(6);
        Point3 center;
        for (int k = 0; k < 3; ++k) center[k] = (g[k] + fc[k] + pts[p][k] + pts[q][k]) / Rational(4);
        out.push_back({vol, center});
      }
    }
  }
  return out;
}

}  // namespace

Rational polytope_volume(const Polytope& p) {
  Rational total;
  for (const auto& t : decompose(p)) total += t.volume;
  return total;
}

Point3 polytope_barycenter(const Polytope& p) {
  auto tets = decompose(p);
  Rational total;
  Point3 moment{};
  for (const auto& t : tets) {
    total += t.volume;
    for (int k = 0; k < 3; ++k) moment[k] += t.volume * t.center[k];
  }
  if (total.is_zero()) throw Error("DegeneratePolytope", "polytope has zero volume");
  for (auto& x : moment) x /= total;
  return moment;
}

}  // namespace kstab
