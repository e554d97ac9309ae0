#include "kstab/flags.hpp"

#include <functional>

#include "kstab/error.hpp"

namespace kstab {

namespace {

using NameResolver = std::function<Vector(const std::string&)>;

std::vector<Polynomial> affine_vector(const Json& obj, const SurfaceLattice& l, const NameResolver& resolve,
                                      const std::string& where) {
  std::vector<Polynomial> out(l.curves.size());
  if (obj.is_null()) return out;
  if (!obj.is_object()) throw Error("SchemaError", where + ": expected a map from curve names to affine forms");
  for (const auto& [name, form] : obj.items()) {
    Polynomial p = affine_from_json(form, where + "." + name);
    Vector cls = resolve(name);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!cls[i].is_zero()) out[i] += p * Polynomial(cls[i]);
    }
  }
  return out;
}

Vector rational_vector(const Json& obj, const SurfaceLattice& l, const NameResolver& resolve,
                       const std::string& where) {
  Vector out(l.curves.size());
  if (obj.is_null()) return out;
  for (const auto& [name, c] : obj.items()) {
    Rational x = rational_from_json(c, where + "." + name);
    Vector cls = resolve(name);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += x * cls[i];
  }
  return out;
}

}  // namespace

FlagCase flag_case_from_json(const Json& j, const std::filesystem::path& base_dir, const std::string& where) {
  FlagCase c;
  c.label = j.value("label", where);
  c.n = j.value("n", 3);
  c.a_top = rational_from_json(require(j, "A_top", where), where + ".A_top");
  if (c.a_top.sign() <= 0) throw Error("SchemaError", where + ": A_top must be positive");

  const Json& lat = require(j, "lattice", where);
  NameResolver resolve;
  if (lat.contains("toric_model")) {
    // Lattice spanned by some boundary curves of a toric surface; other
    // boundary curves are rewritten in that basis through their degrees.
    auto path = base_dir / lat.at("toric_model").get<std::string>();
    auto model = std::make_shared<ToricModel>(ToricModel::from_json(load_json_file(path), path.string()));
    if (model->dim() != 2) throw Error("SchemaError", where + ": lattice model must be a surface");
    auto basis = require(lat, "basis", where + ".lattice").get<std::vector<std::string>>();
    c.lattice.curves = basis;
    std::vector<int> idx;
    for (const auto& b : basis) idx.push_back(model->ray_index(b));
    c.lattice.gram.assign(basis.size(), Vector(basis.size()));
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (std::size_t b = 0; b < basis.size(); ++b) c.lattice.gram[a][b] = model->product({idx[a], idx[b]});
    }
    std::vector<DivisorClass> gens;
    for (int i : idx) gens.push_back(DivisorClass{{i, Rational(1)}});
    resolve = [model, gens](const std::string& name) {
      return effective_coordinates(*model, model->divisor(name), gens);
    };
  } else {
    c.lattice = SurfaceLattice::from_json(lat, where + ".lattice");
    resolve = [lattice = c.lattice](const std::string& name) {
      Vector e(lattice.curves.size());
      e[lattice.index(name)] = 1;
      return e;
    };
  }

  const Json& flag = require(j, "flag", where);
  c.flag_class = rational_vector(require(flag, "class", where + ".flag"), c.lattice, resolve, where + ".flag.class");
  if (flag.contains("curve") && !flag.at("curve").is_null()) {
    c.flag_index = c.lattice.index(flag.at("curve").get<std::string>());
  }
  c.sigma = rational_vector(flag.value("sigma", Json()), c.lattice, resolve, where + ".flag.sigma");

  const Json& pieces = require(j, "pieces", where);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    std::string loc = where + ".pieces[" + std::to_string(k) + "]";
    FlagPiece p;
    p.interval = interval_from_json(require(pieces[k], "interval", loc), loc + ".interval");
    p.positive = affine_vector(require(pieces[k], "positive", loc), c.lattice, resolve, loc + ".positive");
    p.negative = affine_vector(pieces[k].value("negative", Json()), c.lattice, resolve, loc + ".negative");
    c.pieces.push_back(std::move(p));
  }
  if (j.contains("restricted_total")) {
    c.restricted_total = affine_vector(j.at("restricted_total"), c.lattice, resolve, where + ".restricted_total");
  }
  if (j.contains("points")) {
    for (const auto& [name, pt] : j.at("points").items()) {
      FlagPoint fp{name, {}};
      if (pt.contains("multiplicities")) {
        for (const auto& [curve, m] : pt.at("multiplicities").items()) {
          fp.multiplicities[c.lattice.index(curve)] = rational_from_json(m, where + ".points." + name);
        }
      }
      c.points[name] = fp;
    }
  }
  return c;
}

Polygon flag_domain(const FlagCase& c, const FlagPiece& piece) {
  // Upper bound for v: every coordinate of P(u)| - v C stays >= 0, and each
  // coordinate is affine in u, so its maximum sits at an endpoint.
  std::optional<Rational> top;
  for (std::size_t i = 0; i < c.flag_class.size(); ++i) {
    if (c.flag_class[i].sign() <= 0) continue;
    for (const Rational& x : {piece.interval.lo, piece.interval.hi}) {
      Rational t = piece.positive[i].eval(x) / c.flag_class[i];
      if (!top || t > *top) top = t;
    }
  }
  if (!top) throw Error("Unbounded", c.label + ": flag class has no positive coordinate");
  Polygon poly = box(piece.interval, {Rational(0), max(*top, Rational(0)) + Rational(1)});
  for (std::size_t i = 0; i < c.flag_class.size(); ++i) {
    poly = clip(poly, piece.positive[i] - Polynomial::affine(0, 0, c.flag_class[i]));
  }
  return poly;
}

Polynomial flag_order(const FlagCase& c, const FlagPiece& piece) {
  if (!c.flag_index) return Polynomial();
  return piece.negative[*c.flag_index];
}

FlagEvaluation evaluate_flag(const FlagCase& c) {
  FlagEvaluation ev;
  std::size_t n = c.lattice.curves.size();
  for (std::size_t k = 0; k < c.pieces.size(); ++k) {
    const FlagPiece& piece = c.pieces[k];
    std::string tag = c.label + " piece [" + piece.interval.lo.str() + "," + piece.interval.hi.str() + "]";
    if (piece.positive.size() != n || piece.negative.size() != n) {
      throw Error("SchemaError", tag + ": coefficient vectors have the wrong length");
    }
    if (c.restricted_total) {
      for (std::size_t i = 0; i < n; ++i) {
        if (piece.positive[i] + piece.negative[i] != (*c.restricted_total)[i]) {
          throw Error("DecompositionMismatch", tag + ": P|+N| differs from the restricted total on " + c.lattice.curves[i]);
        }
      }
    }
    std::vector<Polynomial> family(n);
    for (std::size_t i = 0; i < n; ++i) family[i] = piece.positive[i] - Polynomial::affine(0, 0, c.flag_class[i]);
    Polygon domain = flag_domain(c, piece);
    ChamberDecomposition dec = parametric_surface_zariski(c.lattice, family, domain);
    for (const auto& w : dec.warnings) ev.warnings.push_back(tag + ": " + w);
    for (const auto& p : verify_chambers(c.lattice, family, dec)) {
      throw Error("DecompositionMismatch", tag + ": " + p);
    }
    for (auto& ch : dec.chambers) ev.chambers.push_back({k, std::move(ch)});
  }
  return ev;
}

Rational s_flag_surface(const FlagCase& c, const FlagEvaluation& ev) {
  Rational total;
  for (const auto& piece : c.pieces) {
    Polynomial d = flag_order(c, piece);
    if (d.is_zero()) continue;
    Polynomial sq = c.lattice.pair(piece.positive, piece.positive);
    total += definite_integral(sq * d, piece.interval);
  }
  for (const auto& fc : ev.chambers) {
    total += integrate_over(fc.chamber.region, c.lattice.pair(fc.chamber.positive, fc.chamber.positive));
  }
  return Rational(c.n) / c.a_top * total;
}

Rational s_flag_surface(const FlagCase& c) { return s_flag_surface(c, evaluate_flag(c)); }

namespace {

const FlagPoint& find_point(const FlagCase& c, const std::string& point) {
  auto it = c.points.find(point);
  if (it == c.points.end()) throw Error("MissingMultiplicity", c.label + ": no data for point '" + point + "'");
  return it->second;
}

}  // namespace

Rational f_q_term(const FlagCase& c, const FlagEvaluation& ev, const std::string& point) {
  const FlagPoint& q = find_point(c, point);
  if (q.multiplicities.empty()) return 0;
  Rational total;
  for (const auto& fc : ev.chambers) {
    const FlagPiece& piece = c.pieces[fc.piece];
    Polynomial d = flag_order(c, piece);
    // Order at Q of the negative part restricted to the curve: the outer
    // negative part without its flag component, plus the inner one, minus
    // the boundary correction.
    Polynomial ord;
    for (const auto& [j, m] : q.multiplicities) {
      Polynomial outer = piece.negative[j] - d * Polynomial(c.flag_class[j]);
      Polynomial coeff = outer + fc.chamber.negative[j] - (Polynomial::v() + d) * Polynomial(c.sigma[j]);
      ord += coeff * Polynomial(m);
    }
    if (ord.is_zero()) continue;
    Polynomial pc = c.lattice.pair(fc.chamber.positive, c.flag_class);
    total += integrate_over(fc.chamber.region, pc * ord);
  }
  return Rational(2 * c.n) / c.a_top * total;
}

Rational f_q_term(const FlagCase& c, const std::string& point) { return f_q_term(c, evaluate_flag(c), point); }

Rational s_flag_point(const FlagCase& c, const FlagEvaluation& ev, const std::string& point) {
  Rational total;
  for (const auto& fc : ev.chambers) {
    Polynomial pc = c.lattice.pair(fc.chamber.positive, c.flag_class);
    total += integrate_over(fc.chamber.region, pc * pc);
  }
  return Rational(c.n) / c.a_top * total + f_q_term(c, ev, point);
}

Rational s_flag_point(const FlagCase& c, const std::string& point) {
  return s_flag_point(c, evaluate_flag(c), point);
}

FlagCase base_case_flag(const Rational& a, const Rational& d, const Rational& mu, bool tangential) {
  if (!(a > 1) || d.sign() <= 0 || mu.sign() <= 0) throw Error("InvalidParameters", "need a > 1 and d, mu > 0");
  Rational dm = d * mu;
  FlagCase c;
  c.label = tangential ? "weighted blowup flag" : "ordinary blowup flag";
  c.n = 3;
  c.a_top = d * (a.pow(3) - (a - 1).pow(3));
  c.lattice.curves = {"S", "f", "E"};
  Rational f2 = tangential ? Rational(-2) : Rational(-1);
  Rational e2 = tangential ? Rational(-1, 2) : Rational(-1);
  c.lattice.gram = {{-dm, 1, 0}, {1, f2, 1}, {0, 1, e2}};
  c.flag_class = {0, 0, 1};
  c.flag_index = 2;
  c.sigma = {0, 0, 0};
  Rational we = tangential ? Rational(2) : Rational(1);
  Polynomial s = Polynomial::affine(a, -mu);  // a - mu u
  Rational u1 = (a - 1) / mu;
  Rational u2 = a / mu;
  Polynomial sd = s * Polynomial(dm);
  FlagPiece p1{{0, u1}, {Polynomial(1), sd, sd * Polynomial(we)}, {Polynomial(), Polynomial(), Polynomial()}};
  FlagPiece p2{{u1, u2}, {s, sd, sd * Polynomial(we)}, {Polynomial(1) - s, Polynomial(), Polynomial()}};
  if (u1.sign() > 0) c.pieces.push_back(p1);
  c.pieces.push_back(p2);
  c.restricted_total = std::vector<Polynomial>{Polynomial(1), sd, sd * Polynomial(we)};
  c.points["E.f"] = {"E.f", {{1, Rational(1)}}};
  c.points["general"] = {"general", {}};
  return c;
}

}  // namespace kstab
