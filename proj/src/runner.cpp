#include "kstab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include "kstab/error.hpp"
#include "kstab/flags.hpp"
#include "kstab/formulas.hpp"
#include "kstab/functionals.hpp"
#include "kstab/git.hpp"
#include "kstab/invariants.hpp"

namespace fs = std::filesystem;

namespace kstab {

std::size_t StabilityReport::count(const std::string& status) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [&](const ReportRow& r) { return r.status == status; }));
}

fs::path default_data_dir() {
  if (const char* env = std::getenv("KSTAB_DATA_DIR")) return env;
#ifdef KSTAB_DEFAULT_DATA_DIR
  return KSTAB_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

std::shared_ptr<const ToricModel> load_model(const fs::path& path) {
  return std::make_shared<const ToricModel>(ToricModel::from_json(load_json_file(path), path.string()));
}

namespace {

DivisorClass divisor_from_json(const ToricModel& m, const Json& j, const std::string& where) {
  if (!j.is_object()) throw Error("SchemaError", where + ": divisor must map names to coefficients");
  DivisorClass d;
  for (const auto& [name, c] : j.items()) d = combine(d, m.divisor(name), rational_from_json(c, where + "." + name));
  return d;
}

ParametricDivisor parametric_from_json(const ToricModel& m, const Json& j, const std::string& where) {
  ParametricDivisor d;
  if (j.is_null()) return d;
  if (!j.is_object()) throw Error("SchemaError", where + ": divisor must map names to affine forms");
  for (const auto& [name, form] : j.items()) {
    Polynomial p = affine_from_json(form, where + "." + name);
    for (const auto& [i, c] : m.divisor(name)) d[i] += p * Polynomial(c);
  }
  for (auto it = d.begin(); it != d.end();) it = it->second.is_zero() ? d.erase(it) : std::next(it);
  return d;
}


// Turns numbers and rational strings into canonical rational strings so that
// "2/4", "1/2" and equal integers compare equal.
Json canonical(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>()).str();
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>()).str();
    } catch (const Error&) {
      return j;
    }
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& x : j) out.push_back(canonical(x));
    return out;
  }
  if (j.is_object()) {
    Json out = Json::object();
    for (const auto& [k, v] : j.items()) out[k] = canonical(v);
    return out;
  }
  return j;
}

struct Eval {
  Json value;
  std::vector<std::string> notes;
  bool is_polynomial = false;
};

struct Context {
  const RunOptions& opts;
  fs::path path(const Json& inputs, const std::string& key, const std::string& where) const {
    return opts.data_dir / require(inputs, key, where).get<std::string>();
  }
};

Eval evaluate(const std::string& kind, const Json& inputs, const Context& ctx, const std::string& where);

PiecewisePolynomial inline_pieces(const Json& pieces, const std::string& where) {
  PiecewisePolynomial f;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    std::string loc = where + "[" + std::to_string(k) + "]";
    f.pieces.push_back({interval_from_json(require(pieces[k], "interval", loc), loc),
                        polynomial_from_json(require(pieces[k], "polynomial", loc), loc)});
  }
  return f;
}

struct VolumeData {
  PiecewisePolynomial vol;
  Rational a_top;
  std::optional<Rational> a_log;
  std::vector<std::string> notes;
  std::optional<ChamberFixture> fixture;
};

VolumeData volume_data(const Json& inputs, const Context& ctx, const std::string& where) {
  VolumeData d;
  if (inputs.contains("chambers")) {
    d.fixture = load_chamber_fixture(ctx.path(inputs, "chambers", where), ctx.opts.data_dir);
    VolumeResult vr = threefold_chamber_volume(d.fixture->models, d.fixture->total, d.fixture->chambers);
    d.vol = vr.volume;
    d.notes = vr.notes;
    d.a_top = d.fixture->a_top;
    d.a_log = d.fixture->a_log;
  } else {
    d.vol = inline_pieces(require(inputs, "pieces", where), where + ".pieces");
    for (const auto& b : continuity_breaks(d.vol)) {
      d.notes.push_back("warning: pieces disagree at u=" + b.at.str() + " (" + b.left.str() + " vs " + b.right.str() + ")");
    }
    d.a_top = rational_from_json(require(inputs, "A_top", where), where + ".A_top");
  }
  if (inputs.contains("A_log")) d.a_log = rational_from_json(inputs.at("A_log"), where + ".A_log");
  return d;
}

Rational need_a_log(const VolumeData& d, const std::string& where) {
  if (!d.a_log) throw Error("SchemaError", where + ": log discrepancy A_log is required");
  return *d.a_log;
}

Eval eval_volume(const Json& inputs, const Context& ctx, const std::string& where, bool beta) {
  VolumeData d = volume_data(inputs, ctx, where);
  Eval e;
  e.notes = d.notes;
  std::string q = beta ? "beta" : inputs.value("quantity", std::string("S"));
  if (q == "S") {
    e.value = s_from_volume(d.vol, d.a_top).str();
  } else if (q == "integral") {
    e.value = piecewise_integral(d.vol).str();
  } else if (q == "ratio") {
    e.value = (need_a_log(d, where) / s_from_volume(d.vol, d.a_top)).str();
  } else if (q == "beta") {
    e.value = beta_divisor(need_a_log(d, where), d.vol, d.a_top).str();
  } else if (q == "piece") {
    Interval iv = interval_from_json(require(inputs, "interval", where), where + ".interval");
    auto it = std::find_if(d.vol.pieces.begin(), d.vol.pieces.end(), [&](const Piece& p) { return p.interval == iv; });
    if (it == d.vol.pieces.end()) throw Error("SchemaError", where + ": no chamber on the requested interval");
    e.value = to_json(it->poly);
    e.is_polynomial = true;
    e.notes.push_back("recomputed piece: " + it->poly.str());
  } else if (q == "pieces") {
    Json arr = Json::array();
    for (const auto& p : d.vol.pieces) arr.push_back(p.poly.str());
    e.value = arr;
  } else if (q == "threshold") {
    if (!d.fixture) throw Error("SchemaError", where + ": threshold needs a chamber fixture");
    e.value = pseudoeffective_threshold(*d.fixture->models.at(d.fixture->first_model), d.fixture->total).str();
  } else if (q == "monotone") {
    // Non-increasing and nonnegative at every chamber endpoint and midpoint.
    bool ok = true;
    std::optional<Rational> last;
    for (const auto& p : d.vol.pieces) {
      Rational mid = (p.interval.lo + p.interval.hi) / Rational(2);
      for (const Rational& x : {p.interval.lo, mid, p.interval.hi}) {
        Rational y = p.poly.eval(x);
        if (y < 0 || (last && y > *last)) ok = false;
        last = y;
      }
    }
    e.value = ok;
  } else {
    throw Error("SchemaError", where + ": unknown quantity '" + q + "'");
  }
  return e;
}

FlagCase flag_from_inputs(const Json& inputs, const Context& ctx, const std::string& where) {
  if (inputs.contains("base_case")) {
    const Json& b = inputs.at("base_case");
    return base_case_flag(rational_from_json(require(b, "a", where), where + ".a"),
                          rational_from_json(require(b, "d", where), where + ".d"),
                          rational_from_json(require(b, "mu", where), where + ".mu"), b.value("tangential", false));
  }
  fs::path p = ctx.path(inputs, "flag", where);
  return flag_case_from_json(load_json_file(p), ctx.opts.data_dir, p.string());
}

Eval eval_flag(const Json& inputs, const Context& ctx, const std::string& where, bool point) {
  FlagCase fc = flag_from_inputs(inputs, ctx, where);
  FlagEvaluation ev = evaluate_flag(fc);
  Eval e;
  e.notes = ev.warnings;
  e.notes.push_back(std::to_string(ev.chambers.size()) + " surface chambers");
  std::string q = inputs.value("quantity", std::string("S"));
  Rational s;
  if (point) {
    std::string name = require(inputs, "point", where).get<std::string>();
    if (q == "F_Q") {
      e.value = f_q_term(fc, ev, name).str();
      return e;
    }
    s = s_flag_point(fc, ev, name);
  } else {
    if (q == "chamber_count") {
      e.value = static_cast<long>(ev.chambers.size());
      return e;
    }
    s = s_flag_surface(fc, ev);
  }
  if (q == "S") {
    e.value = s.str();
  } else if (q == "ratio") {
    e.value = (rational_from_json(require(inputs, "A_log", where), where + ".A_log") / s).str();
  } else {
    throw Error("SchemaError", where + ": unknown quantity '" + q + "'");
  }
  return e;
}

Eval eval_zariski(const Json& inputs, const Context& ctx, const std::string& where) {
  FlagCase fc = flag_from_inputs(inputs, ctx, where);
  std::string op = require(inputs, "op", where).get<std::string>();
  Eval e;
  if (op == "point") {
    Rational u = rational_from_json(require(inputs, "u", where), where + ".u");
    Rational v = rational_from_json(require(inputs, "v", where), where + ".v");
    const FlagPiece* piece = nullptr;
    for (const auto& p : fc.pieces) {
      if (p.interval.lo <= u && u <= p.interval.hi) {
        piece = &p;
        break;
      }
    }
    if (!piece) throw Error("SchemaError", where + ": u outside every piece");
    Vector d;
    for (std::size_t i = 0; i < fc.lattice.curves.size(); ++i) d.push_back(piece->positive[i].eval(u) - v * fc.flag_class[i]);
    ZariskiResult z = surface_zariski(fc.lattice, d);
    Json neg = Json::object();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (!z.negative[i].is_zero()) neg[fc.lattice.curves[i]] = z.negative[i].str();
    }
    e.value = neg;
    e.notes = z.warnings;
  } else {
    throw Error("SchemaError", where + ": unknown zariski op '" + op + "'");
  }
  return e;
}

Eval eval_formula(const Json& inputs, const std::string& where) {
  Json out = evaluate_formula(require(inputs, "name", where).get<std::string>(), inputs.value("params", Json::object()));
  Eval e;
  e.value = out.at("value");
  for (const auto& [k, v] : out.items()) {
    if (k != "value") e.notes.push_back(k + "=" + v.dump());
  }
  return e;
}

Eval eval_git(const Json& inputs, const std::string& where) {
  std::string op = require(inputs, "op", where).get<std::string>();
  Eval e;
  if (op == "weight") {
    auto lam = require(inputs, "lambda", where).get<std::vector<long>>();
    if (lam.size() != 2) throw Error("SchemaError", where + ": lambda needs two entries");
    e.value = Rational(hm_weight(parse_support(require(inputs, "support", where).get<std::string>()), {lam[0], lam[1]})).str();
  } else if (op == "destabilize") {
    auto d = find_destabilizer(parse_support(require(inputs, "support", where).get<std::string>()),
                               inputs.value("bound", 5L));
    if (!d) {
      e.value = nullptr;
    } else {
      e.value = {{"lambda", {d->lambda.r0, d->lambda.r1}},
                 {"weight", Rational(d->weight).str()},
                 {"strictly_semistable_direction", d->strictly_semistable_direction}};
    }
  } else if (op == "singular") {
    std::map<std::pair<int, int>, Rational> coeffs;
    CoefficientVector c = coefficients_from_json(require(inputs, "coeffs", where));
    for (int i = 0; i < 9; ++i) coeffs[{i / 3, i % 3}] = c[i];
    e.value = fixed_point_singularity(coeffs);
  } else {
    throw Error("SchemaError", where + ": unknown git op '" + op + "'");
  }
  return e;
}

Eval eval_toric(const Json& inputs, const Context& ctx, const std::string& where) {
  auto model = load_model(ctx.path(inputs, "model", where));
  const ToricModel& m = *model;
  std::string op = require(inputs, "op", where).get<std::string>();
  Eval e;
  if (op == "table") {
    // Every listed product and curve pairing must match.
    std::size_t checked = 0;
    bool ok = true;
    const Json products = inputs.value("products", Json::object());
    const Json curves = inputs.value("curves", Json::object());
    for (const auto& [key, val] : products.items()) {
      std::vector<int> idx;
      for (char ch : key) {
        if (ch >= '0' && ch <= '9') idx.push_back(ch - '0');
      }
      Rational want = rational_from_json(val, where + ".products." + key);
      Rational got = m.product(idx);
      ++checked;
      if (got != want) {
        ok = false;
        e.notes.push_back("product " + key + ": computed " + got.str() + ", table " + want.str());
      }
    }
    for (const auto& [cname, row] : curves.items()) {
      const CurveClass& c = m.curve(cname);
      for (const auto& [div, val] : row.items()) {
        Rational want = rational_from_json(val, where + ".curves." + cname);
        Rational got = pair_curve_divisor(c, m.divisor(div));
        ++checked;
        if (got != want) {
          ok = false;
          e.notes.push_back(cname + "." + div + ": computed " + got.str() + ", table " + want.str());
        }
      }
    }
    e.notes.push_back(std::to_string(checked) + " entries compared");
    e.value = ok;
  } else if (op == "product") {
    std::vector<DivisorClass> ds;
    for (const auto& d : require(inputs, "divisors", where)) ds.push_back(divisor_from_json(m, d, where + ".divisors"));
    e.value = m.intersect(ds).str();
  } else if (op == "distinct") {
    e.value = m.distinct_product(require(inputs, "indices", where).get<std::vector<int>>()).str();
  } else if (op == "pair") {
    e.value = pair_curve_divisor(m.curve(require(inputs, "curve", where).get<std::string>()),
                                 divisor_from_json(m, require(inputs, "divisor", where), where + ".divisor"))
                  .str();
  } else if (op == "nef") {
    NefResult r = nef_check(m, divisor_from_json(m, require(inputs, "divisor", where), where + ".divisor"));
    for (const auto& [n, p] : r.pairings) e.notes.push_back(n + "=" + p.str());
    e.value = r.nef;
  } else if (op == "effective") {
    e.value = effective_check(m, divisor_from_json(m, require(inputs, "divisor", where), where + ".divisor"));
  } else if (op == "threshold") {
    e.value = pseudoeffective_threshold(m, parametric_from_json(m, require(inputs, "family", where), where)).str();
  } else if (op == "complete") {
    e.value = m.is_complete();
  } else {
    throw Error("SchemaError", where + ": unknown toric op '" + op + "'");
  }
  return e;
}

std::uint64_t case_seed(const Json& inputs, const Context& ctx) {
  if (ctx.opts.seed) return *ctx.opts.seed;
  return inputs.value("seed", static_cast<std::uint64_t>(0));
}

Eval eval_invariant(const Json& inputs, const Context& ctx, const std::string& where) {
  std::string op = require(inputs, "op", where).get<std::string>();
  Eval e;
  if (op == "dims") {
    Json arr = Json::array();
    for (int k = 0; k <= inputs.value("upto", 8); ++k) arr.push_back(invariant_dimension(k));
    e.value = arr;
  } else if (op == "hilbert") {
    e.value = hilbert_prefix(inputs.value("upto", 8));
  } else if (op == "peano") {
    PeanoInvariants p = peano_invariants(coefficients_from_json(require(inputs, "coeffs", where)));
    e.value = {{"J2", p.j2.str()}, {"J3", p.j3.str()}, {"J4", p.j4.str()}};
  } else if (op == "invariance") {
    std::uint64_t seed = case_seed(inputs, ctx);
    InvarianceTrials t = check_invariance_trials(inputs.value("trials", 20), seed);
    e.notes.push_back("seed=" + std::to_string(seed));
    e.notes.push_back(std::to_string(t.passed) + "/" + std::to_string(t.trials) + " trials invariant");
    e.value = t.passed == t.trials;
  } else if (op == "rank") {
    CoefficientVector c;
    if (inputs.contains("coeffs")) {
      c = coefficients_from_json(inputs.at("coeffs"));
    } else {
      std::uint64_t seed = case_seed(inputs, ctx);
      e.notes.push_back("seed=" + std::to_string(seed));
      RationalSampler rng(seed);
      c = rng.coefficients();
    }
    e.value = static_cast<long>(independence_rank(c));
  } else {
    throw Error("SchemaError", where + ": unknown invariant op '" + op + "'");
  }
  return e;
}

Eval eval_barycenter(const Json& inputs, const Context& ctx, const std::string& where) {
  Json src = inputs.contains("polytope") ? load_json_file(ctx.path(inputs, "polytope", where)) : inputs;
  Polytope p;
  for (const auto& v : require(src, "vertices", where)) {
    if (!v.is_array() || v.size() != 3) throw Error("SchemaError", where + ": vertices must be 3-vectors");
    p.vertices.push_back({rational_from_json(v[0], where), rational_from_json(v[1], where), rational_from_json(v[2], where)});
  }
  Eval e;
  std::string q = inputs.value("quantity", std::string("barycenter"));
  if (q == "barycenter") {
    Point3 b = polytope_barycenter(p);
    e.value = Json::array({b[0].str(), b[1].str(), b[2].str()});
  } else if (q == "volume") {
    e.value = polytope_volume(p).str();
  } else {
    throw Error("SchemaError", where + ": unknown quantity '" + q + "'");
  }
  return e;
}

Eval eval_delta(const Json& inputs, const Context& ctx, const std::string& where) {
  std::vector<DeltaEntry> entries;
  const Json& list = require(inputs, "entries", where);
  for (std::size_t k = 0; k < list.size(); ++k) {
    std::string loc = where + ".entries[" + std::to_string(k) + "]";
    DeltaEntry de;
    de.label = list[k].value("label", "entry " + std::to_string(k));
    de.a_log = rational_from_json(require(list[k], "A_log", loc), loc + ".A_log");
    const Json& s = require(list[k], "S", loc);
    if (s.is_object()) {
      Eval sub = evaluate(require(s, "kind", loc).get<std::string>(), require(s, "inputs", loc), ctx, loc + ".S");
      de.s = rational_from_json(sub.value, loc + ".S");
    } else {
      de.s = rational_from_json(s, loc + ".S");
    }
    entries.push_back(de);
  }
  DeltaReport r = delta_bound_report(entries);
  Eval e;
  for (const auto& de : entries) e.notes.push_back(de.label + ": A/S=" + (de.a_log / de.s).str());
  e.notes.push_back("minimum at " + r.argmin + (r.exceeds_one ? ", above 1" : ", not above 1"));
  e.value = r.bound.str();
  return e;
}

Eval evaluate(const std::string& kind, const Json& inputs, const Context& ctx, const std::string& where) {
  if (kind == "volume") return eval_volume(inputs, ctx, where, false);
  if (kind == "beta") return eval_volume(inputs, ctx, where, true);
  if (kind == "flag_surface") return eval_flag(inputs, ctx, where, false);
  if (kind == "flag_point") return eval_flag(inputs, ctx, where, true);
  if (kind == "zariski") return eval_zariski(inputs, ctx, where);
  if (kind == "formula") return eval_formula(inputs, where);
  if (kind == "git") return eval_git(inputs, where);
  if (kind == "toric") return eval_toric(inputs, ctx, where);
  if (kind == "invariant") return eval_invariant(inputs, ctx, where);
  if (kind == "barycenter") return eval_barycenter(inputs, ctx, where);
  if (kind == "delta") return eval_delta(inputs, ctx, where);
  throw Error("SchemaError", where + ": unknown kind '" + kind + "'");
}

}  // namespace

ChamberFixture load_chamber_fixture(const fs::path& path, const fs::path& data_dir) {
  Json j = load_json_file(path);
  std::string where = path.string();
  ChamberFixture f;
  f.label = j.value("label", where);
  for (const auto& [name, rel] : require(j, "models", where).items()) {
    f.models[name] = load_model(data_dir / rel.get<std::string>());
  }
  const Json& chambers = require(j, "chambers", where);
  if (chambers.empty()) throw Error("SchemaError", where + ": no chambers");
  f.first_model = require(chambers[0], "model", where).get<std::string>();
  auto model_for = [&](const std::string& name) -> const ToricModel& {
    auto it = f.models.find(name);
    if (it == f.models.end()) throw Error("FixtureMissing", where + ": unknown model '" + name + "'");
    return *it->second;
  };
  f.total = parametric_from_json(model_for(f.first_model), require(j, "total", where), where + ".total");
  f.a_top = rational_from_json(require(j, "A_top", where), where + ".A_top");
  if (j.contains("A_log")) f.a_log = rational_from_json(j.at("A_log"), where + ".A_log");
  for (std::size_t k = 0; k < chambers.size(); ++k) {
    std::string loc = where + ".chambers[" + std::to_string(k) + "]";
    ThreefoldChamber c;
    c.interval = interval_from_json(require(chambers[k], "interval", loc), loc + ".interval");
    c.model = require(chambers[k], "model", loc).get<std::string>();
    const ToricModel& m = model_for(c.model);
    c.positive = parametric_from_json(m, require(chambers[k], "positive", loc), loc + ".positive");
    c.negative = parametric_from_json(m, chambers[k].value("negative", Json()), loc + ".negative");
    f.chambers.push_back(std::move(c));
  }
  return f;
}

ReportRow run_case_json(const Json& doc, const std::string& label, const RunOptions& opts) {
  ReportRow row;
  row.label = label;
  if (!doc.is_object()) throw Error("SchemaError", label + ": case must be a JSON object");
  int version = doc.value("schema_version", 0);
  if (version != 1) throw Error("SchemaError", label + ": unsupported schema_version " + std::to_string(version));
  row.kind = require(doc, "kind", label).get<std::string>();
  const Json& inputs = require(doc, "inputs", label);
  Json expected = doc.value("expected", Json());
  bool has_expected = expected.is_object() && (expected.contains("value") || expected.contains("polynomial"));
  if (has_expected) {
    row.citation = expected.value("citation", std::string());
    if (row.citation.empty()) throw Error("SchemaError", label + ": expected value without a citation");
  }
  Context ctx{opts};
  Eval e;
  try {
    e = evaluate(row.kind, inputs, ctx, label + ".inputs");
  } catch (const std::exception& err) {
    row.status = "error";
    row.computed = nullptr;
    row.notes.push_back(err.what());
    if (has_expected) row.expected = expected.contains("value") ? expected.at("value") : expected.at("polynomial");
    return row;
  }
  row.computed = e.value;
  row.notes = e.notes;
  if (!has_expected) {
    row.status = "computed-only";
    return row;
  }
  bool match;
  if (expected.contains("polynomial")) {
    row.expected = expected.at("polynomial");
    Polynomial want = polynomial_from_json(row.expected, label + ".expected.polynomial");
    match = e.is_polynomial && polynomial_from_json(e.value, label + ".computed") == want;
    if (!match) row.notes.push_back("printed piece: " + want.str());
  } else {
    row.expected = expected.at("value");
    match = canonical(e.value) == canonical(row.expected);
  }
  if (match) {
    row.status = "pass";
  } else if (expected.value("known_misprint", false)) {
    row.status = "discrepancy-noted";
    row.notes.push_back("the printed value disagrees with the recomputation; the recomputed value is reported");
  } else {
    row.status = "fail";
  }
  return row;
}

ReportRow run_case(const fs::path& path, const RunOptions& opts) {
  Json doc = load_json_file(path);
  std::string label = path.stem().string();
  fs::path cases = opts.data_dir / "cases";
  std::error_code ec;
  fs::path rel = fs::relative(path, cases, ec);
  if (!ec && !rel.empty() && rel.native()[0] != '.') label = rel.replace_extension().generic_string();
  return run_case_json(doc, label, opts);
}

StabilityReport run_suite(const RunOptions& opts, int jobs) {
  fs::path cases = opts.data_dir / "cases";
  std::vector<fs::path> files;
  if (fs::exists(cases)) {
    for (const auto& entry : fs::recursive_directory_iterator(cases)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  StabilityReport report;
  report.seed = opts.seed;
  report.rows.resize(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < files.size(); k = next++) {
      try {
        report.rows[k] = run_case(files[k], opts);
      } catch (const std::exception& err) {
        ReportRow row;
        fs::path rel = fs::relative(files[k], cases);
        row.label = rel.replace_extension().generic_string();
        row.status = "error";
        row.computed = nullptr;
        row.notes.push_back(err.what());
        report.rows[k] = row;
      }
    }
  };
  int n = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::sort(report.rows.begin(), report.rows.end(), [](const ReportRow& a, const ReportRow& b) { return a.label < b.label; });
  return report;
}

Json report_to_json(const StabilityReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"label", r.label},
                    {"kind", r.kind},
                    {"computed", r.computed},
                    {"expected", r.expected},
                    {"citation", r.citation},
                    {"status", r.status},
                    {"notes", r.notes}});
  }
  Json summary = {{"cases", report.rows.size()},
                  {"pass", report.count("pass")},
                  {"fail", report.count("fail")},
                  {"error", report.count("error")},
                  {"discrepancy_noted", report.count("discrepancy-noted")},
                  {"computed_only", report.count("computed-only")}};
  if (report.seed) {
    summary["seed"] = *report.seed;
  } else {
    summary["seed"] = nullptr;
  }
  return {{"rows", rows}, {"summary", summary}};
}

std::string emit_report(const StabilityReport& report, const std::string& format) {
  if (format == "json") return report_to_json(report).dump(2) + "\n";
  if (format != "text") throw Error("UsageError", "unknown format '" + format + "'");
  std::ostringstream out;
  out << "kstab report";
  if (report.seed) out << " (seed " << *report.seed << ")";
  out << "\n";
  auto show = [](const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); };
  for (const auto& r : report.rows) {
    std::string tag = r.status;
    std::transform(tag.begin(), tag.end(), tag.begin(), ::toupper);
    out << tag << "  " << r.label << "  computed=" << show(r.computed);
    if (!r.expected.is_null()) out << "  expected=" << show(r.expected);
    out << "\n";
    if (r.status != "pass") {
      for (const auto& n : r.notes) out << "    " << n << "\n";
    }
  }
  out << report.rows.size() << " cases: " << report.count("pass") << " pass, " << report.count("fail") << " fail, "
      << report.count("error") << " error, " << report.count("discrepancy-noted") << " discrepancy-noted, "
      << report.count("computed-only") << " computed-only\n";
  return out.str();
}

}  // namespace kstab
