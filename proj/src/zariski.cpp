#include "kstab/zariski.hpp"

#include <algorithm>
#include <set>

#include "kstab/error.hpp"

namespace kstab {

int SurfaceLattice::index(const std::string& name) const {
  auto it = std::find(curves.begin(), curves.end(), name);
  if (it == curves.end()) throw Error("UnknownCurve", "no curve named '" + name + "' in the lattice");
  return static_cast<int>(it - curves.begin());
}

Rational SurfaceLattice::pair(const Vector& a, const Vector& b) const { return dot(a, multiply(gram, b)); }

Polynomial SurfaceLattice::pair(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) const {
  Polynomial s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!gram[i][j].is_zero()) s += a[i] * b[j] * Polynomial(gram[i][j]);
    }
  }
  return s;
}

Polynomial SurfaceLattice::pair(const std::vector<Polynomial>& a, const Vector& b) const {
  Polynomial s;
  Vector gb = multiply(gram, b);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Polynomial(gb[i]);
  return s;
}

void SurfaceLattice::validate() const {
  if (gram.size() != curves.size()) throw Error("SchemaError", "gram matrix size differs from the curve count");
  for (std::size_t i = 0; i < gram.size(); ++i) {
    if (gram[i].size() != curves.size()) throw Error("SchemaError", "gram matrix is not square");
    for (std::size_t j = 0; j < i; ++j) {
      if (gram[i][j] != gram[j][i]) throw Error("SchemaError", "gram matrix is not symmetric");
    }
  }
}

SurfaceLattice SurfaceLattice::from_json(const Json& j, const std::string& where) {
  SurfaceLattice l;
  l.curves = require(j, "curves", where).get<std::vector<std::string>>();
  for (const auto& row : require(j, "gram", where)) {
    Vector r;
    for (const auto& x : row) r.push_back(rational_from_json(x, where + ".gram"));
    l.gram.push_back(std::move(r));
  }
  l.validate();
  return l;
}

namespace {

bool negative_definite(const Matrix& g) {
  // -g positive definite iff all leading principal minors of -g are positive.
  for (std::size_t k = 1; k <= g.size(); ++k) {
    Matrix sub(k, Vector(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = -g[i][j];
    }
    if (determinant(sub).sign() <= 0) return false;
  }
  return true;
}

Matrix sub_gram(const SurfaceLattice& l, const std::vector<int>& s) {
  Matrix g(s.size(), Vector(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) g[i][j] = l.gram[s[i]][s[j]];
  }
  return g;
}

std::string support_name(const SurfaceLattice& l, const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + l.curves[s[i]];
  return out + "}";
}

}  // namespace

ZariskiResult surface_zariski(const SurfaceLattice& lattice, const Vector& d) {
  std::size_t n = lattice.curves.size();
  if (d.size() != n) throw Error("DimensionMismatch", "divisor has the wrong number of coefficients");
  ZariskiResult r;
  Vector dc = multiply(lattice.gram, d);  // D . C_j
  std::set<int> support;
  Vector neg(n);
  for (std::size_t round = 0; round <= n; ++round) {
    Vector pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[i] = d[i] - neg[i];
    Vector pc = multiply(lattice.gram, pos);
    bool grew = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (pc[j] < 0 && !support.count(static_cast<int>(j))) {
        support.insert(static_cast<int>(j));
        grew = true;
      }
    }
    if (!grew) {
      r.positive = pos;
      r.negative = neg;
      for (std::size_t j = 0; j < n; ++j) {
        if (neg[j] > 0) r.support.push_back(static_cast<int>(j));
        if (neg[j] < 0) r.warnings.push_back("negative coefficient on " + lattice.curves[j]);
      }
      return r;
    }
    std::vector<int> s(support.begin(), support.end());
    Matrix g = sub_gram(lattice, s);
    if (!negative_definite(g)) {
      r.warnings.push_back("NonNegativeDefiniteSupport: " + support_name(lattice, s));
    }
    if (determinant(g).is_zero()) {
      throw Error("NoConvergence", "singular support " + support_name(lattice, s));
    }
    Vector rhs;
    for (int j : s) rhs.push_back(dc[j]);
    Vector x = multiply(inverse(g), rhs);
    neg.assign(n, Rational(0));
    for (std::size_t k = 0; k < s.size(); ++k) neg[s[k]] = x[k];
  }
  throw Error("NoConvergence", "support kept growing past the number of curves");
}

SupportSolution solve_support(const SurfaceLattice& lattice, const std::vector<Polynomial>& family,
                              const std::vector<int>& support) {
  std::size_t n = lattice.curves.size();
  SupportSolution sol;
  sol.support = support;
  sol.negative.assign(n, Polynomial());
  std::vector<Polynomial> dc(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) dc[j] += family[i] * Polynomial(lattice.gram[i][j]);
  }
  if (!support.empty()) {
    Matrix ginv = inverse(sub_gram(lattice, support));
    for (std::size_t a = 0; a < support.size(); ++a) {
      Polynomial x;
      for (std::size_t b = 0; b < support.size(); ++b) x += Polynomial(ginv[a][b]) * dc[support[b]];
      sol.negative[support[a]] = x;
    }
  }
  sol.positive.resize(n);
  for (std::size_t i = 0; i < n; ++i) sol.positive[i] = family[i] - sol.negative[i];
  std::set<int> in(support.begin(), support.end());
  for (std::size_t j = 0; j < n; ++j) {
    if (in.count(static_cast<int>(j))) {
      sol.conditions.push_back(sol.negative[j]);
    } else {
      Polynomial pc;
      for (std::size_t i = 0; i < n; ++i) pc += sol.positive[i] * Polynomial(lattice.gram[i][j]);
      sol.conditions.push_back(pc);
    }
  }
  return sol;
}

namespace {

Polygon clip_slab(const Polygon& p, const Rational& x0, const Rational& x1) {
  Polygon q = clip(p, Polynomial::affine(-x0, 1));
  return clip(q, Polynomial::affine(x1, -1));
}

struct Found {
  SupportSolution sol;
  Polygon region;
};

class ChamberSearch {
 public:
  ChamberSearch(const SurfaceLattice& l, const std::vector<Polynomial>& f, const Polygon& d)
      : lattice_(l), family_(f), domain_(d) {}

  // Walks the vertical line u = x, discovering the support at the midpoint of
  // every stretch not yet covered by a known chamber.
  void sweep(const Rational& x) {
    Interval full;
    if (!section(domain_, x, &full)) return;
    std::vector<Interval> gaps{full};
    while (!gaps.empty()) {
      Interval g = gaps.back();
      gaps.pop_back();
      Rational mid = (g.lo + g.hi) / Rational(2);
      const Found& f = discover(x, mid);
      Interval valid = validity(f.sol, x, full);
      if (valid.lo > g.lo) gaps.push_back({g.lo, valid.lo});
      if (valid.hi < g.hi) gaps.push_back({valid.hi, g.hi});
    }
  }

  std::map<std::vector<int>, Found>& found() { return found_; }
  std::vector<std::string>& warnings() { return warnings_; }

 private:
  const Found& discover(const Rational& x, const Rational& y) {
    Vector d;
    for (const auto& c : family_) d.push_back(c.eval(x, y));
    ZariskiResult z = surface_zariski(lattice_, d);
    for (const auto& w : z.warnings) warnings_.push_back(w);
    auto it = found_.find(z.support);
    if (it != found_.end()) return it->second;
    Found f{solve_support(lattice_, family_, z.support), domain_};
    for (const auto& c : f.sol.conditions) f.region = clip(f.region, c);
    return found_.emplace(z.support, std::move(f)).first->second;
  }

  Interval validity(const SupportSolution& sol, const Rational& x, const Interval& full) const {
    Interval out = full;
    for (const auto& c : sol.conditions) {
      Polynomial line = c.at_u(x);  // a + b v
      Rational a = line.coeff(0, 0);
      Rational b = line.coeff(0, 1);
      if (b.is_zero()) continue;
      Rational root = -a / b;
      if (b > 0) {
        out.lo = max(out.lo, root);
      } else {
        out.hi = min(out.hi, root);
      }
    }
    if (out.hi < out.lo) throw Error("NoConvergence", "sampled support is not valid at its own sample point");
    return out;
  }

  const SurfaceLattice& lattice_;
  const std::vector<Polynomial>& family_;
  const Polygon& domain_;
  std::map<std::vector<int>, Found> found_;
  std::vector<std::string> warnings_;
};

}  // namespace

ChamberDecomposition parametric_surface_zariski(const SurfaceLattice& lattice, const std::vector<Polynomial>& family,
                                                const Polygon& domain) {
  if (family.size() != lattice.curves.size()) throw Error("DimensionMismatch", "family has the wrong length");
  for (const auto& c : family) {
    if (c.degree() > 1) throw Error("NonAffineForm", "family coefficients must be affine in (u, v)");
  }
  ChamberDecomposition dec;
  if (domain.size() < 3 || area(domain).is_zero()) return dec;
  ChamberSearch search(lattice, family, domain);

  std::set<Rational> domain_cuts;
  for (const auto& p : domain) domain_cuts.insert(p.u);
  std::vector<Rational> dc(domain_cuts.begin(), domain_cuts.end());
  for (std::size_t k = 0; k + 1 < dc.size(); ++k) search.sweep((dc[k] + dc[k + 1]) / Rational(2));

  const int max_rounds = 24;
  for (int round = 0;; ++round) {
    std::set<Rational> cuts = domain_cuts;
    for (const auto& [s, f] : search.found()) {
      for (const auto& p : f.region) cuts.insert(p.u);
    }
    std::vector<Rational> xs(cuts.begin(), cuts.end());
    std::vector<std::pair<Rational, Rational>> deficient;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      Rational whole = area(clip_slab(domain, xs[k], xs[k + 1]));
      Rational covered;
      for (const auto& [s, f] : search.found()) covered += area(clip_slab(f.region, xs[k], xs[k + 1]));
      if (covered > whole) {
        throw Error("WallDegeneracy", "chambers overlap on u in [" + xs[k].str() + "," + xs[k + 1].str() + "]");
      }
      if (covered < whole) deficient.emplace_back(xs[k], xs[k + 1]);
    }
    if (deficient.empty()) break;
    if (round == max_rounds) throw Error("NoConvergence", "chamber search did not cover the domain");
    // Later rounds probe finer fractions of the slabs that remain uncovered.
    long denom = 2L << (round / 2);
    for (const auto& [x0, x1] : deficient) {
      for (long k = 1; k < denom; k += 2) search.sweep(x0 + (x1 - x0) * Rational(k, denom));
    }
  }

  for (auto& [s, f] : search.found()) {
    if (f.region.size() < 3 || area(f.region).is_zero()) continue;
    dec.chambers.push_back({s, f.region, f.sol.positive, f.sol.negative});
  }
  std::sort(dec.chambers.begin(), dec.chambers.end(), [](const SurfaceChamber& a, const SurfaceChamber& b) {
    Point2 ca = vertex_centroid(a.region);
    Point2 cb = vertex_centroid(b.region);
    if (ca.u != cb.u) return ca.u < cb.u;
    return ca.v < cb.v;
  });
  std::set<std::string> seen;
  for (auto& w : search.warnings()) {
    if (seen.insert(w).second) dec.warnings.push_back(w);
  }
  return dec;
}

std::vector<std::string> verify_chambers(const SurfaceLattice& lattice, const std::vector<Polynomial>& family,
                                         const ChamberDecomposition& dec) {
  std::vector<std::string> problems;
  std::size_t n = lattice.curves.size();
  for (std::size_t c = 0; c < dec.chambers.size(); ++c) {
    const auto& ch = dec.chambers[c];
    std::set<int> support(ch.support.begin(), ch.support.end());
    for (const auto& p : ch.region) {
      for (std::size_t i = 0; i < n; ++i) {
        if (ch.positive[i].eval(p.u, p.v) + ch.negative[i].eval(p.u, p.v) != family[i].eval(p.u, p.v)) {
          problems.push_back("chamber " + std::to_string(c) + ": P+N differs from D");
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        Rational pc;
        for (std::size_t i = 0; i < n; ++i) pc += ch.positive[i].eval(p.u, p.v) * lattice.gram[i][j];
        Rational nj = ch.negative[j].eval(p.u, p.v);
        if (pc < 0) problems.push_back("chamber " + std::to_string(c) + ": P.C < 0 for " + lattice.curves[j]);
        if (nj < 0) problems.push_back("chamber " + std::to_string(c) + ": negative coefficient on " + lattice.curves[j]);
        if (support.count(static_cast<int>(j)) && !pc.is_zero()) {
          problems.push_back("chamber " + std::to_string(c) + ": P not orthogonal to " + lattice.curves[j]);
        }
        if (!support.count(static_cast<int>(j)) && !nj.is_zero()) {
          problems.push_back("chamber " + std::to_string(c) + ": negative part outside the support");
        }
      }
    }
  }
  return problems;
}

VolumeResult threefold_chamber_volume(const std::map<std::string, std::shared_ptr<const ToricModel>>& models,
                                      const ParametricDivisor& total, const std::vector<ThreefoldChamber>& chambers) {
  VolumeResult out;
  for (std::size_t k = 0; k < chambers.size(); ++k) {
    const auto& ch = chambers[k];
    std::string tag = "chamber [" + ch.interval.lo.str() + "," + ch.interval.hi.str() + "] on " + ch.model;
    auto it = models.find(ch.model);
    if (it == models.end()) throw Error("FixtureMissing", tag + ": unknown model");
    const ToricModel& m = *it->second;

    for (const Rational& x : {ch.interval.lo, ch.interval.hi}) {
      if (m.mori_generators().empty()) break;
      NefResult nr = nef_check(m, evaluate(ch.positive, x));
      if (!nr.nef) {
        std::string names;
        for (const auto& v : nr.violated) names += " " + v;
        throw Error("NefViolation", tag + ": positive part fails at u=" + x.str() + " against" + names);
      }
    }
    if (m.mori_generators().empty()) out.notes.push_back(tag + ": no Mori generators, nefness not checked");
    for (const Rational& x : {ch.interval.lo, ch.interval.hi}) {
      for (const auto& [i, c] : evaluate(ch.negative, x)) {
        if (c < 0) throw Error("DecompositionMismatch", tag + ": negative part has a negative coefficient at u=" + x.str());
      }
    }
    ParametricDivisor sum = ch.positive;
    for (const auto& [i, c] : ch.negative) sum[i] += c;
    for (const auto& [i, c] : total) sum[i] -= c;
    for (const auto& p : m.degree(sum)) {
      if (!p.is_zero()) throw Error("DecompositionMismatch", tag + ": P+N has a different degree from L");
    }
    std::vector<ParametricDivisor> copies(m.dim(), ch.positive);
    out.volume.pieces.push_back({ch.interval, m.intersect(copies)});
  }
  for (const auto& b : continuity_breaks(out.volume)) {
    throw Error("DiscontinuousVolume", "volume jumps at u=" + b.at.str() + " from " + b.left.str() + " to " +
                                           b.right.str());
  }
  return out;
}

}  // namespace kstab
