#include "kstab/invariants.hpp"

#include <map>

#include "kstab/error.hpp"
#include "kstab/integrate.hpp"

namespace kstab {

CoefficientVector coefficients_from_json(const Json& j) {
  if (!j.is_object()) throw Error("SchemaError", "coefficients must be an object like {\"11\": \"1\"}");
  CoefficientVector c;
  for (const auto& [key, val] : j.items()) {
    if (key.size() != 2 || key[0] < '0' || key[0] > '2' || key[1] < '0' || key[1] > '2') {
      throw Error("SchemaError", "bad coefficient index '" + key + "'");
    }
    c[(key[0] - '0') * 3 + (key[1] - '0')] = rational_from_json(val, "coefficients." + key);
  }
  return c;
}

Json to_json(const CoefficientVector& c) {
  Json out = Json::object();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[std::to_string(i) + std::to_string(j)] = c[3 * i + j].str();
  }
  return out;
}

long long invariant_dimension(int k) {
  if (k < 0 || k > 12) throw Error("BoundExceeded", "invariant_dimension supports 0 <= k <= 12");
  // m[size][(wx, wy)] over the nine torus weights (2-2i, 2-2j), one type at a time.
  using Table = std::vector<std::map<std::pair<int, int>, long long>>;
  Table m(k + 1);
  m[0][{0, 0}] = 1;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      int wx = 2 - 2 * i;
      int wy = 2 - 2 * j;
      Table next = m;  // multiplicity zero of this type
      for (int size = 0; size <= k; ++size) {
        for (const auto& [w, cnt] : m[size]) {
          for (int t = 1; size + t <= k; ++t) next[size + t][{w.first + t * wx, w.second + t * wy}] += cnt;
        }
      }
      m = std::move(next);
    }
  }
  auto get = [&](int x, int y) {
    auto it = m[k].find({x, y});
    return it == m[k].end() ? 0LL : it->second;
  };
  return get(0, 0) - get(2, 0) - get(0, 2) + get(2, 2);
}

std::vector<long long> hilbert_prefix(int n) {
  if (n < 0) throw Error("InvalidParameters", "prefix length must be nonnegative");
  std::vector<long long> c(n + 1, 0);
  c[0] = 1;
  for (int part : {2, 3, 4}) {
    for (int s = part; s <= n; ++s) c[s] += c[s - part];
  }
  return c;
}

Matrix peano_matrix(const CoefficientVector& c) {
  auto a = [&](int i, int j) { return c[3 * i + j]; };
  Rational half(1, 2);
  return {
      {half * a(1, 1), -a(1, 0), -a(0, 1), Rational(2) * a(0, 0)},
      {a(1, 2), -half * a(1, 1), Rational(-2) * a(0, 2), a(0, 1)},
      {a(2, 1), Rational(-2) * a(2, 0), -half * a(1, 1), a(1, 0)},
      {Rational(2) * a(2, 2), -a(2, 1), -a(1, 2), half * a(1, 1)},
  };
}

std::array<Rational, 5> characteristic_polynomial(const Matrix& m) {
  // Faddeev-LeVerrier recursion.
  std::size_t n = m.size();
  if (n != 4) throw Error("DimensionMismatch", "expected a 4x4 matrix");
  std::array<Rational, 5> coeff;
  coeff[0] = 1;
  Matrix acc(n, Vector(n));  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix shifted = acc;
    for (std::size_t i = 0; i < n; ++i) shifted[i][i] += coeff[k - 1];
    acc = multiply(m, shifted);
    Rational tr;
    for (std::size_t i = 0; i < n; ++i) tr += acc[i][i];
    coeff[k] = -tr / Rational(static_cast<long>(k));
  }
  return coeff;
}

PeanoInvariants peano_invariants(const CoefficientVector& c) {
  auto p = characteristic_polynomial(peano_matrix(c));
  if (!p[1].is_zero()) throw Error("InternalError", "matrix is expected to be trace-free");
  return {p[2], p[3], p[4]};
}

Mat2 mat2_multiply(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  }
  return r;
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  return {mat2_multiply(g.g1, h.g1), mat2_multiply(g.g2, h.g2)};
}

namespace {

// Coefficients (in powers of the second variable) of
// (p0 x + p1 y)^(2-i) (q0 x + q1 y)^i for i = 0, 1, 2.
std::array<std::array<Rational, 3>, 3> quadratic_expansions(const Mat2& g) {
  // (x, y) g = (g00 x + g10 y, g01 x + g11 y)
  std::array<Rational, 2> first{g[0][0], g[1][0]};
  std::array<Rational, 2> second{g[0][1], g[1][1]};
  auto mul = [](const std::array<Rational, 2>& p, const std::array<Rational, 2>& q) {
    return std::array<Rational, 3>{p[0] * q[0], p[0] * q[1] + p[1] * q[0], p[1] * q[1]};
  };
  return {mul(first, first), mul(first, second), mul(second, second)};
}

Rational det2(const Mat2& g) { return g[0][0] * g[1][1] - g[0][1] * g[1][0]; }

}  // namespace

CoefficientVector act(const GroupElement& g, const CoefficientVector& c) {
  if (det2(g.g1) != Rational(1) || det2(g.g2) != Rational(1)) {
    throw Error("InvalidParameters", "group element factors must have determinant one");
  }
  auto ex = quadratic_expansions(g.g1);
  auto ey = quadratic_expansions(g.g2);
  CoefficientVector out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Rational& a = c[3 * i + j];
      if (a.is_zero()) continue;
      for (int p = 0; p < 3; ++p) {
        if (ex[i][p].is_zero()) continue;
        for (int q = 0; q < 3; ++q) out[3 * p + q] += a * ex[i][p] * ey[j][q];
      }
    }
  }
  return out;
}

bool verify_invariance(const CoefficientVector& c, const GroupElement& g) {
  return peano_invariants(act(g, c)) == peano_invariants(c);
}

CoefficientVector swap_factors(const CoefficientVector& c) {
  CoefficientVector out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[3 * j + i] = c[3 * i + j];
  }
  return out;
}

int independence_rank(const CoefficientVector& c) {
  // Each J restricted to a coordinate line is a polynomial of degree <= 4,
  // so five exact samples determine it and its derivative at 0.
  Matrix jac(3, Vector(9));
  for (int m = 0; m < 9; ++m) {
    std::array<std::vector<std::pair<Rational, Rational>>, 3> samples;
    for (long h = 0; h <= 4; ++h) {
      CoefficientVector shifted = c;
      shifted[m] += Rational(h);
      PeanoInvariants p = peano_invariants(shifted);
      samples[0].emplace_back(Rational(h), p.j2);
      samples[1].emplace_back(Rational(h), p.j3);
      samples[2].emplace_back(Rational(h), p.j4);
    }
    for (int k = 0; k < 3; ++k) jac[k][m] = interpolate(samples[k], 4).coeff(1, 0);
  }
  return static_cast<int>(rank(jac));
}

Rational RationalSampler::next(long max_num, long max_den) {
  long num = static_cast<long>(engine_() % static_cast<std::uint64_t>(2 * max_num + 1)) - max_num;
  long den = static_cast<long>(engine_() % static_cast<std::uint64_t>(max_den)) + 1;
  return Rational(num, den);
}

Rational RationalSampler::next_nonzero(long max_num, long max_den) {
  while (true) {
    Rational r = next(max_num, max_den);
    if (!r.is_zero()) return r;
  }
}

CoefficientVector RationalSampler::coefficients() {
  CoefficientVector c;
  for (auto& x : c) x = next();
  return c;
}

Mat2 RationalSampler::sl2() {
  // upper shear * lower shear * diagonal, each of determinant one
  Rational t = next(4, 3);
  Rational s = next(4, 3);
  Rational d = next_nonzero(4, 3);
  Mat2 up{{{Rational(1), t}, {Rational(0), Rational(1)}}};
  Mat2 low{{{Rational(1), Rational(0)}, {s, Rational(1)}}};
  Mat2 diag{{{d, Rational(0)}, {Rational(0), d.inverse()}}};
  return mat2_multiply(mat2_multiply(up, low), diag);
}

GroupElement RationalSampler::group_element() { return {sl2(), sl2()}; }

InvarianceTrials check_invariance_trials(int trials, std::uint64_t seed) {
  InvarianceTrials r{trials, 0, seed};
  RationalSampler rng(seed);
  for (int t = 0; t < trials; ++t) {
    CoefficientVector c = rng.coefficients();
    GroupElement g = rng.group_element();
    if (verify_invariance(c, g)) ++r.passed;
  }
  return r;
}

}  // namespace kstab
