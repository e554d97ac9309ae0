#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "kstab/linalg.hpp"
#include "kstab/serialize.hpp"

namespace kstab {

// Coefficients a_ij of sum a_ij x^(2-i) y^i u^(2-j) v^j, stored at index 3i+j.
using CoefficientVector = std::array<Rational, 9>;
using Mat2 = std::array<std::array<Rational, 2>, 2>;

struct GroupElement {
  Mat2 g1;
  Mat2 g2;
};

CoefficientVector coefficients_from_json(const Json& j);  // {"11": "1", ...}
Json to_json(const CoefficientVector& c);

long long invariant_dimension(int k);
std::vector<long long> hilbert_prefix(int n);

struct PeanoInvariants {
  Rational j2, j3, j4;
  friend bool operator==(const PeanoInvariants&, const PeanoInvariants&) = default;
};

Matrix peano_matrix(const CoefficientVector& c);
// Coefficients of det(T I - M) for a 4x4 matrix, from T^4 down to T^0.
std::array<Rational, 5> characteristic_polynomial(const Matrix& m);
PeanoInvariants peano_invariants(const CoefficientVector& c);

Mat2 mat2_multiply(const Mat2& a, const Mat2& b);
GroupElement compose(const GroupElement& g, const GroupElement& h);
// Coefficients of f((x,y) g1, (u,v) g2).
CoefficientVector act(const GroupElement& g, const CoefficientVector& c);
bool verify_invariance(const CoefficientVector& c, const GroupElement& g);
// Exchanges the two factors: a_ij -> a_ji.
CoefficientVector swap_factors(const CoefficientVector& c);
int independence_rank(const CoefficientVector& c);

// Deterministic random rationals and determinant-one elements built from
// the raw engine output (no distribution objects, so results are portable).
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : engine_(seed) {}
  Rational next(long max_num = 9, long max_den = 6);
  Rational next_nonzero(long max_num = 9, long max_den = 6);
  CoefficientVector coefficients();
  Mat2 sl2();
  GroupElement group_element();
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct InvarianceTrials {
  int trials = 0;
  int passed = 0;
  std::uint64_t seed = 0;
};
InvarianceTrials check_invariance_trials(int trials, std::uint64_t seed);

}  // namespace kstab
