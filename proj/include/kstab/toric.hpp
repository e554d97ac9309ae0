#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kstab/linalg.hpp"
#include "kstab/polynomial.hpp"
#include "kstab/serialize.hpp"

namespace kstab {

// Formal combination of boundary divisors, keyed by ray index.
using DivisorClass = std::map<int, Rational>;
// Boundary combination whose coefficients are polynomials (affine in u for
// every family used here).
using ParametricDivisor = std::map<int, Polynomial>;

struct CurveClass {
  std::string name;
  std::map<int, Rational> pairing;  // C . F_i
};

struct NefResult {
  bool nef = true;
  std::vector<std::string> violated;
  std::map<std::string, Rational> pairings;
};

// A complete simplicial toric variety given by its rays and maximal cones,
// together with a grading matrix whose columns are the divisor degrees. The
// full table of top intersection numbers of boundary divisors is computed
// once at construction; the object is immutable afterwards.
class ToricModel {
 public:
  struct Input {
    std::string name;
    std::vector<std::vector<long>> rays;
    std::vector<std::vector<int>> cones;
    // Alternative to cones: minimal non-faces. A set of dim rays is a cone
    // iff it contains none of them.
    std::vector<std::vector<int>> irrelevant;
    std::optional<Matrix> grading;  // derived from the ray relations when absent
    std::map<std::string, DivisorClass> divisor_aliases;
    std::map<std::string, std::vector<int>> curve_cones;  // curve = orbit closure of a codim-1... cone
    std::map<std::string, std::map<int, Rational>> curve_pairings;
    std::vector<std::string> mori_generators;
    std::vector<std::string> effective_generators;
  };

  explicit ToricModel(Input input);
  static ToricModel from_json(const Json& j, const std::string& where);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  int num_rays() const { return static_cast<int>(rays_.size()); }
  const std::vector<std::vector<long>>& rays() const { return rays_; }
  const std::vector<std::vector<int>>& cones() const { return cones_; }
  const Matrix& grading() const { return grading_; }
  const std::map<std::string, CurveClass>& curves() const { return curves_; }
  const std::vector<std::string>& mori_generators() const { return mori_; }
  const std::vector<std::string>& effective_generators() const { return effective_; }

  bool is_cone(std::vector<int> indices) const;
  // Every codimension-one face lies in exactly two maximal cones.
  bool is_complete() const;

  // Product of dim pairwise distinct boundary divisors.
  Rational distinct_product(const std::vector<int>& indices) const;
  // Product of dim boundary divisors, repetitions allowed.
  Rational product(std::vector<int> indices) const;
  Rational intersect(const std::vector<DivisorClass>& divisors) const;
  Polynomial intersect(const std::vector<ParametricDivisor>& divisors) const;
  Rational self_power(const DivisorClass& d) const;

  Vector degree(const DivisorClass& d) const;
  std::vector<Polynomial> degree(const ParametricDivisor& d) const;

  // Resolves "F3" or a fixture alias into a divisor class.
  DivisorClass divisor(const std::string& name) const;
  int ray_index(const std::string& name) const;
  const CurveClass& curve(const std::string& name) const;
  // Pairing of the curve through the cone's rays with D, from the tensor.
  CurveClass curve_from_cone(const std::string& name, const std::vector<int>& cone) const;

  // Combination linearly equivalent to F_i whose support avoids the given rays
  // (and i itself). Needs v_i and the avoided rays to be linearly independent.
  std::optional<DivisorClass> equivalent_representative(int i, const std::set<int>& avoid) const;

 private:
  Rational compute_product(std::vector<int> multiset, std::map<std::vector<int>, Rational>& memo, int depth) const;
  void check_index(int i) const;

  std::string name_;
  int dim_ = 0;
  std::vector<std::vector<long>> rays_;
  std::vector<std::vector<int>> cones_;
  Matrix grading_;
  std::map<std::string, DivisorClass> aliases_;
  std::map<std::string, CurveClass> curves_;
  std::vector<std::string> mori_;
  std::vector<std::string> effective_;
  std::map<std::vector<int>, Rational> tensor_;  // sorted multisets of size dim
};

Rational pair_curve_divisor(const CurveClass& curve, const DivisorClass& d);
Polynomial pair_curve_divisor(const CurveClass& curve, const ParametricDivisor& d);

NefResult nef_check(const DivisorClass& d, const std::vector<CurveClass>& generators);
NefResult nef_check(const ToricModel& model, const DivisorClass& d);

// Coordinates of deg(D) in the basis of generator degrees; throws SingularBasis.
Vector effective_coordinates(const ToricModel& model, const DivisorClass& d,
                             const std::vector<DivisorClass>& generators);
bool effective_check(const ToricModel& model, const DivisorClass& d, const std::vector<DivisorClass>& generators);
bool effective_check(const ToricModel& model, const DivisorClass& d);

// Largest u for which D(u) stays effective; throws Unbounded.
Rational pseudoeffective_threshold(const ToricModel& model, const ParametricDivisor& family);

DivisorClass evaluate(const ParametricDivisor& d, const Rational& u);
DivisorClass combine(const DivisorClass& a, const DivisorClass& b, const Rational& scale_b = Rational(1));

using Point3 = std::array<Rational, 3>;

struct Polytope {
  std::vector<Point3> vertices;
};

Rational polytope_volume(const Polytope& p);
Point3 polytope_barycenter(const Polytope& p);

}  // namespace kstab
