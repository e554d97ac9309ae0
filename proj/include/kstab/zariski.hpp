#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kstab/geometry2d.hpp"
#include "kstab/integrate.hpp"
#include "kstab/linalg.hpp"
#include "kstab/toric.hpp"

namespace kstab {

// Named curves on a surface together with their intersection matrix.
// Divisors are coefficient vectors in this basis.
struct SurfaceLattice {
  std::vector<std::string> curves;
  Matrix gram;

  int index(const std::string& name) const;
  Rational pair(const Vector& a, const Vector& b) const;
  Polynomial pair(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) const;
  Polynomial pair(const std::vector<Polynomial>& a, const Vector& b) const;
  void validate() const;

  static SurfaceLattice from_json(const Json& j, const std::string& where);
};

struct ZariskiResult {
  Vector positive;
  Vector negative;
  std::vector<int> support;  // curves with positive coefficient in the negative part
  std::vector<std::string> warnings;
};

// Iterative decomposition: curves meeting the current positive part
// negatively join the support, and the negative part is re-solved from
// (D - N).C_j = 0 on the support. D must be pseudoeffective and the listed
// curves must span the relevant cones.
ZariskiResult surface_zariski(const SurfaceLattice& lattice, const Vector& d);

// Closed-form decomposition of an affine family for a fixed support.
struct SupportSolution {
  std::vector<int> support;
  std::vector<Polynomial> positive;
  std::vector<Polynomial> negative;
  // Affine forms that must be >= 0 for the support to be the right one:
  // negative coefficients on the support and P.C_j off it.
  std::vector<Polynomial> conditions;
};

SupportSolution solve_support(const SurfaceLattice& lattice, const std::vector<Polynomial>& family,
                              const std::vector<int>& support);

struct SurfaceChamber {
  std::vector<int> support;
  Polygon region;
  std::vector<Polynomial> positive;
  std::vector<Polynomial> negative;
};

struct ChamberDecomposition {
  std::vector<SurfaceChamber> chambers;
  std::vector<std::string> warnings;
};

// Decomposes a family with coefficients affine in (u, v) over a convex
// polygonal domain into chambers of constant negative support.
ChamberDecomposition parametric_surface_zariski(const SurfaceLattice& lattice, const std::vector<Polynomial>& family,
                                                const Polygon& domain);

// Checks the defining conditions of every chamber at its vertices.
std::vector<std::string> verify_chambers(const SurfaceLattice& lattice, const std::vector<Polynomial>& family,
                                         const ChamberDecomposition& dec);

struct ThreefoldChamber {
  Interval interval;
  std::string model;
  ParametricDivisor positive;
  ParametricDivisor negative;
};

struct VolumeResult {
  PiecewisePolynomial volume;
  std::vector<std::string> notes;
};

// Verifies the supplied chamber-wise decomposition of L(u) and returns the
// cube of the positive part on each chamber.
VolumeResult threefold_chamber_volume(const std::map<std::string, std::shared_ptr<const ToricModel>>& models,
                                      const ParametricDivisor& total, const std::vector<ThreefoldChamber>& chambers);

}  // namespace kstab
