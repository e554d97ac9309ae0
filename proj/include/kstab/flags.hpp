#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kstab/zariski.hpp"

namespace kstab {

// One outer chamber: the restrictions of the positive and negative parts of
// the ambient family to the flag surface, affine in u.
struct FlagPiece {
  Interval interval;
  std::vector<Polynomial> positive;
  std::vector<Polynomial> negative;
};

struct FlagPoint {
  std::string name;
  // Local intersection multiplicity with the flag curve of each lattice curve through the point.
  std::map<int, Rational> multiplicities;
};

// Data of a nested flag (threefold, surface, curve, point) evaluated by
// integrating over the (u, v) chambers of the surface family P(u)| - v C.
struct FlagCase {
  std::string label;
  int n = 3;
  Rational a_top;
  SurfaceLattice lattice;
  std::vector<FlagPiece> pieces;
  Vector flag_class;
  // Lattice curve whose coefficient in N(u)| is the vanishing order along the flag curve, if any.
  std::optional<int> flag_index;
  // Boundary correction subtracted with weight (v + ord) when computing orders at points.
  Vector sigma;
  std::optional<std::vector<Polynomial>> restricted_total;
  std::map<std::string, FlagPoint> points;
};

struct FlagChamber {
  std::size_t piece;
  SurfaceChamber chamber;
};

struct FlagEvaluation {
  std::vector<FlagChamber> chambers;
  std::vector<std::string> warnings;
};

FlagCase flag_case_from_json(const Json& j, const std::filesystem::path& base_dir, const std::string& where);

// Chamber decomposition of P(u)| - v C over {lo <= u <= hi, 0 <= v <= t(u)}
// for every outer piece. Also checks the restricted total when present.
FlagEvaluation evaluate_flag(const FlagCase& c);

// The surface domain of a piece: v between 0 and the pseudoeffective threshold.
Polygon flag_domain(const FlagCase& c, const FlagPiece& piece);

// Vanishing order d(u) of N(u)| along the flag curve.
Polynomial flag_order(const FlagCase& c, const FlagPiece& piece);

Rational s_flag_surface(const FlagCase& c, const FlagEvaluation& ev);
Rational s_flag_surface(const FlagCase& c);
Rational f_q_term(const FlagCase& c, const FlagEvaluation& ev, const std::string& point);
Rational f_q_term(const FlagCase& c, const std::string& point);
Rational s_flag_point(const FlagCase& c, const FlagEvaluation& ev, const std::string& point);
Rational s_flag_point(const FlagCase& c, const std::string& point);

// The two blowup models over a general point of the vertical divisor in the
// base case (a, d, mu), with the flag on the exceptional curve. The
// tangential variant uses the (1,2) weighted blowup.
FlagCase base_case_flag(const Rational& a, const Rational& d, const Rational& mu, bool tangential);

}  // namespace kstab
