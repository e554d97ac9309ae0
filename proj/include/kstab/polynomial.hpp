#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kstab/rational.hpp"

namespace kstab {

// Polynomial in the two variables u (outer) and v (inner) with rational
// coefficients, stored in normal form (no zero coefficients).
class Polynomial {
 public:
  using Exponent = std::pair<int, int>;  // (power of u, power of v)

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  template <std::integral T>
  Polynomial(T c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial u();
  static Polynomial v();
  static Polynomial monomial(const Rational& c, int eu, int ev);
  // c0 + cu*u + cv*v
  static Polynomial affine(const Rational& c0, const Rational& cu, const Rational& cv = Rational(0));

  const std::map<Exponent, Rational>& terms() const { return terms_; }
  Rational coeff(int eu, int ev) const;
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool depends_on_u() const;
  bool depends_on_v() const;
  int degree() const;    // total degree, -1 for zero
  int degree_u() const;  // -1 for zero
  int degree_v() const;

  Rational eval(const Rational& u, const Rational& v = Rational(0)) const;
  // Substitutions producing polynomials.
  Polynomial at_u(const Rational& u) const;  // result depends on v only
  Polynomial at_v(const Rational& v) const;  // result depends on u only
  Polynomial substitute_v(const Polynomial& q) const;  // v := q(u, v)
  Polynomial substitute_u(const Polynomial& q) const;  // u := q(u, v)

  Polynomial antiderivative_u() const;
  Polynomial antiderivative_v() const;
  Polynomial derivative_u() const;
  Polynomial derivative_v() const;
  Polynomial pow(int e) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  // Human-readable form such as "-u^3+13" or "1/2*u*v-v^2".
  std::string str() const;

 private:
  void add_term(const Exponent& e, const Rational& c);
  std::map<Exponent, Rational> terms_;
};

struct Interval {
  Rational lo;
  Rational hi;
  Rational length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

}  // namespace kstab
