#include "kstab/rational.hpp"

#include <cctype>
#include <utility>

#include "kstab/error.hpp"

namespace kstab {

namespace {

bool is_integer_literal(const std::string& s) {
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw Error("DivisionByZero", "rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  std::string p = slash == std::string::npos ? text : text.substr(0, slash);
  std::string q = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!is_integer_literal(p) || !is_integer_literal(q) || q[0] == '-' || q[0] == '+') {
    throw Error("ParseError", "not a rational literal: '" + text + "'");
  }
  if (p[0] == '+') p.erase(0, 1);
  mpz_class num(p, 10);
  mpz_class den(q, 10);
  if (den == 0) throw Error("ParseError", "zero denominator in '" + text + "'");
  return Rational(mpq_class(num, den));
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(mpq_class(n, d));
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
  return Rational(1) / *this;
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("DivisionByZero", "division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace kstab
