#include "kstab/polynomial.hpp"

#include <algorithm>

namespace kstab {

Polynomial::Polynomial(const Rational& c) { add_term({0, 0}, c); }

Polynomial Polynomial::u() { return monomial(1, 1, 0); }
Polynomial Polynomial::v() { return monomial(1, 0, 1); }

Polynomial Polynomial::monomial(const Rational& c, int eu, int ev) {
  Polynomial p;
  p.add_term({eu, ev}, c);
  return p;
}

Polynomial Polynomial::affine(const Rational& c0, const Rational& cu, const Rational& cv) {
  Polynomial p;
  p.add_term({0, 0}, c0);
  p.add_term({1, 0}, cu);
  p.add_term({0, 1}, cv);
  return p;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Rational Polynomial::coeff(int eu, int ev) const {
  auto it = terms_.find({eu, ev});
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Polynomial::is_constant() const { return degree() <= 0; }

bool Polynomial::depends_on_u() const { return degree_u() > 0; }
bool Polynomial::depends_on_v() const { return degree_v() > 0; }

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

int Polynomial::degree_u() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first);
  return d;
}

int Polynomial::degree_v() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.second);
  return d;
}

Rational Polynomial::eval(const Rational& u, const Rational& v) const {
  Rational s;
  for (const auto& [e, c] : terms_) s += c * u.pow(e.first) * v.pow(e.second);
  return s;
}

Polynomial Polynomial::at_u(const Rational& u) const {
  Polynomial r;
  for (const auto& [e, c] : terms_) r.add_term({0, e.second}, c * u.pow(e.first));
  return r;
}

Polynomial Polynomial::at_v(const Rational& v) const {
  Polynomial r;
  for (const auto& [e, c] : terms_) r.add_term({e.first, 0}, c * v.pow(e.second));
  return r;
}

Polynomial Polynomial::substitute_v(const Polynomial& q) const {
  Polynomial r;
  for (const auto& [e, c] : terms_) r += monomial(c, e.first, 0) * q.pow(e.second);
  return r;
}

Polynomial Polynomial::substitute_u(const Polynomial& q) const {
  Polynomial r;
  for (const auto& [e, c] : terms_) r += monomial(c, 0, e.second) * q.pow(e.first);
  return r;
}

Polynomial Polynomial::antiderivative_u() const {
  Polynomial r;
  for (const auto& [e, c] : terms_) r.add_term({e.first + 1, e.second}, c / Rational(e.first + 1));
  return r;
}

Polynomial Polynomial::antiderivative_v() const {
  Polynomial r;
  for (const auto& [e, c] : terms_) r.add_term({e.first, e.second + 1}, c / Rational(e.second + 1));
  return r;
}

Polynomial Polynomial::derivative_u() const {
  Polynomial r;
  for (const auto& [e, c] : terms_) {
    if (e.first > 0) r.add_term({e.first - 1, e.second}, c * Rational(e.first));
  }
  return r;
}

Polynomial Polynomial::derivative_v() const {
  Polynomial r;
  for (const auto& [e, c] : terms_) {
    if (e.second > 0) r.add_term({e.first, e.second - 1}, c * Rational(e.second));
  }
  return r;
}

Polynomial Polynomial::pow(int e) const {
  Polynomial r(1);
  for (int i = 0; i < e; ++i) r *= *this;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  Polynomial r;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) r.add_term({e1.first + e2.first, e1.second + e2.second}, c1 * c2);
  }
  terms_ = std::move(r.terms_);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  // Highest total degree first, u before v within a degree.
  std::vector<std::pair<Exponent, Rational>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    int da = a.first.first + a.first.second;
    int db = b.first.first + b.first.second;
    if (da != db) return da > db;
    return a.first.first > b.first.first;
  });
  std::string out;
  for (const auto& [e, c] : ordered) {
    Rational mag = c.abs();
    bool unit = mag == Rational(1) && (e.first > 0 || e.second > 0);
    if (c.sign() < 0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    std::string mono;
    auto var = [&mono](const char* name, int k) {
      if (k == 0) return;
      if (!mono.empty()) mono += "*";
      mono += name;
      if (k > 1) mono += "^" + std::to_string(k);
    };
    var("u", e.first);
    var("v", e.second);
    if (!unit) {
      out += mag.str();
      if (!mono.empty()) out += "*";
    }
    out += mono;
  }
  return out;
}

}  // namespace kstab
