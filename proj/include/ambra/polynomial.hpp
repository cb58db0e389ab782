#pragma once

#include <utility>
#include <vector>

#include "ambra/number_field.hpp"

namespace ambra {

// Dense univariate polynomial over a number field, coefficients lowest-degree
// first, no trailing zero coefficients (the zero polynomial has an empty
// coefficient list and degree -1).
class Polynomial {
 public:
  explicit Polynomial(FieldPtr field) : field_(std::move(field)) {}
  Polynomial(FieldPtr field, std::vector<FieldElement> coeffs);

  static Polynomial zero(const FieldPtr& f) { return Polynomial(f); }
  static Polynomial constant(const FieldPtr& f, const FieldElement& c);
  static Polynomial one(const FieldPtr& f) { return constant(f, FieldElement::one(f)); }
  static Polynomial x(const FieldPtr& f);
  static Polynomial from_rationals(const FieldPtr& f, const std::vector<Rational>& coeffs);

  const FieldPtr& field() const { return field_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_monic() const { return !is_zero() && coeffs_.back().is_one(); }

  const FieldElement& leading() const;
  FieldElement coeff(int i) const;  // zero beyond degree
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }

  // True when every coefficient lies in Q.
  bool has_rational_coeffs() const;
  std::vector<Rational> rational_coeffs() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const FieldElement& c) const;
  Polynomial shifted(int k) const;  // multiply by x^k

  // Euclidean division; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
  Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }
  Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }
  bool divides(const Polynomial& multiple) const;

  Polynomial derivative() const;
  Polynomial make_monic() const;
  Polynomial pow(unsigned long e) const;
  // x^e reduced mod *this (requires monic, degree >= 1); cheap for large e.
  Polynomial x_power_mod(const Integer& e) const;

  FieldElement eval(const FieldElement& at) const;
  // Applies an embedding to every coefficient.
  Polynomial map_coefficients(const Embedding& emb) const;
  // p(x + c) via Horner; p(c*x) via scaling.
  Polynomial taylor_shift(const FieldElement& c) const;
  Polynomial compose_scale(const FieldElement& c) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void normalize();

  FieldPtr field_;
  std::vector<FieldElement> coeffs_;
};

// Monic gcd via the Euclidean algorithm (exact arithmetic).
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

// Squarefree part p / gcd(p, p') (characteristic zero).
Polynomial squarefree_part(const Polynomial& p);
bool is_squarefree(const Polynomial& p);

// Yun's squarefree decomposition: returns (factor, multiplicity) pairs with
// factors monic, squarefree, pairwise coprime; product with multiplicities
// equals p up to the leading coefficient.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p);

// Deterministic total order on polynomials: degree, then coefficient lex from
// the top. Used to canonicalize factor lists.
int poly_cmp(const Polynomial& a, const Polynomial& b);

}  // namespace ambra
