#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ambra/rational.hpp"

namespace ambra {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// A number field Q[x]/(f) presented absolutely over Q by a monic integral-style
// minimal polynomial f (rational coefficients, monic). The rational field
// itself is the degree-1 presentation Q[x]/(x).
//
// Fields are compared structurally: two FieldPtr are interchangeable iff their
// minimal polynomials agree coefficient-for-coefficient.
class NumberField {
 public:
  // Constructs without an irreducibility check. Callers must guarantee f is
  // monic and irreducible over Q (used internally where irreducibility is a
  // theorem, e.g. Trager norms).
  static FieldPtr make_trusted(std::vector<Rational> min_poly);

  // The canonical degree-1 presentation of Q (min_poly = x).
  static const FieldPtr& rationals();

  int degree() const { return static_cast<int>(min_poly_.size()) - 1; }
  const std::vector<Rational>& min_poly() const { return min_poly_; }
  bool is_rational() const { return degree() == 1; }

  bool same_presentation(const NumberField& other) const { return min_poly_ == other.min_poly_; }

  // x^(degree+k) reduced mod min_poly, for k in [0, degree-2]; kept for fast
  // element multiplication.
  const std::vector<std::vector<Rational>>& power_table() const { return power_table_; }

 private:
  explicit NumberField(std::vector<Rational> min_poly);

  std::vector<Rational> min_poly_;
  std::vector<std::vector<Rational>> power_table_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

// An element of a number field in power-basis coordinates. Immutable.
class FieldElement {
 public:
  FieldElement();  // zero of Q
  FieldElement(FieldPtr field, std::vector<Rational> coords);

  static FieldElement zero(const FieldPtr& f);
  static FieldElement one(const FieldPtr& f);
  static FieldElement from_rational(const FieldPtr& f, const Rational& r);
  static FieldElement generator(const FieldPtr& f);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_one() const;
  // True iff the element lies in the prime field Q (all higher coordinates 0).
  bool is_rational() const;
  Rational rational_value() const;  // requires is_rational()

  FieldElement operator-() const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement inverse() const;
  FieldElement pow(const Integer& e) const;  // negative exponents allowed for units

  FieldElement scaled(const Rational& r) const;

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  // Deterministic total order (field degree, then coordinate lex).
  static int cmp(const FieldElement& a, const FieldElement& b);
  bool operator<(const FieldElement& o) const { return cmp(*this, o) < 0; }

  std::string to_string() const;

 private:
  FieldPtr field_;
  std::vector<Rational> coords_;
};

// Ring embedding K -> L determined by the image of K's generator.
class Embedding {
 public:
  Embedding() = default;
  Embedding(FieldPtr from, FieldPtr to, FieldElement gen_image);

  static Embedding identity(const FieldPtr& f);

  const FieldPtr& from() const { return from_; }
  const FieldPtr& to() const { return to_; }
  const FieldElement& gen_image() const { return gen_image_; }

  FieldElement map(const FieldElement& x) const;

  // this: K -> L, next: L -> M; result K -> M.
  Embedding then(const Embedding& next) const;

  // Solves map(y) = x; empty if x is outside the embedded copy of K.
  std::optional<FieldElement> preimage(const FieldElement& x) const;

 private:
  FieldPtr from_, to_;
  FieldElement gen_image_;
  std::vector<FieldElement> gen_powers_;  // gen_image^i for i < deg(from)
};

}  // namespace ambra
