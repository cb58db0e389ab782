#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ambra/polynomial.hpp"

namespace ambra {

// Constructs Q[x]/(min_poly); rejects reducible presentations.
// min_poly must be monic of degree >= 1 with rational coefficients.
FieldPtr nf_create(const Polynomial& min_poly);

// Factorization over Q into monic irreducible factors with multiplicities;
// the product over factors (with multiplicities) equals p up to its leading
// coefficient. Input coefficients must be rational-valued.
std::vector<std::pair<Polynomial, int>> factor_over_Q(const Polynomial& p);

// Factorization over the number field carrying p (Trager's norm method).
std::vector<std::pair<Polynomial, int>> factor_over_K(const Polynomial& p);

// Euler phi and the n-th cyclotomic polynomial (over the rational field).
unsigned long euler_phi(unsigned long n);
Polynomial cyclotomic_polynomial(unsigned long n);

// All n >= 1 with phi(n) <= bound, ascending.
std::vector<unsigned long> orders_with_phi_at_most(unsigned long bound);

// If the monic irreducible h (rational coefficients) is a cyclotomic
// polynomial, returns its order n.
std::optional<unsigned long> cyclotomic_order(const Polynomial& h);

// Least n >= 1 with a^n = 1; absent when a is not a root of unity.
// Errors: ZeroElement.
std::optional<unsigned long> root_of_unity_order(const FieldElement& a);

// Monic minimal polynomial of a over Q (coefficients in the rational field).
Polynomial minimal_polynomial_over_Q(const FieldElement& a);

// Monic minimal polynomial of a in L over the embedded subfield K.
Polynomial minimal_polynomial_over_subfield(const FieldElement& a, const Embedding& k_in_l);

// Norm of a field element down to Q: product of the conjugates' images.
Rational element_norm(const FieldElement& a);

// Least m >= 1 with a^m in the embedded subfield, together with a^m expressed
// as an element of the subfield; absent when no power lands in the subfield.
// Errors: ZeroElement.
struct PowerInSubfield {
  unsigned long exponent;
  FieldElement value;  // element of the subfield
};
std::optional<PowerInSubfield> power_in_subfield(const FieldElement& alpha, const Embedding& k_in_l);

// For a monic irreducible factor f of a characteristic polynomial over K:
// least m with lambda^m in K for the roots lambda of f (all roots share it),
// with the common value of lambda^m. Runs entirely inside K via the test
// "x^m mod f is constant"; no splitting field is built.
std::optional<PowerInSubfield> power_split_of_factor(const Polynomial& f);

// Orders of the root-of-unity ratios lambda/mu with f(lambda) = 0, g(mu) = 0
// (f, g monic over the same field; f == g includes conjugate ratios). Order 1
// is omitted. `all_ratios_cyclotomic` reports whether every ratio is a root of
// unity.
struct RatioOrders {
  std::vector<unsigned long> orders;
  bool all_ratios_cyclotomic;
};
RatioOrders ratio_root_of_unity_orders(const Polynomial& f, const Polynomial& g);

// Extends the field of h by a root of h (irreducible over its field).
// Returns the absolute presentation of the extension, the embedding of the
// base field, and the adjoined root.
struct ExtensionResult {
  FieldPtr field;
  Embedding embedding;  // base -> extension
  FieldElement root;
};
ExtensionResult extend_by_irreducible(const Polynomial& h);

// Splitting field of p over its base field K: an absolute presentation L, the
// embedding K -> L, and the distinct roots of p in L.
struct SplittingFieldResult {
  FieldPtr field;
  Embedding embedding;
  std::vector<FieldElement> roots;
};
SplittingFieldResult splitting_field(const Polynomial& p);

// Resultant over the coefficient field (Euclidean algorithm).
FieldElement resultant(const Polynomial& a, const Polynomial& b);

}  // namespace ambra
