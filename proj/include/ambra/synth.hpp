#pragma once

#include "ambra/repsplit.hpp"
#include "ambra/wfa.hpp"

namespace ambra {

// Positive outcome of the finitely-ambiguous synthesis: the equivalent
// monomial automaton attains the arithmetic minimum M, with outputs inside
// the M-fold sumset of the group generated by gamma_generators.
struct AmbiguityCertificate {
  int minimal_m = 0;
  std::vector<FieldElement> gamma_generators;
  LinRep synthesized;  // monomial transitions
  EpimonomialCertificate group_certificate;
};

enum class SeriesClass {
  FinitelyAmbiguousEquivalent,
  PolynomiallyAmbiguousEquivalent,
  ExponentialOnly,
};
const char* series_class_name(SeriesClass c);

struct SeriesClassification {
  SeriesClass cls;
  LinRep minimal;  // the minimized input underlying the decision

  // FinitelyAmbiguousEquivalent evidence:
  std::optional<AmbiguityCertificate> finite;
  // PolynomiallyAmbiguousEquivalent evidence:
  std::optional<SpectrumCertificate> spectrum;
  std::optional<LinRep> block_synthesized;
  // Refutations that justify exclusion from the smaller classes:
  std::optional<RefutationWitness> group_refutation;       // set unless Finitely
  std::optional<SpectrumRefutation> spectrum_refutation;   // set for ExponentialOnly
};

// Monomial synthesis for a certified minimal invertible representation
// (basis alignment puts the final-vector components first in each piece).
// Errors: InvalidCertificate, NotInvertible, NotMinimal.
LinRep monomialize(const LinRep& rep, const EpimonomialCertificate& cert);

// Exact ambiguity degree of a monomial invertible representation: enumerate
// the finite group of support patterns, apply to supp(final), count the
// maximal overlap with supp(initial). Errors: NotMonomial.
int ambiguity_degree(const LinRep& rep);

struct SynthConfig {
  RepSplitConfig repsplit;
  GroupDecConfig groupdec;
};

// Full classification pipeline (minimize, group decision, spectrum decision).
// Errors: OutOfScope (non-invertible minimal representation),
// SearchBudgetExceeded.
SeriesClassification classify_series(const LinRep& rep, const SynthConfig& cfg = {});

// Block-triangular synthesis for a certified minimal invertible
// representation. Errors: InvalidCertificate.
LinRep block_monomialize(const LinRep& rep, const SpectrumCertificate& cert);

// One-letter specialization with the improvement field (splitting field of
// the characteristic polynomial) reported when the class is not already
// finitely ambiguous. Errors: Singular.
struct LrsClassification {
  SeriesClassification base;
  std::optional<Polynomial> improvement_min_poly;  // over Q-coefficients of the base field
};
LrsClassification lrs_classify(const Matrix& u, const Matrix& a, const Matrix& v,
                               const SynthConfig& cfg = {});

}  // namespace ambra
