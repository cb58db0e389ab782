#pragma once

#include <optional>

#include "ambra/factor.hpp"
#include "ambra/subspace.hpp"

namespace ambra {

// Eigenvalues of a matrix with multiplicities, in a computed splitting field.
struct SpectrumReport {
  Matrix element;
  FieldPtr splitting_field;
  Embedding embedding;  // base field -> splitting field
  std::vector<std::pair<FieldElement, int>> eigenvalues;  // in splitting field
  bool diagonalizable;
};

SpectrumReport spectrum(const Matrix& a);

// Least m >= 1 with lambda^m in the base field for every eigenvalue lambda;
// absent when some eigenvalue has no such power. Works per irreducible
// charpoly factor without building splitting fields. Errors: Singular.
std::optional<unsigned long> power_splitting_exponent(const Matrix& a);

// Eigenvalue criterion for steadiness (characteristic zero, invertible):
// all eigenvalues in the base field and no distinct pair with a
// root-of-unity ratio. Errors: Singular.
bool is_steady(const Matrix& a);

// Least N with A^N steady: lcm of the power-splitting exponent and the orders
// of all root-of-unity eigenvalue ratios; absent iff power splitting fails.
// Errors: Singular.
std::optional<unsigned long> steady_exponent(const Matrix& a);

struct SteadyAnalysis {
  Matrix element;
  std::optional<unsigned long> power_splitting_exponent;
  std::optional<unsigned long> steady_exponent;
  bool is_steady;
};

SteadyAnalysis analyze_steady(const Matrix& a);

// Eigenvalues of a steady matrix (they lie in the base field), canonically
// ordered, with their eigenspaces. Errors: NotSteady.
std::vector<std::pair<FieldElement, Subspace>> steady_eigenspaces(const Matrix& a);

// Decomposition into maximal joint eigenspace intersections of the given
// steady matrices; partial iff the intersections fail to span.
// Errors: NotSteady.
Decomposition joint_eigenspace_decomposition(const std::vector<Matrix>& steadies);

// A steady product of the given steady matrices acting with pairwise distinct
// scalars on the pieces of d, found by shell enumeration of exponent vectors.
// Errors: InvalidDecomposition, SearchBudgetExceeded.
struct SeparatingElement {
  Matrix element;
  std::vector<long> exponents;
  std::vector<FieldElement> scalars;  // scalar of the element on each piece
};
SeparatingElement separating_element(const std::vector<Matrix>& steadies, const Decomposition& d,
                                     long radius_cap = 64);

// Scalar by which a acts on a piece; absent if the piece is not contained in
// an eigenspace of a.
std::optional<FieldElement> scalar_on_piece(const Matrix& a, const Subspace& piece);

}  // namespace ambra
