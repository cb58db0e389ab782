#pragma once

#include "ambra/matrix.hpp"

namespace ambra {

// A subspace of the column space K^(ambient x 1), represented canonically by a
// basis matrix whose rows (transposed basis vectors) are in reduced
// row-echelon form. Equality of subspaces is representation equality.
class Subspace {
 public:
  // Canonicalizes the given spanning rows.
  static Subspace from_spanning_rows(const Matrix& rows);
  static Subspace zero(const FieldPtr& f, int ambient);
  static Subspace full(const FieldPtr& f, int ambient);
  // Span of a single column vector.
  static Subspace from_column(const Matrix& v);

  int ambient_dim() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const FieldPtr& field() const { return basis_.field(); }
  const Matrix& basis() const { return basis_; }  // rows in RREF
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  bool contains_vector(const Matrix& v) const;  // column vector
  bool contains(const Subspace& other) const;

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  // Deterministic total order (dim, then echelon-basis lex), used to
  // canonicalize collections of subspaces.
  static int cmp(const Subspace& a, const Subspace& b);
  bool operator<(const Subspace& o) const { return cmp(*this, o) < 0; }

 private:
  Subspace(int ambient, Matrix basis) : ambient_(ambient), basis_(std::move(basis)) {}
  int ambient_ = 0;
  Matrix basis_;
};

Subspace subspace_sum(const Subspace& u, const Subspace& w);
Subspace subspace_intersect(const Subspace& u, const Subspace& w);
bool subspace_contains(const Subspace& u, const Subspace& w);  // w subseteq u

// Kernel of (A - lambda I), possibly the zero subspace. Errors: NonSquare.
Subspace eigenspace(const Matrix& a, const FieldElement& lambda);

// Ordered direct-sum decomposition; `partial` marks a family whose pieces no
// longer span the ambient space (only produced as a refutation witness).
struct Decomposition {
  std::vector<Subspace> pieces;
  bool partial = false;

  int ambient_dim() const { return pieces.empty() ? 0 : pieces[0].ambient_dim(); }
  int total_dim() const;
  static Decomposition single_full(const FieldPtr& f, int ambient);
  bool operator==(const Decomposition& o) const;
};

// Validates pairwise independence and the dimension count of a non-partial
// decomposition; raises InvalidDecomposition on failure.
void check_direct_sum(const Decomposition& d);

// Replaces every piece V_i by its nonzero intersections with members of S
// (parent order first, refining subspaces in canonical order); flags the
// result partial iff the dimensions no longer sum to the ambient dimension.
Decomposition refine_decomposition(const Decomposition& d, const std::vector<Subspace>& s);

// The action of A on the invariant subspace W expressed in W's canonical
// basis (column convention). Errors: NotInvariant.
Matrix restrict_to(const Matrix& a, const Subspace& w);

}  // namespace ambra
