#pragma once

#include <optional>
#include <variant>

#include "ambra/spectral.hpp"

namespace ambra {

// A word over the generator alphabet: entry +i means g_i (1-based), -i its
// inverse. Words evaluate left-to-right.
using Word = std::vector<int>;

std::string word_to_string(const Word& w);
Word word_from_string(const std::string& s);
Matrix evaluate_word(const std::vector<Matrix>& gens, const Word& w);
Word inverse_word(const Word& w);

// Finitely generated subgroup of GL_d(K) given by invertible generators.
struct GroupInput {
  FieldPtr field;
  int dim = 0;
  std::vector<Matrix> generators;
};
void validate_group_input(const GroupInput& g);  // Errors: NotInvertible, DimensionMismatch

// Monomial pattern of a matrix with respect to a total decomposition: the
// piece permutation plus projectively normalized blocks. Two group elements
// have equal patterns iff they differ by right multiplication with an element
// that is scalar on every piece.
struct MonomialPattern {
  std::vector<int> perm;        // piece j maps into piece perm[j]
  std::vector<Matrix> blocks;   // normalized coordinate block per source piece

  static int cmp(const MonomialPattern& a, const MonomialPattern& b);
  bool operator==(const MonomialPattern& o) const { return cmp(*this, o) == 0; }
  bool operator<(const MonomialPattern& o) const { return cmp(*this, o) < 0; }
};

std::optional<MonomialPattern> monomial_pattern(const Matrix& a, const Decomposition& d);

struct WordMatrix {
  Word word;
  Matrix matrix;
};

struct EpimonomialCertificate {
  Decomposition decomposition;
  std::vector<WordMatrix> steady_basis;
  std::vector<WordMatrix> coset_reps;  // identity first
  std::vector<std::vector<int>> permutation_images;  // per generator, piece permutation
  int diagonal_index = 0;
};

enum class RefutationKind { NonDiagonalizable, NotPowerSplitting, IncompatibleSteadyPair };
const char* refutation_kind_name(RefutationKind k);

struct IncompatiblePairDetail {
  WordMatrix first_steady;   // an earlier steady consistent with `prior`
  WordMatrix second_steady;  // the refining steady whose eigenspaces clash
  Decomposition prior;       // decomposition before the failing refinement
  Decomposition partial;     // the partial refinement result
};

struct RefutationWitness {
  Word word;
  Matrix matrix;
  RefutationKind kind;
  std::optional<IncompatiblePairDetail> pair_detail;
};

using GroupDecision = std::variant<EpimonomialCertificate, RefutationWitness>;

struct GroupDecConfig {
  std::optional<Integer> bfs_node_cap;  // default: |GL_{d*[K:Q]}(F_3)|
};

Integer default_bfs_node_cap(int dim, int field_degree);

// Decides whether the generated group is virtually simultaneously
// diagonalizable over K. Errors: SearchBudgetExceeded (cap diagnostics only).
GroupDecision decide_virtually_diagonalizable(const GroupInput& g, const GroupDecConfig& cfg = {});

// True iff a acts as a scalar on every piece of the certificate decomposition.
bool diagonal_membership(const Matrix& a, const EpimonomialCertificate& cert);

// Monomial lift: generators of dimension d*n acting monomially, with a
// surjective equivariant epimorphism onto the original representation.
struct MonomialLift {
  std::vector<Matrix> lifted;  // one per generator
  Matrix epimorphism;          // d x (d*n), Psi * lifted = original * Psi
};
// piece_bases: optional custom basis per piece (rows = basis vectors in the
// ambient coordinates); defaults to the canonical echelon bases.
MonomialLift monomial_lift(const GroupInput& g, const EpimonomialCertificate& cert,
                           const std::vector<Matrix>* piece_bases = nullptr);

// Independent re-verification (used by the CLI before printing).
bool verify_certificate(const GroupInput& g, const EpimonomialCertificate& cert);
bool verify_refutation(const GroupInput& g, const RefutationWitness& w);

}  // namespace ambra
