#pragma once

#include "ambra/groupdec.hpp"

namespace ambra {

// Span of the unital matrix algebra generated by a set of matrices.
struct AlgebraSpan {
  std::vector<Matrix> basis;  // linearly independent, spans the algebra
  int dim = 0;
};

// For an empty generator list the ambient data must be supplied (the algebra
// is then the scalars).
AlgebraSpan algebra_span(const std::vector<Matrix>& gens, const FieldPtr& field_if_empty = nullptr,
                         int dim_if_empty = 0);

// Burnside criterion: the algebra span has dimension d^2.
bool is_absolutely_irreducible(const std::vector<Matrix>& gens);

// A proper nonzero invariant subspace, over the base field when one exists,
// else over a computed extension. Precondition: not absolutely irreducible.
// Errors: Irreducible (precondition violated), SearchBudgetExceeded.
struct ExtensionSubspace {
  FieldPtr field;
  Embedding embedding;  // base -> extension
  Subspace subspace;    // over the extension
};
using InvariantSubspace = std::variant<Subspace, ExtensionSubspace>;

struct RepSplitConfig {
  unsigned long seed = 0;
  int seed_budget = 200;
};

InvariantSubspace invariant_subspace(const std::vector<Matrix>& gens,
                                     const RepSplitConfig& cfg = {});

// Invariant flag over a single computed extension whose successive quotients
// are absolutely irreducible.
struct CompositionChain {
  FieldPtr extension;
  Embedding embedding;           // base field -> extension
  std::vector<Subspace> flag;    // 0 = W_0 < W_1 < ... < W_k = full, over extension
  // block_images[g][i] = action of generator g on W_{i+1}/W_i
  std::vector<std::vector<Matrix>> block_images;
};

CompositionChain composition_chain(const std::vector<Matrix>& gens,
                                   const RepSplitConfig& cfg = {});

// Restriction of scalars along an embedding K -> L with the K-basis
// b_1 = 1, b_2, ..., b_m of L selected from the power basis.
struct ScalarRestriction {
  Embedding k_in_l;
  std::vector<FieldElement> k_basis;  // elements of L, first = 1

  int relative_degree() const { return static_cast<int>(k_basis.size()); }
  // K-coordinates of an element of L in the k_basis.
  std::vector<FieldElement> coordinates(const FieldElement& x) const;
  // e x e matrix over L -> (e*m) x (e*m) matrix over K.
  Matrix apply(const Matrix& over_l) const;
};

ScalarRestriction make_scalar_restriction(const Embedding& k_in_l);

// Block-triangular monomial synthesis data over the base field: the pulled
// back flag, coset representatives identified by per-block pattern tuples,
// lifted generators (block-upper-triangular with monomial diagonal blocks)
// and the equivariant epimorphism.
struct BlockMonomialLift {
  std::vector<Subspace> k_flag;  // strictly increasing, over the base field
  Matrix basis;                  // columns: flag- and piece-adapted basis of K^d
  std::vector<int> block_offsets;  // start of each block in the adapted basis, plus d
  std::vector<EpimonomialCertificate> k_block_certs;
  std::vector<WordMatrix> coset_reps;  // tuple-pattern cosets, identity first
  std::vector<Matrix> lifted;          // one per generator, dimension d * n
  Matrix epimorphism;                  // d x (d*n)

  // Global index of (block t, coset i, in-block position w) in the lift.
  int lift_index(int t, int i, int w) const {
    int n = static_cast<int>(coset_reps.size());
    return n * block_offsets[t] + i * (block_offsets[t + 1] - block_offsets[t]) + w;
  }
};

struct SpectrumCertificate {
  CompositionChain chain;
  ScalarRestriction restriction;
  std::vector<std::vector<Matrix>> restricted_blocks;  // per block, per generator
  std::vector<EpimonomialCertificate> per_block;       // for the restricted blocks
  BlockMonomialLift synthesized;
};

struct SpectrumRefutation {
  int block_index;                       // which quotient block refuted
  std::vector<Matrix> block_generators;  // restricted-scalars block generators
  RefutationWitness witness;             // word indices refer to the original generators
};

using SpectrumDecision = std::variant<SpectrumCertificate, SpectrumRefutation>;

// Decides finitely generated spectrum + power splitting via per-block
// Bezivin checks after restriction of scalars (and assembles the
// block-triangular monomial synthesis on success).
SpectrumDecision decide_fg_spectrum(const GroupInput& g, const RepSplitConfig& rcfg = {},
                                    const GroupDecConfig& gcfg = {});

// The block-monomial synthesis alone (used by the automaton pipeline).
BlockMonomialLift block_monomial_lift(const GroupInput& g, const CompositionChain& chain,
                                      const GroupDecConfig& gcfg = {});

bool verify_spectrum_certificate(const GroupInput& g, const SpectrumCertificate& cert);
bool verify_spectrum_refutation(const GroupInput& g, const SpectrumRefutation& r);

}  // namespace ambra
