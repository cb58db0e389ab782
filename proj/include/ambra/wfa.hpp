#pragma once

#include <map>
#include <string>

#include "ambra/matrix.hpp"

namespace ambra {

// Linear representation (u, mu, v) of a weighted finite automaton: initial
// row vector, one transition matrix per letter, terminal column vector.
struct LinRep {
  FieldPtr field;
  std::vector<std::string> alphabet;  // ordered
  int dim = 0;
  Matrix initial;                     // 1 x dim
  Matrix final;                       // dim x 1
  std::map<std::string, Matrix> transitions;

  const Matrix& transition(const std::string& letter) const;  // Errors: UnknownLetter
};

void validate_linrep(const LinRep& rep);

// Words are letter sequences over the automaton alphabet.
using LetterWord = std::vector<std::string>;

// Parses a CLI word: single-character letters, or comma-separated
// multi-character letters.
LetterWord parse_word(const std::string& s, const std::vector<std::string>& alphabet);

// Exact behavior value u mu(w) v. Errors: UnknownLetter.
FieldElement evaluate(const LinRep& rep, const LetterWord& word);

// Number of successful runs of a word: paths through the nonzero support with
// nonzero initial and terminal weight (weights never cancel along a single
// run). Errors: UnknownLetter.
Integer count_runs(const LinRep& rep, const LetterWord& word);

// Removes states that lie on no successful run (support reachability both
// ways); behavior preserved.
LinRep trim(const LinRep& rep);

// Canonical minimal representation: forward word saturation, then backward
// (BFS by length, alphabet order). Preserves invertibility.
LinRep minimize(const LinRep& rep);

// Exact equivalence via zeroness of the difference representation.
// Errors: AlphabetMismatch.
bool equivalent(const LinRep& a, const LinRep& b);

// True iff every transition matrix is invertible.
bool is_invertible(const LinRep& rep);

enum class AmbiguityClass {
  Deterministic,
  Unambiguous,
  FinitelyAmbiguous,
  PolynomiallyAmbiguous,
  ExponentiallyAmbiguous,
};
const char* ambiguity_class_name(AmbiguityClass c);

struct StructuralReport {
  bool deterministic = false;
  bool unambiguous = false;
  bool eda = false;  // exponential-degree-of-ambiguity criterion
  bool ida = false;  // infinite-degree-of-ambiguity criterion
  AmbiguityClass cls = AmbiguityClass::Deterministic;
};

// Weber–Seidl structural classification on the support digraph (trims
// internally; weights only matter through their zero pattern).
StructuralReport structural_ambiguity(const LinRep& rep);

// All words over the alphabet with length in [0, max_len], in BFS/lex order.
std::vector<LetterWord> words_up_to(const std::vector<std::string>& alphabet, int max_len);

}  // namespace ambra
