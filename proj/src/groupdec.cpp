#include "ambra/groupdec.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "ambra/error.hpp"

namespace ambra {

std::string word_to_string(const Word& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << " ";
    if (w[i] > 0)
      os << "g" << w[i];
    else
      os << "g" << -w[i] << "^-1";
  }
  return os.str();
}

Word word_from_string(const std::string& s) {
  Word w;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    if (tok.size() < 2 || tok[0] != 'g') raise(ErrorKind::ParseError, "bad word token '" + tok + "'");
    bool inv = false;
    std::string num = tok.substr(1);
    auto caret = num.find("^-1");
    if (caret != std::string::npos) {
      inv = true;
      num = num.substr(0, caret);
    }
    int idx = 0;
    try {
      idx = std::stoi(num);
    } catch (...) {
      raise(ErrorKind::ParseError, "bad word token '" + tok + "'");
    }
    if (idx <= 0) raise(ErrorKind::ParseError, "bad generator index in '" + tok + "'");
    w.push_back(inv ? -idx : idx);
  }
  return w;
}

Matrix evaluate_word(const std::vector<Matrix>& gens, const Word& w) {
  if (gens.empty()) raise(ErrorKind::Internal, "evaluate_word without generators");
  const FieldPtr& f = gens[0].field();
  Matrix acc = Matrix::identity(f, gens[0].rows());
  for (int t : w) {
    int idx = std::abs(t) - 1;
    if (idx >= static_cast<int>(gens.size())) raise(ErrorKind::ParseError, "word references missing generator");
    acc = acc * (t > 0 ? gens[idx] : gens[idx].inverse());
  }
  return acc;
}

Word inverse_word(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

void validate_group_input(const GroupInput& g) {
  for (const auto& m : g.generators) {
    if (m.rows() != g.dim || m.cols() != g.dim)
      raise(ErrorKind::DimensionMismatch, "generator shape mismatch");
    if (!same_field(m.field(), g.field)) raise(ErrorKind::FieldMismatch, "generator field mismatch");
    if (!m.invertible()) raise(ErrorKind::NotInvertible, "generator is singular");
  }
  if (g.generators.empty()) raise(ErrorKind::ParseError, "no generators given");
}

int MonomialPattern::cmp(const MonomialPattern& a, const MonomialPattern& b) {
  if (a.perm.size() != b.perm.size()) return a.perm.size() < b.perm.size() ? -1 : 1;
  if (a.perm != b.perm) return a.perm < b.perm ? -1 : 1;
  for (size_t i = 0; i < a.blocks.size(); ++i) {
    int c = Matrix::cmp(a.blocks[i], b.blocks[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::optional<MonomialPattern> monomial_pattern(const Matrix& a, const Decomposition& d) {
  if (d.partial) raise(ErrorKind::InvalidDecomposition, "pattern needs a total decomposition");
  const FieldPtr& f = a.field();
  const int n = d.ambient_dim();
  const int r = static_cast<int>(d.pieces.size());
  MonomialPattern pat;
  pat.perm.assign(r, -1);
  std::vector<bool> hit(r, false);
  for (int j = 0; j < r; ++j) {
    const Subspace& vj = d.pieces[j];
    // Images of the basis vectors of V_j.
    Matrix images(f, n, vj.dim());
    for (int i = 0; i < vj.dim(); ++i) {
      Matrix v(f, n, 1);
      for (int c = 0; c < n; ++c) v.at(c, 0) = vj.basis().at(i, c);
      Matrix img = a * v;
      for (int c = 0; c < n; ++c) images.at(c, i) = img.at(c, 0);
    }
    int target = -1;
    for (int k = 0; k < r; ++k) {
      bool inside = true;
      for (int i = 0; i < vj.dim() && inside; ++i)
        inside = d.pieces[k].contains_vector(images.submatrix(0, i, n, 1));
      if (inside) {
        target = k;
        break;
      }
    }
    if (target < 0) return std::nullopt;
    if (hit[target]) raise(ErrorKind::Internal, "pattern: two pieces map into one");
    hit[target] = true;
    pat.perm[j] = target;
    // Coordinate block V_j -> V_target, projectively normalized.
    Matrix bt = d.pieces[target].basis().transpose();
    auto x = solve(bt, images);
    if (!x) raise(ErrorKind::Internal, "pattern: image coordinates unsolvable");
    FieldElement pivot = FieldElement::zero(f);
    for (int i = 0; i < x->rows() && pivot.is_zero(); ++i)
      for (int c = 0; c < x->cols() && pivot.is_zero(); ++c)
        if (!x->at(i, c).is_zero()) pivot = x->at(i, c);
    if (pivot.is_zero()) raise(ErrorKind::Internal, "pattern: zero block");
    pat.blocks.push_back(x->scaled(pivot.inverse()));
  }
  return pat;
}

const char* refutation_kind_name(RefutationKind k) {
  switch (k) {
    case RefutationKind::NonDiagonalizable: return "NonDiagonalizable";
    case RefutationKind::NotPowerSplitting: return "NotPowerSplitting";
    case RefutationKind::IncompatibleSteadyPair: return "IncompatibleSteadyPair";
  }
  return "Unknown";
}

Integer default_bfs_node_cap(int dim, int field_degree) {
  // |GL_n(F_3)| with n = dim * field_degree (Minkowski-style bound on finite
  // subgroups); diagnostic only.
  int n = dim * field_degree;
  Integer order(1), pn;
  mpz_ui_pow_ui(pn.get_mpz_t(), 3, static_cast<unsigned long>(n));
  Integer pi(1);
  for (int i = 0; i < n; ++i) {
    order *= (pn - pi);
    pi *= 3;
  }
  return order;
}

namespace {

struct ScreenInfo {
  bool diagonalizable = false;
  std::optional<unsigned long> power_split;
  std::optional<unsigned long> steady_exp;
};

ScreenInfo screen_matrix(const Matrix& m) {
  ScreenInfo info;
  info.diagonalizable = is_diagonalizable(m);
  if (!info.diagonalizable) return info;
  info.power_split = power_splitting_exponent(m);
  if (!info.power_split) return info;
  info.steady_exp = steady_exponent(m);
  return info;
}

Word repeated_word(const Word& w, unsigned long times) {
  Word out;
  out.reserve(w.size() * times);
  for (unsigned long i = 0; i < times; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

struct Engine {
  const GroupInput& g;
  GroupDecConfig cfg;
  std::vector<WordMatrix> steadies;
  Decomposition decomp;
  std::optional<RefutationWitness> refutation;

  explicit Engine(const GroupInput& gi, GroupDecConfig c) : g(gi), cfg(std::move(c)) {
    decomp = Decomposition::single_full(g.field, g.dim);
  }

  // Rebuilds the joint eigenspace decomposition from the steady list.
  // Returns false (setting `refutation`) on a partial refinement.
  bool rebuild_decomposition() {
    decomp = Decomposition::single_full(g.field, g.dim);
    const WordMatrix* prev = nullptr;
    for (const auto& s : steadies) {
      if (!refine_by(s, prev)) return false;
      prev = &s;
    }
    return true;
  }

  bool refine_by(const WordMatrix& s, const WordMatrix* prev) {
    std::vector<Subspace> eig;
    for (auto& [lambda, space] : steady_eigenspaces(s.matrix)) eig.push_back(space);
    Decomposition next = refine_decomposition(decomp, eig);
    if (next.partial) {
      RefutationWitness w{s.word, s.matrix, RefutationKind::IncompatibleSteadyPair, std::nullopt};
      const WordMatrix& first = prev ? *prev : steadies.front();
      w.pair_detail = IncompatiblePairDetail{first, s, decomp, next};
      refutation = std::move(w);
      return false;
    }
    decomp = std::move(next);
    return true;
  }

  // Phase 2 conjugation saturation. Returns false on refutation.
  bool saturate_conjugates() {
    const int m = static_cast<int>(g.generators.size());
    bool stable = false;
    while (!stable) {
      stable = true;
      for (int t = 0; t < 2 * m && stable; ++t) {
        int gi = t % m;
        bool inv = t >= m;
        Matrix conj = inv ? g.generators[gi].inverse() : g.generators[gi];
        Word conj_word{inv ? -(gi + 1) : (gi + 1)};
        for (size_t si = 0; si < steadies.size() && stable; ++si) {
          Matrix s2 = conj * steadies[si].matrix * conj.inverse();
          Word w2 = conj_word;
          w2.insert(w2.end(), steadies[si].word.begin(), steadies[si].word.end());
          Word wi = inverse_word(conj_word);
          w2.insert(w2.end(), wi.begin(), wi.end());
          size_t before = decomp.pieces.size();
          const WordMatrix* prev = steadies.empty() ? nullptr : &steadies.back();
          WordMatrix cand{w2, s2};
          if (!refine_by(cand, prev)) return false;
          if (decomp.pieces.size() > before) {
            steadies.push_back(std::move(cand));
            stable = false;  // restart the sweep
          }
        }
      }
    }
    return true;
  }

  // Screens one BFS word. Outcomes: nullopt = passed; refutation set = hard
  // failure; returns true when a new steady was recorded (re-enter Phase 1).
  bool screen_or_fail(const Word& w, const Matrix& m, bool& new_steady) {
    new_steady = false;
    ScreenInfo info = screen_matrix(m);
    if (!info.diagonalizable) {
      refutation = RefutationWitness{w, m, RefutationKind::NonDiagonalizable, std::nullopt};
      return false;
    }
    if (!info.power_split) {
      refutation = RefutationWitness{w, m, RefutationKind::NotPowerSplitting, std::nullopt};
      return false;
    }
    unsigned long n = *info.steady_exp;
    Matrix s = m.pow(Integer(n));
    bool scalar_everywhere = true;
    for (const auto& piece : decomp.pieces)
      if (!scalar_on_piece(s, piece)) {
        scalar_everywhere = false;
        break;
      }
    if (!scalar_everywhere) {
      steadies.push_back(WordMatrix{repeated_word(w, n), s});
      new_steady = true;
    }
    return true;
  }

  // Phase 3: pattern BFS. Returns 1 = certificate ready, 0 = refutation,
  // 2 = new steady found (restart).
  int pattern_bfs(std::vector<WordMatrix>& reps) {
    Integer cap = cfg.bfs_node_cap ? *cfg.bfs_node_cap
                                   : default_bfs_node_cap(g.dim, g.field->degree());
    std::map<MonomialPattern, int> seen;
    reps.clear();
    Matrix id = Matrix::identity(g.field, g.dim);
    auto idpat = monomial_pattern(id, decomp);
    if (!idpat) raise(ErrorKind::Internal, "identity has no pattern");
    seen.emplace(*idpat, 0);
    reps.push_back(WordMatrix{Word{}, id});
    for (size_t qi = 0; qi < reps.size(); ++qi) {
      // Copy: reps grows while iterating.
      Word base_word = reps[qi].word;
      Matrix base = reps[qi].matrix;
      for (int t = 0; t < static_cast<int>(g.generators.size()); ++t) {
        Matrix m = g.generators[t] * base;
        Word w{t + 1};
        w.insert(w.end(), base_word.begin(), base_word.end());
        bool new_steady = false;
        if (!screen_or_fail(w, m, new_steady)) return 0;
        if (new_steady) return 2;
        auto pat = monomial_pattern(m, decomp);
        if (!pat) raise(ErrorKind::Internal, "stable sweep left a generator product without pattern");
        if (seen.find(*pat) == seen.end()) {
          if (Integer(static_cast<unsigned long>(reps.size()) + 1) > cap)
            raise(ErrorKind::SearchBudgetExceeded, "BFS node cap reached");
          seen.emplace(*pat, static_cast<int>(reps.size()));
          reps.push_back(WordMatrix{w, m});
        }
      }
    }
    return 1;
  }

  GroupDecision run() {
    // Phase 0: per-generator screening.
    for (int t = 0; t < static_cast<int>(g.generators.size()); ++t) {
      const Matrix& gen = g.generators[t];
      Word w{t + 1};
      ScreenInfo info = screen_matrix(gen);
      if (!info.diagonalizable)
        return RefutationWitness{w, gen, RefutationKind::NonDiagonalizable, std::nullopt};
      if (!info.power_split)
        return RefutationWitness{w, gen, RefutationKind::NotPowerSplitting, std::nullopt};
      unsigned long n = *info.steady_exp;
      steadies.push_back(WordMatrix{repeated_word(w, n), gen.pow(Integer(n))});
    }
    // Refinement re-entry loop: piece count strictly increases, so at most
    // dim rounds.
    for (int round = 0; round <= g.dim; ++round) {
      if (!rebuild_decomposition()) return *refutation;       // Phase 1
      if (!saturate_conjugates()) return *refutation;         // Phase 2
      std::vector<WordMatrix> reps;
      int res = pattern_bfs(reps);                            // Phase 3
      if (res == 0) return *refutation;
      if (res == 2) continue;  // new steady, re-enter Phase 1
      EpimonomialCertificate cert;
      cert.decomposition = decomp;
      cert.steady_basis = steadies;
      cert.coset_reps = std::move(reps);
      cert.diagonal_index = static_cast<int>(cert.coset_reps.size());
      for (const auto& gen : g.generators) {
        auto pat = monomial_pattern(gen, decomp);
        if (!pat) raise(ErrorKind::Internal, "generator lost its pattern");
        cert.permutation_images.push_back(pat->perm);
      }
      return cert;
    }
    raise(ErrorKind::Internal, "refinement did not stabilize within dimension bound");
  }
};

}  // namespace

GroupDecision decide_virtually_diagonalizable(const GroupInput& g, const GroupDecConfig& cfg) {
  validate_group_input(g);
  Engine e(g, cfg);
  return e.run();
}

bool diagonal_membership(const Matrix& a, const EpimonomialCertificate& cert) {
  for (const auto& piece : cert.decomposition.pieces)
    if (!scalar_on_piece(a, piece)) return false;
  return true;
}

MonomialLift monomial_lift(const GroupInput& g, const EpimonomialCertificate& cert,
                           const std::vector<Matrix>* piece_bases) {
  validate_group_input(g);
  const FieldPtr& f = g.field;
  const int d = g.dim;
  const int n = cert.diagonal_index;
  const int r = static_cast<int>(cert.decomposition.pieces.size());
  if (n != static_cast<int>(cert.coset_reps.size()))
    raise(ErrorKind::InvalidCertificate, "diagonal index mismatch");
  // Bases e_{jk} per piece: rows of the given matrices (default: echelon).
  std::vector<Matrix> bases;
  for (int j = 0; j < r; ++j) {
    Matrix b = piece_bases ? (*piece_bases)[j] : cert.decomposition.pieces[j].basis();
    if (b.rows() != cert.decomposition.pieces[j].dim() || b.cols() != d)
      raise(ErrorKind::InvalidCertificate, "piece basis shape mismatch");
    bases.push_back(b);
  }
  // Index layout: coset-major, then piece, then vector.
  std::vector<int> piece_offset(r, 0);
  {
    int off = 0;
    for (int j = 0; j < r; ++j) {
      piece_offset[j] = off;
      off += bases[j].rows();
    }
  }
  auto index_of = [&](int coset, int piece, int k) {
    return coset * d + piece_offset[piece] + k;
  };
  // Patterns of the coset representatives for the closure lookups.
  std::vector<MonomialPattern> rep_patterns;
  for (const auto& rep : cert.coset_reps) {
    auto p = monomial_pattern(rep.matrix, cert.decomposition);
    if (!p) raise(ErrorKind::InvalidCertificate, "coset representative without pattern");
    rep_patterns.push_back(*p);
  }
  const int total = d * n;
  MonomialLift out{std::vector<Matrix>(), Matrix(f, d, total)};
  // Epimorphism Psi: column (i,j,k) = A_i * e_{jk}.
  for (int i = 0; i < n; ++i) {
    const Matrix& ai = cert.coset_reps[i].matrix;
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < bases[j].rows(); ++k) {
        Matrix e(f, d, 1);
        for (int c = 0; c < d; ++c) e.at(c, 0) = bases[j].at(k, c);
        Matrix col = ai * e;
        for (int c = 0; c < d; ++c) out.epimorphism.at(c, index_of(i, j, k)) = col.at(c, 0);
      }
  }
  for (const auto& gen : g.generators) {
    Matrix lifted(f, total, total);
    for (int i = 0; i < n; ++i) {
      Matrix b = gen * cert.coset_reps[i].matrix;
      auto pat = monomial_pattern(b, cert.decomposition);
      if (!pat) raise(ErrorKind::InvalidCertificate, "product without pattern");
      int target = -1;
      for (int i2 = 0; i2 < n && target < 0; ++i2)
        if (rep_patterns[i2] == *pat) target = i2;
      if (target < 0) raise(ErrorKind::InvalidCertificate, "coset table not closed");
      Matrix c = cert.coset_reps[target].matrix.inverse() * b;
      for (int j = 0; j < r; ++j) {
        auto lambda = scalar_on_piece(c, cert.decomposition.pieces[j]);
        if (!lambda) raise(ErrorKind::InvalidCertificate, "coset defect is not diagonal");
        for (int k = 0; k < bases[j].rows(); ++k)
          lifted.at(index_of(target, j, k), index_of(i, j, k)) = *lambda;
      }
    }
    out.lifted.push_back(std::move(lifted));
  }
  // Equivariance check: Psi * lifted = gen * Psi, exactly.
  for (size_t t = 0; t < g.generators.size(); ++t)
    if (out.epimorphism * out.lifted[t] != g.generators[t] * out.epimorphism)
      raise(ErrorKind::Internal, "monomial lift equivariance failed");
  return out;
}

bool verify_certificate(const GroupInput& g, const EpimonomialCertificate& cert) {
  try {
    check_direct_sum(cert.decomposition);
    if (cert.decomposition.ambient_dim() != g.dim) return false;
    if (cert.diagonal_index != static_cast<int>(cert.coset_reps.size())) return false;
    if (cert.coset_reps.empty() || !cert.coset_reps[0].word.empty() ||
        !cert.coset_reps[0].matrix.is_identity())
      return false;
    // Steady basis: words evaluate, matrices are steady and scalar on pieces,
    // and their joint eigenspaces reproduce the decomposition.
    std::vector<Matrix> steady_matrices;
    for (const auto& s : cert.steady_basis) {
      if (evaluate_word(g.generators, s.word) != s.matrix) return false;
      if (!is_steady(s.matrix)) return false;
      for (const auto& piece : cert.decomposition.pieces)
        if (!scalar_on_piece(s.matrix, piece)) return false;
      steady_matrices.push_back(s.matrix);
    }
    if (!(joint_eigenspace_decomposition(steady_matrices) == cert.decomposition)) return false;
    // Generators: patterns exist and match the stored permutations.
    if (cert.permutation_images.size() != g.generators.size()) return false;
    for (size_t t = 0; t < g.generators.size(); ++t) {
      auto pat = monomial_pattern(g.generators[t], cert.decomposition);
      if (!pat || pat->perm != cert.permutation_images[t]) return false;
    }
    // Coset representatives: distinct patterns, correct words, closed table
    // with diagonal defects.
    std::vector<MonomialPattern> pats;
    for (const auto& rep : cert.coset_reps) {
      if (evaluate_word(g.generators, rep.word) != rep.matrix) return false;
      auto p = monomial_pattern(rep.matrix, cert.decomposition);
      if (!p) return false;
      for (const auto& q : pats)
        if (q == *p) return false;
      pats.push_back(*p);
    }
    for (const auto& gen : g.generators)
      for (size_t i = 0; i < cert.coset_reps.size(); ++i) {
        Matrix b = gen * cert.coset_reps[i].matrix;
        auto p = monomial_pattern(b, cert.decomposition);
        if (!p) return false;
        int target = -1;
        for (size_t i2 = 0; i2 < pats.size(); ++i2)
          if (pats[i2] == *p) {
            target = static_cast<int>(i2);
            break;
          }
        if (target < 0) return false;
        Matrix defect = cert.coset_reps[target].matrix.inverse() * b;
        if (!diagonal_membership(defect, cert)) return false;
      }
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool verify_refutation(const GroupInput& g, const RefutationWitness& w) {
  try {
    if (evaluate_word(g.generators, w.word) != w.matrix) return false;
    switch (w.kind) {
      case RefutationKind::NonDiagonalizable:
        return !is_diagonalizable(w.matrix);
      case RefutationKind::NotPowerSplitting:
        return !power_splitting_exponent(w.matrix).has_value();
      case RefutationKind::IncompatibleSteadyPair: {
        if (!w.pair_detail) return false;
        const auto& d = *w.pair_detail;
        if (evaluate_word(g.generators, d.first_steady.word) != d.first_steady.matrix) return false;
        if (evaluate_word(g.generators, d.second_steady.word) != d.second_steady.matrix) return false;
        if (!is_steady(d.first_steady.matrix) || !is_steady(d.second_steady.matrix)) return false;
        std::vector<Subspace> eig;
        for (auto& [lambda, space] : steady_eigenspaces(d.second_steady.matrix)) eig.push_back(space);
        Decomposition refined = refine_decomposition(d.prior, eig);
        if (!refined.partial) return false;
        return refined == d.partial;
      }
    }
    return false;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace ambra
