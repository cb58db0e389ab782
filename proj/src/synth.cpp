#include "ambra/synth.hpp"

#include <algorithm>
#include <set>

#include "ambra/error.hpp"

namespace ambra {

const char* series_class_name(SeriesClass c) {
  switch (c) {
    case SeriesClass::FinitelyAmbiguousEquivalent: return "FinitelyAmbiguousEquivalent";
    case SeriesClass::PolynomiallyAmbiguousEquivalent: return "PolynomiallyAmbiguousEquivalent";
    case SeriesClass::ExponentialOnly: return "ExponentialOnly";
  }
  return "Unknown";
}

namespace {

GroupInput transition_group(const LinRep& rep) {
  GroupInput g;
  g.field = rep.field;
  g.dim = rep.dim;
  for (const auto& x : rep.alphabet) g.generators.push_back(rep.transition(x));
  return g;
}

}  // namespace

LinRep monomialize(const LinRep& rep, const EpimonomialCertificate& cert) {
  validate_linrep(rep);
  if (!is_invertible(rep)) raise(ErrorKind::NotInvertible, "monomialize needs invertible transitions");
  if (minimize(rep).dim != rep.dim) raise(ErrorKind::NotMinimal, "monomialize needs a minimal input");
  const FieldPtr& f = rep.field;
  const int d = rep.dim;
  const int r = static_cast<int>(cert.decomposition.pieces.size());
  // Decompose v into piece components: solve over the stacked piece bases.
  Matrix stacked(f, d, d);
  {
    int row = 0;
    for (const auto& piece : cert.decomposition.pieces)
      for (int i = 0; i < piece.dim(); ++i, ++row)
        for (int j = 0; j < d; ++j) stacked.at(row, j) = piece.basis().at(i, j);
  }
  auto coords = solve(stacked.transpose(), rep.final);
  if (!coords) raise(ErrorKind::InvalidCertificate, "decomposition does not span");
  // Piece bases aligned with the final vector: e_{j1} = v_j when v_j != 0.
  std::vector<Matrix> bases;
  std::vector<bool> vj_nonzero(r, false);
  {
    int row = 0;
    for (int j = 0; j < r; ++j) {
      const Subspace& piece = cert.decomposition.pieces[j];
      const int k = piece.dim();
      Matrix vj(f, 1, d);
      for (int i = 0; i < k; ++i) {
        const FieldElement& c = coords->at(row + i, 0);
        if (c.is_zero()) continue;
        for (int col = 0; col < d; ++col)
          vj.at(0, col) = vj.at(0, col) + piece.basis().at(i, col) * c;
      }
      bool nz = !vj.is_zero();
      vj_nonzero[j] = nz;
      if (!nz) {
        bases.push_back(piece.basis());
      } else {
        // v_j first, completed by echelon rows that stay independent.
        Matrix b(f, k, d);
        for (int col = 0; col < d; ++col) b.at(0, col) = vj.at(0, col);
        int filled = 1;
        for (int i = 0; i < k && filled < k; ++i) {
          Matrix cand(f, filled + 1, d);
          for (int rr = 0; rr < filled; ++rr)
            for (int col = 0; col < d; ++col) cand.at(rr, col) = b.at(rr, col);
          for (int col = 0; col < d; ++col) cand.at(filled, col) = piece.basis().at(i, col);
          if (rref(cand).rank == filled + 1) {
            for (int col = 0; col < d; ++col) b.at(filled, col) = piece.basis().at(i, col);
            ++filled;
          }
        }
        if (filled != k) raise(ErrorKind::Internal, "piece basis completion failed");
        bases.push_back(b);
      }
      row += k;
    }
  }
  GroupInput g = transition_group(rep);
  MonomialLift lift = monomial_lift(g, cert, &bases);
  const int n = cert.diagonal_index;
  const int total = d * n;
  LinRep out;
  out.field = f;
  out.alphabet = rep.alphabet;
  out.dim = total;
  out.initial = rep.initial * lift.epimorphism;
  out.final = Matrix(f, total, 1);
  {
    // Identity-coset block: coordinate 1 at the first vector of each piece
    // with a nonzero final component (the basis starts with v_j there).
    std::vector<int> piece_offset(r, 0);
    int off = 0;
    for (int j = 0; j < r; ++j) {
      piece_offset[j] = off;
      off += cert.decomposition.pieces[j].dim();
    }
    for (int j = 0; j < r; ++j)
      if (vj_nonzero[j]) out.final.at(piece_offset[j], 0) = FieldElement::one(f);
  }
  if (lift.epimorphism * out.final != rep.final)
    raise(ErrorKind::Internal, "final vector lift mismatch");
  for (size_t t = 0; t < rep.alphabet.size(); ++t)
    out.transitions.emplace(rep.alphabet[t], lift.lifted[t]);
  validate_linrep(out);
  return out;
}

int ambiguity_degree(const LinRep& rep) {
  validate_linrep(rep);
  const int d = rep.dim;
  if (d == 0) return 0;
  // Column -> row support permutations of the monomial transitions.
  std::vector<std::vector<int>> letter_perm;
  for (const auto& x : rep.alphabet) {
    const Matrix& m = rep.transition(x);
    std::vector<int> perm(d, -1);
    for (int q = 0; q < d; ++q) {
      int hits = 0;
      for (int p = 0; p < d; ++p)
        if (!m.at(p, q).is_zero()) {
          perm[q] = p;
          ++hits;
        }
      if (hits != 1) raise(ErrorKind::NotMonomial, "transition is not monomial");
    }
    std::vector<bool> seen(d, false);
    for (int q = 0; q < d; ++q) {
      if (seen[perm[q]]) raise(ErrorKind::NotMonomial, "transition is not monomial");
      seen[perm[q]] = true;
    }
    letter_perm.push_back(std::move(perm));
  }
  // Closure of the generated permutation group (includes the empty word).
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  std::vector<int> id(d);
  for (int i = 0; i < d; ++i) id[i] = i;
  seen.insert(id);
  queue.push_back(id);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& g : letter_perm) {
      std::vector<int> comp(d);
      for (int i = 0; i < d; ++i) comp[i] = g[queue[qi][i]];
      if (seen.insert(comp).second) queue.push_back(comp);
    }
  }
  int best = 0;
  for (const auto& perm : queue) {
    int overlap = 0;
    for (int q = 0; q < d; ++q) {
      if (rep.final.at(q, 0).is_zero()) continue;
      if (!rep.initial.at(0, perm[q]).is_zero()) ++overlap;
    }
    best = std::max(best, overlap);
  }
  return best;
}

LinRep block_monomialize(const LinRep& rep, const SpectrumCertificate& cert) {
  validate_linrep(rep);
  if (!is_invertible(rep))
    raise(ErrorKind::NotInvertible, "block_monomialize needs invertible transitions");
  const FieldPtr& f = rep.field;
  const int d = rep.dim;
  const BlockMonomialLift& lift = cert.synthesized;
  if (lift.lifted.size() != rep.alphabet.size())
    raise(ErrorKind::InvalidCertificate, "lift does not match the alphabet");
  const int n = static_cast<int>(lift.coset_reps.size());
  const int total = n * d;
  const int nblocks = static_cast<int>(lift.k_flag.size());
  LinRep out;
  out.field = f;
  out.alphabet = rep.alphabet;
  out.dim = total;
  out.initial = rep.initial * lift.epimorphism;
  out.final = Matrix(f, total, 1);
  // Preimage of v in the identity coset: vtilde = U^-1 v scattered into the
  // block-major layout.
  Matrix vt = lift.basis.inverse() * rep.final;
  for (int t = 0; t < nblocks; ++t)
    for (int w = 0; w < lift.block_offsets[t + 1] - lift.block_offsets[t]; ++w)
      out.final.at(lift.lift_index(t, 0, w), 0) = vt.at(lift.block_offsets[t] + w, 0);
  if (lift.epimorphism * out.final != rep.final)
    raise(ErrorKind::Internal, "block lift final vector mismatch");
  for (size_t t = 0; t < rep.alphabet.size(); ++t)
    out.transitions.emplace(rep.alphabet[t], lift.lifted[t]);
  validate_linrep(out);
  return out;
}

SeriesClassification classify_series(const LinRep& rep, const SynthConfig& cfg) {
  validate_linrep(rep);
  LinRep minimal = minimize(rep);
  if (minimal.dim == 0) {
    // Zero series: 0-ambiguous, synthesized by the empty automaton.
    SeriesClassification out{SeriesClass::FinitelyAmbiguousEquivalent, minimal, std::nullopt,
                             std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    AmbiguityCertificate cert;
    cert.minimal_m = 0;
    cert.synthesized = minimal;
    cert.group_certificate.diagonal_index = 0;
    out.finite = std::move(cert);
    return out;
  }
  if (!is_invertible(minimal))
    raise(ErrorKind::OutOfScope, "minimal representation has a singular transition");
  GroupInput g = transition_group(minimal);
  auto decision = decide_virtually_diagonalizable(g, cfg.groupdec);
  if (std::holds_alternative<EpimonomialCertificate>(decision)) {
    const auto& cert = std::get<EpimonomialCertificate>(decision);
    AmbiguityCertificate amb;
    amb.group_certificate = cert;
    amb.synthesized = monomialize(minimal, cert);
    amb.minimal_m = ambiguity_degree(amb.synthesized);
    // Gamma: the multiplicative group generated by the synthesized weights.
    std::set<FieldElement> gamma;
    auto add = [&](const FieldElement& x) {
      if (!x.is_zero()) gamma.insert(x);
    };
    for (int i = 0; i < amb.synthesized.dim; ++i) {
      add(amb.synthesized.initial.at(0, i));
      add(amb.synthesized.final.at(i, 0));
    }
    for (const auto& x : amb.synthesized.alphabet) {
      const Matrix& m = amb.synthesized.transition(x);
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) add(m.at(i, j));
    }
    amb.gamma_generators.assign(gamma.begin(), gamma.end());
    SeriesClassification out{SeriesClass::FinitelyAmbiguousEquivalent, minimal, std::move(amb),
                             std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    return out;
  }
  RefutationWitness group_ref = std::get<RefutationWitness>(decision);
  auto spec = decide_fg_spectrum(g, cfg.repsplit, cfg.groupdec);
  if (std::holds_alternative<SpectrumCertificate>(spec)) {
    SeriesClassification out{SeriesClass::PolynomiallyAmbiguousEquivalent, minimal, std::nullopt,
                             std::nullopt, std::nullopt, std::move(group_ref), std::nullopt};
    out.spectrum = std::get<SpectrumCertificate>(spec);
    out.block_synthesized = block_monomialize(minimal, *out.spectrum);
    return out;
  }
  SeriesClassification out{SeriesClass::ExponentialOnly, minimal, std::nullopt,
                           std::nullopt, std::nullopt, std::move(group_ref),
                           std::get<SpectrumRefutation>(spec)};
  return out;
}

LrsClassification lrs_classify(const Matrix& u, const Matrix& a, const Matrix& v,
                               const SynthConfig& cfg) {
  if (!a.is_square()) raise(ErrorKind::NonSquare, "lrs_classify");
  if (!a.invertible()) raise(ErrorKind::Singular, "lrs_classify needs an invertible matrix");
  LinRep rep;
  rep.field = a.field();
  rep.alphabet = {"x"};
  rep.dim = a.rows();
  rep.initial = u;
  rep.final = v;
  rep.transitions.emplace("x", a);
  validate_linrep(rep);
  LrsClassification out{classify_series(rep, cfg), std::nullopt};
  if (out.base.cls != SeriesClass::FinitelyAmbiguousEquivalent) {
    SplittingFieldResult sf = splitting_field(charpoly(a));
    std::vector<Rational> mp = sf.field->min_poly();
    out.improvement_min_poly = Polynomial::from_rationals(NumberField::rationals(), mp);
  }
  return out;
}

}  // namespace ambra
