#include "ambra/wfa.hpp"

#include <algorithm>
#include <set>

#include "ambra/error.hpp"

namespace ambra {

const Matrix& LinRep::transition(const std::string& letter) const {
  auto it = transitions.find(letter);
  if (it == transitions.end()) raise(ErrorKind::UnknownLetter, "no transition for '" + letter + "'");
  return it->second;
}

void validate_linrep(const LinRep& rep) {
  if (rep.initial.rows() != 1 || rep.initial.cols() != rep.dim)
    raise(ErrorKind::DimensionMismatch, "initial vector shape");
  if (rep.final.rows() != rep.dim || rep.final.cols() != 1)
    raise(ErrorKind::DimensionMismatch, "final vector shape");
  std::set<std::string> seen;
  for (const auto& a : rep.alphabet) {
    if (!seen.insert(a).second) raise(ErrorKind::ParseError, "duplicate letter '" + a + "'");
    const Matrix& m = rep.transition(a);
    if (m.rows() != rep.dim || m.cols() != rep.dim)
      raise(ErrorKind::DimensionMismatch, "transition shape for '" + a + "'");
    if (!same_field(m.field(), rep.field)) raise(ErrorKind::FieldMismatch, "transition field");
  }
  if (rep.transitions.size() != rep.alphabet.size())
    raise(ErrorKind::ParseError, "transitions do not match the alphabet");
}

LetterWord parse_word(const std::string& s, const std::vector<std::string>& alphabet) {
  LetterWord w;
  if (s.find(',') != std::string::npos) {
    size_t pos = 0;
    while (pos <= s.size()) {
      size_t next = s.find(',', pos);
      if (next == std::string::npos) next = s.size();
      std::string letter = s.substr(pos, next - pos);
      if (!letter.empty()) w.push_back(letter);
      pos = next + 1;
    }
  } else {
    for (char c : s) w.emplace_back(1, c);
  }
  for (const auto& letter : w)
    if (std::find(alphabet.begin(), alphabet.end(), letter) == alphabet.end())
      raise(ErrorKind::UnknownLetter, "letter '" + letter + "' not in alphabet");
  return w;
}

FieldElement evaluate(const LinRep& rep, const LetterWord& word) {
  if (rep.dim == 0) return FieldElement::zero(rep.field);
  Matrix acc = rep.initial;
  for (const auto& x : word) acc = acc * rep.transition(x);
  Matrix out = acc * rep.final;
  return out.at(0, 0);
}

Integer count_runs(const LinRep& rep, const LetterWord& word) {
  if (rep.dim == 0) return 0;
  const int d = rep.dim;
  // Integer path counting on the support digraph.
  std::vector<Integer> vec(d);
  for (int i = 0; i < d; ++i) vec[i] = rep.initial.at(0, i).is_zero() ? 0 : 1;
  for (const auto& x : word) {
    const Matrix& m = rep.transition(x);
    std::vector<Integer> next(d, Integer(0));
    for (int p = 0; p < d; ++p) {
      if (vec[p] == 0) continue;
      for (int q = 0; q < d; ++q)
        if (!m.at(p, q).is_zero()) next[q] += vec[p];
    }
    vec = std::move(next);
  }
  Integer total(0);
  for (int i = 0; i < d; ++i)
    if (!rep.final.at(i, 0).is_zero()) total += vec[i];
  return total;
}

namespace {

std::vector<std::vector<std::vector<bool>>> support_adjacency(const LinRep& rep) {
  std::vector<std::vector<std::vector<bool>>> adj;
  for (const auto& x : rep.alphabet) {
    const Matrix& m = rep.transition(x);
    std::vector<std::vector<bool>> a(rep.dim, std::vector<bool>(rep.dim, false));
    for (int i = 0; i < rep.dim; ++i)
      for (int j = 0; j < rep.dim; ++j) a[i][j] = !m.at(i, j).is_zero();
    adj.push_back(std::move(a));
  }
  return adj;
}

LinRep project_states(const LinRep& rep, const std::vector<int>& keep) {
  LinRep out;
  out.field = rep.field;
  out.alphabet = rep.alphabet;
  out.dim = static_cast<int>(keep.size());
  out.initial = Matrix(rep.field, 1, out.dim);
  out.final = Matrix(rep.field, out.dim, 1);
  for (int i = 0; i < out.dim; ++i) {
    out.initial.at(0, i) = rep.initial.at(0, keep[i]);
    out.final.at(i, 0) = rep.final.at(keep[i], 0);
  }
  for (const auto& x : rep.alphabet) {
    const Matrix& m = rep.transition(x);
    Matrix p(rep.field, out.dim, out.dim);
    for (int i = 0; i < out.dim; ++i)
      for (int j = 0; j < out.dim; ++j) p.at(i, j) = m.at(keep[i], keep[j]);
    out.transitions.emplace(x, std::move(p));
  }
  return out;
}

}  // namespace

LinRep trim(const LinRep& rep) {
  if (rep.dim == 0) return rep;
  auto adj = support_adjacency(rep);
  const int d = rep.dim;
  std::vector<bool> fwd(d, false), bwd(d, false);
  std::vector<int> queue;
  for (int i = 0; i < d; ++i)
    if (!rep.initial.at(0, i).is_zero()) {
      fwd[i] = true;
      queue.push_back(i);
    }
  for (size_t qi = 0; qi < queue.size(); ++qi)
    for (const auto& a : adj)
      for (int j = 0; j < d; ++j)
        if (a[queue[qi]][j] && !fwd[j]) {
          fwd[j] = true;
          queue.push_back(j);
        }
  queue.clear();
  for (int i = 0; i < d; ++i)
    if (!rep.final.at(i, 0).is_zero()) {
      bwd[i] = true;
      queue.push_back(i);
    }
  for (size_t qi = 0; qi < queue.size(); ++qi)
    for (const auto& a : adj)
      for (int j = 0; j < d; ++j)
        if (a[j][queue[qi]] && !bwd[j]) {
          bwd[j] = true;
          queue.push_back(j);
        }
  std::vector<int> keep;
  for (int i = 0; i < d; ++i)
    if (fwd[i] && bwd[i]) keep.push_back(i);
  if (static_cast<int>(keep.size()) == d) return rep;
  return project_states(rep, keep);
}

LinRep minimize(const LinRep& rep) {
  validate_linrep(rep);
  const FieldPtr& f = rep.field;
  auto zero_rep = [&]() {
    LinRep z;
    z.field = f;
    z.alphabet = rep.alphabet;
    z.dim = 0;
    z.initial = Matrix(f, 1, 0);
    z.final = Matrix(f, 0, 1);
    for (const auto& x : rep.alphabet) z.transitions.emplace(x, Matrix(f, 0, 0));
    return z;
  };
  if (rep.dim == 0) return zero_rep();

  // Forward saturation: BFS over words by length, letters in alphabet order.
  std::vector<Matrix> fbasis;  // row vectors u mu(w)
  {
    Matrix u = rep.initial;
    bool u_zero = u.is_zero();
    if (!u_zero) fbasis.push_back(u);
    for (size_t qi = 0; qi < fbasis.size(); ++qi) {
      Matrix cur = fbasis[qi];
      for (const auto& x : rep.alphabet) {
        Matrix cand = cur * rep.transition(x);
        // Independence against the current basis.
        Matrix stacked(f, static_cast<int>(fbasis.size()) + 1, rep.dim);
        for (size_t r = 0; r < fbasis.size(); ++r)
          for (int j = 0; j < rep.dim; ++j) stacked.at(static_cast<int>(r), j) = fbasis[r].at(0, j);
        for (int j = 0; j < rep.dim; ++j)
          stacked.at(static_cast<int>(fbasis.size()), j) = cand.at(0, j);
        if (rref(stacked).rank == static_cast<int>(fbasis.size()) + 1) fbasis.push_back(cand);
      }
    }
  }
  if (fbasis.empty()) return zero_rep();
  const int fdim = static_cast<int>(fbasis.size());
  Matrix fmat(f, fdim, rep.dim);
  for (int r = 0; r < fdim; ++r)
    for (int j = 0; j < rep.dim; ++j) fmat.at(r, j) = fbasis[r].at(0, j);
  Matrix fmat_t = fmat.transpose();
  LinRep fwd;
  fwd.field = f;
  fwd.alphabet = rep.alphabet;
  fwd.dim = fdim;
  fwd.initial = Matrix(f, 1, fdim);
  fwd.initial.at(0, 0) = FieldElement::one(f);
  fwd.final = fmat * rep.final;
  for (const auto& x : rep.alphabet) {
    Matrix img = fmat * rep.transition(x);  // rows: basis_i * mu(x)
    auto coords = solve(fmat_t, img.transpose());
    if (!coords) raise(ErrorKind::Internal, "forward span not invariant");
    fwd.transitions.emplace(x, coords->transpose());
  }

  // Backward saturation on the forward-reduced representation.
  std::vector<Matrix> bbasis;  // column vectors mu(w) v
  {
    if (!fwd.final.is_zero()) bbasis.push_back(fwd.final);
    for (size_t qi = 0; qi < bbasis.size(); ++qi) {
      Matrix cur = bbasis[qi];
      for (const auto& x : fwd.alphabet) {
        Matrix cand = fwd.transition(x) * cur;
        Matrix stacked(f, static_cast<int>(bbasis.size()) + 1, fdim);
        for (size_t r = 0; r < bbasis.size(); ++r)
          for (int j = 0; j < fdim; ++j) stacked.at(static_cast<int>(r), j) = bbasis[r].at(j, 0);
        for (int j = 0; j < fdim; ++j)
          stacked.at(static_cast<int>(bbasis.size()), j) = cand.at(j, 0);
        if (rref(stacked).rank == static_cast<int>(bbasis.size()) + 1) bbasis.push_back(cand);
      }
    }
  }
  if (bbasis.empty()) return zero_rep();
  const int bdim = static_cast<int>(bbasis.size());
  Matrix bmat(f, fdim, bdim);  // columns = basis vectors
  for (int j = 0; j < bdim; ++j)
    for (int i = 0; i < fdim; ++i) bmat.at(i, j) = bbasis[j].at(i, 0);
  LinRep out;
  out.field = f;
  out.alphabet = rep.alphabet;
  out.dim = bdim;
  out.final = Matrix(f, bdim, 1);
  out.final.at(0, 0) = FieldElement::one(f);
  out.initial = fwd.initial * bmat;
  for (const auto& x : fwd.alphabet) {
    Matrix img = fwd.transition(x) * bmat;  // columns: mu(x) * basis_j
    auto coords = solve(bmat, img);
    if (!coords) raise(ErrorKind::Internal, "backward span not invariant");
    out.transitions.emplace(x, *coords);
  }
  return out;
}

bool equivalent(const LinRep& a, const LinRep& b) {
  if (a.alphabet != b.alphabet) raise(ErrorKind::AlphabetMismatch, "alphabets differ");
  if (!same_field(a.field, b.field)) raise(ErrorKind::FieldMismatch, "fields differ");
  const FieldPtr& f = a.field;
  const int d = a.dim + b.dim;
  // Difference representation: u = (ua | ub), v = (va | -vb), block diagonal.
  Matrix u(f, 1, d), v(f, d, 1);
  for (int i = 0; i < a.dim; ++i) u.at(0, i) = a.initial.at(0, i);
  for (int i = 0; i < b.dim; ++i) u.at(0, a.dim + i) = b.initial.at(0, i);
  for (int i = 0; i < a.dim; ++i) v.at(i, 0) = a.final.at(i, 0);
  for (int i = 0; i < b.dim; ++i) v.at(a.dim + i, 0) = -b.final.at(i, 0);
  std::map<std::string, Matrix> mu;
  for (const auto& x : a.alphabet) {
    Matrix m(f, d, d);
    const Matrix& ma = a.transition(x);
    const Matrix& mb = b.transition(x);
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < a.dim; ++j) m.at(i, j) = ma.at(i, j);
    for (int i = 0; i < b.dim; ++i)
      for (int j = 0; j < b.dim; ++j) m.at(a.dim + i, a.dim + j) = mb.at(i, j);
    mu.emplace(x, std::move(m));
  }
  // Zero series iff every vector in the forward span annihilates v.
  std::vector<Matrix> basis;
  if (!u.is_zero()) basis.push_back(u);
  for (size_t qi = 0; qi < basis.size(); ++qi) {
    Matrix cur = basis[qi];
    for (const auto& x : a.alphabet) {
      Matrix cand = cur * mu.at(x);
      Matrix stacked(f, static_cast<int>(basis.size()) + 1, d);
      for (size_t r = 0; r < basis.size(); ++r)
        for (int j = 0; j < d; ++j) stacked.at(static_cast<int>(r), j) = basis[r].at(0, j);
      for (int j = 0; j < d; ++j) stacked.at(static_cast<int>(basis.size()), j) = cand.at(0, j);
      if (rref(stacked).rank == static_cast<int>(basis.size()) + 1) basis.push_back(cand);
    }
  }
  for (const auto& row : basis)
    if (!(row * v).is_zero()) return false;
  return true;
}

bool is_invertible(const LinRep& rep) {
  for (const auto& x : rep.alphabet)
    if (!rep.transition(x).invertible()) return false;
  return true;
}

const char* ambiguity_class_name(AmbiguityClass c) {
  switch (c) {
    case AmbiguityClass::Deterministic: return "Deterministic";
    case AmbiguityClass::Unambiguous: return "Unambiguous";
    case AmbiguityClass::FinitelyAmbiguous: return "FinitelyAmbiguous";
    case AmbiguityClass::PolynomiallyAmbiguous: return "PolynomiallyAmbiguous";
    case AmbiguityClass::ExponentiallyAmbiguous: return "ExponentiallyAmbiguous";
  }
  return "Unknown";
}

StructuralReport structural_ambiguity(const LinRep& rep0) {
  LinRep rep = trim(rep0);
  StructuralReport out;
  const int d = rep.dim;
  if (d == 0) {
    out.deterministic = true;
    out.unambiguous = true;
    out.cls = AmbiguityClass::Deterministic;
    return out;
  }
  auto adj = support_adjacency(rep);
  const int letters = static_cast<int>(rep.alphabet.size());

  // Deterministic: at most one initial state and one outgoing edge per letter.
  {
    int initials = 0;
    for (int i = 0; i < d; ++i)
      if (!rep.initial.at(0, i).is_zero()) ++initials;
    bool det = initials <= 1;
    for (int a = 0; a < letters && det; ++a)
      for (int p = 0; p < d && det; ++p) {
        int row = 0;
        for (int q = 0; q < d; ++q)
          if (adj[a][p][q]) ++row;
        if (row > 1) det = false;
      }
    out.deterministic = det;
  }

  // Pair graph for unambiguity and EDA.
  auto pid = [d](int p, int q) { return p * d + q; };
  std::vector<std::vector<int>> pair_succ(d * d);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      for (int a = 0; a < letters; ++a)
        for (int p2 = 0; p2 < d; ++p2) {
          if (!adj[a][p][p2]) continue;
          for (int q2 = 0; q2 < d; ++q2)
            if (adj[a][q][q2]) pair_succ[pid(p, q)].push_back(pid(p2, q2));
        }

  // Unambiguous: no useful off-diagonal pair in the product automaton.
  {
    std::vector<bool> reach(d * d, false), coreach(d * d, false);
    std::vector<int> queue;
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        if (!rep.initial.at(0, p).is_zero() && !rep.initial.at(0, q).is_zero()) {
          reach[pid(p, q)] = true;
          queue.push_back(pid(p, q));
        }
    for (size_t qi = 0; qi < queue.size(); ++qi)
      for (int nxt : pair_succ[queue[qi]])
        if (!reach[nxt]) {
          reach[nxt] = true;
          queue.push_back(nxt);
        }
    std::vector<std::vector<int>> pair_pred(d * d);
    for (int s = 0; s < d * d; ++s)
      for (int t : pair_succ[s]) pair_pred[t].push_back(s);
    queue.clear();
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        if (!rep.final.at(p, 0).is_zero() && !rep.final.at(q, 0).is_zero()) {
          coreach[pid(p, q)] = true;
          queue.push_back(pid(p, q));
        }
    for (size_t qi = 0; qi < queue.size(); ++qi)
      for (int prv : pair_pred[queue[qi]])
        if (!coreach[prv]) {
          coreach[prv] = true;
          queue.push_back(prv);
        }
    bool unamb = true;
    for (int p = 0; p < d && unamb; ++p)
      for (int q = 0; q < d && unamb; ++q)
        if (p != q && reach[pid(p, q)] && coreach[pid(p, q)]) unamb = false;
    out.unambiguous = unamb;
  }

  // EDA: some strongly connected component of the pair graph contains both a
  // diagonal and an off-diagonal pair.
  {
    // Tarjan SCC, iterative.
    const int n = d * d;
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
    std::vector<bool> on_stack(n, false);
    int next_index = 0, next_comp = 0;
    for (int start = 0; start < n; ++start) {
      if (index[start] != -1) continue;
      std::vector<std::pair<int, size_t>> call{{start, 0}};
      while (!call.empty()) {
        auto& [v, ei] = call.back();
        if (ei == 0) {
          index[v] = low[v] = next_index++;
          stack.push_back(v);
          on_stack[v] = true;
        }
        bool descended = false;
        while (ei < pair_succ[v].size()) {
          int w = pair_succ[v][ei++];
          if (index[w] == -1) {
            call.emplace_back(w, 0);
            descended = true;
            break;
          }
          if (on_stack[w]) low[v] = std::min(low[v], index[w]);
        }
        if (descended) continue;
        if (low[v] == index[v]) {
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = next_comp;
            if (w == v) break;
          }
          ++next_comp;
        }
        int finished = v;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
      }
    }
    std::vector<bool> has_diag(next_comp, false), has_off(next_comp, false);
    // Only components with an actual cycle matter; a singleton without a self
    // loop is acyclic. Mark components reachable from themselves via an edge.
    std::vector<bool> cyclic(next_comp, false);
    std::vector<int> comp_size(next_comp, 0);
    for (int s = 0; s < n; ++s) ++comp_size[comp[s]];
    for (int s = 0; s < n; ++s)
      for (int t : pair_succ[s])
        if (comp[s] == comp[t] && (comp_size[comp[s]] > 1 || s == t)) cyclic[comp[s]] = true;
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        int c = comp[pid(p, q)];
        if (p == q)
          has_diag[c] = true;
        else
          has_off[c] = true;
      }
    for (int c = 0; c < next_comp; ++c)
      if (cyclic[c] && has_diag[c] && has_off[c]) out.eda = true;
  }

  // IDA: (p,p,q) reaches (p,q,q) in the cubed automaton for some p != q.
  {
    auto tid = [d](int a, int b, int c) { return (a * d + b) * d + c; };
    std::vector<std::vector<int>> tri_succ(d * d * d);
    for (int a2 = 0; a2 < d; ++a2)
      for (int b2 = 0; b2 < d; ++b2)
        for (int c2 = 0; c2 < d; ++c2)
          for (int a = 0; a < letters; ++a)
            for (int a3 = 0; a3 < d; ++a3) {
              if (!adj[a][a2][a3]) continue;
              for (int b3 = 0; b3 < d; ++b3) {
                if (!adj[a][b2][b3]) continue;
                for (int c3 = 0; c3 < d; ++c3)
                  if (adj[a][c2][c3]) tri_succ[tid(a2, b2, c2)].push_back(tid(a3, b3, c3));
              }
            }
    for (int p = 0; p < d && !out.ida; ++p)
      for (int q = 0; q < d && !out.ida; ++q) {
        if (p == q) continue;
        std::vector<bool> seen(d * d * d, false);
        std::vector<int> queue{tid(p, p, q)};
        seen[tid(p, p, q)] = true;
        for (size_t qi = 0; qi < queue.size() && !out.ida; ++qi) {
          if (queue[qi] == tid(p, q, q)) out.ida = true;
          for (int nxt : tri_succ[queue[qi]])
            if (!seen[nxt]) {
              seen[nxt] = true;
              queue.push_back(nxt);
            }
        }
      }
  }

  if (out.eda)
    out.cls = AmbiguityClass::ExponentiallyAmbiguous;
  else if (out.ida)
    out.cls = AmbiguityClass::PolynomiallyAmbiguous;
  else if (out.deterministic)
    out.cls = AmbiguityClass::Deterministic;
  else if (out.unambiguous)
    out.cls = AmbiguityClass::Unambiguous;
  else
    out.cls = AmbiguityClass::FinitelyAmbiguous;
  return out;
}

std::vector<LetterWord> words_up_to(const std::vector<std::string>& alphabet, int max_len) {
  std::vector<LetterWord> out{LetterWord{}};
  size_t level_start = 0;
  for (int len = 1; len <= max_len; ++len) {
    size_t level_end = out.size();
    for (size_t i = level_start; i < level_end; ++i)
      for (const auto& x : alphabet) {
        LetterWord w = out[i];
        w.push_back(x);
        out.push_back(std::move(w));
      }
    level_start = level_end;
  }
  return out;
}

}  // namespace ambra
