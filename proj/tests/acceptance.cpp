// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "ambra/json_io.hpp"
#include "ambra/synth.hpp"

using namespace ambra;

namespace {

const FieldPtr& Q() { return NumberField::rationals(); }

FieldElement qel(long n, long d = 1) { return FieldElement::from_rational(Q(), rat(n, d)); }

Matrix qmat(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Rational>> r;
  for (const auto& row : rows) {
    std::vector<Rational> rr;
    for (long v : row) rr.emplace_back(v);
    r.push_back(std::move(rr));
  }
  return Matrix::from_rationals(Q(), r);
}

LinRep make_rep(const FieldPtr& f, const std::vector<std::string>& alphabet, Matrix u,
                std::vector<Matrix> mats, Matrix v) {
  LinRep rep;
  rep.field = f;
  rep.alphabet = alphabet;
  rep.dim = u.cols();
  rep.initial = std::move(u);
  rep.final = std::move(v);
  for (size_t i = 0; i < alphabet.size(); ++i) rep.transitions.emplace(alphabet[i], mats[i]);
  validate_linrep(rep);
  return rep;
}

struct Checker {
  std::ostringstream log;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "    expectation failed: " << what << "\n";
    }
  }
};

// Weight pool for the random automaton protocols.
const std::vector<Rational> kPool = {rat(1), rat(-1), rat(2), rat(3), rat(1, 2), rat(-2, 3)};

Matrix random_monomial(std::mt19937_64& rng, int d) {
  std::vector<int> perm(d);
  for (int i = 0; i < d; ++i) perm[i] = i;
  for (int i = d - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
  Matrix m(Q(), d, d);
  for (int q = 0; q < d; ++q)
    m.at(perm[q], q) = FieldElement::from_rational(Q(), kPool[rng() % kPool.size()]);
  return m;
}

Matrix random_invertible_integer(std::mt19937_64& rng, int d, long spread = 3) {
  Matrix t(Q(), d, d);
  do {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        t.at(i, j) = qel(static_cast<long>(rng() % (2 * spread + 1)) - spread);
  } while (!t.invertible());
  return t;
}

// Random unimodular integer matrix (integer inverse) via elementary moves.
Matrix random_unimodular(std::mt19937_64& rng, int d) {
  Matrix t = Matrix::identity(Q(), d);
  for (int step = 0; step < 3 * d; ++step) {
    int i = static_cast<int>(rng() % d), j = static_cast<int>(rng() % d);
    if (i == j) continue;
    long c = static_cast<long>(rng() % 5) - 2;
    for (int k = 0; k < d; ++k) t.at(i, k) = t.at(i, k) + t.at(j, k).scaled(Rational(c));
  }
  return t;
}

LinRep conjugated(const LinRep& rep, const Matrix& t) {
  LinRep out;
  out.field = rep.field;
  out.alphabet = rep.alphabet;
  out.dim = rep.dim;
  Matrix tinv = t.inverse();
  out.initial = rep.initial * tinv;
  out.final = t * rep.final;
  for (const auto& x : rep.alphabet) out.transitions.emplace(x, t * rep.transition(x) * tinv);
  return out;
}

// ---------------------------------------------------------------------------

bool criterion1(Checker& c) {
  // Fibonacci dichotomy.
  LinRep fib_q = make_rep(Q(), {"a"}, Matrix::row_vector(Q(), {qel(1), qel(0)}),
                          {qmat({{0, 1}, {1, 1}})}, Matrix::column_vector(Q(), {qel(0), qel(1)}));
  SeriesClassification cq = classify_series(fib_q);
  c.expect(cq.cls == SeriesClass::ExponentialOnly, "Fibonacci over Q is ExponentialOnly");
  c.expect(cq.group_refutation && cq.group_refutation->kind == RefutationKind::NotPowerSplitting &&
               word_to_string(cq.group_refutation->word) == "g1",
           "group refutation is NotPowerSplitting at g1");
  c.expect(cq.spectrum_refutation &&
               cq.spectrum_refutation->witness.kind == RefutationKind::NotPowerSplitting,
           "polynomial target also refuted by NotPowerSplitting");

  FieldPtr k5 = NumberField::make_trusted({Rational(-5), Rational(0), Rational(1)});
  auto lift = [&](long v) { return FieldElement::from_rational(k5, Rational(v)); };
  Matrix a5(k5, 2, 2, {lift(0), lift(1), lift(1), lift(1)});
  LinRep fib_l = make_rep(k5, {"a"}, Matrix::row_vector(k5, {lift(1), lift(0)}), {a5},
                          Matrix::column_vector(k5, {lift(0), lift(1)}));
  SeriesClassification cl = classify_series(fib_l);
  c.expect(cl.cls == SeriesClass::FinitelyAmbiguousEquivalent,
           "Fibonacci over Q(sqrt5) is FinitelyAmbiguousEquivalent");
  if (cl.finite) {
    c.expect(cl.finite->minimal_m == 2, "minimal_M = 2");
    const LinRep& synth = cl.finite->synthesized;
    c.expect(synth.dim == 2, "synthesized automaton has 2 states");
    bool monomial = true;
    for (const auto& x : synth.alphabet) {
      const Matrix& m = synth.transition(x);
      for (int i = 0; i < m.rows(); ++i) {
        int in_row = 0, in_col = 0;
        for (int j = 0; j < m.cols(); ++j) {
          if (!m.at(i, j).is_zero()) ++in_row;
          if (!m.at(j, i).is_zero()) ++in_col;
        }
        if (in_row != 1 || in_col != 1) monomial = false;
      }
    }
    c.expect(monomial, "synthesized transitions are monomial");
    long f0 = 0, f1 = 1;
    for (int n = 0; n <= 20; ++n) {
      FieldElement want = FieldElement::from_rational(k5, Rational(f0));
      LetterWord w(static_cast<size_t>(n), "a");
      if (evaluate(synth, w) != want) {
        c.expect(false, "F_" + std::to_string(n) + " exact");
        break;
      }
      long f2 = f0 + f1;
      f0 = f1;
      f1 = f2;
    }
  } else {
    c.expect(false, "finite evidence present");
  }
  return c.ok;
}

bool criterion2(Checker& c) {
  // Monomial round-trip property over >= 100 pseudo-random instances.
  std::mt19937_64 rng(20260810);
  int instances = 0;
  for (int trial = 0; instances < 100; ++trial) {
    int d = 1 + static_cast<int>(rng() % 4);
    int letters = 1 + static_cast<int>(rng() % 2);
    std::vector<std::string> alphabet;
    for (int i = 0; i < letters; ++i) alphabet.emplace_back(1, static_cast<char>('a' + i));
    std::vector<Matrix> mats;
    for (int i = 0; i < letters; ++i) mats.push_back(random_monomial(rng, d));
    Matrix u(Q(), 1, d), v(Q(), d, 1);
    for (int i = 0; i < d; ++i) {
      u.at(0, i) = qel(static_cast<long>(rng() % 3) - 1);
      v.at(i, 0) = qel(static_cast<long>(rng() % 3) - 1);
    }
    if (u.is_zero() || v.is_zero()) continue;
    LinRep source = make_rep(Q(), alphabet, u, mats, v);
    int source_degree = ambiguity_degree(source);
    LinRep input = conjugated(source, random_invertible_integer(rng, d));
    SeriesClassification cls = classify_series(input);
    if (cls.cls != SeriesClass::FinitelyAmbiguousEquivalent) {
      c.expect(false, "instance " + std::to_string(instances) + " not finitely ambiguous");
      return c.ok;
    }
    const LinRep& synth = cls.finite->synthesized;
    for (const auto& w : words_up_to(alphabet, 8)) {
      if (evaluate(synth, w) != evaluate(input, w)) {
        c.expect(false, "instance " + std::to_string(instances) + " behavior mismatch");
        return c.ok;
      }
    }
    if (cls.finite->minimal_m > source_degree) {
      c.expect(false, "instance " + std::to_string(instances) + " exceeds the source degree");
      return c.ok;
    }
    ++instances;
  }
  c.expect(instances >= 100, "ran 100 instances");
  return c.ok;
}

bool criterion3(Checker& c) {
  // Block-triangular round-trip: upper-triangular generators with monomial
  // (scalar) diagonal entries and a pinned Jordan obstruction.
  std::mt19937_64 rng(30260810);
  int instances = 0;
  for (int trial = 0; instances < 100; ++trial) {
    int d = 2 + static_cast<int>(rng() % 3);
    int letters = 1 + static_cast<int>(rng() % 2);
    std::vector<std::string> alphabet;
    for (int i = 0; i < letters; ++i) alphabet.emplace_back(1, static_cast<char>('a' + i));
    std::vector<Matrix> mats;
    for (int li = 0; li < letters; ++li) {
      Matrix m(Q(), d, d);
      for (int i = 0; i < d; ++i)
        m.at(i, i) = FieldElement::from_rational(Q(), kPool[rng() % kPool.size()]);
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) m.at(i, j) = qel(static_cast<long>(rng() % 3) - 1);
      if (li == 0) {
        // Exact J2(1) + diagonal block structure: the unipotent corner then
        // contributes a linear term to the a-word outputs that no coupling
        // can cancel, pinning the class below finitely ambiguous.
        m = Matrix(Q(), d, d);
        m.at(0, 0) = qel(1);
        m.at(1, 1) = qel(1);
        m.at(0, 1) = qel(1);
        for (int i = 2; i < d; ++i)
          m.at(i, i) = FieldElement::from_rational(Q(), kPool[rng() % kPool.size()]);
      }
      mats.push_back(m);
    }
    Matrix u(Q(), 1, d), v(Q(), d, 1);
    for (int i = 0; i < d; ++i) {
      u.at(0, i) = qel(1);
      v.at(i, 0) = qel(1);
    }
    LinRep source = make_rep(Q(), alphabet, u, mats, v);
    LinRep input = conjugated(source, random_invertible_integer(rng, d));
    SeriesClassification cls = classify_series(input);
    if (cls.cls != SeriesClass::PolynomiallyAmbiguousEquivalent) {
      c.expect(false, "instance " + std::to_string(instances) + " not polynomially ambiguous (" +
                          series_class_name(cls.cls) + ")");
      return c.ok;
    }
    const LinRep& synth = *cls.block_synthesized;
    for (const auto& w : words_up_to(alphabet, 8)) {
      if (evaluate(synth, w) != evaluate(input, w)) {
        c.expect(false, "instance " + std::to_string(instances) + " behavior mismatch");
        return c.ok;
      }
    }
    StructuralReport sr = structural_ambiguity(synth);
    if (sr.cls == AmbiguityClass::ExponentiallyAmbiguous) {
      c.expect(false, "instance " + std::to_string(instances) + " synthesized EDA");
      return c.ok;
    }
    ++instances;
  }
  c.expect(instances >= 100, "ran 100 instances");
  return c.ok;
}

bool criterion4(Checker& c) {
  // Group decision regressions.
  GroupInput diag{Q(), 2, {qmat({{2, 0}, {0, 3}})}};
  auto r1 = decide_virtually_diagonalizable(diag);
  c.expect(std::holds_alternative<EpimonomialCertificate>(r1), "diag(2,3) certifies");
  if (std::holds_alternative<EpimonomialCertificate>(r1)) {
    const auto& cert = std::get<EpimonomialCertificate>(r1);
    c.expect(cert.diagonal_index == 1, "diag(2,3) index 1");
    c.expect(verify_certificate(diag, cert), "diag(2,3) certificate re-verifies");
  }

  GroupInput rot{Q(), 2, {qmat({{0, -1}, {1, 0}})}};
  auto r2 = decide_virtually_diagonalizable(rot);
  c.expect(std::holds_alternative<EpimonomialCertificate>(r2), "rotation certifies");
  if (std::holds_alternative<EpimonomialCertificate>(r2)) {
    const auto& cert = std::get<EpimonomialCertificate>(r2);
    c.expect(cert.diagonal_index == 2, "rotation index 2");
    Matrix minus_i = Matrix::identity(Q(), 2).scaled(qel(-1));
    c.expect(diagonal_membership(minus_i, cert), "-I lies in the diagonal");
    c.expect(diagonal_membership(Matrix::identity(Q(), 2), cert), "I lies in the diagonal");
    c.expect(!diagonal_membership(qmat({{0, -1}, {1, 0}}), cert), "R does not");
    c.expect(verify_certificate(rot, cert), "rotation certificate re-verifies");
  }

  GroupInput jordan{Q(), 2, {qmat({{1, 1}, {0, 1}})}};
  auto r3 = decide_virtually_diagonalizable(jordan);
  c.expect(std::holds_alternative<RefutationWitness>(r3) &&
               std::get<RefutationWitness>(r3).kind == RefutationKind::NonDiagonalizable,
           "Jordan block refuted as NonDiagonalizable");
  if (std::holds_alternative<RefutationWitness>(r3))
    c.expect(verify_refutation(jordan, std::get<RefutationWitness>(r3)),
             "Jordan witness re-verifies");

  Matrix g1 = Matrix::from_rationals(Q(), {{rat(2), rat(0)}, {rat(0), rat(1, 2)}});
  Matrix g2 = Matrix::from_rationals(Q(), {{rat(2), rat(-3, 2)}, {rat(0), rat(1, 2)}});
  GroupInput pair{Q(), 2, {g1, g2}};
  auto r4 = decide_virtually_diagonalizable(pair);
  c.expect(std::holds_alternative<RefutationWitness>(r4), "conjugate pair refuted");
  if (std::holds_alternative<RefutationWitness>(r4)) {
    const auto& w = std::get<RefutationWitness>(r4);
    // The fixed phase order reaches the incompatible pair in Phase 1.
    c.expect(w.kind == RefutationKind::IncompatibleSteadyPair,
             "pinned kind is IncompatibleSteadyPair");
    c.expect(verify_refutation(pair, w), "pair witness re-verifies");
  }
  return c.ok;
}

bool criterion5(Checker& c) {
  // Steadiness oracle on 50 random invertible integer matrices.
  std::mt19937_64 rng(50260810);
  const std::vector<long> weights = {1, -1, 2, -2, 3};
  for (int inst = 0; inst < 50; ++inst) {
    int d = 2 + static_cast<int>(rng() % 3);
    // Signed integer monomial core: always has a steady exponent.
    std::vector<int> perm(d);
    for (int i = 0; i < d; ++i) perm[i] = i;
    for (int i = d - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
    Matrix core(Q(), d, d);
    for (int q = 0; q < d; ++q) core.at(perm[q], q) = qel(weights[rng() % weights.size()]);
    Matrix t = random_unimodular(rng, d);
    Matrix a = t * core * t.inverse();
    // Integer entries by construction (unimodular conjugation).
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (a.at(i, j).rational_value().get_den() != 1) {
          c.expect(false, "instance " + std::to_string(inst) + " not integral");
          return c.ok;
        }
    auto n = steady_exponent(a);
    if (!n) {
      c.expect(false, "instance " + std::to_string(inst) + " lost its steady exponent");
      return c.ok;
    }
    Matrix an = a.pow(Integer(*n));
    int deg = minpoly(an).degree();
    for (int k = 1; k <= 10; ++k)
      if (minpoly(a.pow(Integer(*n) * k)).degree() != deg) {
        c.expect(false, "instance " + std::to_string(inst) + " minpoly degree drifts at k=" +
                            std::to_string(k));
        return c.ok;
      }
    if (*n > 1) {
      bool some_divisor_fails = false;
      for (unsigned long k = 1; k < *n; ++k) {
        if (*n % k != 0) continue;
        if (!is_steady(a.pow(Integer(k))))
          some_divisor_fails = true;
        else {
          c.expect(false, "instance " + std::to_string(inst) + " steady below its exponent");
          return c.ok;
        }
      }
      c.expect(some_divisor_fails, "a proper divisor fails is_steady");
    } else {
      c.expect(is_steady(a), "exponent 1 means steady");
    }
  }
  return c.ok;
}

bool criterion6(Checker& c) {
  // Burnside criterion against a brute-force invariant-subspace oracle.
  std::mt19937_64 rng(60260810);
  auto oracle_reducible = [&](const std::vector<Matrix>& gens) {
    // Search kernels of irreducible charpoly factors of all words of length
    // <= 4 for an invariant subspace, over Q or over the factor's root field.
    const int d = gens[0].rows();
    std::vector<Matrix> words{Matrix::identity(Q(), d)};
    std::vector<Matrix> frontier = words;
    for (int len = 1; len <= 4; ++len) {
      std::vector<Matrix> next;
      for (const auto& m : frontier)
        for (const auto& g : gens) next.push_back(m * g);
      frontier = next;
      words.insert(words.end(), next.begin(), next.end());
    }
    for (const auto& m : words) {
      for (const auto& [p, mult] : factor_over_K(charpoly(m))) {
        (void)mult;
        if (p.degree() == static_cast<int>(d) && words.size() == 1) continue;
        if (p.degree() == 1) {
          Matrix shifted = m;
          for (int i = 0; i < d; ++i) shifted.at(i, i) = shifted.at(i, i) + p.coeff(0);
          Subspace w = Subspace::from_spanning_rows(kernel_basis(shifted));
          if (w.is_zero() || w.is_full()) continue;
          bool invariant = true;
          for (const auto& g : gens) {
            for (int r = 0; r < w.dim() && invariant; ++r) {
              Matrix vcol(Q(), d, 1);
              for (int j = 0; j < d; ++j) vcol.at(j, 0) = w.basis().at(r, j);
              invariant = w.contains_vector(g * vcol);
            }
          }
          if (invariant) return true;
        } else {
          ExtensionResult er = extend_by_irreducible(p);
          Matrix ml = m.map_entries(er.embedding);
          for (int i = 0; i < d; ++i) ml.at(i, i) = ml.at(i, i) - er.root;
          Subspace w = Subspace::from_spanning_rows(kernel_basis(ml));
          if (w.is_zero() || w.is_full()) continue;
          bool invariant = true;
          for (const auto& g : gens) {
            Matrix gl = g.map_entries(er.embedding);
            for (int r = 0; r < w.dim() && invariant; ++r) {
              Matrix vcol(er.field, d, 1);
              for (int j = 0; j < d; ++j) vcol.at(j, 0) = w.basis().at(r, j);
              invariant = w.contains_vector(gl * vcol);
            }
          }
          if (invariant) return true;
        }
      }
    }
    return false;
  };
  for (int inst = 0; inst < 25; ++inst) {
    int d = 2 + static_cast<int>(inst % 2);  // dims 2 and 3
    std::vector<Matrix> gens;
    int style = static_cast<int>(rng() % 3);
    if (style == 0) {
      // Random integer pair (usually absolutely irreducible).
      gens = {random_invertible_integer(rng, d), random_invertible_integer(rng, d)};
    } else if (style == 1) {
      // Conjugated upper-triangular pair: common invariant subspace.
      Matrix a(Q(), d, d), b(Q(), d, d);
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
          a.at(i, j) = qel(static_cast<long>(rng() % 5) - 2);
          b.at(i, j) = qel(static_cast<long>(rng() % 5) - 2);
        }
      for (int i = 0; i < d; ++i) {
        if (a.at(i, i).is_zero()) a.at(i, i) = qel(1 + static_cast<long>(rng() % 3));
        if (b.at(i, i).is_zero()) b.at(i, i) = qel(1 + static_cast<long>(rng() % 3));
      }
      Matrix t = random_invertible_integer(rng, d);
      gens = {t * a * t.inverse(), t * b * t.inverse()};
    } else {
      // Commuting pair: powers of one matrix (centralizer witnesses).
      Matrix a = random_invertible_integer(rng, d);
      gens = {a, a * a};
    }
    bool invertible = true;
    for (const auto& g : gens) invertible = invertible && g.invertible();
    if (!invertible) {
      --inst;
      continue;
    }
    bool fast = is_absolutely_irreducible(gens);
    bool reducible = oracle_reducible(gens);
    if (fast == reducible) {
      c.expect(false, "instance " + std::to_string(inst) + " disagrees with the oracle (style " +
                          std::to_string(style) + ")");
      return c.ok;
    }
  }
  return c.ok;
}

bool criterion7(Checker& c) {
  // Structural classifier vs run counting on ten hand-built digraphs.
  struct Instance {
    std::string name;
    LinRep rep;
    AmbiguityClass expected;
    // growth check: 0 = constant bound, 1 = polynomial fit, 2 = exponential
    int kind;
    long bound_c0, bound_c1, exp_c;  // constants per kind
  };
  std::vector<Instance> set;
  auto row = [&](std::vector<long> v) {
    std::vector<FieldElement> e;
    for (long x : v) e.push_back(qel(x));
    return Matrix::row_vector(Q(), e);
  };
  auto col = [&](std::vector<long> v) {
    std::vector<FieldElement> e;
    for (long x : v) e.push_back(qel(x));
    return Matrix::column_vector(Q(), e);
  };
  // 1. Full 2-state EDA gadget: runs(a^n) = 2^(n-1).
  set.push_back({"eda-full2",
                 make_rep(Q(), {"a"}, row({1, 0}), {qmat({{1, 1}, {1, 1}})}, col({1, 0})),
                 AmbiguityClass::ExponentiallyAmbiguous, 2, 0, 0, 2});
  // 2. Two parallel loop states reached from a root: 2^n on a^n b.
  set.push_back({"eda-parallel",
                 make_rep(Q(), {"a", "b"}, row({1, 0, 0}),
                          {qmat({{0, 0, 0}, {0, 1, 1}, {0, 1, 1}}),
                           qmat({{0, 1, 1}, {0, 0, 0}, {0, 0, 0}})},
                          col({0, 1, 0})),
                 AmbiguityClass::ExponentiallyAmbiguous, 2, 0, 0, 3});
  // 3. EDA via two distinct cycles on one letter through a shared state.
  set.push_back({"eda-cycles",
                 make_rep(Q(), {"a"}, row({1, 0, 0}),
                          {qmat({{0, 1, 1}, {1, 0, 0}, {1, 0, 0}})}, col({1, 0, 0})),
                 AmbiguityClass::ExponentiallyAmbiguous, 2, 0, 0, 4});
  // 4. IDA ladder (Jordan support): runs(a^n) = n.
  set.push_back({"ida-jordan",
                 make_rep(Q(), {"a"}, row({1, 0}), {qmat({{1, 1}, {0, 1}})}, col({0, 1})),
                 AmbiguityClass::PolynomiallyAmbiguous, 1, 1, 1, 0});
  // 5. IDA with a two-letter guard.
  set.push_back({"ida-guarded",
                 make_rep(Q(), {"a", "b"}, row({1, 0}),
                          {qmat({{1, 1}, {0, 1}}), qmat({{0, 0}, {0, 1}})}, col({0, 1})),
                 AmbiguityClass::PolynomiallyAmbiguous, 1, 1, 1, 0});
  // 6. Double IDA stack: quadratic growth, runs(a^n) ~ n^2/2.
  set.push_back({"ida-quadratic",
                 make_rep(Q(), {"a"}, row({1, 0, 0}),
                          {qmat({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}})}, col({0, 0, 1})),
                 AmbiguityClass::PolynomiallyAmbiguous, 1, 1, 2, 0});
  // 7. Deterministic loop: constant 1.
  set.push_back({"det-loop",
                 make_rep(Q(), {"a"}, row({1}), {qmat({{1}})}, col({1})),
                 AmbiguityClass::Deterministic, 0, 1, 0, 0});
  // 8. Unambiguous ends-in-b automaton: constant 1.
  set.push_back({"unamb-endsb",
                 make_rep(Q(), {"a", "b"}, row({1, 0}),
                          {qmat({{1, 0}, {0, 0}}), qmat({{1, 1}, {0, 0}})}, col({0, 1})),
                 AmbiguityClass::Unambiguous, 0, 1, 0, 0});
  // 9. Two disjoint accepting loops: constant 2, finitely ambiguous.
  set.push_back({"finite-two",
                 make_rep(Q(), {"a"}, row({1, 1}), {qmat({{1, 0}, {0, 1}})}, col({1, 1})),
                 AmbiguityClass::FinitelyAmbiguous, 0, 2, 0, 0});
  // 10. Permutation automaton: constant 2.
  set.push_back({"finite-perm",
                 make_rep(Q(), {"a"}, row({1, 1}), {qmat({{0, 1}, {1, 0}})}, col({1, 1})),
                 AmbiguityClass::FinitelyAmbiguous, 0, 2, 0, 0});

  for (const auto& inst : set) {
    StructuralReport sr = structural_ambiguity(inst.rep);
    if (sr.cls != inst.expected) {
      c.expect(false, inst.name + ": class " + ambiguity_class_name(sr.cls) + " != expected " +
                          ambiguity_class_name(inst.expected));
      continue;
    }
    // Max run count per word length.
    std::vector<Integer> max_runs(9, Integer(0));
    for (const auto& w : words_up_to(inst.rep.alphabet, 8)) {
      Integer r = count_runs(inst.rep, w);
      size_t n = w.size();
      if (r > max_runs[n]) max_runs[n] = r;
    }
    if (inst.kind == 2) {
      // Exponential: the monotone envelope of max_runs reaches 2^(n/c) for
      // the witnessed c (run counts may vanish off the pumping subsequence).
      Integer envelope = max_runs[0];
      for (int n = 1; n <= 8; ++n) {
        if (max_runs[n] > envelope) envelope = max_runs[n];
        Integer want = Integer(1) << static_cast<unsigned long>(n / inst.exp_c);
        if (envelope < want) {
          c.expect(false, inst.name + ": runs(" + std::to_string(n) + ") below 2^(n/c)");
          break;
        }
      }
    } else if (inst.kind == 1) {
      // Polynomial: max_runs(n) <= c0 + c1 * n^k with the fixed fit.
      for (int n = 0; n <= 8; ++n) {
        long nk = 1;
        for (long e = 0; e < inst.bound_c1; ++e) nk *= std::max(1, n);
        Integer bound(inst.bound_c0 + nk);
        if (max_runs[n] > bound) {
          c.expect(false, inst.name + ": runs(" + std::to_string(n) + ") above the polynomial fit");
          break;
        }
      }
      c.expect(!sr.eda, inst.name + ": no EDA");
    } else {
      for (int n = 0; n <= 8; ++n)
        if (max_runs[n] > Integer(inst.bound_c0)) {
          c.expect(false, inst.name + ": runs(" + std::to_string(n) + ") above the constant");
          break;
        }
      c.expect(!sr.ida, inst.name + ": no IDA");
    }
  }
  return c.ok;
}

bool criterion8(Checker& c) {
  // Minimization contract on 100 random invertible inputs.
  std::mt19937_64 rng(80260810);
  for (int inst = 0; inst < 100; ++inst) {
    int d = 1 + static_cast<int>(rng() % 4);
    int letters = 1 + static_cast<int>(rng() % 2);
    std::vector<std::string> alphabet;
    for (int i = 0; i < letters; ++i) alphabet.emplace_back(1, static_cast<char>('a' + i));
    std::vector<Matrix> mats;
    for (int i = 0; i < letters; ++i) {
      Matrix m(Q(), d, d);
      do {
        for (int r = 0; r < d; ++r)
          for (int col2 = 0; col2 < d; ++col2)
            m.at(r, col2) = qel(static_cast<long>(rng() % 5) - 2);
      } while (!m.invertible());
      mats.push_back(m);
    }
    Matrix u(Q(), 1, d), v(Q(), d, 1);
    for (int i = 0; i < d; ++i) {
      u.at(0, i) = qel(static_cast<long>(rng() % 3) - 1);
      v.at(i, 0) = qel(static_cast<long>(rng() % 3) - 1);
    }
    LinRep rep = make_rep(Q(), alphabet, u, mats, v);
    LinRep min = minimize(rep);
    if (minimize(min).dim != min.dim) {
      c.expect(false, "instance " + std::to_string(inst) + " not dimension-idempotent");
      return c.ok;
    }
    if (!equivalent(rep, min)) {
      c.expect(false, "instance " + std::to_string(inst) + " changed behavior");
      return c.ok;
    }
    if (!is_invertible(min)) {
      c.expect(false, "instance " + std::to_string(inst) + " lost invertibility");
      return c.ok;
    }
  }
  return c.ok;
}

struct Criterion {
  int number;
  std::string title;
  std::function<bool(Checker&)> run;
  double budget_seconds;  // 0 = no stated budget
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "Fibonacci dichotomy", criterion1, 5.0},
      {2, "monomial round-trip property", criterion2, 60.0},
      {3, "block-triangular round-trip", criterion3, 0.0},
      {4, "group decision regression", criterion4, 5.0},
      {5, "steadiness oracle", criterion5, 0.0},
      {6, "Burnside criterion vs brute force", criterion6, 0.0},
      {7, "structural classifier vs run counting", criterion7, 0.0},
      {8, "minimization contract", criterion8, 0.0},
  };
  bool all_ok = true;
  for (auto& cr : criteria) {
    Checker check;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = cr.run(check);
    } catch (const std::exception& e) {
      check.log << "    exception: " << e.what() << "\n";
      ok = false;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = cr.budget_seconds <= 0.0 || secs <= cr.budget_seconds;
    if (!in_budget) check.log << "    runtime " << secs << "s exceeds " << cr.budget_seconds << "s\n";
    all_ok = all_ok && ok && in_budget;
    std::printf("%s criterion %d: %s (%.2fs)\n", (ok && in_budget) ? "PASS" : "FAIL", cr.number,
                cr.title.c_str(), secs);
    std::string log = check.log.str();
    if (!log.empty()) std::fputs(log.c_str(), stdout);
  }
  return all_ok ? 0 : 1;
}
