#include <random>

#include "ambra/factor.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace ambra;
using namespace ambra::testutil;

namespace {

Polynomial multiply_back(const std::vector<std::pair<Polynomial, int>>& factors, const FieldPtr& f) {
  Polynomial acc = Polynomial::one(f);
  for (const auto& [p, m] : factors)
    for (int i = 0; i < m; ++i) acc = acc * p;
  return acc;
}

}  // namespace

TEST_CASE("nf_create accepts degree-1 and irreducible presentations") {
  // x - 1 is irreducible: the field is Q itself, degree 1.
  FieldPtr f1 = nf_create(qpoly({-1, 1}));
  CHECK(f1->degree() == 1);
  FieldPtr f5 = nf_create(qpoly({-5, 0, 1}));
  CHECK(f5->degree() == 2);
  CHECK_THROWS_AS(nf_create(qpoly({-1, 0, 1})), Error);  // x^2 - 1 splits
  try {
    nf_create(qpoly({-1, 0, 1}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ReduciblePolynomial);
  }
}

TEST_CASE("factor_over_Q on the spec examples") {
  auto f1 = factor_over_Q(qpoly({-1, 0, 1}));  // x^2 - 1
  REQUIRE(f1.size() == 2);
  CHECK(f1[0].first == qpoly({-1, 1}));
  CHECK(f1[1].first == qpoly({1, 1}));

  auto f2 = factor_over_Q(qpoly({-1, -1, 1}));  // x^2 - x - 1 (Fibonacci charpoly)
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].first == qpoly({-1, -1, 1}));
  CHECK(f2[0].second == 1);

  auto f3 = factor_over_Q(qpoly({-1, 0, 0, 0, 1}));  // x^4 - 1
  REQUIRE(f3.size() == 3);
  CHECK(multiply_back(f3, Q()) == qpoly({-1, 0, 0, 0, 1}));
  CHECK(f3[0].first == qpoly({-1, 1}));
  CHECK(f3[1].first == qpoly({1, 1}));
  CHECK(f3[2].first == qpoly({1, 0, 1}));
}

TEST_CASE("factor_over_Q handles multiplicities and non-monic input") {
  // 2*(x-1)^2*(x+3)
  Polynomial p = qpoly({1, -2, 1}) * qpoly({3, 1});
  p = p.scaled(qel(2));
  auto fs = factor_over_Q(p);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].first == qpoly({-1, 1}));
  CHECK(fs[0].second == 2);
  CHECK(fs[1].first == qpoly({3, 1}));
  CHECK(fs[1].second == 1);
}

TEST_CASE("factor_over_Q on larger deterministic inputs multiplies back") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    int nfac = 1 + static_cast<int>(rng() % 3);
    Polynomial p = Polynomial::one(Q());
    for (int i = 0; i < nfac; ++i) {
      int deg = 1 + static_cast<int>(rng() % 3);
      std::vector<long> c;
      for (int j = 0; j < deg; ++j) c.push_back(static_cast<long>(rng() % 11) - 5);
      c.push_back(1);
      p = p * qpoly(c);
    }
    auto fs = factor_over_Q(p);
    CHECK(multiply_back(fs, Q()) == p.make_monic());
    for (const auto& [fac, mult] : fs) {
      CHECK(fac.is_monic());
      CHECK(mult >= 1);
    }
  }
}

TEST_CASE("factor_over_K splits the Fibonacci polynomial over Q(sqrt5)") {
  FieldPtr k = q_sqrt5();
  Polynomial p = kpoly(k, {-1, -1, 1});
  auto fs = factor_over_K(p);
  REQUIRE(fs.size() == 2);
  // Roots (1 +- sqrt5)/2.
  FieldElement phi_plus(k, {rat(1, 2), rat(1, 2)});
  FieldElement phi_minus(k, {rat(1, 2), rat(-1, 2)});
  std::vector<FieldElement> roots{-fs[0].first.coeff(0), -fs[1].first.coeff(0)};
  CHECK(((roots[0] == phi_plus && roots[1] == phi_minus) ||
         (roots[0] == phi_minus && roots[1] == phi_plus)));
  // Over Q it stays irreducible.
  auto fq = factor_over_K(qpoly({-1, -1, 1}));
  CHECK(fq.size() == 1);
  CHECK(fq[0].first.degree() == 2);
}

TEST_CASE("factor_over_K splits x^2+1 over Q(i)") {
  FieldPtr k = q_i();
  auto fs = factor_over_K(kpoly(k, {1, 0, 1}));
  REQUIRE(fs.size() == 2);
  FieldElement theta = FieldElement::generator(k);
  std::vector<FieldElement> roots{-fs[0].first.coeff(0), -fs[1].first.coeff(0)};
  CHECK(((roots[0] == theta && roots[1] == -theta) || (roots[0] == -theta && roots[1] == theta)));
}

TEST_CASE("root_of_unity_order on rationals and phi") {
  CHECK(root_of_unity_order(qel(1)) == 1);
  CHECK(root_of_unity_order(qel(-1)) == 2);
  CHECK(!root_of_unity_order(qel(2)).has_value());
  FieldPtr k = q_sqrt5();
  FieldElement phi_plus(k, {rat(1, 2), rat(1, 2)});
  CHECK(!root_of_unity_order(phi_plus).has_value());
  CHECK_THROWS_AS(root_of_unity_order(FieldElement::zero(Q())), Error);
}

TEST_CASE("root_of_unity_order detects i and sixth roots") {
  FieldPtr k = q_i();
  FieldElement i = FieldElement::generator(k);
  CHECK(root_of_unity_order(i) == 4);
  CHECK(root_of_unity_order(-i) == 4);
  CHECK(root_of_unity_order(-FieldElement::one(k)) == 2);
  // primitive 6th root lives in Q[x]/(x^2 - x + 1)
  FieldPtr k6 = NumberField::make_trusted({Rational(1), Rational(-1), Rational(1)});
  FieldElement z = FieldElement::generator(k6);
  auto n = root_of_unity_order(z);
  REQUIRE(n.has_value());
  CHECK(*n == 6);
  CHECK(z.pow(Integer(6)).is_one());
  for (int kk = 1; kk < 6; ++kk) CHECK(!z.pow(Integer(kk)).is_one());
}

TEST_CASE("power_in_subfield examples") {
  FieldPtr k5 = q_sqrt5();
  Embedding q_in_k5(Q(), k5, FieldElement::zero(k5));
  FieldElement sqrt5 = FieldElement::generator(k5);
  auto r = power_in_subfield(sqrt5, q_in_k5);
  REQUIRE(r.has_value());
  CHECK(r->exponent == 2);
  CHECK(r->value == qel(5));

  FieldElement phi_plus(k5, {rat(1, 2), rat(1, 2)});
  CHECK(!power_in_subfield(phi_plus, q_in_k5).has_value());

  FieldPtr ki = q_i();
  Embedding q_in_ki(Q(), ki, FieldElement::zero(ki));
  auto ri = power_in_subfield(FieldElement::generator(ki), q_in_ki);
  REQUIRE(ri.has_value());
  CHECK(ri->exponent == 2);
  CHECK(ri->value == qel(-1));
}

TEST_CASE("power_in_subfield minimality and embedding consistency") {
  FieldPtr k5 = q_sqrt5();
  Embedding q_in_k5(Q(), k5, FieldElement::zero(k5));
  // 2*sqrt5: m = 2 with value 20.
  auto r = power_in_subfield(FieldElement::generator(k5).scaled(Rational(2)), q_in_k5);
  REQUIRE(r.has_value());
  CHECK(r->exponent == 2);
  CHECK(r->value == qel(20));
  // Already-rational elements report exponent 1.
  auto r1 = power_in_subfield(FieldElement::from_rational(k5, rat(7, 3)), q_in_k5);
  REQUIRE(r1.has_value());
  CHECK(r1->exponent == 1);
  CHECK(r1->value == qel(7, 3));
}

TEST_CASE("power_in_subfield exponents are minimal across divisors") {
  // Primitive 12th root of unity: zeta^12 = 1 is the first rational power
  // landing in Q for no proper divisor exponent... zeta^6 = -1 is rational
  // already, so the minimal exponent is 6.
  FieldPtr k12 = NumberField::make_trusted({Rational(1), Rational(0), Rational(-1), Rational(0), Rational(1)});
  Embedding emb(Q(), k12, FieldElement::zero(k12));
  FieldElement zeta = FieldElement::generator(k12);
  auto r = power_in_subfield(zeta, emb);
  REQUIRE(r.has_value());
  CHECK(r->exponent == 6);
  CHECK(r->value == qel(-1));
  for (unsigned long div = 1; div < r->exponent; ++div) {
    if (r->exponent % div != 0) continue;
    CHECK(!zeta.pow(Integer(div)).is_rational());
  }
  // 2^(1/4): exponent 4, and the proper divisors 1, 2 fail.
  FieldPtr k4 = NumberField::make_trusted({Rational(-2), Rational(0), Rational(0), Rational(0), Rational(1)});
  Embedding emb4(Q(), k4, FieldElement::zero(k4));
  auto r4 = power_in_subfield(FieldElement::generator(k4), emb4);
  REQUIRE(r4.has_value());
  CHECK(r4->exponent == 4);
  CHECK(r4->value == qel(2));
  CHECK(!FieldElement::generator(k4).is_rational());
  CHECK(!FieldElement::generator(k4).pow(Integer(2)).is_rational());
}

TEST_CASE("power_in_subfield across a relative extension") {
  // Q(sqrt2) inside Q(2^(1/4)) = Q[x]/(x^4-2); sqrt2 = theta^2.
  FieldPtr l = NumberField::make_trusted({Rational(-2), Rational(0), Rational(0), Rational(0), Rational(1)});
  FieldPtr k = NumberField::make_trusted({Rational(-2), Rational(0), Rational(1)});
  FieldElement theta = FieldElement::generator(l);
  Embedding emb(k, l, theta * theta);
  auto r = power_in_subfield(theta, emb);
  REQUIRE(r.has_value());
  CHECK(r->exponent == 2);
  CHECK(r->value == FieldElement::generator(k));
}

TEST_CASE("splitting_field on the spec examples") {
  auto s1 = splitting_field(qpoly({-1, -1, 1}));
  CHECK(s1.field->degree() == 2);
  REQUIRE(s1.roots.size() == 2);
  CHECK(s1.roots[0] + s1.roots[1] == FieldElement::one(s1.field));
  CHECK(s1.roots[0] * s1.roots[1] == FieldElement::from_rational(s1.field, Rational(-1)));

  auto s2 = splitting_field(qpoly({6, -5, 1}));  // (x-2)(x-3)
  CHECK(s2.field->degree() == 1);
  REQUIRE(s2.roots.size() == 2);
  CHECK(s2.roots[0] == FieldElement::from_rational(s2.field, Rational(2)));
  CHECK(s2.roots[1] == FieldElement::from_rational(s2.field, Rational(3)));

  auto s3 = splitting_field(qpoly({1, 0, 1}));  // x^2 + 1
  CHECK(s3.field->degree() == 2);
  REQUIRE(s3.roots.size() == 2);
  CHECK(s3.roots[0] == -s3.roots[1]);
}

TEST_CASE("splitting_field of x^4 - 2 has degree 8 and four roots") {
  auto s = splitting_field(qpoly({-2, 0, 0, 0, 1}));
  CHECK(s.field->degree() == 8);
  REQUIRE(s.roots.size() == 4);
  for (const auto& r : s.roots) {
    CHECK(r.pow(Integer(4)) == FieldElement::from_rational(s.field, Rational(2)));
  }
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == qpoly({-1, 1}));
  CHECK(cyclotomic_polynomial(2) == qpoly({1, 1}));
  CHECK(cyclotomic_polynomial(4) == qpoly({1, 0, 1}));
  CHECK(cyclotomic_polynomial(6) == qpoly({1, -1, 1}));
  CHECK(cyclotomic_polynomial(12) == qpoly({1, 0, -1, 0, 1}));
  CHECK(euler_phi(12) == 4);
  CHECK(cyclotomic_order(qpoly({1, 0, -1, 0, 1})) == 12);
  CHECK(!cyclotomic_order(qpoly({-1, -1, 1})).has_value());
}

TEST_CASE("field arithmetic satisfies ring axioms on random triples") {
  FieldPtr k = NumberField::make_trusted({Rational(-2), Rational(-1), Rational(0), Rational(1)});  // x^3 - x - 2... irreducible
  std::mt19937_64 rng(11);
  auto rnd = [&] {
    std::vector<Rational> c;
    for (int i = 0; i < 3; ++i) c.push_back(rat(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 4)));
    return FieldElement(k, c);
  };
  for (int t = 0; t < 40; ++t) {
    FieldElement a = rnd(), b = rnd(), c = rnd();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a * a.inverse() == FieldElement::one(k));
  }
}

TEST_CASE("minimal polynomial over Q") {
  FieldPtr k5 = q_sqrt5();
  FieldElement phi_plus(k5, {rat(1, 2), rat(1, 2)});
  CHECK(minimal_polynomial_over_Q(phi_plus) == qpoly({-1, -1, 1}));
  CHECK(minimal_polynomial_over_Q(FieldElement::from_rational(k5, rat(3, 2))) ==
        Polynomial::from_rationals(Q(), {rat(-3, 2), rat(1)}));
}

TEST_CASE("factorization multiplies back over a number field") {
  FieldPtr k = q_i();
  // (x^2+1)(x^2-2) over Q(i): splits as (x-i)(x+i)(x^2-2)
  Polynomial p = kpoly(k, {1, 0, 1}) * kpoly(k, {-2, 0, 1});
  auto fs = factor_over_K(p);
  CHECK(multiply_back(fs, k) == p.make_monic());
  int linear = 0, quadratic = 0;
  for (const auto& [fac, m] : fs) {
    (void)m;
    if (fac.degree() == 1) ++linear;
    if (fac.degree() == 2) ++quadratic;
  }
  CHECK(linear == 2);
  CHECK(quadratic == 1);
}
