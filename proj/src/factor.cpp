#include "ambra/factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ambra/error.hpp"
#include "ambra/zassenhaus.hpp"

namespace ambra {
namespace {

// Scales a monic rational polynomial into the monic integer polynomial
// lc^(n-1) * q(x/lc) workalike: here q is already monic, so we clear
// denominators via x -> x/c substitution with c = lcm of denominators:
// r(x) = c^n * q(x/c) is monic with integer coefficients; factors map back by
// the inverse substitution.
struct MonicScaling {
  ZPoly poly;
  Integer c;  // substitution constant
};

MonicScaling monic_integerize(const std::vector<Rational>& q) {
  const int n = static_cast<int>(q.size()) - 1;
  Integer c(1);
  for (const auto& r : q) mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), r.get_den_mpz_t());
  // coefficient of x^i becomes q_i * c^(n-i)
  ZPoly out(n + 1);
  Integer pw(1);
  for (int i = n; i >= 0; --i) {
    Rational scaled = q[i] * Rational(pw);
    if (scaled.get_den() != 1) {
      // lcm of denominators keeps everything integral only when c is a common
      // multiple; q_i * c^(n-i) has denominator dividing den(q_i) | c.
      raise(ErrorKind::Internal, "monic integerization failed");
    }
    out[i] = scaled.get_num();
    pw *= c;
  }
  return {out, c};
}

std::vector<Rational> map_factor_back(const ZPoly& h, const Integer& c) {
  // h is a monic integer factor of c^n q(x/c); the corresponding monic factor
  // of q is h(c*x) / c^(deg h).
  const int d = static_cast<int>(h.size()) - 1;
  std::vector<Rational> out(d + 1);
  Integer pw(1);  // c^i
  for (int i = 0; i <= d; ++i) {
    Rational num(h[i] * pw);
    Integer den(1);
    mpz_pow_ui(den.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(d));
    Rational r = num / Rational(den);
    r.canonicalize();
    out[i] = r;
    pw *= c;
  }
  return out;
}

// Factors a monic squarefree polynomial with rational coefficients into monic
// irreducibles over Q, returned in the given field's presentation.
std::vector<Polynomial> factor_squarefree_rational(const Polynomial& q) {
  const FieldPtr& f = q.field();
  if (q.degree() == 1) return {q.make_monic()};
  auto scaled = monic_integerize(q.make_monic().rational_coeffs());
  std::vector<Polynomial> out;
  for (const auto& h : factor_squarefree_monic_z(scaled.poly))
    out.push_back(Polynomial::from_rationals(f, map_factor_back(h, scaled.c)));
  std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
    return poly_cmp(a, b) < 0;
  });
  return out;
}

FieldElement rational_in(const FieldPtr& f, long v) { return FieldElement::from_rational(f, Rational(v)); }

// Lagrange interpolation through (node_i, value_i) with rational nodes and
// values in an arbitrary field.
Polynomial interpolate(const FieldPtr& f, const std::vector<Rational>& nodes,
                       const std::vector<FieldElement>& values) {
  Polynomial acc = Polynomial::zero(f);
  const size_t n = nodes.size();
  for (size_t i = 0; i < n; ++i) {
    Polynomial num = Polynomial::one(f);
    Rational den(1);
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      num = num * Polynomial(f, {FieldElement::from_rational(f, -nodes[j]), FieldElement::one(f)});
      den *= nodes[i] - nodes[j];
    }
    acc = acc + num.scaled(values[i].scaled(1 / den));
  }
  return acc;
}

std::vector<Rational> eval_nodes(size_t count) {
  // Nonzero nodes 1, -1, 2, -2, ...
  std::vector<Rational> nodes;
  long v = 1;
  while (nodes.size() < count) {
    nodes.push_back(Rational(v));
    if (nodes.size() < count) nodes.push_back(Rational(-v));
    ++v;
  }
  return nodes;
}

// Norm of q(z - s*theta) from K[z] down to Q[z], computed by evaluation at
// rational z-nodes (each value is an element norm) and interpolation.
Polynomial shifted_norm(const Polynomial& q, long s) {
  const FieldPtr& k = q.field();
  const int deg = q.degree() * k->degree();
  auto nodes = eval_nodes(static_cast<size_t>(deg) + 1);
  const FieldPtr& rat = NumberField::rationals();
  std::vector<FieldElement> values;
  values.reserve(nodes.size());
  FieldElement theta = FieldElement::generator(k);
  for (const auto& z : nodes) {
    FieldElement at = FieldElement::from_rational(k, z) - theta.scaled(Rational(s));
    values.push_back(FieldElement::from_rational(rat, element_norm(q.eval(at))));
  }
  return interpolate(rat, nodes, values);
}

}  // namespace

FieldElement resultant(const Polynomial& a, const Polynomial& b) {
  const FieldPtr& f = a.field();
  if (a.is_zero() || b.is_zero()) return FieldElement::zero(f);
  if (a.degree() == 0) return a.leading().pow(Integer(b.degree()));
  if (b.degree() == 0) return b.leading().pow(Integer(a.degree()));
  Polynomial r = a % b;
  if (r.is_zero()) return FieldElement::zero(f);
  FieldElement sign = ((a.degree() * b.degree()) % 2 == 0) ? FieldElement::one(f)
                                                           : -FieldElement::one(f);
  FieldElement scale = b.leading().pow(Integer(a.degree() - r.degree()));
  return sign * scale * resultant(b, r);
}

Rational element_norm(const FieldElement& a) {
  const FieldPtr& k = a.field();
  if (k->degree() == 1) return a.coords()[0];
  Polynomial g = Polynomial::from_rationals(NumberField::rationals(), k->min_poly());
  std::vector<FieldElement> coeffs;
  for (const auto& c : a.coords())
    coeffs.push_back(FieldElement::from_rational(NumberField::rationals(), c));
  Polynomial ahat(NumberField::rationals(), coeffs);
  if (ahat.is_zero()) return Rational(0);
  // g monic: res(g, ahat) = prod ahat(theta_i).
  return resultant(g, ahat).rational_value();
}

std::vector<std::pair<Polynomial, int>> factor_over_Q(const Polynomial& p) {
  if (p.is_zero()) raise(ErrorKind::ZeroElement, "factorization of zero polynomial");
  if (!p.has_rational_coeffs())
    raise(ErrorKind::FieldMismatch, "factor_over_Q needs rational coefficients");
  std::vector<std::pair<Polynomial, int>> out;
  if (p.degree() == 0) return out;
  for (const auto& [sf, mult] : squarefree_decomposition(p))
    for (const auto& irr : factor_squarefree_rational(sf)) out.emplace_back(irr, mult);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int c = poly_cmp(a.first, b.first);
    return c != 0 ? c < 0 : a.second < b.second;
  });
  return out;
}

std::vector<std::pair<Polynomial, int>> factor_over_K(const Polynomial& p) {
  if (p.is_zero()) raise(ErrorKind::ZeroElement, "factorization of zero polynomial");
  const FieldPtr& k = p.field();
  if (p.has_rational_coeffs() && k->is_rational()) return factor_over_Q(p);
  std::vector<std::pair<Polynomial, int>> out;
  if (p.degree() == 0) return out;
  FieldElement theta = FieldElement::generator(k);
  for (const auto& [sf, mult] : squarefree_decomposition(p)) {
    if (sf.degree() == 1) {
      out.emplace_back(sf.make_monic(), mult);
      continue;
    }
    // Trager: find a shift making the norm squarefree.
    long s = 0;
    Polynomial norm = Polynomial::zero(NumberField::rationals());
    for (long trial = 0;; ++trial) {
      s = (trial == 0) ? 0 : (trial % 2 == 1 ? (trial + 1) / 2 : -(trial / 2));
      norm = shifted_norm(sf, s);
      if (is_squarefree(norm)) break;
      if (trial > 40) raise(ErrorKind::Internal, "no squarefree Trager shift found");
    }
    std::vector<Polynomial> kfactors;
    FieldElement shift = theta.scaled(Rational(s));
    for (const auto& [ni, m1] : factor_over_Q(norm)) {
      (void)m1;  // norm squarefree: multiplicity 1
      Polynomial ni_k = Polynomial::from_rationals(k, ni.rational_coeffs()).taylor_shift(shift);
      Polynomial g = poly_gcd(sf, ni_k);
      if (g.degree() >= 1) kfactors.push_back(g.make_monic());
    }
    std::sort(kfactors.begin(), kfactors.end(),
              [](const Polynomial& a, const Polynomial& b) { return poly_cmp(a, b) < 0; });
    Polynomial check = Polynomial::one(k);
    for (const auto& g : kfactors) check = check * g;
    if (check != sf.make_monic()) raise(ErrorKind::Internal, "Trager factors do not multiply back");
    for (const auto& g : kfactors) out.emplace_back(g, mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int c = poly_cmp(a.first, b.first);
    return c != 0 ? c < 0 : a.second < b.second;
  });
  return out;
}

FieldPtr nf_create(const Polynomial& min_poly) {
  if (min_poly.is_zero() || min_poly.degree() < 1)
    raise(ErrorKind::ParseError, "minimal polynomial must have degree >= 1");
  if (!min_poly.is_monic()) raise(ErrorKind::ParseError, "minimal polynomial must be monic");
  if (!min_poly.has_rational_coeffs())
    raise(ErrorKind::FieldMismatch, "nf_create needs rational coefficients");
  auto factors = factor_over_Q(min_poly);
  if (factors.size() != 1 || factors[0].second != 1)
    raise(ErrorKind::ReduciblePolynomial, "presentation polynomial factors over Q");
  return NumberField::make_trusted(min_poly.rational_coeffs());
}

unsigned long euler_phi(unsigned long n) {
  unsigned long result = n, m = n;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

Polynomial cyclotomic_polynomial(unsigned long n) {
  static std::map<unsigned long, Polynomial> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const FieldPtr& q = NumberField::rationals();
  // x^n - 1 divided by the product of lower cyclotomics.
  std::vector<Rational> xn(n + 1, Rational(0));
  xn[0] = -1;
  xn[n] = 1;
  Polynomial acc = Polynomial::from_rationals(q, xn);
  for (unsigned long d = 1; d < n; ++d)
    if (n % d == 0) acc = acc / cyclotomic_polynomial(d);
  cache.emplace(n, acc);
  return acc;
}

std::vector<unsigned long> orders_with_phi_at_most(unsigned long bound) {
  std::vector<unsigned long> out;
  // phi(n) >= sqrt(n/2) for all n, so n <= 2*bound^2 suffices.
  unsigned long limit = 2 * bound * bound + 1;
  for (unsigned long n = 1; n <= limit; ++n)
    if (euler_phi(n) <= bound) out.push_back(n);
  return out;
}

std::optional<unsigned long> cyclotomic_order(const Polynomial& h) {
  const unsigned long d = static_cast<unsigned long>(h.degree());
  if (d == 0) return std::nullopt;
  unsigned long limit = 2 * d * d + 1;
  for (unsigned long n = 1; n <= limit; ++n) {
    if (euler_phi(n) != d) continue;
    if (cyclotomic_polynomial(n) == h) return n;
  }
  return std::nullopt;
}

std::optional<unsigned long> root_of_unity_order(const FieldElement& a) {
  if (a.is_zero()) raise(ErrorKind::ZeroElement, "root-of-unity test on zero");
  if (a.is_one()) return 1;
  Polynomial mp = minimal_polynomial_over_Q(a);
  // a root of unity has minimal polynomial Phi_n with phi(n) <= [K:Q]
  return cyclotomic_order(mp);
}

Polynomial minimal_polynomial_over_Q(const FieldElement& a) {
  const FieldPtr& k = a.field();
  const FieldPtr& q = NumberField::rationals();
  const int d = k->degree();
  if (d == 1) return Polynomial(q, {FieldElement::from_rational(q, -a.coords()[0]), FieldElement::one(q)});
  // Find the first power of `a` that depends linearly on the lower powers.
  std::vector<FieldElement> powers{FieldElement::one(k)};
  for (int t = 1; t <= d; ++t) {
    powers.push_back(powers.back() * a);
    // Solve sum_{j<t} x_j a^j = a^t exactly.
    std::vector<std::vector<Rational>> aug(d, std::vector<Rational>(t + 1, Rational(0)));
    for (int j = 0; j < t; ++j)
      for (int i = 0; i < d; ++i) aug[i][j] = powers[j].coords()[i];
    for (int i = 0; i < d; ++i) aug[i][t] = powers[t].coords()[i];
    // Gaussian elimination.
    int row = 0;
    std::vector<int> pivot_of_col(t, -1);
    for (int col = 0; col < t && row < d; ++col) {
      int pr = -1;
      for (int r = row; r < d; ++r)
        if (aug[r][col] != 0) {
          pr = r;
          break;
        }
      if (pr < 0) continue;
      std::swap(aug[row], aug[pr]);
      Rational inv = 1 / aug[row][col];
      for (int j2 = col; j2 <= t; ++j2) aug[row][j2] *= inv;
      for (int r = 0; r < d; ++r) {
        if (r == row || aug[r][col] == 0) continue;
        Rational f = aug[r][col];
        for (int j2 = col; j2 <= t; ++j2) aug[r][j2] -= f * aug[row][j2];
      }
      pivot_of_col[col] = row;
      ++row;
    }
    bool consistent = true;
    for (int r = row; r < d; ++r)
      if (aug[r][t] != 0) {
        consistent = false;
        break;
      }
    if (!consistent) continue;
    std::vector<Rational> coeffs(t + 1, Rational(0));
    for (int col = 0; col < t; ++col)
      if (pivot_of_col[col] >= 0) coeffs[col] = -aug[pivot_of_col[col]][t];
    coeffs[t] = 1;
    return Polynomial::from_rationals(q, coeffs);
  }
  raise(ErrorKind::Internal, "no minimal polynomial found (degree overflow)");
}

Polynomial minimal_polynomial_over_subfield(const FieldElement& a, const Embedding& k_in_l) {
  const FieldPtr& l = k_in_l.to();
  const FieldPtr& k = k_in_l.from();
  if (!same_field(a.field(), l)) raise(ErrorKind::FieldMismatch, "element not in extension field");
  if (k->degree() == l->degree()) {
    // Same absolute degree: the embedding is an isomorphism onto L.
    auto pre = k_in_l.preimage(a);
    if (!pre) raise(ErrorKind::Internal, "full-degree embedding without preimage");
    return Polynomial(k, {-*pre, FieldElement::one(k)});
  }
  const int n = l->degree(), mk = k->degree();
  const int rel = n / std::max(1, mk);
  // Basis images e(kappa_b) for kappa the power basis of K.
  std::vector<FieldElement> kbasis;
  {
    FieldElement g = k_in_l.gen_image();
    FieldElement p = FieldElement::one(l);
    for (int b = 0; b < mk; ++b) {
      kbasis.push_back(p);
      if (b + 1 < mk) p = p * g;
    }
  }
  std::vector<FieldElement> powers{FieldElement::one(l)};
  for (int t = 1; t <= rel; ++t) {
    powers.push_back(powers.back() * a);
    const int cols = t * mk;
    std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(cols + 1, Rational(0)));
    for (int j = 0; j < t; ++j)
      for (int b = 0; b < mk; ++b) {
        FieldElement v = powers[j] * kbasis[b];
        for (int i = 0; i < n; ++i) aug[i][j * mk + b] = v.coords()[i];
      }
    for (int i = 0; i < n; ++i) aug[i][cols] = powers[t].coords()[i];
    int row = 0;
    std::vector<int> pivot_of_col(cols, -1);
    for (int col = 0; col < cols && row < n; ++col) {
      int pr = -1;
      for (int r = row; r < n; ++r)
        if (aug[r][col] != 0) {
          pr = r;
          break;
        }
      if (pr < 0) continue;
      std::swap(aug[row], aug[pr]);
      Rational inv = 1 / aug[row][col];
      for (int j2 = col; j2 <= cols; ++j2) aug[row][j2] *= inv;
      for (int r = 0; r < n; ++r) {
        if (r == row || aug[r][col] == 0) continue;
        Rational f = aug[r][col];
        for (int j2 = col; j2 <= cols; ++j2) aug[r][j2] -= f * aug[row][j2];
      }
      pivot_of_col[col] = row;
      ++row;
    }
    bool consistent = true;
    for (int r = row; r < n; ++r)
      if (aug[r][cols] != 0) {
        consistent = false;
        break;
      }
    if (!consistent) continue;
    std::vector<FieldElement> coeffs;
    for (int j = 0; j < t; ++j) {
      std::vector<Rational> kc(mk, Rational(0));
      for (int b = 0; b < mk; ++b) {
        int col = j * mk + b;
        if (pivot_of_col[col] >= 0) kc[b] = -aug[pivot_of_col[col]][cols];
      }
      coeffs.emplace_back(k, std::move(kc));
    }
    coeffs.push_back(FieldElement::one(k));
    Polynomial result(k, std::move(coeffs));
    // The relative degree must divide [L:K]; verify by mapping back.
    if (result.map_coefficients(k_in_l).eval(a) != FieldElement::zero(l))
      raise(ErrorKind::Internal, "relative minimal polynomial check failed");
    return result;
  }
  raise(ErrorKind::Internal, "no relative minimal polynomial found");
}

RatioOrders ratio_root_of_unity_orders(const Polynomial& f, const Polynomial& g) {
  const FieldPtr& k = f.field();
  if (!same_field(k, g.field())) raise(ErrorKind::FieldMismatch, "ratio orders across fields");
  if (!f.is_monic() || !g.is_monic()) raise(ErrorKind::Internal, "ratio orders need monic inputs");
  // S(y) = Norm_{K/Q}( Res_x( g(x), f(y*x) ) ): roots are conjugates of the
  // ratios lambda/mu. Evaluate at rational y-nodes, then interpolate over Q.
  const int deg = f.degree() * g.degree() * k->degree();
  auto nodes = eval_nodes(static_cast<size_t>(deg) + 1);
  const FieldPtr& rat = NumberField::rationals();
  std::vector<FieldElement> values;
  values.reserve(nodes.size());
  for (const auto& y : nodes) {
    Polynomial fy = f.compose_scale(FieldElement::from_rational(k, y));
    FieldElement r = resultant(g, fy);
    values.push_back(FieldElement::from_rational(rat, element_norm(r)));
  }
  Polynomial s = interpolate(rat, nodes, values);
  RatioOrders out{{}, true};
  if (s.is_zero()) raise(ErrorKind::Internal, "ratio resultant vanished (zero root?)");
  Polynomial sf = squarefree_part(s);
  for (const auto& [h, mult] : factor_over_Q(sf)) {
    (void)mult;
    auto n = cyclotomic_order(h);
    if (!n) {
      out.all_ratios_cyclotomic = false;
      continue;
    }
    if (*n > 1) out.orders.push_back(*n);
  }
  std::sort(out.orders.begin(), out.orders.end());
  out.orders.erase(std::unique(out.orders.begin(), out.orders.end()), out.orders.end());
  return out;
}

std::optional<PowerInSubfield> power_split_of_factor(const Polynomial& f) {
  if (!f.is_monic() || f.degree() < 1) raise(ErrorKind::Internal, "power split needs monic factor");
  if (f.degree() == 1) return PowerInSubfield{1, -f.coeff(0)};
  RatioOrders ratios = ratio_root_of_unity_orders(f, f);
  if (!ratios.all_ratios_cyclotomic) return std::nullopt;
  unsigned long m = 1;
  for (unsigned long n : ratios.orders) m = std::lcm(m, n);
  Polynomial xm = f.x_power_mod(Integer(m));
  if (xm.degree() > 0) raise(ErrorKind::Internal, "power split: x^m mod f not constant");
  return PowerInSubfield{m, xm.is_zero() ? FieldElement::zero(f.field()) : xm.coeff(0)};
}

std::optional<PowerInSubfield> power_in_subfield(const FieldElement& alpha, const Embedding& k_in_l) {
  if (alpha.is_zero()) raise(ErrorKind::ZeroElement, "power_in_subfield on zero");
  if (auto pre = k_in_l.preimage(alpha)) return PowerInSubfield{1, *pre};
  Polynomial f = minimal_polynomial_over_subfield(alpha, k_in_l);
  auto res = power_split_of_factor(f);
  if (!res) return std::nullopt;
  // Sanity: alpha^m must equal the embedded constant.
  if (alpha.pow(Integer(res->exponent)) != k_in_l.map(res->value))
    raise(ErrorKind::Internal, "power_in_subfield verification failed");
  return res;
}

ExtensionResult extend_by_irreducible(const Polynomial& h) {
  const FieldPtr& l = h.field();
  if (h.degree() < 1) raise(ErrorKind::Internal, "extension by constant");
  if (h.degree() == 1) {
    Embedding id = Embedding::identity(l);
    return {l, id, -h.make_monic().coeff(0)};
  }
  Polynomial hm = h.make_monic();
  if (l->is_rational()) {
    // Direct presentation over Q.
    FieldPtr ext = NumberField::make_trusted(hm.rational_coeffs());
    Embedding emb(l, ext, FieldElement::from_rational(ext, -l->min_poly()[0]));
    return {ext, emb, FieldElement::generator(ext)};
  }
  // Primitive element gamma = beta + s*theta via a squarefree shifted norm.
  long s = 0;
  Polynomial norm = Polynomial::zero(NumberField::rationals());
  for (long trial = 1;; ++trial) {
    s = (trial % 2 == 1) ? (trial + 1) / 2 : -(trial / 2);
    norm = shifted_norm(hm, s);
    if (is_squarefree(norm)) break;
    if (trial > 40) raise(ErrorKind::Internal, "no squarefree extension shift found");
  }
  FieldPtr ext = NumberField::make_trusted(norm.rational_coeffs());
  FieldElement gamma = FieldElement::generator(ext);
  // Image of theta: the unique common root of g_L(x) and hm(gamma - s*x).
  Polynomial gl = Polynomial::from_rationals(ext, l->min_poly());
  // Build hm(gamma - s*x) in ext[x]: coefficients of hm are in L; replace theta
  // by the indeterminate x (their coordinate polynomials), then substitute.
  Polynomial acc = Polynomial::zero(ext);
  Polynomial lin(ext, {gamma, FieldElement::from_rational(ext, Rational(-s))});  // gamma - s*x
  for (int j = hm.degree(); j >= 0; --j) {
    acc = acc * lin;
    // coordinate polynomial of coefficient j, mapped into ext[x]
    FieldElement cj = hm.coeff(j);
    std::vector<FieldElement> cc;
    for (const auto& r : cj.coords()) cc.push_back(FieldElement::from_rational(ext, r));
    acc = acc + Polynomial(ext, std::move(cc));
  }
  Polynomial g = poly_gcd(gl, acc);
  if (g.degree() != 1) raise(ErrorKind::Internal, "extension: theta image not unique");
  FieldElement tau = -g.make_monic().coeff(0);
  Embedding emb(l, ext, tau);
  FieldElement beta = gamma - tau.scaled(Rational(s));
  if (hm.map_coefficients(emb).eval(beta) != FieldElement::zero(ext))
    raise(ErrorKind::Internal, "extension root verification failed");
  return {ext, emb, beta};
}

SplittingFieldResult splitting_field(const Polynomial& p) {
  if (p.is_zero()) raise(ErrorKind::ZeroElement, "splitting field of zero");
  const FieldPtr& k = p.field();
  FieldPtr l = k;
  Embedding emb = Embedding::identity(k);
  for (;;) {
    Polynomial cur = squarefree_part(p.map_coefficients(emb));
    auto factors = factor_over_K(cur);
    std::vector<FieldElement> roots;
    const Polynomial* pending = nullptr;
    for (const auto& [h, mult] : factors) {
      (void)mult;
      if (h.degree() == 1)
        roots.push_back(-h.make_monic().coeff(0));
      else if (!pending)
        pending = &h;
    }
    if (!pending) {
      std::sort(roots.begin(), roots.end());
      return {l, emb, roots};
    }
    ExtensionResult er = extend_by_irreducible(*pending);
    l = er.field;
    emb = emb.then(er.embedding);
  }
}

}  // namespace ambra
