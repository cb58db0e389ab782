#include "ambra/polynomial.hpp"

#include <sstream>

#include "ambra/error.hpp"

namespace ambra {

Polynomial::Polynomial(FieldPtr field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (!same_field(c.field(), field_)) raise(ErrorKind::FieldMismatch, "coefficient field mismatch");
  normalize();
}

void Polynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::constant(const FieldPtr& f, const FieldElement& c) {
  return Polynomial(f, {c});
}

Polynomial Polynomial::x(const FieldPtr& f) {
  return Polynomial(f, {FieldElement::zero(f), FieldElement::one(f)});
}

Polynomial Polynomial::from_rationals(const FieldPtr& f, const std::vector<Rational>& coeffs) {
  std::vector<FieldElement> c;
  c.reserve(coeffs.size());
  for (const auto& r : coeffs) c.push_back(FieldElement::from_rational(f, r));
  return Polynomial(f, std::move(c));
}

const FieldElement& Polynomial::leading() const {
  if (is_zero()) raise(ErrorKind::Internal, "leading coefficient of zero polynomial");
  return coeffs_.back();
}

FieldElement Polynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return FieldElement::zero(field_);
  return coeffs_[i];
}

bool Polynomial::has_rational_coeffs() const {
  for (const auto& c : coeffs_)
    if (!c.is_rational()) return false;
  return true;
}

std::vector<Rational> Polynomial::rational_coeffs() const {
  std::vector<Rational> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.rational_value());
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<FieldElement> c(std::max(coeffs_.size(), o.coeffs_.size()), FieldElement::zero(field_));
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] = c[i] + o.coeffs_[i];
  return Polynomial(field_, std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<FieldElement> c(std::max(coeffs_.size(), o.coeffs_.size()), FieldElement::zero(field_));
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] = c[i] - o.coeffs_[i];
  return Polynomial(field_, std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial(field_);
  std::vector<FieldElement> c(coeffs_.size() + o.coeffs_.size() - 1, FieldElement::zero(field_));
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (size_t j = 0; j < o.coeffs_.size(); ++j) {
      if (o.coeffs_[j].is_zero()) continue;
      c[i + j] = c[i + j] + coeffs_[i] * o.coeffs_[j];
    }
  }
  return Polynomial(field_, std::move(c));
}

Polynomial Polynomial::scaled(const FieldElement& s) const {
  std::vector<FieldElement> c(coeffs_);
  for (auto& x : c) x = x * s;
  return Polynomial(field_, std::move(c));
}

Polynomial Polynomial::shifted(int k) const {
  if (is_zero()) return *this;
  std::vector<FieldElement> c(coeffs_.size() + k, FieldElement::zero(field_));
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i + k] = coeffs_[i];
  return Polynomial(field_, std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) raise(ErrorKind::ZeroElement, "polynomial division by zero");
  Polynomial rem = *this;
  std::vector<FieldElement> q(std::max(0, degree() - d.degree()) + 1, FieldElement::zero(field_));
  FieldElement lc_inv = d.leading().inverse();
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    int shift = rem.degree() - d.degree();
    FieldElement f = rem.leading() * lc_inv;
    q[shift] = q[shift] + f;
    std::vector<FieldElement> rc(rem.coeffs_);
    for (int i = 0; i <= d.degree(); ++i) rc[i + shift] = rc[i + shift] - f * d.coeffs_[i];
    rem = Polynomial(field_, std::move(rc));
  }
  return {Polynomial(field_, std::move(q)), rem};
}

bool Polynomial::divides(const Polynomial& multiple) const {
  if (is_zero()) return multiple.is_zero();
  return multiple.divmod(*this).second.is_zero();
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial(field_);
  std::vector<FieldElement> c;
  c.reserve(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i)
    c.push_back(coeffs_[i].scaled(Rational(static_cast<long>(i))));
  return Polynomial(field_, std::move(c));
}

Polynomial Polynomial::make_monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

Polynomial Polynomial::pow(unsigned long e) const {
  Polynomial acc = Polynomial::one(field_);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

Polynomial Polynomial::x_power_mod(const Integer& e) const {
  if (!is_monic() || degree() < 1) raise(ErrorKind::Internal, "x_power_mod needs monic modulus");
  if (e < 0) raise(ErrorKind::Internal, "negative exponent");
  Polynomial acc = Polynomial::one(field_) % *this;
  Polynomial base = Polynomial::x(field_) % *this;
  Integer n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = (acc * base) % *this;
    n >>= 1;
    if (n > 0) base = (base * base) % *this;
  }
  return acc;
}

FieldElement Polynomial::eval(const FieldElement& at) const {
  FieldElement acc = FieldElement::zero(at.field());
  for (int i = degree(); i >= 0; --i) {
    acc = acc * at;
    acc = acc + coeffs_[i];
  }
  return acc;
}

Polynomial Polynomial::map_coefficients(const Embedding& emb) const {
  std::vector<FieldElement> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(emb.map(x));
  return Polynomial(emb.to(), std::move(c));
}

Polynomial Polynomial::taylor_shift(const FieldElement& c) const {
  // p(x + c) by Horner: process coefficients from the top.
  Polynomial acc = Polynomial::zero(field_);
  Polynomial xc(field_, {c, FieldElement::one(field_)});
  for (int i = degree(); i >= 0; --i) {
    acc = acc * xc;
    acc = acc + Polynomial::constant(field_, coeffs_[i]);
  }
  return acc;
}

Polynomial Polynomial::compose_scale(const FieldElement& c) const {
  // p(c*x): coefficient i picks up c^i.
  std::vector<FieldElement> out(coeffs_);
  FieldElement p = FieldElement::one(field_);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = out[i] * p;
    if (i + 1 < out.size()) p = p * c;
  }
  return Polynomial(field_, std::move(out));
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (degree() != o.degree()) return false;
  for (int i = 0; i <= degree(); ++i)
    if (coeffs_[i] != o.coeffs_[i]) return false;
  return true;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << coeffs_[i].to_string() << ")";
    if (i >= 1) {
      os << "*x";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial r0 = a, r1 = b;
  while (!r1.is_zero()) {
    Polynomial r2 = r0 % r1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    if (!r1.is_zero()) r1 = r1.make_monic();  // keeps coefficient growth in check
  }
  if (r0.is_zero()) return r0;
  return r0.make_monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero() || p.degree() == 0) return p.make_monic();
  Polynomial g = poly_gcd(p, p.derivative());
  return (p / g).make_monic();
}

bool is_squarefree(const Polynomial& p) {
  if (p.is_zero()) return false;
  if (p.degree() <= 1) return true;
  return poly_gcd(p, p.derivative()).degree() == 0;
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p) {
  std::vector<std::pair<Polynomial, int>> out;
  if (p.is_zero()) raise(ErrorKind::ZeroElement, "squarefree decomposition of zero");
  Polynomial f = p.make_monic();
  if (f.degree() == 0) return out;
  // Yun's algorithm.
  Polynomial fp = f.derivative();
  Polynomial a = poly_gcd(f, fp);
  Polynomial b = f / a;
  Polynomial c = fp / a;
  Polynomial d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Polynomial g = poly_gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g.make_monic(), i);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

int poly_cmp(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int i = a.degree(); i >= 0; --i) {
    int c = FieldElement::cmp(a.coeff(i), b.coeff(i));
    if (c != 0) return c;
  }
  return 0;
}

}  // namespace ambra
