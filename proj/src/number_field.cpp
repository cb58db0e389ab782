#include "ambra/number_field.hpp"

#include <algorithm>
#include <sstream>

#include "ambra/error.hpp"

namespace ambra {

NumberField::NumberField(std::vector<Rational> min_poly) : min_poly_(std::move(min_poly)) {
  const int d = degree();
  if (d < 1) raise(ErrorKind::Internal, "number field needs degree >= 1");
  if (min_poly_.back() != 1) raise(ErrorKind::Internal, "minimal polynomial must be monic");
  // power_table_[k] = coordinates of x^(d+k), for k in [0, d-2].
  if (d >= 2) {
    std::vector<Rational> cur(d);  // x^d = -(c_0 + ... + c_{d-1} x^{d-1})
    for (int i = 0; i < d; ++i) cur[i] = -min_poly_[i];
    power_table_.push_back(cur);
    for (int k = 1; k + 1 <= d - 1; ++k) {
      // multiply by x, reduce
      std::vector<Rational> nxt(d);
      for (int i = d - 1; i >= 1; --i) nxt[i] = cur[i - 1];
      nxt[0] = 0;
      const Rational& top = cur[d - 1];
      if (top != 0)
        for (int i = 0; i < d; ++i) nxt[i] += top * power_table_[0][i];
      power_table_.push_back(nxt);
      cur = std::move(nxt);
    }
  }
}

FieldPtr NumberField::make_trusted(std::vector<Rational> min_poly) {
  return FieldPtr(new NumberField(std::move(min_poly)));
}

const FieldPtr& NumberField::rationals() {
  static FieldPtr q = make_trusted({Rational(0), Rational(1)});  // x
  return q;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_presentation(*b);
}

FieldElement::FieldElement() : field_(NumberField::rationals()), coords_(1, Rational(0)) {}

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != field_->degree())
    raise(ErrorKind::Internal, "coordinate count does not match field degree");
}

FieldElement FieldElement::zero(const FieldPtr& f) {
  return FieldElement(f, std::vector<Rational>(f->degree(), Rational(0)));
}

FieldElement FieldElement::one(const FieldPtr& f) { return from_rational(f, Rational(1)); }

FieldElement FieldElement::from_rational(const FieldPtr& f, const Rational& r) {
  std::vector<Rational> c(f->degree(), Rational(0));
  c[0] = r;
  return FieldElement(f, std::move(c));
}

FieldElement FieldElement::generator(const FieldPtr& f) {
  if (f->degree() == 1) {
    // theta = -c0 for Q[x]/(x - c0) presentations
    return from_rational(f, -f->min_poly()[0]);
  }
  std::vector<Rational> c(f->degree(), Rational(0));
  c[1] = 1;
  return FieldElement(f, std::move(c));
}

bool FieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& r) { return r == 0; });
}

bool FieldElement::is_one() const {
  if (coords_[0] != 1) return false;
  for (size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

Rational FieldElement::rational_value() const {
  if (!is_rational()) raise(ErrorKind::Internal, "element is not rational");
  return coords_[0];
}

namespace {

// Coerces a pair of elements to a common field; only degree-1 (rational)
// presentations are coerced implicitly.
void align(const FieldElement& a, const FieldElement& b, FieldElement& oa, FieldElement& ob) {
  if (same_field(a.field(), b.field())) {
    oa = a;
    ob = b;
    return;
  }
  if (a.field()->is_rational() && a.is_rational()) {
    oa = FieldElement::from_rational(b.field(), a.rational_value());
    ob = b;
    return;
  }
  if (b.field()->is_rational() && b.is_rational()) {
    oa = a;
    ob = FieldElement::from_rational(a.field(), b.rational_value());
    return;
  }
  raise(ErrorKind::FieldMismatch, "elements of structurally different fields");
}

}  // namespace

FieldElement FieldElement::operator-() const {
  std::vector<Rational> c(coords_);
  for (auto& x : c) x = -x;
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  FieldElement a, b;
  align(*this, o, a, b);
  std::vector<Rational> c(a.coords_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
  return FieldElement(a.field_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  FieldElement a, b;
  align(*this, o, a, b);
  const int d = a.field_->degree();
  if (d == 1) return FieldElement(a.field_, {a.coords_[0] * b.coords_[0]});
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (int i = 0; i < d; ++i) {
    if (a.coords_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b.coords_[j] == 0) continue;
      prod[i + j] += a.coords_[i] * b.coords_[j];
    }
  }
  std::vector<Rational> c(prod.begin(), prod.begin() + d);
  const auto& table = a.field_->power_table();
  for (int k = d; k < 2 * d - 1; ++k) {
    if (prod[k] == 0) continue;
    const auto& row = table[k - d];
    for (int i = 0; i < d; ++i) c[i] += prod[k] * row[i];
  }
  return FieldElement(a.field_, std::move(c));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) raise(ErrorKind::ZeroElement, "inverse of zero");
  const int d = field_->degree();
  if (d == 1) return FieldElement(field_, {1 / coords_[0]});
  // Extended Euclid on (min_poly, this) in Q[x].
  std::vector<Rational> r0(field_->min_poly());
  std::vector<Rational> r1(coords_);
  while (!r1.empty() && r1.back() == 0) r1.pop_back();
  std::vector<Rational> s0{Rational(0)}, s1{Rational(1)};  // coeffs of `this`
  auto deg = [](const std::vector<Rational>& p) { return static_cast<int>(p.size()) - 1; };
  while (deg(r1) > 0) {
    // divide r0 by r1
    std::vector<Rational> rem(r0), q(std::max(0, deg(r0) - deg(r1)) + 1, Rational(0));
    while (deg(rem) >= deg(r1) && !(rem.size() == 1 && rem[0] == 0)) {
      int shift = deg(rem) - deg(r1);
      Rational f = rem.back() / r1.back();
      q[shift] += f;
      for (int i = 0; i <= deg(r1); ++i) rem[i + shift] -= f * r1[i];
      while (rem.size() > 1 && rem.back() == 0) rem.pop_back();
      if (rem.size() == 1 && rem[0] == 0) break;
    }
    // s_new = s0 - q*s1
    std::vector<Rational> snew(std::max(s0.size(), q.size() + s1.size()), Rational(0));
    for (size_t i = 0; i < s0.size(); ++i) snew[i] += s0[i];
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < s1.size(); ++j) snew[i + j] -= q[i] * s1[j];
    }
    while (snew.size() > 1 && snew.back() == 0) snew.pop_back();
    r0 = std::move(r1);
    r1 = std::move(rem);
    while (r1.size() > 1 && r1.back() == 0) r1.pop_back();
    s0 = std::move(s1);
    s1 = std::move(snew);
  }
  if (r1.empty() || r1[0] == 0) raise(ErrorKind::Internal, "non-unit in number field");
  Rational scale = 1 / r1[0];
  std::vector<Rational> c(d, Rational(0));
  for (size_t i = 0; i < s1.size() && i < static_cast<size_t>(d); ++i) c[i] = s1[i] * scale;
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::pow(const Integer& e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement base = *this, acc = FieldElement::one(field_);
  Integer n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = acc * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return acc;
}

FieldElement FieldElement::scaled(const Rational& r) const {
  std::vector<Rational> c(coords_);
  for (auto& x : c) x *= r;
  return FieldElement(field_, std::move(c));
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (!same_field(field_, o.field_)) {
    if (is_rational() && o.is_rational()) return rational_value() == o.rational_value();
    return false;
  }
  return coords_ == o.coords_;
}

int FieldElement::cmp(const FieldElement& a, const FieldElement& b) {
  if (a.field_->degree() != b.field_->degree()) return a.field_->degree() < b.field_->degree() ? -1 : 1;
  for (int i = 0; i < a.field_->degree(); ++i) {
    int c = rational_cmp(a.coords_[i], b.coords_[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string FieldElement::to_string() const {
  if (field_->degree() == 1 || is_rational()) return rational_to_string(coords_[0]);
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < field_->degree(); ++i) {
    if (coords_[i] == 0) continue;
    if (!first) os << " + ";
    os << rational_to_string(coords_[i]);
    if (i >= 1) os << "*t" << (i > 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Embedding::Embedding(FieldPtr from, FieldPtr to, FieldElement gen_image)
    : from_(std::move(from)), to_(std::move(to)), gen_image_(std::move(gen_image)) {
  if (!same_field(gen_image_.field(), to_))
    raise(ErrorKind::Internal, "embedding image lives in the wrong field");
  gen_powers_.reserve(from_->degree());
  FieldElement p = FieldElement::one(to_);
  for (int i = 0; i < from_->degree(); ++i) {
    gen_powers_.push_back(p);
    if (i + 1 < from_->degree()) p = p * gen_image_;
  }
}

Embedding Embedding::identity(const FieldPtr& f) {
  return Embedding(f, f, FieldElement::generator(f));
}

FieldElement Embedding::map(const FieldElement& x) const {
  if (!same_field(x.field(), from_)) {
    if (x.is_rational()) return FieldElement::from_rational(to_, x.rational_value());
    raise(ErrorKind::FieldMismatch, "embedding applied to foreign element");
  }
  FieldElement acc = FieldElement::zero(to_);
  for (int i = 0; i < from_->degree(); ++i) {
    if (x.coords()[i] == 0) continue;
    acc = acc + gen_powers_[i].scaled(x.coords()[i]);
  }
  return acc;
}

Embedding Embedding::then(const Embedding& next) const {
  if (!same_field(to_, next.from_)) raise(ErrorKind::Internal, "embedding composition mismatch");
  return Embedding(from_, next.to_, next.map(gen_image_));
}

std::optional<FieldElement> Embedding::preimage(const FieldElement& x) const {
  // Solve sum_i c_i * gen_powers_[i] = x over Q by Gaussian elimination.
  const int n = to_->degree(), k = from_->degree();
  std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(k + 1, Rational(0)));
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) aug[i][j] = gen_powers_[j].coords()[i];
  for (int i = 0; i < n; ++i) aug[i][k] = x.coords()[i];
  int row = 0;
  std::vector<int> pivot_col(k, -1);
  for (int col = 0; col < k && row < n; ++col) {
    int pr = -1;
    for (int r = row; r < n; ++r)
      if (aug[r][col] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(aug[row], aug[pr]);
    Rational inv = 1 / aug[row][col];
    for (int j = col; j <= k; ++j) aug[row][j] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == row || aug[r][col] == 0) continue;
      Rational f = aug[r][col];
      for (int j = col; j <= k; ++j) aug[r][j] -= f * aug[row][j];
    }
    pivot_col[col] = row;
    ++row;
  }
  // Consistency: rows past `row` must have zero rhs.
  for (int r = row; r < n; ++r)
    if (aug[r][k] != 0) return std::nullopt;
  std::vector<Rational> c(k, Rational(0));
  for (int col = 0; col < k; ++col)
    if (pivot_col[col] >= 0) c[col] = aug[pivot_col[col]][k];
  // All non-pivot columns would be free; the embedding is injective so they
  // should not appear, but verify the solution exactly.
  FieldElement cand(from_, std::move(c));
  if (map(cand) != x) return std::nullopt;
  return cand;
}

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotSteady: return "NotSteady";
    case ErrorKind::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::Irreducible: return "Irreducible";
    case ErrorKind::NotMonomial: return "NotMonomial";
    case ErrorKind::UnknownLetter: return "UnknownLetter";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::InvalidCertificate: return "InvalidCertificate";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::OutOfScope: return "OutOfScope";
    case ErrorKind::TargetUnreachable: return "TargetUnreachable";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace ambra
