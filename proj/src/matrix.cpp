#include "ambra/matrix.hpp"

#include <sstream>

#include "ambra/error.hpp"

namespace ambra {

Matrix::Matrix() : field_(NumberField::rationals()), rows_(0), cols_(0) {}

Matrix::Matrix(FieldPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols),
      e_(static_cast<size_t>(rows) * cols, FieldElement::zero(field_)) {
  if (rows < 0 || cols < 0) raise(ErrorKind::Internal, "negative matrix shape");
}

Matrix::Matrix(FieldPtr field, int rows, int cols, std::vector<FieldElement> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (e_.size() != static_cast<size_t>(rows) * cols)
    raise(ErrorKind::Internal, "entry count does not match shape");
  for (const auto& x : e_)
    if (!same_field(x.field(), field_)) raise(ErrorKind::FieldMismatch, "matrix entry field mismatch");
}

Matrix Matrix::identity(const FieldPtr& f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(f);
  return m;
}

Matrix Matrix::from_rationals(const FieldPtr& f, const std::vector<std::vector<Rational>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Matrix m(f, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) raise(ErrorKind::Internal, "ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = FieldElement::from_rational(f, rows[i][j]);
  }
  return m;
}

Matrix Matrix::row_vector(const FieldPtr& f, std::vector<FieldElement> v) {
  int n = static_cast<int>(v.size());
  return Matrix(f, 1, n, std::move(v));
}

Matrix Matrix::column_vector(const FieldPtr& f, std::vector<FieldElement> v) {
  int n = static_cast<int>(v.size());
  return Matrix(f, n, 1, std::move(v));
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) raise(ErrorKind::DimensionMismatch, "matrix add");
  Matrix m(field_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] + o.e_[i];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) raise(ErrorKind::DimensionMismatch, "matrix sub");
  Matrix m(field_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] - o.e_[i];
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) raise(ErrorKind::DimensionMismatch, "matrix mul");
  Matrix m(field_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const FieldElement& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const FieldElement& bkj = o.at(k, j);
        if (bkj.is_zero()) continue;
        m.at(i, j) = m.at(i, j) + aik * bkj;
      }
    }
  return m;
}

Matrix Matrix::scaled(const FieldElement& c) const {
  Matrix m(field_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] * c;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Matrix Matrix::pow(const Integer& e) const {
  if (!is_square()) raise(ErrorKind::NonSquare, "matrix power");
  if (e < 0) return inverse().pow(-e);
  Matrix acc = identity(field_, rows_);
  Matrix base = *this;
  Integer n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = acc * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return acc;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

bool Matrix::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (i == j && !at(i, j).is_one()) return false;
      if (i != j && !at(i, j).is_zero()) return false;
    }
  return true;
}

bool Matrix::is_scalar() const {
  if (!is_square() || rows_ == 0) return false;
  const FieldElement& c = at(0, 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (i == j && at(i, j) != c) return false;
      if (i != j && !at(i, j).is_zero()) return false;
    }
  return true;
}

FieldElement Matrix::det() const {
  if (!is_square()) raise(ErrorKind::NonSquare, "determinant");
  Matrix m = *this;
  FieldElement d = FieldElement::one(field_);
  for (int col = 0, row = 0; col < cols_ && row < rows_; ++col, ++row) {
    int pr = -1;
    for (int r = row; r < rows_; ++r)
      if (!m.at(r, col).is_zero()) {
        pr = r;
        break;
      }
    if (pr < 0) return FieldElement::zero(field_);
    if (pr != row) {
      for (int j = 0; j < cols_; ++j) std::swap(m.at(pr, j), m.at(row, j));
      d = -d;
    }
    d = d * m.at(row, col);
    FieldElement inv = m.at(row, col).inverse();
    for (int r = row + 1; r < rows_; ++r) {
      if (m.at(r, col).is_zero()) continue;
      FieldElement f = m.at(r, col) * inv;
      for (int j = col; j < cols_; ++j) m.at(r, j) = m.at(r, j) - f * m.at(row, j);
    }
  }
  return d;
}

bool Matrix::invertible() const { return is_square() && !det().is_zero(); }

Matrix Matrix::inverse() const {
  if (!is_square()) raise(ErrorKind::NonSquare, "inverse");
  const int n = rows_;
  Matrix aug(field_, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, n + i) = FieldElement::one(field_);
  }
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int pr = -1;
    for (int r = row; r < n; ++r)
      if (!aug.at(r, col).is_zero()) {
        pr = r;
        break;
      }
    if (pr < 0) raise(ErrorKind::Singular, "matrix is singular");
    if (pr != row)
      for (int j = 0; j < 2 * n; ++j) std::swap(aug.at(pr, j), aug.at(row, j));
    FieldElement inv = aug.at(row, col).inverse();
    for (int j = col; j < 2 * n; ++j) aug.at(row, j) = aug.at(row, j) * inv;
    for (int r = 0; r < n; ++r) {
      if (r == row || aug.at(r, col).is_zero()) continue;
      FieldElement f = aug.at(r, col);
      for (int j = col; j < 2 * n; ++j) aug.at(r, j) = aug.at(r, j) - f * aug.at(row, j);
    }
    ++row;
  }
  if (row < n) raise(ErrorKind::Singular, "matrix is singular");
  return aug.submatrix(0, n, n, n);
}

Matrix Matrix::map_entries(const Embedding& emb) const {
  Matrix m(emb.to(), rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(i, j) = emb.map(at(i, j));
  return m;
}

Matrix Matrix::submatrix(int r0, int c0, int nrows, int ncols) const {
  Matrix m(field_, nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) m.at(i, j) = at(r0 + i, c0 + j);
  return m;
}

int Matrix::cmp(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_ ? -1 : 1;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_ ? -1 : 1;
  for (size_t i = 0; i < a.e_.size(); ++i) {
    int c = FieldElement::cmp(a.e_[i], b.e_[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).to_string();
  }
  os << "]";
  return os.str();
}

RrefResult rref(const Matrix& m) {
  Matrix r = m;
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < r.cols() && row < r.rows(); ++col) {
    int pr = -1;
    for (int i = row; i < r.rows(); ++i)
      if (!r.at(i, col).is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < r.cols(); ++j) std::swap(r.at(pr, j), r.at(row, j));
    FieldElement inv = r.at(row, col).inverse();
    for (int j = col; j < r.cols(); ++j) r.at(row, j) = r.at(row, j) * inv;
    for (int i = 0; i < r.rows(); ++i) {
      if (i == row || r.at(i, col).is_zero()) continue;
      FieldElement f = r.at(i, col);
      for (int j = col; j < r.cols(); ++j) r.at(i, j) = r.at(i, j) - f * r.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {r, pivots, row};
}

Matrix kernel_basis(const Matrix& m) {
  RrefResult rr = rref(m);
  const int n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (int c : rr.pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix basis(m.field(), static_cast<int>(free_cols.size()), n);
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    basis.at(static_cast<int>(k), fc) = FieldElement::one(m.field());
    for (size_t pi = 0; pi < rr.pivots.size(); ++pi)
      basis.at(static_cast<int>(k), rr.pivots[pi]) = -rr.r.at(static_cast<int>(pi), fc);
  }
  // Canonicalize the kernel basis itself.
  return rref(basis).r;
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
  if (m.rows() != b.rows()) raise(ErrorKind::DimensionMismatch, "solve");
  Matrix aug(m.field(), m.rows(), m.cols() + b.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    for (int j = 0; j < b.cols(); ++j) aug.at(i, m.cols() + j) = b.at(i, j);
  }
  RrefResult rr = rref(aug);
  // Inconsistent iff a pivot lands in the rhs block.
  for (int c : rr.pivots)
    if (c >= m.cols()) return std::nullopt;
  Matrix x(m.field(), m.cols(), b.cols());
  for (size_t pi = 0; pi < rr.pivots.size(); ++pi)
    for (int j = 0; j < b.cols(); ++j)
      x.at(rr.pivots[pi], j) = rr.r.at(static_cast<int>(pi), m.cols() + j);
  return x;
}

Polynomial charpoly(const Matrix& a) {
  if (!a.is_square()) raise(ErrorKind::NonSquare, "charpoly");
  const FieldPtr& f = a.field();
  const int n = a.rows();
  // Faddeev–LeVerrier: exact in characteristic zero.
  std::vector<FieldElement> c(n + 1, FieldElement::zero(f));
  c[n] = FieldElement::one(f);
  Matrix m = Matrix(f, n, n);
  for (int k = 1; k <= n; ++k) {
    // M_k = A (M_{k-1} + c_{n-k+1} I)
    Matrix t = m;
    for (int i = 0; i < n; ++i) t.at(i, i) = t.at(i, i) + c[n - k + 1];
    m = a * t;
    FieldElement tr = FieldElement::zero(f);
    for (int i = 0; i < n; ++i) tr = tr + m.at(i, i);
    c[n - k] = tr.scaled(Rational(-1, k));
  }
  return Polynomial(f, std::move(c));
}

Polynomial minpoly(const Matrix& a) {
  if (!a.is_square()) raise(ErrorKind::NonSquare, "minpoly");
  const FieldPtr& f = a.field();
  const int n = a.rows();
  if (n == 0) return Polynomial::one(f);
  // Krylov on matrix powers, flattened to n^2-vectors.
  std::vector<Matrix> powers{Matrix::identity(f, n)};
  for (int t = 1; t <= n; ++t) {
    powers.push_back(powers.back() * a);
    Matrix sys(f, n * n, t);
    Matrix rhs(f, n * n, 1);
    for (int j = 0; j < t; ++j)
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) sys.at(i * n + k, j) = powers[j].at(i, k);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) rhs.at(i * n + k, 0) = powers[t].at(i, k);
    auto x = solve(sys, rhs);
    if (!x) continue;
    std::vector<FieldElement> coeffs;
    for (int j = 0; j < t; ++j) coeffs.push_back(-x->at(j, 0));
    coeffs.push_back(FieldElement::one(f));
    return Polynomial(f, std::move(coeffs));
  }
  raise(ErrorKind::Internal, "minpoly not found");
}

bool is_diagonalizable(const Matrix& a) {
  if (!a.is_square()) raise(ErrorKind::NonSquare, "is_diagonalizable");
  if (a.rows() == 0) return true;
  return is_squarefree(minpoly(a));
}

}  // namespace ambra
