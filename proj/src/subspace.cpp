#include "ambra/subspace.hpp"

#include <algorithm>

#include "ambra/error.hpp"

namespace ambra {

Subspace Subspace::from_spanning_rows(const Matrix& rows) {
  RrefResult rr = rref(rows);
  Matrix basis = rr.r.submatrix(0, 0, rr.rank, rows.cols());
  return Subspace(rows.cols(), std::move(basis));
}

Subspace Subspace::zero(const FieldPtr& f, int ambient) {
  return Subspace(ambient, Matrix(f, 0, ambient));
}

Subspace Subspace::full(const FieldPtr& f, int ambient) {
  return Subspace(ambient, Matrix::identity(f, ambient));
}

Subspace Subspace::from_column(const Matrix& v) {
  return from_spanning_rows(v.transpose());
}

bool Subspace::contains_vector(const Matrix& v) const {
  if (v.rows() != ambient_ || v.cols() != 1) raise(ErrorKind::DimensionMismatch, "contains_vector");
  // Reduce v against the echelon basis (pivot of row r = its leading entry).
  std::vector<FieldElement> w;
  for (int i = 0; i < ambient_; ++i) w.push_back(v.at(i, 0));
  for (int r = 0; r < basis_.rows(); ++r) {
    int pc = -1;
    for (int j = 0; j < ambient_; ++j)
      if (!basis_.at(r, j).is_zero()) {
        pc = j;
        break;
      }
    if (pc < 0 || w[pc].is_zero()) continue;
    FieldElement f = w[pc];
    for (int j = pc; j < ambient_; ++j) w[j] = w[j] - f * basis_.at(r, j);
  }
  for (const auto& x : w)
    if (!x.is_zero()) return false;
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) raise(ErrorKind::DimensionMismatch, "contains");
  for (int r = 0; r < other.dim(); ++r) {
    Matrix v(field(), ambient_, 1);
    for (int j = 0; j < ambient_; ++j) v.at(j, 0) = other.basis_.at(r, j);
    if (!contains_vector(v)) return false;
  }
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && basis_ == o.basis_;
}

int Subspace::cmp(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_ ? -1 : 1;
  if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
  // Echelon-lexicographic: pivot column sequence first, then entries.
  auto pivot = [](const Subspace& s, int row) {
    for (int j = 0; j < s.ambient_; ++j)
      if (!s.basis_.at(row, j).is_zero()) return j;
    return s.ambient_;
  };
  for (int r = 0; r < a.dim(); ++r) {
    int pa = pivot(a, r), pb = pivot(b, r);
    if (pa != pb) return pa < pb ? -1 : 1;
  }
  return Matrix::cmp(a.basis_, b.basis_);
}

Subspace subspace_sum(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim()) raise(ErrorKind::DimensionMismatch, "subspace_sum");
  Matrix stacked(u.field(), u.dim() + w.dim(), u.ambient_dim());
  for (int i = 0; i < u.dim(); ++i)
    for (int j = 0; j < u.ambient_dim(); ++j) stacked.at(i, j) = u.basis().at(i, j);
  for (int i = 0; i < w.dim(); ++i)
    for (int j = 0; j < u.ambient_dim(); ++j) stacked.at(u.dim() + i, j) = w.basis().at(i, j);
  return Subspace::from_spanning_rows(stacked);
}

Subspace subspace_intersect(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim()) raise(ErrorKind::DimensionMismatch, "subspace_intersect");
  const int n = u.ambient_dim();
  const FieldPtr& f = u.field();
  // Zassenhaus block construction: rref of [[U,U],[W,0]]; rows whose left half
  // is zero carry intersection vectors in the right half.
  Matrix block(f, u.dim() + w.dim(), 2 * n);
  for (int i = 0; i < u.dim(); ++i)
    for (int j = 0; j < n; ++j) {
      block.at(i, j) = u.basis().at(i, j);
      block.at(i, n + j) = u.basis().at(i, j);
    }
  for (int i = 0; i < w.dim(); ++i)
    for (int j = 0; j < n; ++j) block.at(u.dim() + i, j) = w.basis().at(i, j);
  RrefResult rr = rref(block);
  std::vector<FieldElement> rows;
  int count = 0;
  for (int r = 0; r < rr.rank; ++r) {
    bool left_zero = true;
    for (int j = 0; j < n; ++j)
      if (!rr.r.at(r, j).is_zero()) {
        left_zero = false;
        break;
      }
    if (!left_zero) continue;
    for (int j = 0; j < n; ++j) rows.push_back(rr.r.at(r, n + j));
    ++count;
  }
  return Subspace::from_spanning_rows(Matrix(f, count, n, std::move(rows)));
}

bool subspace_contains(const Subspace& u, const Subspace& w) { return u.contains(w); }

Subspace eigenspace(const Matrix& a, const FieldElement& lambda) {
  if (!a.is_square()) raise(ErrorKind::NonSquare, "eigenspace");
  Matrix shifted = a;
  for (int i = 0; i < a.rows(); ++i) shifted.at(i, i) = shifted.at(i, i) - lambda;
  return Subspace::from_spanning_rows(kernel_basis(shifted));
}

int Decomposition::total_dim() const {
  int t = 0;
  for (const auto& p : pieces) t += p.dim();
  return t;
}

Decomposition Decomposition::single_full(const FieldPtr& f, int ambient) {
  return Decomposition{{Subspace::full(f, ambient)}, false};
}

bool Decomposition::operator==(const Decomposition& o) const {
  return partial == o.partial && pieces == o.pieces;
}

void check_direct_sum(const Decomposition& d) {
  if (d.partial) return;
  if (d.pieces.empty()) raise(ErrorKind::InvalidDecomposition, "empty decomposition");
  const int n = d.ambient_dim();
  if (d.total_dim() != n) raise(ErrorKind::InvalidDecomposition, "dimensions do not sum");
  Matrix stacked(d.pieces[0].field(), d.total_dim(), n);
  int r0 = 0;
  for (const auto& p : d.pieces) {
    for (int i = 0; i < p.dim(); ++i)
      for (int j = 0; j < n; ++j) stacked.at(r0 + i, j) = p.basis().at(i, j);
    r0 += p.dim();
  }
  if (rref(stacked).rank != n) raise(ErrorKind::InvalidDecomposition, "pieces are not independent");
}

Decomposition refine_decomposition(const Decomposition& d, const std::vector<Subspace>& s) {
  std::vector<Subspace> refiners = s;
  std::sort(refiners.begin(), refiners.end());
  Decomposition out;
  for (const auto& piece : d.pieces) {
    for (const auto& r : refiners) {
      if (r.ambient_dim() != piece.ambient_dim())
        raise(ErrorKind::DimensionMismatch, "refine_decomposition ambient mismatch");
      Subspace inter = subspace_intersect(piece, r);
      if (!inter.is_zero()) out.pieces.push_back(inter);
    }
  }
  out.partial = out.pieces.empty() || out.total_dim() != d.ambient_dim();
  if (!out.partial) check_direct_sum(out);
  return out;
}

Matrix restrict_to(const Matrix& a, const Subspace& w) {
  if (!a.is_square() || a.rows() != w.ambient_dim())
    raise(ErrorKind::DimensionMismatch, "restrict_to");
  const FieldPtr& f = a.field();
  const int k = w.dim(), n = w.ambient_dim();
  // Images of basis vectors, as columns.
  Matrix images(f, n, k);
  for (int i = 0; i < k; ++i) {
    Matrix v(f, n, 1);
    for (int j = 0; j < n; ++j) v.at(j, 0) = w.basis().at(i, j);
    Matrix img = a * v;
    for (int j = 0; j < n; ++j) images.at(j, i) = img.at(j, 0);
  }
  // Solve basis^T * X = images for the coordinate matrix X (k x k).
  Matrix bt = w.basis().transpose();  // n x k
  auto x = solve(bt, images);
  if (!x) raise(ErrorKind::NotInvariant, "subspace is not invariant");
  // Exactness check: bt * X == images is guaranteed by solve's construction
  // only on pivot rows; verify fully.
  if (bt * *x != images) raise(ErrorKind::NotInvariant, "subspace is not invariant");
  return *x;
}

}  // namespace ambra
