#pragma once

#include <vector>

#include "ambra/polynomial.hpp"

namespace ambra {

// Dense exact matrix over a number field, row-major.
class Matrix {
 public:
  Matrix();                                    // 0x0 over the rationals
  Matrix(FieldPtr field, int rows, int cols);  // zero matrix
  Matrix(FieldPtr field, int rows, int cols, std::vector<FieldElement> entries);

  static Matrix identity(const FieldPtr& f, int n);
  static Matrix from_rationals(const FieldPtr& f, const std::vector<std::vector<Rational>>& rows);
  static Matrix row_vector(const FieldPtr& f, std::vector<FieldElement> v);
  static Matrix column_vector(const FieldPtr& f, std::vector<FieldElement> v);

  const FieldPtr& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const FieldElement& at(int r, int c) const { return e_[r * cols_ + c]; }
  FieldElement& at(int r, int c) { return e_[r * cols_ + c]; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const FieldElement& c) const;
  Matrix transpose() const;
  Matrix pow(const Integer& e) const;  // negative exponents invert

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_identity() const;
  // Scalar multiple of the identity.
  bool is_scalar() const;

  FieldElement det() const;
  bool invertible() const;
  Matrix inverse() const;  // Errors: Singular

  Matrix map_entries(const Embedding& emb) const;
  Matrix submatrix(int r0, int c0, int nrows, int ncols) const;

  // Deterministic total order (shape, then entry lex).
  static int cmp(const Matrix& a, const Matrix& b);
  bool operator<(const Matrix& o) const { return cmp(*this, o) < 0; }

  std::string to_string() const;

 private:
  FieldPtr field_;
  int rows_, cols_;
  std::vector<FieldElement> e_;
};

struct RrefResult {
  Matrix r;                 // reduced row-echelon form
  std::vector<int> pivots;  // pivot column per pivot row
  int rank;
};

// Deterministic reduced row-echelon form (first-nonzero pivoting).
RrefResult rref(const Matrix& m);

// Basis of the right kernel {v : M v = 0}, rows in canonical RREF.
Matrix kernel_basis(const Matrix& m);

// Solves M x = b; empty when inconsistent (x is a column).
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);

// Characteristic polynomial (monic, Faddeev–LeVerrier; characteristic zero).
// Errors: NonSquare.
Polynomial charpoly(const Matrix& a);

// Minimal polynomial via Krylov iteration on the matrix powers.
// Errors: NonSquare.
Polynomial minpoly(const Matrix& a);

// True iff minpoly is squarefree (diagonalizable over the algebraic closure).
// Errors: NonSquare.
bool is_diagonalizable(const Matrix& a);

}  // namespace ambra
