#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgc/field.hpp"

namespace dgc {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over a Field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field F, int rows, int cols);

  static Matrix identity(Field F, int n);
  static Matrix zero(Field F, int rows, int cols) { return Matrix(F, rows, cols); }
  static Matrix from_ints(Field F, const std::vector<std::vector<long long>>& rows);
  static Matrix column(const Vector& v);
  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field& field() const { return field_; }

  Scalar& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix scaled(const Scalar& s) const;
  Vector apply(const Vector& v) const;

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;
  bool is_identity() const;

  Matrix transpose() const;
  Matrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Matrix& b);
  void add_block(int r0, int c0, const Matrix& b);
  Matrix select_rows(const std::vector<int>& idx) const;
  Matrix select_cols(const std::vector<int>& idx) const;
  Vector col(int j) const;
  void set_col(int j, const Vector& v);

  std::vector<std::vector<std::string>> to_strings() const;

 private:
  Field field_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> data_;
};

struct Rref {
  Matrix reduced;
  std::vector<int> pivots;
  int rank = 0;
};

/// Reduced row echelon form with leftmost-nonzero pivoting.
Rref rref(const Matrix& M);
int rank(const Matrix& M);
/// Columns span the null space; free variables carry the identity pattern.
Matrix kernel_basis(const Matrix& M);

struct Cokernel {
  Matrix projection;  // q x rows
  Matrix section;     // rows x q, standard basis vectors completing the image
};
Cokernel cokernel(const Matrix& M);

/// Throws std::invalid_argument on dimension mismatch.
std::optional<Vector> solve(const Matrix& M, const Vector& b);
std::optional<Matrix> solve(const Matrix& M, const Matrix& B);
std::optional<Matrix> inverse(const Matrix& M);
/// P with P*E = I for E of full column rank.
Matrix left_inverse(const Matrix& E);
bool in_column_space(const Matrix& M, const Vector& v);
bool same_column_space(const Matrix& A, const Matrix& B);

}  // namespace dgc
