#include "dgc/matrix.hpp"

#include <stdexcept>

namespace dgc {

namespace {

void check_shape(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("matrix dimension mismatch in ") + what);
}

uint64_t inv_mod(uint64_t a, uint64_t p) {
  uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

Rref rref_prime(const Matrix& M) {
  const uint64_t p = M.field().characteristic();
  const int R = M.rows(), C = M.cols();
  std::vector<uint64_t> a(static_cast<size_t>(R) * C);
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) a[static_cast<size_t>(i) * C + j] = M(i, j).residue();
  auto at = [&](int i, int j) -> uint64_t& { return a[static_cast<size_t>(i) * C + j]; };
  Rref out;
  int row = 0;
  for (int c = 0; c < C && row < R; ++c) {
    int piv = -1;
    for (int i = row; i < R; ++i)
      if (at(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < C; ++j) std::swap(at(piv, j), at(row, j));
    uint64_t inv = inv_mod(at(row, c), p);
    for (int j = c; j < C; ++j) at(row, j) = at(row, j) * inv % p;
    for (int i = 0; i < R; ++i) {
      if (i == row || !at(i, c)) continue;
      uint64_t f = p - at(i, c);
      for (int j = c; j < C; ++j)
        if (at(row, j)) at(i, j) = (at(i, j) + f * at(row, j)) % p;
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.rank = row;
  out.reduced = Matrix(M.field(), R, C);
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j)
      if (at(i, j)) out.reduced(i, j) = M.field().from_int(static_cast<long long>(at(i, j)));
  return out;
}

Rref rref_rational(const Matrix& M) {
  Matrix A = M;
  const int R = A.rows(), C = A.cols();
  Rref out;
  int row = 0;
  for (int c = 0; c < C && row < R; ++c) {
    int piv = -1;
    for (int i = row; i < R; ++i)
      if (!A(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < C; ++j) std::swap(A(piv, j), A(row, j));
    Scalar inv = A(row, c).inverse();
    for (int j = c; j < C; ++j)
      if (!A(row, j).is_zero()) A(row, j) *= inv;
    for (int i = 0; i < R; ++i) {
      if (i == row || A(i, c).is_zero()) continue;
      Scalar f = -A(i, c);
      for (int j = c; j < C; ++j)
        if (!A(row, j).is_zero()) A(i, j).add_mul(f, A(row, j));
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.rank = row;
  out.reduced = std::move(A);
  return out;
}

}  // namespace

Matrix::Matrix(Field F, int rows, int cols) : field_(F), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  data_.assign(static_cast<size_t>(rows) * cols, F.zero());
}

Matrix Matrix::identity(Field F, int n) {
  Matrix m(F, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = F.one();
  return m;
}

Matrix Matrix::from_ints(Field F, const std::vector<std::vector<long long>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(F, r, c);
  for (int i = 0; i < r; ++i) {
    check_shape(static_cast<int>(rows[i].size()) == c, "from_ints");
    for (int j = 0; j < c; ++j) m(i, j) = F.from_int(rows[i][j]);
  }
  return m;
}

Matrix Matrix::column(const Vector& v) {
  if (v.empty()) return Matrix();
  Matrix m(v[0].field(), static_cast<int>(v.size()), 1);
  for (size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
  return m;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  check_shape(a.rows() == b.rows(), "hstack");
  Matrix m(a.field(), a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  check_shape(a.cols() == b.cols(), "vstack");
  Matrix m(a.field(), a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_shape(cols_ == o.rows_, "product");
  Matrix m(field_, rows_, o.cols_);
  if (field_.characteristic()) {
    const uint64_t p = field_.characteristic();
    std::vector<uint64_t> acc(o.cols_);
    for (int i = 0; i < rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      bool any = false;
      for (int k = 0; k < cols_; ++k) {
        uint64_t a = (*this)(i, k).residue();
        if (!a) continue;
        any = true;
        for (int j = 0; j < o.cols_; ++j) {
          uint64_t b = o(k, j).residue();
          if (b) acc[j] = (acc[j] + a * b) % p;
        }
      }
      if (any)
        for (int j = 0; j < o.cols_; ++j)
          if (acc[j]) m(i, j) = field_.from_int(static_cast<long long>(acc[j]));
    }
    return m;
  }
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Scalar& b = o(k, j);
        if (!b.is_zero()) m(i, j).add_mul(a, b);
      }
    }
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix m = *this;
  m += o;
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix m = *this;
  m -= o;
  return m;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& s : m.data_) s.negate();
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  check_shape(rows_ == o.rows_ && cols_ == o.cols_, "sum");
  for (size_t i = 0; i < data_.size(); ++i)
    if (!o.data_[i].is_zero()) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  check_shape(rows_ == o.rows_ && cols_ == o.cols_, "difference");
  for (size_t i = 0; i < data_.size(); ++i)
    if (!o.data_[i].is_zero()) data_[i] -= o.data_[i];
  return *this;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix m = *this;
  for (auto& x : m.data_)
    if (!x.is_zero()) x *= s;
  return m;
}

Vector Matrix::apply(const Vector& v) const {
  check_shape(static_cast<int>(v.size()) == cols_, "apply");
  Vector out(rows_, field_.zero());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i].add_mul((*this)(i, j), v[j]);
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && data_ == o.data_;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix m(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero()) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
  check_shape(r0 >= 0 && c0 >= 0 && r0 + nr <= rows_ && c0 + nc <= cols_, "block");
  Matrix m(field_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void Matrix::set_block(int r0, int c0, const Matrix& b) {
  check_shape(r0 >= 0 && c0 >= 0 && r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_, "set_block");
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

void Matrix::add_block(int r0, int c0, const Matrix& b) {
  check_shape(r0 >= 0 && c0 >= 0 && r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_, "add_block");
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      if (!b(i, j).is_zero()) (*this)(r0 + i, c0 + j) += b(i, j);
}

Matrix Matrix::select_rows(const std::vector<int>& idx) const {
  Matrix m(field_, static_cast<int>(idx.size()), cols_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < cols_; ++j) m(static_cast<int>(i), j) = (*this)(idx[i], j);
  return m;
}

Matrix Matrix::select_cols(const std::vector<int>& idx) const {
  Matrix m(field_, rows_, static_cast<int>(idx.size()));
  for (int i = 0; i < rows_; ++i)
    for (size_t j = 0; j < idx.size(); ++j) m(i, static_cast<int>(j)) = (*this)(i, idx[j]);
  return m;
}

Vector Matrix::col(int j) const {
  Vector v;
  v.reserve(rows_);
  for (int i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

void Matrix::set_col(int j, const Vector& v) {
  check_shape(static_cast<int>(v.size()) == rows_, "set_col");
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

std::vector<std::vector<std::string>> Matrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string());
  return out;
}

Rref rref(const Matrix& M) { return M.field().characteristic() ? rref_prime(M) : rref_rational(M); }

int rank(const Matrix& M) { return rref(M).rank; }

Matrix kernel_basis(const Matrix& M) {
  Rref r = rref(M);
  const int C = M.cols();
  std::vector<int> is_pivot(C, -1);
  for (int i = 0; i < r.rank; ++i) is_pivot[r.pivots[i]] = i;
  std::vector<int> free;
  for (int j = 0; j < C; ++j)
    if (is_pivot[j] < 0) free.push_back(j);
  Matrix K(M.field(), C, static_cast<int>(free.size()));
  for (size_t k = 0; k < free.size(); ++k) {
    int f = free[k];
    K(f, static_cast<int>(k)) = M.field().one();
    for (int i = 0; i < r.rank; ++i)
      if (!r.reduced(i, f).is_zero()) K(r.pivots[i], static_cast<int>(k)) = -r.reduced(i, f);
  }
  return K;
}

Cokernel cokernel(const Matrix& M) {
  const int R = M.rows(), C = M.cols();
  Field F = M.field();
  Rref r = rref(Matrix::hstack(M, Matrix::identity(F, R)));
  std::vector<int> mcols, extra;
  for (int p : r.pivots) (p < C ? mcols : extra).push_back(p < C ? p : p - C);
  const int q = static_cast<int>(extra.size());
  Matrix S(F, R, q);
  for (int k = 0; k < q; ++k) S(extra[k], k) = F.one();
  Matrix basis = Matrix::hstack(M.select_cols(mcols), S);
  Matrix inv = *inverse(basis);
  Cokernel out;
  out.projection = inv.block(static_cast<int>(mcols.size()), 0, q, R);
  out.section = std::move(S);
  return out;
}

std::optional<Vector> solve(const Matrix& M, const Vector& b) {
  if (static_cast<int>(b.size()) != M.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  if (b.empty()) return Vector(M.cols(), M.field().zero());
  auto x = solve(M, Matrix::column(b));
  if (!x) return std::nullopt;
  return x->col(0);
}

std::optional<Matrix> solve(const Matrix& M, const Matrix& B) {
  if (B.rows() != M.rows()) throw std::invalid_argument("solve: right-hand side has wrong row count");
  const int C = M.cols();
  Rref r = rref(Matrix::hstack(M, B));
  Matrix X(M.field(), C, B.cols());
  for (int i = 0; i < r.rank; ++i) {
    int p = r.pivots[i];
    if (p >= C) return std::nullopt;
    for (int j = 0; j < B.cols(); ++j) X(p, j) = r.reduced(i, C + j);
  }
  return X;
}

std::optional<Matrix> inverse(const Matrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const int n = M.rows();
  Rref r = rref(Matrix::hstack(M, Matrix::identity(M.field(), n)));
  if (r.rank < n || (n > 0 && r.pivots[n - 1] >= n)) return std::nullopt;
  return r.reduced.block(0, n, n, n);
}

Matrix left_inverse(const Matrix& E) {
  const int k = E.cols();
  Rref r = rref(E.transpose());
  if (r.rank != k) throw std::invalid_argument("left_inverse: matrix lacks full column rank");
  Matrix sub = E.select_rows(r.pivots);
  Matrix inv = *inverse(sub);
  Matrix P(E.field(), k, E.rows());
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) P(i, r.pivots[j]) = inv(i, j);
  return P;
}

bool in_column_space(const Matrix& M, const Vector& v) { return solve(M, v).has_value(); }

bool same_column_space(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows()) return false;
  int ra = rank(A), rb = rank(B);
  return ra == rb && rank(Matrix::hstack(A, B)) == ra;
}

}  // namespace dgc
