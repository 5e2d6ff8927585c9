#include "dgc/endcoend.hpp"

namespace dgc::oracle {

namespace {

struct Layout {
  std::vector<int> offset;
  std::vector<int> degree;  // per concatenated coordinate
  int dim = 0;
};

Layout concatenate(const Bimodule& F) {
  Layout L;
  for (int a = 0; a < F.na(); ++a) {
    L.offset.push_back(L.dim);
    const Complex& C = F.comp(a, a);
    for (int i = 0; i < C.dim(); ++i) L.degree.push_back(C.degree_of(i));
    L.dim += C.dim();
  }
  return L;
}

Matrix wedge_system(const Bimodule& F, const Layout& L) {
  const DgCategory& A = *F.left_cat();
  const Field K = F.field();
  const int n = A.size();
  std::vector<std::vector<Scalar>> rows;
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2)
      for (int f = 0; f < A.hom(a, a2).dim(); ++f) {
        const int df = A.deg(a, a2, f);
        const Matrix& Lf = F.lact(a, a, a2, f);
        const Matrix& Rf = F.ract(a, a2, a2, f);
        for (int r = 0; r < F.comp(a, a2).dim(); ++r) {
          std::vector<Scalar> row(L.dim, K.zero());
          for (int c = 0; c < Lf.cols(); ++c) row[L.offset[a] + c] += Lf(r, c);
          for (int c = 0; c < Rf.cols(); ++c) {
            const int j = L.offset[a2] + c;
            if (odd(static_cast<long long>(df) * L.degree[j]))
              row[j] += Rf(r, c);
            else
              row[j] -= Rf(r, c);
          }
          rows.push_back(std::move(row));
        }
      }
  Matrix K0(K, static_cast<int>(rows.size()), L.dim);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < L.dim; ++c) K0(static_cast<int>(r), c) = rows[r][c];
  return K0;
}

std::map<int, std::vector<int>> columns_by_degree(const Layout& L) {
  std::map<int, std::vector<int>> out;
  for (int j = 0; j < L.dim; ++j) out[L.degree[j]].push_back(j);
  return out;
}

}  // namespace

Matrix end_kernel(const Bimodule& F) {
  Layout L = concatenate(F);
  Matrix K = wedge_system(F, L);
  std::vector<Vector> cols;
  for (auto& [deg, js] : columns_by_degree(L)) {
    Matrix ker = kernel_basis(K.select_cols(js));
    for (int c = 0; c < ker.cols(); ++c) {
      Vector v(L.dim, F.field().zero());
      for (size_t i = 0; i < js.size(); ++i) v[js[i]] = ker(static_cast<int>(i), c);
      cols.push_back(std::move(v));
    }
  }
  Matrix out(F.field(), L.dim, static_cast<int>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) out.set_col(static_cast<int>(c), cols[c]);
  return out;
}

std::map<int, int> end_dims(const Bimodule& F) {
  Layout L = concatenate(F);
  Matrix K = wedge_system(F, L);
  std::map<int, int> out;
  for (auto& [deg, js] : columns_by_degree(L)) {
    int k = static_cast<int>(js.size()) - rank(K.select_cols(js));
    if (k) out[deg] = k;
  }
  return out;
}

Matrix coend_relations(const Bimodule& F) {
  const DgCategory& A = *F.left_cat();
  const Field K = F.field();
  const int n = A.size();
  Layout L = concatenate(F);
  std::vector<Vector> rels;
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2)
      for (int f = 0; f < A.hom(a, a2).dim(); ++f) {
        const int df = A.deg(a, a2, f);
        const Complex& X = F.comp(a2, a);
        const Matrix& Lf = F.lact(a2, a, a2, f);
        const Matrix& Rf = F.ract(a, a2, a, f);
        for (int x = 0; x < X.dim(); ++x) {
          Vector v(L.dim, K.zero());
          for (int r = 0; r < Lf.rows(); ++r) v[L.offset[a2] + r] += Lf(r, x);
          const bool neg = odd(static_cast<long long>(df) * X.degree_of(x));
          for (int r = 0; r < Rf.rows(); ++r) v[L.offset[a] + r] += neg ? Rf(r, x) : -Rf(r, x);
          rels.push_back(std::move(v));
        }
      }
  Matrix m(K, L.dim, static_cast<int>(rels.size()));
  for (size_t c = 0; c < rels.size(); ++c) m.set_col(static_cast<int>(c), rels[c]);
  return m;
}

std::map<int, int> coend_dims(const Bimodule& F) {
  Layout L = concatenate(F);
  Matrix rels = coend_relations(F);
  std::map<int, int> out;
  for (auto& [deg, js] : columns_by_degree(L)) {
    int k = static_cast<int>(js.size()) - rank(rels.select_rows(js));
    if (k) out[deg] = k;
  }
  return out;
}

namespace {

/// Row permutation from direct-sum coordinates to concatenated ones.
Matrix to_concatenated(const DirectSum& S, const Matrix& m) {
  Matrix out(m.field(), m.rows(), m.cols());
  int row = 0;
  for (const auto& pos : S.pos)
    for (int p : pos) {
      for (int c = 0; c < m.cols(); ++c) out(row, c) = m(p, c);
      ++row;
    }
  return out;
}

}  // namespace

Comparison compare_end(const EndResult& E) {
  Comparison c;
  c.fast = E.total.dims();
  c.reference = end_dims(E.F);
  c.dims = c.fast == c.reference;
  c.maps = same_column_space(to_concatenated(E.product, E.embedding), end_kernel(E.F));
  return c;
}

Comparison compare_coend(const CoendResult& C) {
  Comparison c;
  c.fast = C.total.dims();
  c.reference = coend_dims(C.F);
  c.dims = c.fast == c.reference;
  c.maps = same_column_space(to_concatenated(C.sum, kernel_basis(C.proj)), coend_relations(C.F));
  return c;
}

}  // namespace dgc::oracle
