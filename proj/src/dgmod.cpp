#include "dgc/dgmod.hpp"

#include <functional>
#include <stdexcept>

namespace dgc {

namespace {

using LeftFn = std::function<Matrix(int b, int a, int a2, int g)>;
using RightFn = std::function<Matrix(int b2, int b, int a, int f)>;

}  // namespace

Bimodule make_bimodule(const CatPtr& A, const CatPtr& B, std::string name, std::vector<Complex> comps, const LeftFn& L, const RightFn& R) {
  Bimodule::Data D;
  D.A = A;
  D.B = B;
  D.name = std::move(name);
  D.comps = std::move(comps);
  const int na = A->size(), nb = B->size();
  D.left.resize(static_cast<size_t>(nb) * na * na);
  D.right.resize(static_cast<size_t>(nb) * nb * na);
  for (int b = 0; b < nb; ++b)
    for (int a = 0; a < na; ++a)
      for (int a2 = 0; a2 < na; ++a2) {
        auto& ms = D.left[(static_cast<size_t>(b) * na + a) * na + a2];
        for (int g = 0; g < A->hom(a, a2).dim(); ++g) ms.push_back(L(b, a, a2, g));
      }
  for (int b2 = 0; b2 < nb; ++b2)
    for (int b = 0; b < nb; ++b)
      for (int a = 0; a < na; ++a) {
        auto& ms = D.right[(static_cast<size_t>(b2) * nb + b) * na + a];
        for (int f = 0; f < B->hom(b2, b).dim(); ++f) ms.push_back(R(b2, b, a, f));
      }
  return Bimodule(std::move(D));
}

namespace {

Matrix combine(Field F, const std::vector<Matrix>& ms, const Vector& c, int rows, int cols) {
  Matrix out(F, rows, cols);
  for (size_t k = 0; k < c.size(); ++k)
    if (!c[k].is_zero()) out += ms[k].scaled(c[k]);
  return out;
}

/// Identity action of the unit category (its only basis element is 1).
Matrix unit_action(const Complex& C) { return Matrix::identity(C.field(), C.dim()); }

std::string at(const Bimodule& T, int b, int a) {
  return "(" + T.right_cat()->object(b) + "," + T.left_cat()->object(a) + ")";
}

Matrix signed_if(const Matrix& m, bool neg) { return neg ? -m : m; }

}  // namespace

Bimodule::Bimodule(Data data) : d_(std::make_shared<const Data>(std::move(data))) {
  const Data& D = *d_;
  if (!D.A || !D.B) throw std::invalid_argument("bimodule '" + D.name + "': missing category");
  if (D.A->field() != D.B->field()) throw std::invalid_argument("bimodule '" + D.name + "': field mismatch");
  const int n_a = D.A->size(), n_b = D.B->size();
  if (D.comps.size() != static_cast<size_t>(n_a) * n_b) throw std::invalid_argument("bimodule '" + D.name + "': wrong number of components");
  if (D.left.size() != static_cast<size_t>(n_b) * n_a * n_a || D.right.size() != static_cast<size_t>(n_b) * n_b * n_a)
    throw std::invalid_argument("bimodule '" + D.name + "': wrong number of action tables");
  for (int b = 0; b < n_b; ++b)
    for (int a = 0; a < n_a; ++a)
      for (int a2 = 0; a2 < n_a; ++a2) {
        const auto& ms = D.left[(idx(b, a)) * n_a + a2];
        if (static_cast<int>(ms.size()) != D.A->hom(a, a2).dim())
          throw std::invalid_argument("bimodule '" + D.name + "': left action table size at " + at(*this, b, a));
        for (const Matrix& m : ms)
          if (m.rows() != comp(b, a2).dim() || m.cols() != comp(b, a).dim())
            throw std::invalid_argument("bimodule '" + D.name + "': left action matrix shape at " + at(*this, b, a));
      }
  for (int b2 = 0; b2 < n_b; ++b2)
    for (int b = 0; b < n_b; ++b)
      for (int a = 0; a < n_a; ++a) {
        const auto& ms = D.right[(static_cast<size_t>(b2) * n_b + b) * n_a + a];
        if (static_cast<int>(ms.size()) != D.B->hom(b2, b).dim())
          throw std::invalid_argument("bimodule '" + D.name + "': right action table size at " + at(*this, b, a));
        for (const Matrix& m : ms)
          if (m.rows() != comp(b2, a).dim() || m.cols() != comp(b, a).dim())
            throw std::invalid_argument("bimodule '" + D.name + "': right action matrix shape at " + at(*this, b, a));
      }
}

bool same_category(const CatPtr& x, const CatPtr& y) { return x == y || (x && y && same_structure(*x, *y)); }

bool Bimodule::is_right_module() const { return same_category(d_->A, unit_category(field())); }
bool Bimodule::is_left_module() const { return same_category(d_->B, unit_category(field())); }

Matrix Bimodule::left_by(int b, int a, int a2, const Vector& g) const {
  return combine(field(), d_->left[idx(b, a) * na() + a2], g, comp(b, a2).dim(), comp(b, a).dim());
}

Matrix Bimodule::right_by(int b2, int b, int a, const Vector& f) const {
  return combine(field(), d_->right[(static_cast<size_t>(b2) * nb() + b) * na() + a], f, comp(b2, a).dim(), comp(b, a).dim());
}

int Bimodule::total_dim() const {
  int n = 0;
  for (const Complex& c : d_->comps) n += c.dim();
  return n;
}

Bimodule Bimodule::renamed(std::string name) const {
  Data D = *d_;
  D.name = std::move(name);
  return Bimodule(std::move(D));
}

Bimodule right_module(CatPtr B, std::string name, std::vector<Complex> comps, std::vector<std::vector<Matrix>> right) {
  CatPtr k = unit_category(B->field());
  Bimodule::Data D;
  D.A = k;
  D.B = std::move(B);
  D.name = std::move(name);
  D.comps = std::move(comps);
  D.right = std::move(right);
  for (const Complex& c : D.comps) D.left.push_back({unit_action(c)});
  return Bimodule(std::move(D));
}

Bimodule left_module(CatPtr A, std::string name, std::vector<Complex> comps, std::vector<std::vector<Matrix>> left) {
  CatPtr k = unit_category(A->field());
  Bimodule::Data D;
  D.A = std::move(A);
  D.B = k;
  D.name = std::move(name);
  D.comps = std::move(comps);
  D.left = std::move(left);
  for (const Complex& c : D.comps) D.right.push_back({unit_action(c)});
  return Bimodule(std::move(D));
}

ValidationReport validate_bimodule(const Bimodule& T) {
  const DgCategory &A = *T.left_cat(), &B = *T.right_cat();
  const Field F = T.field();
  const int na = T.na(), nb = T.nb();
  for (int b = 0; b < nb; ++b)
    for (int a = 0; a < na; ++a) {
      ValidationReport r = validate_complex(T.comp(b, a));
      if (!r.ok) return ValidationReport::fail("d^2 = 0", "component " + at(T, b, a) + ": " + r.detail);
    }
  for (int b = 0; b < nb; ++b)
    for (int a = 0; a < na; ++a)
      for (int a2 = 0; a2 < na; ++a2)
        for (int g = 0; g < A.hom(a, a2).dim(); ++g) {
          const Matrix& L = T.lact(b, a, a2, g);
          const int dg = A.deg(a, a2, g);
          const std::string where = " for g = " + A.label(a, a2, g) + " on " + at(T, b, a);
          if (!is_homogeneous(T.comp(b, a), T.comp(b, a2), dg, L)) return ValidationReport::fail("left action has degree |g|", where);
          Matrix lhs = T.comp(b, a2).d() * L - signed_if(L * T.comp(b, a).d(), odd(dg));
          if (lhs != T.left_by(b, a, a2, A.hom(a, a2).d().col(g)))
            return ValidationReport::fail("left action is a chain map", "d(gx) != (dg)x + (-1)^|g| g(dx)" + where);
        }
  for (int b2 = 0; b2 < nb; ++b2)
    for (int b = 0; b < nb; ++b)
      for (int a = 0; a < na; ++a)
        for (int f = 0; f < B.hom(b2, b).dim(); ++f) {
          const Matrix& R = T.ract(b2, b, a, f);
          const int df = B.deg(b2, b, f);
          const std::string where = " for f = " + B.label(b2, b, f) + " on " + at(T, b, a);
          if (!is_homogeneous(T.comp(b, a), T.comp(b2, a), df, R)) return ValidationReport::fail("right action has degree |f|", where);
          Matrix lhs = T.comp(b2, a).d() * R - R * T.comp(b, a).d();
          Matrix rhs = T.right_by(b2, b, a, B.hom(b2, b).d().col(f)) * sign_diag(T.comp(b, a), 1);
          if (lhs != rhs) return ValidationReport::fail("right action is a chain map", "d(xf) != (dx)f + (-1)^|x| x(df)" + where);
        }
  for (int b = 0; b < nb; ++b)
    for (int a = 0; a < na; ++a) {
      if (!T.left_by(b, a, a, A.id(a)).is_identity()) return ValidationReport::fail("left unit", "1x != x on " + at(T, b, a));
      if (!T.right_by(b, b, a, B.id(b)).is_identity()) return ValidationReport::fail("right unit", "x1 != x on " + at(T, b, a));
    }
  for (int b = 0; b < nb; ++b)
    for (int a = 0; a < na; ++a)
      for (int a1 = 0; a1 < na; ++a1)
        for (int a2 = 0; a2 < na; ++a2)
          for (int g1 = 0; g1 < A.hom(a, a1).dim(); ++g1)
            for (int g2 = 0; g2 < A.hom(a1, a2).dim(); ++g2) {
              Matrix lhs = T.lact(b, a1, a2, g2) * T.lact(b, a, a1, g1);
              if (lhs != T.left_by(b, a, a2, A.lmul(a, a1, a2, g2).col(g1)))
                return ValidationReport::fail("left associativity", "g2(g1 x) != (g2 g1)x for g1 = " + A.label(a, a1, g1) + ", g2 = " +
                                                                        A.label(a1, a2, g2) + " on " + at(T, b, a));
            }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      for (int b1 = 0; b1 < nb; ++b1)
        for (int b2 = 0; b2 < nb; ++b2)
          for (int f = 0; f < B.hom(b1, b).dim(); ++f)
            for (int f2 = 0; f2 < B.hom(b2, b1).dim(); ++f2) {
              Matrix lhs = T.ract(b2, b1, a, f2) * T.ract(b1, b, a, f);
              Vector ff2 = B.lmul(b2, b1, b, f).col(f2);
              if (lhs != T.right_by(b2, b, a, ff2))
                return ValidationReport::fail("right associativity", "(xf)f' != x(ff') for f = " + B.label(b1, b, f) + ", f' = " +
                                                                         B.label(b2, b1, f2) + " on " + at(T, b, a));
            }
  for (int b = 0; b < nb; ++b)
    for (int b2 = 0; b2 < nb; ++b2)
      for (int a = 0; a < na; ++a)
        for (int a2 = 0; a2 < na; ++a2)
          for (int g = 0; g < A.hom(a, a2).dim(); ++g)
            for (int f = 0; f < B.hom(b2, b).dim(); ++f)
              if (T.ract(b2, b, a2, f) * T.lact(b, a, a2, g) != T.lact(b2, a, a2, g) * T.ract(b2, b, a, f))
                return ValidationReport::fail("compatibility (gx)f = g(xf)",
                                              "g = " + A.label(a, a2, g) + ", f = " + B.label(b2, b, f) + " on " + at(T, b, a));
  (void)F;
  return ValidationReport::pass();
}

Bimodule representable_right(const CatPtr& A, int a) {
  const int n = A->size();
  std::vector<Complex> comps;
  for (int b = 0; b < n; ++b) comps.push_back(A->hom(b, a));
  std::vector<std::vector<Matrix>> right(static_cast<size_t>(n) * n);
  for (int b2 = 0; b2 < n; ++b2)
    for (int b = 0; b < n; ++b)
      for (int f = 0; f < A->hom(b2, b).dim(); ++f) right[static_cast<size_t>(b2) * n + b].push_back(A->right_mult(b2, b, a, A->basis(b2, b, f)));
  return right_module(A, "h_" + A->object(a), std::move(comps), std::move(right));
}

Bimodule representable_left(const CatPtr& A, int a) {
  const int n = A->size();
  std::vector<Complex> comps;
  for (int b = 0; b < n; ++b) comps.push_back(A->hom(a, b));
  std::vector<std::vector<Matrix>> left(static_cast<size_t>(n) * n);
  for (int b = 0; b < n; ++b)
    for (int b2 = 0; b2 < n; ++b2) left[static_cast<size_t>(b) * n + b2] = A->lmuls(a, b, b2);
  return left_module(A, "h^" + A->object(a), std::move(comps), std::move(left));
}

Bimodule diagonal(const CatPtr& A) {
  const int n = A->size();
  std::vector<Complex> comps;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) comps.push_back(A->hom(b, a));
  return make_bimodule(
      A, A, "h_" + A->name(), std::move(comps), [&](int b, int a, int a2, int g) { return A->lmul(b, a, a2, g); },
      [&](int b2, int b, int a, int f) { return A->right_mult(b2, b, a, A->basis(b2, b, f)); });
}

Bimodule hFG(const DgFunctor& F, const DgFunctor& G) {
  if (!same_category(F.target(), G.target())) throw std::invalid_argument("hFG: functors have different targets");
  const DgCategory& A = *F.target();
  const CatPtr &C = F.source(), &B = G.source();
  std::vector<Complex> comps;
  for (int c = 0; c < C->size(); ++c)
    for (int b = 0; b < B->size(); ++b) comps.push_back(A.hom(F.on_object(c), G.on_object(b)));
  return make_bimodule(
      B, C, "h^" + F.name() + "_" + G.name(), std::move(comps),
      [&](int c, int b, int b2, int g) { return A.left_mult(F.on_object(c), G.on_object(b), G.on_object(b2), G.on_hom(b, b2).col(g)); },
      [&](int c2, int c, int b, int f) { return A.right_mult(F.on_object(c2), F.on_object(c), G.on_object(b), F.on_hom(c2, c).col(f)); });
}

Bimodule h_lower(const DgFunctor& F) { return hFG(DgFunctor::identity(F.target()), F).renamed("h_" + F.name()); }

Bimodule h_upper(const DgFunctor& F) { return hFG(F, DgFunctor::identity(F.target())).renamed("h^" + F.name()); }

Bimodule component(const Bimodule& T, int a) {
  const int nb = T.nb();
  std::vector<Complex> comps;
  for (int b = 0; b < nb; ++b) comps.push_back(T.comp(b, a));
  std::vector<std::vector<Matrix>> right(static_cast<size_t>(nb) * nb);
  for (int b2 = 0; b2 < nb; ++b2)
    for (int b = 0; b < nb; ++b)
      for (int f = 0; f < T.right_cat()->hom(b2, b).dim(); ++f) right[static_cast<size_t>(b2) * nb + b].push_back(T.ract(b2, b, a, f));
  return right_module(T.right_cat(), T.name() + "_" + T.left_cat()->object(a), std::move(comps), std::move(right));
}

Bimodule co_component(const Bimodule& T, int b) {
  const int na = T.na();
  std::vector<Complex> comps;
  for (int a = 0; a < na; ++a) comps.push_back(T.comp(b, a));
  std::vector<std::vector<Matrix>> left(static_cast<size_t>(na) * na);
  for (int a = 0; a < na; ++a)
    for (int a2 = 0; a2 < na; ++a2)
      for (int g = 0; g < T.left_cat()->hom(a, a2).dim(); ++g) left[static_cast<size_t>(a) * na + a2].push_back(T.lact(b, a, a2, g));
  return left_module(T.left_cat(), T.name() + "^" + T.right_cat()->object(b), std::move(comps), std::move(left));
}

Bimodule shift(const Bimodule& T, int n) {
  std::vector<Complex> comps;
  for (const Complex& c : T.comps()) comps.push_back(shift(c, n));
  const DgCategory& A = *T.left_cat();
  return make_bimodule(
      T.left_cat(), T.right_cat(), T.name() + "[" + std::to_string(n) + "]", std::move(comps),
      [&](int b, int a, int a2, int g) { return signed_if(T.lact(b, a, a2, g), odd(static_cast<long long>(n) * A.deg(a, a2, g))); },
      [&](int b2, int b, int a, int f) { return T.ract(b2, b, a, f); });
}

Bimodule direct_sum(const std::vector<Bimodule>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum of no bimodules");
  const Bimodule& P0 = parts[0];
  for (const Bimodule& P : parts)
    if (!same_category(P.left_cat(), P0.left_cat()) || !same_category(P.right_cat(), P0.right_cat()))
      throw std::invalid_argument("direct_sum: categories differ");
  const size_t ncomp = P0.comps().size();
  std::vector<DirectSum> sums;
  std::vector<Complex> comps;
  for (size_t k = 0; k < ncomp; ++k) {
    std::vector<Complex> cs;
    for (const Bimodule& P : parts) cs.push_back(P.comps()[k]);
    sums.push_back(direct_sum(cs));
    comps.push_back(sums.back().cx);
  }
  auto place = [&](size_t src, size_t tgt, const std::function<const Matrix&(const Bimodule&)>& get) {
    Matrix out(P0.field(), sums[tgt].cx.dim(), sums[src].cx.dim());
    for (size_t i = 0; i < parts.size(); ++i) {
      const Matrix& m = get(parts[i]);
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
          if (!m(r, c).is_zero()) out(sums[tgt].pos[i][r], sums[src].pos[i][c]) = m(r, c);
    }
    return out;
  };
  std::string name = P0.name();
  for (size_t i = 1; i < parts.size(); ++i) name += "⊕" + parts[i].name();
  return make_bimodule(
      P0.left_cat(), P0.right_cat(), name, std::move(comps),
      [&](int b, int a, int a2, int g) {
        return place(P0.idx(b, a), P0.idx(b, a2), [&](const Bimodule& P) -> const Matrix& { return P.lact(b, a, a2, g); });
      },
      [&](int b2, int b, int a, int f) {
        return place(P0.idx(b, a), P0.idx(b2, a), [&](const Bimodule& P) -> const Matrix& { return P.ract(b2, b, a, f); });
      });
}

Bimodule external_tensor(const Bimodule& M, const Bimodule& N) {
  if (!M.is_left_module() || !N.is_right_module()) throw std::invalid_argument("external_tensor expects a left module and a right module");
  const int na = M.na(), nb = N.nb();
  std::vector<TensorComplex> T;
  std::vector<Complex> comps;
  for (int b = 0; b < nb; ++b)
    for (int a = 0; a < na; ++a) {
      T.push_back(tensor(M.comp(0, a), N.comp(b, 0)));
      comps.push_back(T.back().cx);
    }
  auto I = [&](int b, int a) -> const TensorComplex& { return T[static_cast<size_t>(b) * na + a]; };
  const Field F = M.field();
  return make_bimodule(
      M.left_cat(), N.right_cat(), M.name() + "⊠" + N.name(), std::move(comps),
      [&](int b, int a, int a2, int g) {
        const TensorComplex &s = I(b, a), &t = I(b, a2);
        const Matrix& L = M.lact(0, a, a2, g);
        Matrix out(F, t.cx.dim(), s.cx.dim());
        for (int k = 0; k < s.cx.dim(); ++k) {
          auto [x, y] = s.pairs[k];
          for (int r = 0; r < L.rows(); ++r)
            if (!L(r, x).is_zero()) out(t.at(r, y), k) = L(r, x);
        }
        return out;
      },
      [&](int b2, int b, int a, int f) {
        const TensorComplex &s = I(b, a), &t = I(b2, a);
        const Matrix& R = N.ract(b2, b, 0, f);
        Matrix out(F, t.cx.dim(), s.cx.dim());
        for (int k = 0; k < s.cx.dim(); ++k) {
          auto [x, y] = s.pairs[k];
          for (int r = 0; r < R.rows(); ++r)
            if (!R(r, y).is_zero()) out(t.at(x, r), k) = R(r, y);
        }
        return out;
      });
}

Bimodule tensor_bimodule(const Bimodule& P, const Bimodule& Q) {
  if (!P.is_right_module() || !Q.is_left_module()) throw std::invalid_argument("tensor_bimodule expects a right module and a left module");
  if (!same_category(P.right_cat(), Q.left_cat())) throw std::invalid_argument("tensor_bimodule: modules over different categories");
  const CatPtr& C = Q.left_cat();
  const int n = C->size();
  std::vector<TensorComplex> T;
  std::vector<Complex> comps;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      T.push_back(tensor(P.comp(b, 0), Q.comp(0, a)));
      comps.push_back(T.back().cx);
    }
  auto I = [&](int b, int a) -> const TensorComplex& { return T[static_cast<size_t>(b) * n + a]; };
  const Field F = P.field();
  return make_bimodule(
      C, C, P.name() + "⊗" + Q.name(), std::move(comps),
      [&](int b, int a, int a2, int g) {
        const TensorComplex &s = I(b, a), &t = I(b, a2);
        const Matrix& L = Q.lact(0, a, a2, g);
        const int dg = C->deg(a, a2, g);
        Matrix out(F, t.cx.dim(), s.cx.dim());
        for (int k = 0; k < s.cx.dim(); ++k) {
          auto [x, y] = s.pairs[k];
          bool neg = odd(static_cast<long long>(dg) * s.left.degree_of(x));
          for (int r = 0; r < L.rows(); ++r)
            if (!L(r, y).is_zero()) out(t.at(x, r), k) = neg ? -L(r, y) : L(r, y);
        }
        return out;
      },
      [&](int b2, int b, int a, int f) {
        const TensorComplex &s = I(b, a), &t = I(b2, a);
        const Matrix& R = P.ract(b2, b, 0, f);
        const int df = C->deg(b2, b, f);
        Matrix out(F, t.cx.dim(), s.cx.dim());
        for (int k = 0; k < s.cx.dim(); ++k) {
          auto [x, y] = s.pairs[k];
          bool neg = odd(static_cast<long long>(df) * s.right.degree_of(y));
          for (int r = 0; r < R.rows(); ++r)
            if (!R(r, x).is_zero()) out(t.at(r, y), k) = neg ? -R(r, x) : R(r, x);
        }
        return out;
      });
}

Bimodule external_product(const Bimodule& T, const Bimodule& U, const CatPtr& left, const CatPtr& right) {
  const int a1 = T.na(), a2 = T.nb(), b1 = U.na(), b2 = U.nb();
  if (left->size() != a1 * b1 || right->size() != a2 * b2) throw std::invalid_argument("external_product: tensor categories do not match");
  const DgCategory &A1 = *T.left_cat(), &A2 = *T.right_cat(), &B1 = *U.left_cat(), &B2 = *U.right_cat();
  const Field F = T.field();
  std::vector<TensorComplex> cs;
  std::vector<Complex> comps;
  for (int r = 0; r < a2 * b2; ++r)
    for (int l = 0; l < a1 * b1; ++l) {
      cs.push_back(tensor(T.comp(r / b2, l / b1), U.comp(r % b2, l % b1)));
      comps.push_back(cs.back().cx);
    }
  auto C = [&](int r, int l) -> const TensorComplex& { return cs[static_cast<size_t>(r) * a1 * b1 + l]; };
  return make_bimodule(
      left, right, T.name() + "⊠" + U.name(), std::move(comps),
      [&](int r, int l, int l2, int k) {
        const int x1 = l / b1, y1 = l % b1, x2 = l2 / b1, y2 = l2 % b1;
        auto [fi, gi] = tensor(A1.hom(x1, x2), B1.hom(y1, y2)).pairs[k];
        const Matrix &Lf = T.lact(r / b2, x1, x2, fi), &Lg = U.lact(r % b2, y1, y2, gi);
        const int dg = B1.deg(y1, y2, gi);
        const TensorComplex &s = C(r, l), &t = C(r, l2);
        Matrix out(F, t.cx.dim(), s.cx.dim());
        for (int c = 0; c < s.cx.dim(); ++c) {
          auto [x, y] = s.pairs[c];
          const bool neg = odd(static_cast<long long>(dg) * s.left.degree_of(x));
          for (int i = 0; i < Lf.rows(); ++i)
            if (!Lf(i, x).is_zero())
              for (int j = 0; j < Lg.rows(); ++j)
                if (!Lg(j, y).is_zero()) {
                  Scalar v = Lf(i, x) * Lg(j, y);
                  out(t.at(i, j), c) += neg ? -v : v;
                }
        }
        return out;
      },
      [&](int r2, int r, int l, int k) {
        const int x2 = r2 / b2, y2 = r2 % b2, x = r / b2, y = r % b2;
        auto [fi, gi] = tensor(A2.hom(x2, x), B2.hom(y2, y)).pairs[k];
        const Matrix &Rf = T.ract(x2, x, l / b1, fi), &Rg = U.ract(y2, y, l % b1, gi);
        const int df = A2.deg(x2, x, fi);
        const TensorComplex &s = C(r, l), &t = C(r2, l);
        Matrix out(F, t.cx.dim(), s.cx.dim());
        for (int c = 0; c < s.cx.dim(); ++c) {
          auto [p, q] = s.pairs[c];
          const bool neg = odd(static_cast<long long>(df) * s.right.degree_of(q));
          for (int i = 0; i < Rf.rows(); ++i)
            if (!Rf(i, p).is_zero())
              for (int j = 0; j < Rg.rows(); ++j)
                if (!Rg(j, q).is_zero()) {
                  Scalar v = Rf(i, p) * Rg(j, q);
                  out(t.at(i, j), c) += neg ? -v : v;
                }
        }
        return out;
      });
}

std::vector<std::vector<Matrix>> right_functor_notation(const Bimodule& T) {
  const DgCategory& B = *T.right_cat();
  std::vector<std::vector<Matrix>> out = T.data().right;
  for (int b2 = 0; b2 < T.nb(); ++b2)
    for (int b = 0; b < T.nb(); ++b)
      for (int a = 0; a < T.na(); ++a) {
        auto& ms = out[(static_cast<size_t>(b2) * T.nb() + b) * T.na() + a];
        for (int f = 0; f < static_cast<int>(ms.size()); ++f) ms[f] = ms[f] * sign_diag(T.comp(b, a), B.deg(b2, b, f));
      }
  return out;
}

Bimodule from_right_functor_notation(const Bimodule& shape, const std::vector<std::vector<Matrix>>& functorial) {
  Bimodule::Data D = shape.data();
  D.right = functorial;
  const DgCategory& B = *shape.right_cat();
  for (int b2 = 0; b2 < shape.nb(); ++b2)
    for (int b = 0; b < shape.nb(); ++b)
      for (int a = 0; a < shape.na(); ++a) {
        auto& ms = D.right[(static_cast<size_t>(b2) * shape.nb() + b) * shape.na() + a];
        for (int f = 0; f < static_cast<int>(ms.size()); ++f) ms[f] = ms[f] * sign_diag(shape.comp(b, a), B.deg(b2, b, f));
      }
  return Bimodule(std::move(D));
}

// ---------------------------------------------------------------------------

BimoduleMorphism BimoduleMorphism::zero(const Bimodule& S, const Bimodule& T, int degree) {
  BimoduleMorphism m{S, T, degree, {}};
  for (size_t k = 0; k < S.comps().size(); ++k) m.comps.emplace_back(S.field(), T.comps()[k].dim(), S.comps()[k].dim());
  return m;
}

BimoduleMorphism BimoduleMorphism::identity(const Bimodule& T) {
  BimoduleMorphism m{T, T, 0, {}};
  for (const Complex& c : T.comps()) m.comps.push_back(Matrix::identity(T.field(), c.dim()));
  return m;
}

GradedMap BimoduleMorphism::graded(int b, int a) const { return GradedMap(source.comp(b, a), target.comp(b, a), degree, at(b, a)); }

ValidationReport validate_morphism(const BimoduleMorphism& phi) {
  const Bimodule &S = phi.source, &T = phi.target;
  if (!same_category(S.left_cat(), T.left_cat()) || !same_category(S.right_cat(), T.right_cat()))
    return ValidationReport::fail("same base categories", S.name() + " vs " + T.name());
  const DgCategory &A = *S.left_cat(), &B = *S.right_cat();
  const int p = phi.degree;
  for (int b = 0; b < S.nb(); ++b)
    for (int a = 0; a < S.na(); ++a)
      if (!is_homogeneous(S.comp(b, a), T.comp(b, a), p, phi.at(b, a)))
        return ValidationReport::fail("morphism has its degree", "component " + at(S, b, a));
  for (int b = 0; b < S.nb(); ++b)
    for (int a = 0; a < S.na(); ++a)
      for (int a2 = 0; a2 < S.na(); ++a2)
        for (int g = 0; g < A.hom(a, a2).dim(); ++g) {
          Matrix lhs = phi.at(b, a2) * S.lact(b, a, a2, g);
          Matrix rhs = signed_if(T.lact(b, a, a2, g) * phi.at(b, a), odd(static_cast<long long>(p) * A.deg(a, a2, g)));
          if (lhs != rhs)
            return ValidationReport::fail("φ(gx) = (-1)^{|φ||g|} gφ(x)", "g = " + A.label(a, a2, g) + " on " + at(S, b, a));
        }
  for (int b2 = 0; b2 < S.nb(); ++b2)
    for (int b = 0; b < S.nb(); ++b)
      for (int a = 0; a < S.na(); ++a)
        for (int f = 0; f < B.hom(b2, b).dim(); ++f)
          if (phi.at(b2, a) * S.ract(b2, b, a, f) != T.ract(b2, b, a, f) * phi.at(b, a))
            return ValidationReport::fail("φ(xf) = φ(x)f", "f = " + B.label(b2, b, f) + " on " + at(S, b, a));
  return ValidationReport::pass();
}

bool is_closed(const BimoduleMorphism& phi) {
  for (int b = 0; b < phi.source.nb(); ++b)
    for (int a = 0; a < phi.source.na(); ++a)
      if (!differential_of_map(phi.graded(b, a)).m.is_zero()) return false;
  return true;
}

BimoduleMorphism compose(const BimoduleMorphism& g, const BimoduleMorphism& f) {
  BimoduleMorphism out{f.source, g.target, f.degree + g.degree, {}};
  for (size_t k = 0; k < f.comps.size(); ++k) out.comps.push_back(g.comps[k] * f.comps[k]);
  return out;
}

BimoduleMorphism operator+(const BimoduleMorphism& x, const BimoduleMorphism& y) {
  BimoduleMorphism out = x;
  for (size_t k = 0; k < x.comps.size(); ++k) out.comps[k] += y.comps[k];
  return out;
}

BimoduleMorphism operator-(const BimoduleMorphism& x, const BimoduleMorphism& y) {
  BimoduleMorphism out = x;
  for (size_t k = 0; k < x.comps.size(); ++k) out.comps[k] -= y.comps[k];
  return out;
}

BimoduleMorphism scale(const BimoduleMorphism& x, const Scalar& s) {
  BimoduleMorphism out = x;
  for (auto& m : out.comps) m = m.scaled(s);
  return out;
}

bool operator==(const BimoduleMorphism& x, const BimoduleMorphism& y) { return x.degree == y.degree && x.comps == y.comps; }

BimoduleMorphism differential_of(const BimoduleMorphism& phi) {
  BimoduleMorphism out{phi.source, phi.target, phi.degree + 1, {}};
  for (int b = 0; b < phi.source.nb(); ++b)
    for (int a = 0; a < phi.source.na(); ++a) out.comps.push_back(differential_of_map(phi.graded(b, a)).m);
  return out;
}

bool is_iso(const BimoduleMorphism& phi) { return inverse(phi).has_value(); }

std::optional<BimoduleMorphism> inverse(const BimoduleMorphism& phi) {
  BimoduleMorphism out{phi.target, phi.source, -phi.degree, {}};
  for (const Matrix& m : phi.comps) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto inv = inverse(m);
    if (!inv) return std::nullopt;
    out.comps.push_back(*inv);
  }
  return out;
}

bool is_qis(const BimoduleMorphism& phi) {
  if (phi.degree != 0) return false;
  for (int b = 0; b < phi.source.nb(); ++b)
    for (int a = 0; a < phi.source.na(); ++a)
      if (!is_quasi_iso(phi.graded(b, a))) return false;
  return true;
}

bool is_acyclic(const Bimodule& T) {
  for (const Complex& c : T.comps())
    if (!is_acyclic(c)) return false;
  return true;
}

BimoduleCone cone(const BimoduleMorphism& phi) {
  if (phi.degree != 0 || !is_closed(phi)) throw std::invalid_argument("cone of a non-closed or non-degree-0 module morphism");
  const Bimodule &S = phi.source, &T = phi.target;
  const DgCategory& A = *S.left_cat();
  std::vector<Cone> cs;
  std::vector<Complex> comps;
  for (int b = 0; b < S.nb(); ++b)
    for (int a = 0; a < S.na(); ++a) {
      cs.push_back(cone(phi.graded(b, a)));
      comps.push_back(cs.back().cx);
    }
  auto C = [&](int b, int a) -> const Cone& { return cs[S.idx(b, a)]; };
  Bimodule M = make_bimodule(
      S.left_cat(), S.right_cat(), "cone(" + S.name() + "->" + T.name() + ")", std::move(comps),
      [&](int b, int a, int a2, int g) {
        const Cone &s = C(b, a), &t = C(b, a2);
        Matrix v = t.layout.inclusion(0) * signed_if(S.lact(b, a, a2, g), odd(A.deg(a, a2, g))) * s.layout.projection(0);
        return v + t.layout.inclusion(1) * T.lact(b, a, a2, g) * s.layout.projection(1);
      },
      [&](int b2, int b, int a, int f) {
        const Cone &s = C(b, a), &t = C(b2, a);
        Matrix v = t.layout.inclusion(0) * S.ract(b2, b, a, f) * s.layout.projection(0);
        return v + t.layout.inclusion(1) * T.ract(b2, b, a, f) * s.layout.projection(1);
      });
  BimoduleCone out{M, {T, M, 0, {}}, {M, shift(S, 1), 0, {}}};
  for (const Cone& c : cs) {
    out.inclusion.comps.push_back(c.inclusion.m);
    out.projection.comps.push_back(c.projection.m);
  }
  return out;
}

}  // namespace dgc
