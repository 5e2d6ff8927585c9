#include "dgc/endcoend.hpp"

#include <stdexcept>

namespace dgc {

namespace {

Vector unit(Field F, int n, int i) {
  Vector v(n, F.zero());
  v[i] = F.one();
  return v;
}

void require_endo(const Bimodule& F, const char* what) {
  if (!same_category(F.left_cat(), F.right_cat())) throw std::invalid_argument(std::string(what) + ": bimodule must be over (A,A)");
}

std::vector<std::vector<Vector>> morphisms_to_use(const DgCategory& A, bool use_gens, bool& minimal) {
  if (use_gens) {
    GeneratingSet g = generating_set(A);
    minimal = g.minimal;
    return g.gens;
  }
  minimal = false;
  std::vector<std::vector<Vector>> out(static_cast<size_t>(A.size()) * A.size());
  for (int a = 0; a < A.size(); ++a)
    for (int b = 0; b < A.size(); ++b)
      for (int i = 0; i < A.hom(a, b).dim(); ++i) out[A.pair(a, b)].push_back(A.basis(a, b, i));
  return out;
}

int element_degree(const Complex& C, const Vector& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return C.degree_of(static_cast<int>(i));
  return 0;
}

void add_block(Matrix& K, int row0, const Matrix& block, const std::vector<int>& cols, const Scalar& coeff) {
  for (int r = 0; r < block.rows(); ++r)
    for (int c = 0; c < block.cols(); ++c)
      if (!block(r, c).is_zero()) K(row0 + r, cols[c]) += block(r, c) * coeff;
}

std::vector<Complex> diagonal_parts(const Bimodule& F) {
  std::vector<Complex> parts;
  for (int a = 0; a < F.na(); ++a) parts.push_back(F.comp(a, a));
  return parts;
}

bool commutes_with_d(const GradedMap& f) {
  Matrix lhs = f.target.d() * f.m;
  Matrix rhs = f.m * f.source.d();
  return odd(f.degree) ? lhs == -rhs : lhs == rhs;
}

bool is_chain_iso(const GradedMap& f) {
  return f.m.rows() == f.m.cols() && inverse(f.m).has_value() && commutes_with_d(f);
}

}  // namespace

Vector EndResult::component(const Vector& v, int a) const { return product.projection(a).apply(embedding.apply(v)); }

EndResult end_bimodule(const Bimodule& F, bool use_generating_set) {
  require_endo(F, "end_bimodule");
  const DgCategory& A = *F.left_cat();
  const Field K0 = F.field();
  const int n = A.size();
  EndResult E;
  E.F = F;
  E.product = direct_sum(diagonal_parts(F));
  const Complex& P = E.product.cx;
  auto gens = morphisms_to_use(A, use_generating_set, E.minimal_constraints);

  int rows = 0;
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2) rows += static_cast<int>(gens[A.pair(a, a2)].size()) * F.comp(a, a2).dim();
  Matrix K(K0, rows, P.dim());
  int r0 = 0;
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2)
      for (const Vector& f : gens[A.pair(a, a2)]) {
        const int df = element_degree(A.hom(a, a2), f);
        add_block(K, r0, F.left_by(a, a, a2, f), E.product.pos[a], K0.one());
        Matrix R = F.right_by(a, a2, a2, f) * sign_diag(F.comp(a2, a2), df);
        add_block(K, r0, R, E.product.pos[a2], K0.from_int(-1));
        r0 += F.comp(a, a2).dim();
      }
  std::map<int, Matrix> spans;
  for (auto [deg, dn] : P.dims()) {
    if (dn == 0) continue;
    std::vector<int> cols(dn);
    for (int i = 0; i < dn; ++i) cols[i] = P.offset(deg) + i;
    spans[deg] = kernel_basis(K.select_cols(cols));
  }
  Subcomplex sub = subcomplex_from_spans(P, spans);
  E.total = sub.cx;
  E.embedding = sub.incl;
  E.coords = sub.coords;
  for (int a = 0; a < n; ++a) E.projections.emplace_back(E.total, F.comp(a, a), 0, E.product.projection(a) * E.embedding);
  return E;
}

CoendResult coend_bimodule(const Bimodule& F, bool use_generating_set) {
  require_endo(F, "coend_bimodule");
  const DgCategory& A = *F.left_cat();
  const Field K0 = F.field();
  const int n = A.size();
  CoendResult C;
  C.F = F;
  C.sum = direct_sum(diagonal_parts(F));
  const Complex& S = C.sum.cx;
  bool minimal = true;
  auto gens = morphisms_to_use(A, use_generating_set, minimal);
  std::map<int, std::vector<Vector>> rels;
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2)
      for (const Vector& f : gens[A.pair(a, a2)]) {
        const int df = element_degree(A.hom(a, a2), f);
        const Complex& X = F.comp(a2, a);
        Matrix L = F.left_by(a2, a, a2, f);   // F(a2,a) -> F(a2,a2)
        Matrix R = F.right_by(a, a2, a, f);   // F(a2,a) -> F(a,a)
        for (int x = 0; x < X.dim(); ++x) {
          Vector v(S.dim(), K0.zero());
          const bool neg = odd(static_cast<long long>(df) * X.degree_of(x));
          for (int r = 0; r < L.rows(); ++r) v[C.sum.pos[a2][r]] += L(r, x);
          for (int r = 0; r < R.rows(); ++r) {
            if (neg)
              v[C.sum.pos[a][r]] += R(r, x);
            else
              v[C.sum.pos[a][r]] -= R(r, x);
          }
          rels[df + X.degree_of(x)].push_back(std::move(v));
        }
      }
  std::map<int, Matrix> local;
  for (auto& [deg, vs] : rels) {
    const int dn = S.dim(deg);
    if (dn == 0) continue;
    Matrix m(K0, dn, static_cast<int>(vs.size()));
    for (size_t j = 0; j < vs.size(); ++j)
      for (int i = 0; i < dn; ++i) m(i, static_cast<int>(j)) = vs[j][S.offset(deg) + i];
    local[deg] = m;
  }
  Quotient q = quotient_by_spans(S, local);
  C.total = q.cx;
  C.proj = q.proj;
  C.section = q.section;
  for (int a = 0; a < n; ++a) C.injections.emplace_back(F.comp(a, a), C.total, 0, C.proj * C.sum.inclusion(a));
  return C;
}

GradedMap induced_end_map(const EndResult& src, const EndResult& tgt, const std::vector<Matrix>& diag, int degree) {
  const Field F = src.F.field();
  Matrix M(F, tgt.product.cx.dim(), src.product.cx.dim());
  for (size_t a = 0; a < diag.size(); ++a)
    M += tgt.product.inclusion(static_cast<int>(a)) * diag[a] * src.product.projection(static_cast<int>(a));
  auto X = solve(tgt.embedding, M * src.embedding);
  if (!X) throw std::invalid_argument("induced_end_map: image leaves the target end");
  return GradedMap(src.total, tgt.total, degree, *X);
}

GradedMap induced_coend_map(const CoendResult& src, const CoendResult& tgt, const std::vector<Matrix>& diag, int degree) {
  const Field F = src.F.field();
  Matrix M(F, tgt.sum.cx.dim(), src.sum.cx.dim());
  for (size_t a = 0; a < diag.size(); ++a) M += tgt.sum.inclusion(static_cast<int>(a)) * diag[a] * src.sum.projection(static_cast<int>(a));
  Matrix relpart = Matrix::identity(F, src.sum.cx.dim()) - src.section * src.proj;
  if (!(tgt.proj * M * relpart).is_zero()) throw std::invalid_argument("induced_coend_map: relations are not preserved");
  return GradedMap(src.total, tgt.total, degree, tgt.proj * M * src.section);
}

GradedMap end_map(const BimoduleMorphism& phi, const EndResult& src, const EndResult& tgt) {
  std::vector<Matrix> diag;
  for (int a = 0; a < phi.source.na(); ++a) diag.push_back(phi.at(a, a));
  return induced_end_map(src, tgt, diag, phi.degree);
}

GradedMap coend_map(const BimoduleMorphism& phi, const CoendResult& src, const CoendResult& tgt) {
  std::vector<Matrix> diag;
  for (int a = 0; a < phi.source.na(); ++a) diag.push_back(phi.at(a, a));
  return induced_coend_map(src, tgt, diag, phi.degree);
}

std::optional<GradedMap> factor_through_end(const EndResult& E, const Complex& Z, const std::vector<Matrix>& family, int degree) {
  Matrix G(E.F.field(), E.product.cx.dim(), Z.dim());
  for (size_t a = 0; a < family.size(); ++a) G += E.product.inclusion(static_cast<int>(a)) * family[a];
  auto X = solve(E.embedding, G);
  if (!X) return std::nullopt;
  return GradedMap(Z, E.total, degree, *X);
}

std::optional<GradedMap> factor_through_coend(const CoendResult& C, const Complex& Z, const std::vector<Matrix>& family, int degree) {
  const Field F = C.F.field();
  Matrix H(F, Z.dim(), C.sum.cx.dim());
  for (size_t a = 0; a < family.size(); ++a) H += family[a] * C.sum.projection(static_cast<int>(a));
  Matrix relpart = Matrix::identity(F, C.sum.cx.dim()) - C.section * C.proj;
  if (!(H * relpart).is_zero()) return std::nullopt;
  return GradedMap(C.total, Z, degree, H * C.section);
}

// ---------------------------------------------------------------------------

namespace {

struct HomGrid {
  std::vector<HomComplex> H;
  int n;
  const HomComplex& at(int b, int a) const { return H[static_cast<size_t>(b) * n + a]; }
};

std::vector<Complex> grid_comps(const HomGrid& g) {
  std::vector<Complex> out;
  for (const HomComplex& h : g.H) out.push_back(h.cx);
  return out;
}

void require_same_side_module(const Bimodule& X, const Bimodule& Y, bool right) {
  bool ok = right ? (X.is_right_module() && Y.is_right_module() && same_category(X.right_cat(), Y.right_cat()))
                  : (X.is_left_module() && Y.is_left_module() && same_category(X.left_cat(), Y.left_cat()));
  if (!ok) throw std::invalid_argument(std::string("hom bimodule expects two ") + (right ? "right" : "left") + " modules over one category");
}

}  // namespace

Bimodule hom_bimodule_right(const Bimodule& X, const Bimodule& Y) {
  require_same_side_module(X, Y, true);
  const CatPtr& A = X.right_cat();
  const int n = A->size();
  HomGrid g{{}, n};
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) g.H.push_back(internal_hom(X.comp(a, 0), Y.comp(b, 0)));
  return make_bimodule(
      A, A, "Hom(" + X.name() + "," + Y.name() + ")", grid_comps(g),
      [&](int b, int a, int a2, int gi) {
        const int dg = A->deg(a, a2, gi);
        GradedMap pre(X.comp(a2, 0), X.comp(a, 0), dg, X.ract(a, a2, 0, gi) * sign_diag(X.comp(a2, 0), dg));
        return hom_operator(g.at(b, a), g.at(b, a2), GradedMap::identity(Y.comp(b, 0)), pre, dg).m;
      },
      [&](int b2, int b, int a, int f) {
        const int df = A->deg(b2, b, f);
        GradedMap post(Y.comp(b, 0), Y.comp(b2, 0), df, Y.ract(b2, b, 0, f));
        GradedMap pre(X.comp(a, 0), X.comp(a, 0), 0, sign_diag(X.comp(a, 0), df));
        return hom_operator(g.at(b, a), g.at(b2, a), post, pre, 0).m;
      });
}

Bimodule hom_bimodule_left(const Bimodule& X, const Bimodule& Y) {
  require_same_side_module(X, Y, false);
  const CatPtr& A = X.left_cat();
  const int n = A->size();
  HomGrid g{{}, n};
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) g.H.push_back(internal_hom(X.comp(0, b), Y.comp(0, a)));
  return make_bimodule(
      A, A, "Hom(" + X.name() + "," + Y.name() + ")", grid_comps(g),
      [&](int b, int a, int a2, int gi) {
        GradedMap post(Y.comp(0, a), Y.comp(0, a2), A->deg(a, a2, gi), Y.lact(0, a, a2, gi));
        return hom_operator(g.at(b, a), g.at(b, a2), post, GradedMap::identity(X.comp(0, b)), 0).m;
      },
      [&](int b2, int b, int a, int f) {
        GradedMap pre(X.comp(0, b2), X.comp(0, b), A->deg(b2, b, f), X.lact(0, b2, b, f));
        return hom_operator(g.at(b, a), g.at(b2, a), GradedMap::identity(Y.comp(0, a)), pre, 0).m;
      });
}

Bimodule hom_out_bimodule(const Complex& B, const Bimodule& F) {
  const int na = F.na(), nb = F.nb();
  std::vector<HomComplex> H;
  std::vector<Complex> comps;
  for (int b = 0; b < nb; ++b)
    for (int a = 0; a < na; ++a) {
      H.push_back(internal_hom(B, F.comp(b, a)));
      comps.push_back(H.back().cx);
    }
  auto at = [&](int b, int a) -> const HomComplex& { return H[F.idx(b, a)]; };
  return make_bimodule(
      F.left_cat(), F.right_cat(), "Hom(B," + F.name() + ")", std::move(comps),
      [&](int b, int a, int a2, int g) {
        GradedMap post(F.comp(b, a), F.comp(b, a2), F.left_cat()->deg(a, a2, g), F.lact(b, a, a2, g));
        return hom_operator(at(b, a), at(b, a2), post, GradedMap::identity(B), 0).m;
      },
      [&](int b2, int b, int a, int f) {
        const int df = F.right_cat()->deg(b2, b, f);
        GradedMap post(F.comp(b, a), F.comp(b2, a), df, F.ract(b2, b, a, f));
        GradedMap pre(B, B, 0, sign_diag(B, df));
        return hom_operator(at(b, a), at(b2, a), post, pre, 0).m;
      });
}

Bimodule hom_in_bimodule(const Bimodule& F, const Complex& B) {
  require_endo(F, "hom_in_bimodule");
  const CatPtr& A = F.left_cat();
  const int n = A->size();
  HomGrid g{{}, n};
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) g.H.push_back(internal_hom(F.comp(a, b), B));
  return make_bimodule(
      A, A, "Hom(" + F.name() + ",B)", grid_comps(g),
      [&](int b, int a, int a2, int gi) {
        const int dg = A->deg(a, a2, gi);
        GradedMap pre(F.comp(a2, b), F.comp(a, b), dg, F.ract(a, a2, b, gi) * sign_diag(F.comp(a2, b), dg));
        return hom_operator(g.at(b, a), g.at(b, a2), GradedMap::identity(B), pre, dg).m;
      },
      [&](int b2, int b, int a, int f) {
        GradedMap pre(F.comp(a, b2), F.comp(a, b), A->deg(b2, b, f), F.lact(a, b2, b, f));
        return hom_operator(g.at(b, a), g.at(b2, a), GradedMap::identity(B), pre, 0).m;
      });
}

// ---------------------------------------------------------------------------

Bimodule parameter_slice(const Bimodule& F, const CatPtr& A, const CatPtr& C, int c) {
  const int nc = C->size();
  if (F.na() != A->size() * nc || !same_category(F.right_cat(), A))
    throw std::invalid_argument("parameter_slice: expected a bimodule over (A⊗C, A)");
  const int n = A->size();
  const Field K0 = F.field();
  std::vector<Complex> comps;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) comps.push_back(F.comp(b, a * nc + c));
  return make_bimodule(
      A, A, F.name() + "(-,-," + C->object(c) + ")", std::move(comps),
      [&](int b, int a, int a2, int g) {
        Vector e = tensor_element(*A, *C, a, a2, c, c, unit(K0, A->hom(a, a2).dim(), g), C->id(c));
        return F.left_by(b, a * nc + c, a2 * nc + c, e);
      },
      [&](int b2, int b, int a, int f) { return F.ract(b2, b, a * nc + c, f); });
}

EndWithParameters end_with_parameters(const Bimodule& F, const CatPtr& A, const CatPtr& C) {
  const int nc = C->size(), n = A->size();
  const Field K0 = F.field();
  EndWithParameters out;
  out.A = A;
  out.C = C;
  for (int c = 0; c < nc; ++c) out.ends.push_back(end_bimodule(parameter_slice(F, A, C, c)));
  out.maps.resize(static_cast<size_t>(nc) * nc);
  for (int c = 0; c < nc; ++c)
    for (int c2 = 0; c2 < nc; ++c2)
      for (int h = 0; h < C->hom(c, c2).dim(); ++h) {
        std::vector<Matrix> diag;
        for (int a = 0; a < n; ++a) {
          Vector e = tensor_element(*A, *C, a, a, c, c2, A->id(a), unit(K0, C->hom(c, c2).dim(), h));
          diag.push_back(F.left_by(a, a * nc + c, a * nc + c2, e));
        }
        out.maps[static_cast<size_t>(c) * nc + c2].push_back(induced_end_map(out.ends[c], out.ends[c2], diag, C->deg(c, c2, h)));
      }
  auto map_of = [&](int c, int c2, const Vector& h) {
    const EndResult &s = out.ends[c], &t = out.ends[c2];
    Matrix m(K0, t.total.dim(), s.total.dim());
    for (size_t k = 0; k < h.size(); ++k)
      if (!h[k].is_zero()) m += out.maps[static_cast<size_t>(c) * nc + c2][k].m.scaled(h[k]);
    return m;
  };
  bool ok = true;
  for (int c = 0; c < nc && ok; ++c) ok = map_of(c, c, C->id(c)).is_identity();
  for (int c1 = 0; c1 < nc && ok; ++c1)
    for (int c2 = 0; c2 < nc && ok; ++c2)
      for (int c3 = 0; c3 < nc && ok; ++c3)
        for (int h1 = 0; h1 < C->hom(c1, c2).dim() && ok; ++h1)
          for (int h2 = 0; h2 < C->hom(c2, c3).dim() && ok; ++h2) {
            Matrix lhs = out.maps[static_cast<size_t>(c2) * nc + c3][h2].m * out.maps[static_cast<size_t>(c1) * nc + c2][h1].m;
            ok = lhs == map_of(c1, c3, C->lmul(c1, c2, c3, h2).col(h1));
          }
  for (int c = 0; c < nc && ok; ++c)
    for (int c2 = 0; c2 < nc && ok; ++c2)
      for (int h = 0; h < C->hom(c, c2).dim() && ok; ++h) {
        const GradedMap& m = out.maps[static_cast<size_t>(c) * nc + c2][h];
        Matrix lhs = m.target.d() * m.m - (odd(m.degree) ? -(m.m * m.source.d()) : m.m * m.source.d());
        ok = lhs == map_of(c, c2, C->hom(c, c2).d().col(h));
      }
  out.functorial = ok;
  return out;
}

// ---------------------------------------------------------------------------

InnerEnd inner_end(const Bimodule& F, const CatPtr& A, const CatPtr& B, bool inner_is_b) {
  const int na = A->size(), nb = B->size();
  if (F.na() != na * nb || F.nb() != na * nb) throw std::invalid_argument("inner_end: expected a bimodule over (A⊗B, A⊗B)");
  const Field K0 = F.field();
  const CatPtr& I = inner_is_b ? B : A;
  const CatPtr& O = inner_is_b ? A : B;
  const int ni = I->size(), no = O->size();
  auto obj = [&](int o, int i) { return inner_is_b ? o * nb + i : i * nb + o; };
  // x⊗y with x in the outer category and y in the inner one, placed in A⊗B order
  auto elem = [&](int o, int o2, int i, int i2, const Vector& xo, const Vector& xi) {
    return inner_is_b ? tensor_element(*A, *B, o, o2, i, i2, xo, xi) : tensor_element(*A, *B, i, i2, o, o2, xi, xo);
  };
  InnerEnd out;
  for (int o2 = 0; o2 < no; ++o2)
    for (int o = 0; o < no; ++o) {
      std::vector<Complex> comps;
      for (int i2 = 0; i2 < ni; ++i2)
        for (int i = 0; i < ni; ++i) comps.push_back(F.comp(obj(o2, i2), obj(o, i)));
      Bimodule S = make_bimodule(
          I, I, "slice", std::move(comps),
          [&](int i2, int i, int i3, int g) {
            return F.left_by(obj(o2, i2), obj(o, i), obj(o, i3), elem(o, o, i, i3, O->id(o), unit(K0, I->hom(i, i3).dim(), g)));
          },
          [&](int i4, int i2, int i, int f) {
            return F.right_by(obj(o2, i4), obj(o2, i2), obj(o, i), elem(o2, o2, i4, i2, O->id(o2), unit(K0, I->hom(i4, i2).dim(), f)));
          });
      out.pieces.push_back(end_bimodule(S));
    }
  auto piece = [&](int o2, int o) -> const EndResult& { return out.pieces[static_cast<size_t>(o2) * no + o]; };
  std::vector<Complex> comps;
  for (const EndResult& e : out.pieces) comps.push_back(e.total);
  out.G = make_bimodule(
      O, O, std::string("∫_") + (inner_is_b ? "B" : "A") + " " + F.name(), std::move(comps),
      [&](int o2, int o, int o3, int g) {
        std::vector<Matrix> diag;
        for (int i = 0; i < ni; ++i)
          diag.push_back(F.left_by(obj(o2, i), obj(o, i), obj(o3, i), elem(o, o3, i, i, unit(K0, O->hom(o, o3).dim(), g), I->id(i))));
        return induced_end_map(piece(o2, o), piece(o2, o3), diag, O->deg(o, o3, g)).m;
      },
      [&](int o4, int o2, int o, int f) {
        std::vector<Matrix> diag;
        for (int i = 0; i < ni; ++i)
          diag.push_back(F.right_by(obj(o4, i), obj(o2, i), obj(o, i), elem(o4, o2, i, i, unit(K0, O->hom(o4, o2).dim(), f), I->id(i))));
        return induced_end_map(piece(o2, o), piece(o4, o), diag, O->deg(o4, o2, f)).m;
      });
  return out;
}

FubiniWitness fubini_witness(const Bimodule& F, const CatPtr& A, const CatPtr& B) {
  const int na = A->size(), nb = B->size();
  const Field K0 = F.field();
  FubiniWitness W;
  W.joint = end_bimodule(F);
  InnerEnd ib = inner_end(F, A, B, true), ia = inner_end(F, A, B, false);
  W.outer_a = end_bimodule(ib.G);
  W.outer_b = end_bimodule(ia.G);
  const int pdim = W.joint.product.cx.dim();
  auto embed = [&](const EndResult& outer, const InnerEnd& in, bool inner_is_b) {
    const int no = inner_is_b ? na : nb, ni = inner_is_b ? nb : na;
    Matrix M(K0, pdim, outer.total.dim());
    for (int j = 0; j < outer.total.dim(); ++j) {
      Vector v = unit(K0, outer.total.dim(), j);
      for (int o = 0; o < no; ++o) {
        const EndResult& p = in.pieces[static_cast<size_t>(o) * no + o];
        Vector w = outer.component(v, o);
        for (int i = 0; i < ni; ++i) {
          Vector x = p.component(w, i);
          const int ob = inner_is_b ? o * nb + i : i * nb + o;
          for (size_t r = 0; r < x.size(); ++r) M(W.joint.product.pos[ob][r], j) = x[r];
        }
      }
    }
    return M;
  };
  W.emb[0] = W.joint.embedding;
  W.emb[1] = embed(W.outer_a, ib, true);
  W.emb[2] = embed(W.outer_b, ia, false);
  const Complex* tot[3] = {&W.joint.total, &W.outer_a.total, &W.outer_b.total};
  bool ok = true;
  for (int i = 0; i < 3 && ok; ++i)
    for (int j = 0; j < 3 && ok; ++j) {
      auto X = solve(W.emb[i], W.emb[j]);
      if (!X) {
        ok = false;
        W.detail = "end " + std::to_string(j) + " does not factor through end " + std::to_string(i);
        break;
      }
      W.w[i][j] = GradedMap(*tot[j], *tot[i], 0, *X);
      if (!commutes_with_d(W.w[i][j])) {
        ok = false;
        W.detail = "witness " + std::to_string(i) + "<-" + std::to_string(j) + " is not a chain map";
      }
    }
  for (int i = 0; i < 3 && ok; ++i)
    for (int j = 0; j < 3 && ok; ++j)
      if (!(W.w[i][j].m * W.w[j][i].m).is_identity()) {
        ok = false;
        W.detail = "composite " + std::to_string(i) + "<-" + std::to_string(j) + "<-" + std::to_string(i) + " is not the identity";
      }
  W.isomorphic = ok;
  return W;
}

// ---------------------------------------------------------------------------

CoyonedaWitness coyoneda_witness(const Bimodule& M) {
  const bool left = M.is_left_module();
  if (!left && !M.is_right_module()) throw std::invalid_argument("coyoneda_witness expects a one-sided module");
  const CatPtr& A = left ? M.left_cat() : M.right_cat();
  const int n = A->size();
  const Field K0 = M.field();
  auto Mc = [&](int x) -> const Complex& { return left ? M.comp(0, x) : M.comp(x, 0); };
  CoyonedaWitness W;
  std::vector<Bimodule> Ks;
  W.isomorphisms = true;
  for (int X = 0; X < n; ++X) {
    Bimodule K = left ? tensor_bimodule(representable_right(A, X), M) : tensor_bimodule(M, representable_left(A, X));
    CoendResult C = coend_bimodule(K);
    Matrix m(K0, Mc(X).dim(), C.total.dim());
    for (int t = 0; t < C.total.dim(); ++t) {
      Vector s = C.section.col(t);
      Vector img(Mc(X).dim(), K0.zero());
      for (int a = 0; a < n; ++a) {
        TensorComplex T = left ? tensor(A->hom(a, X), Mc(a)) : tensor(Mc(a), A->hom(X, a));
        Vector loc = C.sum.projection(a).apply(s);
        for (int k = 0; k < T.cx.dim(); ++k) {
          if (loc[k].is_zero()) continue;
          auto [p, q] = T.pairs[k];
          Vector act = left ? M.lact(0, a, X, p).col(q) : M.ract(X, a, 0, q).col(p);
          for (size_t r = 0; r < act.size(); ++r) img[r] += loc[k] * act[r];
        }
      }
      m.set_col(t, img);
    }
    GradedMap g(C.total, Mc(X), 0, m);
    W.isomorphisms = W.isomorphisms && is_chain_iso(g);
    W.coends.push_back(std::move(C));
    W.maps.push_back(std::move(g));
    Ks.push_back(std::move(K));
  }
  // naturality in X through the action on the representable factor
  bool nat = true;
  for (int X = 0; X < n && nat; ++X)
    for (int X2 = 0; X2 < n && nat; ++X2) {
      const int src = left ? X : X2, tgt = left ? X2 : X;  // g ∈ A(src,tgt)
      for (int g = 0; g < A->hom(src, tgt).dim() && nat; ++g) {
        const int dg = A->deg(src, tgt, g);
        const Bimodule &KX = Ks[X], &KX2 = Ks[X2];
        std::vector<Matrix> diag;
        for (int a = 0; a < n; ++a) {
          TensorComplex Ts = left ? tensor(A->hom(a, X), Mc(a)) : tensor(Mc(a), A->hom(X, a));
          TensorComplex Tt = left ? tensor(A->hom(a, X2), Mc(a)) : tensor(Mc(a), A->hom(X2, a));
          Matrix d(K0, Tt.cx.dim(), Ts.cx.dim());
          for (int k = 0; k < Ts.cx.dim(); ++k) {
            auto [p, q] = Ts.pairs[k];
            if (left) {
              const Matrix& Lg = A->lmul(a, X, X2, g);  // f ↦ g∘f
              for (int r = 0; r < Lg.rows(); ++r)
                if (!Lg(r, p).is_zero()) d(Tt.at(r, q), k) += Lg(r, p);
            } else {
              Matrix Rg = A->right_mult(X2, X, a, A->basis(X2, X, g));  // f ↦ f∘g
              const bool neg = odd(static_cast<long long>(dg) * Ts.cx.degree_of(k));
              for (int r = 0; r < Rg.rows(); ++r)
                if (!Rg(r, q).is_zero()) d(Tt.at(p, r), k) += neg ? -Rg(r, q) : Rg(r, q);
            }
          }
          diag.push_back(d);
        }
        (void)KX;
        (void)KX2;
        GradedMap cm = induced_coend_map(W.coends[X], W.coends[X2], diag, dg);
        Matrix lhs = W.maps[X2].m * cm.m;
        Matrix rhs = left ? M.lact(0, X, X2, g) * W.maps[X].m : M.ract(X2, X, 0, g) * sign_diag(Mc(X), dg) * W.maps[X].m;
        nat = lhs == rhs;
      }
    }
  W.natural = nat;
  return W;
}

YonedaEndWitness yoneda_end_witness(const Bimodule& M) {
  const bool left = M.is_left_module();
  if (!left && !M.is_right_module()) throw std::invalid_argument("yoneda_end_witness expects a one-sided module");
  const CatPtr& A = left ? M.left_cat() : M.right_cat();
  const int n = A->size();
  const Field K0 = M.field();
  auto Mc = [&](int x) -> const Complex& { return left ? M.comp(0, x) : M.comp(x, 0); };
  // hom complex of component a of the Hom-bimodule at X: Hom(A(X,a), M(a)) or Hom(A(a,X), N(a))
  auto piece = [&](int X, int a) { return left ? internal_hom(A->hom(X, a), Mc(a)) : internal_hom(A->hom(a, X), Mc(a)); };
  YonedaEndWitness W;
  W.isomorphisms = true;
  for (int X = 0; X < n; ++X) {
    Bimodule H = left ? hom_bimodule_left(representable_left(A, X), M) : hom_bimodule_right(representable_right(A, X), M);
    EndResult E = end_bimodule(H);
    std::vector<Matrix> family;
    for (int a = 0; a < n; ++a) {
      HomComplex hc = piece(X, a);
      Matrix fam(K0, hc.cx.dim(), Mc(X).dim());
      for (int x = 0; x < Mc(X).dim(); ++x) {
        const int dx = Mc(X).degree_of(x);
        Matrix phi(K0, Mc(a).dim(), hc.source.dim());
        for (int f = 0; f < hc.source.dim(); ++f) {
          Vector col = left ? M.lact(0, X, a, f).col(x) : M.ract(a, X, 0, f).col(x);
          if (left && odd(static_cast<long long>(dx) * hc.source.degree_of(f)))
            for (auto& s : col) s.negate();
          phi.set_col(f, col);
        }
        fam.set_col(x, hc.coords(phi));
      }
      family.push_back(fam);
    }
    auto g = factor_through_end(E, Mc(X), family, 0);
    if (!g) throw std::logic_error("yoneda_end_witness: the Yoneda family is not a wedge");
    W.isomorphisms = W.isomorphisms && is_chain_iso(*g);
    W.ends.push_back(std::move(E));
    W.maps.push_back(*g);
  }
  bool nat = true;
  for (int X = 0; X < n && nat; ++X)
    for (int X2 = 0; X2 < n && nat; ++X2) {
      const int src = left ? X : X2, tgt = left ? X2 : X;
      for (int g = 0; g < A->hom(src, tgt).dim() && nat; ++g) {
        const int dg = A->deg(src, tgt, g);
        std::vector<Matrix> diag;
        for (int a = 0; a < n; ++a) {
          HomComplex from = piece(X, a), to = piece(X2, a);
          if (left) {
            // (gφ)(f') = (-1)^{|g|(|φ|+|f'|)} φ(f'∘g)
            Matrix pre = A->right_mult(X, X2, a, A->basis(X, X2, g)) * sign_diag(to.source, dg);
            diag.push_back(hom_operator(from, to, GradedMap::identity(Mc(a)), GradedMap(to.source, from.source, dg, pre), dg).m);
          } else {
            // (φg)(f') = φ(g∘f')
            diag.push_back(hom_operator(from, to, GradedMap::identity(Mc(a)), GradedMap(to.source, from.source, dg, A->lmul(a, X2, X, g)), 0).m);
          }
        }
        GradedMap em = induced_end_map(W.ends[X], W.ends[X2], diag, dg);
        Matrix act = left ? M.lact(0, X, X2, g) : M.ract(X2, X, 0, g);
        nat = W.maps[X2].m * act == em.m * W.maps[X].m;
      }
    }
  W.natural = nat;
  return W;
}

HomEndsReport hom_preserves_ends_check(const Bimodule& F, const Complex& B) {
  require_endo(F, "hom_preserves_ends_check");
  const Field K0 = F.field();
  const int n = F.na();
  HomEndsReport R;
  {
    EndResult E = end_bimodule(F);
    HomComplex X = internal_hom(B, E.total);
    EndResult E2 = end_bimodule(hom_out_bimodule(B, F));
    std::vector<Matrix> family;
    for (int a = 0; a < n; ++a) {
      HomComplex ha = internal_hom(B, F.comp(a, a));
      Matrix fam(K0, ha.cx.dim(), X.cx.dim());
      for (int j = 0; j < X.cx.dim(); ++j) fam.set_col(j, ha.coords(E.projections[a].m * X.map_of(unit(K0, X.cx.dim(), j))));
      family.push_back(fam);
    }
    auto g = factor_through_end(E2, X.cx, family, 0);
    R.end_iso = g && is_chain_iso(*g);
    if (g) R.end_comparison = g->m;
  }
  {
    CoendResult C = coend_bimodule(F);
    HomComplex X = internal_hom(C.total, B);
    EndResult E3 = end_bimodule(hom_in_bimodule(F, B));
    std::vector<Matrix> family;
    for (int a = 0; a < n; ++a) {
      HomComplex ha = internal_hom(F.comp(a, a), B);
      Matrix fam(K0, ha.cx.dim(), X.cx.dim());
      for (int j = 0; j < X.cx.dim(); ++j) fam.set_col(j, ha.coords(X.map_of(unit(K0, X.cx.dim(), j)) * C.injections[a].m));
      family.push_back(fam);
    }
    auto g = factor_through_end(E3, X.cx, family, 0);
    R.coend_iso = g && is_chain_iso(*g);
    if (g) R.coend_comparison = g->m;
  }
  return R;
}

}  // namespace dgc
