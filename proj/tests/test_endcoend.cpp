#include <gtest/gtest.h>

#include "dgc/endcoend.hpp"
#include "dgc/fixtures.hpp"
#include "support/generators.hpp"

using namespace dgc;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);

std::vector<CatPtr> zoo(Field F) {
  return {fixtures::q2(F), fixtures::dual_numbers(F), fixtures::truncated_odd(F), fixtures::contractible_pair(F), fixtures::homotopy_pair(F)};
}

/// Embedding rewritten in concatenated (object-major) coordinates.
Matrix concatenated(const EndResult& E) {
  std::vector<int> offset;
  int dim = 0;
  for (size_t a = 0; a < E.product.pos.size(); ++a) {
    offset.push_back(dim);
    dim += static_cast<int>(E.product.pos[a].size());
  }
  Matrix out(E.F.field(), dim, E.total.dim());
  for (size_t a = 0; a < E.product.pos.size(); ++a)
    for (size_t i = 0; i < E.product.pos[a].size(); ++i)
      for (int c = 0; c < E.total.dim(); ++c) out(offset[a] + static_cast<int>(i), c) = E.embedding(E.product.pos[a][i], c);
  return out;
}

Complex interval(Field F) { return Complex::from_blocks(F, {{-1, 1}, {0, 1}}, {{-1, Matrix::identity(F, 1)}}); }

/// F(b,(a,c)) = T(b,a) ⊗ N(c) over (A⊗C, A), with (f⊗h)(x⊗n) = (-1)^{|h||x|} fx⊗hn and
/// (x⊗n)f' = (-1)^{|f'||n|} xf'⊗n.
Bimodule with_parameter(const Bimodule& T, const Bimodule& N, const CatPtr& AC) {
  const CatPtr& A = T.left_cat();
  const CatPtr& C = N.left_cat();
  const int n = A->size(), nc = C->size();
  const Field F = T.field();
  std::vector<TensorComplex> cs;
  std::vector<Complex> comps;
  for (int b = 0; b < n; ++b)
    for (int l = 0; l < n * nc; ++l) {
      cs.push_back(tensor(T.comp(b, l / nc), N.comp(0, l % nc)));
      comps.push_back(cs.back().cx);
    }
  auto at = [&](int b, int l) -> const TensorComplex& { return cs[static_cast<size_t>(b) * n * nc + l]; };
  return make_bimodule(
      AC, A, T.name() + "⊗" + N.name(), std::move(comps),
      [&](int b, int l, int l2, int k) {
        const int a = l / nc, c = l % nc, a2 = l2 / nc, c2 = l2 % nc;
        auto [fi, hi] = tensor(A->hom(a, a2), C->hom(c, c2)).pairs[k];
        const Matrix &Lf = T.lact(b, a, a2, fi), &Lh = N.lact(0, c, c2, hi);
        const int dh = C->deg(c, c2, hi);
        const TensorComplex &s = at(b, l), &t = at(b, l2);
        Matrix out(F, t.cx.dim(), s.cx.dim());
        for (int j = 0; j < s.cx.dim(); ++j) {
          auto [x, y] = s.pairs[j];
          bool neg = odd(static_cast<long long>(dh) * s.left.degree_of(x));
          for (int r = 0; r < Lf.rows(); ++r)
            for (int q = 0; q < Lh.rows(); ++q) {
              Scalar v = Lf(r, x) * Lh(q, y);
              if (!v.is_zero()) out(t.at(r, q), j) += neg ? -v : v;
            }
        }
        return out;
      },
      [&](int b2, int b, int l, int f) {
        const int df = A->deg(b2, b, f);
        const Matrix& Rf = T.ract(b2, b, l / nc, f);
        const TensorComplex &s = at(b, l), &t = at(b2, l);
        Matrix out(F, t.cx.dim(), s.cx.dim());
        for (int j = 0; j < s.cx.dim(); ++j) {
          auto [x, y] = s.pairs[j];
          bool neg = odd(static_cast<long long>(df) * s.right.degree_of(y));
          for (int r = 0; r < Rf.rows(); ++r)
            if (!Rf(r, x).is_zero()) out(t.at(r, y), j) += neg ? -Rf(r, x) : Rf(r, x);
        }
        return out;
      });
}

}  // namespace

TEST(EndCoend, DiagonalOfQ2) {
  Bimodule D = diagonal(fixtures::q2(Q));
  EXPECT_EQ(oracle::end_dims(D), (std::map<int, int>{{0, 1}}));
  EXPECT_EQ(oracle::coend_dims(D), (std::map<int, int>{{0, 2}}));
  EndResult E = end_bimodule(D);
  EXPECT_EQ(E.total.dims(), (std::map<int, int>{{0, 1}}));
  // the end element is (1_a, 1_b)
  EXPECT_EQ(E.component({Q.one()}, 0), (Vector{Q.one()}));
  EXPECT_EQ(E.component({Q.one()}, 1), (Vector{Q.one()}));
  CoendResult C = coend_bimodule(D);
  EXPECT_EQ(C.total.dims(), (std::map<int, int>{{0, 2}}));
}

TEST(EndCoend, OverTheUnitCategory) {
  CatPtr k = unit_category(Q);
  Complex V = interval(Q);
  Bimodule T = make_bimodule(
      k, k, "V", {V}, [&](int, int, int, int) { return Matrix::identity(Q, 2); }, [&](int, int, int, int) { return Matrix::identity(Q, 2); });
  ASSERT_TRUE(validate_bimodule(T).ok);
  EXPECT_EQ(end_bimodule(T).total, V);
  EXPECT_EQ(coend_bimodule(T).total.dims(), V.dims());
}

TEST(EndCoend, EndOfHomBimoduleIsNat) {
  for (Field F : {Q, F2})
    for (const CatPtr& A : zoo(F))
      for (int a = 0; a < A->size(); ++a)
        for (int b = 0; b < A->size(); ++b) {
          Bimodule X = representable_right(A, a), Y = shift(representable_right(A, b), 1);
          Bimodule H = hom_bimodule_right(X, Y);
          ValidationReport r = validate_bimodule(H);
          ASSERT_TRUE(r.ok) << r.axiom << " " << r.detail;
          EndResult E = end_bimodule(H);
          NatComplex N = nat_complex(X, Y);
          ASSERT_EQ(E.total.dims(), N.cx().dims());
          EXPECT_TRUE(same_column_space(E.embedding, N.sub.incl));
          Bimodule Xl = representable_left(A, a), Yl = representable_left(A, b);
          Bimodule Hl = hom_bimodule_left(Xl, Yl);
          ASSERT_TRUE(validate_bimodule(Hl).ok);
          EXPECT_TRUE(same_column_space(end_bimodule(Hl).embedding, nat_complex(Xl, Yl).sub.incl));
        }
}

TEST(EndCoend, EndOfFunctorHomIsNatOfFunctors) {
  CatPtr A = fixtures::q2(Q);
  CatPtr P = fixtures::point(Q, "x");
  DgFunctor Fa(P, A, {0}, {Matrix::column(A->id(0))}, "Fa");
  DgFunctor Fb(P, A, {1}, {Matrix::column(A->id(1))}, "Fb");
  EndResult E = end_bimodule(hFG(Fa, Fb));
  EXPECT_EQ(E.total.dims(), (std::map<int, int>{{0, 1}}));
  EXPECT_EQ(nat_complex(h_lower(Fa), h_lower(Fb)).cx().dims(), E.total.dims());
  EXPECT_EQ(end_bimodule(hFG(Fb, Fa)).total.dim(), 0);
  for (const CatPtr& C : zoo(Q)) {
    DgFunctor id = DgFunctor::identity(C);
    EXPECT_EQ(end_bimodule(hFG(id, id)).total.dims(), nat_complex(h_lower(id), h_lower(id)).cx().dims());
  }
}

TEST(EndCoend, AgreesWithBruteForceOracle) {
  testgen::Rng rng(0xe11d);
  for (int trial = 0; trial < 100; ++trial) {
    CatPtr A = testgen::random_category(F2, rng, 3);
    Bimodule T = testgen::random_bimodule(A, rng, 12);
    ASSERT_LE(T.total_dim(), 12) << A->name();
    ValidationReport r = validate_bimodule(T);
    ASSERT_TRUE(r.ok) << r.axiom << " " << r.detail;
    EndResult E = end_bimodule(T);
    EXPECT_EQ(E.total.dims(), oracle::end_dims(T)) << "trial " << trial << " over " << A->name();
    EXPECT_TRUE(same_column_space(concatenated(E), oracle::end_kernel(T))) << "trial " << trial;
    EXPECT_EQ(coend_bimodule(T).total.dims(), oracle::coend_dims(T)) << "trial " << trial << " over " << A->name();
    EXPECT_EQ(end_bimodule(T, false).total.dims(), E.total.dims());
    EXPECT_TRUE(oracle::compare_end(E).ok()) << "trial " << trial;
    EXPECT_TRUE(oracle::compare_coend(coend_bimodule(T)).ok()) << "trial " << trial;
  }
}

TEST(EndCoend, Universality) {
  testgen::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    CatPtr A = testgen::random_category(Q, rng, 2);
    Bimodule T = testgen::random_bimodule(A, rng, 10);
    EndResult E = end_bimodule(T);
    // the projections form a wedge and factor through the identity
    std::vector<Matrix> fam;
    for (const GradedMap& p : E.projections) fam.push_back(p.m);
    auto u = factor_through_end(E, E.total, fam, 0);
    ASSERT_TRUE(u);
    EXPECT_TRUE(u->m.is_identity());
    EXPECT_EQ(rank(E.embedding), E.total.dim());  // uniqueness of factorizations
    CoendResult C = coend_bimodule(T);
    std::vector<Matrix> cofam;
    for (const GradedMap& i : C.injections) cofam.push_back(i.m);
    auto v = factor_through_coend(C, C.total, cofam, 0);
    ASSERT_TRUE(v);
    EXPECT_TRUE(v->m.is_identity());
    EXPECT_EQ(rank(C.proj), C.total.dim());
  }
  // a family that is not a wedge: (1_a, 0) on Q2
  Bimodule D = diagonal(fixtures::q2(Q));
  EndResult E = end_bimodule(D);
  Complex k = Complex::from_dims(Q, {{0, 1}});
  EXPECT_FALSE(factor_through_end(E, k, {Matrix::identity(Q, 1), Matrix::zero(Q, 1, 1)}, 0));
  EXPECT_TRUE(factor_through_end(E, k, {Matrix::identity(Q, 1), Matrix::identity(Q, 1)}, 0));
}

TEST(EndCoend, Functoriality) {
  testgen::Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    CatPtr A = testgen::random_category(F2, rng, 2);
    Bimodule T = testgen::random_bimodule(A, rng, 8);
    BimoduleMorphism id = BimoduleMorphism::identity(T);
    EndResult E = end_bimodule(T);
    CoendResult C = coend_bimodule(T);
    EXPECT_TRUE(end_map(id, E, E).m.is_identity());
    EXPECT_TRUE(coend_map(id, C, C).m.is_identity());
    BimoduleMorphism phi = testgen::random_closed_morphism(T, T, rng);
    BimoduleMorphism psi = testgen::random_closed_morphism(T, T, rng);
    ASSERT_TRUE(validate_morphism(phi).ok);
    EXPECT_EQ(end_map(compose(psi, phi), E, E).m, end_map(psi, E, E).m * end_map(phi, E, E).m);
    EXPECT_EQ(coend_map(compose(psi, phi), C, C).m, coend_map(psi, C, C).m * coend_map(phi, C, C).m);
    GradedMap m = end_map(phi, E, E);
    EXPECT_EQ(m.target.d() * m.m, m.m * m.source.d());
  }
}

TEST(EndCoend, EndMapOfQuasiIsoIsChainMap) {
  CatPtr A = fixtures::homotopy_pair(Q);
  Bimodule D = diagonal(A);
  BimoduleCone c = cone(BimoduleMorphism::identity(D));
  Bimodule S = direct_sum({D, c.cone});
  BimoduleMorphism p{S, D, 0, {}};
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a) {
      p.comps.push_back(direct_sum({D.comp(b, a), c.cone.comp(b, a)}).projection(0));
    }
  ASSERT_TRUE(validate_morphism(p).ok);
  ASSERT_TRUE(is_qis(p));
  EndResult Es = end_bimodule(S), Et = end_bimodule(D);
  GradedMap m = end_map(p, Es, Et);
  EXPECT_TRUE(m.is_closed());
}

TEST(EndCoend, WithParameters) {
  CatPtr A = fixtures::q2(Q);
  CatPtr k = unit_category(Q);
  // C = k reduces to the plain end
  Bimodule D = diagonal(A);
  Bimodule kk = left_module(k, "k", {Complex::from_dims(Q, {{0, 1}})}, {{Matrix::identity(Q, 1)}});
  CatPtr Ak = tensor_dgcat(*A, *k);
  EndWithParameters P0 = end_with_parameters(with_parameter(D, kk, Ak), A, k);
  ASSERT_EQ(P0.ends.size(), 1u);
  EXPECT_EQ(P0.ends[0].total.dims(), end_bimodule(D).total.dims());
  EXPECT_TRUE(P0.functorial);

  // constant in C: F(A,A',c) = A(A,A') ⊗ k with f acting by 1
  CatPtr C = fixtures::q2(Q);
  Bimodule N = left_module(C, "const", {Complex::from_dims(Q, {{0, 1}}), Complex::from_dims(Q, {{0, 1}})},
                           {{Matrix::identity(Q, 1)}, {Matrix::identity(Q, 1)}, {}, {Matrix::identity(Q, 1)}});
  ASSERT_TRUE(validate_bimodule(N).ok);
  CatPtr AC = tensor_dgcat(*A, *C);
  Bimodule F = with_parameter(D, N, AC);
  ValidationReport r = validate_bimodule(F);
  ASSERT_TRUE(r.ok) << r.axiom << " " << r.detail;
  EndWithParameters P = end_with_parameters(F, A, C);
  EXPECT_TRUE(P.functorial);
  EXPECT_EQ(P.ends[0].total.dims(), P.ends[1].total.dims());
  EXPECT_TRUE(P.maps[C->pair(0, 1)][0].m.is_identity());

  // an odd parameter category
  CatPtr E = fixtures::truncated_odd(Q);
  Bimodule He = representable_left(E, 0);
  Bimodule Fe = with_parameter(diagonal(fixtures::dual_numbers(Q)), He, tensor_dgcat(*fixtures::dual_numbers(Q), *E));
  ASSERT_TRUE(validate_bimodule(Fe).ok);
  EXPECT_TRUE(end_with_parameters(Fe, fixtures::dual_numbers(Q), E).functorial);
}

TEST(EndCoend, Fubini) {
  for (Field F : {Q, F2}) {
    CatPtr A = fixtures::q2(F);
    CatPtr k = unit_category(F);
    Bimodule D = diagonal(A);
    Bimodule Dk = diagonal(k);
    CatPtr Ak = tensor_dgcat(*A, *k);
    FubiniWitness w0 = fubini_witness(external_product(D, Dk, Ak, Ak), A, k);
    EXPECT_TRUE(w0.isomorphic) << w0.detail;

    CatPtr AA = tensor_dgcat(*A, *A);
    Bimodule T = external_product(D, D, AA, AA);
    ASSERT_TRUE(validate_bimodule(T).ok);
    FubiniWitness w = fubini_witness(T, A, A);
    EXPECT_TRUE(w.isomorphic) << w.detail;
    EXPECT_EQ(w.joint.total.dims(), w.outer_a.total.dims());
    EXPECT_EQ(w.joint.total.dims(), w.outer_b.total.dims());
    EXPECT_TRUE((w.w[1][2].m * w.w[2][1].m).is_identity());
  }
  // odd degrees on both sides
  CatPtr E = fixtures::truncated_odd(Q), Dn = fixtures::dual_numbers(Q);
  CatPtr ED = tensor_dgcat(*E, *Dn);
  Bimodule T = external_product(diagonal(E), diagonal(Dn), ED, ED);
  ValidationReport r = validate_bimodule(T);
  ASSERT_TRUE(r.ok) << r.axiom << " " << r.detail;
  FubiniWitness w = fubini_witness(T, E, Dn);
  EXPECT_TRUE(w.isomorphic) << w.detail;
  EXPECT_TRUE(validate_bimodule(inner_end(T, E, Dn, true).G).ok);
  EXPECT_TRUE(validate_bimodule(inner_end(T, E, Dn, false).G).ok);
}

TEST(EndCoend, CoYoneda) {
  for (Field F : {Q, F2})
    for (const CatPtr& A : zoo(F))
      for (int b = 0; b < A->size(); ++b) {
        CoyonedaWitness w = coyoneda_witness(representable_left(A, b));
        EXPECT_TRUE(w.isomorphisms) << A->name();
        EXPECT_TRUE(w.natural) << A->name();
        CoyonedaWitness wr = coyoneda_witness(shift(representable_right(A, b), 1));
        EXPECT_TRUE(wr.isomorphisms) << A->name();
        EXPECT_TRUE(wr.natural) << A->name();
      }
  testgen::Rng rng(3);
  CatPtr A = fixtures::q2(F2);
  for (int t = 0; t < 10; ++t) {
    CoyonedaWitness w = coyoneda_witness(testgen::random_left_module(A, rng));
    EXPECT_TRUE(w.isomorphisms);
    EXPECT_TRUE(w.natural);
  }
  CatPtr k = unit_category(Q);
  Bimodule V = left_module(k, "V", {interval(Q)}, {{Matrix::identity(Q, 2)}});
  EXPECT_TRUE(coyoneda_witness(V).isomorphisms);
}

TEST(EndCoend, YonedaAsEnd) {
  for (Field F : {Q, F2})
    for (const CatPtr& A : zoo(F))
      for (int b = 0; b < A->size(); ++b) {
        YonedaEndWitness w = yoneda_end_witness(representable_right(A, b));
        EXPECT_TRUE(w.isomorphisms) << A->name();
        EXPECT_TRUE(w.natural) << A->name();
        YonedaEndWitness wl = yoneda_end_witness(shift(representable_left(A, b), 1));
        EXPECT_TRUE(wl.isomorphisms) << A->name();
        EXPECT_TRUE(wl.natural) << A->name();
      }
  CatPtr k = unit_category(Q);
  Bimodule V = right_module(k, "V", {interval(Q)}, {{Matrix::identity(Q, 2)}});
  EXPECT_TRUE(yoneda_end_witness(V).isomorphisms);
}

TEST(EndCoend, HomPreservesEnds) {
  CatPtr A = fixtures::q2(Q);
  for (const Complex& B : {interval(Q), Complex::from_dims(Q, {{0, 1}, {2, 1}})}) {
    HomEndsReport r = hom_preserves_ends_check(diagonal(A), B);
    EXPECT_TRUE(r.end_iso);
    EXPECT_TRUE(r.coend_iso);
  }
  for (const CatPtr& C : zoo(Q)) {
    ASSERT_TRUE(validate_bimodule(hom_out_bimodule(interval(Q), diagonal(C))).ok);
    ValidationReport v = validate_bimodule(hom_in_bimodule(diagonal(C), interval(Q)));
    ASSERT_TRUE(v.ok) << v.axiom << " " << v.detail;
    HomEndsReport r = hom_preserves_ends_check(shift(diagonal(C), 1), Complex::from_dims(Q, {{0, 1}, {1, 1}}));
    EXPECT_TRUE(r.end_iso) << C->name();
    EXPECT_TRUE(r.coend_iso) << C->name();
  }
}
