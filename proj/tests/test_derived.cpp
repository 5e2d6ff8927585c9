#include <gtest/gtest.h>

#include "dgc/derived.hpp"
#include "dgc/fixtures.hpp"
#include "support/generators.hpp"

using namespace dgc;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);

/// Simple right module: k at one object, zero elsewhere, non-identity basis morphisms act by zero.
Bimodule simple(const CatPtr& A, int at) {
  const Field F = A->field();
  const int n = A->size();
  std::vector<Complex> comps;
  for (int x = 0; x < n; ++x) comps.push_back(x == at ? Complex::from_dims(F, {{0, 1}}) : Complex::from_dims(F, {}));
  std::vector<std::vector<Matrix>> right(static_cast<size_t>(n) * n);
  for (int b2 = 0; b2 < n; ++b2)
    for (int b = 0; b < n; ++b)
      for (int f = 0; f < A->hom(b2, b).dim(); ++f)
        right[b2 * n + b].push_back(b2 == b && !A->id(b)[f].is_zero() ? Matrix::identity(F, comps[b].dim()) : Matrix(F, comps[b2].dim(), comps[b].dim()));
  return right_module(A, "S_" + A->object(at), comps, right);
}

/// h_a ⊕ cone(1_{h_b}): quasi-isomorphic to a representable, not homotopy-free of the cone.
Bimodule cone_deformed(const CatPtr& Q2) {
  Bimodule hb = representable_right(Q2, 1);
  return direct_sum({representable_right(Q2, 0), cone(BimoduleMorphism::identity(hb)).cone});
}

bool same_data(const Bimodule& x, const Bimodule& y) {
  return x.comps() == y.comps() && x.data().left == y.data().left && x.data().right == y.data().right;
}

}  // namespace

TEST(Bar, NilpotencyIndices) {
  EXPECT_EQ(reduced_nilpotency_index(*fixtures::q2(Q)), 2);
  EXPECT_EQ(reduced_nilpotency_index(*fixtures::point(Q, "b")), 1);
  EXPECT_EQ(reduced_nilpotency_index(*fixtures::dual_numbers(Q)), 2);
  EXPECT_EQ(reduced_nilpotency_index(*fixtures::truncated_odd(Q)), 3);
  EXPECT_FALSE(reduced_nilpotency_index(*fixtures::homotopy_pair(Q)).has_value());
}

TEST(Bar, DiagonalOfQ2IsCertified) {
  for (Field F : {Q, F2}) {
    CatPtr Q2 = fixtures::q2(F);
    ResolutionResult r = bar_resolution(diagonal(Q2));
    EXPECT_EQ(r.depth, 2);
    EXPECT_EQ(r.certificate.kind, "bar");
    EXPECT_TRUE(r.certificate.terminated);
    EXPECT_TRUE(r.certificate.filtered);
    EXPECT_TRUE(r.qis_verified);
    EXPECT_TRUE(r.certified) << r.certificate.reason;
    EXPECT_EQ(r.certificate.generators.at(0), 3);  // one generator per basis morphism
    EXPECT_EQ(r.certificate.generators.at(1), 2);  // f on either side of t
    EXPECT_EQ(r.certificate.generators.at(2), 0);
    ValidationReport v = validate_bimodule(r.resolved);
    EXPECT_TRUE(v.ok) << v.axiom << " " << v.detail;
    EXPECT_TRUE(validate_morphism(r.qis).ok);
    EXPECT_TRUE(is_closed(r.qis));
    EXPECT_TRUE(is_qis(r.qis));
  }
}

TEST(Bar, DualNumbersNeverTerminate) {
  CatPtr D = fixtures::dual_numbers(Q);
  ResolutionResult r = bar_resolution(diagonal(D));
  EXPECT_FALSE(r.certificate.terminated);
  EXPECT_FALSE(r.certified);
  ASSERT_TRUE(r.certificate.longest_beyond.has_value());
  EXPECT_EQ(*r.certificate.longest_beyond, r.depth + 1);
  EXPECT_TRUE(validate_bimodule(r.resolved).ok);
  EXPECT_TRUE(is_closed(r.qis));
  EXPECT_THROW(require_certified(r, default_options(), "test"), UncertifiedResolution);
  Options forced;
  forced.force_uncertified = true;
  EXPECT_NO_THROW(require_certified(r, forced, "test"));
}

TEST(Bar, ShortcutsReturnTheInput) {
  CatPtr Q2 = fixtures::q2(Q);
  Bimodule h = representable_right(Q2, 1);
  ResolutionResult r = bar_resolution(h);
  EXPECT_EQ(r.certificate.kind, "identity");
  EXPECT_TRUE(r.certified);
  EXPECT_TRUE(same_data(r.resolved, h));
  ResolutionResult s = resolve(h_lower(fixtures::collapse(Q2, fixtures::point(Q, "b"))), true);
  EXPECT_EQ(s.certificate.kind, "identity");
  EXPECT_TRUE(s.certified);
}

TEST(Bar, RandomModulesOverQ2ResolveAndValidate) {
  testgen::Rng rng(31);
  for (Field F : {Q, F2}) {
    CatPtr Q2 = fixtures::q2(F);
    for (int trial = 0; trial < 6; ++trial) {
      Bimodule M = trial % 2 ? testgen::random_right_module(Q2, rng, 6) : testgen::random_left_module(Q2, rng, 6);
      ResolutionResult r = bar_resolution(M);
      ValidationReport v = validate_bimodule(r.resolved);
      ASSERT_TRUE(v.ok) << v.axiom << " " << v.detail;
      EXPECT_TRUE(validate_morphism(r.qis).ok);
      EXPECT_TRUE(is_closed(r.qis));
      EXPECT_TRUE(r.certified) << r.certificate.reason;
    }
    for (int trial = 0; trial < 3; ++trial) {
      Bimodule T = testgen::random_bimodule(Q2, rng, 6);
      ResolutionResult r = bar_resolution(T);
      ASSERT_TRUE(validate_bimodule(r.resolved).ok);
      EXPECT_TRUE(is_closed(r.qis));
      EXPECT_TRUE(r.certified) << r.certificate.reason;
    }
  }
}

TEST(DerivedHom, YonedaOnRepresentables) {
  testgen::Rng rng(5);
  CatPtr Q2 = fixtures::q2(Q);
  for (int trial = 0; trial < 4; ++trial) {
    Bimodule M = testgen::random_right_module(Q2, rng, 6);
    for (int a = 0; a < 2; ++a) {
      DerivedHom d = derived_hom(representable_right(Q2, a), M);
      std::map<int, int> expect;
      for (auto [deg, k] : cohomology(M.comp(a, 0)).H.dims())
        if (k) expect[deg] = k;
      EXPECT_EQ(d.dims, expect);
    }
  }
}

TEST(DerivedHom, ExtBetweenSimplesOfQ2) {
  for (Field F : {Q, F2}) {
    CatPtr Q2 = fixtures::q2(F);
    Bimodule Sa = simple(Q2, 0), Sb = simple(Q2, 1);
    ASSERT_TRUE(validate_bimodule(Sa).ok);
    ASSERT_TRUE(validate_bimodule(Sb).ok);
    EXPECT_EQ(cohomology(nat_complex(Sb, Sa).cx()).H.dim(), 0);
    EXPECT_EQ(derived_hom(Sb, Sa).dims, (std::map<int, int>{{1, 1}}));
    EXPECT_EQ(derived_hom(Sa, Sb).dims, (std::map<int, int>{}));
    EXPECT_EQ(derived_hom(Sb, Sb).dims, (std::map<int, int>{{0, 1}}));
  }
}

TEST(DerivedHom, UncertifiedOverDualNumbers) {
  CatPtr D = fixtures::dual_numbers(Q);
  Bimodule k = simple(D, 0);
  EXPECT_THROW(derived_hom(k, k), UncertifiedResolution);
}

TEST(Diamond, UnitorsAndAssociatorAreIsomorphisms) {
  testgen::Rng rng(77);
  for (int trial = 0; trial < 4; ++trial) {
    CatPtr A = testgen::random_category(F2, rng, 2);
    Bimodule F = testgen::random_bimodule(A, rng, 5), G = testgen::random_bimodule(A, rng, 5), H = testgen::random_bimodule(A, rng, 5);
    Bimodule h = diagonal(A);
    Diamond Fh = diamond(F, h), hF = diamond(h, F);
    BimoduleMorphism rho = right_unitor(Fh), lambda = left_unitor(hF);
    EXPECT_TRUE(validate_morphism(rho).ok) << A->name();
    EXPECT_TRUE(validate_morphism(lambda).ok) << A->name();
    EXPECT_TRUE(is_iso(rho)) << A->name();
    EXPECT_TRUE(is_iso(lambda)) << A->name();
    Diamond GF = diamond(G, F), HG = diamond(H, G);
    Diamond lhs = diamond(H, GF.module), rhs = diamond(HG.module, F);
    BimoduleMorphism alpha = associator(lhs, GF, rhs, HG);
    EXPECT_TRUE(validate_morphism(alpha).ok) << A->name();
    EXPECT_TRUE(is_iso(alpha)) << A->name();
  }
}

TEST(Diamond, ParallelMatchesSerial) {
  testgen::Rng rng(8);
  CatPtr A = fixtures::q2(Q);
  Bimodule F = testgen::random_bimodule(A, rng, 8), G = testgen::random_bimodule(A, rng, 8);
  Options par;
  par.parallel = true;
  EXPECT_TRUE(same_data(diamond(G, F).module, diamond(G, F, par).module));
}

TEST(Diamond, FunctorBimodulesCompose) {
  CatPtr Q2 = fixtures::q2(Q), B = fixtures::point(Q, "b");
  DgFunctor P = fixtures::collapse(Q2, B), I = fixtures::inclusion(B, Q2);
  for (auto [G, F] : {std::pair{P, I}, std::pair{I, P}}) {
    Bimodule comp = compose(h_lower(G), h_lower(F));
    Bimodule ref = h_lower(compose_functors(G, F));
    ASSERT_TRUE(validate_bimodule(comp).ok);
    HIso iso = find_h_iso(comp, ref);
    ASSERT_TRUE(iso.map.has_value());
    EXPECT_TRUE(is_iso(*iso.map));
  }
}

TEST(Quasiadj, DiagramsCommuteExactly) {
  testgen::Rng rng(3);
  CatPtr Q2 = fixtures::q2(Q), B = fixtures::point(Q, "b");
  std::vector<Bimodule> Ts = {h_lower(fixtures::collapse(Q2, B)), h_lower(fixtures::inclusion(B, Q2)), diagonal(Q2),
                              cone_deformed(Q2)};
  for (int i = 0; i < 2; ++i) Ts.push_back(testgen::random_bimodule(fixtures::q2(F2), rng, 5));
  for (const Bimodule& T : Ts) {
    DiagramReport r = verify_quasiadj_diagrams(T, false);
    EXPECT_TRUE(r.ok) << T.name() << ": " << r.first_failure;
  }
}

TEST(Quasiadj, NIsInvertibleForFunctors) {
  CatPtr Q2 = fixtures::q2(Q), B = fixtures::point(Q, "b");
  for (const DgFunctor& F : {fixtures::collapse(Q2, B), fixtures::inclusion(B, Q2), DgFunctor::identity(Q2)}) {
    StructuralMaps S = structural_maps(h_lower(F));
    EXPECT_TRUE(is_iso(S.n)) << F.name();
    EXPECT_TRUE(validate_morphism(S.eps).ok);
    EXPECT_TRUE(is_closed(S.t));
  }
  // the simple module at b is not representable and n is not invertible
  StructuralMaps S = structural_maps(simple(Q2, 1));
  EXPECT_FALSE(is_iso(S.n));
}

TEST(Adjunction, StrictForFunctorBimodules) {
  CatPtr Q2 = fixtures::q2(Q), B = fixtures::point(Q, "b");
  for (const DgFunctor& F : {fixtures::collapse(Q2, B), fixtures::inclusion(B, Q2)}) {
    AdjunctionWitness w = build_adjunction(h_lower(F));
    EXPECT_TRUE(w.exact);
    EXPECT_TRUE(w.triangles_exact) << F.name();
    EXPECT_TRUE(w.ok());
    EXPECT_TRUE(validate_morphism(w.unit).ok);
    EXPECT_TRUE(is_closed(w.unit));
  }
}

TEST(Adjunction, DerivedForConeDeformedModule) {
  CatPtr Q2 = fixtures::q2(Q);
  Bimodule T = cone_deformed(Q2);
  ASSERT_TRUE(is_right_quasi_representable(T).witness.has_value());
  AdjunctionWitness w = build_adjunction(T);
  EXPECT_FALSE(w.exact);
  ASSERT_TRUE(w.resolution.has_value());
  EXPECT_TRUE(w.resolution->certified);
  EXPECT_TRUE(is_closed(w.unit));
  EXPECT_TRUE(w.triangles_h);
  EXPECT_TRUE(w.ok());
}

TEST(Adjunction, RejectsNonQuasiRepresentable) {
  CatPtr Q2 = fixtures::q2(Q);
  Bimodule T = direct_sum({representable_right(Q2, 0), representable_right(Q2, 0)});
  ReprSearch s = is_right_quasi_representable(T);
  EXPECT_FALSE(s.witness.has_value());
  EXPECT_THROW(build_adjunction(T), std::invalid_argument);
}

TEST(Adjunction, CollapseIsLeftAdjointToInclusion) {
  for (Field F : {Q, F2}) {
    CatPtr Q2 = fixtures::q2(F), B = fixtures::point(F, "b");
    DgFunctor P = fixtures::collapse(Q2, B), I = fixtures::inclusion(B, Q2);
    AdjointDecision d = has_left_adjoint(h_lower(I));
    ASSERT_TRUE(d.exists) << d.search.detail;
    ASSERT_TRUE(d.adjunction.has_value());
    EXPECT_TRUE(d.adjunction->ok());
    HIso iso = find_h_iso(d.adjunction->left, h_lower(P));
    EXPECT_TRUE(iso.map.has_value());
  }
}

TEST(Adjunction, InclusionOfSourceHasNoLeftAdjoint) {
  CatPtr Q2 = fixtures::q2(F2), A = fixtures::point(F2, "a");
  AdjointDecision d = has_left_adjoint(h_lower(fixtures::inclusion(A, Q2)));
  EXPECT_FALSE(d.exists);
  EXPECT_TRUE(d.exhaustive);
  EXPECT_FALSE(d.adjunction.has_value());
}

TEST(QuasiFunctors, CompositeIsQuasiRepresentable) {
  CatPtr Q2 = fixtures::q2(Q), B = fixtures::point(Q, "b");
  DgFunctor P = fixtures::collapse(Q2, B), I = fixtures::inclusion(B, Q2);
  QuasiComposite c = quasi_functor_compose(h_lower(P), h_lower(I));
  EXPECT_TRUE(c.verified);
  EXPECT_EQ(c.witness.assignment, compose_functors(P, I).object_map());
  QuasiComposite d = quasi_functor_compose(diagonal(Q2), cone_deformed(Q2));
  EXPECT_TRUE(d.verified);
  EXPECT_EQ(d.witness.assignment, std::vector<int>{0});
}

TEST(DerivedDuality, UnitIsAQuasiIsomorphismOnPerfectModules) {
  CatPtr Q2 = fixtures::q2(Q), B = fixtures::point(Q, "b");
  for (const Bimodule& T : {h_lower(fixtures::collapse(Q2, B)), cone_deformed(Q2), simple(Q2, 1)}) {
    DerivedDualityUnit u = derived_duality_unit(T);
    EXPECT_TRUE(validate_morphism(u.unit).ok) << T.name();
    EXPECT_TRUE(is_closed(u.unit)) << T.name();
    EXPECT_TRUE(u.iso) << T.name();
  }
  // the underived unit fails on the simple module
  EXPECT_FALSE(is_iso(LR_unit(simple(Q2, 1))));
}
