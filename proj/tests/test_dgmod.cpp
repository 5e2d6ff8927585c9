#include <gtest/gtest.h>

#include "dgc/dgmod.hpp"
#include "dgc/fixtures.hpp"

using namespace dgc;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);

Vector unit_vec(Field F, int n, int i) {
  Vector v(n, F.zero());
  v[i] = F.one();
  return v;
}

std::vector<CatPtr> zoo(Field F) {
  return {fixtures::q2(F), fixtures::dual_numbers(F), fixtures::truncated_odd(F), fixtures::contractible_pair(F), fixtures::homotopy_pair(F)};
}

void expect_valid(const Bimodule& T) {
  ValidationReport r = validate_bimodule(T);
  EXPECT_TRUE(r.ok) << T.name() << ": " << r.axiom << " " << r.detail;
}

}  // namespace

TEST(DgMod, RepresentablesOnQ2) {
  CatPtr A = fixtures::q2(Q);
  Bimodule hb = representable_right(A, 1), ha = representable_right(A, 0);
  EXPECT_TRUE(hb.is_right_module());
  EXPECT_EQ(hb.comp(0, 0).dim(), 1);  // f
  EXPECT_EQ(hb.comp(1, 0).dim(), 1);  // 1_b
  EXPECT_EQ(ha.comp(0, 0).dim(), 1);
  EXPECT_EQ(ha.comp(1, 0).dim(), 0);
  // 1_b · f = f
  EXPECT_TRUE(hb.ract(0, 1, 0, 0).is_identity());
  expect_valid(hb);
  expect_valid(ha);
}

TEST(DgMod, ConstructionsValidate) {
  for (Field F : {Q, F2, Field::prime(3)})
    for (const CatPtr& A : zoo(F)) {
      for (int a = 0; a < A->size(); ++a) {
        expect_valid(representable_right(A, a));
        expect_valid(representable_left(A, a));
      }
      Bimodule D = diagonal(A);
      expect_valid(D);
      expect_valid(shift(D, 1));
      expect_valid(shift(D, -3));
      expect_valid(direct_sum({D, shift(D, 1)}));
      expect_valid(component(D, 0));
      expect_valid(co_component(D, 0));
      DgFunctor id = DgFunctor::identity(A);
      expect_valid(h_lower(id));
      expect_valid(h_upper(id));
      expect_valid(external_tensor(representable_left(A, 0), representable_right(A, 0)));
      expect_valid(tensor_bimodule(representable_right(A, 0), representable_left(A, 0)));
      BimoduleCone c = cone(BimoduleMorphism::identity(D));
      expect_valid(c.cone);
      EXPECT_TRUE(validate_morphism(c.inclusion).ok);
      EXPECT_TRUE(validate_morphism(c.projection).ok);
      EXPECT_TRUE(is_acyclic(c.cone));
    }
}

TEST(DgMod, HomBimodulesOfFunctors) {
  CatPtr A = fixtures::q2(Q);
  CatPtr B = fixtures::point(Q, "b");
  DgFunctor G = fixtures::inclusion(B, A);
  DgFunctor F = fixtures::collapse(A, B);
  Bimodule hG = h_lower(G);  // A(a, G*) : left pt, right A
  EXPECT_EQ(hG.na(), 1);
  EXPECT_EQ(hG.nb(), 2);
  expect_valid(hG);
  expect_valid(h_upper(F));
  expect_valid(hFG(F, DgFunctor::identity(B)));
}

TEST(DgMod, SignFlipBreaksChainMapCheck) {
  CatPtr A = fixtures::q2(Q);
  Bimodule hb = representable_right(A, 1);
  Bimodule C = cone(BimoduleMorphism::identity(hb)).cone;
  expect_valid(C);
  Bimodule::Data D = C.data();
  // right action of f on cone(id)(b) -> cone(id)(a); flip one diagonal entry
  Matrix& m = D.right[(0 * 2 + 1) * 1 + 0][0];
  ASSERT_EQ(m.rows(), 2);
  m(0, 0) = -m(0, 0);
  ValidationReport r = validate_bimodule(Bimodule(D));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.axiom, "right action is a chain map");
}

TEST(DgMod, LeftActionFaultsAreNamed) {
  CatPtr E = fixtures::truncated_odd(Q);
  Bimodule D = diagonal(E);
  Bimodule::Data bad = D.data();
  // e acting on the left of 1: 1 ↦ e; scale to 2e
  bad.left[0][1] = bad.left[0][1].scaled(Q.from_int(2));
  ValidationReport r = validate_bimodule(Bimodule(bad));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.axiom, "left associativity");
}

TEST(DgMod, NatOfRepresentables) {
  for (Field F : {Q, F2}) {
    CatPtr A = fixtures::q2(F);
    NatComplex ab = nat_complex(representable_right(A, 0), representable_right(A, 1));
    EXPECT_EQ(ab.cx().dims(), (std::map<int, int>{{0, 1}}));
    NatComplex ba = nat_complex(representable_right(A, 1), representable_right(A, 0));
    EXPECT_EQ(ba.cx().dim(), 0);
  }
  CatPtr E = fixtures::truncated_odd(Q);
  NatComplex ee = nat_complex(representable_right(E, 0), representable_right(E, 0));
  EXPECT_EQ(ee.cx().dim(0), 1);
  EXPECT_EQ(ee.cx().dim(1), 1);
  EXPECT_EQ(ee.cx().dim(2), 1);
}

TEST(DgMod, NatMembersAreMorphisms) {
  for (Field F : {Q, F2, Field::prime(5)})
    for (const CatPtr& A : zoo(F)) {
      Bimodule D = diagonal(A);
      Bimodule T = direct_sum({D, shift(D, 1)});
      NatComplex N = nat_complex(D, T);
      NatComplex brute = nat_complex(D, T, false);
      EXPECT_EQ(N.cx().dims(), brute.cx().dims()) << A->name();
      for (int j = 0; j < N.cx().dim(); ++j) {
        BimoduleMorphism phi = N.morphism(unit_vec(F, N.cx().dim(), j));
        ValidationReport r = validate_morphism(phi);
        EXPECT_TRUE(r.ok) << A->name() << ": " << r.axiom << " " << r.detail;
        EXPECT_TRUE(validate_morphism(differential_of(phi)).ok);
        EXPECT_EQ(N.coords(phi), unit_vec(F, N.cx().dim(), j));
      }
    }
}

TEST(DgMod, YonedaRoundTrips) {
  for (Field F : {Q, F2, Field::prime(3)})
    for (const CatPtr& A : zoo(F))
      for (int a = 0; a < A->size(); ++a) {
        Bimodule D = diagonal(A);
        for (int x = 0; x < A->size(); ++x) {
          YonedaIso y = yoneda_iso(A, a, component(D, x));
          EXPECT_TRUE(y.iso.verified) << A->name();
          YonedaIso yl = yoneda_iso_left(A, a, co_component(D, x));
          EXPECT_TRUE(yl.iso.verified) << A->name();
          EXPECT_TRUE(yoneda_iso(A, a, component(shift(D, 1), x)).iso.verified);
          EXPECT_TRUE(yoneda_iso_left(A, a, co_component(shift(D, 1), x)).iso.verified);
        }
      }
}

TEST(DgMod, FunctorNotationRoundTrip) {
  for (const CatPtr& A : zoo(Q)) {
    Bimodule D = shift(diagonal(A), 1);
    Bimodule back = from_right_functor_notation(D, right_functor_notation(D));
    EXPECT_EQ(back.data().right, D.data().right);
  }
  // on odd elements the two notations differ by the Koszul sign
  CatPtr E = fixtures::truncated_odd(Q);
  Bimodule D = diagonal(E);
  auto fn = right_functor_notation(D);
  EXPECT_NE(fn, D.data().right);
}

TEST(DgMod, MorphismAlgebra) {
  CatPtr A = fixtures::homotopy_pair(Q);
  Bimodule D = diagonal(A);
  BimoduleMorphism id = BimoduleMorphism::identity(D);
  EXPECT_TRUE(is_iso(id));
  EXPECT_TRUE(is_qis(id));
  EXPECT_TRUE(compose(id, id) == id);
  BimoduleMorphism two = id + id;
  EXPECT_TRUE(two == scale(id, Q.from_int(2)));
  EXPECT_TRUE((two - id) == id);
  EXPECT_TRUE(is_closed(id));
  EXPECT_FALSE(is_acyclic(D));
  // a left-rule sign fault: -id on one component
  BimoduleMorphism bad = id;
  bad.comps[0] = -bad.comps[0];
  EXPECT_FALSE(validate_morphism(bad).ok);
}
