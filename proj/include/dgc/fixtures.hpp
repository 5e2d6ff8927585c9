#pragma once

#include "dgc/dgcat.hpp"

namespace dgc::fixtures {

/// a --f--> b, everything in degree 0.
CatPtr q2(Field F);
/// One object o with hom = k·1 ⊕ k·ε, |ε| = -1, ε² = 0, d = 0.
CatPtr dual_numbers(Field F);
/// One object o with basis 1, e, e² where |e| = 1 and e³ = 0.
CatPtr truncated_odd(Field F);
/// One object o with 1, ε (degree -1), δ (degree 0), dε = δ, all products zero.
CatPtr contractible_pair(Field F);
/// Objects p, q with u: p -> q, v: q -> p, vu = 1_p, uv = 1_q - t, t = ds:
/// p and q are isomorphic in H^0 but not in Z^0.
CatPtr homotopy_pair(Field F);
/// Full dg-subcategory of complexes on the given objects: hom(i,j) = Hom(V_i, V_j),
/// basis elements are matrix units labelled "E<i,j>(y,x)".
CatPtr complexes_category(Field F, const std::vector<Complex>& objects, const std::string& name = "Ch");
/// The one-object category on b.
CatPtr point(Field F, const std::string& object);

/// F: Q2 -> {b} collapsing everything onto 1_b.
DgFunctor collapse(const CatPtr& Q2, const CatPtr& B);
/// Inclusion of the full subcategory on one object of Q2.
DgFunctor inclusion(const CatPtr& sub, const CatPtr& Q2);
/// φ_{x,b}: hom(Fx, b) -> hom(x, Gb) for collapse ⊣ inclusion of b.
std::vector<Matrix> collapse_adjunction(const DgFunctor& F, const DgFunctor& G);

}  // namespace dgc::fixtures
