#pragma once

#include <map>
#include <string>
#include <vector>

#include "dgc/dgmod.hpp"

namespace dgc {

/// End of an A-A-bimodule as a subcomplex of the product ⊕_A F(A,A), cut out by
/// f φ_A = (-1)^{|f||φ|} φ_{A'} f for f: A -> A'.
struct EndResult {
  Bimodule F;
  DirectSum product;  // summand A is F(A,A)
  Complex total;
  Matrix embedding;   // product.dim x total.dim
  Matrix coords;      // total.dim x product.dim, coords * embedding = 1
  std::vector<GradedMap> projections;  // ε_A: total -> F(A,A)
  bool minimal_constraints = true;

  /// ε_A applied to a total vector.
  Vector component(const Vector& v, int a) const;
};
EndResult end_bimodule(const Bimodule& F, bool use_generating_set = true);

/// Coend as the quotient of ⊕_A F(A,A) by fx - (-1)^{|f||x|} xf, for f: A -> A' and x ∈ F(A',A).
struct CoendResult {
  Bimodule F;
  DirectSum sum;
  Complex total;
  Matrix proj;     // total.dim x sum.dim
  Matrix section;  // sum.dim x total.dim, representatives at rref pivots
  std::vector<GradedMap> injections;  // η_A: F(A,A) -> total
};
CoendResult coend_bimodule(const Bimodule& F, bool use_generating_set = true);

/// Map between ends induced by a family of component maps F(A,A) -> G(A,A) of the
/// given degree; throws if the image leaves the target end.
GradedMap induced_end_map(const EndResult& src, const EndResult& tgt, const std::vector<Matrix>& diag, int degree);
GradedMap induced_coend_map(const CoendResult& src, const CoendResult& tgt, const std::vector<Matrix>& diag, int degree);
/// ∫φ and ∫^A φ for a bimodule morphism of any degree.
GradedMap end_map(const BimoduleMorphism& phi, const EndResult& src, const EndResult& tgt);
GradedMap coend_map(const BimoduleMorphism& phi, const CoendResult& src, const CoendResult& tgt);

/// Wedge check for an arbitrary family g_A: Z -> F(A,A); returns the unique
/// factoring map Z -> total or nothing when the family is not a wedge.
std::optional<GradedMap> factor_through_end(const EndResult& E, const Complex& Z, const std::vector<Matrix>& family, int degree);
/// Cowedge h_A: F(A,A) -> Z; returns the unique map total -> Z.
std::optional<GradedMap> factor_through_coend(const CoendResult& C, const Complex& Z, const std::vector<Matrix>& family, int degree);

/// Hom-bimodules. For right A-modules X, Y: H(b,a) = Hom(X(a), Y(b)) with
/// (gφ)(x) = (-1)^{|g|(|φ|+|x|)} φ(xg) and (φf)(x) = (-1)^{|x||f|} φ(x)f; its end is Nat(X,Y).
Bimodule hom_bimodule_right(const Bimodule& X, const Bimodule& Y);
/// For left A-modules X, Y: H(b,a) = Hom(X(b), Y(a)) with gφ = g∘φ and φf = φ∘f; end is Nat(X,Y).
Bimodule hom_bimodule_left(const Bimodule& X, const Bimodule& Y);
/// Hom(B, F(-,-)) for a complex B: gφ = g∘φ, (φf)(z) = (-1)^{|z||f|} φ(z)f.
Bimodule hom_out_bimodule(const Complex& B, const Bimodule& F);
/// Hom(F(-,-), B) with variance swapped, H(b,a) = Hom(F(a,b), B); its end is Hom(∫^A F, B).
Bimodule hom_in_bimodule(const Bimodule& F, const Complex& B);

/// F is an A-A-bimodule with left category A⊗C (objects a-major). For each c the
/// end over A of F(-,(-,c)); basis morphisms h of C act through 1⊗h.
struct EndWithParameters {
  CatPtr A, C;
  std::vector<EndResult> ends;                // per object of C
  std::vector<std::vector<GradedMap>> maps;   // maps[c*|C|+c2][h]
  bool functorial = false;                    // identities and composites checked
};
EndWithParameters end_with_parameters(const Bimodule& F, const CatPtr& A, const CatPtr& C);
/// The slice F(-,(-,c)) as an A-A-bimodule.
Bimodule parameter_slice(const Bimodule& F, const CatPtr& A, const CatPtr& C, int c);

/// F over (A⊗B, A⊗B). The three ends ∫_{(A,B)}, ∫_A∫_B and ∫_B∫_A all sit in the same
/// product ⊕_{(a,b)} F((a,b),(a,b)); witnesses come from the universal property.
struct FubiniWitness {
  EndResult joint;
  EndResult outer_a, outer_b;  // ends of the inner-end bimodules
  Matrix emb[3];               // embeddings of the three totals into the joint product
  GradedMap w[3][3];           // w[i][j]: end j -> end i
  bool isomorphic = false;     // all composites identities and all embeddings commute
  std::string detail;
};
FubiniWitness fubini_witness(const Bimodule& F, const CatPtr& A, const CatPtr& B);
/// Inner end over B as an A-A-bimodule G(a',a) = ∫_B F((a',b),(a,b)) (inner_is_b), or over A.
struct InnerEnd {
  Bimodule G;
  std::vector<EndResult> pieces;  // per (outer', outer) pair, outer'*n + outer
};
InnerEnd inner_end(const Bimodule& F, const CatPtr& A, const CatPtr& B, bool inner_is_b);

/// Co-Yoneda at X: for a left module M, ∫^A A(A,X) ⊗ M(A) -> M(X), f⊗x ↦ fx; for a
/// right module N, ∫^A N(A) ⊗ A(X,A) -> N(X), x⊗f ↦ xf.
struct CoyonedaWitness {
  std::vector<CoendResult> coends;  // per X
  std::vector<GradedMap> maps;      // coend_X -> M(X)
  bool isomorphisms = false;
  bool natural = false;             // commutes with the actions of basis morphisms
};
CoyonedaWitness coyoneda_witness(const Bimodule& M);

/// Yoneda as an end: M(X) -> ∫_A Hom(A(X,A), M(A)), ε(x)(f) = (-1)^{|x||f|} fx (left
/// modules), or N(X) -> ∫_A Hom(A(A,X), N(A)), x ↦ (f ↦ xf) (right modules).
struct YonedaEndWitness {
  std::vector<EndResult> ends;   // per X
  std::vector<GradedMap> maps;   // M(X) -> end
  bool isomorphisms = false;
  bool natural = false;
};
YonedaEndWitness yoneda_end_witness(const Bimodule& M);

/// Hom(B, ∫F) ≅ ∫Hom(B, F) and Hom(∫^A F, B) ≅ ∫_A Hom(F(A,A), B), each through the
/// canonical comparison map.
struct HomEndsReport {
  bool end_iso = false;
  bool coend_iso = false;
  Matrix end_comparison, coend_comparison;
};
HomEndsReport hom_preserves_ends_check(const Bimodule& F, const Complex& B);

/// Full-constraint references for the optimized computations above: every basis
/// morphism (identities included), summands concatenated in object order.
namespace oracle {
std::map<int, int> end_dims(const Bimodule& F);
std::map<int, int> coend_dims(const Bimodule& F);
/// Kernel basis of the full wedge system in concatenated coordinates.
Matrix end_kernel(const Bimodule& F);
/// Columns span the full relation space of the coend, concatenated coordinates.
Matrix coend_relations(const Bimodule& F);
struct Comparison {
  std::map<int, int> fast, reference;
  bool dims = false;
  bool maps = false;  // same subspace (end) or same relation space (coend) after reindexing
  bool ok() const { return dims && maps; }
};
Comparison compare_end(const EndResult& E);
Comparison compare_coend(const CoendResult& C);
}  // namespace oracle

}  // namespace dgc
