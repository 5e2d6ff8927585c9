#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgc/dgmod.hpp"

namespace dgc {

/// 𝒪(X)(a) = Nat(X, h_a) for a right module X, with gθ = h_g∘θ.
Bimodule isbell_O(const Bimodule& X);
/// Spec(M)(b) = Nat(M, h^b) for a left module M, with θf = (-1)^{|f||θ|} h^f∘θ where
/// h^f(x) = (-1)^{|f||x|} x∘f.
Bimodule isbell_Spec(const Bimodule& M);

/// 𝒪(ξ)(θ) = (-1)^{|ξ||θ|} θ∘ξ : 𝒪(X) -> 𝒪(X') for ξ: X' -> X, and likewise Spec(μ).
BimoduleMorphism isbell_O_map(const BimoduleMorphism& xi);
BimoduleMorphism isbell_Spec_map(const BimoduleMorphism& mu);

/// Nat(M, 𝒪X) ≅ Nat(X, Spec M) through the pairing
/// ψ_b(x)_a(m) = (-1)^{|x||m|} φ_a(m)_b(x).
struct IsbellAdjunction {
  Bimodule M, X;
  NatComplex left;   // Nat(M, 𝒪X)
  NatComplex right;  // Nat(X, Spec M)
  Iso iso;           // forward: left -> right
};
IsbellAdjunction isbell_adjunction(const Bimodule& M, const Bimodule& X);
/// Naturality squares for closed degree-0 μ: M' -> M and ξ: X' -> X.
bool isbell_natural_in_M(const BimoduleMorphism& mu, const Bimodule& X);
bool isbell_natural_in_X(const Bimodule& M, const BimoduleMorphism& xi);

/// η: X -> Spec(𝒪X), x ↦ (θ ↦ (-1)^{|x||θ|} θ(x)).
BimoduleMorphism isbell_unit(const Bimodule& X);
/// ε: M -> 𝒪(Spec M), m ↦ (θ ↦ (-1)^{|θ||m|} θ(m)).
BimoduleMorphism isbell_counit(const Bimodule& M);

/// T over (A,B) (A on the left). L(T) over (B,A) with L(T)(A,B) = 𝒪(T_A)(B); B acts by
/// postcomposition, f ∈ A(A2,A) by θ ↦ θ∘(x ↦ fx).
Bimodule L_dual(const Bimodule& T);
/// S over (B,A). R(S) over (A,B) with R(S)(B,A) = Spec(S^A)(B); g ∈ A(A,A2) acts by
/// θ ↦ (-1)^{|g||θ|} θ∘(x ↦ (-1)^{|g||x|} xg).
Bimodule R_dual(const Bimodule& S);
/// T -> R(L(T)), equal at each A to the Isbell unit of T_A.
BimoduleMorphism LR_unit(const Bimodule& T);
/// S -> L(R(S)), equal at each A to the Isbell counit of S^A.
BimoduleMorphism LR_counit(const Bimodule& S);

enum class ReprKind { strict, homotopy, quasi };
std::string to_string(ReprKind k);

/// Objectwise data A ↦ F(A) with mediators h_{F(A)} -> T_A (or h^{F(A)} -> S^A).
struct ReprWitness {
  ReprKind kind = ReprKind::strict;
  bool right = true;
  std::vector<int> assignment;
  std::vector<BimoduleMorphism> mediators;
  /// strict: two-sided inverses; homotopy: inverses up to the homotopies below.
  std::vector<BimoduleMorphism> inverses;
  std::vector<BimoduleMorphism> homotopy_source;  // d h = v∘u - 1
  std::vector<BimoduleMorphism> homotopy_target;  // d h = u∘v - 1
};

struct ReprSearch {
  std::optional<ReprWitness> witness;
  bool exhaustive = false;  // absence of a witness is a proof
  std::string detail;
};

ReprSearch is_right_representable(const Bimodule& T, const Options& opt = default_options());
ReprSearch is_left_representable(const Bimodule& S, const Options& opt = default_options());
ReprSearch is_right_homotopy_representable(const Bimodule& T, const Options& opt = default_options());
ReprSearch is_left_homotopy_representable(const Bimodule& S, const Options& opt = default_options());

/// The module T_A (right) or S^A (left) a witness talks about.
Bimodule represented_piece(const Bimodule& T, bool right, int a);
/// Re-checks every mediator, inverse and homotopy of a witness.
ValidationReport verify_repr_witness(const Bimodule& T, const ReprWitness& w);

}  // namespace dgc
