#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgc/duality.hpp"
#include "dgc/endcoend.hpp"

namespace dgc {

/// Thrown by derived operations handed an uncertified resolution without
/// Options::force_uncertified.
struct UncertifiedResolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_acyclic_module(const Bimodule& M);
bool is_qis_morphism(const BimoduleMorphism& phi);

/// Least n such that every composite of n non-identity basis morphisms vanishes,
/// searched up to `bound`.
std::optional<int> reduced_nilpotency_index(const DgCategory& A, int bound = 8);

/// Word-length filtration of a bar resolution. Layer n is freely generated by
/// the interior words (g_1..g_p | t | f_1..f_q) with p+q = n.
struct BarCertificate {
  std::string kind;                      // "bar" or "identity"
  std::string reason;
  std::vector<std::vector<int>> length;  // per component, word length of each basis element
  std::map<int, int> generators;         // word length -> interior words
  bool filtered = true;                  // d and both actions never raise the word length
  bool terminated = false;               // no composable words beyond the depth
  std::optional<int> longest_beyond;     // a word length > depth that exists, if any
};

struct ResolutionResult {
  Bimodule resolved;
  BimoduleMorphism qis;  // resolved -> original
  BarCertificate certificate;
  bool certified = false;
  bool qis_verified = false;
  std::vector<int> verified_degrees;  // degrees where every component is a cohomology iso
  int depth = 0;
};

/// Normalized two-sided bar resolution ⊕ A ⊗ Ā^p ⊗ T ⊗ B̄^q ⊗ B truncated at p+q <= depth,
/// with augmentation g⊗t⊗f ↦ (-1)^{|t|} gtf. One-sided modules are the case where one
/// category is the unit. Representable modules and modules over unit categories are
/// returned unchanged. Depth comes from opt.depth, else the nilpotency index, else
/// opt.depth_fallback.
ResolutionResult bar_resolution(const Bimodule& M, const Options& opt = default_options());
/// The identity resolution, certified when every T_A (right) or S^B (left) is
/// isomorphic to a representable: that is all the flatness the derived operations
/// below use.
ResolutionResult representable_resolution(const Bimodule& T, bool right, const Options& opt = default_options());
/// representable_resolution when it certifies, bar_resolution otherwise.
ResolutionResult resolve(const Bimodule& T, bool right, const Options& opt = default_options());
/// Throws UncertifiedResolution unless r is certified or the options force it.
void require_certified(const ResolutionResult& r, const Options& opt, const std::string& what);

struct DerivedHom {
  ResolutionResult resolution;
  std::map<int, int> dims;  // i -> dim H^i Nat(Q(M), N)
};
DerivedHom derived_hom(const Bimodule& M, const Bimodule& N, const Options& opt = default_options());

/// G ⋄ F for F over (A,B), G over (B,C): (G⋄F)(c,a) = ∫^B F(B,a) ⊗ G(c,B), with
/// g(x⊗y) = gx⊗y and (x⊗y)f = x⊗yf.
struct Diamond {
  Bimodule G, F, module;
  std::vector<CoendResult> coends;     // per component, module.idx(c,a)
  std::vector<TensorComplex> tensors;  // F(β,a) ⊗ G(c,β) at (module.idx(c,a))*|B| + β

  const TensorComplex& tensor_at(int c, int a, int beta) const;
  /// Class of x⊗y (basis indices) in (G⋄F)(c,a).
  Vector class_of(int c, int a, int beta, int x, int y) const;
};
Diamond diamond(const Bimodule& G, const Bimodule& F, const Options& opt = default_options());
Bimodule compose(const Bimodule& G, const Bimodule& F);

/// ψ⋄φ: x⊗y ↦ (-1)^{|ψ||x|} φx⊗ψy, from src = G⋄F to tgt = G'⋄F'.
BimoduleMorphism diamond_map(const Diamond& src, const Diamond& tgt, const BimoduleMorphism& psi, const BimoduleMorphism& phi);
/// F ⋄ h_A -> F, f⊗x ↦ fx (D = diamond(F, diagonal)).
BimoduleMorphism right_unitor(const Diamond& D);
/// h_B ⋄ F -> F, x⊗f ↦ xf (D = diamond(diagonal, F)).
BimoduleMorphism left_unitor(const Diamond& D);
/// H⋄(G⋄F) -> (H⋄G)⋄F, (x⊗y)⊗z ↦ x⊗(y⊗z). lhs = diamond(H, gf.module), rhs = diamond(hg.module, F).
BimoduleMorphism associator(const Diamond& lhs, const Diamond& gf, const Diamond& rhs, const Diamond& hg);

/// Induced cohomology maps agree componentwise.
bool h_equal(const BimoduleMorphism& x, const BimoduleMorphism& y);
/// A closed degree-0 quasi-isomorphism X -> Y, or failing that Y -> X.
struct HIso {
  std::optional<BimoduleMorphism> map;
  bool forward = true;
  bool exhaustive = false;
};
HIso find_h_iso(const Bimodule& X, const Bimodule& Y, const Options& opt = default_options());

/// L(φ): L(T) -> L(T') for a closed degree-0 φ: T' -> T, θ ↦ θ∘φ_A.
BimoduleMorphism L_dual_map(const BimoduleMorphism& phi);
/// R(μ): R(S) -> R(S') for a closed degree-0 μ: S' -> S.
BimoduleMorphism R_dual_map(const BimoduleMorphism& mu);

/// For T over (A,B) with L = L(T) and E(i,k) = Nat(T_i, T_k):
///   t:  h_A -> E,        f ↦ (x ↦ fx)
///   n:  L⋄T -> E,        x⊗φ ↦ (z ↦ x·φ(z))
///   e:  T⋄E -> T,        φ⊗x ↦ φ(x)
///   e′: E⋄L -> L,        θ⊗φ ↦ θ∘φ
///   ε:  T⋄L -> h_B,      φ⊗x ↦ φ(x)
struct StructuralMaps {
  Bimodule T, L, E, hA, hB;
  std::vector<NatComplex> l_nats;  // Nat(T_i, h_j) at i*|B|+j
  std::vector<NatComplex> e_nats;  // Nat(T_i, T_k) at i*|A|+k
  Diamond LT, TE, EL, TL;
  BimoduleMorphism t, n, e, e_prime, eps;
};
StructuralMaps structural_maps(const Bimodule& T, const Options& opt = default_options());

struct DiagramReport {
  bool ok = false;
  bool h_level = false;
  bool top_T = false, cell_T = false;  // T -> T⋄h_A -> T⋄E -> T, and e(T⋄n) = λ(ε⋄T)α
  bool top_L = false, cell_L = false;  // L -> h_A⋄L -> E⋄L -> L, and e′(n⋄L) = ρ(L⋄ε)α⁻¹
  std::string first_failure;
  std::optional<ResolutionResult> resolution;
};
/// Exact matrix equalities, or H-level ones when h_level is set.
DiagramReport verify_quasiadj_diagrams(const StructuralMaps& S, bool h_level);
/// derived: replace T by its resolution and compare in H.
DiagramReport verify_quasiadj_diagrams(const Bimodule& T, bool derived, const Options& opt = default_options());

ReprSearch is_right_quasi_representable(const Bimodule& T, const Options& opt = default_options());
ReprSearch is_left_quasi_representable(const Bimodule& S, const Options& opt = default_options());

/// F ⊣ G with F over (A,B), G over (B,A). The unit is defined on R, which is h_A
/// (exact flavor) or its bar resolution with augmentation q (derived flavor).
struct AdjunctionWitness {
  Bimodule left, right;
  ResolutionResult unit_source;
  BimoduleMorphism unit;    // R -> G⋄F
  BimoduleMorphism counit;  // F⋄G -> h_B
  BimoduleMorphism triangle_left, reference_left;    // F⋄R -> F: λ(ε⋄F)α(F⋄η) and ρ(F⋄q)
  BimoduleMorphism triangle_right, reference_right;  // R⋄G -> G: ρ(G⋄ε)α⁻¹(η⋄G) and λ(q⋄G)
  bool exact = false;
  bool triangles_exact = false;
  bool triangles_h = false;
  std::optional<ResolutionResult> resolution;  // of the input, when it was replaced
  std::optional<BimoduleMorphism> comparison;  // requested adjoint -> right (co_build)
  std::string detail;
  bool ok() const { return exact ? triangles_exact : triangles_h; }
};
/// Checks the triangle identities of (F, G, η, ε).
void check_triangles(AdjunctionWitness& w, const Options& opt = default_options());
/// T ⊣ 𝕃L(T) with η = n⁻¹t. Throws std::invalid_argument without a quasi-representability witness.
AdjunctionWitness build_adjunction(const Bimodule& T, const Options& opt = default_options());
/// ℝR(S) ⊣ S, through build_adjunction(ℝR(S)) and the Isbell counit S -> 𝕃L(ℝR(S)).
AdjunctionWitness co_build_adjunction(const Bimodule& S, const Options& opt = default_options());

struct AdjointDecision {
  bool exists = false;
  bool exhaustive = false;
  ReprSearch search;
  std::optional<AdjunctionWitness> adjunction;
};
AdjointDecision has_left_adjoint(const Bimodule& S, const Options& opt = default_options());

struct DerivedComposite {
  ResolutionResult rg, rf;
  Diamond diamond;
  Bimodule module() const { return diamond.module; }
};
/// Q(G) ⋄ Q(F); componentwise representable inputs are their own resolutions.
DerivedComposite derived_compose(const Bimodule& G, const Bimodule& F, const Options& opt = default_options());

struct QuasiComposite {
  DerivedComposite composite;
  ReprWitness witness;  // assignment A ↦ G(F(A)), mediators h -> (G⋄ᴸF)_A
  bool verified = false;
};
/// G over (B,C), F over (A,B), both right quasi-representable.
QuasiComposite quasi_functor_compose(const Bimodule& G, const Bimodule& F, const Options& opt = default_options());

struct DerivedDualityUnit {
  ResolutionResult rt, rl;   // Q(T) -> T and Q(L Q T) -> L(Q T)
  BimoduleMorphism unit;     // Q(T) -> R(Q(L(Q(T))))
  std::vector<bool> iso_at;  // per object of A, unit restricted to T_A
  bool iso = false;
};
DerivedDualityUnit derived_duality_unit(const Bimodule& T, const Options& opt = default_options());

}  // namespace dgc
