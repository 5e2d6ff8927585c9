#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dgc/dgcat.hpp"

namespace dgc {

/// A-B-bimodule in action notation. Components are T(b,a) with b ∈ B
/// contravariant (right action) and a ∈ A covariant (left action).
/// Right B-modules are bimodules with A the unit category, left A-modules are
/// bimodules with B the unit category.
///
///   left  L(b,a,a')[g] : T(b,a) -> T(b,a'),  x ↦ gx   for g ∈ A(a,a')
///   right R(b',b,a)[f] : T(b,a) -> T(b',a),  x ↦ xf   for f ∈ B(b',b)
class Bimodule {
 public:
  struct Data {
    CatPtr A;  // acts on the left
    CatPtr B;  // acts on the right
    std::string name;
    std::vector<Complex> comps;              // comps[b*|A| + a]
    std::vector<std::vector<Matrix>> left;   // left[(b*|A| + a)*|A| + a'][g]
    std::vector<std::vector<Matrix>> right;  // right[(b'*|B| + b)*|A| + a][f]
  };

  Bimodule() = default;
  explicit Bimodule(Data data);

  const CatPtr& left_cat() const { return d_->A; }
  const CatPtr& right_cat() const { return d_->B; }
  const Field& field() const { return d_->A->field(); }
  const std::string& name() const { return d_->name; }
  int na() const { return d_->A->size(); }
  int nb() const { return d_->B->size(); }
  bool is_right_module() const;
  bool is_left_module() const;

  size_t idx(int b, int a) const { return static_cast<size_t>(b) * na() + a; }
  const Complex& comp(int b, int a) const { return d_->comps[idx(b, a)]; }
  const std::vector<Complex>& comps() const { return d_->comps; }
  const Matrix& lact(int b, int a, int a2, int g) const { return d_->left[idx(b, a) * na() + a2][g]; }
  const Matrix& ract(int b2, int b, int a, int f) const { return d_->right[(static_cast<size_t>(b2) * nb() + b) * na() + a][f]; }
  /// Action of an arbitrary element (linear combination of basis morphisms).
  Matrix left_by(int b, int a, int a2, const Vector& g) const;
  Matrix right_by(int b2, int b, int a, const Vector& f) const;
  int total_dim() const;
  const Data& data() const { return *d_; }
  Bimodule renamed(std::string name) const;

 private:
  std::shared_ptr<const Data> d_;
};

bool same_category(const CatPtr& x, const CatPtr& y);

/// Builds a bimodule from action callbacks: L(b,a,a2,g) for basis g ∈ A(a,a2) and
/// R(b2,b,a,f) for basis f ∈ B(b2,b).
Bimodule make_bimodule(const CatPtr& A, const CatPtr& B, std::string name, std::vector<Complex> comps,
                       const std::function<Matrix(int, int, int, int)>& L, const std::function<Matrix(int, int, int, int)>& R);

/// Builders for one-sided modules.
Bimodule right_module(CatPtr B, std::string name, std::vector<Complex> comps, std::vector<std::vector<Matrix>> right);
Bimodule left_module(CatPtr A, std::string name, std::vector<Complex> comps, std::vector<std::vector<Matrix>> left);

/// Checks components, degrees, Leibniz, unit and associativity of both actions
/// and their compatibility (gx)f = g(xf). Names the failing axiom and location.
ValidationReport validate_bimodule(const Bimodule& T);

/// h_a(b) = A(b,a), xf = x∘f.
Bimodule representable_right(const CatPtr& A, int a);
/// h^a(b) = A(a,b), gx = g∘x.
Bimodule representable_left(const CatPtr& A, int a);
/// T(b,a) = A(b,a) with composition on both sides.
Bimodule diagonal(const CatPtr& A);
/// h^F_G(c,b) = A(F c, G b) for F: C -> A, G: B -> A; left B-action through G,
/// right C-action through F.
Bimodule hFG(const DgFunctor& F, const DgFunctor& G);
/// h_F(a,c) = A(a, F c): left C, right A.
Bimodule h_lower(const DgFunctor& F);
/// h^F(c,a) = A(F c, a): left A, right C.
Bimodule h_upper(const DgFunctor& F);

/// Right B-module T_a = T(-,a).
Bimodule component(const Bimodule& T, int a);
/// Left A-module T^b = T(b,-).
Bimodule co_component(const Bimodule& T, int b);

Bimodule shift(const Bimodule& T, int n);
Bimodule direct_sum(const std::vector<Bimodule>& parts);
/// M left A-module, N right B-module: T(b,a) = M(a) ⊗ N(b), no action signs.
Bimodule external_tensor(const Bimodule& M, const Bimodule& N);
/// P right C-module, Q left C-module: K(c',c) = P(c') ⊗ Q(c) as a C-C-bimodule with
/// g(x⊗y) = (-1)^{|g||x|} x⊗gy and (x⊗y)f = (-1)^{|f||y|} xf⊗y. Its coend is P ⊗_C Q.
Bimodule tensor_bimodule(const Bimodule& P, const Bimodule& Q);

/// T over (A1,A2), U over (B1,B2): the (A1⊗B1, A2⊗B2)-bimodule T(a2,a1) ⊗ U(b2,b1) with
/// (f⊗g)(x⊗y) = (-1)^{|g||x|} fx⊗gy and (x⊗y)(f⊗g) = (-1)^{|y||f|} xf⊗yg.
Bimodule external_product(const Bimodule& T, const Bimodule& U, const CatPtr& left, const CatPtr& right);

/// Right actions in functor notation, F(f)(x) = (-1)^{|x||f|} xf, and back.
std::vector<std::vector<Matrix>> right_functor_notation(const Bimodule& T);
Bimodule from_right_functor_notation(const Bimodule& shape, const std::vector<std::vector<Matrix>>& functorial);

/// Degree-p family φ_{(b,a)}: T(b,a) -> T'(b,a).
struct BimoduleMorphism {
  Bimodule source, target;
  int degree = 0;
  std::vector<Matrix> comps;

  static BimoduleMorphism zero(const Bimodule& S, const Bimodule& T, int degree);
  static BimoduleMorphism identity(const Bimodule& T);
  const Matrix& at(int b, int a) const { return comps[source.idx(b, a)]; }
  GradedMap graded(int b, int a) const;
};

/// φ(xf) = φ(x)f and φ(gx) = (-1)^{|φ||g|} gφ(x) on basis elements, plus homogeneity.
ValidationReport validate_morphism(const BimoduleMorphism& phi);
bool is_closed(const BimoduleMorphism& phi);
BimoduleMorphism compose(const BimoduleMorphism& g, const BimoduleMorphism& f);
BimoduleMorphism operator+(const BimoduleMorphism& x, const BimoduleMorphism& y);
BimoduleMorphism operator-(const BimoduleMorphism& x, const BimoduleMorphism& y);
BimoduleMorphism scale(const BimoduleMorphism& x, const Scalar& s);
bool operator==(const BimoduleMorphism& x, const BimoduleMorphism& y);
/// Componentwise differential d φ.
BimoduleMorphism differential_of(const BimoduleMorphism& phi);
bool is_iso(const BimoduleMorphism& phi);
std::optional<BimoduleMorphism> inverse(const BimoduleMorphism& phi);
/// Objectwise quasi-isomorphism.
bool is_qis(const BimoduleMorphism& phi);
bool is_acyclic(const Bimodule& T);

struct BimoduleCone {
  Bimodule cone;
  BimoduleMorphism inclusion;   // target -> cone
  BimoduleMorphism projection;  // cone -> source[1]
};
BimoduleCone cone(const BimoduleMorphism& phi);

/// Hom-complex of bimodules: families satisfying the sign rules, as a kernel
/// inside the product of componentwise internal homs.
struct NatComplex {
  Bimodule source, target;
  std::vector<HomComplex> pieces;  // per component
  DirectSum product;
  Subcomplex sub;
  bool minimal_constraints = true;

  const Complex& cx() const { return sub.cx; }
  /// Nat coordinates -> morphism of the given degree (coordinates must be homogeneous).
  BimoduleMorphism morphism(const Vector& v) const;
  BimoduleMorphism morphism(const Vector& v, int degree) const;
  /// Coordinates of a morphism; throws if the family does not satisfy the sign rules.
  Vector coords(const BimoduleMorphism& phi) const;
  /// Product coordinates of a family of matrices (no membership check).
  Vector family_coords(const std::vector<Matrix>& comps) const;
};
/// Same variance and base required; throws std::invalid_argument otherwise.
NatComplex nat_complex(const Bimodule& S, const Bimodule& T, bool use_generating_set = true);

/// Nat(h_a, F) ≅ F(a) for a right module F: φ ↦ φ_a(1_a), with inverse
/// x ↦ (f ↦ xf).
struct YonedaIso {
  NatComplex nat;
  Iso iso;  // forward: nat.cx() -> F(a)
};
YonedaIso yoneda_iso(const CatPtr& A, int a, const Bimodule& F);
/// The left-module version: Nat(h^a, M) ≅ M(a), φ ↦ φ_a(1_a), x ↦ (g ↦ (-1)^{|g||x|} g x).
YonedaIso yoneda_iso_left(const CatPtr& A, int a, const Bimodule& M);

/// Matrix of the module-level map induced by postcomposition with a morphism of
/// right modules, Nat(X,Y) -> Nat(X,Y'), and by precomposition.
Matrix nat_postcompose(const NatComplex& from, const NatComplex& to, const BimoduleMorphism& psi);
Matrix nat_precompose(const NatComplex& from, const NatComplex& to, const BimoduleMorphism& psi);

/// The full dg subcategory of modules on the given objects: hom(i,j) = Nat(M_i, M_j),
/// composition of families.
struct ModuleCategory {
  CatPtr cat;
  std::vector<Bimodule> objects;
  std::vector<NatComplex> nats;  // nats[i*n+j]
  const NatComplex& nat(int i, int j) const { return nats[i * objects.size() + j]; }
};
ModuleCategory module_category(const std::vector<Bimodule>& objects);

}  // namespace dgc
