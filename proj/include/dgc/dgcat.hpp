#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgc/complex.hpp"
#include "dgc/options.hpp"

namespace dgc {

/// Finite dg-category. Composition is stored as left-multiplication matrices:
/// lmul(a,b,c)[g] is the chain-level map hom(a,b) -> hom(a,c), f ↦ g∘f, for each
/// basis element g of hom(b,c).
class DgCategory {
 public:
  struct Data {
    Field field;
    std::string name;
    std::vector<std::string> objects;
    std::vector<Complex> homs;                     // homs[a*n+b] = hom(a,b)
    std::vector<std::vector<std::string>> labels;  // basis labels per hom, may be empty
    std::vector<std::vector<Matrix>> lmul;         // lmul[(a*n+b)*n+c][g]
    std::vector<Vector> ids;
  };

  explicit DgCategory(Data data);

  const Field& field() const { return d_.field; }
  const std::string& name() const { return d_.name; }
  int size() const { return static_cast<int>(d_.objects.size()); }
  const std::vector<std::string>& objects() const { return d_.objects; }
  const std::string& object(int a) const { return d_.objects[a]; }
  /// Throws std::out_of_range naming the identifier.
  int index_of(const std::string& id) const;
  std::optional<int> find(const std::string& id) const;

  const Complex& hom(int a, int b) const { return d_.homs[pair(a, b)]; }
  const std::vector<std::string>& labels(int a, int b) const { return d_.labels[pair(a, b)]; }
  std::string label(int a, int b, int i) const;
  const Vector& id(int a) const { return d_.ids[a]; }
  const Matrix& lmul(int a, int b, int c, int g) const { return d_.lmul[triple(a, b, c)][g]; }
  const std::vector<Matrix>& lmuls(int a, int b, int c) const { return d_.lmul[triple(a, b, c)]; }
  const Data& data() const { return d_; }

  /// g∘f for g ∈ hom(b,c), f ∈ hom(a,b).
  Vector compose(int a, int b, int c, const Vector& g, const Vector& f) const;
  /// Matrix of f ↦ g∘f, hom(a,b) -> hom(a,c).
  Matrix left_mult(int a, int b, int c, const Vector& g) const;
  /// Matrix of g ↦ g∘f, hom(b,c) -> hom(a,c); no sign.
  Matrix right_mult(int a, int b, int c, const Vector& f) const;
  Vector basis(int a, int b, int i) const;
  /// Degree of the i-th basis element of hom(a,b).
  int deg(int a, int b, int i) const { return hom(a, b).degree_of(i); }

  size_t pair(int a, int b) const { return static_cast<size_t>(a) * d_.objects.size() + b; }
  size_t triple(int a, int b, int c) const { return pair(a, b) * d_.objects.size() + c; }

 private:
  Data d_;
};
using CatPtr = std::shared_ptr<const DgCategory>;

/// Assembles a category from labelled generators and a sparse composition table.
class CategoryBuilder {
 public:
  CategoryBuilder(Field F, std::string name);
  int add_object(const std::string& id);
  /// Adds a basis element of hom(a,b); returns its index within that hom.
  int add_morphism(const std::string& a, const std::string& b, const std::string& label, int degree);
  /// Identities are added by add_object and labelled "1_<id>".
  void set_differential(const std::string& from, const std::string& to, const Scalar& coeff);
  /// g∘f contributes coeff·h; identities compose automatically.
  void set_composition(const std::string& g, const std::string& f, const std::string& h, const Scalar& coeff);
  /// Throws std::invalid_argument on unknown labels or ill-typed entries.
  CatPtr build() const;

 private:
  struct Gen {
    int src, tgt, degree;
    std::string label;
  };
  const Gen& gen(const std::string& label) const;
  Field field_;
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Gen> gens_;
  std::vector<std::tuple<std::string, std::string, Scalar>> diffs_;
  std::vector<std::tuple<std::string, std::string, std::string, Scalar>> comps_;
};

/// Passes iff hom complexes square to zero, composition is homogeneous of
/// degree 0 and satisfies Leibniz, identities are closed units, and
/// composition is associative. Checks are on basis elements.
ValidationReport validate_dgcat(const DgCategory& A);

CatPtr unit_category(Field F);
/// hom^op(a,b) = hom(b,a) with f^op∘g^op = (-1)^{|f||g|}(g∘f)^op.
CatPtr opposite(const DgCategory& A);
/// Objects are pairs (a,b) named "a|b", ordered a-major; (f'⊗g')(f⊗g) = (-1)^{|g'||f|} f'f⊗g'g.
CatPtr tensor_dgcat(const DgCategory& A, const DgCategory& B);
/// Coordinates of x⊗y in hom((a,b),(a2,b2)) of tensor_dgcat(A,B), x ∈ A(a,a2), y ∈ B(b,b2).
Vector tensor_element(const DgCategory& A, const DgCategory& B, int a, int a2, int b, int b2, const Vector& x, const Vector& y);
/// Exact equality of all structure data.
bool same_structure(const DgCategory& A, const DgCategory& B);

class DgFunctor {
 public:
  DgFunctor(CatPtr src, CatPtr tgt, std::vector<int> objects, std::vector<Matrix> maps, std::string name = "");
  static DgFunctor identity(CatPtr A);

  const CatPtr& source() const { return src_; }
  const CatPtr& target() const { return tgt_; }
  const std::string& name() const { return name_; }
  int on_object(int a) const { return obj_[a]; }
  const std::vector<int>& object_map() const { return obj_; }
  /// hom(a,b) -> hom(Fa,Fb)
  const Matrix& on_hom(int a, int b) const { return maps_[src_->pair(a, b)]; }
  const std::vector<Matrix>& maps() const { return maps_; }

 private:
  CatPtr src_, tgt_;
  std::vector<int> obj_;
  std::vector<Matrix> maps_;
  std::string name_;
};

ValidationReport validate_functor(const DgFunctor& F);
/// G∘F
DgFunctor compose_functors(const DgFunctor& G, const DgFunctor& F);
/// The swap A⊗B -> B⊗A, f⊗g ↦ (-1)^{|f||g|} g⊗f.
DgFunctor swap_functor(const CatPtr& AB, const CatPtr& BA, const DgCategory& A, const DgCategory& B);

/// Ordinary k-linear category: Z^0 or H^0 of a dg-category.
struct LinearCategory {
  Field field;
  std::vector<std::string> objects;
  std::vector<int> dims;                        // dims[a*n+b]
  std::vector<std::vector<Matrix>> lmul;        // as in DgCategory
  std::vector<Vector> ids;
  std::vector<Matrix> reps;                     // class/cycle basis -> hom(a,b) coordinates
  std::vector<Matrix> proj;                     // hom(a,b) cycles -> class coordinates
  bool well_defined = true;
  int size() const { return static_cast<int>(objects.size()); }
  size_t pair(int a, int b) const { return static_cast<size_t>(a) * objects.size() + b; }
  size_t triple(int a, int b, int c) const { return pair(a, b) * objects.size() + c; }
  Vector compose(int a, int b, int c, const Vector& g, const Vector& f) const;
};

LinearCategory z0_category(const DgCategory& A);
LinearCategory h0_category(const DgCategory& A);
/// Matrix of H^0(F) on H^0 homs, per source pair.
std::vector<Matrix> h0_functor(const DgFunctor& F, const LinearCategory& hs, const LinearCategory& ht);

struct IsoSearch {
  std::optional<Vector> forward;   // class in H(a,b)
  std::optional<Vector> backward;  // its inverse in H(b,a)
  bool exhaustive = false;
  std::string method;
};
/// Searches for an isomorphism a ≅ b in a linear category.
IsoSearch find_isomorphism(const LinearCategory& C, int a, int b, const Options& opt = default_options());

struct QuasiEquivalenceReport {
  bool hom_qis = true;
  bool essentially_surjective = true;
  std::string detail;
  bool ok() const { return hom_qis && essentially_surjective; }
};
QuasiEquivalenceReport is_quasi_equivalence(const DgFunctor& F, const Options& opt = default_options());

struct AdjunctionReport {
  bool ok = false;
  std::string failure;             // name of the first failing check
  std::vector<Vector> unit;        // η_a ∈ hom(a, GFa)
  std::vector<Vector> counit;      // ε_b ∈ hom(FGb, b)
  bool triangles = false;
  bool universal = false;
};
/// phi[a*|B|+b] : hom(Fa,b) -> hom(a,Gb).
AdjunctionReport verify_dg_adjunction(const DgFunctor& F, const DgFunctor& G, const std::vector<Matrix>& phi);

struct FullyFaithfulReport {
  bool unit_iso = false;
  bool homs_iso = false;
  bool agree() const { return unit_iso == homs_iso; }
};
FullyFaithfulReport fully_faithful_via_unit(const DgFunctor& F, const DgFunctor& G, const std::vector<Matrix>& phi);

struct GeneratingSet {
  std::vector<std::vector<Vector>> gens;  // per pair (a*n+b), homogeneous elements of hom(a,b)
  bool minimal = true;                    // false when the fallback (all non-identity basis elements) was used
};
/// Morphisms that together with identities generate every hom under composition
/// and linear combination: a complement of decomposables plus identity lines,
/// accepted only if a closure check spans every hom.
GeneratingSet generating_set(const DgCategory& A);

/// Inverse of a closed degree-0 morphism u: a -> b, if it has one in Z^0.
std::optional<Vector> strict_inverse(const DgCategory& A, int a, int b, const Vector& u);

}  // namespace dgc
