#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgc/matrix.hpp"

namespace dgc {

/// Bounded cochain complex of finite-dimensional spaces. The basis is sorted
/// by degree and the differential is stored as one total matrix of degree +1.
class Complex {
 public:
  Complex();
  explicit Complex(Field F);
  /// `degrees` must be nondecreasing; `d` must raise degree by exactly one.
  Complex(Field F, std::vector<int> degrees, Matrix d);
  /// Zero differential.
  Complex(Field F, std::vector<int> degrees);
  static Complex from_dims(Field F, const std::map<int, int>& dims);
  /// Builds a complex from its blocks: diffs.at(n) has shape dims(n+1) x dims(n).
  static Complex from_blocks(Field F, const std::map<int, int>& dims, const std::map<int, Matrix>& diffs);

  const Field& field() const { return impl_->field; }
  int dim() const { return static_cast<int>(impl_->degrees.size()); }
  int dim(int n) const;
  int offset(int n) const;
  bool empty() const { return dim() == 0; }
  /// Support bounds; lo() > hi() for the zero complex.
  int lo() const { return impl_->lo; }
  int hi() const { return impl_->hi; }
  const std::vector<int>& degrees() const { return impl_->degrees; }
  int degree_of(int i) const { return impl_->degrees[i]; }
  const Matrix& d() const { return impl_->d; }
  Matrix diff(int n) const;
  std::map<int, int> dims() const;

  bool operator==(const Complex& o) const;
  bool operator!=(const Complex& o) const { return !(*this == o); }
  bool same_object(const Complex& o) const { return impl_ == o.impl_; }

 private:
  struct Impl {
    Field field;
    std::vector<int> degrees;
    Matrix d;
    int lo = 1, hi = 0;
    std::map<int, std::pair<int, int>> ranges;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Homogeneous linear map of degree `degree`, stored as a total matrix.
struct GradedMap {
  Complex source;
  Complex target;
  int degree = 0;
  Matrix m;

  GradedMap() = default;
  GradedMap(Complex src, Complex tgt, int deg, Matrix mat);
  static GradedMap zero(const Complex& src, const Complex& tgt, int deg);
  static GradedMap identity(const Complex& c);

  Matrix block(int n) const;
  bool is_closed() const;
  bool operator==(const GradedMap& o) const { return degree == o.degree && m == o.m; }
};
using ChainMap = GradedMap;

/// g∘f
GradedMap compose(const GradedMap& g, const GradedMap& f);
GradedMap operator+(const GradedMap& a, const GradedMap& b);
GradedMap operator-(const GradedMap& a, const GradedMap& b);
GradedMap scale(const GradedMap& a, const Scalar& s);
bool is_homogeneous(const Complex& src, const Complex& tgt, int deg, const Matrix& m);

struct ValidationReport {
  bool ok = true;
  std::string axiom;
  std::string detail;
  static ValidationReport pass() { return {}; }
  static ValidationReport fail(std::string axiom, std::string detail) { return {false, std::move(axiom), std::move(detail)}; }
};

ValidationReport validate_complex(const Complex& C);
/// d f = d_W f - (-1)^{|f|} f d_V
GradedMap differential_of_map(const GradedMap& f);

struct Cohomology {
  Complex H;     // zero differential, one basis vector per class
  Matrix reps;   // C.dim x H.dim, cycle representatives
  Matrix proj;   // H.dim x C.dim, class coordinates of a cycle
  int dim(int n) const { return H.dim(n); }
};
Cohomology cohomology(const Complex& C);
/// Matrix of the induced map in cohomology, H(src) -> H(tgt).
Matrix induced_map(const GradedMap& f, const Cohomology& hs, const Cohomology& ht);
Matrix induced_map(const GradedMap& f);

/// C[n]: degree k holds C^{k+n}; differential scaled by (-1)^n.
Complex shift(const Complex& C, int n);

struct DirectSum {
  Complex cx;
  std::vector<std::vector<int>> pos;  // pos[summand][local index] = global index
  Matrix inclusion(int i) const;
  Matrix projection(int i) const;
};
/// Block-diagonal differential; basis ordered by (degree, summand, local index).
DirectSum direct_sum(const std::vector<Complex>& parts);

struct Cone {
  Complex cx;
  DirectSum layout;  // summand 0 is source[1], summand 1 is target
  GradedMap inclusion;   // target -> cone
  GradedMap projection;  // cone -> source[1]
};
/// cone(f)^k = V^{k+1} ⊕ W^k with d(v,w) = (-d_V v, f v + d_W w). Rejects non-closed f.
Cone cone(const ChainMap& f);

struct TensorComplex {
  Complex cx;
  Complex left, right;
  std::vector<int> index;  // index[x * right.dim + y]
  std::vector<std::pair<int, int>> pairs;
  int at(int x, int y) const { return index[static_cast<size_t>(x) * right.dim() + y]; }
};
/// d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy; basis ordered by (degree, x, y).
TensorComplex tensor(const Complex& C, const Complex& D);
/// (f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y)
GradedMap tensor_maps(const TensorComplex& src, const TensorComplex& tgt, const GradedMap& f, const GradedMap& g);

struct HomComplex {
  Complex cx;
  Complex source, target;
  std::vector<int> index;  // index[y * source.dim + x] for matrix unit E_{y,x}
  std::vector<std::pair<int, int>> units;  // (y, x) per basis element
  int at(int y, int x) const { return index[static_cast<size_t>(y) * source.dim() + x]; }
  /// Coordinates of a (possibly inhomogeneous) matrix source -> target.
  Vector coords(const Matrix& m) const;
  Matrix map_of(const Vector& v) const;
};
/// Hom(V,W)^n = ∏ Hom(V^i, W^{i+n}); basis ordered by (n, source index, target index).
HomComplex internal_hom(const Complex& V, const Complex& W);
/// Matrix of φ ↦ (-1)^{sign_factor·|φ|} post ∘ φ ∘ pre as a map Hom(V,W) -> Hom(V2,W2).
GradedMap hom_operator(const HomComplex& from, const HomComplex& to, const GradedMap& post, const GradedMap& pre,
                       int sign_factor);

struct Iso {
  GradedMap forward;
  GradedMap backward;
  bool verified = false;
};
/// Currying Hom(Z⊗V, W) -> Hom(Z, Hom(V,W)), φ ↦ (z ↦ (v ↦ φ(z⊗v))).
Iso hom_tensor_adjunction(const Complex& Z, const Complex& V, const Complex& W);
bool verify_iso(Iso& w);

bool is_acyclic(const Complex& C);
/// Computes both the cone route and the cohomology route; throws if they disagree.
bool is_quasi_iso(const ChainMap& f);
bool induces_iso_in_cohomology(const ChainMap& f);

/// s of degree -1 with ds + sd = 1; absent when C is not acyclic.
std::optional<GradedMap> contraction(const Complex& C);

struct HomotopyInverse {
  ChainMap g;
  GradedMap h_src;  // gf - 1 = d h_src + h_src d
  GradedMap h_tgt;  // fg - 1 = d h_tgt + h_tgt d
};
/// Throws std::invalid_argument if f is not a quasi-isomorphism.
HomotopyInverse homotopy_inverse(const ChainMap& f);
bool is_null_homotopy(const GradedMap& f, const GradedMap& h);

struct Subcomplex {
  Complex cx;
  Matrix incl;    // ambient.dim x cx.dim
  Matrix coords;  // cx.dim x ambient.dim, coords * incl = 1
};
/// spans.at(n) has ambient.dim(n) rows and independent columns; must be d-stable.
Subcomplex subcomplex_from_spans(const Complex& ambient, const std::map<int, Matrix>& spans);

struct Quotient {
  Complex cx;
  Matrix proj;     // cx.dim x ambient.dim
  Matrix section;  // ambient.dim x cx.dim
};
/// rels.at(n) has ambient.dim(n) rows (any columns); the span must be d-stable.
Quotient quotient_by_spans(const Complex& ambient, const std::map<int, Matrix>& rels);

int euler_characteristic(const Complex& C);
Matrix sign_diag(const Complex& C, int factor);

}  // namespace dgc
