#include "dgc/dgcat.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dgc {

namespace {

std::string str(int n) { return std::to_string(n); }

Vector unit_vector(Field F, int n, int i) {
  Vector v(n, F.zero());
  v[i] = F.one();
  return v;
}

Matrix combine(Field F, const std::vector<Matrix>& mats, const Vector& coeffs, int rows, int cols) {
  Matrix out(F, rows, cols);
  for (size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) out += mats[k].scaled(coeffs[k]);
  return out;
}

}  // namespace

DgCategory::DgCategory(Data data) : d_(std::move(data)) {
  const size_t n = d_.objects.size();
  if (d_.homs.size() != n * n || d_.lmul.size() != n * n * n || d_.ids.size() != n)
    throw std::invalid_argument("category '" + d_.name + "': structure arrays have the wrong size");
  if (d_.labels.size() != n * n) d_.labels.assign(n * n, {});
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b)
      if (d_.objects[a] == d_.objects[b]) throw std::invalid_argument("duplicate object identifier '" + d_.objects[a] + "'");
  for (int a = 0; a < size(); ++a) {
    if (static_cast<int>(d_.ids[a].size()) != hom(a, a).dim())
      throw std::invalid_argument("identity of '" + object(a) + "' has the wrong length");
    for (int b = 0; b < size(); ++b)
      for (int c = 0; c < size(); ++c) {
        const auto& ms = lmuls(a, b, c);
        if (static_cast<int>(ms.size()) != hom(b, c).dim())
          throw std::invalid_argument("composition table (" + object(a) + "," + object(b) + "," + object(c) + ") has the wrong size");
        for (const Matrix& m : ms)
          if (m.rows() != hom(a, c).dim() || m.cols() != hom(a, b).dim())
            throw std::invalid_argument("composition matrix of the wrong shape");
      }
  }
}

int DgCategory::index_of(const std::string& id) const {
  auto i = find(id);
  if (!i) throw std::out_of_range("unknown object '" + id + "' in category '" + d_.name + "'");
  return *i;
}

std::optional<int> DgCategory::find(const std::string& id) const {
  for (int a = 0; a < size(); ++a)
    if (d_.objects[a] == id) return a;
  return std::nullopt;
}

std::string DgCategory::label(int a, int b, int i) const {
  const auto& l = labels(a, b);
  if (i < static_cast<int>(l.size()) && !l[i].empty()) return l[i];
  return object(a) + "->" + object(b) + "#" + str(i);
}

Vector DgCategory::basis(int a, int b, int i) const { return unit_vector(d_.field, hom(a, b).dim(), i); }

Matrix DgCategory::left_mult(int a, int b, int c, const Vector& g) const {
  return combine(d_.field, lmuls(a, b, c), g, hom(a, c).dim(), hom(a, b).dim());
}

Matrix DgCategory::right_mult(int a, int b, int c, const Vector& f) const {
  Matrix out(d_.field, hom(a, c).dim(), hom(b, c).dim());
  const auto& ms = lmuls(a, b, c);
  for (int g = 0; g < hom(b, c).dim(); ++g) out.set_col(g, ms[g].apply(f));
  return out;
}

Vector DgCategory::compose(int a, int b, int c, const Vector& g, const Vector& f) const {
  Vector out(hom(a, c).dim(), d_.field.zero());
  const auto& ms = lmuls(a, b, c);
  for (int k = 0; k < hom(b, c).dim(); ++k) {
    if (g[k].is_zero()) continue;
    Vector v = ms[k].apply(f);
    for (size_t i = 0; i < v.size(); ++i) out[i].add_mul(g[k], v[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

CategoryBuilder::CategoryBuilder(Field F, std::string name) : field_(F), name_(std::move(name)) {}

int CategoryBuilder::add_object(const std::string& id) {
  if (std::find(objects_.begin(), objects_.end(), id) != objects_.end())
    throw std::invalid_argument("duplicate object identifier '" + id + "'");
  objects_.push_back(id);
  int a = static_cast<int>(objects_.size()) - 1;
  gens_.push_back({a, a, 0, "1_" + id});
  return a;
}

int CategoryBuilder::add_morphism(const std::string& a, const std::string& b, const std::string& label, int degree) {
  auto pos = [&](const std::string& id) {
    auto it = std::find(objects_.begin(), objects_.end(), id);
    if (it == objects_.end()) throw std::invalid_argument("unknown object '" + id + "'");
    return static_cast<int>(it - objects_.begin());
  };
  for (const Gen& g : gens_)
    if (g.label == label) throw std::invalid_argument("duplicate morphism label '" + label + "'");
  gens_.push_back({pos(a), pos(b), degree, label});
  int count = 0;
  for (const Gen& g : gens_)
    if (g.src == gens_.back().src && g.tgt == gens_.back().tgt) ++count;
  return count - 1;
}

const CategoryBuilder::Gen& CategoryBuilder::gen(const std::string& label) const {
  for (const Gen& g : gens_)
    if (g.label == label) return g;
  throw std::invalid_argument("unknown morphism label '" + label + "'");
}

void CategoryBuilder::set_differential(const std::string& from, const std::string& to, const Scalar& coeff) {
  diffs_.emplace_back(from, to, coeff);
}

void CategoryBuilder::set_composition(const std::string& g, const std::string& f, const std::string& h, const Scalar& coeff) {
  comps_.emplace_back(g, f, h, coeff);
}

CatPtr CategoryBuilder::build() const {
  const int n = static_cast<int>(objects_.size());
  DgCategory::Data D;
  D.field = field_;
  D.name = name_;
  D.objects = objects_;
  // per hom: generators sorted by degree, stable in insertion order
  std::vector<std::vector<int>> members(static_cast<size_t>(n) * n);
  for (size_t i = 0; i < gens_.size(); ++i) members[static_cast<size_t>(gens_[i].src) * n + gens_[i].tgt].push_back(static_cast<int>(i));
  std::map<std::string, std::pair<size_t, int>> where;
  D.labels.resize(static_cast<size_t>(n) * n);
  std::vector<std::vector<int>> degs(static_cast<size_t>(n) * n);
  for (size_t p = 0; p < members.size(); ++p) {
    auto& m = members[p];
    std::stable_sort(m.begin(), m.end(), [&](int x, int y) { return gens_[x].degree < gens_[y].degree; });
    for (size_t k = 0; k < m.size(); ++k) {
      where[gens_[m[k]].label] = {p, static_cast<int>(k)};
      D.labels[p].push_back(gens_[m[k]].label);
      degs[p].push_back(gens_[m[k]].degree);
    }
  }
  std::vector<Matrix> diffs;
  for (size_t p = 0; p < members.size(); ++p) {
    int k = static_cast<int>(members[p].size());
    diffs.emplace_back(field_, k, k);
  }
  for (const auto& [from, to, c] : diffs_) {
    const Gen &gf = gen(from), &gt = gen(to);
    if (gf.src != gt.src || gf.tgt != gt.tgt) throw std::invalid_argument("differential " + from + " -> " + to + " leaves its hom complex");
    if (gt.degree != gf.degree + 1) throw std::invalid_argument("differential " + from + " -> " + to + " must raise degree by one");
    auto [p, i] = where.at(from);
    diffs[p](where.at(to).second, i) += c;
  }
  for (size_t p = 0; p < members.size(); ++p) D.homs.emplace_back(field_, degs[p], diffs[p]);

  D.lmul.resize(static_cast<size_t>(n) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        auto& ms = D.lmul[(static_cast<size_t>(a) * n + b) * n + c];
        const int rows = D.homs[static_cast<size_t>(a) * n + c].dim(), cols = D.homs[static_cast<size_t>(a) * n + b].dim();
        ms.assign(D.homs[static_cast<size_t>(b) * n + c].dim(), Matrix(field_, rows, cols));
        if (b == c) {
          int idx = where.at("1_" + objects_[b]).second;
          ms[idx] = Matrix::identity(field_, cols);
        }
        if (a == b) {
          int idx = where.at("1_" + objects_[a]).second;
          for (int g = 0; g < static_cast<int>(ms.size()); ++g) ms[g](g, idx) = field_.one();
        }
      }
  for (const auto& [g, f, h, coeff] : comps_) {
    const Gen &gg = gen(g), &gf = gen(f), &gh = gen(h);
    if (gf.tgt != gg.src || gh.src != gf.src || gh.tgt != gg.tgt)
      throw std::invalid_argument("composition " + g + " ∘ " + f + " = " + h + " is ill-typed");
    if (gh.degree != gg.degree + gf.degree) throw std::invalid_argument("composition " + g + " ∘ " + f + " = " + h + " has the wrong degree");
    if (g.rfind("1_", 0) == 0 || f.rfind("1_", 0) == 0)
      throw std::invalid_argument("composites with identities are implicit: " + g + " ∘ " + f);
    auto& ms = D.lmul[(static_cast<size_t>(gf.src) * n + gf.tgt) * n + gg.tgt];
    ms[where.at(g).second](where.at(h).second, where.at(f).second) += coeff;
  }
  D.ids.resize(n);
  for (int a = 0; a < n; ++a) {
    size_t p = static_cast<size_t>(a) * n + a;
    D.ids[a] = unit_vector(field_, D.homs[p].dim(), where.at("1_" + objects_[a]).second);
  }
  return std::make_shared<const DgCategory>(std::move(D));
}

// ---------------------------------------------------------------------------

ValidationReport validate_dgcat(const DgCategory& A) {
  const Field F = A.field();
  const int n = A.size();
  auto obj3 = [&](int a, int b, int c) { return "(" + A.object(a) + "," + A.object(b) + "," + A.object(c) + ")"; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ValidationReport r = validate_complex(A.hom(a, b));
      if (!r.ok) return ValidationReport::fail("d^2 = 0", "hom(" + A.object(a) + "," + A.object(b) + "): " + r.detail);
    }
  for (int a = 0; a < n; ++a) {
    const Complex& H = A.hom(a, a);
    const Vector& e = A.id(a);
    for (int i = 0; i < H.dim(); ++i)
      if (!e[i].is_zero() && H.degree_of(i) != 0)
        return ValidationReport::fail("identity is a closed degree-0 element", "1_" + A.object(a) + " has a component in degree " + str(H.degree_of(i)));
    Vector de = H.d().apply(e);
    for (const Scalar& s : de)
      if (!s.is_zero()) return ValidationReport::fail("identity is a closed degree-0 element", "d(1_" + A.object(a) + ") != 0");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const Complex &Hab = A.hom(a, b), &Hbc = A.hom(b, c), &Hac = A.hom(a, c);
        for (int g = 0; g < Hbc.dim(); ++g) {
          const Matrix& L = A.lmul(a, b, c, g);
          if (!is_homogeneous(Hab, Hac, Hbc.degree_of(g), L))
            return ValidationReport::fail("composition has degree 0", obj3(a, b, c) + " left multiplication by " + A.label(b, c, g));
          Matrix lhs = Hac.d() * L - (odd(Hbc.degree_of(g)) ? (L * Hab.d()).scaled(F.from_int(-1)) : L * Hab.d());
          Matrix rhs = A.left_mult(a, b, c, Hbc.d().col(g));
          if (lhs != rhs)
            return ValidationReport::fail("Leibniz rule", obj3(a, b, c) + " d(g f) != (dg) f + (-1)^|g| g (df) for g = " + A.label(b, c, g));
        }
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!A.left_mult(a, b, b, A.id(b)).is_identity())
        return ValidationReport::fail("left unit law", "1_" + A.object(b) + " ∘ f != f on hom(" + A.object(a) + "," + A.object(b) + ")");
      if (!A.right_mult(a, a, b, A.id(a)).is_identity())
        return ValidationReport::fail("right unit law", "g ∘ 1_" + A.object(a) + " != g on hom(" + A.object(a) + "," + A.object(b) + ")");
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const Complex &Hcd = A.hom(c, d), &Hbc = A.hom(b, c);
          for (int h = 0; h < Hcd.dim(); ++h)
            for (int g = 0; g < Hbc.dim(); ++g) {
              Matrix lhs = A.lmul(a, c, d, h) * A.lmul(a, b, c, g);
              Vector hg = A.lmul(b, c, d, h).col(g);
              if (lhs != A.left_mult(a, b, d, hg))
                return ValidationReport::fail("associativity", "(" + A.object(a) + "," + A.object(b) + "," + A.object(c) + "," + A.object(d) +
                                                                   ") h(gf) != (hg)f for h = " + A.label(c, d, h) + ", g = " + A.label(b, c, g));
            }
        }
  return ValidationReport::pass();
}

CatPtr unit_category(Field F) {
  static std::mutex mu;
  static std::map<uint64_t, CatPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(F.characteristic());
  if (it != cache.end()) return it->second;
  CategoryBuilder b(F, "k");
  b.add_object("*");
  return cache[F.characteristic()] = b.build();
}

CatPtr opposite(const DgCategory& A) {
  const int n = A.size();
  const Field F = A.field();
  DgCategory::Data D;
  D.field = F;
  D.name = A.name() + "^op";
  D.objects = A.objects();
  D.homs.resize(static_cast<size_t>(n) * n);
  D.labels.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      D.homs[A.pair(a, b)] = A.hom(b, a);
      D.labels[A.pair(a, b)] = A.labels(b, a);
    }
  D.lmul.resize(static_cast<size_t>(n) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        // op: f ∈ hom^op(b,c) = hom(c,b), g ∈ hom^op(a,b) = hom(b,a); f∘g = (-1)^{|f||g|} (g∘f in A)
        const Complex &Hf = A.hom(c, b), &Hg = A.hom(b, a), &Hr = A.hom(c, a);
        auto& ms = D.lmul[A.triple(a, b, c)];
        ms.assign(Hf.dim(), Matrix(F, Hr.dim(), Hg.dim()));
        for (int g = 0; g < Hg.dim(); ++g) {
          const Matrix& Lg = A.lmul(c, b, a, g);
          for (int f = 0; f < Hf.dim(); ++f) {
            bool neg = odd(static_cast<long long>(Hf.degree_of(f)) * Hg.degree_of(g));
            for (int r = 0; r < Hr.dim(); ++r) ms[f](r, g) = neg ? -Lg(r, f) : Lg(r, f);
          }
        }
      }
  D.ids.resize(n);
  for (int a = 0; a < n; ++a) D.ids[a] = A.id(a);
  std::string nm = A.name();
  if (nm.size() > 3 && nm.compare(nm.size() - 3, 3, "^op") == 0) D.name = nm.substr(0, nm.size() - 3);
  return std::make_shared<const DgCategory>(std::move(D));
}

Vector tensor_element(const DgCategory& A, const DgCategory& B, int a, int a2, int b, int b2, const Vector& x, const Vector& y) {
  TensorComplex T = tensor(A.hom(a, a2), B.hom(b, b2));
  Vector out(T.cx.dim(), A.field().zero());
  for (size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero())
      for (size_t j = 0; j < y.size(); ++j)
        if (!y[j].is_zero()) out[T.at(static_cast<int>(i), static_cast<int>(j))] += x[i] * y[j];
  return out;
}

CatPtr tensor_dgcat(const DgCategory& A, const DgCategory& B) {
  if (A.field() != B.field()) throw std::invalid_argument("tensor_dgcat: field mismatch");
  const Field F = A.field();
  const int na = A.size(), nb = B.size(), n = na * nb;
  DgCategory::Data D;
  D.field = F;
  D.name = A.name() + "⊗" + B.name();
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) D.objects.push_back(A.object(a) + "|" + B.object(b));
  auto split = [nb](int x) { return std::pair<int, int>{x / nb, x % nb}; };
  std::vector<TensorComplex> T(static_cast<size_t>(n) * n);
  D.homs.resize(T.size());
  D.labels.resize(T.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto [a, b] = split(x);
      auto [a2, b2] = split(y);
      size_t p = static_cast<size_t>(x) * n + y;
      T[p] = tensor(A.hom(a, a2), B.hom(b, b2));
      D.homs[p] = T[p].cx;
      for (auto [i, j] : T[p].pairs) D.labels[p].push_back(A.label(a, a2, i) + "⊗" + B.label(b, b2, j));
    }
  D.lmul.resize(static_cast<size_t>(n) * n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        auto [a, b] = split(x);
        auto [a1, b1] = split(y);
        auto [a2, b2] = split(z);
        const TensorComplex &Txy = T[static_cast<size_t>(x) * n + y], &Tyz = T[static_cast<size_t>(y) * n + z],
                            &Txz = T[static_cast<size_t>(x) * n + z];
        auto& ms = D.lmul[(static_cast<size_t>(x) * n + y) * n + z];
        ms.assign(Tyz.cx.dim(), Matrix(F, Txz.cx.dim(), Txy.cx.dim()));
        for (int gp = 0; gp < Tyz.cx.dim(); ++gp) {
          auto [fpi, gpi] = Tyz.pairs[gp];  // f' ∈ A(a1,a2), g' ∈ B(b1,b2)
          const Matrix &Lf = A.lmul(a, a1, a2, fpi), &Lg = B.lmul(b, b1, b2, gpi);
          const int dg2 = B.deg(b1, b2, gpi);
          for (int s = 0; s < Txy.cx.dim(); ++s) {
            auto [fi, gi] = Txy.pairs[s];
            bool neg = odd(static_cast<long long>(dg2) * A.deg(a, a1, fi));
            for (int r1 = 0; r1 < Lf.rows(); ++r1) {
              const Scalar& u = Lf(r1, fi);
              if (u.is_zero()) continue;
              for (int r2 = 0; r2 < Lg.rows(); ++r2) {
                const Scalar& v = Lg(r2, gi);
                if (v.is_zero()) continue;
                Scalar w = u * v;
                if (neg) w.negate();
                ms[gp](Txz.at(r1, r2), s) += w;
              }
            }
          }
        }
      }
  D.ids.resize(n);
  for (int x = 0; x < n; ++x) {
    auto [a, b] = split(x);
    const TensorComplex& Txx = T[static_cast<size_t>(x) * n + x];
    Vector e(Txx.cx.dim(), F.zero());
    for (int i = 0; i < A.hom(a, a).dim(); ++i)
      for (int j = 0; j < B.hom(b, b).dim(); ++j) e[Txx.at(i, j)] = A.id(a)[i] * B.id(b)[j];
    D.ids[x] = std::move(e);
  }
  return std::make_shared<const DgCategory>(std::move(D));
}

bool same_structure(const DgCategory& A, const DgCategory& B) {
  if (A.field() != B.field() || A.objects() != B.objects()) return false;
  const int n = A.size();
  for (int a = 0; a < n; ++a) {
    if (A.id(a) != B.id(a)) return false;
    for (int b = 0; b < n; ++b) {
      if (A.hom(a, b) != B.hom(a, b)) return false;
      for (int c = 0; c < n; ++c)
        if (A.lmuls(a, b, c) != B.lmuls(a, b, c)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

DgFunctor::DgFunctor(CatPtr src, CatPtr tgt, std::vector<int> objects, std::vector<Matrix> maps, std::string name)
    : src_(std::move(src)), tgt_(std::move(tgt)), obj_(std::move(objects)), maps_(std::move(maps)), name_(std::move(name)) {
  const size_t n = src_->size();
  if (obj_.size() != n || maps_.size() != n * n) throw std::invalid_argument("functor '" + name_ + "': wrong number of components");
  for (int o : obj_)
    if (o < 0 || o >= tgt_->size()) throw std::invalid_argument("functor '" + name_ + "': object out of range");
  for (int a = 0; a < src_->size(); ++a)
    for (int b = 0; b < src_->size(); ++b) {
      const Matrix& m = maps_[src_->pair(a, b)];
      if (m.rows() != tgt_->hom(obj_[a], obj_[b]).dim() || m.cols() != src_->hom(a, b).dim())
        throw std::invalid_argument("functor '" + name_ + "': hom map of the wrong shape at (" + src_->object(a) + "," + src_->object(b) + ")");
    }
}

DgFunctor DgFunctor::identity(CatPtr A) {
  std::vector<int> obj(A->size());
  std::vector<Matrix> maps;
  for (int a = 0; a < A->size(); ++a) obj[a] = a;
  for (int a = 0; a < A->size(); ++a)
    for (int b = 0; b < A->size(); ++b) maps.push_back(Matrix::identity(A->field(), A->hom(a, b).dim()));
  return DgFunctor(A, A, std::move(obj), std::move(maps), "id");
}

ValidationReport validate_functor(const DgFunctor& F) {
  const DgCategory &A = *F.source(), &B = *F.target();
  const int n = A.size();
  auto pr = [&](int a, int b) { return "(" + A.object(a) + "," + A.object(b) + ")"; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Complex &S = A.hom(a, b), &T = B.hom(F.on_object(a), F.on_object(b));
      const Matrix& M = F.on_hom(a, b);
      if (!is_homogeneous(S, T, 0, M)) return ValidationReport::fail("functor has degree 0", "hom map at " + pr(a, b));
      if (T.d() * M != M * S.d()) return ValidationReport::fail("functor commutes with d", "hom map at " + pr(a, b));
    }
  for (int a = 0; a < n; ++a)
    if (F.on_hom(a, a).apply(A.id(a)) != B.id(F.on_object(a)))
      return ValidationReport::fail("functor preserves identities", "F(1_" + A.object(a) + ") != 1_" + B.object(F.on_object(a)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const int fa = F.on_object(a), fb = F.on_object(b), fc = F.on_object(c);
        for (int g = 0; g < A.hom(b, c).dim(); ++g) {
          Matrix lhs = F.on_hom(a, c) * A.lmul(a, b, c, g);
          Matrix rhs = B.left_mult(fa, fb, fc, F.on_hom(b, c).col(g)) * F.on_hom(a, b);
          if (lhs != rhs)
            return ValidationReport::fail("functor preserves composition",
                                          "F(g f) != F(g) F(f) for g = " + A.label(b, c, g) + " over (" + A.object(a) + "," + A.object(b) + "," +
                                              A.object(c) + ")");
        }
      }
  return ValidationReport::pass();
}

DgFunctor compose_functors(const DgFunctor& G, const DgFunctor& F) {
  if (F.target().get() != G.source().get() && !same_structure(*F.target(), *G.source()))
    throw std::invalid_argument("compose_functors: middle categories differ");
  const int n = F.source()->size();
  std::vector<int> obj(n);
  std::vector<Matrix> maps;
  for (int a = 0; a < n; ++a) obj[a] = G.on_object(F.on_object(a));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) maps.push_back(G.on_hom(F.on_object(a), F.on_object(b)) * F.on_hom(a, b));
  return DgFunctor(F.source(), G.target(), std::move(obj), std::move(maps), G.name() + "∘" + F.name());
}

DgFunctor swap_functor(const CatPtr& AB, const CatPtr& BA, const DgCategory& A, const DgCategory& B) {
  const int na = A.size(), nb = B.size();
  std::vector<int> obj(static_cast<size_t>(na) * nb);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) obj[a * nb + b] = b * na + a;
  std::vector<Matrix> maps;
  for (int x = 0; x < na * nb; ++x)
    for (int y = 0; y < na * nb; ++y) {
      const int a = x / nb, b = x % nb, a2 = y / nb, b2 = y % nb;
      TensorComplex s = tensor(A.hom(a, a2), B.hom(b, b2));
      TensorComplex t = tensor(B.hom(b, b2), A.hom(a, a2));
      Matrix m(A.field(), t.cx.dim(), s.cx.dim());
      for (int k = 0; k < s.cx.dim(); ++k) {
        auto [i, j] = s.pairs[k];
        bool neg = odd(static_cast<long long>(A.deg(a, a2, i)) * B.deg(b, b2, j));
        m(t.at(j, i), k) = neg ? -A.field().one() : A.field().one();
      }
      maps.push_back(std::move(m));
    }
  return DgFunctor(AB, BA, std::move(obj), std::move(maps), "swap");
}

// ---------------------------------------------------------------------------

Vector LinearCategory::compose(int a, int b, int c, const Vector& g, const Vector& f) const {
  const auto& ms = lmul[triple(a, b, c)];
  Vector out(dims[pair(a, c)], field.zero());
  for (size_t k = 0; k < g.size(); ++k) {
    if (g[k].is_zero()) continue;
    Vector v = ms[k].apply(f);
    for (size_t i = 0; i < v.size(); ++i) out[i].add_mul(g[k], v[i]);
  }
  return out;
}

namespace {

LinearCategory linear_shell(const DgCategory& A) {
  LinearCategory C;
  C.field = A.field();
  C.objects = A.objects();
  const size_t n = A.size();
  C.dims.resize(n * n);
  C.reps.resize(n * n);
  C.proj.resize(n * n);
  C.lmul.resize(n * n * n);
  C.ids.resize(n);
  return C;
}

void fill_composition(const DgCategory& A, LinearCategory& C) {
  const int n = A.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        auto& ms = C.lmul[C.triple(a, b, c)];
        const Matrix &Rbc = C.reps[C.pair(b, c)], &Rab = C.reps[C.pair(a, b)];
        const Matrix& Pac = C.proj[C.pair(a, c)];
        for (int g = 0; g < Rbc.cols(); ++g) {
          Matrix full = A.left_mult(a, b, c, Rbc.col(g)) * Rab;
          ms.push_back(Pac * full);
        }
      }
  for (int a = 0; a < n; ++a) C.ids[a] = C.proj[C.pair(a, a)].apply(A.id(a));
}

}  // namespace

LinearCategory z0_category(const DgCategory& A) {
  LinearCategory C = linear_shell(A);
  const int n = A.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Complex& H = A.hom(a, b);
      Matrix Z = kernel_basis(H.diff(0));
      Matrix reps(C.field, H.dim(), Z.cols());
      reps.set_block(H.offset(0), 0, Z);
      C.reps[C.pair(a, b)] = reps;
      C.proj[C.pair(a, b)] = Z.cols() ? left_inverse(reps) : Matrix(C.field, 0, H.dim());
      C.dims[C.pair(a, b)] = Z.cols();
    }
  fill_composition(A, C);
  // cycles compose to cycles by the Leibniz rule; confirm
  for (int a = 0; a < n && C.well_defined; ++a)
    for (int b = 0; b < n && C.well_defined; ++b)
      for (int c = 0; c < n && C.well_defined; ++c) {
        const Matrix& Rbc = C.reps[C.pair(b, c)];
        for (int g = 0; g < Rbc.cols(); ++g) {
          Matrix full = A.left_mult(a, b, c, Rbc.col(g)) * C.reps[C.pair(a, b)];
          if (!(A.hom(a, c).d() * full).is_zero()) C.well_defined = false;
        }
      }
  return C;
}

LinearCategory h0_category(const DgCategory& A) {
  LinearCategory C = linear_shell(A);
  const int n = A.size();
  std::vector<Matrix> bounds(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Complex& H = A.hom(a, b);
      Cohomology h = cohomology(H);
      std::vector<int> zero_classes;
      for (int i = 0; i < h.H.dim(); ++i)
        if (h.H.degree_of(i) == 0) zero_classes.push_back(i);
      C.reps[C.pair(a, b)] = h.reps.select_cols(zero_classes);
      C.proj[C.pair(a, b)] = h.proj.select_rows(zero_classes);
      C.dims[C.pair(a, b)] = static_cast<int>(zero_classes.size());
      Matrix B(C.field, H.dim(), H.dim(-1));
      if (H.dim(-1)) B.set_block(H.offset(0), 0, H.diff(-1));
      bounds[C.pair(a, b)] = B;
    }
  fill_composition(A, C);
  // boundaries composed with cycles must vanish in H^0
  for (int a = 0; a < n && C.well_defined; ++a)
    for (int b = 0; b < n && C.well_defined; ++b)
      for (int c = 0; c < n && C.well_defined; ++c) {
        const Matrix& Pac = C.proj[C.pair(a, c)];
        const Matrix &Bbc = bounds[C.pair(b, c)], &Bab = bounds[C.pair(a, b)];
        for (int g = 0; g < Bbc.cols(); ++g)
          if (!(Pac * A.left_mult(a, b, c, Bbc.col(g)) * C.reps[C.pair(a, b)]).is_zero()) C.well_defined = false;
        const Matrix& Rbc = C.reps[C.pair(b, c)];
        for (int g = 0; g < Rbc.cols(); ++g)
          if (!(Pac * A.left_mult(a, b, c, Rbc.col(g)) * Bab).is_zero()) C.well_defined = false;
      }
  return C;
}

std::vector<Matrix> h0_functor(const DgFunctor& F, const LinearCategory& hs, const LinearCategory& ht) {
  const int n = F.source()->size();
  std::vector<Matrix> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out.push_back(ht.proj[ht.pair(F.on_object(a), F.on_object(b))] * F.on_hom(a, b) * hs.reps[hs.pair(a, b)]);
  return out;
}

IsoSearch find_isomorphism(const LinearCategory& C, int a, int b, const Options& opt) {
  IsoSearch out;
  if (a == b) {
    out.forward = C.ids[a];
    out.backward = C.ids[a];
    out.exhaustive = true;
    out.method = "identity";
    return out;
  }
  const int k = C.dims[C.pair(a, b)], m = C.dims[C.pair(b, a)];
  if (C.dims[C.pair(a, a)] == 0 && C.dims[C.pair(b, b)] == 0) {
    out.forward = Vector(k, C.field.zero());
    out.backward = Vector(m, C.field.zero());
    out.exhaustive = true;
    out.method = "zero objects";
    return out;
  }
  if (m !=C.dims[C.pair(a, a)] || m != C.dims[C.pair(b, b)] || k == 0) {
    out.exhaustive = true;
    out.method = "dimension";
    return out;
  }
  const Field F = C.field;
  auto unit = [&](int dim, int i) {
    Vector v(dim, F.zero());
    v[i] = F.one();
    return v;
  };
  auto right_by = [&](const Vector& x) {  // y ↦ y∘x, H(b,a) -> H(a,a)
    Matrix R(F, m, m);
    for (int j = 0; j < m; ++j) R.set_col(j, C.compose(a, b, a, unit(m, j), x));
    return R;
  };
  auto left_by = [&](const Vector& x) {  // y ↦ x∘y, H(b,a) -> H(b,b)
    Matrix L(F, m, m);
    for (int j = 0; j < m; ++j) L.set_col(j, C.compose(b, a, b, x, unit(m, j)));
    return L;
  };
  auto accept = [&](const Vector& x) { return rank(right_by(x)) == m && rank(left_by(x)) == m; };
  SearchOutcome s = search_coefficients(F, k, accept, opt, 2 * m);
  out.exhaustive = s.exhaustive;
  out.method = s.method;
  if (s.witness) {
    out.forward = *s.witness;
    out.backward = *solve(right_by(*s.witness), C.ids[a]);
  }
  return out;
}

QuasiEquivalenceReport is_quasi_equivalence(const DgFunctor& F, const Options& opt) {
  QuasiEquivalenceReport r;
  const DgCategory &A = *F.source(), &B = *F.target();
  for (int a = 0; a < A.size() && r.hom_qis; ++a)
    for (int b = 0; b < A.size() && r.hom_qis; ++b) {
      GradedMap m(A.hom(a, b), B.hom(F.on_object(a), F.on_object(b)), 0, F.on_hom(a, b));
      if (!is_quasi_iso(m)) {
        r.hom_qis = false;
        r.detail = "F is not a quasi-isomorphism on hom(" + A.object(a) + "," + A.object(b) + ")";
      }
    }
  LinearCategory h = h0_category(B);
  for (int y = 0; y < B.size(); ++y) {
    bool hit = false;
    for (int a = 0; a < A.size() && !hit; ++a) hit = find_isomorphism(h, F.on_object(a), y, opt).forward.has_value();
    if (!hit) {
      r.essentially_surjective = false;
      if (r.detail.empty()) r.detail = "object " + B.object(y) + " is not isomorphic in H^0 to any F(a)";
      break;
    }
  }
  return r;
}

std::optional<Vector> strict_inverse(const DgCategory& A, int a, int b, const Vector& u) {
  const Complex& Hba = A.hom(b, a);
  std::vector<int> zero;
  for (int i = 0; i < Hba.dim(); ++i)
    if (Hba.degree_of(i) == 0) zero.push_back(i);
  Matrix R = A.right_mult(a, b, a, u).select_cols(zero);  // v ↦ v∘u
  Matrix L = A.left_mult(b, a, b, u).select_cols(zero);   // v ↦ u∘v
  Vector rhs = A.id(a);
  rhs.insert(rhs.end(), A.id(b).begin(), A.id(b).end());
  auto v = solve(Matrix::vstack(R, L), rhs);
  if (!v) return std::nullopt;
  Vector full(Hba.dim(), A.field().zero());
  for (size_t i = 0; i < zero.size(); ++i) full[zero[i]] = (*v)[i];
  return full;
}

AdjunctionReport verify_dg_adjunction(const DgFunctor& F, const DgFunctor& G, const std::vector<Matrix>& phi) {
  AdjunctionReport r;
  const DgCategory &A = *F.source(), &B = *F.target();
  const int na = A.size(), nb = B.size();
  if (static_cast<int>(phi.size()) != na * nb) {
    r.failure = "phi has the wrong number of components";
    return r;
  }
  auto P = [&](int a, int b) -> const Matrix& { return phi[static_cast<size_t>(a) * nb + b]; };
  auto pr = [&](int a, int b) { return "(" + A.object(a) + "," + B.object(b) + ")"; };
  std::vector<Matrix> inv(phi.size());
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) {
      const Complex &S = B.hom(F.on_object(a), b), &T = A.hom(a, G.on_object(b));
      const Matrix& m = P(a, b);
      if (m.rows() != T.dim() || m.cols() != S.dim() || !is_homogeneous(S, T, 0, m) || T.d() * m != m * S.d()) {
        r.failure = "phi is a chain map at " + pr(a, b);
        return r;
      }
      auto i = inverse(m);
      if (!i) {
        r.failure = "phi is an isomorphism at " + pr(a, b);
        return r;
      }
      inv[static_cast<size_t>(a) * nb + b] = *i;
    }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      for (int b2 = 0; b2 < nb; ++b2)
        for (int g = 0; g < B.hom(b, b2).dim(); ++g) {
          Matrix lhs = P(a, b2) * B.lmul(F.on_object(a), b, b2, g);
          Matrix rhs = A.left_mult(a, G.on_object(b), G.on_object(b2), G.on_hom(b, b2).col(g)) * P(a, b);
          if (lhs != rhs) {
            r.failure = "naturality in B at " + pr(a, b) + " for " + B.label(b, b2, g);
            return r;
          }
        }
  for (int a2 = 0; a2 < na; ++a2)
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < nb; ++b)
        for (int f = 0; f < A.hom(a2, a).dim(); ++f) {
          Matrix lhs = P(a2, b) * B.right_mult(F.on_object(a2), F.on_object(a), b, F.on_hom(a2, a).col(f));
          Matrix rhs = A.right_mult(a2, a, G.on_object(b), A.basis(a2, a, f)) * P(a, b);
          if (lhs != rhs) {
            r.failure = "naturality in A at " + pr(a, b) + " for " + A.label(a2, a, f);
            return r;
          }
        }
  for (int a = 0; a < na; ++a) r.unit.push_back(P(a, F.on_object(a)).apply(B.id(F.on_object(a))));
  for (int b = 0; b < nb; ++b) r.counit.push_back(inv[static_cast<size_t>(G.on_object(b)) * nb + b].apply(A.id(G.on_object(b))));
  // unit and counit naturality
  for (int a = 0; a < na; ++a)
    for (int a2 = 0; a2 < na; ++a2)
      for (int f = 0; f < A.hom(a, a2).dim(); ++f) {
        const int gfa = G.on_object(F.on_object(a)), gfa2 = G.on_object(F.on_object(a2));
        Vector GFf = G.on_hom(F.on_object(a), F.on_object(a2)).apply(F.on_hom(a, a2).col(f));
        if (A.compose(a, gfa, gfa2, GFf, r.unit[a]) != A.compose(a, a2, gfa2, r.unit[a2], A.basis(a, a2, f))) {
          r.failure = "unit naturality for " + A.label(a, a2, f);
          return r;
        }
      }
  for (int b = 0; b < nb; ++b)
    for (int b2 = 0; b2 < nb; ++b2)
      for (int g = 0; g < B.hom(b, b2).dim(); ++g) {
        const int fgb = F.on_object(G.on_object(b)), fgb2 = F.on_object(G.on_object(b2));
        Vector FGg = F.on_hom(G.on_object(b), G.on_object(b2)).apply(G.on_hom(b, b2).col(g));
        if (B.compose(fgb, b, b2, B.basis(b, b2, g), r.counit[b]) != B.compose(fgb, fgb2, b2, r.counit[b2], FGg)) {
          r.failure = "counit naturality for " + B.label(b, b2, g);
          return r;
        }
      }
  // f = G(f') η_a with f' = φ^{-1}(f)
  r.universal = true;
  for (int a = 0; a < na && r.universal; ++a)
    for (int b = 0; b < nb && r.universal; ++b) {
      const int gb = G.on_object(b), fa = F.on_object(a), gfa = G.on_object(fa);
      for (int u = 0; u < A.hom(a, gb).dim(); ++u) {
        Vector fp = inv[static_cast<size_t>(a) * nb + b].col(u);
        Vector Gfp = G.on_hom(fa, b).apply(fp);
        if (A.compose(a, gfa, gb, Gfp, r.unit[a]) != A.basis(a, gb, u)) {
          r.universal = false;
          r.failure = "universal property at " + pr(a, b);
        }
      }
    }
  if (!r.universal) return r;
  r.triangles = true;
  for (int a = 0; a < na && r.triangles; ++a) {
    const int fa = F.on_object(a), fgfa = F.on_object(G.on_object(fa));
    Vector Feta = F.on_hom(a, G.on_object(fa)).apply(r.unit[a]);
    if (B.compose(fa, fgfa, fa, r.counit[fa], Feta) != B.id(fa)) {
      r.triangles = false;
      r.failure = "triangle identity ε_F ∘ F(η) at " + A.object(a);
    }
  }
  for (int b = 0; b < nb && r.triangles; ++b) {
    const int gb = G.on_object(b), fgb = F.on_object(gb), gfgb = G.on_object(fgb);
    Vector Geps = G.on_hom(fgb, b).apply(r.counit[b]);
    if (A.compose(gb, gfgb, gb, Geps, r.unit[gb]) != A.id(gb)) {
      r.triangles = false;
      r.failure = "triangle identity G(ε) ∘ η_G at " + B.object(b);
    }
  }
  r.ok = r.triangles;
  return r;
}

FullyFaithfulReport fully_faithful_via_unit(const DgFunctor& F, const DgFunctor& G, const std::vector<Matrix>& phi) {
  FullyFaithfulReport r;
  AdjunctionReport adj = verify_dg_adjunction(F, G, phi);
  if (!adj.ok) throw std::invalid_argument("fully_faithful_via_unit: adjunction fails (" + adj.failure + ")");
  const DgCategory& A = *F.source();
  r.unit_iso = true;
  for (int a = 0; a < A.size() && r.unit_iso; ++a)
    r.unit_iso = strict_inverse(A, a, G.on_object(F.on_object(a)), adj.unit[a]).has_value();
  r.homs_iso = true;
  for (int a = 0; a < A.size() && r.homs_iso; ++a)
    for (int b = 0; b < A.size() && r.homs_iso; ++b) {
      const Matrix& m = F.on_hom(a, b);
      r.homs_iso = m.rows() == m.cols() && inverse(m).has_value();
    }
  return r;
}

}  // namespace dgc

namespace dgc {

namespace {

Matrix column_basis(const Matrix& M) {
  Rref r = rref(M);
  return M.select_cols(r.pivots);
}

}  // namespace

GeneratingSet generating_set(const DgCategory& A) {
  const int n = A.size();
  const Field F = A.field();
  auto id_pivot = [&](int a) {
    for (size_t i = 0; i < A.id(a).size(); ++i)
      if (!A.id(a)[i].is_zero()) return static_cast<int>(i);
    return -1;
  };
  auto reduced = [&](int a, int b) {
    std::vector<int> idx;
    int skip = a == b ? id_pivot(a) : -1;
    for (int i = 0; i < A.hom(a, b).dim(); ++i)
      if (i != skip) idx.push_back(i);
    return idx;
  };
  GeneratingSet out;
  out.gens.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      const int dim = A.hom(a, c).dim();
      Matrix M(F, dim, 0);
      for (int b = 0; b < n; ++b)
        for (int g : reduced(b, c))
          for (int f : reduced(a, b)) M = Matrix::hstack(M, Matrix::column(A.lmul(a, b, c, g).col(f)));
      if (a == c) M = Matrix::hstack(M, Matrix::column(A.id(a)));
      Cokernel ck = cokernel(M);
      for (int k = 0; k < ck.section.cols(); ++k) out.gens[A.pair(a, c)].push_back(ck.section.col(k));
    }
  // closure: composites of generators and identities must span every hom
  std::vector<Matrix> span(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Matrix S(F, A.hom(a, b).dim(), 0);
      for (const Vector& g : out.gens[A.pair(a, b)]) S = Matrix::hstack(S, Matrix::column(g));
      if (a == b) S = Matrix::hstack(S, Matrix::column(A.id(a)));
      span[A.pair(a, b)] = column_basis(S);
    }
  for (bool grew = true; grew;) {
    grew = false;
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        Matrix S = span[A.pair(a, c)];
        for (int b = 0; b < n; ++b) {
          const Matrix &Sbc = span[A.pair(b, c)], &Sab = span[A.pair(a, b)];
          for (int j = 0; j < Sbc.cols(); ++j) S = Matrix::hstack(S, A.left_mult(a, b, c, Sbc.col(j)) * Sab);
        }
        Matrix basis = column_basis(S);
        if (basis.cols() > span[A.pair(a, c)].cols()) {
          span[A.pair(a, c)] = basis;
          grew = true;
        }
      }
  }
  bool spans = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) spans = spans && span[A.pair(a, b)].cols() == A.hom(a, b).dim();
  if (!spans) {
    out.minimal = false;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        auto& g = out.gens[A.pair(a, b)];
        g.clear();
        for (int i : reduced(a, b)) g.push_back(A.basis(a, b, i));
      }
  }
  return out;
}

}  // namespace dgc
