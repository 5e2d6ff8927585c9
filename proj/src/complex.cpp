#include "dgc/complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace dgc {

namespace {

std::string deg_str(int n) { return std::to_string(n); }

}  // namespace

Complex::Complex() : Complex(Field::rationals()) {}

Complex::Complex(Field F) : Complex(F, std::vector<int>{}) {}

Complex::Complex(Field F, std::vector<int> degrees) : Complex(F, degrees, Matrix(F, static_cast<int>(degrees.size()), static_cast<int>(degrees.size()))) {}

Complex::Complex(Field F, std::vector<int> degrees, Matrix d) {
  auto impl = std::make_shared<Impl>();
  impl->field = F;
  const int n = static_cast<int>(degrees.size());
  if (!std::is_sorted(degrees.begin(), degrees.end())) throw std::invalid_argument("complex basis must be sorted by degree");
  if (d.rows() != n || d.cols() != n) throw std::invalid_argument("complex differential has the wrong shape");
  if (d.field() != F) throw std::invalid_argument("complex differential over the wrong field");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!d(i, j).is_zero() && degrees[i] != degrees[j] + 1)
        throw std::invalid_argument("differential entry does not raise degree by one");
  for (int i = 0; i < n; ++i) {
    auto [it, fresh] = impl->ranges.try_emplace(degrees[i], i, 0);
    it->second.second++;
  }
  if (n) {
    impl->lo = degrees.front();
    impl->hi = degrees.back();
  }
  impl->degrees = std::move(degrees);
  impl->d = std::move(d);
  impl_ = std::move(impl);
}

Complex Complex::from_dims(Field F, const std::map<int, int>& dims) {
  std::vector<int> degs;
  for (auto [n, k] : dims)
    for (int i = 0; i < k; ++i) degs.push_back(n);
  return Complex(F, degs);
}

Complex Complex::from_blocks(Field F, const std::map<int, int>& dims, const std::map<int, Matrix>& diffs) {
  Complex base = from_dims(F, dims);
  Matrix d(F, base.dim(), base.dim());
  for (const auto& [n, blk] : diffs) {
    if (blk.rows() != base.dim(n + 1) || blk.cols() != base.dim(n))
      throw std::invalid_argument("differential block at degree " + deg_str(n) + " has the wrong shape");
    if (blk.rows() && blk.cols()) d.set_block(base.offset(n + 1), base.offset(n), blk);
  }
  return Complex(F, base.degrees(), d);
}

int Complex::dim(int n) const {
  auto it = impl_->ranges.find(n);
  return it == impl_->ranges.end() ? 0 : it->second.second;
}

int Complex::offset(int n) const {
  auto it = impl_->ranges.lower_bound(n);
  return it == impl_->ranges.end() ? dim() : it->second.first;
}

Matrix Complex::diff(int n) const { return d().block(offset(n + 1), offset(n), dim(n + 1), dim(n)); }

std::map<int, int> Complex::dims() const {
  std::map<int, int> out;
  for (const auto& [n, r] : impl_->ranges) out[n] = r.second;
  return out;
}

bool Complex::operator==(const Complex& o) const {
  return impl_ == o.impl_ || (field() == o.field() && degrees() == o.degrees() && d() == o.d());
}

bool is_homogeneous(const Complex& src, const Complex& tgt, int deg, const Matrix& m) {
  if (m.rows() != tgt.dim() || m.cols() != src.dim()) return false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && tgt.degree_of(i) != src.degree_of(j) + deg) return false;
  return true;
}

GradedMap::GradedMap(Complex src, Complex tgt, int deg, Matrix mat)
    : source(std::move(src)), target(std::move(tgt)), degree(deg), m(std::move(mat)) {
  if (m.rows() != target.dim() || m.cols() != source.dim()) throw std::invalid_argument("graded map has the wrong shape");
  if (!is_homogeneous(source, target, degree, m)) throw std::invalid_argument("graded map is not homogeneous of degree " + deg_str(degree));
}

GradedMap GradedMap::zero(const Complex& src, const Complex& tgt, int deg) {
  return GradedMap(src, tgt, deg, Matrix(src.field(), tgt.dim(), src.dim()));
}

GradedMap GradedMap::identity(const Complex& c) { return GradedMap(c, c, 0, Matrix::identity(c.field(), c.dim())); }

Matrix GradedMap::block(int n) const {
  return m.block(target.offset(n + degree), source.offset(n), target.dim(n + degree), source.dim(n));
}

bool GradedMap::is_closed() const { return differential_of_map(*this).m.is_zero(); }

GradedMap compose(const GradedMap& g, const GradedMap& f) {
  if (g.source.dim() != f.target.dim()) throw std::invalid_argument("compose: incompatible graded maps");
  return GradedMap(f.source, g.target, f.degree + g.degree, g.m * f.m);
}

GradedMap operator+(const GradedMap& a, const GradedMap& b) {
  if (a.degree != b.degree) throw std::invalid_argument("sum of graded maps of different degree");
  return GradedMap(a.source, a.target, a.degree, a.m + b.m);
}

GradedMap operator-(const GradedMap& a, const GradedMap& b) {
  if (a.degree != b.degree) throw std::invalid_argument("difference of graded maps of different degree");
  return GradedMap(a.source, a.target, a.degree, a.m - b.m);
}

GradedMap scale(const GradedMap& a, const Scalar& s) { return GradedMap(a.source, a.target, a.degree, a.m.scaled(s)); }

ValidationReport validate_complex(const Complex& C) {
  Matrix dd = C.d() * C.d();
  for (int n = C.lo(); n <= C.hi(); ++n) {
    int r0 = C.offset(n + 2), c0 = C.offset(n);
    if (!dd.block(r0, c0, C.dim(n + 2), C.dim(n)).is_zero())
      return ValidationReport::fail("d^2 = 0", "d^" + deg_str(n + 1) + " d^" + deg_str(n) + " != 0 at degree " + deg_str(n + 1));
  }
  return ValidationReport::pass();
}

Matrix sign_diag(const Complex& C, int factor) {
  Matrix s(C.field(), C.dim(), C.dim());
  for (int i = 0; i < C.dim(); ++i) s(i, i) = odd(static_cast<long long>(factor) * C.degree_of(i)) ? -C.field().one() : C.field().one();
  return s;
}

GradedMap differential_of_map(const GradedMap& f) {
  Matrix m = f.target.d() * f.m;
  Matrix r = f.m * f.source.d();
  if (odd(f.degree))
    m += r;
  else
    m -= r;
  return GradedMap(f.source, f.target, f.degree + 1, std::move(m));
}

Cohomology cohomology(const Complex& C) {
  Field F = C.field();
  std::vector<int> hdeg;
  std::vector<std::pair<int, Matrix>> reps_n, proj_n;
  for (int n = C.lo(); n <= C.hi(); ++n) {
    const int dn = C.dim(n);
    if (!dn) continue;
    Matrix Z = kernel_basis(C.diff(n));
    if (!Z.cols()) continue;
    Matrix Zl = left_inverse(Z);
    Matrix B = C.diff(n - 1);
    Matrix X = Zl * B;  // boundaries in cycle coordinates
    Cokernel ck = cokernel(X);
    const int h = ck.section.cols();
    if (!h) continue;
    for (int i = 0; i < h; ++i) hdeg.push_back(n);
    reps_n.emplace_back(n, Z * ck.section);
    proj_n.emplace_back(n, ck.projection * Zl);
  }
  Cohomology out;
  out.H = Complex(F, hdeg);
  out.reps = Matrix(F, C.dim(), out.H.dim());
  out.proj = Matrix(F, out.H.dim(), C.dim());
  int col = 0;
  for (size_t k = 0; k < reps_n.size(); ++k) {
    int n = reps_n[k].first;
    out.reps.set_block(C.offset(n), col, reps_n[k].second);
    out.proj.set_block(col, C.offset(n), proj_n[k].second);
    col += reps_n[k].second.cols();
  }
  return out;
}

Matrix induced_map(const GradedMap& f, const Cohomology& hs, const Cohomology& ht) { return ht.proj * f.m * hs.reps; }

Matrix induced_map(const GradedMap& f) { return induced_map(f, cohomology(f.source), cohomology(f.target)); }

Complex shift(const Complex& C, int n) {
  std::vector<int> degs = C.degrees();
  for (int& k : degs) k -= n;
  return Complex(C.field(), degs, odd(n) ? -C.d() : C.d());
}

Matrix DirectSum::inclusion(int i) const {
  Matrix m(cx.field(), cx.dim(), static_cast<int>(pos[i].size()));
  for (size_t j = 0; j < pos[i].size(); ++j) m(pos[i][j], static_cast<int>(j)) = cx.field().one();
  return m;
}

Matrix DirectSum::projection(int i) const {
  Matrix m(cx.field(), static_cast<int>(pos[i].size()), cx.dim());
  for (size_t j = 0; j < pos[i].size(); ++j) m(static_cast<int>(j), pos[i][j]) = cx.field().one();
  return m;
}

DirectSum direct_sum(const std::vector<Complex>& parts) {
  Field F = parts.empty() ? Field() : parts[0].field();
  struct Key {
    int deg, summand, local;
  };
  std::vector<Key> keys;
  for (size_t s = 0; s < parts.size(); ++s) {
    if (parts[s].field() != F) throw std::invalid_argument("direct sum over mixed fields");
    for (int j = 0; j < parts[s].dim(); ++j) keys.push_back({parts[s].degree_of(j), static_cast<int>(s), j});
  }
  std::stable_sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    if (a.summand != b.summand) return a.summand < b.summand;
    return a.local < b.local;
  });
  DirectSum out;
  out.pos.resize(parts.size());
  for (size_t s = 0; s < parts.size(); ++s) out.pos[s].resize(parts[s].dim());
  std::vector<int> degs;
  for (size_t g = 0; g < keys.size(); ++g) {
    out.pos[keys[g].summand][keys[g].local] = static_cast<int>(g);
    degs.push_back(keys[g].deg);
  }
  Matrix d(F, static_cast<int>(degs.size()), static_cast<int>(degs.size()));
  for (size_t s = 0; s < parts.size(); ++s) {
    const Matrix& ds = parts[s].d();
    for (int i = 0; i < ds.rows(); ++i)
      for (int j = 0; j < ds.cols(); ++j)
        if (!ds(i, j).is_zero()) d(out.pos[s][i], out.pos[s][j]) = ds(i, j);
  }
  out.cx = Complex(F, degs, d);
  return out;
}

Cone cone(const ChainMap& f) {
  if (f.degree != 0 || !f.is_closed()) throw std::invalid_argument("cone: map is not a closed degree-0 map");
  Complex V1 = shift(f.source, 1);  // differential already -d_V
  DirectSum ds = direct_sum({V1, f.target});
  Matrix d = ds.cx.d();
  for (int i = 0; i < f.m.rows(); ++i)
    for (int j = 0; j < f.m.cols(); ++j)
      if (!f.m(i, j).is_zero()) d(ds.pos[1][i], ds.pos[0][j]) = f.m(i, j);
  Cone out;
  out.cx = Complex(ds.cx.field(), ds.cx.degrees(), d);
  out.layout = ds;
  out.layout.cx = out.cx;
  out.inclusion = GradedMap(f.target, out.cx, 0, ds.inclusion(1));
  out.projection = GradedMap(out.cx, V1, 0, ds.projection(0));
  return out;
}

TensorComplex tensor(const Complex& C, const Complex& D) {
  Field F = C.field();
  TensorComplex out;
  out.left = C;
  out.right = D;
  struct Key {
    int deg, x, y;
  };
  std::vector<Key> keys;
  for (int x = 0; x < C.dim(); ++x)
    for (int y = 0; y < D.dim(); ++y) keys.push_back({C.degree_of(x) + D.degree_of(y), x, y});
  std::stable_sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  out.index.assign(static_cast<size_t>(C.dim()) * D.dim(), -1);
  std::vector<int> degs;
  for (size_t g = 0; g < keys.size(); ++g) {
    out.index[static_cast<size_t>(keys[g].x) * D.dim() + keys[g].y] = static_cast<int>(g);
    out.pairs.emplace_back(keys[g].x, keys[g].y);
    degs.push_back(keys[g].deg);
  }
  const int N = static_cast<int>(degs.size());
  Matrix d(F, N, N);
  for (int g = 0; g < N; ++g) {
    auto [x, y] = out.pairs[g];
    for (int x2 = 0; x2 < C.dim(); ++x2)
      if (!C.d()(x2, x).is_zero()) d(out.at(x2, y), g) += C.d()(x2, x);
    bool neg = odd(C.degree_of(x));
    for (int y2 = 0; y2 < D.dim(); ++y2)
      if (!D.d()(y2, y).is_zero()) {
        if (neg)
          d(out.at(x, y2), g) -= D.d()(y2, y);
        else
          d(out.at(x, y2), g) += D.d()(y2, y);
      }
  }
  out.cx = Complex(F, degs, d);
  return out;
}

GradedMap tensor_maps(const TensorComplex& src, const TensorComplex& tgt, const GradedMap& f, const GradedMap& g) {
  Field F = src.cx.field();
  Matrix m(F, tgt.cx.dim(), src.cx.dim());
  for (int k = 0; k < src.cx.dim(); ++k) {
    auto [x, y] = src.pairs[k];
    bool neg = odd(static_cast<long long>(g.degree) * src.left.degree_of(x));
    for (int x2 = 0; x2 < f.m.rows(); ++x2) {
      const Scalar& a = f.m(x2, x);
      if (a.is_zero()) continue;
      for (int y2 = 0; y2 < g.m.rows(); ++y2) {
        const Scalar& b = g.m(y2, y);
        if (b.is_zero()) continue;
        Scalar v = a * b;
        if (neg) v.negate();
        m(tgt.at(x2, y2), k) += v;
      }
    }
  }
  return GradedMap(src.cx, tgt.cx, f.degree + g.degree, m);
}

Vector HomComplex::coords(const Matrix& m) const {
  if (m.rows() != target.dim() || m.cols() != source.dim()) throw std::invalid_argument("HomComplex::coords: wrong shape");
  Vector v(cx.dim(), cx.field().zero());
  for (int y = 0; y < m.rows(); ++y)
    for (int x = 0; x < m.cols(); ++x)
      if (!m(y, x).is_zero()) v[at(y, x)] = m(y, x);
  return v;
}

Matrix HomComplex::map_of(const Vector& v) const {
  Matrix m(cx.field(), target.dim(), source.dim());
  for (int k = 0; k < cx.dim(); ++k)
    if (!v[k].is_zero()) m(units[k].first, units[k].second) = v[k];
  return m;
}

HomComplex internal_hom(const Complex& V, const Complex& W) {
  Field F = V.field();
  HomComplex out;
  out.source = V;
  out.target = W;
  struct Key {
    int deg, x, y;
  };
  std::vector<Key> keys;
  for (int x = 0; x < V.dim(); ++x)
    for (int y = 0; y < W.dim(); ++y) keys.push_back({W.degree_of(y) - V.degree_of(x), x, y});
  std::stable_sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  out.index.assign(static_cast<size_t>(V.dim()) * W.dim(), -1);
  std::vector<int> degs;
  for (size_t g = 0; g < keys.size(); ++g) {
    out.index[static_cast<size_t>(keys[g].y) * V.dim() + keys[g].x] = static_cast<int>(g);
    out.units.emplace_back(keys[g].y, keys[g].x);
    degs.push_back(keys[g].deg);
  }
  const int N = static_cast<int>(degs.size());
  Matrix d(F, N, N);
  for (int g = 0; g < N; ++g) {
    auto [y, x] = out.units[g];
    const int n = degs[g];
    // d_W E_{y,x}: entries (y2, x) with coefficient dW(y2,y)
    for (int y2 = 0; y2 < W.dim(); ++y2)
      if (!W.d()(y2, y).is_zero()) d(out.at(y2, x), g) += W.d()(y2, y);
    // -(-1)^n E_{y,x} d_V: entries (y, x0) with coefficient dV(x, x0)
    for (int x0 = 0; x0 < V.dim(); ++x0)
      if (!V.d()(x, x0).is_zero()) {
        if (odd(n))
          d(out.at(y, x0), g) += V.d()(x, x0);
        else
          d(out.at(y, x0), g) -= V.d()(x, x0);
      }
  }
  out.cx = Complex(F, degs, d);
  return out;
}

GradedMap hom_operator(const HomComplex& from, const HomComplex& to, const GradedMap& post, const GradedMap& pre,
                       int sign_factor) {
  Field F = from.cx.field();
  if (post.source.dim() != from.target.dim() || post.target.dim() != to.target.dim() ||
      pre.target.dim() != from.source.dim() || pre.source.dim() != to.source.dim())
    throw std::invalid_argument("hom_operator: shapes do not match");
  Matrix m(F, to.cx.dim(), from.cx.dim());
  for (int k = 0; k < from.cx.dim(); ++k) {
    auto [y, x] = from.units[k];
    bool neg = odd(static_cast<long long>(sign_factor) * from.cx.degree_of(k));
    // post ∘ E_{y,x} ∘ pre = (post column y) (pre row x)
    for (int y2 = 0; y2 < post.m.rows(); ++y2) {
      const Scalar& a = post.m(y2, y);
      if (a.is_zero()) continue;
      for (int x2 = 0; x2 < pre.m.cols(); ++x2) {
        const Scalar& b = pre.m(x, x2);
        if (b.is_zero()) continue;
        Scalar v = a * b;
        if (neg) v.negate();
        m(to.at(y2, x2), k) += v;
      }
    }
  }
  return GradedMap(from.cx, to.cx, post.degree + pre.degree, m);
}

Iso hom_tensor_adjunction(const Complex& Z, const Complex& V, const Complex& W) {
  TensorComplex ZV = tensor(Z, V);
  HomComplex lhs = internal_hom(ZV.cx, W);
  HomComplex VW = internal_hom(V, W);
  HomComplex rhs = internal_hom(Z, VW.cx);
  Field F = Z.field();
  Matrix fwd(F, rhs.cx.dim(), lhs.cx.dim());
  for (int k = 0; k < lhs.cx.dim(); ++k) {
    auto [w, zv] = lhs.units[k];
    auto [z, v] = ZV.pairs[zv];
    fwd(rhs.at(VW.at(w, v), z), k) = F.one();
  }
  Iso out;
  out.forward = GradedMap(lhs.cx, rhs.cx, 0, fwd);
  out.backward = GradedMap(rhs.cx, lhs.cx, 0, fwd.transpose());
  verify_iso(out);
  return out;
}

bool verify_iso(Iso& w) {
  w.verified = w.forward.degree == 0 && w.backward.degree == 0 && w.forward.is_closed() && w.backward.is_closed() &&
               compose(w.backward, w.forward).m.is_identity() && compose(w.forward, w.backward).m.is_identity();
  return w.verified;
}

bool is_acyclic(const Complex& C) { return cohomology(C).H.dim() == 0; }

bool induces_iso_in_cohomology(const ChainMap& f) {
  Cohomology hs = cohomology(f.source), ht = cohomology(f.target);
  if (hs.H.degrees() != ht.H.degrees()) return false;
  Matrix h = induced_map(f, hs, ht);
  return rank(h) == h.rows();
}

bool is_quasi_iso(const ChainMap& f) {
  bool by_cone = is_acyclic(cone(f).cx);
  bool by_h = induces_iso_in_cohomology(f);
  if (by_cone != by_h) throw std::logic_error("is_quasi_iso: cone and cohomology criteria disagree");
  return by_cone;
}

std::optional<GradedMap> contraction(const Complex& C) {
  Field F = C.field();
  Matrix s(F, C.dim(), C.dim());
  // For each degree k: B^k = im d^{k-1}; K^k a complement with d: K^k -> B^{k+1} iso.
  std::map<int, Matrix> bases, comps;
  for (int k = C.lo() - 1; k <= C.hi() + 1; ++k) {
    const int n = C.dim(k);
    if (!n) continue;
    Matrix D = C.diff(k - 1);
    Rref r = rref(D);
    Matrix Bk = D.select_cols(r.pivots);
    Cokernel ck = cokernel(Bk);
    bases[k] = Bk;
    comps[k] = ck.section;
  }
  for (int k = C.lo(); k <= C.hi(); ++k) {
    if (!C.dim(k)) continue;
    const Matrix& Kk = comps[k];
    Matrix dK = C.diff(k) * Kk;  // in C^{k+1}
    const int nb = C.dim(k + 1) ? bases[k + 1].cols() : 0;
    if (dK.cols() != nb) return std::nullopt;
    if (!nb) continue;
    Matrix Bn = bases[k + 1];
    Matrix basis = Matrix::hstack(Bn, comps[k + 1]);
    Matrix binv = *inverse(basis);
    Matrix bcoords = binv.block(0, 0, nb, C.dim(k + 1));
    auto Dk = solve(Bn, dK);  // coordinates of d(K^k) in B^{k+1}
    if (!Dk) return std::nullopt;
    auto Dinv = inverse(*Dk);
    if (!Dinv) return std::nullopt;
    Matrix blk = Kk * *Dinv * bcoords;  // C^{k+1} -> C^k
    s.set_block(C.offset(k), C.offset(k + 1), blk);
  }
  GradedMap out(C, C, -1, s);
  GradedMap ds = compose(GradedMap(C, C, 1, C.d()), out);
  GradedMap sd = compose(out, GradedMap(C, C, 1, C.d()));
  if (!(ds.m + sd.m).is_identity()) return std::nullopt;
  return out;
}

bool is_null_homotopy(const GradedMap& f, const GradedMap& h) {
  // f = d h + (-1)^{|h|}... for degree-0 f and degree -1 h: f = d h + h d
  return f.m == f.target.d() * h.m + h.m * f.source.d();
}

HomotopyInverse homotopy_inverse(const ChainMap& f) {
  if (!is_quasi_iso(f)) throw std::invalid_argument("homotopy_inverse: map is not a quasi-isomorphism");
  Cone c = cone(f);
  auto s = contraction(c.cx);
  if (!s) throw std::logic_error("homotopy_inverse: acyclic cone admits no contraction");
  const Complex& V = f.source;
  const Complex& W = f.target;
  Field F = V.field();
  const auto& pv = c.layout.pos[0];
  const auto& pw = c.layout.pos[1];
  Matrix a(F, V.dim(), V.dim()), b(F, V.dim(), W.dim()), e(F, W.dim(), W.dim());
  for (int i = 0; i < V.dim(); ++i) {
    for (int j = 0; j < V.dim(); ++j) a(i, j) = s->m(pv[i], pv[j]);
    for (int j = 0; j < W.dim(); ++j) b(i, j) = s->m(pv[i], pw[j]);
  }
  for (int i = 0; i < W.dim(); ++i)
    for (int j = 0; j < W.dim(); ++j) e(i, j) = -s->m(pw[i], pw[j]);
  HomotopyInverse out{GradedMap(W, V, 0, b), GradedMap(V, V, -1, a), GradedMap(W, W, -1, e)};
  GradedMap gf = compose(out.g, f), fg = compose(f, out.g);
  if (!is_null_homotopy(gf - GradedMap::identity(V), out.h_src) || !is_null_homotopy(fg - GradedMap::identity(W), out.h_tgt) ||
      !out.g.is_closed())
    throw std::logic_error("homotopy_inverse: homotopy equations failed");
  return out;
}

Subcomplex subcomplex_from_spans(const Complex& ambient, const std::map<int, Matrix>& spans) {
  Field F = ambient.field();
  std::vector<int> degs;
  std::vector<std::pair<int, Matrix>> blocks;
  for (const auto& [n, S] : spans) {
    if (S.rows() != ambient.dim(n)) throw std::invalid_argument("subcomplex span has the wrong row count");
    for (int j = 0; j < S.cols(); ++j) degs.push_back(n);
    if (S.cols()) blocks.emplace_back(n, S);
  }
  const int k = static_cast<int>(degs.size());
  Matrix incl(F, ambient.dim(), k);
  int col = 0;
  for (const auto& [n, S] : blocks) {
    incl.set_block(ambient.offset(n), col, S);
    col += S.cols();
  }
  Matrix coords = k ? left_inverse(incl) : Matrix(F, 0, ambient.dim());
  Matrix dsub = coords * ambient.d() * incl;
  if (!(incl * dsub == ambient.d() * incl)) throw std::logic_error("subcomplex: span is not stable under the differential");
  Subcomplex out;
  out.cx = Complex(F, degs, dsub);
  out.incl = std::move(incl);
  out.coords = std::move(coords);
  return out;
}

Quotient quotient_by_spans(const Complex& ambient, const std::map<int, Matrix>& rels) {
  Field F = ambient.field();
  std::vector<int> degs;
  std::vector<std::tuple<int, Matrix, Matrix>> blocks;
  for (int n = ambient.lo(); n <= ambient.hi(); ++n) {
    const int dn = ambient.dim(n);
    if (!dn) continue;
    auto it = rels.find(n);
    Matrix R = it == rels.end() ? Matrix(F, dn, 0) : it->second;
    if (R.rows() != dn) throw std::invalid_argument("quotient relation span has the wrong row count");
    Cokernel ck = cokernel(R);
    for (int j = 0; j < ck.section.cols(); ++j) degs.push_back(n);
    blocks.emplace_back(n, ck.projection, ck.section);
  }
  const int q = static_cast<int>(degs.size());
  Matrix P(F, q, ambient.dim()), S(F, ambient.dim(), q);
  int row = 0;
  for (const auto& [n, Pn, Sn] : blocks) {
    if (!Pn.rows()) continue;
    P.set_block(row, ambient.offset(n), Pn);
    S.set_block(ambient.offset(n), row, Sn);
    row += Pn.rows();
  }
  Matrix dq = P * ambient.d() * S;
  // relation span must be d-stable: P d R = 0
  for (const auto& [n, R] : rels) {
    if (!R.cols()) continue;
    Matrix full(F, ambient.dim(), R.cols());
    full.set_block(ambient.offset(n), 0, R);
    if (!(P * ambient.d() * full).is_zero()) throw std::logic_error("quotient: relations are not stable under the differential");
  }
  Quotient out;
  out.cx = Complex(F, degs, dq);
  out.proj = std::move(P);
  out.section = std::move(S);
  return out;
}

int euler_characteristic(const Complex& C) {
  int chi = 0;
  for (int d : C.degrees()) chi += odd(d) ? -1 : 1;
  return chi;
}

}  // namespace dgc
