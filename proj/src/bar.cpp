#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "dgc/derived.hpp"

namespace dgc {

bool is_acyclic_module(const Bimodule& M) { return is_acyclic(M); }
bool is_qis_morphism(const BimoduleMorphism& phi) { return is_qis(phi); }

namespace {

/// Ā(x,y): hom(x,y) with the identity line quotiented out on the diagonal. The
/// complement of the identity pivot serves as the basis.
struct Reduced {
  const DgCategory* A = nullptr;
  std::vector<Complex> cx;
  std::vector<std::vector<int>> keep;
  std::vector<int> pivot;

  explicit Reduced(const DgCategory& C) : A(&C) {
    const int n = C.size();
    const Field K = C.field();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const Complex& H = C.hom(x, y);
        int p = -1;
        if (x == y)
          for (int i = 0; i < H.dim() && p < 0; ++i)
            if (!C.id(x)[i].is_zero()) p = i;
        pivot.push_back(p);
        std::vector<int> k;
        std::vector<int> degs;
        for (int i = 0; i < H.dim(); ++i)
          if (i != p) {
            k.push_back(i);
            degs.push_back(H.degree_of(i));
          }
        keep.push_back(k);
        Matrix d(K, static_cast<int>(k.size()), static_cast<int>(k.size()));
        for (size_t j = 0; j < k.size(); ++j) d.set_col(static_cast<int>(j), project(x, y, H.d().col(k[j])));
        cx.emplace_back(K, degs, d);
      }
  }
  size_t pair(int x, int y) const { return A->pair(x, y); }
  const Complex& at(int x, int y) const { return cx[pair(x, y)]; }
  int full(int x, int y, int i) const { return keep[pair(x, y)][i]; }
  Vector project(int x, int y, const Vector& v) const {
    const int p = pivot[pair(x, y)];
    const std::vector<int>& k = keep[pair(x, y)];
    Vector out(k.size(), A->field().zero());
    if (p < 0) {
      for (size_t j = 0; j < k.size(); ++j) out[j] = v[k[j]];
      return out;
    }
    const Vector& id = A->id(x);
    Scalar c = v[p] / id[p];
    for (size_t j = 0; j < k.size(); ++j) out[j] = v[k[j]] - c * id[k[j]];
    return out;
  }
};

bool is_unit(const DgCategory& C) { return C.size() == 1 && C.hom(0, 0).dim() == 1; }

/// A word g0 | g1..gp | t | f1..fq | f0 in component (b,a). al = α_0..α_p, be = β_0..β_q,
/// ix holds one basis index per factor.
struct Word {
  std::vector<int> al, be, ix;
  int p() const { return static_cast<int>(al.size()) - 1; }
  int q() const { return static_cast<int>(be.size()) - 1; }
  std::vector<int> key() const {
    std::vector<int> k{p(), q()};
    k.insert(k.end(), al.begin(), al.end());
    k.insert(k.end(), be.begin(), be.end());
    k.insert(k.end(), ix.begin(), ix.end());
    return k;
  }
};

class Bar {
 public:
  Bar(const Bimodule& T) : T_(T), A_(*T.left_cat()), B_(*T.right_cat()), ra_(A_), rb_(B_), K_(T.field()) {}

  const Complex& factor(const Word& w, int i, int b, int a) const {
    const int p = w.p(), q = w.q();
    if (i == 0) return A_.hom(w.al[0], a);
    if (i <= p) return ra_.at(w.al[i], w.al[i - 1]);
    if (i == p + 1) return T_.comp(w.be[0], w.al[p]);
    if (i <= p + q + 1) {
      const int j = i - p - 1;
      return rb_.at(w.be[j], w.be[j - 1]);
    }
    return B_.hom(b, w.be[q]);
  }
  bool letter(const Word& w, int i) const { return i >= 1 && i != w.p() + 1 && i <= w.p() + w.q() + 1; }

  int degree(const Word& w, int b, int a) const {
    int d = -(w.p() + w.q());
    for (size_t i = 0; i < w.ix.size(); ++i) d += factor(w, static_cast<int>(i), b, a).degree_of(w.ix[i]);
    return d;
  }

  /// Object chains with every factor space nonzero; visit(al, be) for each.
  void chains(int b, int a, int n, const std::function<void(const std::vector<int>&, const std::vector<int>&)>& visit) const {
    const int na = A_.size(), nb = B_.size();
    std::vector<int> al, be;
    std::function<void(int)> grow_b = [&](int left) {
      const int last = be.back();
      if (left == 0) {
        if (B_.hom(b, last).dim() > 0) visit(al, be);
        return;
      }
      for (int y = 0; y < nb; ++y)
        if (rb_.at(y, last).dim() > 0) {
          be.push_back(y);
          grow_b(left - 1);
          be.pop_back();
        }
    };
    std::function<void(int, int)> grow_a = [&](int left, int q) {
      const int last = al.back();
      if (left == 0) {
        for (int y = 0; y < nb; ++y)
          if (T_.comp(y, last).dim() > 0) {
            be.assign(1, y);
            grow_b(q);
          }
        return;
      }
      for (int x = 0; x < na; ++x)
        if (ra_.at(x, last).dim() > 0) {
          al.push_back(x);
          grow_a(left - 1, q);
          al.pop_back();
        }
    };
    for (int p = 0; p <= n; ++p)
      for (int x = 0; x < na; ++x)
        if (A_.hom(x, a).dim() > 0) {
          al.assign(1, x);
          grow_a(p, n - p);
        }
  }

  std::vector<Word> words(int b, int a, int maxlen) const {
    std::vector<Word> out;
    for (int n = 0; n <= maxlen; ++n)
      chains(b, a, n, [&](const std::vector<int>& al, const std::vector<int>& be) {
        Word w{al, be, std::vector<int>(al.size() + be.size() + 1, 0)};
        std::vector<int> dims;
        for (size_t i = 0; i < w.ix.size(); ++i) dims.push_back(factor(w, static_cast<int>(i), b, a).dim());
        std::function<void(size_t)> fill = [&](size_t i) {
          if (i == w.ix.size()) {
            out.push_back(w);
            return;
          }
          for (int k = 0; k < dims[i]; ++k) {
            w.ix[i] = k;
            fill(i + 1);
          }
        };
        fill(0);
      });
    return out;
  }

  /// Interior words of length n: generators of the free layer.
  long long generators(int n) const {
    long long gens = 0;
    const int na = A_.size(), nb = B_.size();
    // each interior chain appears once as the word with identity outer factors
    for (int b = 0; b < nb; ++b)
      for (int a = 0; a < na; ++a)
        chains(b, a, n, [&](const std::vector<int>& al, const std::vector<int>& be) {
          if (al[0] != a || be.back() != b) return;
          Word w{al, be, std::vector<int>(al.size() + be.size() + 1, 0)};
          long long inner = 1;
          for (size_t i = 1; i + 1 < w.ix.size(); ++i) inner *= factor(w, static_cast<int>(i), b, a).dim();
          gens += inner;
        });
    return gens;
  }

  /// d(w) as (word, coefficient) terms, all in component (b,a).
  std::vector<std::pair<Word, Scalar>> differential(const Word& w, int b, int a) const {
    std::vector<std::pair<Word, Scalar>> out;
    const int len = static_cast<int>(w.ix.size());
    std::vector<int> wt(len);
    for (int i = 0; i < len; ++i) wt[i] = factor(w, i, b, a).degree_of(w.ix[i]) - 1;
    int prefix = 0;
    for (int i = 0; i < len; ++i) {
      const Complex& X = factor(w, i, b, a);
      Vector col = X.d().col(w.ix[i]);
      const bool neg = odd(prefix);
      for (int r = 0; r < X.dim(); ++r)
        if (!col[r].is_zero()) {
          Word v = w;
          v.ix[i] = r;
          out.emplace_back(v, neg ? -col[r] : col[r]);
        }
      if (i + 1 < len && (letter(w, i) || letter(w, i + 1))) {
        const bool mneg = !odd(prefix + wt[i]);
        for (auto& [v, c] : merge(w, i, b, a)) out.emplace_back(v, mneg ? -c : c);
      }
      prefix += wt[i];
    }
    return out;
  }

  /// Product of factors i and i+1.
  std::vector<std::pair<Word, Scalar>> merge(const Word& w, int i, int b, int a) const {
    const int p = w.p(), q = w.q();
    Vector v;
    Word u = w;
    u.ix.erase(u.ix.begin() + i + 1);
    if (i == 0) {  // g0 g1
      const int x0 = w.al[0], x1 = w.al[1];
      v = A_.lmul(x1, x0, a, w.ix[0]).col(ra_.full(x1, x0, w.ix[1]));
      u.al.erase(u.al.begin());
    } else if (i < p) {  // g_i g_{i+1}
      const int xm = w.al[i - 1], xi = w.al[i], xn = w.al[i + 1];
      v = ra_.project(xn, xm, A_.lmul(xn, xi, xm, ra_.full(xi, xm, w.ix[i])).col(ra_.full(xn, xi, w.ix[i + 1])));
      u.al.erase(u.al.begin() + i);
    } else if (i == p) {  // g_p t
      const int xp = w.al[p], xm = w.al[p - 1];
      v = T_.lact(w.be[0], xp, xm, ra_.full(xp, xm, w.ix[p])).col(w.ix[p + 1]);
      u.al.pop_back();
    } else if (i == p + 1) {  // t f_1
      const int y0 = w.be[0], y1 = w.be[1];
      v = T_.ract(y1, y0, w.al[p], rb_.full(y1, y0, w.ix[p + 2])).col(w.ix[p + 1]);
      u.be.erase(u.be.begin());
    } else if (i < p + q + 1) {  // f_j f_{j+1}
      const int j = i - p - 1;
      const int ym = w.be[j - 1], yj = w.be[j], yn = w.be[j + 1];
      v = rb_.project(yn, ym, B_.lmul(yn, yj, ym, rb_.full(yj, ym, w.ix[i])).col(rb_.full(yn, yj, w.ix[i + 1])));
      u.be.erase(u.be.begin() + j);
    } else {  // f_q f0
      const int yq = w.be[q], ym = w.be[q - 1];
      v = B_.lmul(b, yq, ym, rb_.full(yq, ym, w.ix[i])).col(w.ix[i + 1]);
      u.be.pop_back();
    }
    std::vector<std::pair<Word, Scalar>> out;
    for (size_t r = 0; r < v.size(); ++r)
      if (!v[r].is_zero()) {
        Word x = u;
        x.ix[i] = static_cast<int>(r);
        out.emplace_back(x, v[r]);
      }
    return out;
  }

  const Bimodule& T_;
  const DgCategory &A_, &B_;
  Reduced ra_, rb_;
  Field K_;
};

struct Component {
  std::vector<Word> words;
  std::map<std::vector<int>, int> index;
  Complex cx;
  std::vector<int> length;
};

bool same_module(const Bimodule& X, const Bimodule& Y) {
  const auto &x = X.data(), &y = Y.data();
  return same_category(x.A, y.A) && same_category(x.B, y.B) && x.comps == y.comps && x.left == y.left && x.right == y.right;
}

ResolutionResult identity_resolution(const Bimodule& M, std::string reason) {
  ResolutionResult r;
  r.resolved = M;
  r.qis = BimoduleMorphism::identity(M);
  r.certificate.kind = "identity";
  r.certificate.reason = std::move(reason);
  r.certificate.terminated = true;
  for (const Complex& c : M.comps()) r.certificate.length.emplace_back(c.dim(), 0);
  r.certified = true;
  r.qis_verified = true;
  for (const Complex& c : M.comps())
    for (int d : c.degrees())
      if (std::find(r.verified_degrees.begin(), r.verified_degrees.end(), d) == r.verified_degrees.end()) r.verified_degrees.push_back(d);
  std::sort(r.verified_degrees.begin(), r.verified_degrees.end());
  return r;
}

std::vector<int> iso_degrees(const BimoduleMorphism& q) {
  std::map<int, bool> ok;
  for (int b = 0; b < q.source.nb(); ++b)
    for (int a = 0; a < q.source.na(); ++a) {
      GradedMap g = q.graded(b, a);
      Cohomology hs = cohomology(g.source), ht = cohomology(g.target);
      Matrix m = induced_map(g, hs, ht);
      for (const Complex* c : {&hs.H, &ht.H})
        for (int d : c->degrees()) ok.emplace(d, true);
      for (auto& [d, good] : ok) {
        const int r = ht.H.dim(d), c = hs.H.dim(d);
        if (r != c) {
          good = false;
          continue;
        }
        if (r == 0) continue;
        Matrix blk = m.block(ht.H.offset(d), hs.H.offset(d), r, c);
        if (rank(blk) != r) good = false;
      }
    }
  std::vector<int> out;
  for (auto& [d, good] : ok)
    if (good) out.push_back(d);
  return out;
}

}  // namespace

std::optional<int> reduced_nilpotency_index(const DgCategory& A, int bound) {
  Reduced R(A);
  const int n = A.size();
  const Field K = A.field();
  // span of composites of length m, per pair (source, target)
  std::vector<Matrix> cur(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& k = R.keep[A.pair(x, y)];
      Matrix m(K, A.hom(x, y).dim(), static_cast<int>(k.size()));
      for (size_t j = 0; j < k.size(); ++j) m(k[j], static_cast<int>(j)) = K.one();
      cur[A.pair(x, y)] = m;
    }
  for (int len = 1; len <= bound; ++len) {
    bool zero = true;
    for (const Matrix& m : cur) zero = zero && m.is_zero();
    if (zero) return len;
    std::vector<Matrix> next(cur.size());
    for (int x = 0; x < n; ++x)
      for (int z = 0; z < n; ++z) {
        Matrix acc(K, A.hom(x, z).dim(), 0);
        for (int y = 0; y < n; ++y)
          for (int g : R.keep[A.pair(y, z)]) {
            const Matrix& f = cur[A.pair(x, y)];
            if (f.cols() == 0) continue;
            acc = Matrix::hstack(acc, A.lmul(x, y, z, g) * f);
          }
        Rref r = rref(acc.transpose());
        Matrix basis(K, acc.rows(), r.rank);
        for (int j = 0; j < r.rank; ++j)
          for (int i = 0; i < acc.rows(); ++i) basis(i, j) = r.reduced(j, i);
        next[A.pair(x, z)] = basis;
      }
    cur = std::move(next);
  }
  return std::nullopt;
}

ResolutionResult bar_resolution(const Bimodule& M, const Options& opt) {
  const DgCategory &A = *M.left_cat(), &B = *M.right_cat();
  if (is_unit(A) && is_unit(B)) return identity_resolution(M, "complexes over a field are h-projective");
  if (is_unit(A))
    for (int c = 0; c < B.size(); ++c)
      if (same_module(M, representable_right(M.right_cat(), c))) return identity_resolution(M, "representable");
  if (is_unit(B))
    for (int c = 0; c < A.size(); ++c)
      if (same_module(M, representable_left(M.left_cat(), c))) return identity_resolution(M, "representable");

  int depth = opt.depth;
  if (depth < 0) {
    auto ia = reduced_nilpotency_index(A), ib = reduced_nilpotency_index(B);
    depth = ia && ib ? std::max(*ia, *ib) : opt.depth_fallback;
  }
  Bar bar(M);
  const int na = A.size(), nb = B.size();
  std::vector<Component> comps(static_cast<size_t>(nb) * na);
  const Field K = M.field();
  ResolutionResult r;
  r.depth = depth;
  r.certificate.kind = "bar";

  for (int b = 0; b < nb; ++b)
    for (int a = 0; a < na; ++a) {
      Component& C = comps[M.idx(b, a)];
      std::vector<Word> ws = bar.words(b, a, depth);
      std::vector<std::pair<int, size_t>> order;
      for (size_t i = 0; i < ws.size(); ++i) order.emplace_back(bar.degree(ws[i], b, a), i);
      std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      std::vector<int> degs;
      for (auto& [d, i] : order) {
        C.index[ws[i].key()] = static_cast<int>(C.words.size());
        C.words.push_back(ws[i]);
        C.length.push_back(ws[i].p() + ws[i].q());
        degs.push_back(d);
      }
      Matrix D(K, static_cast<int>(C.words.size()), static_cast<int>(C.words.size()));
      for (size_t k = 0; k < C.words.size(); ++k)
        for (auto& [v, c] : bar.differential(C.words[k], b, a)) {
          auto it = C.index.find(v.key());
          if (it == C.index.end()) throw std::logic_error("bar differential leaves the truncation");
          D(it->second, static_cast<int>(k)) += c;
          if (C.length[it->second] > C.length[k]) r.certificate.filtered = false;
        }
      C.cx = Complex(K, degs, D);
    }

  std::vector<Complex> cxs;
  for (const Component& C : comps) cxs.push_back(C.cx);
  auto lookup = [&](int b, int a, const Word& w) {
    const Component& C = comps[M.idx(b, a)];
    auto it = C.index.find(w.key());
    if (it == C.index.end()) throw std::logic_error("bar action leaves the truncation");
    return it->second;
  };
  Bimodule Q = make_bimodule(
      M.left_cat(), M.right_cat(), "Q(" + M.name() + ")", std::move(cxs),
      [&](int b, int a, int a2, int g) {
        const Component& C = comps[M.idx(b, a)];
        Matrix out(K, comps[M.idx(b, a2)].cx.dim(), C.cx.dim());
        for (size_t k = 0; k < C.words.size(); ++k) {
          const Word& w = C.words[k];
          Vector v = A.lmul(w.al[0], a, a2, g).col(w.ix[0]);
          for (size_t r2 = 0; r2 < v.size(); ++r2)
            if (!v[r2].is_zero()) {
              Word u = w;
              u.ix[0] = static_cast<int>(r2);
              out(lookup(b, a2, u), static_cast<int>(k)) += v[r2];
            }
        }
        return out;
      },
      [&](int b2, int b, int a, int f) {
        const Component& C = comps[M.idx(b, a)];
        Matrix out(K, comps[M.idx(b2, a)].cx.dim(), C.cx.dim());
        for (size_t k = 0; k < C.words.size(); ++k) {
          const Word& w = C.words[k];
          const size_t last = w.ix.size() - 1;
          Vector v = B.lmul(b2, b, w.be.back(), w.ix[last]).col(f);
          for (size_t r2 = 0; r2 < v.size(); ++r2)
            if (!v[r2].is_zero()) {
              Word u = w;
              u.ix[last] = static_cast<int>(r2);
              out(lookup(b2, a, u), static_cast<int>(k)) += v[r2];
            }
        }
        return out;
      });

  BimoduleMorphism eps{Q, M, 0, {}};
  for (int b = 0; b < nb; ++b)
    for (int a = 0; a < na; ++a) {
      const Component& C = comps[M.idx(b, a)];
      Matrix m(K, M.comp(b, a).dim(), C.cx.dim());
      for (size_t k = 0; k < C.words.size(); ++k) {
        const Word& w = C.words[k];
        if (w.p() != 0 || w.q() != 0) continue;
        const int x = w.al[0], y = w.be[0];
        Vector v = M.lact(b, x, a, w.ix[0]).apply(M.ract(b, y, x, w.ix[2]).col(w.ix[1]));
        if (odd(M.comp(y, x).degree_of(w.ix[1])))
          for (Scalar& s : v) s = -s;
        m.set_col(static_cast<int>(k), v);
      }
      eps.comps.push_back(std::move(m));
    }

  for (const Component& C : comps) r.certificate.length.push_back(C.length);
  for (int n = 0; n <= depth; ++n) r.certificate.generators[n] = static_cast<int>(bar.generators(n));
  r.certificate.terminated = true;
  for (int n = depth + 1; n <= depth + na + nb; ++n)
    if (bar.generators(n) > 0) {
      r.certificate.terminated = false;
      r.certificate.longest_beyond = n;
      break;
    }
  r.resolved = Q;
  r.qis = eps;
  r.verified_degrees = iso_degrees(eps);
  r.qis_verified = is_qis(eps);
  r.certified = r.certificate.terminated && r.certificate.filtered && r.qis_verified;
  if (!r.certificate.terminated)
    r.certificate.reason = "words of length " + std::to_string(*r.certificate.longest_beyond) + " exist beyond depth " + std::to_string(depth);
  else if (!r.qis_verified)
    r.certificate.reason = "augmentation is not a quasi-isomorphism";
  else
    r.certificate.reason = "bar construction terminated at depth " + std::to_string(depth);
  return r;
}

ResolutionResult representable_resolution(const Bimodule& T, bool right, const Options& opt) {
  ResolutionResult r = identity_resolution(T, right ? "componentwise right representable" : "componentwise left representable");
  ReprSearch s = right ? is_right_representable(T, opt) : is_left_representable(T, opt);
  r.certified = s.witness.has_value();
  if (!r.certified) r.certificate.reason = s.detail;
  return r;
}

ResolutionResult resolve(const Bimodule& T, bool right, const Options& opt) {
  ResolutionResult r = representable_resolution(T, right, opt);
  if (r.certified) return r;
  return bar_resolution(T, opt);
}

void require_certified(const ResolutionResult& r, const Options& opt, const std::string& what) {
  if (r.certified || opt.force_uncertified) return;
  throw UncertifiedResolution(what + ": resolution of " + r.resolved.name() + " is not certified (" + r.certificate.reason + ")");
}

DerivedHom derived_hom(const Bimodule& M, const Bimodule& N, const Options& opt) {
  if (!M.is_right_module() || !N.is_right_module()) throw std::invalid_argument("derived_hom expects right modules");
  DerivedHom out;
  out.resolution = bar_resolution(M, opt);
  require_certified(out.resolution, opt, "derived_hom");
  NatComplex nat = nat_complex(out.resolution.resolved, N);
  for (auto [d, k] : cohomology(nat.cx()).H.dims())
    if (k) out.dims[d] = k;
  return out;
}

}  // namespace dgc
