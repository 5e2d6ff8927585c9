#include <map>
#include <stdexcept>

#include "dgc/dgmod.hpp"

namespace dgc {

namespace {

void scatter(Matrix& K, int row0, const Matrix& block, const std::vector<int>& cols, bool negate) {
  for (int r = 0; r < block.rows(); ++r)
    for (int c = 0; c < block.cols(); ++c) {
      const Scalar& v = block(r, c);
      if (v.is_zero()) continue;
      Scalar& dst = K(row0 + r, cols[c]);
      dst = negate ? dst - v : dst + v;
    }
}

std::vector<std::vector<Vector>> constraint_elements(const DgCategory& A, bool use_gens, bool& minimal) {
  if (use_gens) {
    GeneratingSet g = generating_set(A);
    minimal = minimal && g.minimal;
    return g.gens;
  }
  minimal = false;
  std::vector<std::vector<Vector>> out(static_cast<size_t>(A.size()) * A.size());
  for (int a = 0; a < A.size(); ++a)
    for (int b = 0; b < A.size(); ++b)
      for (int i = 0; i < A.hom(a, b).dim(); ++i) out[A.pair(a, b)].push_back(A.basis(a, b, i));
  return out;
}

int degree_of_element(const Complex& C, const Vector& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return C.degree_of(static_cast<int>(i));
  return 0;
}

}  // namespace

NatComplex nat_complex(const Bimodule& S, const Bimodule& T, bool use_generating_set) {
  if (!same_category(S.left_cat(), T.left_cat()) || !same_category(S.right_cat(), T.right_cat()))
    throw std::invalid_argument("nat_complex: " + S.name() + " and " + T.name() + " live over different categories");
  const Field F = S.field();
  const DgCategory &A = *S.left_cat(), &B = *S.right_cat();
  NatComplex N;
  N.source = S;
  N.target = T;
  std::vector<Complex> parts;
  for (size_t k = 0; k < S.comps().size(); ++k) {
    N.pieces.push_back(internal_hom(S.comps()[k], T.comps()[k]));
    parts.push_back(N.pieces.back().cx);
  }
  N.product = direct_sum(parts);
  const int total = N.product.cx.dim();

  bool minimal = true;
  auto ga = constraint_elements(A, use_generating_set, minimal);
  auto gb = constraint_elements(B, use_generating_set, minimal);
  N.minimal_constraints = minimal;

  struct Block {
    HomComplex at;
    Matrix first, second;  // first acts on piece i1, second (subtracted) on piece i2
    size_t i1, i2;
  };
  std::vector<Block> blocks;
  int rows = 0;
  // φ_{(b,a')}(g x) = (-1)^{|φ||g|} g φ_{(b,a)}(x)
  for (int b = 0; b < S.nb(); ++b)
    for (int a = 0; a < S.na(); ++a)
      for (int a2 = 0; a2 < S.na(); ++a2)
        for (const Vector& g : ga[A.pair(a, a2)]) {
          const int dg = degree_of_element(A.hom(a, a2), g);
          const size_t i1 = S.idx(b, a2), i2 = S.idx(b, a);
          HomComplex H = internal_hom(S.comp(b, a), T.comp(b, a2));
          GradedMap pre(S.comp(b, a), S.comp(b, a2), dg, S.left_by(b, a, a2, g));
          GradedMap post(T.comp(b, a), T.comp(b, a2), dg, T.left_by(b, a, a2, g));
          Matrix m1 = hom_operator(N.pieces[i1], H, GradedMap::identity(T.comp(b, a2)), pre, 0).m;
          Matrix m2 = hom_operator(N.pieces[i2], H, post, GradedMap::identity(S.comp(b, a)), 0).m * sign_diag(N.pieces[i2].cx, dg);
          rows += H.cx.dim();
          blocks.push_back({std::move(H), std::move(m1), std::move(m2), i1, i2});
        }
  // φ_{(b',a)}(x f) = φ_{(b,a)}(x) f
  for (int b2 = 0; b2 < S.nb(); ++b2)
    for (int b = 0; b < S.nb(); ++b)
      for (int a = 0; a < S.na(); ++a)
        for (const Vector& f : gb[B.pair(b2, b)]) {
          const int df = degree_of_element(B.hom(b2, b), f);
          const size_t i1 = S.idx(b2, a), i2 = S.idx(b, a);
          HomComplex H = internal_hom(S.comp(b, a), T.comp(b2, a));
          GradedMap pre(S.comp(b, a), S.comp(b2, a), df, S.right_by(b2, b, a, f));
          GradedMap post(T.comp(b, a), T.comp(b2, a), df, T.right_by(b2, b, a, f));
          Matrix m1 = hom_operator(N.pieces[i1], H, GradedMap::identity(T.comp(b2, a)), pre, 0).m;
          Matrix m2 = hom_operator(N.pieces[i2], H, post, GradedMap::identity(S.comp(b, a)), 0).m;
          rows += H.cx.dim();
          blocks.push_back({std::move(H), std::move(m1), std::move(m2), i1, i2});
        }

  Matrix K(F, rows, total);
  int r0 = 0;
  for (const Block& blk : blocks) {
    scatter(K, r0, blk.first, N.product.pos[blk.i1], false);
    scatter(K, r0, blk.second, N.product.pos[blk.i2], true);
    r0 += blk.at.cx.dim();
  }
  std::map<int, Matrix> spans;
  const Complex& P = N.product.cx;
  for (auto [n, dn] : P.dims()) {
    if (dn == 0) continue;
    std::vector<int> cols(dn);
    for (int i = 0; i < dn; ++i) cols[i] = P.offset(n) + i;
    spans[n] = kernel_basis(K.select_cols(cols));
  }
  N.sub = subcomplex_from_spans(P, spans);
  return N;
}

BimoduleMorphism NatComplex::morphism(const Vector& v, int degree) const {
  Vector full = sub.incl.apply(v);
  BimoduleMorphism phi{source, target, degree, {}};
  for (size_t k = 0; k < pieces.size(); ++k) {
    Vector local(pieces[k].cx.dim(), source.field().zero());
    for (size_t i = 0; i < local.size(); ++i) local[i] = full[product.pos[k][i]];
    phi.comps.push_back(pieces[k].map_of(local));
  }
  return phi;
}

BimoduleMorphism NatComplex::morphism(const Vector& v) const { return morphism(v, degree_of_element(cx(), v)); }

Vector NatComplex::family_coords(const std::vector<Matrix>& comps) const {
  Vector out(product.cx.dim(), source.field().zero());
  for (size_t k = 0; k < pieces.size(); ++k) {
    Vector local = pieces[k].coords(comps[k]);
    for (size_t i = 0; i < local.size(); ++i) out[product.pos[k][i]] = local[i];
  }
  return out;
}

Vector NatComplex::coords(const BimoduleMorphism& phi) const {
  Vector p = family_coords(phi.comps);
  Vector x = sub.coords.apply(p);
  if (sub.incl.apply(x) != p) throw std::invalid_argument("family is not a morphism " + source.name() + " -> " + target.name());
  return x;
}

namespace {

YonedaIso yoneda_generic(const Bimodule& h, const Bimodule& M, int a, bool left) {
  const Field F = M.field();
  const DgCategory& A = left ? *M.left_cat() : *M.right_cat();
  NatComplex N = nat_complex(h, M);
  auto comp_of = [&](const Bimodule& T, int x) -> const Complex& { return left ? T.comp(0, x) : T.comp(x, 0); };
  const Complex& Ma = comp_of(M, a);
  const Vector ida = A.id(a);

  Matrix fwd(F, Ma.dim(), N.cx().dim());
  for (int j = 0; j < N.cx().dim(); ++j) {
    Vector e(N.cx().dim(), F.zero());
    e[j] = F.one();
    BimoduleMorphism phi = N.morphism(e);
    fwd.set_col(j, (left ? phi.at(0, a) : phi.at(a, 0)).apply(ida));
  }
  Matrix bwd(F, N.cx().dim(), Ma.dim());
  for (int j = 0; j < Ma.dim(); ++j) {
    const int dx = Ma.degree_of(j);
    std::vector<Matrix> comps;
    for (int b = 0; b < A.size(); ++b) {
      const Complex& hb = comp_of(h, b);
      Matrix m(F, comp_of(M, b).dim(), hb.dim());
      for (int g = 0; g < hb.dim(); ++g) {
        Matrix act = left ? M.lact(0, a, b, g) : M.ract(b, a, 0, g);
        Vector col = act.col(j);
        if (left && odd(static_cast<long long>(dx) * hb.degree_of(g)))
          for (auto& s : col) s.negate();
        m.set_col(g, col);
      }
      comps.push_back(std::move(m));
    }
    bwd.set_col(j, N.coords(BimoduleMorphism{h, M, dx, std::move(comps)}));
  }
  Iso iso{GradedMap(N.cx(), Ma, 0, fwd), GradedMap(Ma, N.cx(), 0, bwd), false};
  verify_iso(iso);
  return {std::move(N), std::move(iso)};
}

}  // namespace

YonedaIso yoneda_iso(const CatPtr& A, int a, const Bimodule& F) {
  if (!F.is_right_module() || !same_category(F.right_cat(), A)) throw std::invalid_argument("yoneda_iso expects a right module over the category");
  return yoneda_generic(representable_right(A, a), F, a, false);
}

YonedaIso yoneda_iso_left(const CatPtr& A, int a, const Bimodule& M) {
  if (!M.is_left_module() || !same_category(M.left_cat(), A)) throw std::invalid_argument("yoneda_iso_left expects a left module over the category");
  return yoneda_generic(representable_left(A, a), M, a, true);
}

namespace {

template <class Op>
Matrix nat_map(const NatComplex& from, const NatComplex& to, Op op) {
  const Field F = from.source.field();
  Matrix out(F, to.cx().dim(), from.cx().dim());
  for (int j = 0; j < from.cx().dim(); ++j) {
    Vector e(from.cx().dim(), F.zero());
    e[j] = F.one();
    out.set_col(j, to.coords(op(from.morphism(e))));
  }
  return out;
}

}  // namespace

Matrix nat_postcompose(const NatComplex& from, const NatComplex& to, const BimoduleMorphism& psi) {
  return nat_map(from, to, [&](const BimoduleMorphism& phi) {
    BimoduleMorphism c = compose(psi, phi);
    c.target = to.target;
    return c;
  });
}

Matrix nat_precompose(const NatComplex& from, const NatComplex& to, const BimoduleMorphism& psi) {
  return nat_map(from, to, [&](const BimoduleMorphism& phi) {
    BimoduleMorphism c = compose(phi, psi);
    c.source = to.source;
    return c;
  });
}

}  // namespace dgc

namespace dgc {

ModuleCategory module_category(const std::vector<Bimodule>& objects) {
  ModuleCategory out;
  out.objects = objects;
  const size_t n = objects.size();
  const Field F = objects.at(0).field();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out.nats.push_back(nat_complex(objects[i], objects[j]));
  DgCategory::Data D;
  D.field = F;
  D.name = "Mod";
  for (size_t i = 0; i < n; ++i) D.objects.push_back(std::to_string(i) + ":" + objects[i].name());
  for (const NatComplex& N : out.nats) D.homs.push_back(N.cx());
  D.lmul.resize(n * n * n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t c = 0; c < n; ++c) {
        const NatComplex& G = out.nat(static_cast<int>(b), static_cast<int>(c));
        for (int g = 0; g < G.cx().dim(); ++g) {
          Vector e(G.cx().dim(), F.zero());
          e[g] = F.one();
          D.lmul[(a * n + b) * n + c].push_back(
              nat_postcompose(out.nat(static_cast<int>(a), static_cast<int>(b)), out.nat(static_cast<int>(a), static_cast<int>(c)), G.morphism(e)));
        }
      }
  for (size_t a = 0; a < n; ++a) D.ids.push_back(out.nat(static_cast<int>(a), static_cast<int>(a)).coords(BimoduleMorphism::identity(objects[a])));
  out.cat = std::make_shared<const DgCategory>(std::move(D));
  return out;
}

}  // namespace dgc
