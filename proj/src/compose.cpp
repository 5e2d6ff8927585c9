#include <functional>
#include <stdexcept>

#include "dgc/derived.hpp"
#include "dgc/parallel.hpp"

namespace dgc {

namespace {

/// (f⊗g)(x⊗y) = ±f(x)⊗g(y), negated where neg(x,y) holds.
Matrix tensor_matrix(const TensorComplex& s, const TensorComplex& t, const Matrix& f, const Matrix& g,
                     const std::function<bool(int, int)>& neg = nullptr) {
  Matrix out(s.cx.field(), t.cx.dim(), s.cx.dim());
  for (int k = 0; k < s.cx.dim(); ++k) {
    auto [x, y] = s.pairs[k];
    const bool flip = neg && neg(x, y);
    for (int r = 0; r < f.rows(); ++r) {
      if (f(r, x).is_zero()) continue;
      for (int q = 0; q < g.rows(); ++q) {
        if (g(q, y).is_zero()) continue;
        Scalar v = f(r, x) * g(q, y);
        out(t.at(r, q), k) = flip ? -v : v;
      }
    }
  }
  return out;
}

void axpy(Vector& acc, const Scalar& s, const Vector& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) acc[i] += s * v[i];
}

Matrix factored(const CoendResult& C, const Complex& Z, const std::vector<Matrix>& family, int degree, const char* what) {
  auto g = factor_through_coend(C, Z, family, degree);
  if (!g) throw std::logic_error(std::string(what) + ": the family is not a cowedge");
  return g->m;
}

}  // namespace

const TensorComplex& Diamond::tensor_at(int c, int a, int beta) const {
  return tensors[module.idx(c, a) * static_cast<size_t>(F.nb()) + beta];
}

Vector Diamond::class_of(int c, int a, int beta, int x, int y) const {
  const CoendResult& C = coends[module.idx(c, a)];
  return C.proj.col(C.sum.pos[beta][tensor_at(c, a, beta).at(x, y)]);
}

Diamond diamond(const Bimodule& G, const Bimodule& F, const Options& opt) {
  if (!same_category(F.right_cat(), G.left_cat())) throw std::invalid_argument("compose: the middle categories differ");
  const CatPtr &A = F.left_cat(), &B = F.right_cat(), &C = G.right_cat();
  const int na = A->size(), nb = B->size(), nc = C->size();
  const Field K = F.field();
  Diamond D;
  D.G = G;
  D.F = F;
  D.coends.resize(static_cast<size_t>(nc) * na);
  D.tensors.resize(static_cast<size_t>(nc) * na * nb);
  for_each_index(nc * na, opt.parallel, [&](int i) {
    const int c = i / na, a = i % na;
    D.coends[i] = coend_bimodule(tensor_bimodule(component(F, a), co_component(G, c)));
    for (int b = 0; b < nb; ++b) D.tensors[static_cast<size_t>(i) * nb + b] = tensor(F.comp(b, a), G.comp(c, b));
  });
  auto T = [&](int c, int a, int b) -> const TensorComplex& { return D.tensors[(static_cast<size_t>(c) * na + a) * nb + b]; };
  std::vector<Complex> comps;
  for (const CoendResult& r : D.coends) comps.push_back(r.total);
  D.module = make_bimodule(
      A, C, G.name() + "⋄" + F.name(), std::move(comps),
      [&](int c, int a, int a2, int g) {
        std::vector<Matrix> diag;
        for (int b = 0; b < nb; ++b)
          diag.push_back(tensor_matrix(T(c, a, b), T(c, a2, b), F.lact(b, a, a2, g), Matrix::identity(K, G.comp(c, b).dim())));
        return induced_coend_map(D.coends[static_cast<size_t>(c) * na + a], D.coends[static_cast<size_t>(c) * na + a2], diag,
                                 A->deg(a, a2, g))
            .m;
      },
      [&](int c2, int c, int a, int f) {
        std::vector<Matrix> diag;
        for (int b = 0; b < nb; ++b)
          diag.push_back(tensor_matrix(T(c, a, b), T(c2, a, b), Matrix::identity(K, F.comp(b, a).dim()), G.ract(c2, c, b, f)));
        return induced_coend_map(D.coends[static_cast<size_t>(c) * na + a], D.coends[static_cast<size_t>(c2) * na + a], diag,
                                 C->deg(c2, c, f))
            .m;
      });
  return D;
}

Bimodule compose(const Bimodule& G, const Bimodule& F) { return diamond(G, F).module; }

BimoduleMorphism diamond_map(const Diamond& src, const Diamond& tgt, const BimoduleMorphism& psi, const BimoduleMorphism& phi) {
  const int deg = psi.degree + phi.degree;
  BimoduleMorphism out{src.module, tgt.module, deg, {}};
  const int na = src.module.na(), nc = src.module.nb(), nb = src.F.nb();
  for (int c = 0; c < nc; ++c)
    for (int a = 0; a < na; ++a) {
      std::vector<Matrix> diag;
      for (int b = 0; b < nb; ++b) {
        const TensorComplex& s = src.tensor_at(c, a, b);
        diag.push_back(tensor_matrix(s, tgt.tensor_at(c, a, b), phi.at(b, a), psi.at(c, b),
                                     [&](int x, int) { return odd(static_cast<long long>(psi.degree) * s.left.degree_of(x)); }));
      }
      out.comps.push_back(induced_coend_map(src.coends[src.module.idx(c, a)], tgt.coends[tgt.module.idx(c, a)], diag, deg).m);
    }
  return out;
}

BimoduleMorphism right_unitor(const Diamond& D) {
  const Bimodule& T = D.G;
  BimoduleMorphism out{D.module, T, 0, {}};
  const Field K = T.field();
  for (int b = 0; b < T.nb(); ++b)
    for (int a = 0; a < T.na(); ++a) {
      std::vector<Matrix> family;
      for (int x = 0; x < T.na(); ++x) {
        const TensorComplex& tc = D.tensor_at(b, a, x);
        Matrix m(K, T.comp(b, a).dim(), tc.cx.dim());
        for (int k = 0; k < tc.cx.dim(); ++k) m.set_col(k, T.lact(b, x, a, tc.pairs[k].first).col(tc.pairs[k].second));
        family.push_back(std::move(m));
      }
      out.comps.push_back(factored(D.coends[D.module.idx(b, a)], T.comp(b, a), family, 0, "right unitor"));
    }
  return out;
}

BimoduleMorphism left_unitor(const Diamond& D) {
  const Bimodule& T = D.F;
  BimoduleMorphism out{D.module, T, 0, {}};
  const Field K = T.field();
  for (int b = 0; b < T.nb(); ++b)
    for (int a = 0; a < T.na(); ++a) {
      std::vector<Matrix> family;
      for (int y = 0; y < T.nb(); ++y) {
        const TensorComplex& tc = D.tensor_at(b, a, y);
        Matrix m(K, T.comp(b, a).dim(), tc.cx.dim());
        for (int k = 0; k < tc.cx.dim(); ++k) m.set_col(k, T.ract(b, y, a, tc.pairs[k].second).col(tc.pairs[k].first));
        family.push_back(std::move(m));
      }
      out.comps.push_back(factored(D.coends[D.module.idx(b, a)], T.comp(b, a), family, 0, "left unitor"));
    }
  return out;
}

BimoduleMorphism associator(const Diamond& lhs, const Diamond& gf, const Diamond& rhs, const Diamond& hg) {
  const Field K = lhs.module.field();
  BimoduleMorphism out{lhs.module, rhs.module, 0, {}};
  const int na = lhs.module.na(), nd = lhs.module.nb();
  const int nc = gf.module.nb(), nb = gf.F.nb();
  for (int d = 0; d < nd; ++d)
    for (int a = 0; a < na; ++a) {
      const Complex& Z = rhs.module.comp(d, a);
      std::vector<Matrix> family;
      for (int g = 0; g < nc; ++g) {
        const TensorComplex& tc = lhs.tensor_at(d, a, g);
        const CoendResult& inner = gf.coends[gf.module.idx(g, a)];
        Matrix m(K, Z.dim(), tc.cx.dim());
        for (int k = 0; k < tc.cx.dim(); ++k) {
          auto [u, z] = tc.pairs[k];
          Vector acc(Z.dim(), K.zero());
          for (int b = 0; b < nb; ++b) {
            const TensorComplex& fg = gf.tensor_at(g, a, b);
            for (int j = 0; j < fg.cx.dim(); ++j) {
              const Scalar& s = inner.section(inner.sum.pos[b][j], u);
              if (s.is_zero()) continue;
              auto [x, y] = fg.pairs[j];
              Vector w = hg.class_of(d, b, g, y, z);
              for (size_t r = 0; r < w.size(); ++r)
                if (!w[r].is_zero()) axpy(acc, s * w[r], rhs.class_of(d, a, b, x, static_cast<int>(r)));
            }
          }
          m.set_col(k, acc);
        }
        family.push_back(std::move(m));
      }
      out.comps.push_back(factored(lhs.coends[lhs.module.idx(d, a)], Z, family, 0, "associator"));
    }
  return out;
}

bool h_equal(const BimoduleMorphism& x, const BimoduleMorphism& y) {
  if (x.degree != y.degree || x.comps.size() != y.comps.size()) return false;
  for (int b = 0; b < x.source.nb(); ++b)
    for (int a = 0; a < x.source.na(); ++a)
      if (!(induced_map(x.graded(b, a)) == induced_map(y.graded(b, a)))) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

/// x ↦ gx as a map T_from -> T_to of right modules.
BimoduleMorphism action_map(const Bimodule& T, int from, int to, int g) {
  BimoduleMorphism m{component(T, from), component(T, to), T.left_cat()->deg(from, to, g), {}};
  for (int b = 0; b < T.nb(); ++b) m.comps.push_back(T.lact(b, from, to, g));
  return m;
}

}  // namespace

StructuralMaps structural_maps(const Bimodule& T, const Options& opt) {
  const CatPtr &A = T.left_cat(), &B = T.right_cat();
  const int na = A->size(), nb = B->size();
  const Field K = T.field();
  StructuralMaps S;
  S.T = T;
  S.L = L_dual(T);
  S.hA = diagonal(A);
  S.hB = diagonal(B);
  std::vector<Bimodule> Tc;
  for (int i = 0; i < na; ++i) Tc.push_back(component(T, i));
  S.l_nats.resize(static_cast<size_t>(na) * nb);
  S.e_nats.resize(static_cast<size_t>(na) * na);
  for_each_index(na * nb, opt.parallel, [&](int k) { S.l_nats[k] = nat_complex(Tc[k / nb], representable_right(B, k % nb)); });
  for_each_index(na * na, opt.parallel, [&](int k) { S.e_nats[k] = nat_complex(Tc[k / na], Tc[k % na]); });
  auto lnat = [&](int i, int j) -> const NatComplex& { return S.l_nats[static_cast<size_t>(i) * nb + j]; };
  auto enat = [&](int i, int k) -> const NatComplex& { return S.e_nats[static_cast<size_t>(i) * na + k]; };
  auto basis_morphism = [&](const NatComplex& N, int k) {
    Vector v(N.cx().dim(), K.zero());
    v[k] = K.one();
    return N.morphism(v, N.cx().degree_of(k));
  };

  std::vector<Complex> ecomps;
  for (int i = 0; i < na; ++i)
    for (int k = 0; k < na; ++k) ecomps.push_back(enat(i, k).cx());
  S.E = make_bimodule(
      A, A, "End(" + T.name() + ")", std::move(ecomps),
      [&](int i, int k, int k2, int g) { return nat_postcompose(enat(i, k), enat(i, k2), action_map(T, k, k2, g)); },
      [&](int i2, int i, int k, int f) { return nat_precompose(enat(i, k), enat(i2, k), action_map(T, i2, i, f)); });

  S.t = BimoduleMorphism{S.hA, S.E, 0, {}};
  for (int i = 0; i < na; ++i)
    for (int k = 0; k < na; ++k) {
      Matrix m(K, enat(i, k).cx().dim(), A->hom(i, k).dim());
      for (int f = 0; f < A->hom(i, k).dim(); ++f) m.set_col(f, enat(i, k).coords(action_map(T, i, k, f)));
      S.t.comps.push_back(std::move(m));
    }

  S.LT = diamond(S.L, T, opt);
  S.TE = diamond(T, S.E, opt);
  S.EL = diamond(S.E, S.L, opt);
  S.TL = diamond(T, S.L, opt);

  // n: L⋄T -> E at (c,a), summand β: T(β,a) ⊗ Nat(T_c, h_β)
  S.n = BimoduleMorphism{S.LT.module, S.E, 0, std::vector<Matrix>(static_cast<size_t>(na) * na)};
  for_each_index(na * na, opt.parallel, [&](int idx) {
    const int c = idx / na, a = idx % na;
    std::vector<Matrix> family;
    for (int beta = 0; beta < nb; ++beta) {
      const TensorComplex& tc = S.LT.tensor_at(c, a, beta);
      Matrix m(K, enat(c, a).cx().dim(), tc.cx.dim());
      std::vector<BimoduleMorphism> theta;
      for (int p = 0; p < lnat(c, beta).cx().dim(); ++p) theta.push_back(basis_morphism(lnat(c, beta), p));
      for (int k = 0; k < tc.cx.dim(); ++k) {
        auto [x, p] = tc.pairs[k];
        BimoduleMorphism out{Tc[c], Tc[a], tc.left.degree_of(x) + tc.right.degree_of(p), {}};
        for (int g = 0; g < nb; ++g) {
          Matrix N(K, T.comp(g, a).dim(), T.comp(g, c).dim());
          const Matrix& th = theta[p].at(g, 0);
          for (int z = 0; z < th.cols(); ++z) N.set_col(z, T.right_by(g, beta, a, th.col(z)).col(x));
          out.comps.push_back(std::move(N));
        }
        m.set_col(k, enat(c, a).coords(out));
      }
      family.push_back(std::move(m));
    }
    S.n.comps[idx] = factored(S.LT.coends[idx], enat(c, a).cx(), family, 0, "n");
  });

  // e: T⋄E -> T at (b,a'), summand A: Nat(T_A, T_a') ⊗ T(b,A)
  S.e = BimoduleMorphism{S.TE.module, T, 0, {}};
  for (int b = 0; b < nb; ++b)
    for (int a2 = 0; a2 < na; ++a2) {
      std::vector<Matrix> family;
      for (int i = 0; i < na; ++i) {
        const TensorComplex& tc = S.TE.tensor_at(b, a2, i);
        Matrix m(K, T.comp(b, a2).dim(), tc.cx.dim());
        std::vector<BimoduleMorphism> phis;
        for (int p = 0; p < enat(i, a2).cx().dim(); ++p) phis.push_back(basis_morphism(enat(i, a2), p));
        for (int k = 0; k < tc.cx.dim(); ++k) m.set_col(k, phis[tc.pairs[k].first].at(b, 0).col(tc.pairs[k].second));
        family.push_back(std::move(m));
      }
      S.e.comps.push_back(factored(S.TE.coends[S.TE.module.idx(b, a2)], T.comp(b, a2), family, 0, "e"));
    }

  // e′: E⋄L -> L at (a,b), summand A': Nat(T_A', h_b) ⊗ Nat(T_a, T_A')
  S.e_prime = BimoduleMorphism{S.EL.module, S.L, 0, {}};
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) {
      std::vector<Matrix> family;
      for (int i = 0; i < na; ++i) {
        const TensorComplex& tc = S.EL.tensor_at(a, b, i);
        Matrix m(K, lnat(a, b).cx().dim(), tc.cx.dim());
        std::vector<BimoduleMorphism> thetas, phis;
        for (int p = 0; p < lnat(i, b).cx().dim(); ++p) thetas.push_back(basis_morphism(lnat(i, b), p));
        for (int p = 0; p < enat(a, i).cx().dim(); ++p) phis.push_back(basis_morphism(enat(a, i), p));
        for (int k = 0; k < tc.cx.dim(); ++k)
          m.set_col(k, lnat(a, b).coords(compose(thetas[tc.pairs[k].first], phis[tc.pairs[k].second])));
        family.push_back(std::move(m));
      }
      S.e_prime.comps.push_back(factored(S.EL.coends[S.EL.module.idx(a, b)], lnat(a, b).cx(), family, 0, "e'"));
    }

  // ε: T⋄L -> h_B at (b,b'), summand A: Nat(T_A, h_b') ⊗ T(b,A)
  S.eps = BimoduleMorphism{S.TL.module, S.hB, 0, {}};
  for (int b = 0; b < nb; ++b)
    for (int b2 = 0; b2 < nb; ++b2) {
      std::vector<Matrix> family;
      for (int i = 0; i < na; ++i) {
        const TensorComplex& tc = S.TL.tensor_at(b, b2, i);
        Matrix m(K, B->hom(b, b2).dim(), tc.cx.dim());
        std::vector<BimoduleMorphism> phis;
        for (int p = 0; p < lnat(i, b2).cx().dim(); ++p) phis.push_back(basis_morphism(lnat(i, b2), p));
        for (int k = 0; k < tc.cx.dim(); ++k) m.set_col(k, phis[tc.pairs[k].first].at(b, 0).col(tc.pairs[k].second));
        family.push_back(std::move(m));
      }
      S.eps.comps.push_back(factored(S.TL.coends[S.TL.module.idx(b, b2)], B->hom(b, b2), family, 0, "epsilon"));
    }
  return S;
}

DiagramReport verify_quasiadj_diagrams(const StructuralMaps& S, bool h_level) {
  DiagramReport r;
  r.h_level = h_level;
  auto eq = [&](const BimoduleMorphism& x, const BimoduleMorphism& y) { return h_level ? h_equal(x, y) : x == y; };
  auto fail = [&](const char* cell) {
    if (r.first_failure.empty()) r.first_failure = cell;
  };
  const Bimodule &T = S.T, &L = S.L;
  const BimoduleMorphism idT = BimoduleMorphism::identity(T), idL = BimoduleMorphism::identity(L);

  Diamond T_hA = diamond(T, S.hA);
  auto rho_inv = inverse(right_unitor(T_hA));
  if (!rho_inv) throw std::logic_error("right unitor is not invertible");
  r.top_T = eq(compose(S.e, compose(diamond_map(T_hA, S.TE, idT, S.t), *rho_inv)), idT);
  if (!r.top_T) fail("T -> T⋄h_A -> T⋄E -> T is not the identity");

  Diamond T_LT = diamond(T, S.LT.module), TL_T = diamond(S.TL.module, T), hB_T = diamond(S.hB, T);
  BimoduleMorphism via_n = compose(S.e, diamond_map(T_LT, S.TE, idT, S.n));
  BimoduleMorphism via_eps =
      compose(left_unitor(hB_T), compose(diamond_map(TL_T, hB_T, S.eps, idT), associator(T_LT, S.LT, TL_T, S.TL)));
  r.cell_T = eq(via_n, via_eps);
  if (!r.cell_T) fail("e∘(T⋄n) differs from λ∘(ε⋄T)∘α on T⋄(L⋄T)");

  Diamond hA_L = diamond(S.hA, L);
  auto lambda_inv = inverse(left_unitor(hA_L));
  if (!lambda_inv) throw std::logic_error("left unitor is not invertible");
  r.top_L = eq(compose(S.e_prime, compose(diamond_map(hA_L, S.EL, S.t, idL), *lambda_inv)), idL);
  if (!r.top_L) fail("L -> h_A⋄L -> E⋄L -> L is not the identity");

  Diamond LT_L = diamond(S.LT.module, L), L_TL = diamond(L, S.TL.module), L_hB = diamond(L, S.hB);
  auto alpha_inv = inverse(associator(L_TL, S.TL, LT_L, S.LT));
  if (!alpha_inv) throw std::logic_error("associator is not invertible");
  BimoduleMorphism via_n2 = compose(S.e_prime, diamond_map(LT_L, S.EL, S.n, idL));
  BimoduleMorphism via_eps2 = compose(right_unitor(L_hB), compose(diamond_map(L_TL, L_hB, idL, S.eps), *alpha_inv));
  r.cell_L = eq(via_n2, via_eps2);
  if (!r.cell_L) fail("e′∘(n⋄L) differs from ρ∘(L⋄ε)∘α⁻¹ on (L⋄T)⋄L");

  r.ok = r.top_T && r.cell_T && r.top_L && r.cell_L;
  return r;
}

DiagramReport verify_quasiadj_diagrams(const Bimodule& T, bool derived, const Options& opt) {
  if (!derived) return verify_quasiadj_diagrams(structural_maps(T, opt), false);
  ResolutionResult res = resolve(T, true, opt);
  require_certified(res, opt, "quasiadj");
  DiagramReport r = verify_quasiadj_diagrams(structural_maps(res.resolved, opt), true);
  r.resolution = std::move(res);
  return r;
}

}  // namespace dgc
