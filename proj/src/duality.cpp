#include "dgc/duality.hpp"

#include <stdexcept>

namespace dgc {

namespace {

struct Dual {
  Bimodule module;
  std::vector<NatComplex> nats;  // per object of the base
};

/// h_g: h_a -> h_a2, f ↦ g∘f.
BimoduleMorphism h_post(const CatPtr& A, int a, int a2, int g) {
  BimoduleMorphism m{representable_right(A, a), representable_right(A, a2), A->deg(a, a2, g), {}};
  for (int b = 0; b < A->size(); ++b) m.comps.push_back(A->lmul(b, a, a2, g));
  return m;
}

/// h^f: h^a -> h^a2 for f ∈ A(a2,a), x ↦ (-1)^{|f||x|} x∘f.
BimoduleMorphism h_pre(const CatPtr& A, int a2, int a, int f) {
  const int df = A->deg(a2, a, f);
  BimoduleMorphism m{representable_left(A, a), representable_left(A, a2), df, {}};
  for (int b = 0; b < A->size(); ++b)
    m.comps.push_back(A->right_mult(a2, a, b, A->basis(a2, a, f)) * sign_diag(A->hom(a, b), df));
  return m;
}

Dual o_data(const Bimodule& X) {
  if (!X.is_right_module()) throw std::invalid_argument("isbell_O expects a right module");
  const CatPtr& B = X.right_cat();
  const int n = B->size();
  Dual D;
  std::vector<Complex> comps;
  for (int a = 0; a < n; ++a) {
    D.nats.push_back(nat_complex(X, representable_right(B, a)));
    comps.push_back(D.nats.back().cx());
  }
  std::vector<std::vector<Matrix>> left(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2)
      for (int g = 0; g < B->hom(a, a2).dim(); ++g)
        left[static_cast<size_t>(a) * n + a2].push_back(nat_postcompose(D.nats[a], D.nats[a2], h_post(B, a, a2, g)));
  D.module = left_module(B, "O(" + X.name() + ")", std::move(comps), std::move(left));
  return D;
}

Dual spec_data(const Bimodule& M) {
  if (!M.is_left_module()) throw std::invalid_argument("isbell_Spec expects a left module");
  const CatPtr& A = M.left_cat();
  const int n = A->size();
  Dual D;
  std::vector<Complex> comps;
  for (int b = 0; b < n; ++b) {
    D.nats.push_back(nat_complex(M, representable_left(A, b)));
    comps.push_back(D.nats.back().cx());
  }
  std::vector<std::vector<Matrix>> right(static_cast<size_t>(n) * n);
  for (int b2 = 0; b2 < n; ++b2)
    for (int b = 0; b < n; ++b)
      for (int f = 0; f < A->hom(b2, b).dim(); ++f)
        right[static_cast<size_t>(b2) * n + b].push_back(nat_postcompose(D.nats[b], D.nats[b2], h_pre(A, b2, b, f)) *
                                                         sign_diag(D.nats[b].cx(), A->deg(b2, b, f)));
  D.module = right_module(A, "Spec(" + M.name() + ")", std::move(comps), std::move(right));
  return D;
}

int sign_of(int x, int y) { return odd(static_cast<long long>(x) * y) ? -1 : 1; }

/// φ: M -> 𝒪X (degree p) to ψ: X -> Spec M, ψ_b(x)_a(m) = (-1)^{|x||m|} φ_a(m)_b(x).
BimoduleMorphism to_right(const BimoduleMorphism& phi, const Bimodule& X, const Dual& O, const Dual& S) {
  const Bimodule& M = phi.source;
  const Field K = M.field();
  const int n = M.na(), p = phi.degree;
  std::vector<std::vector<BimoduleMorphism>> theta(n);  // θ_{a,m} ∈ Nat(X, h_a)
  for (int a = 0; a < n; ++a)
    for (int m = 0; m < M.comp(0, a).dim(); ++m) theta[a].push_back(O.nats[a].morphism(phi.at(0, a).col(m), p + M.comp(0, a).degree_of(m)));
  BimoduleMorphism psi{X, S.module, p, {}};
  for (int b = 0; b < n; ++b) {
    const Complex& Xb = X.comp(b, 0);
    Matrix out(K, S.nats[b].cx().dim(), Xb.dim());
    for (int x = 0; x < Xb.dim(); ++x) {
      BimoduleMorphism q{M, S.nats[b].target, p + Xb.degree_of(x), {}};
      for (int a = 0; a < n; ++a) {
        const Complex& Ma = M.comp(0, a);
        Matrix Q(K, M.left_cat()->hom(b, a).dim(), Ma.dim());
        for (int m = 0; m < Ma.dim(); ++m) {
          Vector c = theta[a][m].at(b, 0).col(x);
          if (sign_of(Xb.degree_of(x), Ma.degree_of(m)) < 0)
            for (Scalar& s : c) s = -s;
          Q.set_col(m, c);
        }
        q.comps.push_back(std::move(Q));
      }
      out.set_col(x, S.nats[b].coords(q));
    }
    psi.comps.push_back(std::move(out));
  }
  return psi;
}

/// Inverse of to_right: φ_a(m)_b(x) = (-1)^{|x||m|} ψ_b(x)_a(m).
BimoduleMorphism to_left(const BimoduleMorphism& psi, const Bimodule& M, const Dual& O, const Dual& S) {
  const Bimodule& X = psi.source;
  const Field K = X.field();
  const int n = X.nb(), p = psi.degree;
  std::vector<std::vector<BimoduleMorphism>> theta(n);  // θ_{b,x} ∈ Nat(M, h^b)
  for (int b = 0; b < n; ++b)
    for (int x = 0; x < X.comp(b, 0).dim(); ++x) theta[b].push_back(S.nats[b].morphism(psi.at(b, 0).col(x), p + X.comp(b, 0).degree_of(x)));
  BimoduleMorphism phi{M, O.module, p, {}};
  for (int a = 0; a < n; ++a) {
    const Complex& Ma = M.comp(0, a);
    Matrix out(K, O.nats[a].cx().dim(), Ma.dim());
    for (int m = 0; m < Ma.dim(); ++m) {
      BimoduleMorphism q{X, O.nats[a].target, p + Ma.degree_of(m), {}};
      for (int b = 0; b < n; ++b) {
        const Complex& Xb = X.comp(b, 0);
        Matrix Q(K, X.right_cat()->hom(b, a).dim(), Xb.dim());
        for (int x = 0; x < Xb.dim(); ++x) {
          Vector c = theta[b][x].at(0, a).col(m);
          if (sign_of(Xb.degree_of(x), Ma.degree_of(m)) < 0)
            for (Scalar& s : c) s = -s;
          Q.set_col(x, c);
        }
        q.comps.push_back(std::move(Q));
      }
      out.set_col(m, O.nats[a].coords(q));
    }
    phi.comps.push_back(std::move(out));
  }
  return phi;
}

Matrix basis_map(const NatComplex& from, const NatComplex& to, const std::function<BimoduleMorphism(const BimoduleMorphism&)>& op) {
  const Field K = from.source.field();
  Matrix out(K, to.cx().dim(), from.cx().dim());
  for (int j = 0; j < from.cx().dim(); ++j) {
    Vector e(from.cx().dim(), K.zero());
    e[j] = K.one();
    out.set_col(j, to.coords(op(from.morphism(e))));
  }
  return out;
}

BimoduleMorphism signed_precompose(const std::vector<NatComplex>& from, const std::vector<NatComplex>& to, const BimoduleMorphism& xi,
                                   const Bimodule& src, const Bimodule& tgt) {
  BimoduleMorphism m{src, tgt, xi.degree, {}};
  for (size_t i = 0; i < from.size(); ++i) m.comps.push_back(nat_precompose(from[i], to[i], xi) * sign_diag(from[i].cx(), xi.degree));
  return m;
}

}  // namespace

Bimodule isbell_O(const Bimodule& X) { return o_data(X).module; }
Bimodule isbell_Spec(const Bimodule& M) { return spec_data(M).module; }

BimoduleMorphism isbell_O_map(const BimoduleMorphism& xi) {
  Dual src = o_data(xi.target), tgt = o_data(xi.source);
  return signed_precompose(src.nats, tgt.nats, xi, src.module, tgt.module);
}

BimoduleMorphism isbell_Spec_map(const BimoduleMorphism& mu) {
  Dual src = spec_data(mu.target), tgt = spec_data(mu.source);
  return signed_precompose(src.nats, tgt.nats, mu, src.module, tgt.module);
}

IsbellAdjunction isbell_adjunction(const Bimodule& M, const Bimodule& X) {
  if (!same_category(M.left_cat(), X.right_cat())) throw std::invalid_argument("isbell_adjunction: modules over different categories");
  Dual O = o_data(X), S = spec_data(M);
  IsbellAdjunction r{M, X, nat_complex(M, O.module), nat_complex(X, S.module), {}};
  Matrix fwd = basis_map(r.left, r.right, [&](const BimoduleMorphism& phi) { return to_right(phi, X, O, S); });
  Matrix bwd = basis_map(r.right, r.left, [&](const BimoduleMorphism& psi) { return to_left(psi, M, O, S); });
  r.iso.forward = GradedMap(r.left.cx(), r.right.cx(), 0, fwd);
  r.iso.backward = GradedMap(r.right.cx(), r.left.cx(), 0, bwd);
  verify_iso(r.iso);
  return r;
}

bool isbell_natural_in_M(const BimoduleMorphism& mu, const Bimodule& X) {
  IsbellAdjunction at = isbell_adjunction(mu.target, X), at2 = isbell_adjunction(mu.source, X);
  Matrix pre = nat_precompose(at.left, at2.left, mu);
  Matrix post = nat_postcompose(at.right, at2.right, isbell_Spec_map(mu));
  return at2.iso.forward.m * pre == post * at.iso.forward.m;
}

bool isbell_natural_in_X(const Bimodule& M, const BimoduleMorphism& xi) {
  IsbellAdjunction at = isbell_adjunction(M, xi.target), at2 = isbell_adjunction(M, xi.source);
  Matrix post = nat_postcompose(at.left, at2.left, isbell_O_map(xi));
  Matrix pre = nat_precompose(at.right, at2.right, xi);
  return at2.iso.forward.m * post == pre * at.iso.forward.m;
}

BimoduleMorphism isbell_unit(const Bimodule& X) {
  Dual O = o_data(X);
  Dual S = spec_data(O.module);
  return to_right(BimoduleMorphism::identity(O.module), X, O, S);
}

BimoduleMorphism isbell_counit(const Bimodule& M) {
  Dual S = spec_data(M);
  Dual O = o_data(S.module);
  return to_left(BimoduleMorphism::identity(S.module), M, O, S);
}

Bimodule L_dual(const Bimodule& T) {
  const CatPtr &A = T.left_cat(), &B = T.right_cat();
  const int na = A->size();
  std::vector<Bimodule> X;
  std::vector<Dual> O;
  for (int i = 0; i < na; ++i) {
    X.push_back(component(T, i));
    O.push_back(o_data(X.back()));
  }
  std::vector<Complex> comps;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < B->size(); ++j) comps.push_back(O[i].nats[j].cx());
  return make_bimodule(
      B, A, "L(" + T.name() + ")", std::move(comps), [&](int i, int j, int j2, int g) { return O[i].module.lact(0, j, j2, g); },
      [&](int i2, int i, int j, int f) {
        BimoduleMorphism Lf{X[i2], X[i], A->deg(i2, i, f), {}};
        for (int b = 0; b < B->size(); ++b) Lf.comps.push_back(T.lact(b, i2, i, f));
        return nat_precompose(O[i].nats[j], O[i2].nats[j], Lf);
      });
}

Bimodule R_dual(const Bimodule& S) {
  const CatPtr &B = S.left_cat(), &A = S.right_cat();
  const int na = A->size();
  std::vector<Bimodule> M;
  std::vector<Dual> D;
  for (int i = 0; i < na; ++i) {
    M.push_back(co_component(S, i));
    D.push_back(spec_data(M.back()));
  }
  std::vector<Complex> comps;
  for (int j = 0; j < B->size(); ++j)
    for (int i = 0; i < na; ++i) comps.push_back(D[i].nats[j].cx());
  return make_bimodule(
      A, B, "R(" + S.name() + ")", std::move(comps),
      [&](int j, int i, int i2, int g) {
        const int dg = A->deg(i, i2, g);
        BimoduleMorphism Rg{M[i2], M[i], dg, {}};
        for (int b = 0; b < B->size(); ++b) Rg.comps.push_back(S.ract(i, i2, b, g) * sign_diag(S.comp(i2, b), dg));
        return nat_precompose(D[i].nats[j], D[i2].nats[j], Rg) * sign_diag(D[i].nats[j].cx(), dg);
      },
      [&](int j2, int j, int i, int f) { return D[i].module.ract(j2, j, 0, f); });
}

BimoduleMorphism LR_unit(const Bimodule& T) {
  Bimodule L = L_dual(T);
  Bimodule RL = R_dual(L);
  BimoduleMorphism u{T, RL, 0, std::vector<Matrix>(T.comps().size())};
  for (int a = 0; a < T.na(); ++a) {
    Bimodule X = component(T, a);
    Dual O = o_data(X);
    O.module = co_component(L, a);
    Dual S = spec_data(O.module);
    BimoduleMorphism piece = to_right(BimoduleMorphism::identity(O.module), X, O, S);
    for (int b = 0; b < T.nb(); ++b) u.comps[T.idx(b, a)] = piece.at(b, 0);
  }
  return u;
}

BimoduleMorphism LR_counit(const Bimodule& S) {
  Bimodule R = R_dual(S);
  Bimodule LR = L_dual(R);
  BimoduleMorphism u{S, LR, 0, std::vector<Matrix>(S.comps().size())};
  for (int i = 0; i < S.nb(); ++i) {
    Bimodule M = co_component(S, i);
    Dual D = spec_data(M);
    D.module = component(R, i);
    Dual O = o_data(D.module);
    BimoduleMorphism piece = to_left(BimoduleMorphism::identity(D.module), M, O, D);
    for (int j = 0; j < S.na(); ++j) u.comps[S.idx(i, j)] = piece.at(0, j);
  }
  return u;
}

std::string to_string(ReprKind k) {
  switch (k) {
    case ReprKind::strict: return "strict";
    case ReprKind::homotopy: return "homotopy";
    default: return "quasi";
  }
}

Bimodule represented_piece(const Bimodule& T, bool right, int a) { return right ? component(T, a) : co_component(T, a); }

namespace {

Bimodule candidate(const Bimodule& T, bool right, int c) {
  return right ? representable_right(T.right_cat(), c) : representable_left(T.left_cat(), c);
}

/// h with d h = w for a degree-0 boundary w in a Nat complex.
std::optional<BimoduleMorphism> contracting(const NatComplex& N, const BimoduleMorphism& w) {
  const Complex& C = N.cx();
  const Field K = C.field();
  Vector full = N.coords(w);
  Vector w0(full.begin() + C.offset(0), full.begin() + C.offset(0) + C.dim(0));
  Vector h(C.dim(), K.zero());
  if (C.dim(-1) > 0) {
    auto s = solve(C.diff(-1), w0);
    if (!s) return std::nullopt;
    for (int i = 0; i < C.dim(-1); ++i) h[C.offset(-1) + i] = (*s)[i];
  } else {
    for (const Scalar& x : w0)
      if (!x.is_zero()) return std::nullopt;
  }
  return N.morphism(h, -1);
}

ReprSearch search(const Bimodule& T, bool right, ReprKind kind, const Options& opt) {
  ReprSearch out;
  ReprWitness w;
  w.kind = kind;
  w.right = right;
  const int pieces = right ? T.na() : T.nb();
  const int cands = right ? T.nb() : T.na();
  const DgCategory& Pcat = right ? *T.left_cat() : *T.right_cat();
  for (int a = 0; a < pieces; ++a) {
    Bimodule P = represented_piece(T, right, a);
    bool found = false, exhaustive = true;
    for (int c = 0; c < cands && !found; ++c) {
      ModuleCategory MC = module_category({candidate(T, right, c), P});
      LinearCategory LC = kind == ReprKind::strict ? z0_category(*MC.cat) : h0_category(*MC.cat);
      IsoSearch s = find_isomorphism(LC, 0, 1, opt);
      exhaustive = exhaustive && s.exhaustive;
      if (!s.forward) continue;
      found = true;
      BimoduleMorphism u = MC.nat(0, 1).morphism(LC.reps[LC.pair(0, 1)].apply(*s.forward), 0);
      BimoduleMorphism v = MC.nat(1, 0).morphism(LC.reps[LC.pair(1, 0)].apply(*s.backward), 0);
      w.assignment.push_back(c);
      w.mediators.push_back(u);
      w.inverses.push_back(v);
      if (kind == ReprKind::homotopy) {
        auto hs = contracting(MC.nat(0, 0), compose(v, u) - BimoduleMorphism::identity(MC.objects[0]));
        auto ht = contracting(MC.nat(1, 1), compose(u, v) - BimoduleMorphism::identity(MC.objects[1]));
        if (!hs || !ht) throw std::logic_error("H^0 inverse without a contracting homotopy");
        w.homotopy_source.push_back(*hs);
        w.homotopy_target.push_back(*ht);
      }
    }
    if (!found) {
      out.exhaustive = exhaustive;
      out.detail = "no " + to_string(kind) + " witness for " + (right ? T.name() + "_" : T.name() + "^") + Pcat.object(a) +
                   (exhaustive ? "" : " (search not exhaustive)");
      return out;
    }
  }
  out.witness = std::move(w);
  out.exhaustive = true;
  return out;
}

}  // namespace

ReprSearch is_right_representable(const Bimodule& T, const Options& opt) { return search(T, true, ReprKind::strict, opt); }
ReprSearch is_left_representable(const Bimodule& S, const Options& opt) { return search(S, false, ReprKind::strict, opt); }
ReprSearch is_right_homotopy_representable(const Bimodule& T, const Options& opt) { return search(T, true, ReprKind::homotopy, opt); }
ReprSearch is_left_homotopy_representable(const Bimodule& S, const Options& opt) { return search(S, false, ReprKind::homotopy, opt); }

ValidationReport verify_repr_witness(const Bimodule& T, const ReprWitness& w) {
  const int pieces = w.right ? T.na() : T.nb();
  if (static_cast<int>(w.assignment.size()) != pieces || static_cast<int>(w.mediators.size()) != pieces)
    return ValidationReport::fail("witness covers every object", std::to_string(w.assignment.size()) + " entries");
  for (int a = 0; a < pieces; ++a) {
    const std::string at = "object " + std::to_string(a);
    Bimodule P = represented_piece(T, w.right, a);
    Bimodule H = candidate(T, w.right, w.assignment[a]);
    BimoduleMorphism u = w.mediators[a];
    u.source = H;
    u.target = P;
    if (u.degree != 0 || !validate_morphism(u).ok || !is_closed(u)) return ValidationReport::fail("mediator is a closed degree-0 morphism", at);
    if (w.kind == ReprKind::quasi) {
      if (!is_qis(u)) return ValidationReport::fail("mediator is a quasi-isomorphism", at);
      continue;
    }
    if (a >= static_cast<int>(w.inverses.size())) return ValidationReport::fail("inverse present", at);
    BimoduleMorphism v = w.inverses[a];
    v.source = P;
    v.target = H;
    if (v.degree != 0 || !validate_morphism(v).ok || !is_closed(v)) return ValidationReport::fail("inverse is a closed degree-0 morphism", at);
    BimoduleMorphism vu = compose(v, u) - BimoduleMorphism::identity(H);
    BimoduleMorphism uv = compose(u, v) - BimoduleMorphism::identity(P);
    if (w.kind == ReprKind::strict) {
      if (!(vu == BimoduleMorphism::zero(H, H, 0)) || !(uv == BimoduleMorphism::zero(P, P, 0)))
        return ValidationReport::fail("mediator and inverse compose to identities", at);
    } else {
      if (a >= static_cast<int>(w.homotopy_source.size()) || !(differential_of(w.homotopy_source[a]) == vu) ||
          !(differential_of(w.homotopy_target[a]) == uv))
        return ValidationReport::fail("composites are homotopic to identities", at);
    }
  }
  return ValidationReport::pass();
}

}  // namespace dgc
