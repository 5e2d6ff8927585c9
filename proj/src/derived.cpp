#include <stdexcept>

#include "dgc/derived.hpp"
#include "dgc/parallel.hpp"

namespace dgc {

BimoduleMorphism L_dual_map(const BimoduleMorphism& phi) {
  const Bimodule &Tp = phi.source, &T = phi.target;
  const CatPtr& B = T.right_cat();
  const int na = T.na(), nb = T.nb();
  BimoduleMorphism out{L_dual(T), L_dual(Tp), 0, {}};
  for (int i = 0; i < na; ++i) {
    Bimodule X = component(T, i), Xp = component(Tp, i);
    BimoduleMorphism phi_i{Xp, X, phi.degree, {}};
    for (int b = 0; b < nb; ++b) phi_i.comps.push_back(phi.at(b, i));
    for (int j = 0; j < nb; ++j) {
      Bimodule h = representable_right(B, j);
      out.comps.push_back(nat_precompose(nat_complex(X, h), nat_complex(Xp, h), phi_i));
    }
  }
  return out;
}

BimoduleMorphism R_dual_map(const BimoduleMorphism& mu) {
  const Bimodule &Sp = mu.source, &S = mu.target;
  const CatPtr& B = S.left_cat();
  const int na = S.nb(), nb = S.na();
  std::vector<Matrix> comps(static_cast<size_t>(na) * nb);
  for (int i = 0; i < na; ++i) {
    Bimodule M = co_component(S, i), Mp = co_component(Sp, i);
    BimoduleMorphism mu_i{Mp, M, mu.degree, {}};
    for (int j = 0; j < nb; ++j) mu_i.comps.push_back(mu.at(i, j));
    for (int j = 0; j < nb; ++j) {
      Bimodule h = representable_left(B, j);
      comps[static_cast<size_t>(j) * na + i] = nat_precompose(nat_complex(M, h), nat_complex(Mp, h), mu_i);
    }
  }
  return BimoduleMorphism{R_dual(S), R_dual(Sp), 0, std::move(comps)};
}

namespace {

/// Closed degree-0 quasi-isomorphism X -> Y drawn from H^0 Nat(X, Y).
SearchOutcome qis_search(const Bimodule& X, const Bimodule& Y, const Options& opt, std::optional<BimoduleMorphism>& found) {
  NatComplex N = nat_complex(X, Y);
  Cohomology H = cohomology(N.cx());
  const int k = H.H.dim(0), off = H.H.offset(0);
  const Field K = X.field();
  auto make = [&](const Vector& v) {
    Vector z(N.cx().dim(), K.zero());
    for (int j = 0; j < k; ++j)
      for (int r = 0; r < N.cx().dim(); ++r)
        if (!H.reps(r, off + j).is_zero()) z[r] += v[j] * H.reps(r, off + j);
    return N.morphism(z, 0);
  };
  int bound = 0;
  for (const Complex& c : X.comps()) bound += cohomology(c).H.dim();
  SearchOutcome s = search_coefficients(K, k, [&](const Vector& v) { return is_qis(make(v)); }, opt, bound);
  if (s.witness) found = make(*s.witness);
  return s;
}

bool same_cohomology(const Bimodule& X, const Bimodule& Y) {
  if (X.comps().size() != Y.comps().size()) return false;
  for (size_t i = 0; i < X.comps().size(); ++i)
    if (cohomology(X.comps()[i]).H.dims() != cohomology(Y.comps()[i]).H.dims()) return false;
  return true;
}

}  // namespace

HIso find_h_iso(const Bimodule& X, const Bimodule& Y, const Options& opt) {
  HIso out;
  if (!same_cohomology(X, Y)) {
    out.exhaustive = true;
    return out;
  }
  SearchOutcome s = qis_search(X, Y, opt, out.map);
  if (out.map) return out;
  SearchOutcome t = qis_search(Y, X, opt, out.map);
  out.forward = false;
  out.exhaustive = s.exhaustive && t.exhaustive;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct PieceResult {
  bool found = false, exhaustive = true;
  int assignment = -1;
  BimoduleMorphism mediator;
};

PieceResult quasi_piece(const Bimodule& T, bool right, int a, const Options& opt) {
  PieceResult r;
  Bimodule P = represented_piece(T, right, a);
  const int cands = right ? T.nb() : T.na();
  const CatPtr& C = right ? T.right_cat() : T.left_cat();
  const Field K = T.field();
  for (int c = 0; c < cands && !r.found; ++c) {
    Bimodule h = right ? representable_right(C, c) : representable_left(C, c);
    if (!same_cohomology(h, P)) continue;
    const Complex& Pc = right ? P.comp(c, 0) : P.comp(0, c);
    Cohomology H = cohomology(Pc);
    const int k = H.H.dim(0), off = H.H.offset(0);
    auto make = [&](const Vector& v) {
      Vector z(Pc.dim(), K.zero());
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < Pc.dim(); ++i)
          if (!H.reps(i, off + j).is_zero()) z[i] += v[j] * H.reps(i, off + j);
      BimoduleMorphism u{h, P, 0, {}};
      for (int x = 0; x < C->size(); ++x) {
        const int dim = C->hom(right ? x : c, right ? c : x).dim();
        Matrix m(K, right ? P.comp(x, 0).dim() : P.comp(0, x).dim(), dim);
        for (int f = 0; f < dim; ++f) m.set_col(f, (right ? P.ract(x, c, 0, f) : P.lact(0, c, x, f)).apply(z));
        u.comps.push_back(std::move(m));
      }
      return u;
    };
    int bound = 0;
    for (const Complex& pc : P.comps()) bound += cohomology(pc).H.dim();
    SearchOutcome s = search_coefficients(K, k, [&](const Vector& v) { return is_qis(make(v)); }, opt, bound);
    r.exhaustive = r.exhaustive && s.exhaustive;
    if (s.witness) {
      r.found = true;
      r.assignment = c;
      r.mediator = make(*s.witness);
    }
  }
  return r;
}

ReprSearch quasi_search(const Bimodule& T, bool right, const Options& opt) {
  const int pieces = right ? T.na() : T.nb();
  std::vector<PieceResult> res(pieces);
  for_each_index(pieces, opt.parallel, [&](int a) { res[a] = quasi_piece(T, right, a, opt); });
  ReprSearch out;
  ReprWitness w;
  w.kind = ReprKind::quasi;
  w.right = right;
  const DgCategory& Pcat = right ? *T.left_cat() : *T.right_cat();
  for (int a = 0; a < pieces; ++a) {
    if (!res[a].found) {
      out.exhaustive = res[a].exhaustive;
      out.detail = "no quasi witness for " + (right ? T.name() + "_" : T.name() + "^") + Pcat.object(a) +
                   (res[a].exhaustive ? "" : " (search not exhaustive)");
      return out;
    }
    w.assignment.push_back(res[a].assignment);
    w.mediators.push_back(res[a].mediator);
  }
  out.witness = std::move(w);
  out.exhaustive = true;
  return out;
}

}  // namespace

ReprSearch is_right_quasi_representable(const Bimodule& T, const Options& opt) { return quasi_search(T, true, opt); }
ReprSearch is_left_quasi_representable(const Bimodule& S, const Options& opt) { return quasi_search(S, false, opt); }

// ---------------------------------------------------------------------------

void check_triangles(AdjunctionWitness& w, const Options& opt) {
  const Bimodule &F = w.left, &G = w.right, &R = w.unit_source.resolved;
  const BimoduleMorphism& q = w.unit_source.qis;
  const Bimodule hA = diagonal(F.left_cat()), hB = diagonal(F.right_cat());
  const BimoduleMorphism idF = BimoduleMorphism::identity(F), idG = BimoduleMorphism::identity(G);
  Diamond GF = diamond(G, F, opt), FG = diamond(F, G, opt);

  Diamond F_R = diamond(F, R, opt), F_GF = diamond(F, GF.module, opt), FG_F = diamond(FG.module, F, opt);
  Diamond hB_F = diamond(hB, F, opt), F_hA = diamond(F, hA, opt);
  w.triangle_left = compose(left_unitor(hB_F),
                            compose(diamond_map(FG_F, hB_F, w.counit, idF),
                                    compose(associator(F_GF, GF, FG_F, FG), diamond_map(F_R, F_GF, idF, w.unit))));
  w.reference_left = compose(right_unitor(F_hA), diamond_map(F_R, F_hA, idF, q));

  Diamond R_G = diamond(R, G, opt), GF_G = diamond(GF.module, G, opt), G_FG = diamond(G, FG.module, opt);
  Diamond G_hB = diamond(G, hB, opt), hA_G = diamond(hA, G, opt);
  auto alpha_inv = inverse(associator(G_FG, FG, GF_G, GF));
  if (!alpha_inv) throw std::logic_error("associator is not invertible");
  w.triangle_right = compose(right_unitor(G_hB),
                             compose(diamond_map(G_FG, G_hB, idG, w.counit), compose(*alpha_inv, diamond_map(R_G, GF_G, w.unit, idG))));
  w.reference_right = compose(left_unitor(hA_G), diamond_map(R_G, hA_G, q, idG));

  w.triangles_exact = w.triangle_left == w.reference_left && w.triangle_right == w.reference_right;
  w.triangles_h = h_equal(w.triangle_left, w.reference_left) && h_equal(w.triangle_right, w.reference_right);
}

namespace {

/// η with n∘η = t∘q up to a boundary, as a closed degree-0 element of Nat(R, L⋄Q).
std::optional<BimoduleMorphism> lift_unit(const StructuralMaps& S, const ResolutionResult& R) {
  NatComplex N1 = nat_complex(R.resolved, S.LT.module), N2 = nat_complex(R.resolved, S.E);
  const Complex &C1 = N1.cx(), &C2 = N2.cx();
  const Field K = S.T.field();
  Vector tau = N2.coords(compose(S.t, R.qis));
  const int z0 = C1.dim(0), h0 = C2.dim(-1), r1 = C1.dim(1), r2 = C2.dim(0);
  Matrix M(K, r1 + r2, z0 + h0);
  if (r1 && z0) M.set_block(0, 0, C1.diff(0));
  Matrix nstar = nat_postcompose(N1, N2, S.n);
  if (r2 && z0) M.set_block(r1, 0, nstar.block(C2.offset(0), C1.offset(0), r2, z0));
  if (r2 && h0) M.set_block(r1, z0, -C2.diff(-1));
  Vector rhs(r1 + r2, K.zero());
  for (int i = 0; i < r2; ++i) rhs[r1 + i] = tau[C2.offset(0) + i];
  auto sol = solve(M, rhs);
  if (!sol) return std::nullopt;
  Vector z(C1.dim(), K.zero());
  for (int i = 0; i < z0; ++i) z[C1.offset(0) + i] = (*sol)[i];
  return N1.morphism(z, 0);
}

}  // namespace

AdjunctionWitness build_adjunction(const Bimodule& T, const Options& opt) {
  ReprSearch quasi = is_right_quasi_representable(T, opt);
  if (!quasi.witness) throw std::invalid_argument("build_adjunction: " + T.name() + " is not right quasi-representable: " + quasi.detail);
  const Bimodule hA = diagonal(T.left_cat());

  if (is_right_representable(T, opt).witness) {
    StructuralMaps S = structural_maps(T, opt);
    if (auto n_inv = inverse(S.n)) {
      AdjunctionWitness w;
      w.left = T;
      w.right = S.L;
      w.unit_source.resolved = hA;
      w.unit_source.qis = BimoduleMorphism::identity(hA);
      w.unit_source.certified = w.unit_source.qis_verified = true;
      w.unit_source.certificate.kind = "identity";
      w.unit = compose(*n_inv, S.t);
      w.unit.target = S.LT.module;
      w.counit = S.eps;
      w.exact = true;
      w.detail = "strict: T is right representable and n is invertible";
      check_triangles(w, opt);
      return w;
    }
  }

  ResolutionResult q = bar_resolution(T, opt);
  require_certified(q, opt, "build_adjunction");
  ResolutionResult r = bar_resolution(hA, opt);
  require_certified(r, opt, "build_adjunction");
  StructuralMaps S = structural_maps(q.resolved, opt);
  auto eta = lift_unit(S, r);
  if (!eta) throw std::logic_error("build_adjunction: t∘q does not lift through n");
  AdjunctionWitness w;
  w.left = q.resolved;
  w.right = S.L;
  w.unit_source = r;
  w.unit = *eta;
  w.counit = S.eps;
  w.exact = false;
  w.resolution = q;
  w.detail = "derived: unit lifted through n on the bar resolution of h_A";
  check_triangles(w, opt);
  return w;
}

AdjunctionWitness co_build_adjunction(const Bimodule& S, const Options& opt) {
  if (is_left_representable(S, opt).witness) {
    Bimodule F = R_dual(S);
    AdjunctionWitness w = build_adjunction(F, opt);
    BimoduleMorphism kappa = LR_counit(S);
    auto kappa_inv = inverse(kappa);
    if (w.exact && kappa_inv) {
      const BimoduleMorphism idF = BimoduleMorphism::identity(F);
      Diamond GF = diamond(w.right, F, opt), SF = diamond(S, F, opt);
      Diamond FS = diamond(F, S, opt), FG = diamond(F, w.right, opt);
      kappa_inv->source = w.right;
      kappa_inv->target = S;
      w.unit = compose(diamond_map(GF, SF, *kappa_inv, idF), w.unit);
      w.counit = compose(w.counit, diamond_map(FS, FG, idF, kappa));
      w.right = S;
      w.comparison = kappa;
      w.detail = "strict: transported along the Isbell counit";
      check_triangles(w, opt);
      return w;
    }
  }
  ResolutionResult qs = bar_resolution(S, opt);
  require_certified(qs, opt, "co_build_adjunction");
  Bimodule F = R_dual(qs.resolved);
  AdjunctionWitness w = build_adjunction(F, opt);
  BimoduleMorphism kappa = LR_counit(qs.resolved);
  w.comparison = w.resolution ? compose(L_dual_map(w.resolution->qis), kappa) : kappa;
  w.detail += "; right adjoint compared with the resolution of " + S.name();
  return w;
}

AdjointDecision has_left_adjoint(const Bimodule& S, const Options& opt) {
  AdjointDecision d;
  d.search = is_left_quasi_representable(S, opt);
  d.exhaustive = d.search.exhaustive;
  if (!d.search.witness) return d;
  d.adjunction = co_build_adjunction(S, opt);
  d.exists = d.adjunction->ok();
  return d;
}

// ---------------------------------------------------------------------------

DerivedComposite derived_compose(const Bimodule& G, const Bimodule& F, const Options& opt) {
  DerivedComposite out;
  out.rf = resolve(F, true, opt);
  require_certified(out.rf, opt, "derived_compose");
  out.rg = resolve(G, false, opt);
  require_certified(out.rg, opt, "derived_compose");
  out.diamond = diamond(out.rg.resolved, out.rf.resolved, opt);
  return out;
}

namespace {

/// A cycle x' with q(x') = x modulo boundaries, in component (b,a) of a resolution.
std::optional<Vector> lift_cycle(const ResolutionResult& r, int b, int a, const Vector& x) {
  const Complex &Qc = r.resolved.comp(b, a), &Tc = r.qis.target.comp(b, a);
  const Field K = Qc.field();
  const int z0 = Qc.dim(0), w0 = Tc.dim(-1), r1 = Qc.dim(1), r2 = Tc.dim(0);
  Matrix M(K, r1 + r2, z0 + w0);
  if (r1 && z0) M.set_block(0, 0, Qc.diff(0));
  if (r2 && z0) M.set_block(r1, 0, r.qis.at(b, a).block(Tc.offset(0), Qc.offset(0), r2, z0));
  if (r2 && w0) M.set_block(r1, z0, -Tc.diff(-1));
  Vector rhs(r1 + r2, K.zero());
  for (int i = 0; i < r2; ++i) rhs[r1 + i] = x[Tc.offset(0) + i];
  auto sol = solve(M, rhs);
  if (!sol) return std::nullopt;
  Vector out(Qc.dim(), K.zero());
  for (int i = 0; i < z0; ++i) out[Qc.offset(0) + i] = (*sol)[i];
  return out;
}

}  // namespace

QuasiComposite quasi_functor_compose(const Bimodule& G, const Bimodule& F, const Options& opt) {
  ReprSearch sf = is_right_quasi_representable(F, opt), sg = is_right_quasi_representable(G, opt);
  if (!sf.witness) throw std::invalid_argument("quasi_functor_compose: " + sf.detail);
  if (!sg.witness) throw std::invalid_argument("quasi_functor_compose: " + sg.detail);
  QuasiComposite out;
  out.composite = derived_compose(G, F, opt);
  const Diamond& D = out.composite.diamond;
  const Bimodule& M = D.module;
  const CatPtr &B = F.right_cat(), &C = G.right_cat();
  const Field K = F.field();
  out.witness.kind = ReprKind::quasi;
  out.witness.right = true;
  for (int a = 0; a < F.na(); ++a) {
    const int fa = sf.witness->assignment[a], gfa = sg.witness->assignment[fa];
    Vector x = sf.witness->mediators[a].at(fa, 0).apply(B->id(fa));
    Vector y = sg.witness->mediators[fa].at(gfa, 0).apply(C->id(gfa));
    auto xl = lift_cycle(out.composite.rf, fa, a, x);
    auto yl = lift_cycle(out.composite.rg, gfa, fa, y);
    if (!xl || !yl) throw std::logic_error("quasi_functor_compose: a unit does not lift to the resolution");
    Vector z(M.comp(gfa, a).dim(), K.zero());
    for (size_t i = 0; i < xl->size(); ++i)
      for (size_t j = 0; j < yl->size(); ++j) {
        if ((*xl)[i].is_zero() || (*yl)[j].is_zero()) continue;
        Vector cls = D.class_of(gfa, a, fa, static_cast<int>(i), static_cast<int>(j));
        Scalar s = (*xl)[i] * (*yl)[j];
        for (size_t r = 0; r < cls.size(); ++r)
          if (!cls[r].is_zero()) z[r] += s * cls[r];
      }
    Bimodule Ma = component(M, a);
    BimoduleMorphism u{representable_right(C, gfa), Ma, 0, {}};
    for (int c = 0; c < C->size(); ++c) {
      Matrix m(K, M.comp(c, a).dim(), C->hom(c, gfa).dim());
      for (int f = 0; f < C->hom(c, gfa).dim(); ++f) m.set_col(f, M.ract(c, gfa, a, f).apply(z));
      u.comps.push_back(std::move(m));
    }
    out.witness.assignment.push_back(gfa);
    out.witness.mediators.push_back(std::move(u));
  }
  out.verified = verify_repr_witness(M, out.witness).ok;
  return out;
}

DerivedDualityUnit derived_duality_unit(const Bimodule& T, const Options& opt) {
  DerivedDualityUnit out;
  out.rt = resolve(T, true, opt);
  require_certified(out.rt, opt, "derived_duality_unit");
  const Bimodule& Q = out.rt.resolved;
  out.rl = resolve(L_dual(Q), false, opt);
  require_certified(out.rl, opt, "derived_duality_unit");
  out.unit = compose(R_dual_map(out.rl.qis), LR_unit(Q));
  out.unit.source = Q;
  out.iso = true;
  for (int a = 0; a < Q.na(); ++a) {
    bool ok = true;
    for (int b = 0; b < Q.nb() && ok; ++b) ok = is_quasi_iso(out.unit.graded(b, a));
    out.iso_at.push_back(ok);
    out.iso = out.iso && ok;
  }
  return out;
}

}  // namespace dgc
