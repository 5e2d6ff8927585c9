// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "../tools/commands.hpp"
#include "dgc/derived.hpp"
#include "dgc/fixtures.hpp"
#include "support/generators.hpp"

using namespace dgc;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

std::vector<CatPtr> zoo(Field F) {
  return {fixtures::q2(F), fixtures::dual_numbers(F), fixtures::truncated_odd(F), fixtures::contractible_pair(F), fixtures::homotopy_pair(F)};
}

/// k at one object, non-identity basis morphisms acting by zero.
Bimodule simple(const CatPtr& A, int at) {
  const Field F = A->field();
  const int n = A->size();
  std::vector<Complex> comps;
  for (int x = 0; x < n; ++x) comps.push_back(x == at ? Complex::from_dims(F, {{0, 1}}) : Complex::from_dims(F, {}));
  std::vector<std::vector<Matrix>> right(static_cast<size_t>(n) * n);
  for (int b2 = 0; b2 < n; ++b2)
    for (int b = 0; b < n; ++b)
      for (int f = 0; f < A->hom(b2, b).dim(); ++f)
        right[b2 * n + b].push_back(b2 == b && !A->id(b)[f].is_zero() ? Matrix::identity(F, comps[b].dim())
                                                                      : Matrix(F, comps[b2].dim(), comps[b].dim()));
  return right_module(A, "S_" + A->object(at), comps, right);
}

Bimodule cone_deformed(const CatPtr& Q2) {
  return direct_sum({representable_right(Q2, 0), cone(BimoduleMorphism::identity(representable_right(Q2, 1))).cone});
}

// --- 1 ----------------------------------------------------------------------

CatPtr with_lmul(const CatPtr& A, int a, int b, int c, int g, int r, int col, const Scalar& v) {
  DgCategory::Data D = A->data();
  D.lmul[A->triple(a, b, c)][g](r, col) = v;
  return std::make_shared<const DgCategory>(D);
}

int label_index(const DgCategory& A, int a, int b, const std::string& label) {
  for (int i = 0; i < A.hom(a, b).dim(); ++i)
    if (A.label(a, b, i) == label) return i;
  throw std::out_of_range("no basis element " + label);
}

Verdict validator_mutations() {
  Verdict v;
  struct Fault {
    std::string name, axiom;
    std::function<ValidationReport()> run;
  };
  const CatPtr q2 = fixtures::q2(Q), cp = fixtures::contractible_pair(Q), hp = fixtures::homotopy_pair(Q), to = fixtures::truncated_odd(Q);
  const CatPtr B = fixtures::point(Q, "b");
  auto module_fault = [](Bimodule M, bool left, size_t slot, int g, int r, int c, std::optional<Scalar> value) {
    Bimodule::Data D = M.data();
    Matrix& m = (left ? D.left : D.right)[slot][g];
    m(r, c) = value ? *value : -m(r, c);
    return validate_bimodule(Bimodule(D));
  };
  std::vector<Fault> faults = {
      {"Q2: 1_b∘f dropped", "left unit law", [&] { return validate_dgcat(*with_lmul(q2, 0, 1, 1, 0, 0, 0, Q.zero())); }},
      {"Q2: f∘1_a dropped", "right unit law", [&] { return validate_dgcat(*with_lmul(q2, 0, 0, 1, 0, 0, 0, Q.zero())); }},
      {"contractible pair: ε∘ε := δ", "composition has degree 0", [&] { return validate_dgcat(*with_lmul(cp, 0, 0, 0, 0, 2, 0, Q.one())); }},
      {"contractible pair: δ∘δ := δ", "Leibniz rule", [&] { return validate_dgcat(*with_lmul(cp, 0, 0, 0, 2, 2, 2, Q.one())); }},
      {"homotopy pair: t∘s sign flip", "Leibniz rule",
       [&] {
         const int t = label_index(*hp, 1, 1, "t"), sq = label_index(*hp, 1, 1, "s");
         return validate_dgcat(*with_lmul(hp, 1, 1, 1, t, sq, sq, -Q.one()));
       }},
      {"homotopy pair: identity of p scaled by 2", "left unit law",
       [&] {
         DgCategory::Data D = hp->data();
         for (Scalar& x : D.ids[0]) x = x * Q.from_int(2);
         return validate_dgcat(DgCategory(D));
       }},
      {"collapse functor: identity of a dropped", "functor preserves identities",
       [&] {
         DgFunctor P = fixtures::collapse(q2, B);
         std::vector<Matrix> maps = P.maps();
         maps[q2->pair(0, 0)] = Matrix(Q, 1, 1);
         return validate_functor(DgFunctor(q2, B, P.object_map(), maps));
       }},
      {"identity functor of contractible pair: ε sign flip", "functor commutes with d",
       [&] {
         DgFunctor I = DgFunctor::identity(cp);
         std::vector<Matrix> maps = I.maps();
         maps[0](0, 0) = -maps[0](0, 0);
         return validate_functor(DgFunctor(cp, cp, I.object_map(), maps));
       }},
      {"cone(1_{h_b}) over Q2: right action sign flip", "right action is a chain map",
       [&] { return module_fault(cone(BimoduleMorphism::identity(representable_right(q2, 1))).cone, false, (0 * 2 + 1) * 1 + 0, 0, 0, 0, {}); }},
      {"diagonal of truncated odd: left action of e doubled", "left associativity",
       [&] {
         Bimodule D = diagonal(to);
         Bimodule::Data bad = D.data();
         bad.left[0][1] = bad.left[0][1].scaled(Q.from_int(2));
         return validate_bimodule(Bimodule(bad));
       }},
      {"diagonal of Q2: right unit dropped", "right unit",
       [&] { return module_fault(diagonal(q2), false, (1 * 2 + 1) * 2 + 1, 0, 0, 0, Q.zero()); }},
      {"identity of h_b over Q2: sign flip at b", "φ(xf) = φ(x)f",
       [&] {
         BimoduleMorphism phi = BimoduleMorphism::identity(representable_right(q2, 1));
         phi.comps[phi.source.idx(1, 0)] = -phi.comps[phi.source.idx(1, 0)];
         return validate_morphism(phi);
       }},
  };
  int named = 0;
  for (const Fault& f : faults) {
    ValidationReport r;
    try {
      r = f.run();
    } catch (const std::exception& e) {
      v.require(false, f.name + " threw " + e.what());
      continue;
    }
    const bool ok = !r.ok && r.axiom == f.axiom;
    named += ok;
    v.require(ok, f.name + ": got " + (r.ok ? std::string("pass") : "'" + r.axiom + "'") + ", expected '" + f.axiom + "'");
  }
  for (Field F : {Q, F2})
    for (const CatPtr& A : zoo(F)) {
      v.require(validate_dgcat(*A).ok, A->name() + " unmutated fails");
      v.require(validate_bimodule(diagonal(A)).ok, A->name() + " diagonal fails");
    }
  v.require(validate_functor(fixtures::collapse(q2, B)).ok, "collapse unmutated fails");
  if (v.pass) v.detail = std::to_string(named) + "/" + std::to_string(faults.size()) + " faults named, unmutated fixtures pass";
  v.require(faults.size() == 12, "expected 12 faults");
  return v;
}

// --- 2 ----------------------------------------------------------------------

Verdict yoneda() {
  Verdict v;
  int checked = 0;
  testgen::Rng rng(0x10e);
  for (Field F : {Q, F2})
    for (const CatPtr& A : {fixtures::q2(F), fixtures::dual_numbers(F)}) {
      std::vector<Bimodule> right, left;
      for (int a = 0; a < A->size(); ++a) {
        right.push_back(representable_right(A, a));
        right.push_back(shift(simple(A, a), 1));
        left.push_back(representable_left(A, a));
      }
      right.push_back(cone(BimoduleMorphism::identity(right.front())).cone);
      for (int t = 0; t < 3; ++t) {
        right.push_back(testgen::random_right_module(A, rng, 6));
        left.push_back(testgen::random_left_module(A, rng, 6));
      }
      for (int a = 0; a < A->size(); ++a) {
        for (const Bimodule& M : right) {
          YonedaIso y = yoneda_iso(A, a, M);
          v.require(verify_iso(y.iso), "right Yoneda at " + A->object(a) + " over " + A->name());
          ++checked;
        }
        for (const Bimodule& M : left) {
          YonedaIso y = yoneda_iso_left(A, a, M);
          v.require(verify_iso(y.iso), "left Yoneda at " + A->object(a) + " over " + A->name());
          ++checked;
        }
      }
    }
  if (v.pass) v.detail = std::to_string(checked) + " (object, module) pairs round-trip";
  return v;
}

// --- 3 ----------------------------------------------------------------------

Verdict end_coend_oracle() {
  Verdict v;
  testgen::Rng rng(0xe11d);
  int n = 0;
  for (int trial = 0; trial < 100; ++trial) {
    CatPtr A = testgen::random_category(F2, rng, 3);
    Bimodule T = testgen::random_bimodule(A, rng, 12);
    v.require(A->size() <= 3 && T.total_dim() <= 12 && validate_bimodule(T).ok, "generator out of bounds at trial " + std::to_string(trial));
    oracle::Comparison e = oracle::compare_end(end_bimodule(T)), c = oracle::compare_coend(coend_bimodule(T));
    v.require(e.ok(), "end disagrees at trial " + std::to_string(trial));
    v.require(c.ok(), "coend disagrees at trial " + std::to_string(trial));
    ++n;
  }
  if (v.pass) v.detail = std::to_string(n) + " random F2 bimodules, dimensions and maps agree";
  return v;
}

// --- 4 ----------------------------------------------------------------------

Verdict coyoneda_fubini() {
  Verdict v;
  int n = 0;
  for (Field F : {Q, F2})
    for (const CatPtr& A : zoo(F))
      for (int b = 0; b < A->size(); ++b) {
        for (const Bimodule& M : {representable_left(A, b), shift(representable_right(A, b), 1)}) {
          CoyonedaWitness w = coyoneda_witness(M);
          bool round = w.isomorphisms && w.natural;
          for (size_t x = 0; x < w.maps.size() && round; ++x) {
            GradedMap& m = w.maps[x];
            auto inv = inverse(m.m);
            round = inv && (m.m * *inv).is_identity() && (*inv * m.m).is_identity();
          }
          v.require(round, "co-Yoneda over " + A->name());
          ++n;
        }
      }
  for (Field F : {Q, F2}) {
    std::vector<std::pair<CatPtr, CatPtr>> pairs = {{fixtures::q2(F), fixtures::q2(F)},
                                                    {fixtures::q2(F), fixtures::dual_numbers(F)},
                                                    {fixtures::truncated_odd(F), fixtures::dual_numbers(F)},
                                                    {fixtures::contractible_pair(F), fixtures::q2(F)},
                                                    {fixtures::homotopy_pair(F), unit_category(F)}};
    for (const auto& [A, B] : pairs) {
      CatPtr AB = tensor_dgcat(*A, *B);
      FubiniWitness w = fubini_witness(external_product(diagonal(A), diagonal(B), AB, AB), A, B);
      bool round = w.isomorphic;
      for (int i = 0; i < 3 && round; ++i)
        for (int j = 0; j < 3 && round; ++j) round = (w.w[i][j].m * w.w[j][i].m).is_identity();
      v.require(round, "Fubini over " + A->name() + "⊗" + B->name() + ": " + w.detail);
      ++n;
    }
  }
  if (v.pass) v.detail = std::to_string(n) + " witnesses, identity round-trips";
  return v;
}

// --- 5 ----------------------------------------------------------------------

BimoduleMorphism yoneda_O(const CatPtr& A, int a) {
  BimoduleMorphism m{isbell_O(representable_right(A, a)), representable_left(A, a), 0, {}};
  for (int b = 0; b < A->size(); ++b) m.comps.push_back(yoneda_iso(A, a, representable_right(A, b)).iso.forward.m);
  return m;
}

BimoduleMorphism yoneda_Spec(const CatPtr& A, int a) {
  BimoduleMorphism m{isbell_Spec(representable_left(A, a)), representable_right(A, a), 0, {}};
  for (int b = 0; b < A->size(); ++b) m.comps.push_back(yoneda_iso_left(A, a, representable_left(A, b)).iso.forward.m);
  return m;
}

Verdict isbell() {
  Verdict v;
  testgen::Rng rng(0x15be11);
  for (Field F : {Q, F2})
    for (const CatPtr& A : zoo(F)) {
      for (int a = 0; a < A->size(); ++a) {
        BimoduleMorphism o = yoneda_O(A, a), s = yoneda_Spec(A, a);
        v.require(validate_morphism(o).ok && is_iso(o), "O(h_a) ≅ h^a over " + A->name());
        v.require(validate_morphism(s).ok && is_iso(s), "Spec(h^a) ≅ h_a over " + A->name());
      }
      IsbellAdjunction adj = isbell_adjunction(testgen::random_left_module(A, rng, 5), testgen::random_right_module(A, rng, 5));
      v.require(verify_iso(adj.iso), "Isbell adjunction iso over " + A->name());
    }
  CatPtr q2 = fixtures::q2(Q), B = fixtures::point(Q, "b");
  for (const DgFunctor& G : {fixtures::collapse(q2, B), fixtures::inclusion(B, q2), DgFunctor::identity(q2)}) {
    BimoduleMorphism u = LR_unit(h_lower(G));
    v.require(is_closed(u) && is_iso(u), "LR unit at h_F for " + G.name());
  }
  if (v.pass) v.detail = "dual representables, adjunction round-trips, LR unit iso at h_F";
  return v;
}

// --- 6 ----------------------------------------------------------------------

Verdict structural_maps_check() {
  Verdict v;
  for (Field F : {Q, F2}) {
    CatPtr q2 = fixtures::q2(F), B = fixtures::point(F, "b");
    for (const DgFunctor& G : {fixtures::collapse(q2, B), fixtures::inclusion(B, q2), DgFunctor::identity(q2), DgFunctor::identity(fixtures::truncated_odd(F))}) {
      StructuralMaps S = structural_maps(h_lower(G));
      v.require(is_iso(S.n), "n not an isomorphism for h_" + G.name());
      DiagramReport r = verify_quasiadj_diagrams(S, false);
      v.require(r.ok && r.top_T && r.top_L && r.cell_T && r.cell_L, "diagrams for h_" + G.name() + ": " + r.first_failure);
    }
  }
  if (v.pass) v.detail = "n exact iso, both diagrams commute, top rows identities";
  return v;
}

// --- 7 ----------------------------------------------------------------------

Verdict derived_pipeline() {
  Verdict v;
  CatPtr q2 = fixtures::q2(Q), B = fixtures::point(Q, "b");
  ResolutionResult r = bar_resolution(diagonal(q2));
  v.require(r.certified && r.qis_verified && r.depth == 2, "bar resolution of diag(Q2)");
  DgFunctor P = fixtures::collapse(q2, B), I = fixtures::inclusion(B, q2);
  for (const auto& [G, Fn] : std::vector<std::pair<DgFunctor, DgFunctor>>{{P, I}, {I, P}, {P, DgFunctor::identity(q2)}}) {
    QuasiComposite c = quasi_functor_compose(h_lower(G), h_lower(Fn));
    HIso iso = find_h_iso(c.composite.module(), h_lower(compose_functors(G, Fn)));
    v.require(c.verified && iso.map.has_value(), "h_G ⋄ᴸ h_F vs h_GF for " + G.name() + "∘" + Fn.name());
  }
  int n = 0;
  for (const CatPtr& A : {q2, fixtures::truncated_odd(Q), fixtures::homotopy_pair(Q)}) {
    std::vector<Bimodule> Ms;
    for (int b = 0; b < A->size(); ++b) {
      Ms.push_back(representable_right(A, b));
      Ms.push_back(shift(representable_right(A, b), -1));
    }
    if (A == q2) {
      Ms.push_back(simple(A, 0));
      Ms.push_back(simple(A, 1));
      Ms.push_back(cone_deformed(A));
    }
    for (int a = 0; a < A->size(); ++a)
      for (const Bimodule& M : Ms) {
        DerivedHom D = derived_hom(representable_right(A, a), M);
        v.require(D.dims == cohomology(M.comp(a, 0)).H.dims(), "RHom(h_a, M) over " + A->name());
        ++n;
      }
  }
  if (v.pass) v.detail = "diag(Q2) certified at depth 2, composites H-iso, " + std::to_string(n) + " derived homs";
  return v;
}

// --- 8 ----------------------------------------------------------------------

Verdict adjoint_characterization() {
  Verdict v;
  for (Field F : {Q, F2}) {
    CatPtr q2 = fixtures::q2(F), B = fixtures::point(F, "b");
    DgFunctor P = fixtures::collapse(q2, B), I = fixtures::inclusion(B, q2);
    v.require(verify_dg_adjunction(P, I, fixtures::collapse_adjunction(P, I)).ok, "P ⊣ I is not a dg-adjunction");
    AdjointDecision d = has_left_adjoint(h_lower(I));
    v.require(d.exists && d.adjunction.has_value(), "no left adjoint for h_I over " + F.name());
    if (d.adjunction) v.require(find_h_iso(d.adjunction->left, h_lower(P)).map.has_value(), "left adjoint not H-iso to h_P");
  }
  CatPtr q2 = fixtures::q2(F2), A = fixtures::point(F2, "a");
  AdjointDecision neg = has_left_adjoint(h_lower(fixtures::inclusion(A, q2)));
  v.require(!neg.exists && neg.exhaustive, "negative fixture not decided exhaustively");
  if (v.pass) v.detail = "positive with H-iso left adjoint, negative proved exhaustively over F2";
  return v;
}

// --- 9 ----------------------------------------------------------------------

/// h^c ⊗ h_a of least nonzero total dimension over the categories of T.
Bimodule smallest_tensor(const Bimodule& T) {
  std::optional<Bimodule> best;
  for (int c = 0; c < T.na(); ++c)
    for (int a = 0; a < T.nb(); ++a) {
      Bimodule X = external_tensor(representable_left(T.left_cat(), c), representable_right(T.right_cat(), a));
      if (X.total_dim() > 0 && (!best || X.total_dim() < best->total_dim())) best = X;
    }
  return *best;
}

Verdict triangles_and_uniqueness() {
  Verdict v;
  int n = 0;
  for (Field F : {Q, F2}) {
    CatPtr q2 = fixtures::q2(F), B = fixtures::point(F, "b");
    std::vector<Bimodule> positives = {h_lower(fixtures::collapse(q2, B)), h_lower(fixtures::inclusion(B, q2)), h_lower(DgFunctor::identity(q2)),
                                       cone_deformed(q2)};
    for (const Bimodule& T : positives) {
      AdjunctionWitness w = build_adjunction(T);
      v.require(w.triangles_h, "triangles for " + T.name() + " over " + F.name());
      Bimodule padded = direct_sum({T, cone(BimoduleMorphism::identity(smallest_tensor(T))).cone});
      AdjunctionWitness w2 = build_adjunction(padded);
      v.require(w2.triangles_h, "triangles for padded " + T.name());
      v.require(find_h_iso(w.left, w2.left).map.has_value(), "two witnesses not H-iso for " + T.name());
      ++n;
    }
  }
  if (v.pass) v.detail = std::to_string(n) + " fixtures: triangles in H0, two witnesses H-iso";
  return v;
}

// --- 10 ---------------------------------------------------------------------

Verdict cli_determinism() {
  Verdict v;
  std::ifstream in(std::string(DGC_TEST_DIR) + "/cli_suite.txt");
  v.require(static_cast<bool>(in), "cli_suite.txt missing");
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream s(line);
    int expected;
    cli::Invocation inv;
    s >> expected >> inv.command >> inv.workspace;
    inv.workspace = std::string(DGC_TEST_DIR) + "/workspaces/" + inv.workspace;
    std::string tok;
    while (s >> tok) {
      if (tok == "--force-uncertified") inv.opt.force_uncertified = true;
      else if (tok == "--depth") s >> inv.opt.depth;
      else {
        std::string val;
        s >> val;
        inv.args[tok.substr(2)] = val;
      }
    }
    cli::Outcome a = cli::run(inv), b = cli::run(inv);
    cli::Invocation par = inv;
    par.opt.parallel = true;
    cli::Outcome c = cli::run(par);
    const std::string da = a.report.dump(2);
    v.require(da == b.report.dump(2) && da == c.report.dump(2), "report differs across runs: " + line);
    v.require(a.exit == expected && b.exit == expected && c.exit == expected, "exit " + std::to_string(a.exit) + " for: " + line);
    ++n;
  }
  if (v.pass) v.detail = std::to_string(n) + " commands, three runs each (one parallel), byte-identical";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"validator mutation suite", validator_mutations},
      {"Yoneda round-trips", yoneda},
      {"end/coend oracle equivalence", end_coend_oracle},
      {"co-Yoneda and Fubini", coyoneda_fubini},
      {"Isbell duality", isbell},
      {"structural maps and diagrams", structural_maps_check},
      {"derived pipeline", derived_pipeline},
      {"adjoint characterization", adjoint_characterization},
      {"triangle identities and uniqueness", triangles_and_uniqueness},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !v.pass;
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << "criterion " << (i + 1) << " " << (v.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": " << v.detail << " [" << t.str()
              << "s]" << std::endl;
  }
  return failures;
}
