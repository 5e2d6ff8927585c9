#include "commands.hpp"

#include <cstdio>
#include <sstream>

#include "dgc/derived.hpp"
#include "dgc/workspace.hpp"

namespace dgc::cli {

using ojson = nlohmann::ordered_json;

std::string hex_seed(uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(seed));
  return buf;
}

namespace {

struct Context {
  const Invocation& inv;
  Workspace ws;
  ojson result = ojson::object();
  ojson certification = ojson::array();
  std::vector<std::string> summary;
  int exit = Exit::ok;

  const std::string& arg(const std::string& name) const { return inv.args.at(name); }
  bool has(const std::string& name) const { return inv.args.count(name) && !inv.args.at(name).empty(); }
  const Options& opt() const { return inv.opt; }

  const Bimodule& module(const std::string& name) const {
    try {
      return ws.module(arg(name));
    } catch (const WorkspaceError&) {
      throw WorkspaceError("arguments/--" + name, "no module named '" + arg(name) + "'");
    }
  }
  const CatPtr& category(const std::string& name) const {
    try {
      return ws.category(arg(name));
    } catch (const WorkspaceError&) {
      throw WorkspaceError("arguments/--" + name, "no category named '" + arg(name) + "'");
    }
  }
  void say(std::string line) { summary.push_back(std::move(line)); }
  /// Marks a verified negative unless something worse was already recorded.
  void negative() {
    if (exit == Exit::ok) exit = Exit::negative;
  }
};

ojson dims_json(const std::map<int, int>& dims) {
  ojson out = ojson::object();
  for (auto [deg, n] : dims)
    if (n) out[std::to_string(deg)] = n;
  return out;
}

std::string dims_text(const std::map<int, int>& dims) {
  std::ostringstream s;
  s << "{";
  bool first = true;
  for (auto [deg, n] : dims)
    if (n) {
      s << (first ? "" : ", ") << deg << ": " << n;
      first = false;
    }
  s << "}";
  return s.str();
}

std::map<int, int> h_dims(const Complex& C) { return cohomology(C).H.dims(); }

ojson complex_json(const Complex& C) { return ojson{{"dims", dims_json(C.dims())}, {"cohomology", dims_json(h_dims(C))}}; }

ojson at_json(const Bimodule& M, int b, int a) { return ojson::array({M.right_cat()->object(b), M.left_cat()->object(a)}); }

/// Per-component dimensions and cohomology.
ojson module_summary(const Bimodule& M) {
  ojson comps = ojson::array();
  for (int b = 0; b < M.nb(); ++b)
    for (int a = 0; a < M.na(); ++a) {
      ojson c = complex_json(M.comp(b, a));
      c["at"] = at_json(M, b, a);
      comps.push_back(std::move(c));
    }
  return ojson{{"left", M.left_cat()->name()}, {"right", M.right_cat()->name()}, {"components", std::move(comps)}};
}

ojson morphism_json(const BimoduleMorphism& phi) {
  ojson comps = ojson::array();
  const Bimodule& S = phi.source;
  for (int b = 0; b < S.nb(); ++b)
    for (int a = 0; a < S.na(); ++a) {
      const Matrix& m = phi.at(b, a);
      if (m.rows() == 0 || m.cols() == 0) continue;
      comps.push_back(ojson{{"at", at_json(S, b, a)}, {"matrix", matrix_json(m)}});
    }
  return ojson{{"degree", phi.degree}, {"closed", is_closed(phi)}, {"components", std::move(comps)}};
}

std::map<int, int> dims_of_total(const Bimodule& M) {
  std::map<int, int> out;
  for (const Complex& C : M.comps())
    for (auto [d, n] : C.dims()) out[d] += n;
  return out;
}

/// Explicit module, with categories outside the workspace serialized by their own names.
ojson module_dump(Context& cx, const std::string& name, const Bimodule& M) {
  std::map<std::string, CatPtr> cats = cx.ws.categories;
  const CatPtr unit = unit_category(M.field());
  for (const CatPtr& C : {M.left_cat(), M.right_cat()}) {
    bool known = same_category(C, unit);
    for (const auto& [n, D] : cats) known = known || same_category(C, D);
    if (!known) cats[C->name()] = C;
  }
  return module_json(name, M, cats);
}

void record(Context& cx, const std::string& what, const ResolutionResult& r) {
  const BarCertificate& c = r.certificate;
  ojson gens = ojson::object();
  for (auto [len, n] : c.generators) gens[std::to_string(len)] = n;
  ojson entry{{"of", what},
              {"kind", c.kind},
              {"depth", r.depth},
              {"certified", r.certified},
              {"qis_verified", r.qis_verified},
              {"filtered", c.filtered},
              {"terminated", c.terminated},
              {"generators", std::move(gens)}};
  entry["longest_beyond"] = c.longest_beyond ? ojson(*c.longest_beyond) : ojson(nullptr);
  entry["reason"] = c.reason;
  cx.certification.push_back(std::move(entry));
}

ojson witness_json(const Bimodule& T, const ReprWitness& w) {
  const DgCategory& A = *T.left_cat();
  const DgCategory& target = w.right ? *T.right_cat() : *T.left_cat();
  const DgCategory& source = w.right ? A : *T.right_cat();
  ojson assignment = ojson::object();
  for (size_t i = 0; i < w.assignment.size(); ++i) assignment[source.object(static_cast<int>(i))] = target.object(w.assignment[i]);
  ojson mediators = ojson::array();
  for (const BimoduleMorphism& m : w.mediators) mediators.push_back(morphism_json(m));
  return ojson{{"kind", to_string(w.kind)}, {"side", w.right ? "right" : "left"}, {"assignment", std::move(assignment)},
               {"mediators", std::move(mediators)}, {"verified", verify_repr_witness(T, w).ok}};
}

// --- commands ---------------------------------------------------------------

void cmd_validate(Context& cx) {
  ojson cats = ojson::array(), funs = ojson::array(), mods = ojson::array();
  for (const std::string& n : cx.ws.category_names) {
    const DgCategory& C = *cx.ws.category(n);
    int homs = 0;
    for (int a = 0; a < C.size(); ++a)
      for (int b = 0; b < C.size(); ++b) homs += C.hom(a, b).dim();
    cats.push_back(ojson{{"name", n}, {"objects", C.size()}, {"basis", homs}, {"valid", validate_dgcat(C).ok}});
  }
  for (const std::string& n : cx.ws.functor_names) funs.push_back(ojson{{"name", n}, {"valid", validate_functor(cx.ws.functor(n)).ok}});
  for (const std::string& n : cx.ws.module_names) {
    const Bimodule& M = cx.ws.module(n);
    mods.push_back(ojson{{"name", n}, {"total_dim", M.total_dim()}, {"valid", validate_bimodule(M).ok}});
  }
  cx.result["categories"] = std::move(cats);
  cx.result["functors"] = std::move(funs);
  cx.result["modules"] = std::move(mods);
  cx.say("valid: " + std::to_string(cx.ws.category_names.size()) + " categories, " + std::to_string(cx.ws.functor_names.size()) +
         " functors, " + std::to_string(cx.ws.module_names.size()) + " modules");
}

void cmd_cohomology(Context& cx) {
  if (cx.has("module")) {
    cx.result = module_summary(cx.module("module"));
    cx.say("cohomology of " + cx.arg("module") + " per component");
    return;
  }
  if (!cx.has("category")) throw WorkspaceError("arguments", "give --module or --category");
  const DgCategory& C = *cx.category("category");
  ojson homs = ojson::array();
  for (int a = 0; a < C.size(); ++a)
    for (int b = 0; b < C.size(); ++b) {
      ojson h = complex_json(C.hom(a, b));
      h["hom"] = ojson::array({C.object(a), C.object(b)});
      homs.push_back(std::move(h));
    }
  cx.result["homs"] = std::move(homs);
  cx.say("cohomology of the hom complexes of " + C.name());
}

void cmd_nat(Context& cx) {
  NatComplex N = nat_complex(cx.module("source"), cx.module("target"));
  cx.result = complex_json(N.cx());
  cx.say("Nat(" + cx.arg("source") + ", " + cx.arg("target") + "): H = " + dims_text(h_dims(N.cx())));
}

void cmd_yoneda(Context& cx) {
  const Bimodule& M = cx.module("module");
  ojson rows = ojson::array();
  bool all = true;
  const bool right = M.is_right_module();
  if (!right && !M.is_left_module()) throw WorkspaceError("arguments/--module", "Yoneda needs a one-sided module");
  const CatPtr& A = right ? M.right_cat() : M.left_cat();
  for (int a = 0; a < A->size(); ++a) {
    if (cx.has("object") && A->object(a) != cx.arg("object")) continue;
    YonedaIso y = right ? yoneda_iso(A, a, M) : yoneda_iso_left(A, a, M);
    const bool ok = verify_iso(y.iso);
    all = all && ok;
    rows.push_back(ojson{{"object", A->object(a)}, {"nat", dims_json(y.nat.cx().dims())}, {"value", dims_json(y.iso.forward.target.dims())},
                         {"round_trips_identity", ok}});
  }
  if (rows.empty()) throw WorkspaceError("arguments/--object", "no object '" + cx.arg("object") + "' in " + A->name());
  YonedaEndWitness e = yoneda_end_witness(M);
  cx.result["objects"] = std::move(rows);
  cx.result["as_end"] = ojson{{"isomorphisms", e.isomorphisms}, {"natural", e.natural}};
  if (!all || !e.isomorphisms) cx.negative();
  cx.say(std::string("Yoneda maps ") + (all ? "round-trip to identities" : "FAIL to round-trip"));
}

void cmd_end(Context& cx) {
  EndResult E = end_bimodule(cx.module("bimodule"));
  cx.result = complex_json(E.total);
  cx.result["embedding"] = matrix_json(E.embedding);
  cx.say("end of " + cx.arg("bimodule") + ": dims " + dims_text(E.total.dims()));
}

void cmd_coend(Context& cx) {
  CoendResult C = coend_bimodule(cx.module("bimodule"));
  cx.result = complex_json(C.total);
  cx.result["projection"] = matrix_json(C.proj);
  cx.say("coend of " + cx.arg("bimodule") + ": dims " + dims_text(C.total.dims()));
}

void cmd_fubini(Context& cx) {
  FubiniWitness w = fubini_witness(cx.module("bimodule"), cx.category("first"), cx.category("second"));
  cx.result = ojson{{"joint", dims_json(w.joint.total.dims())},
                    {"first_then_second", dims_json(w.outer_b.total.dims())},
                    {"second_then_first", dims_json(w.outer_a.total.dims())},
                    {"isomorphic", w.isomorphic}};
  if (!w.isomorphic) {
    cx.result["detail"] = w.detail;
    cx.negative();
  }
  cx.say(std::string("Fubini witnesses ") + (w.isomorphic ? "are isomorphisms" : "FAIL: " + w.detail));
}

void cmd_coyoneda(Context& cx) {
  CoyonedaWitness w = coyoneda_witness(cx.module("module"));
  ojson rows = ojson::array();
  for (const CoendResult& C : w.coends) rows.push_back(dims_json(C.total.dims()));
  cx.result = ojson{{"coends", std::move(rows)}, {"isomorphisms", w.isomorphisms}, {"natural", w.natural}};
  if (!w.isomorphisms || !w.natural) cx.negative();
  cx.say(std::string("co-Yoneda maps ") + (w.isomorphisms && w.natural ? "are natural isomorphisms" : "FAIL"));
}

void cmd_isbell(Context& cx) {
  const Bimodule& X = cx.module("module");
  bool ok = true;
  if (X.is_right_module()) {
    Bimodule O = isbell_O(X);
    const bool iso = is_iso(isbell_unit(X));
    cx.result["O"] = module_summary(O);
    cx.result["unit_is_iso"] = iso;
  } else if (X.is_left_module()) {
    Bimodule S = isbell_Spec(X);
    cx.result["Spec"] = module_summary(S);
    cx.result["counit_is_iso"] = is_iso(isbell_counit(X));
  } else {
    throw WorkspaceError("arguments/--module", "Isbell duality needs a one-sided module");
  }
  if (cx.has("with")) {
    const Bimodule& Y = cx.module("with");
    IsbellAdjunction adj = X.is_right_module() ? isbell_adjunction(Y, X) : isbell_adjunction(X, Y);
    ok = verify_iso(adj.iso);
    cx.result["adjunction"] = ojson{{"nat_M_O", dims_json(adj.left.cx().dims())}, {"nat_X_Spec", dims_json(adj.right.cx().dims())}, {"round_trips_identity", ok}};
    if (!ok) cx.negative();
  }
  cx.say("Isbell duals of " + cx.arg("module") + (cx.has("with") ? (ok ? "; adjunction iso verified" : "; adjunction iso FAILED") : ""));
}

void cmd_dual(Context& cx) {
  const std::string side = cx.arg("side");
  if (side != "L" && side != "R") throw WorkspaceError("arguments/--side", "expected L or R");
  Bimodule D = side == "L" ? L_dual(cx.module("module")) : R_dual(cx.module("module"));
  cx.result = module_summary(D);
  cx.result["module"] = module_dump(cx, side + "(" + cx.arg("module") + ")", D);
  cx.say(side + "(" + cx.arg("module") + ") has total dims " + dims_text(dims_of_total(D)));
}

void cmd_unit(Context& cx) {
  const Bimodule& T = cx.module("module");
  const std::string kind = cx.arg("kind");
  if (kind == "LR") {
    BimoduleMorphism u = LR_unit(T);
    const bool iso = is_iso(u), qis = is_qis(u);
    cx.result = ojson{{"kind", "LR"}, {"is_iso", iso}, {"is_qis", qis}, {"unit", morphism_json(u)}};
    if (!iso) cx.negative();
    cx.say(std::string("T -> R(L(T)) is ") + (iso ? "an isomorphism" : qis ? "a quasi-isomorphism only" : "not a quasi-isomorphism"));
  } else if (kind == "derived") {
    DerivedDualityUnit u = derived_duality_unit(T, cx.opt());
    record(cx, "T", u.rt);
    record(cx, "L(Q(T))", u.rl);
    ojson at = ojson::array();
    for (bool b : u.iso_at) at.push_back(b);
    cx.result = ojson{{"kind", "derived"}, {"is_qis", u.iso}, {"per_object", std::move(at)}};
    if (!u.iso) cx.negative();
    cx.say(std::string("derived duality unit is ") + (u.iso ? "a quasi-isomorphism" : "not a quasi-isomorphism"));
  } else {
    throw WorkspaceError("arguments/--kind", "expected LR or derived");
  }
}

void cmd_resolve(Context& cx) {
  const Bimodule& M = cx.module("module");
  ResolutionResult r = bar_resolution(M, cx.opt());
  record(cx, cx.arg("module"), r);
  cx.result = ojson{{"resolved", module_summary(r.resolved)}, {"total_dims", dims_json(dims_of_total(r.resolved))}};
  cx.result["verified_degrees"] = r.verified_degrees;
  require_certified(r, cx.opt(), "resolve " + cx.arg("module"));
  cx.say("bar resolution of " + cx.arg("module") + " at depth " + std::to_string(r.depth) + (r.certified ? ", certified" : ", UNCERTIFIED (forced)"));
}

void cmd_dhom(Context& cx) {
  const Bimodule &M = cx.module("source"), &N = cx.module("target");
  DerivedHom D = derived_hom(M, N, cx.opt());
  record(cx, cx.arg("source"), D.resolution);
  cx.result = ojson{{"ext", dims_json(D.dims)}};
  cx.say("RHom(" + cx.arg("source") + ", " + cx.arg("target") + "): H = " + dims_text(D.dims));
}

void cmd_compose(Context& cx) {
  Bimodule D = compose(cx.module("outer"), cx.module("inner"));
  cx.result = module_summary(D);
  cx.say(cx.arg("outer") + " ⋄ " + cx.arg("inner") + ": total dims " + dims_text(dims_of_total(D)));
}

void cmd_dcompose(Context& cx) {
  DerivedComposite D = derived_compose(cx.module("outer"), cx.module("inner"), cx.opt());
  record(cx, cx.arg("outer"), D.rg);
  record(cx, cx.arg("inner"), D.rf);
  cx.result = module_summary(D.module());
  cx.say(cx.arg("outer") + " ⋄ᴸ " + cx.arg("inner") + ": total dims " + dims_text(dims_of_total(D.module())));
}

void cmd_qrep(Context& cx) {
  const Bimodule& T = cx.module("module");
  const std::string kind = cx.arg("kind"), side = cx.arg("side");
  if (side != "left" && side != "right") throw WorkspaceError("arguments/--side", "expected left or right");
  const bool right = side == "right";
  ReprSearch s;
  if (kind == "strict") s = right ? is_right_representable(T, cx.opt()) : is_left_representable(T, cx.opt());
  else if (kind == "homotopy") s = right ? is_right_homotopy_representable(T, cx.opt()) : is_left_homotopy_representable(T, cx.opt());
  else if (kind == "quasi") s = right ? is_right_quasi_representable(T, cx.opt()) : is_left_quasi_representable(T, cx.opt());
  else throw WorkspaceError("arguments/--kind", "expected strict, homotopy or quasi");
  cx.result = ojson{{"kind", kind}, {"side", side}, {"found", s.witness.has_value()}, {"exhaustive", s.exhaustive}, {"detail", s.detail}};
  if (s.witness) cx.result["witness"] = witness_json(T, *s.witness);
  else cx.negative();
  cx.say(cx.arg("module") + (s.witness ? " is " : s.exhaustive ? " is not " : " was not found to be ") + side + " " + kind + "-representable");
}

void cmd_maps(Context& cx) {
  StructuralMaps S = structural_maps(cx.module("module"), cx.opt());
  ojson maps = ojson::object();
  auto add = [&](const char* name, const BimoduleMorphism& m) {
    maps[name] = ojson{{"valid", validate_morphism(m).ok}, {"closed", is_closed(m)}, {"degree", m.degree}, {"is_iso", is_iso(m)}, {"is_qis", is_qis(m)}};
  };
  add("t", S.t);
  add("n", S.n);
  add("e", S.e);
  add("e_prime", S.e_prime);
  add("epsilon", S.eps);
  cx.result["maps"] = std::move(maps);
  cx.result["L"] = module_summary(S.L);
  cx.result["E"] = module_summary(S.E);
  const bool n_iso = is_iso(S.n);
  cx.say(std::string("structural maps built; n is ") + (n_iso ? "an isomorphism" : is_qis(S.n) ? "a quasi-isomorphism" : "not a quasi-isomorphism"));
}

void cmd_quasiadj(Context& cx) {
  const bool derived = cx.has("derived") && cx.arg("derived") == "true";
  DiagramReport r = verify_quasiadj_diagrams(cx.module("module"), derived, cx.opt());
  if (r.resolution) record(cx, cx.arg("module"), *r.resolution);
  cx.result = ojson{{"derived", derived}, {"h_level", r.h_level}, {"top_T", r.top_T}, {"cell_T", r.cell_T},
                    {"top_L", r.top_L}, {"cell_L", r.cell_L}, {"ok", r.ok}, {"first_failure", r.first_failure}};
  if (!r.ok) cx.negative();
  cx.say(std::string("quasi-adjunction diagrams ") + (r.ok ? "commute" : "FAIL at " + r.first_failure));
}

void cmd_adjoint(Context& cx) {
  const Bimodule& S = cx.module("of");
  AdjointDecision d = has_left_adjoint(S, cx.opt());
  cx.result = ojson{{"exists", d.exists}, {"exhaustive", d.exhaustive}, {"search", d.search.detail}};
  if (d.search.witness) cx.result["quasi_representability"] = witness_json(S, *d.search.witness);
  if (d.adjunction) {
    const AdjunctionWitness& w = *d.adjunction;
    if (w.resolution) record(cx, cx.arg("of"), *w.resolution);
    record(cx, "unit source", w.unit_source);
    cx.result["witness"] = ojson{{"left_adjoint", module_dump(cx, "left adjoint of " + cx.arg("of"), w.left)},
                                 {"exact", w.exact},
                                 {"triangles_exact", w.triangles_exact},
                                 {"triangles_h", w.triangles_h},
                                 {"unit", morphism_json(w.unit)},
                                 {"counit", morphism_json(w.counit)},
                                 {"detail", w.detail}};
  }
  if (!d.exists) cx.negative();
  cx.say(cx.arg("of") + (d.exists ? " has a left adjoint (witness emitted)" : d.exhaustive ? " has no left adjoint (exhaustive)" : " has no left adjoint found"));
}

void cmd_qcompose(Context& cx) {
  QuasiComposite c = quasi_functor_compose(cx.module("outer"), cx.module("inner"), cx.opt());
  record(cx, cx.arg("outer"), c.composite.rg);
  record(cx, cx.arg("inner"), c.composite.rf);
  const Bimodule& M = c.composite.module();
  cx.result = ojson{{"composite", module_summary(M)}, {"witness", witness_json(M, c.witness)}, {"verified", c.verified}};
  if (!c.verified) cx.negative();
  cx.say(std::string("quasi-functor composite ") + (c.verified ? "is right quasi-representable, witness verified" : "witness FAILED"));
}

void cmd_oracle(Context& cx) {
  const Bimodule& T = cx.module("bimodule");
  oracle::Comparison e = oracle::compare_end(end_bimodule(T)), c = oracle::compare_coend(coend_bimodule(T));
  auto cmp = [](const oracle::Comparison& x) {
    return ojson{{"fast", dims_json(x.fast)}, {"reference", dims_json(x.reference)}, {"dims_agree", x.dims}, {"maps_agree", x.maps}};
  };
  cx.result = ojson{{"end", cmp(e)}, {"coend", cmp(c)}};
  if (!e.ok() || !c.ok()) cx.negative();
  cx.say(std::string("end/coend ") + (e.ok() && c.ok() ? "agree with the brute-force oracle" : "DISAGREE with the brute-force oracle"));
}

void cmd_schema(Context& cx) {
  cx.result = ojson::parse(workspace_schema());
  cx.say("workspace schema");
}

void cmd_dump(Context& cx) {
  cx.result = to_json(cx.ws);
  cx.say("explicit serialization of the workspace");
}

using Handler = void (*)(Context&);

struct Entry {
  Command command;
  Handler handler;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {{"validate", "load the workspace and run every validator", {}}, cmd_validate},
      {{"cohomology", "cohomology of a module's components or a category's homs",
        {{"module", "module name", false, ""}, {"category", "category name", false, ""}}},
       cmd_cohomology},
      {{"nat", "complex of natural transformations", {{"source", "module"}, {"target", "module"}}}, cmd_nat},
      {{"yoneda", "Yoneda isomorphisms of a one-sided module", {{"module", "module"}, {"object", "restrict to one object", false, ""}}}, cmd_yoneda},
      {{"end", "end of an A-A-bimodule", {{"bimodule", "bimodule"}}}, cmd_end},
      {{"coend", "coend of an A-A-bimodule", {{"bimodule", "bimodule"}}}, cmd_coend},
      {{"fubini", "compare iterated and joint ends", {{"bimodule", "bimodule over first⊗second"}, {"first", "category"}, {"second", "category"}}},
       cmd_fubini},
      {{"coyoneda", "co-Yoneda witness of a one-sided module", {{"module", "module"}}}, cmd_coyoneda},
      {{"isbell", "Isbell duals, unit or counit, and the adjunction", {{"module", "module"}, {"with", "module of the other variance", false, ""}}},
       cmd_isbell},
      {{"dual", "bimodule duals L and R", {{"module", "bimodule"}, {"side", "L or R"}}}, cmd_dual},
      {{"unit", "duality unit T -> R(L(T))", {{"module", "bimodule"}, {"kind", "LR or derived", false, "LR"}}}, cmd_unit},
      {{"resolve", "certified bar resolution", {{"module", "module or bimodule"}}}, cmd_resolve},
      {{"dhom", "derived hom dimensions", {{"source", "module"}, {"target", "module"}}}, cmd_dhom},
      {{"compose", "composition of bimodules", {{"outer", "bimodule G"}, {"inner", "bimodule F"}}}, cmd_compose},
      {{"dcompose", "derived composition of bimodules", {{"outer", "bimodule G"}, {"inner", "bimodule F"}}}, cmd_dcompose},
      {{"qrep", "representability search",
        {{"module", "bimodule"}, {"kind", "strict, homotopy or quasi", false, "quasi"}, {"side", "left or right", false, "right"}}},
       cmd_qrep},
      {{"maps", "structural maps t, n, e, e', epsilon", {{"module", "bimodule"}}}, cmd_maps},
      {{"quasiadj", "quasi-adjunction diagrams", {{"module", "bimodule"}, {"derived", "true for the derived check", false, "false"}}}, cmd_quasiadj},
      {{"adjoint", "decide whether a bimodule has a left adjoint", {{"of", "bimodule"}}}, cmd_adjoint},
      {{"qcompose", "composition of quasi-functors", {{"outer", "bimodule G"}, {"inner", "bimodule F"}}}, cmd_qcompose},
      {{"oracle", "cross-check ends and coends against brute force", {{"bimodule", "bimodule"}}}, cmd_oracle},
      {{"schema", "print the workspace JSON schema", {}}, cmd_schema},
      {{"dump", "print the workspace in explicit form", {}}, cmd_dump},
  };
  return r;
}

ojson inputs_json(const Invocation& inv) {
  ojson in{{"workspace", inv.workspace}};
  ojson args = ojson::object();
  for (const auto& [k, v] : inv.args) args[k] = v;
  in["arguments"] = std::move(args);
  return in;
}

ojson provenance(const Invocation& inv, const std::string& field, const ojson& certification) {
  ojson p{{"field", field}, {"seed", hex_seed(inv.opt.seed)}, {"depth", inv.opt.depth < 0 ? ojson("auto") : ojson(inv.opt.depth)},
          {"force_uncertified", inv.opt.force_uncertified}};
  p["certification"] = certification;
  return p;
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> out = [] {
    std::vector<Command> v;
    for (const Entry& e : registry()) v.push_back(e.command);
    return v;
  }();
  return out;
}

Outcome run(const Invocation& inv) {
  Outcome out;
  const Entry* entry = nullptr;
  for (const Entry& e : registry())
    if (e.command.name == inv.command) entry = &e;
  out.report["operation"] = inv.command;
  out.report["inputs"] = inputs_json(inv);
  std::string field = inv.field.value_or("");
  auto fail = [&](int code, const std::string& location, const std::string& message) {
    out.exit = code;
    out.report["result"] = nullptr;
    out.report["error"] = ojson{{"location", location}, {"message", message}};
    out.summary = (code == Exit::uncertified ? "refused: " : "error at " + location + ": ") + message;
  };
  if (!entry) {
    fail(Exit::invalid, "command", "unknown command '" + inv.command + "'");
    out.report["provenance"] = provenance(inv, field, ojson::array());
    return out;
  }
  std::optional<Context> cx;
  try {
    std::optional<Field> F;
    if (inv.field) {
      try {
        F = Field::from_spec(*inv.field);
      } catch (const std::exception& e) {
        throw WorkspaceError("arguments/--field", e.what());
      }
    }
    Workspace ws = entry->command.name == "schema" ? Workspace{} : load_workspace(inv.workspace, F);
    field = ws.field.spec();
    cx.emplace(Context{inv, std::move(ws)});
    for (const Arg& a : entry->command.args)
      if (a.required && !cx->has(a.name)) throw WorkspaceError("arguments/--" + a.name, "missing");
    entry->handler(*cx);
    out.report["result"] = cx->result;
    out.exit = cx->exit;
    std::string s;
    for (const std::string& l : cx->summary) s += (s.empty() ? "" : "\n") + l;
    out.summary = s;
  } catch (const WorkspaceError& e) {
    fail(Exit::invalid, e.location, std::string(e.what()).substr(e.location.size() + 2));
  } catch (const UncertifiedResolution& e) {
    fail(Exit::uncertified, "resolution", e.what());
  } catch (const std::invalid_argument& e) {
    fail(Exit::invalid, "arguments", e.what());
  } catch (const std::out_of_range& e) {
    fail(Exit::invalid, "arguments", e.what());
  }
  out.report["provenance"] = provenance(inv, field, cx ? cx->certification : ojson::array());
  return out;
}

}  // namespace dgc::cli
