#include "dgc/workspace.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "dgc/derived.hpp"
#include "dgc/fixtures.hpp"

namespace dgc {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

const CatPtr& Workspace::category(const std::string& name) const {
  auto it = categories.find(name);
  if (it == categories.end()) throw WorkspaceError("categories/" + name, "unknown category");
  return it->second;
}

const DgFunctor& Workspace::functor(const std::string& name) const {
  auto it = functors.find(name);
  if (it == functors.end()) throw WorkspaceError("functors/" + name, "unknown functor");
  return it->second;
}

const Bimodule& Workspace::module(const std::string& name) const {
  auto it = modules.find(name);
  if (it == modules.end()) throw WorkspaceError("modules/" + name, "unknown module");
  return it->second;
}

void Workspace::add(const std::string& name, CatPtr C) {
  if (!categories.count(name)) category_names.push_back(name);
  categories[name] = std::move(C);
}

void Workspace::add(const std::string& name, DgFunctor F) {
  if (!functors.count(name)) functor_names.push_back(name);
  functors.insert_or_assign(name, std::move(F));
}

void Workspace::add(const std::string& name, Bimodule M) {
  if (!modules.count(name)) module_names.push_back(name);
  modules[name] = std::move(M);
}

namespace {

Scalar parse_scalar(const json& j, Field F, const std::string& where) {
  try {
    if (j.is_string()) return F.parse(j.get<std::string>());
    if (j.is_number_integer()) return F.from_int(j.get<long long>());
  } catch (const std::exception& e) {
    throw WorkspaceError(where, e.what());
  }
  throw WorkspaceError(where, "expected a field element string or an integer");
}

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw WorkspaceError(where, std::string("missing \"") + key + "\"");
  return j.at(key);
}

std::string need_string(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_string()) throw WorkspaceError(where + "/" + key, "expected a string");
  return v.get<std::string>();
}

int need_int(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number_integer()) throw WorkspaceError(where + "/" + key, "expected an integer");
  return v.get<int>();
}

int object_index(const DgCategory& C, const json& j, const std::string& where) {
  if (!j.is_string()) throw WorkspaceError(where, "expected an object identifier");
  auto i = C.find(j.get<std::string>());
  if (!i) throw WorkspaceError(where, "unknown object '" + j.get<std::string>() + "' of " + C.name());
  return *i;
}

struct MorphismRef {
  int a, b, i;
};

/// Labels in use for serialization: the stored ones, or generated ones when they collide.
std::vector<std::vector<std::string>> label_table(const DgCategory& C) {
  const int n = C.size();
  std::vector<std::vector<std::string>> out(static_cast<size_t>(n) * n);
  std::set<std::string> seen;
  bool clash = false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < C.hom(a, b).dim(); ++i) {
        std::string l = C.label(a, b, i);
        clash = clash || !seen.insert(l).second;
        out[C.pair(a, b)].push_back(l);
      }
  if (clash)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int i = 0; i < C.hom(a, b).dim(); ++i) out[C.pair(a, b)][i] = C.object(a) + "->" + C.object(b) + "#" + std::to_string(i);
  return out;
}

MorphismRef find_morphism(const DgCategory& C, const json& j, const std::string& where) {
  if (!j.is_string()) throw WorkspaceError(where, "expected a morphism label");
  const std::string l = j.get<std::string>();
  const auto table = label_table(C);
  for (int a = 0; a < C.size(); ++a)
    for (int b = 0; b < C.size(); ++b)
      for (int i = 0; i < C.hom(a, b).dim(); ++i)
        if (table[C.pair(a, b)][i] == l || C.object(a) + "->" + C.object(b) + "#" + std::to_string(i) == l) return {a, b, i};
  throw WorkspaceError(where, "unknown morphism '" + l + "' of " + C.name());
}

/// Index k when the identity of a is the k-th basis vector, else -1.
int identity_basis(const DgCategory& C, int a) {
  const Vector& id = C.id(a);
  int k = -1;
  for (size_t i = 0; i < id.size(); ++i) {
    if (id[i].is_zero()) continue;
    if (k >= 0 || !id[i].is_one()) return -1;
    k = static_cast<int>(i);
  }
  return k;
}

CatPtr renamed(const CatPtr& C, const std::string& name) {
  if (C->name() == name) return C;
  DgCategory::Data d = C->data();
  d.name = name;
  return std::make_shared<const DgCategory>(std::move(d));
}

Complex parse_complex(const json& j, Field F, const std::string& where) {
  std::vector<int> degs;
  if (j.contains("degrees")) {
    if (!j.at("degrees").is_array()) throw WorkspaceError(where + "/degrees", "expected an array of integers");
    for (const json& d : j.at("degrees")) {
      if (!d.is_number_integer()) throw WorkspaceError(where + "/degrees", "degrees must be integers");
      degs.push_back(d.get<int>());
    }
  }
  for (size_t i = 1; i < degs.size(); ++i)
    if (degs[i] < degs[i - 1]) throw WorkspaceError(where + "/degrees", "degrees must be nondecreasing");
  const int n = static_cast<int>(degs.size());
  Matrix d = j.contains("differential") ? parse_matrix(j.at("differential"), F, n, n, where + "/differential") : Matrix(F, n, n);
  try {
    return Complex(F, degs, d);
  } catch (const std::exception& e) {
    throw WorkspaceError(where, e.what());
  }
}

void require_valid(const ValidationReport& r, const std::string& where) {
  if (!r.ok) throw WorkspaceError(where, "invalid: " + r.axiom + (r.detail.empty() ? "" : " (" + r.detail + ")"));
}

// --- categories ------------------------------------------------------------

CatPtr explicit_category(const json& j, Field F, const std::string& name, const std::string& where) {
  const json& objs = need(j, "objects", where);
  if (!objs.is_array()) throw WorkspaceError(where + "/objects", "expected an array");
  DgCategory::Data D;
  D.field = F;
  D.name = name;
  for (const json& o : objs) {
    if (!o.is_string()) throw WorkspaceError(where + "/objects", "object identifiers are strings");
    D.objects.push_back(o.get<std::string>());
  }
  const int n = static_cast<int>(D.objects.size());
  auto obj = [&](const json& o, const std::string& w) {
    for (int i = 0; i < n; ++i)
      if (o.is_string() && D.objects[i] == o.get<std::string>()) return i;
    throw WorkspaceError(w, "unknown object");
  };
  std::map<std::string, MorphismRef> where_is;
  std::vector<std::vector<int>> degs(static_cast<size_t>(n) * n);
  D.labels.assign(static_cast<size_t>(n) * n, {});
  if (j.contains("morphisms")) {
    int k = 0;
    for (const json& m : j.at("morphisms")) {
      const std::string w = where + "/morphisms/" + std::to_string(k++);
      const std::string label = need_string(m, "label", w);
      const int a = obj(need(m, "source", w), w + "/source"), b = obj(need(m, "target", w), w + "/target");
      const int deg = need_int(m, "degree", w);
      auto& dv = degs[static_cast<size_t>(a) * n + b];
      if (!dv.empty() && dv.back() > deg) throw WorkspaceError(w, "morphisms of one hom must be listed by nondecreasing degree");
      if (where_is.count(label)) throw WorkspaceError(w, "duplicate label '" + label + "'");
      where_is[label] = {a, b, static_cast<int>(dv.size())};
      dv.push_back(deg);
      D.labels[static_cast<size_t>(a) * n + b].push_back(label);
    }
  }
  auto ref = [&](const json& l, const std::string& w) {
    if (!l.is_string() || !where_is.count(l.get<std::string>())) throw WorkspaceError(w, "unknown morphism label");
    return where_is.at(l.get<std::string>());
  };
  std::vector<Matrix> diffs;
  for (size_t p = 0; p < degs.size(); ++p) diffs.emplace_back(F, static_cast<int>(degs[p].size()), static_cast<int>(degs[p].size()));
  if (j.contains("differential")) {
    int k = 0;
    for (const json& t : j.at("differential")) {
      const std::string w = where + "/differential/" + std::to_string(k++);
      if (!t.is_array() || t.size() != 3) throw WorkspaceError(w, "expected [from, to, coefficient]");
      MorphismRef x = ref(t[0], w), y = ref(t[1], w);
      if (x.a != y.a || x.b != y.b) throw WorkspaceError(w, "differential leaves its hom complex");
      diffs[static_cast<size_t>(x.a) * n + x.b](y.i, x.i) += parse_scalar(t[2], F, w);
    }
  }
  for (size_t p = 0; p < degs.size(); ++p) {
    try {
      D.homs.emplace_back(F, degs[p], diffs[p]);
    } catch (const std::exception& e) {
      throw WorkspaceError(where + "/differential", e.what());
    }
  }
  auto hom_dim = [&](int a, int b) { return D.homs[static_cast<size_t>(a) * n + b].dim(); };
  D.ids.resize(n);
  std::vector<int> id_basis(n, -1);
  for (int a = 0; a < n; ++a) {
    Vector id(hom_dim(a, a), F.zero());
    const std::string w = where + "/identities/" + D.objects[a];
    if (j.contains("identities") && j.at("identities").contains(D.objects[a])) {
      for (const json& t : j.at("identities").at(D.objects[a])) {
        if (!t.is_array() || t.size() != 2) throw WorkspaceError(w, "expected [label, coefficient] pairs");
        MorphismRef r = ref(t[0], w);
        if (r.a != a || r.b != a) throw WorkspaceError(w, "identity term outside hom(a,a)");
        id[r.i] += parse_scalar(t[1], F, w);
      }
    } else {
      auto it = where_is.find("1_" + D.objects[a]);
      if (it == where_is.end() || it->second.a != a || it->second.b != a) throw WorkspaceError(w, "no identity given and no morphism labelled 1_" + D.objects[a]);
      id[it->second.i] = F.one();
    }
    int k = -1, nz = 0;
    for (int i = 0; i < hom_dim(a, a); ++i)
      if (!id[i].is_zero()) {
        ++nz;
        k = i;
      }
    if (nz == 1 && id[k].is_one()) id_basis[a] = k;
    D.ids[a] = std::move(id);
  }
  D.lmul.resize(static_cast<size_t>(n) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int g = 0; g < hom_dim(b, c); ++g) D.lmul[(static_cast<size_t>(a) * n + b) * n + c].emplace_back(F, hom_dim(a, c), hom_dim(a, b));
  std::set<std::tuple<int, int, int, int, int>> explicit_pairs;  // (a,b,c,g,f)
  if (j.contains("composition")) {
    int k = 0;
    for (const json& t : j.at("composition")) {
      const std::string w = where + "/composition/" + std::to_string(k++);
      if (!t.is_array() || t.size() != 4) throw WorkspaceError(w, "expected [g, f, h, coefficient] for g∘f ∋ coefficient·h");
      MorphismRef g = ref(t[0], w), f = ref(t[1], w), h = ref(t[2], w);
      if (f.b != g.a || h.a != f.a || h.b != g.b) throw WorkspaceError(w, "composite is ill-typed");
      D.lmul[(static_cast<size_t>(f.a) * n + f.b) * n + g.b][g.i](h.i, f.i) += parse_scalar(t[3], F, w);
      explicit_pairs.insert({f.a, f.b, g.b, g.i, f.i});
    }
  }
  for (int o = 0; o < n; ++o) {
    const int k = id_basis[o];
    if (k < 0) continue;
    for (int x = 0; x < n; ++x)
      for (int f = 0; f < hom_dim(x, o); ++f)
        if (!explicit_pairs.count({x, o, o, k, f})) D.lmul[(static_cast<size_t>(x) * n + o) * n + o][k](f, f) = F.one();
    for (int z = 0; z < n; ++z)
      for (int g = 0; g < hom_dim(o, z); ++g)
        if (!explicit_pairs.count({o, o, z, g, k}) && !(z == o && g == k)) D.lmul[(static_cast<size_t>(o) * n + o) * n + z][g](g, k) = F.one();
  }
  try {
    return std::make_shared<const DgCategory>(std::move(D));
  } catch (const std::exception& e) {
    throw WorkspaceError(where, e.what());
  }
}

CatPtr parse_category(const json& j, const Workspace& ws, const std::string& name, const std::string& where) {
  const Field F = ws.field;
  CatPtr C;
  if (j.contains("fixture")) {
    const std::string f = need_string(j, "fixture", where);
    if (f == "q2") C = fixtures::q2(F);
    else if (f == "dual_numbers") C = fixtures::dual_numbers(F);
    else if (f == "truncated_odd") C = fixtures::truncated_odd(F);
    else if (f == "contractible_pair") C = fixtures::contractible_pair(F);
    else if (f == "homotopy_pair") C = fixtures::homotopy_pair(F);
    else if (f == "point") C = fixtures::point(F, need_string(j, "object", where));
    else if (f == "unit") C = unit_category(F);
    else throw WorkspaceError(where + "/fixture", "unknown fixture '" + f + "'");
  } else if (j.contains("construct")) {
    const std::string c = need_string(j, "construct", where);
    if (c == "opposite") C = opposite(*ws.category(need_string(j, "of", where)));
    else if (c == "tensor") C = tensor_dgcat(*ws.category(need_string(j, "first", where)), *ws.category(need_string(j, "second", where)));
    else throw WorkspaceError(where + "/construct", "unknown construction '" + c + "'");
  } else {
    C = explicit_category(j, F, name, where);
  }
  C = renamed(C, name);
  require_valid(validate_dgcat(*C), where);
  return C;
}

// --- functors --------------------------------------------------------------

DgFunctor parse_functor(const json& j, const Workspace& ws, const std::string& name, const std::string& where) {
  if (j.contains("fixture")) {
    const std::string f = need_string(j, "fixture", where);
    const CatPtr &S = ws.category(need_string(j, "source", where)), &T = ws.category(need_string(j, "target", where));
    DgFunctor out = f == "collapse" ? fixtures::collapse(S, T)
                    : f == "inclusion" ? fixtures::inclusion(S, T)
                                       : throw WorkspaceError(where + "/fixture", "unknown functor fixture '" + f + "'");
    return DgFunctor(out.source(), out.target(), out.object_map(), out.maps(), name);
  }
  if (j.contains("construct")) {
    const std::string c = need_string(j, "construct", where);
    DgFunctor out = c == "identity" ? DgFunctor::identity(ws.category(need_string(j, "category", where)))
                    : c == "compose" ? compose_functors(ws.functor(need_string(j, "outer", where)), ws.functor(need_string(j, "inner", where)))
                                     : throw WorkspaceError(where + "/construct", "unknown construction '" + c + "'");
    return DgFunctor(out.source(), out.target(), out.object_map(), out.maps(), name);
  }
  const CatPtr &S = ws.category(need_string(j, "source", where)), &T = ws.category(need_string(j, "target", where));
  const int n = S->size();
  const Field F = ws.field;
  std::vector<int> objs(n, -1);
  const json& om = need(j, "objects", where);
  for (int a = 0; a < n; ++a) {
    if (!om.contains(S->object(a))) throw WorkspaceError(where + "/objects", "object '" + S->object(a) + "' is not mapped");
    objs[a] = object_index(*T, om.at(S->object(a)), where + "/objects/" + S->object(a));
  }
  std::vector<Matrix> maps;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Matrix m(F, T->hom(objs[a], objs[b]).dim(), S->hom(a, b).dim());
      if (a == b) {
        const int k = identity_basis(*S, a);
        if (k >= 0) m.set_col(k, T->id(objs[a]));
      }
      maps.push_back(std::move(m));
    }
  if (j.contains("homs")) {
    int k = 0;
    for (const json& h : j.at("homs")) {
      const std::string w = where + "/homs/" + std::to_string(k++);
      const int a = object_index(*S, need(h, "source", w), w + "/source"), b = object_index(*S, need(h, "target", w), w + "/target");
      maps[S->pair(a, b)] = parse_matrix(need(h, "matrix", w), F, T->hom(objs[a], objs[b]).dim(), S->hom(a, b).dim(), w + "/matrix");
    }
  }
  DgFunctor out(S, T, objs, std::move(maps), name);
  require_valid(validate_functor(out), where);
  return out;
}

// --- modules ---------------------------------------------------------------

CatPtr side(const json& j, const char* key, const Workspace& ws, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return unit_category(ws.field);
  if (!j.at(key).is_string()) throw WorkspaceError(where + "/" + key, "expected a category name or null");
  return ws.category(j.at(key).get<std::string>());
}

Bimodule explicit_module(const json& j, const Workspace& ws, const std::string& name, const std::string& where) {
  const CatPtr A = side(j, "left", ws, where), B = side(j, "right", ws, where);
  const int na = A->size(), nb = B->size();
  const Field F = ws.field;
  Bimodule::Data D;
  D.A = A;
  D.B = B;
  D.name = name;
  D.comps.assign(static_cast<size_t>(nb) * na, Complex(F));
  auto idx = [&](int b, int a) { return static_cast<size_t>(b) * na + a; };
  if (j.contains("components")) {
    int k = 0;
    for (const json& c : j.at("components")) {
      const std::string w = where + "/components/" + std::to_string(k++);
      const json& at = need(c, "at", w);
      if (!at.is_array() || at.size() != 2) throw WorkspaceError(w + "/at", "expected [right object, left object]");
      const int b = object_index(*B, at[0], w + "/at/0"), a = object_index(*A, at[1], w + "/at/1");
      D.comps[idx(b, a)] = parse_complex(c, F, w);
    }
  }
  D.left.resize(static_cast<size_t>(nb) * na * na);
  for (int b = 0; b < nb; ++b)
    for (int a = 0; a < na; ++a)
      for (int a2 = 0; a2 < na; ++a2) {
        auto& v = D.left[idx(b, a) * na + a2];
        for (int g = 0; g < A->hom(a, a2).dim(); ++g) {
          Matrix m(F, D.comps[idx(b, a2)].dim(), D.comps[idx(b, a)].dim());
          if (a == a2 && g == identity_basis(*A, a)) m = Matrix::identity(F, D.comps[idx(b, a)].dim());
          v.push_back(std::move(m));
        }
      }
  D.right.resize(static_cast<size_t>(nb) * nb * na);
  for (int b2 = 0; b2 < nb; ++b2)
    for (int b = 0; b < nb; ++b)
      for (int a = 0; a < na; ++a) {
        auto& v = D.right[(static_cast<size_t>(b2) * nb + b) * na + a];
        for (int f = 0; f < B->hom(b2, b).dim(); ++f) {
          Matrix m(F, D.comps[idx(b2, a)].dim(), D.comps[idx(b, a)].dim());
          if (b == b2 && f == identity_basis(*B, b)) m = Matrix::identity(F, D.comps[idx(b, a)].dim());
          v.push_back(std::move(m));
        }
      }
  if (j.contains("left_action")) {
    int k = 0;
    for (const json& e : j.at("left_action")) {
      const std::string w = where + "/left_action/" + std::to_string(k++);
      const json& at = need(e, "at", w);
      if (!at.is_array() || at.size() != 3) throw WorkspaceError(w + "/at", "expected [b, a, a']");
      const int b = object_index(*B, at[0], w + "/at/0"), a = object_index(*A, at[1], w + "/at/1"), a2 = object_index(*A, at[2], w + "/at/2");
      MorphismRef g = find_morphism(*A, need(e, "morphism", w), w + "/morphism");
      if (g.a != a || g.b != a2) throw WorkspaceError(w + "/morphism", "morphism is not in hom(a, a')");
      D.left[idx(b, a) * na + a2][g.i] = parse_matrix(need(e, "matrix", w), F, D.comps[idx(b, a2)].dim(), D.comps[idx(b, a)].dim(), w + "/matrix");
    }
  }
  if (j.contains("right_action")) {
    int k = 0;
    for (const json& e : j.at("right_action")) {
      const std::string w = where + "/right_action/" + std::to_string(k++);
      const json& at = need(e, "at", w);
      if (!at.is_array() || at.size() != 3) throw WorkspaceError(w + "/at", "expected [b', b, a]");
      const int b2 = object_index(*B, at[0], w + "/at/0"), b = object_index(*B, at[1], w + "/at/1"), a = object_index(*A, at[2], w + "/at/2");
      MorphismRef f = find_morphism(*B, need(e, "morphism", w), w + "/morphism");
      if (f.a != b2 || f.b != b) throw WorkspaceError(w + "/morphism", "morphism is not in hom(b', b)");
      D.right[(static_cast<size_t>(b2) * nb + b) * na + a][f.i] =
          parse_matrix(need(e, "matrix", w), F, D.comps[idx(b2, a)].dim(), D.comps[idx(b, a)].dim(), w + "/matrix");
    }
  }
  return Bimodule(std::move(D));
}

Bimodule parse_module(const json& j, const Workspace& ws, const std::string& name, const std::string& where) {
  Bimodule M;
  if (j.contains("construct")) {
    const std::string c = need_string(j, "construct", where);
    auto mod = [&](const char* key) { return ws.module(need_string(j, key, where)); };
    auto object = [&](const CatPtr& C) { return object_index(*C, need(j, "object", where), where + "/object"); };
    if (c == "diagonal") M = diagonal(ws.category(need_string(j, "category", where)));
    else if (c == "representable_right") {
      const CatPtr& C = ws.category(need_string(j, "category", where));
      M = representable_right(C, object(C));
    } else if (c == "representable_left") {
      const CatPtr& C = ws.category(need_string(j, "category", where));
      M = representable_left(C, object(C));
    } else if (c == "h_lower") M = h_lower(ws.functor(need_string(j, "functor", where)));
    else if (c == "h_upper") M = h_upper(ws.functor(need_string(j, "functor", where)));
    else if (c == "component") {
      Bimodule T = mod("module");
      M = component(T, object(T.left_cat()));
    } else if (c == "co_component") {
      Bimodule T = mod("module");
      M = co_component(T, object(T.right_cat()));
    } else if (c == "shift") M = shift(mod("module"), need_int(j, "n", where));
    else if (c == "direct_sum") {
      std::vector<Bimodule> parts;
      for (const json& p : need(j, "parts", where)) parts.push_back(ws.module(p.get<std::string>()));
      M = direct_sum(parts);
    } else if (c == "cone_identity") M = cone(BimoduleMorphism::identity(mod("module"))).cone;
    else if (c == "dual") {
      const std::string s = need_string(j, "side", where);
      if (s != "L" && s != "R") throw WorkspaceError(where + "/side", "expected L or R");
      M = s == "L" ? L_dual(mod("module")) : R_dual(mod("module"));
    } else if (c == "isbell") {
      Bimodule X = mod("module");
      M = X.is_right_module() ? isbell_O(X) : isbell_Spec(X);
    } else if (c == "compose") M = compose(mod("outer"), mod("inner"));
    else throw WorkspaceError(where + "/construct", "unknown construction '" + c + "'");
    M = M.renamed(name);
  } else {
    M = explicit_module(j, ws, name, where);
  }
  require_valid(validate_bimodule(M), where);
  return M;
}

std::string cat_name(const CatPtr& C, const std::map<std::string, CatPtr>& cats, const std::string& what) {
  for (const auto& [n, D] : cats)
    if (D == C) return n;
  for (const auto& [n, D] : cats)
    if (same_category(D, C)) return n;
  throw std::invalid_argument("serialize: " + what + " uses a category that is not in the workspace");
}

}  // namespace

Matrix parse_matrix(const json& j, Field F, int rows, int cols, const std::string& where) {
  Matrix m(F, rows, cols);
  if (!j.is_array()) throw WorkspaceError(where, "expected a row-major array");
  if (rows * cols == 0 && (j.empty() || (static_cast<int>(j.size()) == rows))) return m;
  if (static_cast<int>(j.size()) != rows)
    throw WorkspaceError(where, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      throw WorkspaceError(where + "/" + std::to_string(r), "expected " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) m(r, c) = parse_scalar(j[r][c], F, where + "/" + std::to_string(r) + "/" + std::to_string(c));
  }
  return m;
}

ojson matrix_json(const Matrix& m) {
  ojson rows = ojson::array();
  for (int r = 0; r < m.rows(); ++r) {
    ojson row = ojson::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson vector_json(const Vector& v) {
  ojson out = ojson::array();
  for (const Scalar& s : v) out.push_back(s.to_string());
  return out;
}

Workspace parse_workspace(const json& j, std::optional<Field> field) {
  if (!j.is_object()) throw WorkspaceError("", "a workspace is a JSON object");
  Workspace ws;
  try {
    ws.field = field ? *field : Field::from_spec(j.value("field", std::string("q")));
  } catch (const std::exception& e) {
    throw WorkspaceError("field", e.what());
  }
  auto each = [&](const char* key, auto&& body) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_array()) throw WorkspaceError(key, "expected an array");
    int k = 0;
    for (const json& e : j.at(key)) {
      const std::string where = std::string(key) + "/" + std::to_string(k++);
      const std::string name = need_string(e, "name", where);
      const std::string entry = where + " (" + name + ")";
      try {
        body(e, name, entry);
      } catch (const WorkspaceError& ex) {
        if (ex.location.rfind(entry, 0) == 0) throw;
        throw WorkspaceError(entry, ex.what());
      } catch (const std::exception& ex) {
        throw WorkspaceError(entry, ex.what());
      }
    }
  };
  each("categories", [&](const json& e, const std::string& name, const std::string& where) { ws.add(name, parse_category(e, ws, name, where)); });
  each("functors", [&](const json& e, const std::string& name, const std::string& where) { ws.add(name, parse_functor(e, ws, name, where)); });
  each("modules", [&](const json& e, const std::string& name, const std::string& where) { ws.add(name, parse_module(e, ws, name, where)); });
  return ws;
}

Workspace load_workspace(const std::string& path, std::optional<Field> field) {
  std::ifstream in(path);
  if (!in) throw WorkspaceError(path, "cannot open workspace");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw WorkspaceError(path + " byte " + std::to_string(e.byte), "malformed JSON");
  }
  return parse_workspace(j, field);
}

ojson category_json(const DgCategory& C) {
  const int n = C.size();
  const auto labels = label_table(C);
  auto lab = [&](int a, int b, int i) { return labels[C.pair(a, b)][i]; };
  ojson out;
  out["name"] = C.name();
  out["objects"] = C.objects();
  ojson morphisms = ojson::array(), diffs = ojson::array(), comps = ojson::array();
  ojson ids = ojson::object();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Complex& H = C.hom(a, b);
      for (int i = 0; i < H.dim(); ++i) {
        morphisms.push_back(ojson{{"label", lab(a, b, i)}, {"source", C.object(a)}, {"target", C.object(b)}, {"degree", H.degree_of(i)}});
        for (int r = 0; r < H.dim(); ++r)
          if (!H.d()(r, i).is_zero()) diffs.push_back(ojson::array({lab(a, b, i), lab(a, b, r), H.d()(r, i).to_string()}));
      }
    }
  for (int a = 0; a < n; ++a) {
    ojson terms = ojson::array();
    for (int i = 0; i < C.hom(a, a).dim(); ++i)
      if (!C.id(a)[i].is_zero()) terms.push_back(ojson::array({lab(a, a, i), C.id(a)[i].to_string()}));
    ids[C.object(a)] = std::move(terms);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int g = 0; g < C.hom(b, c).dim(); ++g) {
          if (b == c && g == identity_basis(C, b)) continue;
          const Matrix& m = C.lmul(a, b, c, g);
          for (int f = 0; f < m.cols(); ++f) {
            if (a == b && f == identity_basis(C, a)) continue;
            for (int h = 0; h < m.rows(); ++h)
              if (!m(h, f).is_zero()) comps.push_back(ojson::array({lab(b, c, g), lab(a, b, f), lab(a, c, h), m(h, f).to_string()}));
          }
        }
  out["morphisms"] = std::move(morphisms);
  out["identities"] = std::move(ids);
  out["differential"] = std::move(diffs);
  out["composition"] = std::move(comps);
  return out;
}

ojson functor_json(const std::string& name, const DgFunctor& F, const std::map<std::string, CatPtr>& cats) {
  const DgCategory &S = *F.source(), &T = *F.target();
  ojson out;
  out["name"] = name;
  out["source"] = cat_name(F.source(), cats, name);
  out["target"] = cat_name(F.target(), cats, name);
  ojson objs = ojson::object();
  for (int a = 0; a < S.size(); ++a) objs[S.object(a)] = T.object(F.on_object(a));
  out["objects"] = std::move(objs);
  ojson homs = ojson::array();
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b)
      if (!F.on_hom(a, b).is_zero()) homs.push_back(ojson{{"source", S.object(a)}, {"target", S.object(b)}, {"matrix", matrix_json(F.on_hom(a, b))}});
  out["homs"] = std::move(homs);
  return out;
}

ojson module_json(const std::string& name, const Bimodule& M, const std::map<std::string, CatPtr>& cats) {
  const CatPtr &A = M.left_cat(), &B = M.right_cat();
  const CatPtr unit = unit_category(M.field());
  const DgCategory &Ac = *A, &Bc = *B;
  const auto la = label_table(Ac), lb = label_table(Bc);
  ojson out;
  out["name"] = name;
  out["left"] = same_category(A, unit) ? ojson(nullptr) : ojson(cat_name(A, cats, name));
  out["right"] = same_category(B, unit) ? ojson(nullptr) : ojson(cat_name(B, cats, name));
  ojson comps = ojson::array(), left = ojson::array(), right = ojson::array();
  for (int b = 0; b < M.nb(); ++b)
    for (int a = 0; a < M.na(); ++a) {
      const Complex& C = M.comp(b, a);
      if (C.dim() == 0) continue;
      ojson c{{"at", {Bc.object(b), Ac.object(a)}}, {"degrees", C.degrees()}};
      if (!C.d().is_zero()) c["differential"] = matrix_json(C.d());
      comps.push_back(std::move(c));
    }
  for (int b = 0; b < M.nb(); ++b)
    for (int a = 0; a < M.na(); ++a)
      for (int a2 = 0; a2 < M.na(); ++a2)
        for (int g = 0; g < Ac.hom(a, a2).dim(); ++g) {
          const Matrix& m = M.lact(b, a, a2, g);
          if (m.is_zero() || (a == a2 && g == identity_basis(Ac, a) && m.is_identity())) continue;
          left.push_back(ojson{{"at", {Bc.object(b), Ac.object(a), Ac.object(a2)}}, {"morphism", la[Ac.pair(a, a2)][g]}, {"matrix", matrix_json(m)}});
        }
  for (int b2 = 0; b2 < M.nb(); ++b2)
    for (int b = 0; b < M.nb(); ++b)
      for (int a = 0; a < M.na(); ++a)
        for (int f = 0; f < Bc.hom(b2, b).dim(); ++f) {
          const Matrix& m = M.ract(b2, b, a, f);
          if (m.is_zero() || (b == b2 && f == identity_basis(Bc, b) && m.is_identity())) continue;
          right.push_back(ojson{{"at", {Bc.object(b2), Bc.object(b), Ac.object(a)}}, {"morphism", lb[Bc.pair(b2, b)][f]}, {"matrix", matrix_json(m)}});
        }
  out["components"] = std::move(comps);
  out["left_action"] = std::move(left);
  out["right_action"] = std::move(right);
  return out;
}

ojson to_json(const Workspace& w) {
  ojson out;
  out["field"] = w.field.spec();
  ojson cats = ojson::array(), funs = ojson::array(), mods = ojson::array();
  for (const std::string& n : w.category_names) {
    ojson c = category_json(*w.categories.at(n));
    c["name"] = n;
    cats.push_back(std::move(c));
  }
  for (const std::string& n : w.functor_names) funs.push_back(functor_json(n, w.functors.at(n), w.categories));
  for (const std::string& n : w.module_names) mods.push_back(module_json(n, w.modules.at(n), w.categories));
  out["categories"] = std::move(cats);
  out["functors"] = std::move(funs);
  out["modules"] = std::move(mods);
  return out;
}

const char* workspace_schema() {
  return R"schema({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "dgcalc workspace",
  "type": "object",
  "properties": {
    "field": {"type": "string", "pattern": "^(q|fp:[0-9]+)$"},
    "categories": {"type": "array", "items": {"$ref": "#/$defs/category"}},
    "functors": {"type": "array", "items": {"$ref": "#/$defs/functor"}},
    "modules": {"type": "array", "items": {"$ref": "#/$defs/module"}}
  },
  "$defs": {
    "scalar": {"oneOf": [{"type": "string"}, {"type": "integer"}]},
    "matrix": {"type": "array", "items": {"type": "array", "items": {"$ref": "#/$defs/scalar"}}},
    "category": {
      "type": "object",
      "required": ["name"],
      "oneOf": [
        {"required": ["fixture"], "properties": {"fixture": {"enum": ["q2", "dual_numbers", "truncated_odd", "contractible_pair", "homotopy_pair", "point", "unit"]}, "object": {"type": "string"}}},
        {"required": ["construct"], "properties": {"construct": {"enum": ["opposite", "tensor"]}, "of": {"type": "string"}, "first": {"type": "string"}, "second": {"type": "string"}}},
        {"required": ["objects"], "properties": {
          "objects": {"type": "array", "items": {"type": "string"}},
          "morphisms": {"type": "array", "items": {"type": "object", "required": ["label", "source", "target", "degree"],
            "properties": {"label": {"type": "string"}, "source": {"type": "string"}, "target": {"type": "string"}, "degree": {"type": "integer"}}}},
          "identities": {"type": "object", "additionalProperties": {"type": "array", "items": {"type": "array", "prefixItems": [{"type": "string"}, {"$ref": "#/$defs/scalar"}]}}},
          "differential": {"type": "array", "items": {"type": "array", "prefixItems": [{"type": "string"}, {"type": "string"}, {"$ref": "#/$defs/scalar"}]}},
          "composition": {"type": "array", "items": {"type": "array", "prefixItems": [{"type": "string"}, {"type": "string"}, {"type": "string"}, {"$ref": "#/$defs/scalar"}]}}
        }}
      ]
    },
    "functor": {
      "type": "object",
      "required": ["name"],
      "properties": {
        "fixture": {"enum": ["collapse", "inclusion"]},
        "construct": {"enum": ["identity", "compose"]},
        "source": {"type": "string"}, "target": {"type": "string"},
        "category": {"type": "string"}, "outer": {"type": "string"}, "inner": {"type": "string"},
        "objects": {"type": "object", "additionalProperties": {"type": "string"}},
        "homs": {"type": "array", "items": {"type": "object", "required": ["source", "target", "matrix"],
          "properties": {"source": {"type": "string"}, "target": {"type": "string"}, "matrix": {"$ref": "#/$defs/matrix"}}}}
      }
    },
    "module": {
      "type": "object",
      "required": ["name"],
      "properties": {
        "construct": {"enum": ["diagonal", "representable_right", "representable_left", "h_lower", "h_upper", "component", "co_component",
                               "shift", "direct_sum", "cone_identity", "dual", "isbell", "compose"]},
        "left": {"type": ["string", "null"]},
        "right": {"type": ["string", "null"]},
        "components": {"type": "array", "items": {"type": "object", "required": ["at"],
          "properties": {"at": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
                         "degrees": {"type": "array", "items": {"type": "integer"}}, "differential": {"$ref": "#/$defs/matrix"}}}},
        "left_action": {"type": "array", "items": {"type": "object", "required": ["at", "morphism", "matrix"],
          "properties": {"at": {"type": "array", "items": {"type": "string"}, "minItems": 3, "maxItems": 3},
                         "morphism": {"type": "string"}, "matrix": {"$ref": "#/$defs/matrix"}}}},
        "right_action": {"type": "array", "items": {"type": "object", "required": ["at", "morphism", "matrix"],
          "properties": {"at": {"type": "array", "items": {"type": "string"}, "minItems": 3, "maxItems": 3},
                         "morphism": {"type": "string"}, "matrix": {"$ref": "#/$defs/matrix"}}}}
      }
    }
  }
})schema";
}

}  // namespace dgc
