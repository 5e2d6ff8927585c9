#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dgc/dgmod.hpp"

namespace dgc {

/// Malformed or invalid workspace input; `location` is a JSON-pointer-like path.
struct WorkspaceError : std::runtime_error {
  std::string location;
  WorkspaceError(std::string where, const std::string& what) : std::runtime_error(where + ": " + what), location(std::move(where)) {}
};

/// Named categories, functors and (bi)modules over one field, in file order.
struct Workspace {
  Field field;
  std::vector<std::string> category_names, functor_names, module_names;
  std::map<std::string, CatPtr> categories;
  std::map<std::string, DgFunctor> functors;
  std::map<std::string, Bimodule> modules;

  const CatPtr& category(const std::string& name) const;
  const DgFunctor& functor(const std::string& name) const;
  const Bimodule& module(const std::string& name) const;
  void add(const std::string& name, CatPtr C);
  void add(const std::string& name, DgFunctor F);
  void add(const std::string& name, Bimodule M);
};

/// Entries are explicit tables or constructions ("fixture", "construct"); every
/// loaded object passes its validator. `field` overrides the file's field.
Workspace parse_workspace(const nlohmann::json& j, std::optional<Field> field = std::nullopt);
Workspace load_workspace(const std::string& path, std::optional<Field> field = std::nullopt);

/// Explicit serialization: reloading gives structurally identical objects.
nlohmann::ordered_json to_json(const Workspace& w);
nlohmann::ordered_json category_json(const DgCategory& C);
nlohmann::ordered_json functor_json(const std::string& name, const DgFunctor& F, const std::map<std::string, CatPtr>& cats);
nlohmann::ordered_json module_json(const std::string& name, const Bimodule& M, const std::map<std::string, CatPtr>& cats);

nlohmann::ordered_json matrix_json(const Matrix& m);
nlohmann::ordered_json vector_json(const Vector& v);
Matrix parse_matrix(const nlohmann::json& j, Field F, int rows, int cols, const std::string& where);

/// JSON Schema (draft 2020-12) of the workspace format.
const char* workspace_schema();

}  // namespace dgc
