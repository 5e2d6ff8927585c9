#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace dgc::cli;
  CLI::App app{"dgcalc: finite dg-categories, modules, ends, duality and quasi-functors"};
  app.require_subcommand(1);

  std::string field, seed, json_out;
  int depth = -1;
  bool force = false, parallel = false;
  app.add_option("--field", field, "ground field: q or fp:<p> (overrides the workspace)");
  app.add_option("--depth", depth, "bar resolution depth (default: nilpotency index)");
  app.add_option("--seed", seed, "seed for randomized searches, hexadecimal");
  app.add_flag("--force-uncertified", force, "continue with uncertified resolutions");
  app.add_option("--json-out", json_out, "write the report here instead of stdout");
  app.add_flag("--parallel", parallel, "objectwise work on OpenMP threads");

  Invocation inv;
  std::map<std::string, std::string> values;
  for (const Command& c : commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->fallthrough();
    if (c.name != "schema") sub->add_option("workspace", inv.workspace, "workspace JSON file")->required();
    for (const Arg& a : c.args) {
      values[c.name + "/" + a.name] = a.fallback;
      sub->add_option("--" + a.name, values[c.name + "/" + a.name], a.help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Exit::invalid;
  }

  CLI::App* sub = app.get_subcommands().front();
  inv.command = sub->get_name();
  for (const Command& c : commands())
    if (c.name == inv.command)
      for (const Arg& a : c.args) {
        const std::string& v = values[c.name + "/" + a.name];
        if (!v.empty()) inv.args[a.name] = v;
      }
  if (!field.empty()) inv.field = field;
  inv.opt.depth = depth;
  inv.opt.force_uncertified = force;
  inv.opt.parallel = parallel;
  if (!seed.empty()) {
    try {
      size_t used = 0;
      inv.opt.seed = std::stoull(seed, &used, 16);
      if (used != seed.size()) throw std::invalid_argument(seed);
    } catch (const std::exception&) {
      std::cerr << "error at arguments/--seed: not a hexadecimal number\n";
      return Exit::invalid;
    }
  }

  Outcome out = run(inv);
  const std::string text = out.report.dump(2) + "\n";
  if (json_out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(json_out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << json_out << "\n";
      return Exit::invalid;
    }
    f << text;
  }
  if (!out.summary.empty()) std::cerr << out.summary << "\n";
  return out.exit;
}
