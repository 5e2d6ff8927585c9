#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dgc/options.hpp"

namespace dgc::cli {

enum Exit { ok = 0, negative = 1, invalid = 2, uncertified = 3 };

struct Arg {
  std::string name;  // without the leading dashes
  std::string help;
  bool required = true;
  std::string fallback;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<Arg> args;
};

/// All commands in registration order.
const std::vector<Command>& commands();

struct Invocation {
  std::string command;
  std::string workspace;
  std::map<std::string, std::string> args;
  std::optional<std::string> field;
  Options opt;
  bool seed_given = false;
};

struct Outcome {
  nlohmann::ordered_json report;
  std::string summary;
  int exit = Exit::ok;
};

/// Loads the workspace and runs one command. Never throws: malformed input and
/// refusals become reports with the matching exit code.
Outcome run(const Invocation& inv);

std::string hex_seed(uint64_t seed);

}  // namespace dgc::cli
