#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dgc/matrix.hpp"

namespace dgc {

/// Knobs shared by the randomized searches and the derived machinery.
struct Options {
  uint64_t seed = 0x5eedc0de2024ULL;
  int random_tries = 12;
  /// Upper bound on the number of points an exhaustive search may visit.
  uint64_t exhaustive_limit = 1u << 16;
  /// Bar construction depth; negative means "use the termination index".
  int depth = -1;
  int depth_fallback = 3;
  bool force_uncertified = false;
  bool parallel = false;
};

const Options& default_options();

struct SearchOutcome {
  std::optional<Vector> witness;
  bool exhaustive = false;  // true when absence of a witness is a proof
  uint64_t visited = 0;
  std::string method;
};

/// Looks for coefficients c (length k) with accept(c) true. Over F_p the whole
/// space is enumerated when small enough. Over Q random integer points are tried
/// first; if `degree_bound` is given, a grid {0..degree_bound}^k is then
/// enumerated, which is a proof of absence when accept(c) is "a polynomial of
/// degree <= degree_bound in each variable is nonzero".
SearchOutcome search_coefficients(Field F, int k, const std::function<bool(const Vector&)>& accept, const Options& opt,
                                  std::optional<int> degree_bound = std::nullopt);

}  // namespace dgc
