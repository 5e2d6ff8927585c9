#include <random>

#include "dgc/options.hpp"

namespace dgc {

const Options& default_options() {
  static const Options opts;
  return opts;
}

namespace {

bool enumerate_grid(Field F, int k, uint64_t base, const std::function<bool(const Vector&)>& accept, SearchOutcome& out) {
  std::vector<uint64_t> digits(k, 0);
  Vector c(k, F.zero());
  while (true) {
    for (int i = 0; i < k; ++i) c[i] = F.from_int(static_cast<long long>(digits[i]));
    ++out.visited;
    if (accept(c)) {
      out.witness = c;
      return true;
    }
    int i = 0;
    while (i < k && ++digits[i] == base) digits[i++] = 0;
    if (i == k) return false;
  }
}

bool fits(uint64_t base, int k, uint64_t limit) {
  uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (total > limit / base) return false;
    total *= base;
  }
  return total <= limit;
}

}  // namespace

SearchOutcome search_coefficients(Field F, int k, const std::function<bool(const Vector&)>& accept, const Options& opt,
                                  std::optional<int> degree_bound) {
  SearchOutcome out;
  if (k == 0) {
    out.visited = 1;
    out.exhaustive = true;
    out.method = "trivial";
    if (accept(Vector{})) out.witness = Vector{};
    return out;
  }
  const uint64_t p = F.characteristic();
  if (p && fits(p, k, opt.exhaustive_limit)) {
    out.method = "enumeration";
    out.exhaustive = true;
    enumerate_grid(F, k, p, accept, out);
    return out;
  }
  // basis vectors, then seeded random points
  out.method = "random";
  for (int i = 0; i < k; ++i) {
    Vector c(k, F.zero());
    c[i] = F.one();
    ++out.visited;
    if (accept(c)) {
      out.witness = c;
      return out;
    }
  }
  std::mt19937_64 rng(opt.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(k)));
  std::uniform_int_distribution<long long> dist(-97, 97);
  for (int t = 0; t < opt.random_tries; ++t) {
    Vector c(k, F.zero());
    for (int i = 0; i < k; ++i) c[i] = F.from_int(dist(rng));
    ++out.visited;
    if (accept(c)) {
      out.witness = c;
      return out;
    }
  }
  if (degree_bound && !p && fits(static_cast<uint64_t>(*degree_bound) + 1, k, opt.exhaustive_limit)) {
    out.method = "grid";
    out.exhaustive = true;
    enumerate_grid(F, k, static_cast<uint64_t>(*degree_bound) + 1, accept, out);
  }
  return out;
}

}  // namespace dgc
