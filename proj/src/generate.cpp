#include "mrsat/generate.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

namespace mrsat {

Family family_from_string(const std::string& name) {
  if (name == "random") return Family::random_uniform;
  if (name == "tight_pairs") return Family::tight_pairs;
  if (name == "planted") return Family::planted;
  throw BadParams("unknown family '" + name + "' (expected random, tight_pairs or planted)");
}

std::string family_to_string(Family family) {
  switch (family) {
    case Family::random_uniform:
      return "random";
    case Family::tight_pairs:
      return "tight_pairs";
    case Family::planted:
      return "planted";
  }
  throw BadParams("unknown family");
}

namespace {

// Unbiased bounded draw; uniform_int_distribution is implementation-defined,
// which would break cross-platform byte-exact generation.
std::uint64_t draw_below(std::mt19937_64& eng, std::uint64_t bound) {
  const std::uint64_t limit = bound * (std::numeric_limits<std::uint64_t>::max() / bound);
  std::uint64_t v;
  do {
    v = eng();
  } while (v >= limit);
  return v % bound;
}

std::vector<int> draw_distinct_vars(std::mt19937_64& eng, int r, int n) {
  std::set<int> vars;
  while (static_cast<int>(vars.size()) < r) vars.insert(static_cast<int>(draw_below(eng, n)) + 1);
  return std::vector<int>(vars.begin(), vars.end());
}

}  // namespace

CnfInstance generate(const GenParams& p) {
  if (p.r < 2 || p.r > 10) throw BadParams("clause width r must be in [2,10]");
  if (p.n < p.r) throw BadParams("need n >= r variables");
  if (p.m < 0) throw BadParams("clause count must be nonnegative");

  std::mt19937_64 eng(p.seed);
  std::vector<std::vector<Literal>> raw;
  raw.reserve(static_cast<size_t>(p.m));

  switch (p.family) {
    case Family::random_uniform: {
      for (std::int64_t i = 0; i < p.m; ++i) {
        std::vector<Literal> clause;
        for (int v : draw_distinct_vars(eng, p.r, p.n)) clause.push_back(Literal{v, draw_below(eng, 2) == 1});
        raw.push_back(std::move(clause));
      }
      break;
    }
    case Family::tight_pairs: {
      const std::int64_t block = std::int64_t{1} << p.r;
      if (p.m % block != 0)
        throw BadParams("family tight_pairs needs m divisible by 2^r = " + std::to_string(block));
      for (std::int64_t b = 0; b < p.m / block; ++b) {
        const std::vector<int> vars = draw_distinct_vars(eng, p.r, p.n);
        for (std::int64_t signs = 0; signs < block; ++signs) {
          std::vector<Literal> clause;
          for (int j = 0; j < p.r; ++j) clause.push_back(Literal{vars[j], ((signs >> j) & 1) == 1});
          raw.push_back(std::move(clause));
        }
      }
      break;
    }
    case Family::planted: {
      std::vector<int> hidden(static_cast<size_t>(p.n) + 1, +1);
      for (int v = 1; v <= p.n; ++v) hidden[v] = draw_below(eng, 2) == 1 ? -1 : +1;
      for (std::int64_t i = 0; i < p.m; ++i) {
        std::vector<Literal> clause;
        for (int v : draw_distinct_vars(eng, p.r, p.n)) {
          // literal satisfied by the hidden assignment with probability 9/10
          const bool agree = draw_below(eng, 10) < 9;
          const bool satisfied_when_negated = hidden[v] == -1;
          clause.push_back(Literal{v, agree ? satisfied_when_negated : !satisfied_when_negated});
        }
        raw.push_back(std::move(clause));
      }
      break;
    }
  }
  return validate_instance(raw, p.r, p.n);
}

}  // namespace mrsat
