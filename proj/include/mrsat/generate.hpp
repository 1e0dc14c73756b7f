#pragma once

#include <cstdint>
#include <string>

#include "mrsat/formula.hpp"

namespace mrsat {

enum class Family {
  random_uniform,  // independent clauses: r distinct variables, uniform signs
  tight_pairs,     // complete sign blocks over random variable sets: X == 0,
                   // so the instance is NO for every k >= 1
  planted,         // literal signs agree with a hidden assignment with
                   // probability 9/10
};

Family family_from_string(const std::string& name);
std::string family_to_string(Family family);

struct GenParams {
  Family family = Family::random_uniform;
  int r = 2;
  int n = 0;
  std::int64_t m = 0;
  std::uint64_t seed = 0;
};

// Deterministic: identical parameters give byte-identical instances on every
// platform (the engine is the standards-fixed mt19937_64 and all bounded
// draws use explicit rejection sampling).
CnfInstance generate(const GenParams& params);

}  // namespace mrsat
