#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mrsat/fourier.hpp"

namespace mrsat {

// The search route would enumerate more variables than the configured cap.
struct SearchTooLarge : Error {
  using Error::Error;
};

// No point of the scanned sample space reached the requested value.
struct WitnessSearchExhausted : Error {
  using Error::Error;
};

enum class DecisionRoute {
  zero_polynomial,  // X == 0: YES iff k == 0
  threshold,        // sum c_I^2 >= 4 * 8^{2r} * k^2 forces a YES
  search,           // exhaustive maximization over the support of X
};

struct DecisionStats {
  std::size_t terms = 0;   // number of nonzero terms of X
  BigInt l2 = 0;           // sum of squared coefficients
  BigInt weight = 0;       // sum of absolute coefficients
  int support = 0;         // number of distinct variables in X
};

struct Decision {
  bool yes = false;
  DecisionRoute route = DecisionRoute::zero_polynomial;
  std::optional<Assignment> witness;  // present on search-route YES
  DecisionStats stats;
};

struct DecideOptions {
  int search_cap = 30;  // maximum support size the search route enumerates
};

// Decides sat(f) >= ((2^r - 1) m + k) / 2^r.  k = 0 is always YES (the
// polynomial has zero mean); a zero polynomial is YES only for k = 0; the
// second-moment threshold answers YES without search; otherwise the support
// of X is enumerated exhaustively.
Decision decide_tlb(const CnfInstance& f, std::int64_t k, const DecideOptions& opts = {});

// For a YES decision, an assignment tau with
// 2^r * sat_count(tau, f) >= (2^r - 1) m + k.  The threshold route scans a
// (4r)-wise independent sample space over the support of X.
Assignment find_witness(const CnfInstance& f, std::int64_t k, const Decision& d, const DecideOptions& opts = {});

// Derandomized greedy assignment via conditional expectations on X: fixes
// variables 1..n in order, keeping the conditional mean nonnegative, so the
// result satisfies at least ceil((1 - 2^{-r}) m) clauses.
Assignment average_assignment(const CnfInstance& f);

// t-wise independent set of +-1 vectors of length n.  Points are indexed by
// seeds; coordinate i of a point is the parity of <seed, column_i> where
// column_i = (1, a_i, a_i^3, ..., a_i^{t-1}) over GF(2^ceil(log2(n+1))) is a
// BCH-style parity-check column.  When the full cube {+-1}^n is no bigger
// than that space, the cube is returned instead (identity columns).
class SampleSpace {
 public:
  SampleSpace(int n, int t, bool cube, int seed_bits, std::vector<std::uint64_t> columns)
      : n_(n), t_(t), cube_(cube), seed_bits_(seed_bits), columns_(std::move(columns)) {}

  int n() const { return n_; }
  int t() const { return t_; }
  bool is_cube() const { return cube_; }
  int seed_bits() const { return seed_bits_; }
  std::uint64_t size() const { return std::uint64_t{1} << seed_bits_; }

  // +-1 value of coordinate (1-based variable position coord in 1..n) of the
  // point with the given seed index.
  int sign(std::uint64_t seed, int coord) const;

 private:
  int n_;
  int t_;
  bool cube_;
  int seed_bits_;
  std::vector<std::uint64_t> columns_;  // one per coordinate
};

// t must be even, 2 <= t <= 16; the seed width must fit 63 bits.  With
// cube_fallback the full cube replaces any construction at least as large.
SampleSpace kwise_sample_space(int n, int t, bool cube_fallback = true);

}  // namespace mrsat
