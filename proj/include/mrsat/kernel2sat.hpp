#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mrsat/formula.hpp"

namespace mrsat {

// Operation defined only for 2-CNF instances.
struct WrongArity : Error {
  using Error::Error;
};

// The instance still contains a semicomplete block.
struct NotReduced : Error {
  using Error::Error;
};

// Negative parameter where k >= 0 is required.
struct InvalidK : Error {
  using Error::Error;
};

// Four pairwise-conflicting 2-clauses; up to renaming they always have the
// shape {xy, x~y, ~xz, ~x~z} (z = y gives the complete quadruple).  Every
// assignment satisfies exactly three of them.
struct SemicompleteBlock {
  int x = 0;  // pivot variable
  Clause c1, c2, c3, c4;
};

// Smallest-pivot block of f, if any.
std::optional<SemicompleteBlock> find_semicomplete_block(const CnfInstance& f);

struct ReduceResult {
  CnfInstance reduced;           // F^S: no semicomplete block remains
  std::int64_t blocks_removed = 0;
};

// Removes semicomplete blocks one at a time until none remains; each block
// drops the optimum by exactly 3 and the clause count by 4.
ReduceResult semicomplete_reduce(const CnfInstance& f);

// Weighted graph on the occurring variables: w(x) = c(x) - c(~x) and
// w(xy) = c(x~y) + c(~xy) - c(xy) - c(~x~y), with an edge wherever some
// clause has exactly that variable pair.  These are the coefficients of the
// instance polynomial, so X = sum w(x) x + sum w(xy) xy.
struct AuxGraph {
  std::vector<int> vertices;  // ascending
  std::map<int, std::int64_t> vertex_weight;
  std::map<std::pair<int, int>, std::int64_t> edge_weight;  // keys (u,v), u < v

  std::int64_t w(int x) const { return vertex_weight.at(x); }
  std::int64_t w(int u, int v) const;             // 0 when not adjacent
  std::vector<int> g0_neighbors(int x) const;     // neighbors via nonzero-weight edges
  bool g0_isolated(int x) const { return g0_neighbors(x).empty(); }
};

// Requires a reduced 2-CNF (throws NotReduced otherwise).
AuxGraph build_aux_graph(const CnfInstance& f);

// Variables x with w(x) = 0 that are isolated in the nonzero-weight graph;
// on reduced instances this coincides with the direct criterion that xy and
// ~xy occur equally often for every literal y (cross-checked internally).
// sat(tau, f) does not depend on such variables.
std::vector<int> insignificant_vars(const CnfInstance& f);

struct Star {
  int center = 0;
  std::vector<int> leaves;  // nonempty independent set of G0-neighbors
};

struct StarPacking {
  std::vector<Star> stars;      // vertex-disjoint induced stars
  std::int64_t leaf_count = 0;  // t = total number of leaves
};

// Greedy packing: vertices scanned by descending G0-degree (index ascending
// on ties); each unused vertex collects a maximal independent set of unused
// neighbors as leaves; childless centers stay available.
StarPacking greedy_star_packing(const AuxGraph& g);

struct SwitchAssignmentResult {
  Assignment assignment;
  std::int64_t leaf_count = 0;  // t of the packing used
  std::int64_t sat = 0;         // achieved sat_count; 4*sat >= 3m + t
};

// Constructive counterpart of the star-packing bound on a reduced instance:
// leaf switches make every star edge positive, per-star switches are chosen
// by conditional expectations to keep the packed weight at least t, the star
// vertices are fixed to true, and the remaining variables are set greedily by
// exact conditional expectations of sat (kept as integers scaled by 4).
SwitchAssignmentResult derandomized_switch_assignment(const CnfInstance& reduced, const StarPacking& packing);

enum class Kernel2Kind {
  decided_yes,  // significant variables exceed 3k-2 (or k = 0)
  kernel,       // kernel instance produced
  solved,       // kernel exceeded 8^k clauses and was solved exactly
};

struct Kernel2Result {
  Kernel2Kind kind = Kernel2Kind::kernel;
  std::int64_t removed_clauses = 0;  // |F| - |F^S|, so sat offset is 3/4 of it
  std::int64_t significant = 0;      // significant variables of F^S
  CnfInstance kernel;                // compacted F'' (kinds kernel/solved)
  std::vector<int> kernel_var_map;   // kernel index (1-based) -> source variable, 0 for the fresh one
  std::optional<std::int64_t> optimum;  // kind solved: exact sat optimum of f
  std::optional<bool> verdict;          // kinds decided_yes / solved
};

// Kernelization for sat(f) >= (3m + k) / 4: reduce, answer YES when more
// than 3k-2 significant variables remain, otherwise collapse all
// insignificant variables into one fresh variable, leaving a kernel on at
// most 3k-1 variables that is equivalent for the same k.  If that kernel
// still has more than 8^k clauses it is solved outright.
Kernel2Result kernelize_2sat(const CnfInstance& f, std::int64_t k, int var_cap = 28);

}  // namespace mrsat
