#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "mrsat/error.hpp"

namespace mrsat {

// Clause with a number of distinct variables different from r.
struct ClauseSizeMismatch : Error {
  using Error::Error;
};

// A variable and its negation inside one clause.
struct ComplementaryPair : Error {
  using Error::Error;
};

// Variable index outside 1..n.
struct VariableOutOfRange : Error {
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured variable cap.
struct TooLarge : Error {
  using Error::Error;
};

// A literal is a 1-based variable index plus a polarity.
struct Literal {
  int var = 0;
  bool negated = false;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline Literal pos(int var) { return Literal{var, false}; }
inline Literal neg(int var) { return Literal{var, true}; }

// A clause is a set of literals over pairwise distinct variables, kept
// sorted by variable index.  Canonical instances contain only clauses of
// exactly r literals.
struct Clause {
  std::vector<Literal> lits;

  friend auto operator<=>(const Clause&, const Clause&) = default;
};

// Truth assignment on variables 1..n with values +1 (true) / -1 (false).
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int n, int fill = +1) : sign_(static_cast<size_t>(n) + 1, static_cast<std::int8_t>(fill)) {}

  int n() const { return static_cast<int>(sign_.size()) - 1; }
  int operator[](int var) const { return sign_.at(static_cast<size_t>(var)); }
  void set(int var, int s) { sign_.at(static_cast<size_t>(var)) = static_cast<std::int8_t>(s); }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::int8_t> sign_{0};  // index 0 unused
};

inline bool literal_true(const Literal& l, const Assignment& tau) {
  return l.negated ? tau[l.var] == -1 : tau[l.var] == +1;
}

// CNF instance in canonical form: clause -> multiplicity, m = total clause
// count including multiplicities.
struct CnfInstance {
  int r = 0;
  int n = 0;
  std::map<Clause, std::int64_t> clauses;
  std::int64_t m = 0;

  friend bool operator==(const CnfInstance&, const CnfInstance&) = default;
};

// Boolean constraint given by its scope and the explicit list of satisfying
// +-1 vectors over that scope.
struct CspConstraint {
  std::vector<int> scope;                       // distinct variable indices
  std::vector<std::vector<std::int8_t>> satisfying;  // each of length |scope|
};

// Builds the canonical instance from raw clauses: sorts literals, merges
// duplicate clauses into multiplicities, and checks every clause has exactly
// r distinct variables in 1..n with no complementary pair.
CnfInstance validate_instance(const std::vector<std::vector<Literal>>& raw, int r, int n);

// Number of satisfied clauses under tau, counted with multiplicities.
std::int64_t sat_count(const Assignment& tau, const CnfInstance& f);

struct OptResult {
  Assignment assignment;  // lexicographically smallest maximizer (+1 < -1)
  std::int64_t value = 0;
};

// Exact maximum of sat_count by exhaustive enumeration of all 2^n
// assignments.  Throws TooLarge if n exceeds var_cap.  With threads > 1 the
// range is split into contiguous chunks; the merge keeps the tie-break
// deterministic.
OptResult brute_force_opt(const CnfInstance& f, int var_cap = 28, int threads = 1);

// Flips the polarity of every occurrence of the variables in xs.
CnfInstance switch_vars(const CnfInstance& f, const std::set<int>& xs);

// Variables that occur in at least one clause, ascending.
std::vector<int> occurring_vars(const CnfInstance& f);

}  // namespace mrsat
