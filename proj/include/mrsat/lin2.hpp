#pragma once

#include <cstdint>
#include <vector>

#include "mrsat/fourier.hpp"

namespace mrsat {

// polynomial_to_lin2 called on the zero polynomial.
struct EmptyPolynomial : Error {
  using Error::Error;
};

// lin2_to_cnf called with an equation wider than the requested r.
struct EquationTooWide : Error {
  using Error::Error;
};

// Weighted parity equation sum_{i in vars} z_i = rhs (mod 2).
struct LinEquation {
  std::vector<int> vars;       // nonempty, sorted, distinct
  int rhs = 0;                 // 0 or 1
  std::int64_t weight = 1;     // positive

  friend bool operator==(const LinEquation&, const LinEquation&) = default;
};

// System over 0/1 variables 1..n; equations are kept in canonical order
// (degree, variables, rhs) with duplicate (vars, rhs) pairs merged.
struct Lin2System {
  int n = 0;
  std::vector<LinEquation> equations;
  std::int64_t total_weight = 0;  // W = sum of weights

  friend bool operator==(const Lin2System&, const Lin2System&) = default;
};

// 0/1 assignment for lin2 systems, 1-based like Assignment (index 0 unused).
using BitAssignment = std::vector<std::uint8_t>;

// Canonicalizes and validates a raw equation list.
Lin2System make_lin2_system(const std::vector<LinEquation>& raw, int n);

struct BikernelResult {
  Lin2System system;
  std::int64_t k = 0;  // parameter, unchanged by the reduction
};

// Term c_I prod x_i becomes the equation sum_{i in I} z_i = (c_I > 0 ? 0 : 1)
// with weight |c_I|; under x_i = (-1)^{z_i} the excess of z equals the value
// of the polynomial at the corresponding +-1 point.
BikernelResult polynomial_to_lin2(const MultilinearPolynomial& x, std::int64_t k);

// satisfied weight minus unsatisfied weight under z
std::int64_t lin2_excess(const BitAssignment& z, const Lin2System& sys);

struct GadgetResult {
  CnfInstance cnf;
  std::int64_t k_prime = 0;  // 2^{r-1} * k
};

// Replaces each equation by the 2^{r-1} clauses indexed by the non-satisfying
// 0/1 patterns of its padded variable set (literal i is positive when the
// pattern bit is 0); weights become clause multiplicities.  An assignment
// satisfying the equation satisfies all its clauses, any other satisfies
// exactly 2^{r-1} - 1 of them.  Equations shorter than r are padded with the
// smallest-index variables of the system not in the equation, appending fresh
// variables n+1, n+2, ... when the system runs out.
GadgetResult lin2_to_cnf(const Lin2System& sys, int r, std::int64_t k);

struct Lin2OptResult {
  BitAssignment z;  // lexicographically smallest maximizer (0 before 1)
  std::int64_t satisfied_weight = 0;
};

// Exact maximum satisfied weight by exhaustive enumeration.
Lin2OptResult lin2_brute_force(const Lin2System& sys, int var_cap = 28);

}  // namespace mrsat
