#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mrsat/formula.hpp"

namespace mrsat {

// Coefficients are exact arbitrary-precision integers so no computation
// depends on input-size overflow discipline.
using BigInt = boost::multiprecision::cpp_int;

// CSP constraint with an empty scope.
struct EmptyScope : Error {
  using Error::Error;
};

// A term is a nonempty sorted set of variable indices.
using TermKey = std::vector<int>;

// Canonical term order: by degree, then lexicographically.
struct TermOrder {
  bool operator()(const TermKey& a, const TermKey& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using TermMap = std::map<TermKey, BigInt, TermOrder>;

// Multilinear polynomial over +-1 variables with no constant term and all
// degrees in 1..r.  Zero-coefficient terms are never stored.
class MultilinearPolynomial {
 public:
  MultilinearPolynomial() = default;
  MultilinearPolynomial(int r, int n) : r_(r), n_(n) {}

  int r() const { return r_; }
  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  // Adds coeff * prod_{i in key} x_i, merging with any existing term and
  // dropping the term when the merged coefficient is zero.  The key must be
  // sorted, duplicate-free, nonempty, of size <= r, with variables in 1..n.
  void add_term(const TermKey& key, const BigInt& coeff);

  // Equality is on the canonical term map (metadata r, n may differ).
  friend bool operator==(const MultilinearPolynomial& a, const MultilinearPolynomial& b) {
    return a.terms_ == b.terms_;
  }

 private:
  int r_ = 0;
  int n_ = 0;
  TermMap terms_;
};

// Expansion of 1 - prod_{x_i in var(C)} (1 + eps_i x_i) with eps_i = -1 for a
// positive literal and +1 for a negated one.  The result evaluates to 1 on
// assignments satisfying C and to 1 - 2^r on the falsifying one.
MultilinearPolynomial clause_to_polynomial(const Clause& c, int n);

// Expansion of sum_{v in satisfying} [prod_j (1 + x_{scope_j} v_j) - 1]; the
// value is 2^|scope| - |satisfying| when the constraint holds and
// -|satisfying| otherwise.
MultilinearPolynomial csp_constraint_to_polynomial(const CspConstraint& f, int n);

// Multiplicity-weighted sum of the clause polynomials.  Satisfies
// evaluate(X, tau) = 2^r * sat_count(tau, f) - (2^r - 1) * m for every tau.
MultilinearPolynomial instance_to_polynomial(const CnfInstance& f);

BigInt evaluate(const MultilinearPolynomial& x, const Assignment& tau);

// sum of squared coefficients (the second moment under uniform +-1 inputs)
BigInt l2_norm_sq(const MultilinearPolynomial& x);

// sum of absolute coefficients
BigInt weight_sum(const MultilinearPolynomial& x);

std::size_t term_count(const MultilinearPolynomial& x);

// Variables appearing in at least one term, ascending.
std::vector<int> support(const MultilinearPolynomial& x);

// One term per line in canonical order: "<coeff> <i1> <i2> ... <iq>".
std::string to_text(const MultilinearPolynomial& x);

}  // namespace mrsat
