#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mrsat {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Each check draws its instances deterministically from the given seed and
// verifies the named property against an independent exhaustive oracle,
// reporting the first violation.

// evaluate(X, tau) == 2^r * sat_count(tau, f) - (2^r - 1) m on every
// assignment of every sampled instance.
CheckResult check_value_identity(int instances, const std::vector<int>& widths, int n_max, int m_max,
                                 std::uint64_t seed);

// sum over the cube of evaluate(X, tau)^2 equals 2^n * sum c_I^2, exactly.
CheckResult check_second_moment(int instances, int n_max, std::uint64_t seed);

// decide_tlb agrees with the exhaustive optimum for every k in [0, m]; the
// threshold route never contradicts the oracle.
CheckResult check_decision_soundness(int instances, std::uint64_t seed);

// The lin2 system and the gadget CNF produced from a nonzero polynomial give
// the same verdict as the source instance at the translated bounds, and the
// equation count stays under 4 * 8^{2r} * k^2 whenever the threshold did not
// fire.
CheckResult check_kernel_chain(int instances, std::uint64_t seed);

// Every equation shape (width 1..r, both sides, with and without fresh
// padding) turns into 2^{r-1} clauses of which a satisfying assignment
// satisfies all and any other exactly 2^{r-1} - 1, checked exhaustively for
// r in {2,3,4}.
CheckResult check_gadget_exactness();

// Reduced instances with more than 3k-2 significant variables satisfy
// sat >= (3m + k) / 4, for k in {1,2}, verified on at least min_checks
// sampled (instance, k) pairs.
CheckResult check_significant_threshold(int min_checks, std::uint64_t seed);

// kernelize_2sat outcomes: YES answers are confirmed by the oracle, solved
// optima match it, and kernels have at most 3k-1 variables and the same
// verdict as their source.
CheckResult check_kernel_bound(int instances, std::uint64_t seed);

// average_assignment satisfies at least ceil((1 - 2^{-r}) m) clauses;
// derandomized_switch_assignment satisfies at least ceil((3m + t) / 4) on
// the reduced instance.
CheckResult check_constructive_bounds(int instances, std::uint64_t seed);

// Character sums of order <= 8 vanish exactly over the constructed sample
// spaces (both the cube fallback and the forced parity-check construction),
// and threshold-route witnesses meet the bound on oracle-checkable
// instances.
CheckResult check_sample_space_and_witness(std::uint64_t seed);

// DIMACS and lin2 serializations round-trip exactly.
CheckResult check_format_roundtrip(int instances, std::uint64_t seed);

// Quick versions of all checks, for the CLI selfcheck command.
std::vector<CheckResult> run_selfcheck();

}  // namespace mrsat
