#include "mrsat/selfcheck.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "mrsat/fourier.hpp"
#include "mrsat/fpt.hpp"
#include "mrsat/generate.hpp"
#include "mrsat/io.hpp"
#include "mrsat/kernel2sat.hpp"
#include "mrsat/lin2.hpp"

namespace mrsat {

namespace {

// Enumeration helper for exhaustive oracles: bit v-1 of code set means
// variable v is false.
Assignment nth_assignment(std::uint64_t code, int n) {
  Assignment tau(n);
  for (int v = 1; v <= n; ++v) {
    if ((code >> (v - 1)) & 1u) tau.set(v, -1);
  }
  return tau;
}

std::uint64_t draw_below(std::mt19937_64& eng, std::uint64_t bound) {
  const std::uint64_t limit = bound * (std::numeric_limits<std::uint64_t>::max() / bound);
  std::uint64_t v;
  do {
    v = eng();
  } while (v >= limit);
  return v % bound;
}

CnfInstance random_instance(std::mt19937_64& eng, int r, int n_max, int m_max) {
  GenParams p;
  p.family = Family::random_uniform;
  p.r = r;
  p.n = r + static_cast<int>(draw_below(eng, static_cast<std::uint64_t>(n_max - r + 1)));
  p.m = 1 + static_cast<std::int64_t>(draw_below(eng, static_cast<std::uint64_t>(m_max)));
  p.seed = eng();
  return generate(p);
}

// 2^r * opt >= (2^r - 1) m + k
bool meets_tlb(std::int64_t opt, int r, std::int64_t m, std::int64_t k) {
  const std::int64_t scale = std::int64_t{1} << r;
  return scale * opt >= (scale - 1) * m + k;
}

CnfInstance duplicate_clauses(const CnfInstance& f, std::int64_t factor) {
  CnfInstance out = f;
  out.m = f.m * factor;
  for (auto& [clause, mult] : out.clauses) mult *= factor;
  return out;
}

CheckResult pass(std::string name, std::string detail) { return CheckResult{std::move(name), true, std::move(detail)}; }

CheckResult fail(std::string name, std::string detail) {
  return CheckResult{std::move(name), false, std::move(detail)};
}

}  // namespace

CheckResult check_value_identity(int instances, const std::vector<int>& widths, int n_max, int m_max,
                                 std::uint64_t seed) {
  const std::string name = "value-identity";
  std::mt19937_64 eng(seed);
  for (int i = 0; i < instances; ++i) {
    const int r = widths[static_cast<size_t>(i) % widths.size()];
    const CnfInstance f = random_instance(eng, r, n_max, m_max);
    const MultilinearPolynomial x = instance_to_polynomial(f);
    const std::int64_t scale = std::int64_t{1} << f.r;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << f.n); ++code) {
      const Assignment tau = nth_assignment(code, f.n);
      const BigInt lhs = evaluate(x, tau);
      const BigInt rhs = BigInt(scale) * sat_count(tau, f) - BigInt(scale - 1) * f.m;
      if (lhs != rhs)
        return fail(name, "instance " + std::to_string(i) + ": value " + lhs.str() + " != " + rhs.str());
    }
  }
  return pass(name, std::to_string(instances) + " instances, all assignments exact");
}

CheckResult check_second_moment(int instances, int n_max, std::uint64_t seed) {
  const std::string name = "second-moment";
  std::mt19937_64 eng(seed);
  for (int i = 0; i < instances; ++i) {
    const int r = (i % 2 == 0) ? 2 : 3;
    const CnfInstance f = random_instance(eng, r, n_max, 20);
    const MultilinearPolynomial x = instance_to_polynomial(f);
    BigInt sum_sq = 0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << f.n); ++code) {
      const BigInt v = evaluate(x, nth_assignment(code, f.n));
      sum_sq += v * v;
    }
    if (sum_sq != l2_norm_sq(x) << f.n)
      return fail(name, "instance " + std::to_string(i) + ": cube sum of squares mismatches the coefficient norm");
  }
  return pass(name, std::to_string(instances) + " instances, exact equality");
}

CheckResult check_decision_soundness(int instances, std::uint64_t seed) {
  const std::string name = "decision-soundness";
  std::mt19937_64 eng(seed);
  std::int64_t agreements = 0;
  for (int i = 0; i < instances; ++i) {
    const CnfInstance f = random_instance(eng, 2, 6, 12);
    const OptResult opt = brute_force_opt(f);
    for (std::int64_t k = 0; k <= f.m; ++k) {
      const bool expected = meets_tlb(opt.value, f.r, f.m, k);
      const Decision d = decide_tlb(f, k);
      if (d.yes != expected)
        return fail(name, "instance " + std::to_string(i) + ", k=" + std::to_string(k) + ": decided " +
                              (d.yes ? "YES" : "NO") + ", oracle says " + (expected ? "YES" : "NO"));
      if (d.route == DecisionRoute::threshold && !expected)
        return fail(name, "threshold route contradicted the oracle at instance " + std::to_string(i));
      ++agreements;
    }
  }
  return pass(name, std::to_string(agreements) + " (instance, k) pairs agree with the oracle");
}

CheckResult check_kernel_chain(int instances, std::uint64_t seed) {
  const std::string name = "kernel-chain";
  std::mt19937_64 eng(seed);
  int checked = 0;
  for (int i = 0; checked < instances; ++i) {
    const int r = (i % 2 == 0) ? 2 : 3;
    const CnfInstance f = random_instance(eng, r, 6, 10);
    const std::int64_t k = 1 + (i % 2);
    const MultilinearPolynomial x = instance_to_polynomial(f);
    if (x.is_zero()) continue;

    // The chain is exercised on the search path, where the second moment
    // stays below the threshold and the term count must then be small too.
    const BigInt limit = 4 * pow(BigInt(8), static_cast<unsigned>(2 * r)) * k * k;
    if (l2_norm_sq(x) >= limit) continue;
    if (BigInt(static_cast<std::int64_t>(term_count(x))) >= limit)
      return fail(name, "term count reached the threshold bound below the threshold");

    const bool expected = meets_tlb(brute_force_opt(f).value, f.r, f.m, k);

    const BikernelResult bi = polynomial_to_lin2(x, k);
    const Lin2OptResult lopt = lin2_brute_force(bi.system);
    const bool lin_verdict = 2 * lopt.satisfied_weight >= bi.system.total_weight + k;
    if (lin_verdict != expected)
      return fail(name, "lin2 verdict diverged at instance " + std::to_string(i) + ", k=" + std::to_string(k));

    const GadgetResult gadget = lin2_to_cnf(bi.system, r, k);
    if (gadget.cnf.m != (std::int64_t{1} << (r - 1)) * bi.system.total_weight)
      return fail(name, "gadget clause count is not 2^{r-1} W at instance " + std::to_string(i));
    const std::int64_t scale = std::int64_t{1} << r;
    const OptResult gopt = brute_force_opt(gadget.cnf);
    const bool gadget_verdict = scale * gopt.value >= (scale - 1) * gadget.cnf.m + gadget.k_prime;
    if (gadget_verdict != expected)
      return fail(name, "gadget verdict diverged at instance " + std::to_string(i) + ", k=" + std::to_string(k));
    ++checked;
  }
  return pass(name, std::to_string(checked) + " chains preserve the verdict");
}

CheckResult check_gadget_exactness() {
  const std::string name = "gadget-exactness";
  for (int r = 2; r <= 4; ++r) {
    for (int width = 1; width <= r; ++width) {
      for (int rhs = 0; rhs <= 1; ++rhs) {
        for (int system_n : {width, r, r + 2}) {  // fresh padding, exact fit, spare variables
          for (std::int64_t weight : {std::int64_t{1}, std::int64_t{3}}) {
            LinEquation eq;
            for (int v = 1; v <= width; ++v) eq.vars.push_back(v);
            eq.rhs = rhs;
            eq.weight = weight;
            const Lin2System sys = make_lin2_system({eq}, system_n);
            const GadgetResult gadget = lin2_to_cnf(sys, r, 1);
            if (gadget.cnf.m != weight << (r - 1))
              return fail(name, "clause count mismatch at r=" + std::to_string(r) + " width=" + std::to_string(width));

            const int total_vars = gadget.cnf.n;
            for (std::uint64_t z = 0; z < (std::uint64_t{1} << total_vars); ++z) {
              Assignment tau(total_vars);
              int parity = 0;
              for (int v = 1; v <= total_vars; ++v) {
                const int bit = (z >> (v - 1)) & 1u;
                tau.set(v, bit ? +1 : -1);  // x_i = z_i: bit 1 is true
                if (v <= width) parity ^= bit;
              }
              const std::int64_t expected =
                  (parity == rhs) ? weight << (r - 1) : (weight << (r - 1)) - weight;
              if (sat_count(tau, gadget.cnf) != expected)
                return fail(name, "satisfied count off at r=" + std::to_string(r) + " width=" +
                                      std::to_string(width) + " rhs=" + std::to_string(rhs) + " n=" +
                                      std::to_string(system_n) + " z=" + std::to_string(z));
            }
          }
        }
      }
    }
  }
  return pass(name, "r in {2,3,4}, every width, side, padding mode and weight, exhaustively");
}

CheckResult check_significant_threshold(int min_checks, std::uint64_t seed) {
  const std::string name = "significant-threshold";
  std::mt19937_64 eng(seed);
  std::int64_t checks = 0, instances = 0;
  while (checks < min_checks) {
    const CnfInstance f = random_instance(eng, 2, 6, 14);
    const ReduceResult red = semicomplete_reduce(f);
    if (red.reduced.m == 0) continue;
    ++instances;
    const std::int64_t significant =
        static_cast<std::int64_t>(occurring_vars(red.reduced).size()) -
        static_cast<std::int64_t>(insignificant_vars(red.reduced).size());
    const std::int64_t opt = brute_force_opt(red.reduced).value;
    for (std::int64_t k = 1; k <= 2; ++k) {
      if (significant <= 3 * k - 2) continue;
      if (4 * opt < 3 * red.reduced.m + k)
        return fail(name, "violation with " + std::to_string(significant) + " significant variables at k=" +
                              std::to_string(k));
      ++checks;
    }
  }
  return pass(name, std::to_string(checks) + " bound checks over " + std::to_string(instances) + " reduced instances");
}

CheckResult check_kernel_bound(int instances, std::uint64_t seed) {
  const std::string name = "kernel-bound";
  std::mt19937_64 eng(seed);
  int kernels = 0;
  for (int i = 0; i < instances; ++i) {
    const CnfInstance f = random_instance(eng, 2, 6, 12);
    const std::int64_t k = 1 + (i % 3);
    const bool expected = meets_tlb(brute_force_opt(f).value, 2, f.m, k);
    const Kernel2Result res = kernelize_2sat(f, k);
    switch (res.kind) {
      case Kernel2Kind::decided_yes:
        if (!expected) return fail(name, "decided YES against the oracle at instance " + std::to_string(i));
        break;
      case Kernel2Kind::solved:
        if (!res.verdict || *res.verdict != expected)
          return fail(name, "solved verdict diverged at instance " + std::to_string(i));
        break;
      case Kernel2Kind::kernel: {
        if (res.kernel.n > 3 * k - 1)
          return fail(name, "kernel has " + std::to_string(res.kernel.n) + " variables at k=" + std::to_string(k));
        const bool kernel_verdict = meets_tlb(brute_force_opt(res.kernel).value, 2, res.kernel.m, k);
        if (kernel_verdict != expected)
          return fail(name, "kernel verdict diverged at instance " + std::to_string(i) + ", k=" + std::to_string(k));
        ++kernels;
        break;
      }
    }
  }
  return pass(name, std::to_string(kernels) + " kernels within 3k-1 variables and verdict-equivalent");
}

CheckResult check_constructive_bounds(int instances, std::uint64_t seed) {
  const std::string name = "constructive-bounds";
  std::mt19937_64 eng(seed);
  for (int i = 0; i < instances; ++i) {
    const int r = (i % 2 == 0) ? 2 : 3;
    const CnfInstance f = random_instance(eng, r, 8, 16);
    const Assignment avg = average_assignment(f);
    const std::int64_t scale = std::int64_t{1} << r;
    if (scale * sat_count(avg, f) < (scale - 1) * f.m)
      return fail(name, "average assignment missed the zero-mean bound at instance " + std::to_string(i));

    const CnfInstance f2 = random_instance(eng, 2, 8, 16);
    const ReduceResult red = semicomplete_reduce(f2);
    const StarPacking packing = greedy_star_packing(build_aux_graph(red.reduced));
    const SwitchAssignmentResult sw = derandomized_switch_assignment(red.reduced, packing);
    if (sat_count(sw.assignment, red.reduced) != sw.sat)
      return fail(name, "switch assignment misreports its satisfied count at instance " + std::to_string(i));
    if (4 * sw.sat < 3 * red.reduced.m + packing.leaf_count)
      return fail(name, "switch assignment missed (3m + t)/4 at instance " + std::to_string(i) + " (t=" +
                            std::to_string(packing.leaf_count) + ")");
  }
  return pass(name, std::to_string(instances) + " of each constructive bound");
}

CheckResult check_sample_space_and_witness(std::uint64_t seed) {
  const std::string name = "sample-space";

  // Exhaustive character sums over the spaces as served (cube fallback for
  // small n) and over the forced parity-check construction.
  auto char_sums_vanish = [](const SampleSpace& sp, int max_order) {
    const int n = sp.n();
    std::vector<std::uint32_t> point_masks(sp.size());
    for (std::uint64_t s = 0; s < sp.size(); ++s) {
      std::uint32_t mask = 0;
      for (int j = 1; j <= n; ++j) {
        if (sp.sign(s, j) < 0) mask |= 1u << (j - 1);
      }
      point_masks[s] = mask;
    }
    for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
      if (std::popcount(subset) > max_order) continue;
      std::int64_t sum = 0;
      for (std::uint32_t mask : point_masks) sum += (std::popcount(mask & subset) & 1) ? -1 : +1;
      if (sum != 0) return false;
    }
    return true;
  };

  for (int n = 1; n <= 10; ++n) {
    const SampleSpace sp = kwise_sample_space(n, 8);
    if (!char_sums_vanish(sp, 8)) return fail(name, "nonzero character sum at n=" + std::to_string(n) + ", t=8");
  }
  for (int t : {4, 8}) {
    const SampleSpace sp = kwise_sample_space(10, t, /*cube_fallback=*/false);
    if (sp.is_cube()) return fail(name, "forced construction returned the cube");
    if (!char_sums_vanish(sp, t))
      return fail(name, "nonzero character sum in the parity-check space at t=" + std::to_string(t));
  }

  // Threshold-route witnesses on instances small enough to cross-check.
  std::mt19937_64 eng(seed);
  int witnesses = 0;
  for (int i = 0; i < 30; ++i) {
    const CnfInstance base = random_instance(eng, 2, 5, 8);
    const MultilinearPolynomial x = instance_to_polynomial(base);
    if (x.is_zero()) continue;
    // duplicate until sum c_I^2 >= 4 * 8^4 = 16384, which forces k=1 YES
    std::int64_t factor = 1;
    while (l2_norm_sq(x) * factor * factor < 16384) ++factor;
    const CnfInstance f = duplicate_clauses(base, factor);
    const Decision d = decide_tlb(f, 1);
    if (!d.yes || d.route != DecisionRoute::threshold)
      return fail(name, "duplicated instance " + std::to_string(i) + " did not take the threshold route");
    const Assignment w = find_witness(f, 1, d);
    if (4 * sat_count(w, f) < 3 * f.m + 1)
      return fail(name, "threshold witness misses the bound at instance " + std::to_string(i));
    if (!meets_tlb(brute_force_opt(f).value, 2, f.m, 1))
      return fail(name, "oracle rejects a threshold YES at instance " + std::to_string(i));
    ++witnesses;
  }

  // One instance wide enough that the witness scan runs on the parity-check
  // space rather than the cube: eleven disjoint all-negative pairs, each
  // heavy enough to cross the threshold.
  {
    std::vector<std::vector<Literal>> raw;
    for (int p = 0; p < 11; ++p) {
      for (int copy = 0; copy < 23; ++copy) raw.push_back({neg(2 * p + 1), neg(2 * p + 2)});
    }
    const CnfInstance f = validate_instance(raw, 2, 22);
    const Decision d = decide_tlb(f, 1);
    if (!d.yes || d.route != DecisionRoute::threshold) return fail(name, "wide instance missed the threshold route");
    const Assignment w = find_witness(f, 1, d);
    if (4 * sat_count(w, f) < 3 * f.m + 1) return fail(name, "wide-instance witness misses the bound");
    if (!meets_tlb(brute_force_opt(f).value, 2, f.m, 1)) return fail(name, "oracle rejects the wide instance");
  }
  return pass(name, "character sums exact; " + std::to_string(witnesses) + "+1 threshold witnesses verified");
}

CheckResult check_format_roundtrip(int instances, std::uint64_t seed) {
  const std::string name = "format-roundtrip";
  std::mt19937_64 eng(seed);
  for (int i = 0; i < instances; ++i) {
    const int r = 2 + (i % 3);
    const CnfInstance f = random_instance(eng, r, 8, 10);
    if (parse_dimacs(to_dimacs(f)) != f) return fail(name, "DIMACS round-trip changed instance " + std::to_string(i));

    const MultilinearPolynomial x = instance_to_polynomial(f);
    if (x.is_zero()) continue;
    const Lin2System sys = polynomial_to_lin2(x, 1).system;
    if (parse_lin2(to_lin2(sys)) != sys) return fail(name, "lin2 round-trip changed system " + std::to_string(i));
    const std::string text = to_lin2(sys);
    if (to_lin2(parse_lin2(text)) != text) return fail(name, "lin2 text is not a serialization fixed point");
  }
  return pass(name, std::to_string(instances) + " round-trips bit-exact");
}

std::vector<CheckResult> run_selfcheck() {
  std::vector<CheckResult> results;
  results.push_back(check_value_identity(60, {2, 3}, 8, 12, 101));
  results.push_back(check_second_moment(30, 10, 102));
  results.push_back(check_decision_soundness(80, 103));
  results.push_back(check_kernel_chain(40, 104));
  results.push_back(check_gadget_exactness());
  results.push_back(check_significant_threshold(2000, 105));
  results.push_back(check_kernel_bound(80, 106));
  results.push_back(check_constructive_bounds(40, 107));
  results.push_back(check_sample_space_and_witness(108));
  results.push_back(check_format_roundtrip(25, 109));
  return results;
}

}  // namespace mrsat
