#include "mrsat/lin2.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <tuple>

namespace mrsat {

Lin2System make_lin2_system(const std::vector<LinEquation>& raw, int n) {
  if (n < 0) throw BadParams("variable count must be nonnegative");
  // key: (degree, vars, rhs) gives the canonical order
  std::map<std::tuple<size_t, std::vector<int>, int>, std::int64_t> merged;
  for (const LinEquation& eq : raw) {
    if (eq.vars.empty()) throw BadParams("equation has no variables");
    if (eq.rhs != 0 && eq.rhs != 1) throw BadParams("equation right-hand side must be 0 or 1");
    if (eq.weight < 1) throw BadParams("equation weight must be positive");
    std::vector<int> vars = eq.vars;
    std::sort(vars.begin(), vars.end());
    for (size_t i = 0; i < vars.size(); ++i) {
      if (vars[i] < 1 || vars[i] > n) throw VariableOutOfRange("equation variable outside 1..n");
      if (i > 0 && vars[i] == vars[i - 1]) throw BadParams("equation has a repeated variable");
    }
    merged[{vars.size(), std::move(vars), eq.rhs}] += eq.weight;
  }
  Lin2System sys;
  sys.n = n;
  for (auto& [key, weight] : merged) {
    sys.equations.push_back(LinEquation{std::get<1>(key), std::get<2>(key), weight});
    sys.total_weight += weight;
  }
  return sys;
}

BikernelResult polynomial_to_lin2(const MultilinearPolynomial& x, std::int64_t k) {
  if (x.is_zero()) throw EmptyPolynomial("cannot build a lin2 system from the zero polynomial");
  std::vector<LinEquation> eqs;
  eqs.reserve(x.terms().size());
  for (const auto& [key, coeff] : x.terms()) {
    LinEquation eq;
    eq.vars = key;
    eq.rhs = coeff > 0 ? 0 : 1;
    BigInt w = abs(coeff);
    if (w > std::numeric_limits<std::int64_t>::max())
      throw TooLarge("term coefficient exceeds the representable equation weight");
    eq.weight = static_cast<std::int64_t>(w);
    eqs.push_back(std::move(eq));
  }
  return BikernelResult{make_lin2_system(eqs, x.n()), k};
}

std::int64_t lin2_excess(const BitAssignment& z, const Lin2System& sys) {
  if (static_cast<int>(z.size()) != sys.n + 1) throw BadParams("assignment length must be n+1");
  std::int64_t excess = 0;
  for (const LinEquation& eq : sys.equations) {
    int parity = 0;
    for (int v : eq.vars) parity ^= (z[v] & 1);
    excess += (parity == eq.rhs) ? eq.weight : -eq.weight;
  }
  return excess;
}

GadgetResult lin2_to_cnf(const Lin2System& sys, int r, std::int64_t k) {
  if (r < 2 || r > 10) throw BadParams("clause width r must be in [2,10]");
  CnfInstance cnf;
  cnf.r = r;
  cnf.n = sys.n;
  int fresh = 0;
  for (const LinEquation& eq : sys.equations) {
    const int q = static_cast<int>(eq.vars.size());
    if (q > r) throw EquationTooWide("equation has " + std::to_string(q) + " variables, gadget width is " + std::to_string(r));
    // Pad to exactly r variables with the smallest indices not already used.
    std::vector<int> padded = eq.vars;
    for (int v = 1; static_cast<int>(padded.size()) < r; ++v) {
      if (v > sys.n + fresh) ++fresh;
      if (!std::count(eq.vars.begin(), eq.vars.end(), v)) padded.push_back(v);
    }
    std::sort(padded.begin(), padded.end());

    std::uint32_t eq_mask = 0;
    for (int j = 0; j < r; ++j) {
      if (std::count(eq.vars.begin(), eq.vars.end(), padded[j])) eq_mask |= 1u << j;
    }
    for (std::uint32_t d = 0; d < (1u << r); ++d) {
      // bit j of d is the pattern value of padded[j]; skip satisfying patterns
      if (static_cast<int>(std::popcount(d & eq_mask) & 1) == eq.rhs) continue;
      Clause c;
      c.lits.reserve(r);
      for (int j = 0; j < r; ++j) c.lits.push_back(Literal{padded[j], ((d >> j) & 1u) != 0});
      cnf.clauses[c] += eq.weight;
      cnf.m += eq.weight;
    }
  }
  cnf.n = sys.n + fresh;
  return GadgetResult{std::move(cnf), (std::int64_t{1} << (r - 1)) * k};
}

Lin2OptResult lin2_brute_force(const Lin2System& sys, int var_cap) {
  if (var_cap < 0 || var_cap > 62) throw BadParams("var_cap must be in [0,62]");
  if (sys.n > var_cap)
    throw TooLarge("system has " + std::to_string(sys.n) + " variables, exhaustive cap is " + std::to_string(var_cap));

  const int n = sys.n;
  // variable v maps to bit n-v so ascending codes are lexicographic (0 first)
  struct EqBits {
    std::uint64_t mask = 0;
    int rhs = 0;
    std::int64_t weight = 0;
  };
  std::vector<EqBits> bits;
  bits.reserve(sys.equations.size());
  for (const LinEquation& eq : sys.equations) {
    EqBits eb;
    eb.rhs = eq.rhs;
    eb.weight = eq.weight;
    for (int v : eq.vars) eb.mask |= std::uint64_t{1} << (n - v);
    bits.push_back(eb);
  }

  std::int64_t best = -1;
  std::uint64_t best_code = 0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    std::int64_t sat = 0;
    for (const EqBits& eb : bits) {
      if ((std::popcount(code & eb.mask) & 1) == eb.rhs) sat += eb.weight;
    }
    if (sat > best) {
      best = sat;
      best_code = code;
    }
  }
  BitAssignment z(static_cast<size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v) z[v] = (best_code >> (n - v)) & 1u;
  return Lin2OptResult{std::move(z), best};
}

}  // namespace mrsat
