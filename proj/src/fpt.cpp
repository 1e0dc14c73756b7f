#include "mrsat/fpt.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "mrsat/gf2.hpp"

namespace mrsat {

namespace {

// Terms compiled to bit masks over the support (variable sup[j] maps to bit
// s-1-j, so ascending codes enumerate assignments lexicographically with +1
// first).  Coefficients stay exact: the int64 path is used only when the
// total absolute weight fits comfortably.
struct CompiledPoly {
  std::vector<std::pair<std::uint64_t, std::int64_t>> small;
  std::vector<std::pair<std::uint64_t, BigInt>> big;
  bool use_small = true;

  BigInt value(std::uint64_t code) const {
    if (use_small) {
      std::int64_t v = 0;
      for (const auto& [mask, c] : small) v += (std::popcount(code & mask) & 1) ? -c : c;
      return BigInt(v);
    }
    BigInt v = 0;
    for (const auto& [mask, c] : big) {
      if (std::popcount(code & mask) & 1) {
        v -= c;
      } else {
        v += c;
      }
    }
    return v;
  }
};

CompiledPoly compile(const MultilinearPolynomial& x, const std::vector<int>& sup) {
  const int s = static_cast<int>(sup.size());
  std::vector<int> bit_of(static_cast<size_t>(x.n()) + 1, -1);
  for (int j = 0; j < s; ++j) bit_of[sup[j]] = s - 1 - j;

  CompiledPoly cp;
  cp.use_small = weight_sum(x) < BigInt(std::int64_t{1} << 62);
  for (const auto& [key, coeff] : x.terms()) {
    std::uint64_t mask = 0;
    for (int v : key) mask |= std::uint64_t{1} << bit_of[v];
    if (cp.use_small) {
      cp.small.emplace_back(mask, static_cast<std::int64_t>(coeff));
    } else {
      cp.big.emplace_back(mask, coeff);
    }
  }
  return cp;
}

DecisionStats stats_of(const MultilinearPolynomial& x) {
  DecisionStats st;
  st.terms = term_count(x);
  st.l2 = l2_norm_sq(x);
  st.weight = weight_sum(x);
  st.support = static_cast<int>(support(x).size());
  return st;
}

BigInt threshold_value(int r, std::int64_t k) {
  return 4 * pow(BigInt(8), static_cast<unsigned>(2 * r)) * k * k;
}

Assignment assignment_from_code(std::uint64_t code, const std::vector<int>& sup, int n) {
  Assignment tau(n);
  const int s = static_cast<int>(sup.size());
  for (int j = 0; j < s; ++j) {
    if ((code >> (s - 1 - j)) & 1u) tau.set(sup[j], -1);
  }
  return tau;
}

SampleSpace make_cube(int n, int t) {
  if (n > 62) throw BadParams("cube enumeration supports at most 62 variables");
  std::vector<std::uint64_t> columns(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) columns[j] = std::uint64_t{1} << j;
  return SampleSpace(n, t, true, n, std::move(columns));
}

}  // namespace

Decision decide_tlb(const CnfInstance& f, std::int64_t k, const DecideOptions& opts) {
  if (k < 0) throw BadParams("k must be nonnegative");
  const MultilinearPolynomial x = instance_to_polynomial(f);

  Decision d;
  d.stats = stats_of(x);
  if (x.is_zero()) {
    d.route = DecisionRoute::zero_polynomial;
    d.yes = (k == 0);
    return d;
  }
  if (k == 0 || d.stats.l2 >= threshold_value(f.r, k)) {
    // sup X >= sqrt(sum c_I^2) / (2 * 8^r) >= k, by the fourth-moment bound
    d.route = DecisionRoute::threshold;
    d.yes = true;
    return d;
  }

  d.route = DecisionRoute::search;
  const std::vector<int> sup = support(x);
  const int s = static_cast<int>(sup.size());
  if (s > opts.search_cap)
    throw SearchTooLarge("polynomial support has " + std::to_string(s) + " variables, search cap is " +
                         std::to_string(opts.search_cap));

  const CompiledPoly cp = compile(x, sup);
  BigInt best = cp.value(0);
  std::uint64_t best_code = 0;
  for (std::uint64_t code = 1; code < (std::uint64_t{1} << s); ++code) {
    BigInt v = cp.value(code);
    if (v > best) {
      best = v;
      best_code = code;
    }
  }
  d.yes = (best >= k);
  if (d.yes) d.witness = assignment_from_code(best_code, sup, f.n);
  return d;
}

Assignment find_witness(const CnfInstance& f, std::int64_t k, const Decision& d, const DecideOptions& opts) {
  if (!d.yes) throw Error("find_witness requires a YES decision");
  switch (d.route) {
    case DecisionRoute::zero_polynomial:
      // X == 0 and k == 0: every assignment meets the bound exactly.
      return Assignment(f.n);
    case DecisionRoute::search:
      if (!d.witness) throw Error("search decision carries no recorded maximizer");
      return *d.witness;
    case DecisionRoute::threshold:
      break;
  }

  const MultilinearPolynomial x = instance_to_polynomial(f);
  const std::vector<int> sup = support(x);
  const int s = static_cast<int>(sup.size());
  const int t = 4 * f.r;

  SampleSpace space = [&] {
    if (t <= 16) return kwise_sample_space(s, t);
    // 4r-wise constructions are only tabled up to t = 16; beyond that fall
    // back to the full cube while it is enumerable.
    if (s <= opts.search_cap) return make_cube(s, t);
    throw SearchTooLarge("threshold witness needs " + std::to_string(t) + "-wise independence over " +
                         std::to_string(s) + " variables");
  }();

  const CompiledPoly cp = compile(x, sup);
  for (std::uint64_t seed = 0; seed < space.size(); ++seed) {
    std::uint64_t code = 0;
    for (int j = 0; j < s; ++j) {
      if (space.sign(seed, j + 1) < 0) code |= std::uint64_t{1} << (s - 1 - j);
    }
    if (cp.value(code) >= k) return assignment_from_code(code, sup, f.n);
  }
  // Unreachable when the threshold fired: the scanned space preserves the
  // first, second and fourth moments of X, so it contains a point >= k.
  throw WitnessSearchExhausted("no sample-space point reached the requested excess");
}

Assignment average_assignment(const CnfInstance& f) {
  const MultilinearPolynomial x = instance_to_polynomial(f);
  // A term becomes fully fixed when its largest variable is assigned, so
  // grouping by that variable lets each greedy step read its exact
  // conditional-mean contribution.
  std::vector<std::vector<const std::pair<const TermKey, BigInt>*>> by_max(static_cast<size_t>(f.n) + 1);
  for (const auto& term : x.terms()) by_max[term.first.back()].push_back(&term);

  Assignment tau(f.n);
  for (int v = 1; v <= f.n; ++v) {
    BigInt delta = 0;
    for (const auto* term : by_max[v]) {
      int sign = 1;
      for (size_t i = 0; i + 1 < term->first.size(); ++i) sign *= tau[term->first[i]];
      if (sign > 0) {
        delta += term->second;
      } else {
        delta -= term->second;
      }
    }
    tau.set(v, delta >= 0 ? +1 : -1);  // ties resolve to +1
  }
  return tau;
}

int SampleSpace::sign(std::uint64_t seed, int coord) const {
  return (std::popcount(seed & columns_.at(static_cast<size_t>(coord) - 1)) & 1) ? -1 : +1;
}

SampleSpace kwise_sample_space(int n, int t, bool cube_fallback) {
  if (n < 1) throw BadParams("sample space needs n >= 1");
  if (t < 2 || t > 16 || t % 2 != 0) throw BadParams("independence order t must be even and in [2,16]");

  int degree = 1;
  while ((1 << degree) < n + 1) ++degree;
  const int u = t / 2;
  const int bits = 1 + u * degree;

  if (cube_fallback && n <= bits) return make_cube(n, t);
  if (bits > 62) throw BadParams("sample space seed exceeds 62 bits");

  std::vector<std::uint64_t> columns(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    // column (1, a, a^3, ..., a^{t-1}) for the field element a encoding i
    const std::uint32_t a = static_cast<std::uint32_t>(i);
    const std::uint32_t a_sq = gf2_mul(a, a, degree);
    std::uint64_t col = 1;
    std::uint32_t e = a;
    for (int j = 0; j < u; ++j) {
      if (j > 0) e = gf2_mul(e, a_sq, degree);
      col |= static_cast<std::uint64_t>(e) << (1 + j * degree);
    }
    columns[static_cast<size_t>(i) - 1] = col;
  }
  return SampleSpace(n, t, false, bits, std::move(columns));
}

}  // namespace mrsat
