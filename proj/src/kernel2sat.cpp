#include "mrsat/kernel2sat.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <set>

#include "mrsat/fourier.hpp"

namespace mrsat {

namespace {

void require_2cnf(const CnfInstance& f, const char* op) {
  if (f.r != 2) throw WrongArity(std::string(op) + " requires a 2-CNF instance, got r = " + std::to_string(f.r));
}

Clause make_clause(Literal a, Literal b) {
  Clause c;
  if (b < a) std::swap(a, b);
  c.lits = {a, b};
  return c;
}

// Literal -> sorted set of partner literals over the distinct clauses of f.
std::map<Literal, std::set<Literal>> partner_index(const CnfInstance& f) {
  std::map<Literal, std::set<Literal>> partners;
  for (const auto& [clause, mult] : f.clauses) {
    partners[clause.lits[0]].insert(clause.lits[1]);
    partners[clause.lits[1]].insert(clause.lits[0]);
  }
  return partners;
}

// Smallest variable paired with both polarities of some other variable in
// the partner set, or 0.
int both_polarity_partner(const std::set<Literal>& set) {
  for (const Literal& l : set) {
    // sets are ordered (var, negated), so the positive literal comes first
    if (!l.negated && set.count(neg(l.var))) return l.var;
  }
  return 0;
}

// Occurrence counts of the four sign patterns over one variable pair
// (u < v); index bit 1 = u negated, bit 0 = v negated.
using PairCounts = std::array<std::int64_t, 4>;

std::map<std::pair<int, int>, PairCounts> pair_counts(const CnfInstance& f) {
  std::map<std::pair<int, int>, PairCounts> counts;
  for (const auto& [clause, mult] : f.clauses) {
    const Literal& a = clause.lits[0];
    const Literal& b = clause.lits[1];
    counts[{a.var, b.var}][(a.negated ? 2 : 0) | (b.negated ? 1 : 0)] += mult;
  }
  return counts;
}

}  // namespace

std::optional<SemicompleteBlock> find_semicomplete_block(const CnfInstance& f) {
  require_2cnf(f, "find_semicomplete_block");
  const auto partners = partner_index(f);
  for (const auto& [lit, set] : partners) {
    if (lit.negated) continue;  // handle each variable once, via its positive literal
    const auto neg_it = partners.find(neg(lit.var));
    if (neg_it == partners.end()) continue;
    const int a = both_polarity_partner(set);
    if (a == 0) continue;
    const int b = both_polarity_partner(neg_it->second);
    if (b == 0) continue;
    SemicompleteBlock block;
    block.x = lit.var;
    block.c1 = make_clause(pos(lit.var), pos(a));
    block.c2 = make_clause(pos(lit.var), neg(a));
    block.c3 = make_clause(neg(lit.var), pos(b));
    block.c4 = make_clause(neg(lit.var), neg(b));
    return block;
  }
  return std::nullopt;
}

ReduceResult semicomplete_reduce(const CnfInstance& f) {
  require_2cnf(f, "semicomplete_reduce");
  ReduceResult res;
  res.reduced = f;
  while (auto block = find_semicomplete_block(res.reduced)) {
    for (const Clause* c : {&block->c1, &block->c2, &block->c3, &block->c4}) {
      auto it = res.reduced.clauses.find(*c);
      assert(it != res.reduced.clauses.end());
      if (--it->second == 0) res.reduced.clauses.erase(it);
      --res.reduced.m;
    }
    ++res.blocks_removed;
  }
  return res;
}

std::int64_t AuxGraph::w(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = edge_weight.find({u, v});
  return it == edge_weight.end() ? 0 : it->second;
}

std::vector<int> AuxGraph::g0_neighbors(int x) const {
  std::vector<int> out;
  for (const auto& [key, weight] : edge_weight) {
    if (weight == 0) continue;
    if (key.first == x) out.push_back(key.second);
    if (key.second == x) out.push_back(key.first);
  }
  std::sort(out.begin(), out.end());
  return out;
}

AuxGraph build_aux_graph(const CnfInstance& f) {
  require_2cnf(f, "build_aux_graph");
  if (find_semicomplete_block(f)) throw NotReduced("instance still contains a semicomplete block");

  AuxGraph g;
  g.vertices = occurring_vars(f);
  std::map<Literal, std::int64_t> lit_count;
  for (const auto& [clause, mult] : f.clauses) {
    lit_count[clause.lits[0]] += mult;
    lit_count[clause.lits[1]] += mult;
  }
  auto count = [&lit_count](const Literal& l) {
    auto it = lit_count.find(l);
    return it == lit_count.end() ? std::int64_t{0} : it->second;
  };
  for (int x : g.vertices) g.vertex_weight[x] = count(pos(x)) - count(neg(x));
  for (const auto& [key, c] : pair_counts(f)) {
    // w(uv) = c(u~v) + c(~uv) - c(uv) - c(~u~v)
    g.edge_weight[key] = c[1] + c[2] - c[0] - c[3];
  }
  return g;
}

std::vector<int> insignificant_vars(const CnfInstance& f) {
  const AuxGraph g = build_aux_graph(f);
  std::vector<int> via_graph;
  for (int x : g.vertices) {
    if (g.w(x) == 0 && g.g0_isolated(x)) via_graph.push_back(x);
  }

  // Direct criterion: every pair pattern xy is matched by ~xy equally often.
  std::vector<int> via_counts;
  std::map<int, bool> balanced;
  for (int x : g.vertices) balanced[x] = true;
  for (const auto& [key, c] : pair_counts(f)) {
    if (c[0] != c[2] || c[1] != c[3]) balanced[key.first] = false;   // patterns differing in the first variable
    if (c[0] != c[1] || c[2] != c[3]) balanced[key.second] = false;  // ... and in the second
  }
  for (int x : g.vertices) {
    if (balanced[x]) via_counts.push_back(x);
  }

  if (via_graph != via_counts)
    throw Error("insignificance criteria disagree on a reduced instance");  // unreachable by the reduction lemma
  return via_graph;
}

StarPacking greedy_star_packing(const AuxGraph& g) {
  std::vector<std::pair<int, int>> order;  // (-degree, vertex)
  std::map<int, std::vector<int>> g0_adj;
  for (int x : g.vertices) g0_adj[x] = g.g0_neighbors(x);
  for (int x : g.vertices) order.emplace_back(-static_cast<int>(g0_adj[x].size()), x);
  std::sort(order.begin(), order.end());

  StarPacking packing;
  std::set<int> used;
  for (const auto& [neg_deg, center] : order) {
    if (used.count(center)) continue;
    Star star;
    star.center = center;
    for (int y : g0_adj[center]) {
      if (used.count(y)) continue;
      bool independent = true;
      for (int leaf : star.leaves) {
        if (g.w(y, leaf) != 0) {
          independent = false;
          break;
        }
      }
      if (independent) star.leaves.push_back(y);
    }
    if (star.leaves.empty()) continue;  // childless centers stay available as leaves
    used.insert(center);
    used.insert(star.leaves.begin(), star.leaves.end());
    packing.leaf_count += static_cast<std::int64_t>(star.leaves.size());
    packing.stars.push_back(std::move(star));
  }
  return packing;
}

SwitchAssignmentResult derandomized_switch_assignment(const CnfInstance& reduced, const StarPacking& packing) {
  const AuxGraph g = build_aux_graph(reduced);  // also rejects non-reduced input
  const int n = reduced.n;

  // Phase 1: switch leaves whose star edge is negative; star edges have
  // distinct leaf endpoints, so these switches are independent.
  std::set<int> pre_switched;
  for (const Star& star : packing.stars) {
    for (int y : star.leaves) {
      if (g.w(star.center, y) < 0) pre_switched.insert(y);
    }
  }
  auto sgn1 = [&pre_switched](int v) { return pre_switched.count(v) ? -1 : +1; };

  // Phase 2: decide each star's switch by conditional expectations over the
  // remaining uniform star switches.  Undecided contributions average to
  // zero, so each step compares the decided part only; the packed weight
  // never drops below the all-positive star-edge total, which is >= t.
  std::map<int, int> star_of;
  std::vector<std::vector<int>> members(packing.stars.size());
  for (size_t i = 0; i < packing.stars.size(); ++i) {
    members[i].push_back(packing.stars[i].center);
    members[i].insert(members[i].end(), packing.stars[i].leaves.begin(), packing.stars[i].leaves.end());
    for (int v : members[i]) star_of[v] = static_cast<int>(i);
  }
  std::vector<int> flip(packing.stars.size(), 0);
  for (size_t i = 0; i < packing.stars.size(); ++i) {
    std::int64_t decided = 0;
    for (int a : members[i]) {
      decided += g.w(a) * sgn1(a);
      for (const auto& [key, weight] : g.edge_weight) {
        int b = 0;
        if (key.first == a) b = key.second;
        if (key.second == a) b = key.first;
        if (b == 0) continue;
        auto it = star_of.find(b);
        if (it == star_of.end() || static_cast<size_t>(it->second) >= i) continue;
        decided += weight * sgn1(a) * sgn1(b) * (flip[it->second] ? -1 : 1);
      }
    }
    flip[i] = decided >= 0 ? 0 : 1;  // ties keep the star unswitched
  }
  // Compose phase-1 and phase-2 switches (symmetric difference).
  std::set<int> switched = pre_switched;
  for (size_t i = 0; i < packing.stars.size(); ++i) {
    if (!flip[i]) continue;
    for (int v : members[i]) {
      if (!switched.insert(v).second) switched.erase(v);
    }
  }

  // Phase 3: on the switched instance, fix all star vertices to true and the
  // remaining variables greedily by exact conditional expectations of sat,
  // kept as integers scaled by 4.
  const CnfInstance fx = switch_vars(reduced, switched);
  std::vector<std::int8_t> value(static_cast<size_t>(n) + 1, 0);  // 0 = free
  for (const auto& [v, idx] : star_of) value[v] = +1;

  std::vector<std::vector<std::pair<const Clause*, std::int64_t>>> clauses_with(static_cast<size_t>(n) + 1);
  for (const auto& [clause, mult] : fx.clauses) {
    clauses_with[clause.lits[0].var].emplace_back(&clause, mult);
    clauses_with[clause.lits[1].var].emplace_back(&clause, mult);
  }
  // 4 * P(clause satisfied): factor 0 per true literal, 2 per false fixed
  // literal, 1 per free literal.
  auto q_scaled = [&value](const Clause& c, int var, int cand) {
    int prod = 1;
    for (const Literal& l : c.lits) {
      const int s = (l.var == var) ? cand : value[l.var];
      if (s == 0) continue;             // free: factor 1
      const bool is_true = l.negated ? s == -1 : s == +1;
      if (is_true) return std::int64_t{4};
      prod *= 2;
    }
    return std::int64_t{4 - prod};
  };
  for (int v = 1; v <= n; ++v) {
    if (value[v] != 0) continue;
    std::int64_t plus = 0, minus = 0;
    for (const auto& [clause, mult] : clauses_with[v]) {
      plus += mult * q_scaled(*clause, v, +1);
      minus += mult * q_scaled(*clause, v, -1);
    }
    value[v] = plus >= minus ? +1 : -1;  // ties resolve to +1
  }

  Assignment tau_switched(n);
  for (int v = 1; v <= n; ++v) tau_switched.set(v, value[v]);

  SwitchAssignmentResult res;
  res.leaf_count = packing.leaf_count;
  res.sat = sat_count(tau_switched, fx);
  // Undo the switches: sat is preserved exactly.
  res.assignment = tau_switched;
  for (int v : switched) res.assignment.set(v, -tau_switched[v]);
  assert(sat_count(res.assignment, reduced) == res.sat);
  return res;
}

Kernel2Result kernelize_2sat(const CnfInstance& f, std::int64_t k, int var_cap) {
  require_2cnf(f, "kernelize_2sat");
  if (k < 0) throw InvalidK("k must be nonnegative");

  Kernel2Result res;
  ReduceResult red = semicomplete_reduce(f);
  res.removed_clauses = f.m - red.reduced.m;

  const std::vector<int> insig = insignificant_vars(red.reduced);
  const std::vector<int> occ = occurring_vars(red.reduced);
  res.significant = static_cast<std::int64_t>(occ.size()) - static_cast<std::int64_t>(insig.size());

  if (k == 0 || res.significant > 3 * k - 2) {
    // sat(F^S) >= (3 m^S + k) / 4, and each removed block adds exactly 3.
    res.kind = Kernel2Kind::decided_yes;
    res.verdict = true;
    return res;
  }

  // Collapse every insignificant variable into one fresh variable (index
  // n+1 before compaction); reduced instances never put two insignificant
  // variables in one clause, so no clause degenerates.
  const std::set<int> insig_set(insig.begin(), insig.end());
  const int fresh = f.n + 1;
  CnfInstance merged;
  merged.r = 2;
  merged.n = insig.empty() ? f.n : fresh;
  merged.m = red.reduced.m;
  for (const auto& [clause, mult] : red.reduced.clauses) {
    Clause c = clause;
    for (Literal& l : c.lits) {
      if (insig_set.count(l.var)) l.var = fresh;
    }
    if (c.lits[1] < c.lits[0]) std::swap(c.lits[0], c.lits[1]);
    if (c.lits[0].var == c.lits[1].var) throw Error("two insignificant variables in one reduced clause");
    merged.clauses[c] += mult;
  }

  // Compact to consecutive indices so the kernel's size is k-bounded.
  const std::vector<int> kernel_vars = occurring_vars(merged);
  std::map<int, int> new_index;
  res.kernel_var_map.assign(kernel_vars.size() + 1, 0);
  for (size_t i = 0; i < kernel_vars.size(); ++i) {
    new_index[kernel_vars[i]] = static_cast<int>(i) + 1;
    res.kernel_var_map[i + 1] = kernel_vars[i] == fresh ? 0 : kernel_vars[i];
  }
  res.kernel.r = 2;
  res.kernel.n = static_cast<int>(kernel_vars.size());
  res.kernel.m = merged.m;
  for (const auto& [clause, mult] : merged.clauses) {
    Clause c = clause;
    for (Literal& l : c.lits) l.var = new_index[l.var];
    res.kernel.clauses[c] += mult;
  }

  const BigInt guard = pow(BigInt(8), static_cast<unsigned>(std::min<std::int64_t>(k, 40)));
  if (k <= 40 && BigInt(res.kernel.m) > guard) {
    // More than 8^k clauses on at most 3k-1 variables: solving outright is
    // cheaper than keeping the kernel (2^{3k-1} < m'' assignments).
    OptResult opt = brute_force_opt(res.kernel, std::max(var_cap, res.kernel.n));
    res.kind = Kernel2Kind::solved;
    res.optimum = opt.value + 3 * (res.removed_clauses / 4);
    res.verdict = 4 * *res.optimum >= 3 * f.m + k;
    return res;
  }

  res.kind = Kernel2Kind::kernel;
  return res;
}

}  // namespace mrsat
