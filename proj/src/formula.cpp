#include "mrsat/formula.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace mrsat {

CnfInstance validate_instance(const std::vector<std::vector<Literal>>& raw, int r, int n) {
  if (r < 2 || r > 10) throw BadParams("clause width r must be in [2,10], got " + std::to_string(r));
  if (n < 0) throw BadParams("variable count must be nonnegative");
  CnfInstance f;
  f.r = r;
  f.n = n;
  for (const auto& lits : raw) {
    std::map<int, bool> sign_by_var;
    for (const Literal& l : lits) {
      if (l.var < 1 || l.var > n)
        throw VariableOutOfRange("variable " + std::to_string(l.var) + " outside 1.." + std::to_string(n));
      auto [it, inserted] = sign_by_var.emplace(l.var, l.negated);
      if (!inserted && it->second != l.negated)
        throw ComplementaryPair("variable " + std::to_string(l.var) + " occurs with both polarities in one clause");
    }
    if (static_cast<int>(sign_by_var.size()) != r)
      throw ClauseSizeMismatch("clause has " + std::to_string(sign_by_var.size()) + " distinct variables, expected " +
                               std::to_string(r));
    Clause c;
    c.lits.reserve(sign_by_var.size());
    for (auto [var, negated] : sign_by_var) c.lits.push_back(Literal{var, negated});
    ++f.clauses[c];
    ++f.m;
  }
  return f;
}

std::int64_t sat_count(const Assignment& tau, const CnfInstance& f) {
  std::int64_t total = 0;
  for (const auto& [clause, mult] : f.clauses) {
    for (const Literal& l : clause.lits) {
      if (literal_true(l, tau)) {
        total += mult;
        break;
      }
    }
  }
  return total;
}

namespace {

// Bit layout used by exhaustive search: variable v maps to bit n-v, so
// ascending codes enumerate assignments in lexicographic order with +1
// before -1 (code bit 1 means -1).
struct ClauseBits {
  std::uint64_t mask = 0;        // bits of the clause variables
  std::uint64_t falsifying = 0;  // unique code pattern falsifying the clause
  std::int64_t mult = 0;
};

Assignment decode(std::uint64_t code, int n) {
  Assignment tau(n);
  for (int v = 1; v <= n; ++v) {
    if ((code >> (n - v)) & 1u) tau.set(v, -1);
  }
  return tau;
}

}  // namespace

OptResult brute_force_opt(const CnfInstance& f, int var_cap, int threads) {
  if (var_cap < 0 || var_cap > 62) throw BadParams("var_cap must be in [0,62]");
  if (f.n > var_cap)
    throw TooLarge("instance has " + std::to_string(f.n) + " variables, exhaustive cap is " + std::to_string(var_cap));

  const int n = f.n;
  std::vector<ClauseBits> bits;
  bits.reserve(f.clauses.size());
  for (const auto& [clause, mult] : f.clauses) {
    ClauseBits cb;
    cb.mult = mult;
    for (const Literal& l : clause.lits) {
      const std::uint64_t b = std::uint64_t{1} << (n - l.var);
      cb.mask |= b;
      // A positive literal is false exactly when its bit is set (-1).
      if (!l.negated) cb.falsifying |= b;
    }
    bits.push_back(cb);
  }

  const std::uint64_t count = std::uint64_t{1} << n;
  auto scan = [&](std::uint64_t lo, std::uint64_t hi) {
    std::int64_t best = -1;
    std::uint64_t best_code = lo;
    for (std::uint64_t code = lo; code < hi; ++code) {
      std::int64_t sat = f.m;
      for (const ClauseBits& cb : bits) {
        if ((code & cb.mask) == cb.falsifying) sat -= cb.mult;
      }
      if (sat > best) {
        best = sat;
        best_code = code;
      }
    }
    return std::pair<std::int64_t, std::uint64_t>{best, best_code};
  };

  threads = std::max(1, std::min({threads, 64, static_cast<int>(count)}));
  std::pair<std::int64_t, std::uint64_t> best{-1, 0};
  if (threads == 1 || n < 12) {
    best = scan(0, count);
  } else {
    std::vector<std::future<std::pair<std::int64_t, std::uint64_t>>> parts;
    const std::uint64_t chunk = count / threads;
    for (int i = 0; i < threads; ++i) {
      const std::uint64_t lo = chunk * i;
      const std::uint64_t hi = (i + 1 == threads) ? count : lo + chunk;
      parts.push_back(std::async(std::launch::async, scan, lo, hi));
    }
    // Chunks are merged left to right, so the earliest (lexicographically
    // smallest) maximizer wins ties.
    for (auto& p : parts) {
      auto r = p.get();
      if (r.first > best.first) best = r;
    }
  }
  return OptResult{decode(best.second, n), best.first};
}

CnfInstance switch_vars(const CnfInstance& f, const std::set<int>& xs) {
  CnfInstance out;
  out.r = f.r;
  out.n = f.n;
  out.m = f.m;
  for (const auto& [clause, mult] : f.clauses) {
    Clause c = clause;
    for (Literal& l : c.lits) {
      if (xs.count(l.var)) l.negated = !l.negated;
    }
    out.clauses[c] += mult;
  }
  return out;
}

std::vector<int> occurring_vars(const CnfInstance& f) {
  std::set<int> vars;
  for (const auto& [clause, mult] : f.clauses) {
    for (const Literal& l : clause.lits) vars.insert(l.var);
  }
  return std::vector<int>(vars.begin(), vars.end());
}

}  // namespace mrsat
