#include "mrsat/fourier.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mrsat {

void MultilinearPolynomial::add_term(const TermKey& key, const BigInt& coeff) {
  if (key.empty()) throw BadParams("terms must be nonempty");
  if (static_cast<int>(key.size()) > r_) throw BadParams("term degree exceeds r");
  for (size_t i = 0; i < key.size(); ++i) {
    if (key[i] < 1 || key[i] > n_) throw VariableOutOfRange("term variable outside 1..n");
    if (i > 0 && key[i] <= key[i - 1]) throw BadParams("term variables must be strictly increasing");
  }
  if (coeff == 0) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

namespace {

// Adds the expansion of w * (1 - prod (1 + eps_i x_i)) for one clause.
void add_clause_expansion(MultilinearPolynomial& p, const Clause& c, std::int64_t w) {
  const int q = static_cast<int>(c.lits.size());
  TermKey key;
  key.reserve(q);
  for (unsigned subset = 1; subset < (1u << q); ++subset) {
    key.clear();
    int positives = 0;
    for (int j = 0; j < q; ++j) {
      if (subset & (1u << j)) {
        key.push_back(c.lits[j].var);
        if (!c.lits[j].negated) ++positives;
      }
    }
    // -prod eps_i = -(-1)^positives
    const int sign = (positives % 2 == 0) ? -1 : +1;
    p.add_term(key, BigInt(sign) * w);
  }
}

}  // namespace

MultilinearPolynomial clause_to_polynomial(const Clause& c, int n) {
  MultilinearPolynomial p(static_cast<int>(c.lits.size()), n);
  add_clause_expansion(p, c, 1);
  return p;
}

MultilinearPolynomial csp_constraint_to_polynomial(const CspConstraint& f, int n) {
  if (f.scope.empty()) throw EmptyScope("constraint scope is empty");
  const int q = static_cast<int>(f.scope.size());
  if (q > 10) throw BadParams("constraint scope wider than 10");
  std::set<int> distinct(f.scope.begin(), f.scope.end());
  if (static_cast<int>(distinct.size()) != q) throw BadParams("constraint scope has repeated variables");
  for (int v : f.scope) {
    if (v < 1 || v > n) throw VariableOutOfRange("scope variable outside 1..n");
  }

  MultilinearPolynomial p(q, n);
  std::vector<std::pair<int, int>> pos_by_var;  // (variable, scope position), sorted
  for (int j = 0; j < q; ++j) pos_by_var.emplace_back(f.scope[j], j);
  std::sort(pos_by_var.begin(), pos_by_var.end());

  TermKey key;
  for (const auto& v : f.satisfying) {
    if (static_cast<int>(v.size()) != q) throw BadParams("satisfying vector length differs from scope size");
    for (std::int8_t s : v) {
      if (s != 1 && s != -1) throw BadParams("satisfying vectors must contain only +1/-1");
    }
    for (unsigned subset = 1; subset < (1u << q); ++subset) {
      key.clear();
      int sign = 1;
      for (int j = 0; j < q; ++j) {
        if (subset & (1u << j)) {
          key.push_back(pos_by_var[j].first);
          sign *= v[pos_by_var[j].second];
        }
      }
      p.add_term(key, sign);
    }
  }
  return p;
}

MultilinearPolynomial instance_to_polynomial(const CnfInstance& f) {
  MultilinearPolynomial p(f.r, f.n);
  for (const auto& [clause, mult] : f.clauses) add_clause_expansion(p, clause, mult);
  return p;
}

BigInt evaluate(const MultilinearPolynomial& x, const Assignment& tau) {
  BigInt total = 0;
  for (const auto& [key, coeff] : x.terms()) {
    int sign = 1;
    for (int v : key) sign *= tau[v];
    if (sign > 0) {
      total += coeff;
    } else {
      total -= coeff;
    }
  }
  return total;
}

BigInt l2_norm_sq(const MultilinearPolynomial& x) {
  BigInt total = 0;
  for (const auto& [key, coeff] : x.terms()) total += coeff * coeff;
  return total;
}

BigInt weight_sum(const MultilinearPolynomial& x) {
  BigInt total = 0;
  for (const auto& [key, coeff] : x.terms()) total += abs(coeff);
  return total;
}

std::size_t term_count(const MultilinearPolynomial& x) { return x.terms().size(); }

std::vector<int> support(const MultilinearPolynomial& x) {
  std::set<int> vars;
  for (const auto& [key, coeff] : x.terms()) vars.insert(key.begin(), key.end());
  return std::vector<int>(vars.begin(), vars.end());
}

std::string to_text(const MultilinearPolynomial& x) {
  std::ostringstream out;
  for (const auto& [key, coeff] : x.terms()) {
    out << coeff.str();
    for (int v : key) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

}  // namespace mrsat
