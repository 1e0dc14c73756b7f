#include "mrsat/io.hpp"

#include <charconv>
#include <istream>
#include <sstream>

namespace mrsat {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::int64_t parse_int(const std::string& token, int line) {
  std::int64_t value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) fail(line, "expected an integer, got '" + token + "'");
  return value;
}

struct Tokenized {
  std::vector<std::pair<std::int64_t, int>> values;  // (value, source line)
  int header_line = 0;
  std::vector<std::int64_t> header;  // numbers after the format tag
};

// Shared scaffolding for both formats: skips comments, finds the single
// 'p <tag> ...' header, and collects all following integer tokens.
Tokenized tokenize(std::istream& in, const std::string& tag, size_t header_fields) {
  Tokenized out;
  std::string line_text;
  int line = 0;
  bool seen_header = false;
  while (std::getline(in, line_text)) {
    ++line;
    const size_t first = line_text.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;       // blank line
    if (line_text[first] == 'c') continue;          // comment line
    std::istringstream ls(line_text);
    std::string token;
    ls >> token;
    if (token == "p") {
      if (seen_header) fail(line, "duplicate header");
      std::string fmt;
      if (!(ls >> fmt) || fmt != tag) fail(line, "expected 'p " + tag + "' header");
      std::string field;
      while (ls >> field) out.header.push_back(parse_int(field, line));
      if (out.header.size() != header_fields)
        fail(line, "header needs " + std::to_string(header_fields) + " numeric fields");
      seen_header = true;
      out.header_line = line;
      continue;
    }
    if (!seen_header) fail(line, "clause data before the header");
    do {
      out.values.emplace_back(parse_int(token, line), line);
    } while (ls >> token);
  }
  if (!seen_header) fail(line == 0 ? 1 : line, "missing 'p " + tag + "' header");
  return out;
}

}  // namespace

CnfInstance parse_dimacs(std::istream& in, std::optional<int> r_override) {
  Tokenized tk = tokenize(in, "cnf", 2);
  const std::int64_t n = tk.header[0];
  const std::int64_t m = tk.header[1];
  if (n < 0 || n > 1'000'000'000) fail(tk.header_line, "variable count out of range");
  if (m < 0) fail(tk.header_line, "clause count out of range");

  std::vector<std::vector<Literal>> raw;
  std::vector<Literal> current;
  int clause_line = 0;
  for (const auto& [value, line] : tk.values) {
    if (value == 0) {
      if (current.empty()) fail(line, "empty clause");
      raw.push_back(current);
      current.clear();
      continue;
    }
    if (current.empty()) clause_line = line;
    const std::int64_t var = value < 0 ? -value : value;
    if (var > n) fail(line, "literal " + std::to_string(value) + " outside 1.." + std::to_string(n));
    current.push_back(Literal{static_cast<int>(var), value < 0});
  }
  if (!current.empty()) fail(clause_line, "unterminated clause");
  if (static_cast<std::int64_t>(raw.size()) != m)
    fail(tk.header_line, "header announces " + std::to_string(m) + " clauses, found " + std::to_string(raw.size()));

  int r = 2;
  if (r_override) {
    r = *r_override;
  } else if (!raw.empty()) {
    r = static_cast<int>(raw.front().size());
  }
  return validate_instance(raw, r, static_cast<int>(n));
}

CnfInstance parse_dimacs(const std::string& text, std::optional<int> r_override) {
  std::istringstream in(text);
  return parse_dimacs(in, r_override);
}

std::string to_dimacs(const CnfInstance& f, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const std::string& c : comments) out << "c " << c << '\n';
  out << "p cnf " << f.n << ' ' << f.m << '\n';
  for (const auto& [clause, mult] : f.clauses) {
    std::ostringstream line;
    for (const Literal& l : clause.lits) line << (l.negated ? -l.var : l.var) << ' ';
    line << "0\n";
    for (std::int64_t i = 0; i < mult; ++i) out << line.str();
  }
  return out.str();
}

Lin2System parse_lin2(std::istream& in) {
  Tokenized tk = tokenize(in, "lin2", 2);
  const std::int64_t n = tk.header[0];
  const std::int64_t e = tk.header[1];
  if (n < 0 || n > 1'000'000'000) fail(tk.header_line, "variable count out of range");
  if (e < 0) fail(tk.header_line, "equation count out of range");

  std::vector<LinEquation> raw;
  size_t pos = 0;
  const auto& vals = tk.values;
  while (pos < vals.size()) {
    const int line = vals[pos].second;
    if (pos + 2 >= vals.size()) fail(line, "truncated equation");
    LinEquation eq;
    const std::int64_t weight = vals[pos].first;
    const std::int64_t rhs = vals[pos + 1].first;
    if (weight < 1) fail(line, "equation weight must be positive");
    if (rhs != 0 && rhs != 1) fail(line, "equation right-hand side must be 0 or 1");
    eq.weight = weight;
    eq.rhs = static_cast<int>(rhs);
    pos += 2;
    while (true) {
      if (pos >= vals.size()) fail(line, "unterminated equation");
      const std::int64_t v = vals[pos].first;
      ++pos;
      if (v == 0) break;
      if (v < 1 || v > n) fail(vals[pos - 1].second, "variable " + std::to_string(v) + " outside 1.." + std::to_string(n));
      eq.vars.push_back(static_cast<int>(v));
    }
    if (eq.vars.empty()) fail(line, "equation has no variables");
    raw.push_back(std::move(eq));
  }
  if (static_cast<std::int64_t>(raw.size()) != e)
    fail(tk.header_line, "header announces " + std::to_string(e) + " equations, found " + std::to_string(raw.size()));
  return make_lin2_system(raw, static_cast<int>(n));
}

Lin2System parse_lin2(const std::string& text) {
  std::istringstream in(text);
  return parse_lin2(in);
}

std::string to_lin2(const Lin2System& sys, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const std::string& c : comments) out << "c " << c << '\n';
  out << "p lin2 " << sys.n << ' ' << sys.equations.size() << '\n';
  for (const LinEquation& eq : sys.equations) {
    out << eq.weight << ' ' << eq.rhs;
    for (int v : eq.vars) out << ' ' << v;
    out << " 0\n";
  }
  return out.str();
}

}  // namespace mrsat
