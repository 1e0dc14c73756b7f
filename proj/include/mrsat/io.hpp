#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mrsat/formula.hpp"
#include "mrsat/lin2.hpp"

namespace mrsat {

// Malformed input; the message names the offending line.
struct ParseError : Error {
  using Error::Error;
};

// DIMACS CNF: optional 'c' comment lines, one 'p cnf <n> <m>' header, then
// zero-terminated clauses (multiplicities are expressed by repetition).  The
// clause width r is taken from the first clause unless overridden; empty
// instances default to r = 2.  Clause counts must match the header.
CnfInstance parse_dimacs(std::istream& in, std::optional<int> r_override = std::nullopt);
CnfInstance parse_dimacs(const std::string& text, std::optional<int> r_override = std::nullopt);

// Canonical serialization: comments, header, clauses in canonical order,
// each repeated by its multiplicity.  parse(serialize(f)) == f.
std::string to_dimacs(const CnfInstance& f, const std::vector<std::string>& comments = {});

// Lin2 format: optional 'c' comment lines, one 'p lin2 <n> <e>' header, then
// one equation per line: "<weight> <rhs> <v1> ... <vq> 0".
Lin2System parse_lin2(std::istream& in);
Lin2System parse_lin2(const std::string& text);

// Canonical serialization; round-trips bit-exactly through parse_lin2.
std::string to_lin2(const Lin2System& sys, const std::vector<std::string>& comments = {});

}  // namespace mrsat
