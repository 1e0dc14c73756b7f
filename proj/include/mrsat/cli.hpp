#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mrsat {

// Command-line front end.  args excludes the program name; instance data is
// read from --input or the given stream; reports go to out and diagnostics to
// err.  Returns 0 for YES/success, 1 for NO (or failed checks), 2 for errors.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace mrsat
