#pragma once

#include <stdexcept>
#include <string>

namespace mrsat {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied parameter (arity out of range, bad generator
// family, malformed sample-space request, ...).
struct BadParams : Error {
  using Error::Error;
};

}  // namespace mrsat
