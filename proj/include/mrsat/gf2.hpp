#pragma once

#include <cstdint>

#include "mrsat/error.hpp"

namespace mrsat {

// Fixed primitive polynomial for GF(2^degree), degrees 1..16, as a bit mask
// including the leading term (e.g. degree 4 -> x^4 + x + 1 -> 0x13).
std::uint32_t gf2_modulus(int degree);

// Carry-less product of a and b reduced modulo the fixed polynomial.
std::uint32_t gf2_mul(std::uint32_t a, std::uint32_t b, int degree);

}  // namespace mrsat
