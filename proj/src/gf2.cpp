#include "mrsat/gf2.hpp"

namespace mrsat {

std::uint32_t gf2_modulus(int degree) {
  // Standard primitive polynomials, indexed by degree.
  static constexpr std::uint32_t table[17] = {
      0,       0x3,    0x7,    0xB,    0x13,   0x25,   0x43,    0x83,
      0x11D,   0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443,  0x8003,
      0x1100B,
  };
  if (degree < 1 || degree > 16) throw BadParams("GF(2^m) supported for 1 <= m <= 16");
  return table[degree];
}

std::uint32_t gf2_mul(std::uint32_t a, std::uint32_t b, int degree) {
  const std::uint32_t mod = gf2_modulus(degree);
  const std::uint32_t top = std::uint32_t{1} << degree;
  std::uint32_t p = 0;
  while (b != 0) {
    if (b & 1u) p ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= mod;
  }
  return p;
}

}  // namespace mrsat
