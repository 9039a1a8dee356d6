#pragma once

#include <cstdint>

namespace tsalg {

using Coeff = std::uint32_t;

inline Coeff mod_add(Coeff a, Coeff b, Coeff p) {
  Coeff s = a + b;
  return s >= p ? s - p : s;
}

inline Coeff mod_sub(Coeff a, Coeff b, Coeff p) { return a >= b ? a - b : a + p - b; }

inline Coeff mod_neg(Coeff a, Coeff p) { return a == 0 ? 0 : p - a; }

inline Coeff mod_mul(Coeff a, Coeff b, Coeff p) {
  return static_cast<Coeff>(static_cast<std::uint64_t>(a) * b % p);
}

Coeff mod_pow(Coeff a, std::uint64_t e, Coeff p);

// a must be nonzero mod p
Coeff mod_inv(Coeff a, Coeff p);

Coeff to_residue(std::int64_t v, Coeff p);

bool is_prime(std::uint64_t n);

}  // namespace tsalg
