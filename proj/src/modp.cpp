#include "tsalg/modp.hpp"

#include "tsalg/error.hpp"

namespace tsalg {

Coeff mod_pow(Coeff a, std::uint64_t e, Coeff p) {
  std::uint64_t r = 1 % p, b = a % p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<Coeff>(r);
}

Coeff mod_inv(Coeff a, Coeff p) {
  if (a % p == 0) throw Error(ErrorCode::BadParams, "inverse of zero mod " + std::to_string(p));
  return mod_pow(a, p - 2, p);
}

Coeff to_residue(std::int64_t v, Coeff p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<Coeff>(r < 0 ? r + p : r);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadTable: return "BadTable";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::NotPPower: return "NotPPower";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::WrongOrder: return "WrongOrder";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::PointCheckFailed: return "PointCheckFailed";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::CocycleUnsolved: return "CocycleUnsolved";
    case ErrorCode::ReconstructionFailed: return "ReconstructionFailed";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace tsalg
