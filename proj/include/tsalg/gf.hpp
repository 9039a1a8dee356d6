#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "tsalg/modp.hpp"

namespace tsalg {

// Dense univariate polynomial over F_p, constant coefficient first.
using UPoly = std::vector<Coeff>;

void trim(UPoly& a);
UPoly upoly_mul(const UPoly& a, const UPoly& b, Coeff p);
UPoly upoly_sub(const UPoly& a, const UPoly& b, Coeff p);
UPoly upoly_mod(UPoly a, const UPoly& m, Coeff p);
UPoly upoly_gcd(UPoly a, UPoly b, Coeff p);
UPoly upoly_powmod(UPoly base, std::uint64_t e, const UPoly& m, Coeff p);
bool is_irreducible(const UPoly& f, Coeff p);
// first monic irreducible of degree k in lexicographic order of coefficients
UPoly find_irreducible(Coeff p, std::size_t k);

// GF(p^k) as F_p[t]/(m(t)).
class ExtField {
 public:
  using Elem = std::vector<Coeff>;

  ExtField(Coeff p, std::size_t k);

  Coeff prime() const { return p_; }
  std::size_t degree() const { return k_; }
  const UPoly& modulus() const { return modulus_; }

  Elem zero() const { return Elem(k_, 0); }
  Elem from_base(Coeff c) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  bool is_zero(const Elem& a) const;
  Elem random(std::mt19937_64& rng) const;

 private:
  Coeff p_;
  std::size_t k_;
  UPoly modulus_;
};

}  // namespace tsalg
