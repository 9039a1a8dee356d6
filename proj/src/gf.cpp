#include "tsalg/gf.hpp"

#include "tsalg/error.hpp"

namespace tsalg {

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly upoly_mul(const UPoly& a, const UPoly& b, Coeff p) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod_add(r[i + j], mod_mul(a[i], b[j], p), p);
  trim(r);
  return r;
}

UPoly upoly_sub(const UPoly& a, const UPoly& b, Coeff p) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = mod_sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
  trim(r);
  return r;
}

UPoly upoly_mod(UPoly a, const UPoly& m, Coeff p) {
  trim(a);
  UPoly mm = m;
  trim(mm);
  if (mm.empty()) throw Error(ErrorCode::BadParams, "division by zero polynomial");
  Coeff lead_inv = mod_inv(mm.back(), p);
  while (a.size() >= mm.size()) {
    Coeff f = mod_mul(a.back(), lead_inv, p);
    std::size_t shift = a.size() - mm.size();
    for (std::size_t i = 0; i < mm.size(); ++i)
      a[shift + i] = mod_sub(a[shift + i], mod_mul(f, mm[i], p), p);
    trim(a);
  }
  return a;
}

UPoly upoly_gcd(UPoly a, UPoly b, Coeff p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = upoly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Coeff inv = mod_inv(a.back(), p);
    for (auto& c : a) c = mod_mul(c, inv, p);
  }
  return a;
}

UPoly upoly_powmod(UPoly base, std::uint64_t e, const UPoly& m, Coeff p) {
  UPoly r{1};
  r = upoly_mod(r, m, p);
  base = upoly_mod(base, m, p);
  while (e > 0) {
    if (e & 1) r = upoly_mod(upoly_mul(r, base, p), m, p);
    e >>= 1;
    if (e) base = upoly_mod(upoly_mul(base, base, p), m, p);
  }
  return r;
}

bool is_irreducible(const UPoly& f, Coeff p) {
  UPoly g = f;
  trim(g);
  if (g.size() < 2) return false;
  const std::size_t k = g.size() - 1;
  if (k == 1) return true;
  // x^{p^i} mod f by repeated p-th powers
  std::vector<UPoly> frob{upoly_mod(UPoly{0, 1}, g, p)};
  for (std::size_t i = 1; i <= k; ++i) frob.push_back(upoly_powmod(frob.back(), p, g, p));
  const UPoly x = upoly_mod(UPoly{0, 1}, g, p);
  if (upoly_sub(frob[k], x, p) != UPoly{}) return false;
  for (std::size_t q = 2; q <= k; ++q) {
    if (k % q || !is_prime(q)) continue;
    UPoly d = upoly_gcd(g, upoly_sub(frob[k / q], x, p), p);
    if (d.size() != 1) return false;
  }
  return true;
}

UPoly find_irreducible(Coeff p, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::BadParams, "extension degree must be positive");
  UPoly f(k + 1, 0);
  f[k] = 1;
  while (true) {
    if (is_irreducible(f, p)) return f;
    std::size_t i = 0;
    while (i < k && ++f[i] == p) f[i++] = 0;
    if (i == k) throw Error(ErrorCode::BadParams, "no irreducible polynomial found");
  }
}

ExtField::ExtField(Coeff p, std::size_t k) : p_(p), k_(k), modulus_(find_irreducible(p, k)) {}

ExtField::Elem ExtField::from_base(Coeff c) const {
  Elem e(k_, 0);
  e[0] = c % p_;
  return e;
}

ExtField::Elem ExtField::add(const Elem& a, const Elem& b) const {
  Elem r(k_);
  for (std::size_t i = 0; i < k_; ++i) r[i] = mod_add(a[i], b[i], p_);
  return r;
}

ExtField::Elem ExtField::sub(const Elem& a, const Elem& b) const {
  Elem r(k_);
  for (std::size_t i = 0; i < k_; ++i) r[i] = mod_sub(a[i], b[i], p_);
  return r;
}

ExtField::Elem ExtField::mul(const Elem& a, const Elem& b) const {
  UPoly r = upoly_mod(upoly_mul(a, b, p_), modulus_, p_);
  r.resize(k_, 0);
  return r;
}

ExtField::Elem ExtField::inv(const Elem& a) const {
  if (is_zero(a)) throw Error(ErrorCode::BadParams, "inverse of zero in extension field");
  // a^{p^k - 2}
  std::uint64_t q = 1;
  for (std::size_t i = 0; i < k_; ++i) q *= p_;
  UPoly r = upoly_powmod(a, q - 2, modulus_, p_);
  r.resize(k_, 0);
  return r;
}

bool ExtField::is_zero(const Elem& a) const {
  for (auto c : a)
    if (c) return false;
  return true;
}

ExtField::Elem ExtField::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<Coeff> d(0, p_ - 1);
  Elem e(k_);
  for (auto& c : e) c = d(rng);
  return e;
}

}  // namespace tsalg
