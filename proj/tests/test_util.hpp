#pragma once

#include <map>
#include <random>
#include <vector>

#include "tsalg/poly.hpp"

namespace testutil {

using tsalg::Coeff;
using tsalg::Exponent;
using tsalg::SparsePoly;

inline SparsePoly random_poly(std::mt19937_64& rng, Coeff p, std::size_t nvars, int max_deg,
                              std::size_t max_terms) {
  std::uniform_int_distribution<std::size_t> nterms(0, max_terms);
  std::uniform_int_distribution<Coeff> coeff(1, p - 1);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<std::size_t> var(0, nvars ? nvars - 1 : 0);
  SparsePoly f(p, nvars);
  std::size_t k = nterms(rng);
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<Exponent> e(nvars, 0);
    int d = deg(rng);
    for (int i = 0; i < d && nvars; ++i) ++e[var(rng)];
    f += SparsePoly::monomial(p, e, coeff(rng));
  }
  return f;
}

// Independent term-map representation used as an oracle.
using TermMap = std::map<std::vector<int>, long>;

inline TermMap to_map(const SparsePoly& f) {
  TermMap m;
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    m[std::vector<int>(e.begin(), e.end())] = f.coeff(t);
  }
  return m;
}

inline TermMap naive_mul(const TermMap& a, const TermMap& b, long p) {
  TermMap r;
  for (auto& [ea, ca] : a)
    for (auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r[e] = (r[e] + ca * cb) % p;
    }
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

inline SparsePoly naive_pow(const SparsePoly& f, unsigned e) {
  SparsePoly r = SparsePoly::constant(f.prime(), f.nvars(), 1);
  for (unsigned i = 0; i < e; ++i) r = r * f;
  return r;
}

}  // namespace testutil
