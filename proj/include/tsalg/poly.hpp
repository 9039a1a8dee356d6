#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsalg/modp.hpp"

namespace tsalg {

namespace detail {
struct PolyAccess;
}

// Total-degree guard applied by mul and pow. Process-wide.
void set_degree_cap(int cap);
int degree_cap();

using Exponent = std::uint8_t;

// Sparse polynomial over F_p. Terms are stored in descending graded-lex order
// with nonzero coefficients only, so equal polynomials compare equal bytewise.
class SparsePoly {
 public:
  SparsePoly() = default;
  SparsePoly(Coeff p, std::size_t nvars);

  static SparsePoly constant(Coeff p, std::size_t nvars, Coeff c);
  static SparsePoly variable(Coeff p, std::size_t nvars, std::size_t i);
  static SparsePoly monomial(Coeff p, std::span<const Exponent> exps, Coeff c);

  Coeff prime() const { return p_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const;
  Coeff constant_term() const;

  Coeff coeff(std::size_t term) const { return coeffs_[term]; }
  std::span<const Exponent> exponents(std::size_t term) const {
    return {exps_.data() + term * nvars_, nvars_};
  }
  Coeff coeff_of(std::span<const Exponent> exps) const;

  // -1 for the zero polynomial
  int total_degree() const;
  int degree_in(std::size_t var) const;
  bool mentions(std::size_t var) const { return degree_in(var) > 0; }

  SparsePoly operator-() const;
  SparsePoly scaled(Coeff c) const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const SparsePoly& o);
  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);

  bool operator==(const SparsePoly&) const = default;

  // Canonical text: "c*x<i>^<e>*..." terms joined by " + ", "0" for zero.
  std::string to_text(std::string_view prefix = "x") const;
  static SparsePoly from_text(std::string_view text, Coeff p, std::size_t nvars,
                              std::string_view prefix = "x");

 private:
  friend struct detail::PolyAccess;

  Coeff p_ = 2;
  std::uint32_t nvars_ = 0;
  std::vector<Exponent> exps_;
  std::vector<Coeff> coeffs_;
};

// Hash accumulator for unsorted term streams; finish() drains in canonical order.
class TermAccumulator {
 public:
  TermAccumulator(Coeff p, std::size_t nvars, std::size_t expected = 16);

  void add(const Exponent* exps, Coeff c);
  void add(const SparsePoly& f, Coeff scale = 1);
  SparsePoly finish();

 private:
  std::uint64_t hash(const Exponent* e) const;
  void rehash(std::size_t capacity);

  Coeff p_;
  std::size_t nvars_;
  std::vector<Exponent> exps_;
  std::vector<Coeff> coeffs_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
};

SparsePoly pow(const SparsePoly& f, std::uint64_t e);
// f^p: exponents scaled by p, coefficients unchanged
SparsePoly frobenius(const SparsePoly& f);
SparsePoly derivative(const SparsePoly& f, std::size_t var);
Coeff evaluate(const SparsePoly& f, std::span<const Coeff> point);
// Same polynomial in a ring with new_nvars variables, variable i renamed to i + offset.
SparsePoly shift_vars(const SparsePoly& f, std::size_t new_nvars, std::size_t offset);

class Substitution {
 public:
  Substitution(std::vector<SparsePoly> images, Coeff p, std::size_t target_nvars);
  static Substitution identity(Coeff p, std::size_t nvars);

  std::size_t arity() const { return images_.size(); }
  std::size_t target_nvars() const { return target_nvars_; }
  Coeff prime() const { return p_; }
  const SparsePoly& operator[](std::size_t i) const { return images_[i]; }
  const std::vector<SparsePoly>& images() const { return images_; }

 private:
  std::vector<SparsePoly> images_;
  Coeff p_;
  std::size_t target_nvars_;
};

SparsePoly substitute(const SparsePoly& f, const Substitution& s);
// compose(s, t) applies t first: substitute(f, compose(s, t)) = substitute(substitute(f, t), s)
Substitution compose(const Substitution& s, const Substitution& t);

}  // namespace tsalg
