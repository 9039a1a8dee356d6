#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tsalg/check.hpp"
#include "tsalg/linalg.hpp"
#include "tsalg/standard.hpp"

namespace tsalg {

using Vec = std::vector<Coeff>;

// Finite-dimensional commutative F_p-algebra given by structure constants.
class CoeffRing {
 public:
  static CoeffRing prime_field(Coeff p);
  // F_p[t]/(m) for the lexicographically first monic irreducible m of degree k
  static CoeffRing extension_field(Coeff p, std::size_t k);
  // F_p[t]/(m) for a given monic modulus, low degree first
  static CoeffRing quotient(Coeff p, std::vector<Coeff> modulus);
  // F_p^k with the coordinate idempotents as basis
  static CoeffRing split(Coeff p, std::size_t k);

  Coeff prime() const { return p_; }
  std::size_t dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const Vec& one() const { return one_; }
  Vec basis(std::size_t i) const;
  Vec mul(const Vec& a, const Vec& b) const;
  // matrix of x -> a*x on the basis coordinates
  Matrix mul_matrix(const Vec& a) const;
  Vec random(std::mt19937_64& rng) const;

  // unit, commutativity and associativity on basis triples; empty when valid
  std::string validate() const;

 private:
  Coeff p_ = 2;
  std::size_t dim_ = 1;
  std::string name_;
  Vec one_;
  std::vector<Vec> table_;  // table_[i * dim + j] = b_i * b_j
};

// A = R[Y_0..Y_{n-1}] / (sigma_i - r_i) with its G-action, as F_p matrices on the
// basis e_s * Y^I, I < (p, ..., p), coordinate index s + dim(R) * (I_0 + p I_1 + ...).
class TsInstance {
 public:
  TsInstance(const StandardAlgebraData& data, CoeffRing ring, std::vector<Vec> r);

  Coeff prime() const { return p_; }
  std::size_t n() const { return n_; }
  std::size_t dim() const { return dim_; }
  const CoeffRing& ring() const { return ring_; }
  const std::vector<Vec>& parameters() const { return r_; }
  const StandardAlgebraData& data() const { return *data_; }

  Vec one() const;
  Vec y(std::size_t j) const;
  Vec scalar(const Vec& c) const;
  Vec mul(const Vec& a, const Vec& b) const;
  Vec pow(const Vec& a, std::uint64_t e) const;
  Matrix mul_matrix(const Vec& a) const;
  // value of an F_p polynomial in Y_0..Y_{n-1}
  Vec eval(const SparsePoly& f) const;
  // product of the generators Y_{steps[0]}, Y_{steps[1]}, ... applied to 1 in sequence
  Vec monomial(std::span<const std::size_t> steps) const;

  const Matrix& y_matrix(std::size_t j) const { return m_[j]; }
  const Matrix& action(Element h) const { return act_[h]; }
  Vec act(const Vec& a, Element h) const { return act_[h].apply(a); }
  Vec point() const;

  std::string basis_label(std::size_t i) const;
  // Y_i^p -> Y_i + gamma_i - r_i
  std::vector<std::string> rewrite_rules() const;

  // the same instance with element h acting as the identity
  TsInstance with_corrupted_action(Element h) const;

 private:
  void build_multiplication();
  Matrix action_matrix(const Substitution& s) const;
  Vec apply_poly(const SparsePoly& f, const Vec& v) const;

  std::shared_ptr<const StandardAlgebraData> data_;
  CoeffRing ring_;
  std::vector<Vec> r_;
  Coeff p_;
  std::size_t n_, d_, dim_;
  std::vector<Matrix> m_;      // multiplication by Y_j
  std::vector<Matrix> basis_;  // multiplication by each basis element
  std::vector<Matrix> act_;  // a -> a . h
};

// the relations hold and the multiplication operators commute
Checks check_relations(const TsInstance& a);
// trace of the point, fixed subalgebra dimension, free orbit, action laws
Checks verify_instance(const TsInstance& a, std::uint64_t seed);

struct ArtinSchreierReport {
  Coeff p = 2;
  Coeff gamma = 0;                // relation Y^p - Y - gamma
  bool has_root = false;          // a root in F_p
  std::size_t frobenius_fixed = 0;  // number of irreducible factors
  bool is_field = false;
  std::size_t fixed_ring_dim = 0;
  std::size_t normal_basis_rank = 0;  // rank of {(beta - i)^{p-1}}
  bool action_is_frobenius = false;
  Checks checks;
};

ArtinSchreierReport artin_schreier_demo(Coeff p, Coeff gamma);

}  // namespace tsalg
