#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsalg/modp.hpp"

namespace tsalg {

using Element = std::uint32_t;

inline constexpr std::size_t kMaxGroupOrder = 256;

// Finite p-group given by its multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  // Validates the table exhaustively. table[a][b] = a*b.
  static FiniteGroup from_table(Coeff p, const std::vector<std::vector<std::int64_t>>& table);

  Coeff prime() const { return p_; }
  std::size_t order() const { return order_; }
  // log_p of the order
  std::size_t rank() const { return rank_; }

  Element mul(Element a, Element b) const { return table_[std::size_t(a) * order_ + b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  Element pow(Element a, std::uint64_t e) const;
  std::size_t element_order(Element a) const;
  bool is_abelian() const;

  std::vector<std::vector<std::int64_t>> table() const;
  bool operator==(const FiniteGroup&) const = default;

 private:
  Coeff p_ = 2;
  std::size_t order_ = 1;
  std::size_t rank_ = 0;
  std::vector<Element> table_{0};
  std::vector<Element> inverse_{0};
};

FiniteGroup group_from_table(Coeff p, const std::vector<std::vector<std::int64_t>>& table);

// Cayley-table text: "p order" then order rows of order indices.
FiniteGroup read_cayley_table(std::istream& in);
std::string write_cayley_table(const FiniteGroup& g);

FiniteGroup trivial_group(Coeff p);
FiniteGroup cyclic_group(Coeff p, std::size_t n);
FiniteGroup elementary_abelian_group(Coeff p, std::size_t n);
// (g, h) has index g*|H| + h
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
// order 2^n, r^i s^j at index i + (order/2)*j
FiniteGroup dihedral_group(std::size_t order);
// 1, -1, i, -i, j, -j, k, -k
FiniteGroup quaternion_group(std::size_t order);
// g0^a0 g1^a1 g2^a2 at index a0*p^2 + a1*p + a2, with g0 = [g1, g2] central
FiniteGroup heisenberg_group(Coeff p);

// family: cyclic, elementary_abelian, dihedral, quaternion, heisenberg
FiniteGroup builtin_group(std::string_view family, std::span<const long> params);

// "cyclic:3,2", "heisenberg:3", "quaternion:8", "dihedral:8", "elementary:2,3",
// products joined by '*', or "table:<path>"
FiniteGroup parse_group_spec(std::string_view spec);

std::vector<Element> center(const FiniteGroup& g);
// greedy generating set in ascending index order
std::vector<Element> generators(const FiniteGroup& g);

struct CentralStep {
  Element g0 = 0;
  FiniteGroup quotient;
  std::vector<Element> proj;         // element of G -> element of G/Z
  std::vector<Element> transversal;  // quotient element -> representative in G
  std::vector<Element> z_powers;     // g0^i, i = 0..p-1
  // indexed [quotient element of r][h]: r*h = g0^e * r'
  std::vector<Coeff> e_table;
  std::vector<Element> r_table;

  Coeff e(Element rq, Element h) const { return e_table[std::size_t(rq) * proj.size() + h]; }
  Element r(Element rq, Element h) const { return r_table[std::size_t(rq) * proj.size() + h]; }
};

CentralStep central_step(const FiniteGroup& g, Element g0);

struct CentralChain {
  std::vector<FiniteGroup> groups;  // G_0 = G, ..., G_n trivial
  std::vector<CentralStep> steps;
};

// lowest-numbered central element of order p
Element default_central_element(const FiniteGroup& g);
CentralChain central_chain(const FiniteGroup& g);

}  // namespace tsalg
