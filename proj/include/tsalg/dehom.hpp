#pragma once

#include <span>
#include <vector>

#include "tsalg/group.hpp"
#include "tsalg/poly.hpp"

namespace tsalg {

// D_k(G): one variable x_g per element, x_identity eliminated as 1 - sum of the others.
class DehomContext {
 public:
  explicit DehomContext(FiniteGroup g);

  const FiniteGroup& group() const { return group_; }
  Coeff prime() const { return group_.prime(); }
  std::size_t nvars() const { return group_.order(); }

  SparsePoly zero() const { return SparsePoly(prime(), nvars()); }
  SparsePoly constant(Coeff c) const { return SparsePoly::constant(prime(), nvars(), c); }
  SparsePoly one() const { return constant(1); }
  // normal form of x_g
  SparsePoly x(Element g) const;

  SparsePoly normal_form(const SparsePoly& f) const;
  bool is_normal(const SparsePoly& f) const { return f.nvars() == nvars() && !f.mentions(0); }

  // right regular action x_g . h = x_{gh}, followed by normalization
  SparsePoly act(const SparsePoly& f, Element h) const;
  std::vector<SparsePoly> orbit(const SparsePoly& f) const;
  SparsePoly transfer(const SparsePoly& f) const;
  SparsePoly relative_transfer(const SparsePoly& f, std::span<const Element> elems) const;

  // coordinate g is f evaluated at x_h = [h == g]
  std::vector<Coeff> delta_evaluation(const SparsePoly& f) const;

  // x_g -> normal_form(x_{gh})
  Substitution action_substitution(Element h) const;

 private:
  FiniteGroup group_;
};

// D_k(G/Z) -> D_k(G), quotient variable for gZ maps to the sum of x_h over the coset
Substitution eta_embedding(const CentralStep& step, const DehomContext& g, const DehomContext& q);

}  // namespace tsalg
