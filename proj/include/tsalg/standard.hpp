#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsalg/dehom.hpp"
#include "tsalg/group.hpp"
#include "tsalg/poly.hpp"

namespace tsalg {

struct CpBase {
  SparsePoly y;  // sum_i i * x_{g^i}
  SparsePoly w;  // -y^{p-1}
};

// ctx must be cyclic of order p with element i = g^i
CpBase base_case_cp(const DehomContext& ctx);

// y_0 = sum_{i=1}^{p-1} i * t_R(x_{g0^i})
SparsePoly lift_y0(const CentralStep& step, const DehomContext& ctx);

// w = -y_0^{p-1} * w'; throws PointCheckFailed unless transfer(w) = 1
SparsePoly lift_point(const DehomContext& ctx, const SparsePoly& y0, const SparsePoly& w_prime_embedded);

// x_g -> normal_form(w . g)
Substitution theta_substitution(const DehomContext& ctx, const SparsePoly& w);

struct Reflexified {
  SparsePoly point;               // theta^{p-1}(w)
  std::optional<SparsePoly> y0;   // theta^{p-1}(y0) when y0 was given
};

// Literal iteration of theta. Throws PointCheckFailed if tr(w) != 1 and
// NotIdempotent if the resulting point is not fixed by its own theta.
Reflexified reflexify(const DehomContext& ctx, const SparsePoly& w,
                      const std::optional<SparsePoly>& y0 = std::nullopt);

struct Embedding {
  std::vector<SparsePoly> y;          // concrete generators in D_k(G)
  std::optional<SparsePoly> point;    // concrete reflexive point, if within budget
  std::string point_note;             // reason when the point was not materialized
};

// Standard subalgebra k[Y_0..Y_{n-1}] of D_k(G) with its triangular action.
// Polynomials live in n variables named Y; Y_i for i >= 1 come from G/Z.
struct StandardAlgebraData {
  Coeff p = 2;
  std::size_t n = 0;
  FiniteGroup group;
  std::optional<CentralStep> step;                  // G -> G/Z, absent for the trivial group
  std::shared_ptr<const StandardAlgebraData> lower;  // data for G/Z
  std::vector<Substitution> action;                 // images of Y_0..Y_{n-1} under each element
  std::vector<SparsePoly> sigma;                    // sigma_i = Y_i - Y_i^p + gamma_i
  std::vector<SparsePoly> gamma;
  // Sum_{r,r'} e_{r',r} (w' r'r)(w' r): theta^{p-1}(y_0) = theta(y_0) - (p-2) * correction
  std::vector<SparsePoly> correction;
  SparsePoly point;                                 // -Y_0^{p-1} * w'
  std::vector<SparsePoly> beta;                     // level-0 cocycle on G/Z
  std::optional<Embedding> embedding;

  SparsePoly y(std::size_t i) const { return SparsePoly::variable(p, n, i); }
  SparsePoly act(const SparsePoly& f, Element h) const { return substitute(f, action[h]); }
};

// Images of Y_0 under every element of G, in n = lower.n + 1 variables.
std::vector<SparsePoly> abstract_action(const CentralStep& step, const StandardAlgebraData& lower);

struct CocycleSolution {
  std::vector<SparsePoly> beta;  // indexed by quotient element
  SparsePoly gamma;
};

// Throws CocycleUnsolved if gamma.q - gamma = beta(q) fails for some q.
CocycleSolution solve_cocycle(const CentralStep& step, const StandardAlgebraData& lower);

struct BuildOptions {
  bool verify_embedding = false;
  // skip materializing the concrete point when its product count would exceed this
  double point_budget = 2e8;
};

StandardAlgebraData build_standard(const FiniteGroup& g, const BuildOptions& opts = {});

// Values of the generators and point under the algebra map D_k(G) -> B with
// x_g -> images[g], precomposed with every shift g of G (or only the identity).
struct RecipeValues {
  std::vector<std::vector<SparsePoly>> y;  // [shift][i]
  std::vector<SparsePoly> w;               // [shift], empty when skipped
  bool point_skipped = false;
};

// point_budget bounds the term products spent on the top-level point
RecipeValues evaluate_recipe(const StandardAlgebraData& data, std::span<const SparsePoly> images,
                             bool all_shifts, double point_budget = 1e300);

Embedding concrete_embedding(const StandardAlgebraData& data, double point_budget);

// omega = X_1 * Y_1 in D_k(G x H) with X_g, Y_h the two marginals
SparsePoly direct_product_point(const FiniteGroup& g, const FiniteGroup& h);

}  // namespace tsalg
