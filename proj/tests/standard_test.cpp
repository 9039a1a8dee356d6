#include <gtest/gtest.h>

#include "tsalg/error.hpp"
#include "tsalg/linalg.hpp"
#include "tsalg/standard.hpp"

using namespace tsalg;

namespace {

std::vector<FiniteGroup> small_catalogue() {
  return {cyclic_group(2, 1),
          cyclic_group(2, 2),
          cyclic_group(2, 3),
          elementary_abelian_group(2, 2),
          direct_product(cyclic_group(2, 1), cyclic_group(2, 2)),
          elementary_abelian_group(2, 3),
          dihedral_group(8),
          quaternion_group(8),
          cyclic_group(3, 1),
          cyclic_group(3, 2),
          elementary_abelian_group(3, 2),
          cyclic_group(5, 1)};
}

struct Literal {
  std::vector<SparsePoly> y;
  SparsePoly point;
};

// Independent route: lift and reflexify in D_k at every level.
Literal literal_build(const FiniteGroup& g) {
  DehomContext ctx(g);
  if (g.order() == 1) return {{}, ctx.one()};
  CentralStep step = central_step(g, default_central_element(g));
  Literal lower = literal_build(step.quotient);
  DehomContext qctx(step.quotient);
  Substitution eta = eta_embedding(step, ctx, qctx);
  SparsePoly y0 = lift_y0(step, ctx);
  SparsePoly w = lift_point(ctx, y0, substitute(lower.point, eta));
  Reflexified r = reflexify(ctx, w, y0);
  Literal out;
  out.y.push_back(*r.y0);
  for (const auto& f : lower.y) out.y.push_back(ctx.normal_form(substitute(f, eta)));
  out.point = r.point;
  return out;
}

Substitution into(const DehomContext& ctx, const std::vector<SparsePoly>& ys) {
  return Substitution(ys, ctx.prime(), ctx.nvars());
}

}  // namespace

TEST(BaseCase, CyclicThree) {
  DehomContext ctx(cyclic_group(3, 1));
  CpBase b = base_case_cp(ctx);
  EXPECT_EQ(b.y, ctx.x(1) + ctx.x(2).scaled(2));
  EXPECT_EQ(b.w, pow(b.y, 2).scaled(2));
  EXPECT_EQ(ctx.transfer(b.w), ctx.one());
  EXPECT_EQ(ctx.act(b.y, 1), b.y - ctx.one());
}

TEST(BaseCase, CyclicTwoAndFive) {
  DehomContext c2(cyclic_group(2, 1));
  EXPECT_EQ(base_case_cp(c2).y, c2.x(1));
  EXPECT_EQ(c2.transfer(c2.x(1)), c2.one());
  DehomContext c5(cyclic_group(5, 1));
  EXPECT_EQ(c5.transfer(base_case_cp(c5).w), c5.one());
  EXPECT_THROW(base_case_cp(DehomContext(cyclic_group(2, 2))), Error);
}

TEST(LiftY0, CyclicFour) {
  auto g = cyclic_group(2, 2);
  DehomContext ctx(g);
  CentralStep step = central_step(g, 2);
  SparsePoly y0 = lift_y0(step, ctx);
  EXPECT_EQ(y0, ctx.x(2) + ctx.x(3));
  EXPECT_EQ(ctx.act(y0, 2), y0 - ctx.one());
}

TEST(LiftY0, ActionFormula) {
  for (const auto& g : {cyclic_group(2, 3), quaternion_group(8), cyclic_group(3, 2), heisenberg_group(3)}) {
    DehomContext ctx(g);
    CentralStep step = central_step(g, default_central_element(g));
    DehomContext q(step.quotient);
    Substitution eta = eta_embedding(step, ctx, q);
    SparsePoly y0 = lift_y0(step, ctx);
    EXPECT_EQ(ctx.act(y0, step.g0), y0 - ctx.one());
    for (Element h = 0; h < g.order(); ++h) {
      SparsePoly expect = y0;
      for (Element rq = 0; rq < step.quotient.order(); ++rq) {
        Coeff e = step.e(rq, h);
        if (e) expect -= substitute(q.x(step.proj[step.r(rq, h)]), eta).scaled(e);
      }
      EXPECT_EQ(ctx.act(y0, h), expect) << "h=" << h;
    }
  }
}

TEST(LiftPoint, TransferIsOne) {
  for (const auto& g : {cyclic_group(2, 2), cyclic_group(3, 2)}) {
    DehomContext ctx(g);
    CentralStep step = central_step(g, default_central_element(g));
    DehomContext q(step.quotient);
    SparsePoly wq = base_case_cp(q).w;
    SparsePoly w = lift_point(ctx, lift_y0(step, ctx), substitute(wq, eta_embedding(step, ctx, q)));
    EXPECT_EQ(ctx.transfer(w), ctx.one());
  }
  auto g = cyclic_group(3, 2);
  DehomContext ctx(g);
  CentralStep step = central_step(g, default_central_element(g));
  EXPECT_THROW(lift_point(ctx, lift_y0(step, ctx), ctx.constant(2)), Error);
}

TEST(Reflexify, CyclicTwo) {
  DehomContext ctx(cyclic_group(2, 1));
  Reflexified r = reflexify(ctx, ctx.x(1), ctx.x(1));
  EXPECT_EQ(r.point, ctx.x(0));
  EXPECT_EQ(*r.y0, ctx.one() + ctx.x(1));
}

TEST(Reflexify, CyclicThreeAlreadyReflexive) {
  DehomContext ctx(cyclic_group(3, 1));
  CpBase b = base_case_cp(ctx);
  EXPECT_EQ(ctx.normal_form(substitute(b.w, theta_substitution(ctx, b.w))), b.w);
  EXPECT_EQ(reflexify(ctx, b.w).point, b.w);
}

TEST(Reflexify, RejectsNonPoint) {
  DehomContext ctx(cyclic_group(3, 1));
  EXPECT_THROW(reflexify(ctx, ctx.x(1).scaled(2)), Error);
}

TEST(DirectProductPoint, TransferAndMarginals) {
  auto c3 = cyclic_group(3, 1);
  DehomContext ctx3(direct_product(c3, c3));
  SparsePoly w3 = direct_product_point(c3, c3);
  EXPECT_EQ(ctx3.transfer(w3), ctx3.one());
  EXPECT_EQ(reflexify(ctx3, w3).point, w3);

  // both marginal sums are 1, so theta fixes each marginal and the product
  auto c2 = cyclic_group(2, 1);
  DehomContext ctx2(direct_product(c2, c2));
  SparsePoly w2 = direct_product_point(c2, c2);
  EXPECT_EQ(ctx2.transfer(w2), ctx2.one());
  EXPECT_EQ(reflexify(ctx2, w2).point, w2);
}

namespace {

// w = -y_0^{p-1} w' for a product Z x Q with reflexive w'
std::pair<SparsePoly, SparsePoly> product_lift(const FiniteGroup& g) {
  DehomContext ctx(g);
  CentralStep step = central_step(g, default_central_element(g));
  DehomContext q(step.quotient);
  SparsePoly wq = reflexify(q, base_case_cp(q).w).point;
  SparsePoly wq_up = substitute(wq, eta_embedding(step, ctx, q));
  return {lift_point(ctx, lift_y0(step, ctx), wq_up), wq_up};
}

}  // namespace

TEST(DirectProductPoint, LiftedPointReflexivity) {
  // theta is an algebra map, so theta(w) = -theta(y_0)^{p-1} theta(w'); expanding
  // theta on w directly would square the degree
  auto g3 = elementary_abelian_group(3, 2);
  DehomContext ctx3(g3);
  CentralStep step = central_step(g3, default_central_element(g3));
  SparsePoly y0 = lift_y0(step, ctx3);
  auto [w3, w3q] = product_lift(g3);
  Substitution theta = theta_substitution(ctx3, w3);
  SparsePoly tq = ctx3.normal_form(substitute(w3q, theta));
  EXPECT_EQ(tq, w3q);
  SparsePoly ty = ctx3.normal_form(substitute(y0, theta));
  EXPECT_EQ(ctx3.normal_form(-(ty * ty * tq)), w3);

  auto g2 = elementary_abelian_group(2, 2);
  DehomContext ctx2(g2);
  auto [w2, w2q] = product_lift(g2);
  SparsePoly fixed = reflexify(ctx2, w2).point;
  EXPECT_NE(fixed, w2);
  EXPECT_EQ(fixed, w2 + w2q);
}

TEST(Build, CyclicTwoAndThree) {
  auto d2 = build_standard(cyclic_group(2, 1));
  ASSERT_EQ(d2.n, 1u);
  SparsePoly y = d2.y(0);
  EXPECT_EQ(d2.sigma[0], y + y * y);
  EXPECT_EQ(d2.action[1][0], y + SparsePoly::constant(2, 1, 1));

  auto d3 = build_standard(cyclic_group(3, 1));
  SparsePoly z = d3.y(0);
  EXPECT_TRUE(d3.gamma[0].is_zero());
  EXPECT_EQ(d3.sigma[0], z - pow(z, 3));
  EXPECT_EQ(d3.action[1][0], z - SparsePoly::constant(3, 1, 1));
  EXPECT_EQ(d3.point, -(z * z));
}

TEST(Build, StructuralInvariants) {
  for (const auto& g : small_catalogue()) {
    auto d = build_standard(g);
    ASSERT_EQ(d.n, g.rank());
    SparsePoly tr(d.p, d.n);
    for (Element h = 0; h < g.order(); ++h) {
      for (std::size_t i = 0; i < d.n; ++i) {
        SparsePoly f = d.action[h][i] - d.y(i);
        for (std::size_t j = 0; j <= i; ++j) EXPECT_FALSE(f.mentions(j)) << "triangular " << h << " " << i;
        EXPECT_EQ(d.act(d.sigma[i], h), d.sigma[i]);
        EXPECT_EQ(d.sigma[i], d.y(i) - frobenius(d.y(i)) + d.gamma[i]);
      }
      tr += d.act(d.point, h);
    }
    EXPECT_EQ(tr, SparsePoly::constant(d.p, d.n, 1));
  }
}

TEST(Build, ActionIsAGroupAction) {
  for (const auto& g : small_catalogue()) {
    auto d = build_standard(g);
    for (Element a = 0; a < g.order(); ++a)
      for (Element b = 0; b < g.order(); ++b)
        for (std::size_t i = 0; i < d.n; ++i)
          EXPECT_EQ(substitute(d.action[a][i], d.action[b]), d.action[g.mul(a, b)][i]);
  }
}

TEST(Build, CentralElementShiftsByOne) {
  for (const auto& g : small_catalogue()) {
    auto d = build_standard(g);
    EXPECT_EQ(d.action[d.step->g0][0], d.y(0) - SparsePoly::constant(d.p, d.n, 1));
  }
}

TEST(Cocycle, CyclicFourExhaustive) {
  auto g = cyclic_group(2, 2);
  auto d = build_standard(g);
  CocycleSolution sol = solve_cocycle(*d.step, *d.lower);
  for (Element h = 0; h < 4; ++h) {
    Element q = d.step->proj[h];
    EXPECT_EQ(d.act(sol.gamma, h) - sol.gamma, sol.beta[q]);
  }
}

TEST(Cocycle, CorruptedLowerPointIsReported) {
  auto g = cyclic_group(3, 2);
  auto d = build_standard(g);
  StandardAlgebraData bad = *d.lower;
  bad.point = bad.point.scaled(2);
  try {
    solve_cocycle(*d.step, bad);
    FAIL() << "expected CocycleUnsolved";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CocycleUnsolved);
  }
}

TEST(Cocycle, DirectProductHasZeroBeta) {
  auto d = build_standard(elementary_abelian_group(3, 2));
  for (const auto& b : d.beta) EXPECT_TRUE(b.is_zero());
  EXPECT_TRUE(d.gamma[0].is_zero());
}

TEST(Embedding, MatchesLiteralConstruction) {
  // literal theta iteration multiplies degrees, so only small cases are tractable
  for (const auto& g : {cyclic_group(2, 1), cyclic_group(2, 2), elementary_abelian_group(2, 2),
                        quaternion_group(8), cyclic_group(3, 1),
                        cyclic_group(5, 1)}) {
    auto d = build_standard(g, {.verify_embedding = true});
    Literal lit = literal_build(g);
    ASSERT_TRUE(d.embedding->point.has_value());
    EXPECT_EQ(d.embedding->y, lit.y) << "order " << g.order() << " p " << g.prime();
    EXPECT_EQ(*d.embedding->point, lit.point);
  }
}

TEST(Embedding, EquivariantAndPointImage) {
  for (const auto& g : small_catalogue()) {
    auto d = build_standard(g, {.verify_embedding = true});
    DehomContext ctx(g);
    const auto& e = *d.embedding;
    Substitution s = into(ctx, e.y);
    EXPECT_EQ(substitute(d.point, s), *e.point);
    EXPECT_EQ(ctx.transfer(*e.point), ctx.one());
    for (Element h = 0; h < g.order(); ++h)
      for (std::size_t i = 0; i < d.n; ++i) EXPECT_EQ(ctx.act(e.y[i], h), substitute(d.action[h][i], s));
  }
}

TEST(Embedding, ThetaFixesGeneratorsAbstractly) {
  auto gs = small_catalogue();
  gs.push_back(heisenberg_group(3));
  gs.push_back(dihedral_group(16));
  for (const auto& g : gs) {
    auto d = build_standard(g);
    std::vector<SparsePoly> images;
    for (Element h = 0; h < g.order(); ++h) images.push_back(d.act(d.point, h));
    RecipeValues v = evaluate_recipe(d, images, false);
    for (std::size_t i = 0; i < d.n; ++i) EXPECT_EQ(v.y[0][i], d.y(i));
    EXPECT_EQ(v.w[0], d.point);
  }
}

TEST(Embedding, OrbitSpansRegularRepresentation) {
  for (const auto& g : {quaternion_group(8), cyclic_group(3, 2)}) {
    auto d = build_standard(g, {.verify_embedding = true});
    DehomContext ctx(g);
    auto orb = ctx.orbit(*d.embedding->point);
    EXPECT_EQ(poly_rank(orb), g.order());
  }
}

TEST(Embedding, PointBudgetSkipsMaterialization) {
  auto d = build_standard(cyclic_group(2, 2), {.verify_embedding = true, .point_budget = 1});
  EXPECT_FALSE(d.embedding->point.has_value());
  EXPECT_FALSE(d.embedding->point_note.empty());
  EXPECT_EQ(d.embedding->y.size(), 2u);
}
