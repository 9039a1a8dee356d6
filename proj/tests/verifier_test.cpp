#include <gtest/gtest.h>

#include "tsalg/verifier.hpp"

using namespace tsalg;

namespace {

const Check& find(const Checks& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name == name) return c;
  throw std::runtime_error("missing check " + name);
}

}  // namespace

TEST(FreeRankOne, IdentityVariableOfCyclicTwo) {
  DehomContext ctx(cyclic_group(2, 1));
  // x_e = 1 + x_g, orbit {1 + x_g, x_g}
  Check c = check_free_rank_one(ctx, ctx.x(0));
  EXPECT_TRUE(c.pass);
  EXPECT_NE(c.detail.find("rank 2"), std::string::npos);
}

TEST(FreeRankOne, ZeroTransferIsVacuous) {
  DehomContext ctx(cyclic_group(3, 1));
  Check c = check_free_rank_one(ctx, ctx.x(1) - ctx.x(2));
  EXPECT_TRUE(c.pass);
  EXPECT_NE(c.detail.find("zero"), std::string::npos);
}

TEST(FreeRankOne, DeltaCertificateAgreesWithEchelon) {
  for (const auto& g : {cyclic_group(2, 2), quaternion_group(8), cyclic_group(3, 2)}) {
    auto d = build_standard(g, {.verify_embedding = true});
    DehomContext ctx(g);
    EXPECT_TRUE(check_free_rank_one(ctx, *d.embedding->point).pass);
    EXPECT_TRUE(check_orbit_rank_by_delta(ctx, *d.embedding->point).pass);
  }
  // x_e has a degenerate delta vector but a free orbit: the certificate is one-sided
  DehomContext ctx(cyclic_group(2, 1));
  EXPECT_TRUE(check_orbit_rank_by_delta(ctx, ctx.x(0)).pass);
  EXPECT_FALSE(check_orbit_rank_by_delta(ctx, ctx.one()).pass);
}

TEST(Separation, SmallCases) {
  DehomContext c3(cyclic_group(3, 1));
  auto d3 = build_standard(cyclic_group(3, 1), {.verify_embedding = true});
  EXPECT_EQ(c3.delta_evaluation(d3.embedding->y[0]), (std::vector<Coeff>{0, 1, 2}));
  EXPECT_TRUE(check_separation(c3, d3.embedding->y).pass);

  auto d4 = build_standard(elementary_abelian_group(2, 2), {.verify_embedding = true});
  DehomContext c4(d4.group);
  EXPECT_TRUE(check_separation(c4, d4.embedding->y).pass);
  std::vector<SparsePoly> consts{c4.one(), c4.zero()};
  Check bad = check_separation(c4, consts);
  EXPECT_FALSE(bad.pass);
  EXPECT_FALSE(bad.witness.empty());
}

TEST(Standard, CyclicThreeAndQuaternion) {
  for (const auto& g : {cyclic_group(3, 1), quaternion_group(8)}) {
    auto d = build_standard(g, {.verify_embedding = true});
    Checks cs = check_standard(d, 4);
    for (const auto& c : cs) EXPECT_TRUE(c.pass) << c.name << " " << c.witness;
    EXPECT_TRUE(find(cs, "embedding.theta_idempotent").pass);
  }
}

TEST(Standard, CorruptedPointFailsIdempotence) {
  auto d = build_standard(cyclic_group(3, 1), {.verify_embedding = true});
  DehomContext ctx(d.group);
  Check c = check_theta_fixes(ctx, *d.embedding->point + ctx.x(1) - ctx.x(2));
  EXPECT_FALSE(c.pass);
  EXPECT_FALSE(c.witness.empty());
}

TEST(Suite, NegativeControlsFailWithWitnesses) {
  for (const auto& c : negative_controls(3)) {
    EXPECT_FALSE(c.pass) << c.name;
    EXPECT_FALSE(c.witness.empty()) << c.name;
  }
}

TEST(Suite, DeterministicAndParallelSafe) {
  auto groups = builtin_catalogue(8);
  SuiteOptions one{.depth = Depth::Embedding, .seed = 5, .jobs = 1};
  SuiteOptions four = one;
  four.jobs = 4;
  auto a = report_to_json(run_suite(groups, one), false).dump();
  auto b = report_to_json(run_suite(groups, four), false).dump();
  EXPECT_EQ(a, b);
  EXPECT_TRUE(run_suite(groups, one).ok());
}

TEST(Suite, CorruptedCheckMakesReportFail) {
  VerificationReport r = run_suite(builtin_catalogue(2), {});
  ASSERT_TRUE(r.ok());
  r.checks.front().pass = false;
  EXPECT_FALSE(r.ok());
}

TEST(Extraspecial, OrderTwentySeven) {
  auto m = extraspecial_model(3, 1);
  for (const auto& c : m.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.witness;
  EXPECT_EQ(m.m_g1.at(0, 2), 1u);
  EXPECT_EQ(m.m_g1.at(1, 3), 2u);
  EXPECT_EQ(m.m_g2.at(2, 3), 2u);
  EXPECT_EQ(m.checks.size(), 6u);
}

TEST(Extraspecial, OrderOneTwentyFive) {
  auto m = extraspecial_model(5, 2);
  for (const auto& c : m.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.witness;
}
