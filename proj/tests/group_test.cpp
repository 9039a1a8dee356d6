#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "tsalg/error.hpp"
#include "tsalg/group.hpp"

using namespace tsalg;

namespace {

using Table = std::vector<std::vector<std::int64_t>>;

Table cyclic_table(std::size_t m) {
  Table t(m, std::vector<std::int64_t>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t[a][b] = static_cast<std::int64_t>((a + b) % m);
  return t;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::BadParams;
}

std::vector<FiniteGroup> catalogue() {
  return {cyclic_group(2, 1),         cyclic_group(2, 2),      cyclic_group(2, 3),
          cyclic_group(2, 4),         elementary_abelian_group(2, 2),
          elementary_abelian_group(2, 3),
          direct_product(cyclic_group(2, 1), cyclic_group(2, 2)),
          dihedral_group(8),          dihedral_group(16),      quaternion_group(8),
          cyclic_group(3, 1),         cyclic_group(3, 2),      elementary_abelian_group(3, 2),
          heisenberg_group(3),        cyclic_group(5, 1)};
}

}  // namespace

TEST(GroupFromTable, SmallCyclicTables) {
  auto c2 = group_from_table(2, cyclic_table(2));
  EXPECT_EQ(c2.order(), 2u);
  auto c4 = group_from_table(2, cyclic_table(4));
  EXPECT_EQ(c4.order(), 4u);
  EXPECT_EQ(c4.rank(), 2u);
}

TEST(GroupFromTable, RejectsNonPPower) {
  EXPECT_EQ(code_of([] { group_from_table(2, cyclic_table(6)); }), ErrorCode::NotPPower);
}

TEST(GroupFromTable, RejectsMissingIdentity) {
  Table t = cyclic_table(2);
  std::swap(t[0], t[1]);
  EXPECT_EQ(code_of([&] { group_from_table(2, t); }), ErrorCode::NoIdentity);
}

TEST(GroupFromTable, ExhaustiveAssociativityWitness) {
  // identity and unique inverses, but (1*2)*3 = 1 while 1*(2*3) = 0
  Table t = {{0, 1, 2, 3}, {1, 0, 2, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  try {
    group_from_table(2, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAssociative);
    EXPECT_NE(std::string(e.what()).find("a="), std::string::npos);
  }
}

TEST(GroupFromTable, RejectsOutOfRangeEntries) {
  Table t = cyclic_table(2);
  t[1][1] = 5;
  EXPECT_EQ(code_of([&] { group_from_table(2, t); }), ErrorCode::BadTable);
}

TEST(Builtins, Orders) {
  EXPECT_EQ(cyclic_group(3, 1).order(), 3u);
  auto h = heisenberg_group(3);
  EXPECT_EQ(h.order(), 27u);
  for (Element g = 1; g < 27; ++g) EXPECT_EQ(h.element_order(g), 3u);
  EXPECT_EQ(center(h).size(), 3u);
  EXPECT_FALSE(h.is_abelian());
  EXPECT_EQ(quaternion_group(8).order(), 8u);
  EXPECT_EQ(dihedral_group(16).order(), 16u);
  EXPECT_EQ(code_of([] { heisenberg_group(2); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { dihedral_group(12); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { cyclic_group(4, 1); }), ErrorCode::BadParams);
}

TEST(Builtins, SpecStrings) {
  EXPECT_EQ(parse_group_spec("cyclic:3,2"), cyclic_group(3, 2));
  EXPECT_EQ(parse_group_spec("heisenberg:3"), heisenberg_group(3));
  EXPECT_EQ(parse_group_spec("cyclic:2,1*quaternion:8").order(), 16u);
  EXPECT_EQ(code_of([] { parse_group_spec("bogus:1"); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { parse_group_spec("cyclic:2,x"); }), ErrorCode::BadParams);
}

TEST(Center, KnownSizes) {
  EXPECT_EQ(center(cyclic_group(2, 2)).size(), 4u);
  auto z = center(quaternion_group(8));
  EXPECT_EQ(z, (std::vector<Element>{0, 1}));
  EXPECT_EQ(center(dihedral_group(8)).size(), 2u);
  auto hz = center(heisenberg_group(3));
  EXPECT_EQ(hz, (std::vector<Element>{0, 9, 18}));
}

TEST(Center, BruteForceDefinition) {
  for (const auto& g : catalogue()) {
    auto zs = center(g);
    std::set<Element> z(zs.begin(), zs.end());
    for (Element a = 0; a < g.order(); ++a) {
      bool commutes = true;
      for (Element b = 0; b < g.order(); ++b) commutes = commutes && g.mul(a, b) == g.mul(b, a);
      EXPECT_EQ(commutes, z.count(a) == 1);
    }
  }
}

TEST(CentralStep, CyclicFour) {
  auto g = cyclic_group(2, 2);
  auto s = central_step(g, 2);
  EXPECT_EQ(s.transversal, (std::vector<Element>{0, 1}));
  // e(1, g) = 0, r(1, g) = g; e(g, g) = 1, r(g, g) = 1
  EXPECT_EQ(s.e(0, 1), 0u);
  EXPECT_EQ(s.r(0, 1), 1u);
  EXPECT_EQ(s.e(1, 1), 1u);
  EXPECT_EQ(s.r(1, 1), 0u);
}

TEST(CentralStep, Errors) {
  auto d = dihedral_group(8);
  EXPECT_EQ(code_of([&] { central_step(d, 1); }), ErrorCode::NotCentral);
  auto c = cyclic_group(2, 2);
  EXPECT_EQ(code_of([&] { central_step(c, 1); }), ErrorCode::WrongOrder);
}

TEST(CentralStep, KleinComplementHasZeroExponents) {
  auto g = elementary_abelian_group(2, 2);
  auto s = central_step(g, 1);
  // complement factor {0, 2}
  for (Element rq = 0; rq < s.quotient.order(); ++rq)
    for (Element h : {0u, 2u}) EXPECT_EQ(s.e(rq, h), 0u);
}

TEST(CentralStep, DefiningEquationExhaustive) {
  for (const auto& g : catalogue()) {
    auto chain = central_chain(g);
    for (std::size_t L = 0; L < chain.steps.size(); ++L) {
      const auto& G = chain.groups[L];
      const auto& s = chain.steps[L];
      EXPECT_EQ(s.quotient.order() * G.prime(), G.order());
      std::set<Element> reps(s.transversal.begin(), s.transversal.end());
      EXPECT_EQ(s.transversal[0], 0u);
      for (Element rq = 0; rq < s.quotient.order(); ++rq) {
        Element r = s.transversal[rq];
        // lowest-numbered element of its coset
        for (Element z : s.z_powers) EXPECT_LE(r, G.mul(z, r));
        EXPECT_EQ(s.e(rq, s.g0), 1u);
        EXPECT_EQ(s.r(rq, s.g0), r);
        for (Element h = 0; h < G.order(); ++h) {
          EXPECT_EQ(G.mul(r, h), G.mul(G.pow(s.g0, s.e(rq, h)), s.r(rq, h)));
          EXPECT_TRUE(reps.count(s.r(rq, h)));
          EXPECT_EQ(s.e(rq, G.mul(h, s.g0)), (s.e(rq, h) + 1) % G.prime());
        }
      }
    }
  }
}

TEST(CentralChain, Lengths) {
  EXPECT_EQ(central_chain(cyclic_group(5, 1)).steps.size(), 1u);
  auto c4 = central_chain(cyclic_group(2, 2));
  ASSERT_EQ(c4.steps.size(), 2u);
  EXPECT_EQ(c4.groups[1].order(), 2u);
  EXPECT_EQ(c4.groups[2].order(), 1u);
  for (const auto& g : catalogue()) EXPECT_EQ(central_chain(g).steps.size(), g.rank());
}

TEST(CentralChain, HeisenbergQuotientIsElementaryAbelian) {
  auto g = heisenberg_group(3);
  auto chain = central_chain(g);
  ASSERT_EQ(chain.steps.size(), 3u);
  EXPECT_EQ(chain.steps[0].g0, 9u);
  const auto& q = chain.groups[1];
  EXPECT_EQ(q.order(), 9u);
  EXPECT_TRUE(q.is_abelian());
  for (Element a = 1; a < q.order(); ++a) EXPECT_EQ(q.element_order(a), 3u);
}

TEST(CayleyFile, RoundTripAndDiagnostics) {
  auto g = dihedral_group(8);
  std::istringstream good(write_cayley_table(g));
  EXPECT_EQ(read_cayley_table(good), g);

  std::istringstream bad_token("2 2\n0 1\n1 z\n");
  try {
    read_cayley_table(bad_token);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 3, column 3"), std::string::npos) << e.what();
  }

  std::istringstream nonassoc("2 4\n0 1 2 3\n1 0 2 2\n2 3 0 1\n3 2 1 0\n");
  try {
    read_cayley_table(nonassoc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAssociative);
    EXPECT_NE(std::string(e.what()).find("line "), std::string::npos);
  }
}

TEST(Generators, GenerateWholeGroup) {
  for (const auto& g : catalogue()) {
    auto gens = generators(g);
    std::set<Element> closure{0};
    bool grew = true;
    while (grew) {
      grew = false;
      for (Element a : std::set<Element>(closure))
        for (Element s : gens) grew |= closure.insert(g.mul(a, s)).second;
    }
    EXPECT_EQ(closure.size(), g.order());
    EXPECT_LE(gens.size(), g.rank());
  }
}
