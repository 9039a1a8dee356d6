#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "tsalg/error.hpp"
#include "tsalg/poly.hpp"
#include "tsalg/serialize.hpp"

using namespace tsalg;
using testutil::random_poly;

namespace {

SparsePoly var(Coeff p, std::size_t n, std::size_t i) { return SparsePoly::variable(p, n, i); }
SparsePoly cst(Coeff p, std::size_t n, Coeff c) { return SparsePoly::constant(p, n, c); }

}  // namespace

TEST(PolyArith, FreshmansDreamOverF2) {
  auto x = var(2, 1, 0), one = cst(2, 1, 1);
  EXPECT_EQ((x + one) * (x + one), x * x + one);
}

TEST(PolyArith, AdditiveInverse) {
  std::mt19937_64 rng(1);
  auto f = random_poly(rng, 5, 3, 4, 10);
  EXPECT_TRUE((f + (-f)).is_zero());
  EXPECT_TRUE((f - f).is_zero());
}

TEST(PolyArith, CrossTermVanishesOverF3) {
  auto x = var(3, 2, 0), y = var(3, 2, 1);
  auto lhs = (x + y.scaled(2)) * (x + y);
  EXPECT_EQ(lhs, x * x + (y * y).scaled(2));
}

TEST(PolyArith, MismatchedOperandsRejected) {
  auto a = var(3, 2, 0), b = var(3, 3, 0), c = var(5, 2, 0);
  try {
    (void)(a + b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
  }
  EXPECT_THROW((void)(a * c), Error);
}

TEST(PolyArith, MulMatchesTermMapOracle) {
  std::mt19937_64 rng(7);
  for (Coeff p : {2u, 3u, 5u, 7u})
    for (int trial = 0; trial < 40; ++trial) {
      auto a = random_poly(rng, p, 4, 4, 12), b = random_poly(rng, p, 4, 4, 12);
      EXPECT_EQ(testutil::to_map(a * b),
                testutil::naive_mul(testutil::to_map(a), testutil::to_map(b), p));
    }
}

TEST(PolyArith, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (Coeff p : {2u, 3u, 5u})
    for (std::size_t n = 1; n <= 4; ++n)
      for (int trial = 0; trial < 15; ++trial) {
        auto a = random_poly(rng, p, n, 4, 8), b = random_poly(rng, p, n, 4, 8),
             c = random_poly(rng, p, n, 4, 8);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
      }
}

TEST(PolyPow, FrobeniusOverF3) {
  auto x = var(3, 2, 0), y = var(3, 2, 1);
  EXPECT_EQ(pow(x + y.scaled(2), 3), pow(x, 3) + pow(y, 3).scaled(2));
}

TEST(PolyPow, ZeroExponentIsOne) {
  std::mt19937_64 rng(3);
  auto f = random_poly(rng, 3, 2, 3, 5);
  EXPECT_EQ(pow(f, 0), cst(3, 2, 1));
  EXPECT_EQ(pow(SparsePoly(3, 2), 0), cst(3, 2, 1));
}

TEST(PolyPow, TwoFrobeniusStepsOverF2) {
  auto x = var(2, 2, 0), y = var(2, 2, 1);
  auto fast = pow(x + y, 4);
  EXPECT_EQ(fast, testutil::naive_pow(x + y, 4));
  EXPECT_EQ(fast, pow(x, 4) + pow(y, 4));
}

TEST(PolyPow, FrobeniusPathMatchesNaivePowering) {
  std::mt19937_64 rng(5);
  for (Coeff p : {2u, 3u})
    for (int trial = 0; trial < 30; ++trial) {
      auto f = random_poly(rng, p, 3, 2, 20);
      for (unsigned e : {1u, 2u, 3u, 4u, 6u, 9u}) EXPECT_EQ(pow(f, e), testutil::naive_pow(f, e));
    }
}

TEST(PolyPow, DegreeCapAborts) {
  auto x = var(2, 1, 0);
  try {
    (void)pow(x, 65);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeCapExceeded);
  }
  set_degree_cap(128);
  EXPECT_EQ(pow(x, 65).total_degree(), 65);
  set_degree_cap(64);
}

TEST(Substitute, AffineImage) {
  auto x0 = var(3, 1, 0);
  Substitution s({cst(3, 2, 1) - var(3, 2, 1)}, 3, 2);
  EXPECT_EQ(substitute(x0, s), cst(3, 2, 1) - var(3, 2, 1));
}

TEST(Substitute, IsRingHomomorphism) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_poly(rng, 3, 2, 3, 6), g = random_poly(rng, 3, 2, 3, 6);
    Substitution s({random_poly(rng, 3, 3, 2, 4), random_poly(rng, 3, 3, 2, 4)}, 3, 3);
    EXPECT_EQ(substitute(f * g, s), substitute(f, s) * substitute(g, s));
    EXPECT_EQ(substitute(f + g, s), substitute(f, s) + substitute(g, s));
  }
}

TEST(Substitute, CompositionOrder) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_poly(rng, 3, 2, 3, 6);
    Substitution t({random_poly(rng, 3, 3, 2, 4), random_poly(rng, 3, 3, 2, 4)}, 3, 3);
    Substitution s({random_poly(rng, 3, 2, 2, 4), random_poly(rng, 3, 2, 2, 4),
                    random_poly(rng, 3, 2, 2, 4)},
                   3, 2);
    EXPECT_EQ(substitute(f, compose(s, t)), substitute(substitute(f, t), s));
  }
}

TEST(Substitute, ArityChecked) {
  Substitution s({var(3, 2, 0)}, 3, 2);
  EXPECT_THROW(substitute(var(3, 2, 0), s), Error);
}

TEST(PolyText, CanonicalForm) {
  auto x = var(3, 3, 0), y = var(3, 3, 1), z = var(3, 3, 2);
  auto f = x * y + z.scaled(2) * z * z + cst(3, 3, 1) + x * x;
  // graded: degree 3 first, then degree 2 ordered by the larger exponent on x0
  EXPECT_EQ(f.to_text(), "2*x2^3 + 1*x0^2 + 1*x0^1*x1^1 + 1");
  EXPECT_EQ(SparsePoly(3, 3).to_text(), "0");
  EXPECT_EQ(cst(3, 3, 2).to_text(), "2");
}

TEST(PolyText, RoundTripIsExact) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_poly(rng, 5, 4, 5, 10);
    auto text = f.to_text("Y");
    auto g = SparsePoly::from_text(text, 5, 4, "Y");
    EXPECT_EQ(f, g);
    EXPECT_EQ(g.to_text("Y"), text);
  }
}

TEST(PolyText, MalformedInputRejected) {
  EXPECT_THROW(SparsePoly::from_text("1*x5^1", 3, 2), Error);
  EXPECT_THROW(SparsePoly::from_text("1 + + 2", 3, 2), Error);
  EXPECT_THROW(SparsePoly::from_text("q", 3, 2), Error);
}

TEST(PolyMisc, DerivativeAndEvaluation) {
  auto x = var(5, 2, 0), y = var(5, 2, 1);
  auto f = pow(x, 3) * y + y.scaled(4);
  EXPECT_EQ(derivative(f, 0), (x * x * y).scaled(3));
  EXPECT_EQ(derivative(f, 1), pow(x, 3) + cst(5, 2, 4));
  std::vector<Coeff> pt{2, 3};
  EXPECT_EQ(evaluate(f, pt), (8 * 3 + 12) % 5u);
  EXPECT_TRUE(derivative(pow(x, 5), 0).is_zero());
}

TEST(PolyMisc, ShiftVars) {
  auto f = var(3, 2, 0) * var(3, 2, 1) + cst(3, 2, 1);
  auto g = shift_vars(f, 4, 1);
  EXPECT_EQ(g, var(3, 4, 1) * var(3, 4, 2) + cst(3, 4, 1));
}

TEST(PolyMisc, CoeffLookup) {
  std::mt19937_64 rng(23);
  auto f = random_poly(rng, 7, 3, 4, 15);
  for (std::size_t t = 0; t < f.size(); ++t) EXPECT_EQ(f.coeff_of(f.exponents(t)), f.coeff(t));
  std::vector<Exponent> absent{9, 9, 9};
  EXPECT_EQ(f.coeff_of(absent), 0u);
}

TEST(Json, RoundTripIsExact) {
  std::mt19937_64 rng(41);
  for (Coeff p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 30; ++trial) {
      auto f = random_poly(rng, p, 4, 5, 12);
      Json j = poly_to_json(f);
      std::string text = j.dump();
      EXPECT_EQ(poly_from_json(Json::parse(text)), f);
      EXPECT_EQ(poly_to_json(poly_from_json(Json::parse(text))).dump(), text);
    }
  }
}

TEST(Json, Shape) {
  auto f = SparsePoly::from_text("2*x1^2 + 1", 3, 2);
  EXPECT_EQ(poly_to_json(f).dump(), R"({"p":3,"nvars":2,"terms":[[2,[0,2]],[1,[0,0]]]})");
}

TEST(Json, RejectsMalformed) {
  for (const char* bad : {R"({"p":4,"nvars":1,"terms":[]})", R"({"p":3,"nvars":1,"terms":[[3,[1]]]})",
                          R"({"p":3,"nvars":2,"terms":[[1,[1]]]})", R"({"p":3,"nvars":1})",
                          R"({"p":3,"nvars":1,"terms":[[1,[300]]]})"}) {
    try {
      poly_from_json(Json::parse(bad));
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
  }
}
