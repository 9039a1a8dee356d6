#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "tsalg/gf.hpp"
#include "tsalg/jacobian.hpp"
#include "tsalg/linalg.hpp"

using namespace tsalg;

TEST(Matrix, RankAndKernel) {
  Matrix m(3, 3, 4);
  // second row = 2 * first row
  Coeff rows[3][4] = {{1, 2, 0, 1}, {2, 1, 0, 2}, {0, 0, 1, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = rows[i][j];
  EXPECT_EQ(m.rank(), 2u);
  Matrix k = m.kernel();
  EXPECT_EQ(k.rows(), 2u);
  for (std::size_t r = 0; r < k.rows(); ++r) {
    auto v = m.apply(k.row(r));
    for (auto c : v) EXPECT_EQ(c, 0u);
  }
}

TEST(Matrix, RandomKernelDimension) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Coeff> d(0, 4);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m(5, 6, 9);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 9; ++j) m.at(i, j) = d(rng);
    Matrix k = m.kernel();
    EXPECT_EQ(k.rows() + m.rank(), 9u);
    EXPECT_EQ(k.rank(), k.rows());
  }
}

TEST(Matrix, ProductAssociates) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Coeff> d(0, 6);
  auto rnd = [&](std::size_t r, std::size_t c) {
    Matrix m(7, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = d(rng);
    return m;
  };
  auto a = rnd(3, 4), b = rnd(4, 5), c = rnd(5, 2);
  EXPECT_EQ((a * b) * c, a * (b * c));
  EXPECT_EQ(Matrix::identity(7, 3) * a, a);
}

TEST(PolyEchelon, RankOfDependentFamily) {
  auto x = SparsePoly::variable(3, 2, 0), y = SparsePoly::variable(3, 2, 1);
  auto one = SparsePoly::constant(3, 2, 1);
  std::vector<SparsePoly> fs{x + y, x - y, x.scaled(2) + one, one, x};
  EXPECT_EQ(poly_rank(fs), 3u);
  PolyEchelon e;
  EXPECT_TRUE(e.insert(x * y + one));
  EXPECT_TRUE(e.insert(one));
  EXPECT_TRUE(e.reduce(x * y).is_zero());
  EXPECT_FALSE(e.reduce(x).is_zero());
}

TEST(PolyEchelon, MatchesDenseRank) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SparsePoly> fs;
    for (int i = 0; i < 6; ++i) fs.push_back(testutil::random_poly(rng, 2, 2, 2, 3));
    // dense oracle over the monomials of degree <= 2 in two variables
    std::vector<std::vector<Exponent>> monos = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    Matrix m(2, fs.size(), monos.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = 0; j < monos.size(); ++j) m.at(i, j) = fs[i].coeff_of(monos[j]);
    EXPECT_EQ(poly_rank(fs), m.rank());
  }
}

TEST(ExtField, IrreduciblesAndInverses) {
  EXPECT_TRUE(is_irreducible(UPoly{1, 1, 1}, 2));
  EXPECT_FALSE(is_irreducible(UPoly{1, 0, 1}, 2));
  EXPECT_FALSE(is_irreducible(UPoly{0, 1, 1}, 3));
  for (Coeff p : {2u, 3u, 5u})
    for (std::size_t k = 1; k <= 5; ++k) {
      auto f = find_irreducible(p, k);
      EXPECT_EQ(f.size(), k + 1);
      EXPECT_TRUE(is_irreducible(f, p));
    }
  ExtField F(3, 4);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    auto a = F.random(rng);
    if (F.is_zero(a)) continue;
    EXPECT_EQ(F.mul(a, F.inv(a)), F.from_base(1));
  }
}

TEST(ExtField, IrreducibilityAgainstRootlessCubics) {
  // a cubic over F_p is irreducible iff it has no root
  for (Coeff p : {2u, 3u, 5u})
    for (Coeff a = 0; a < p; ++a)
      for (Coeff b = 0; b < p; ++b)
        for (Coeff c = 0; c < p; ++c) {
          UPoly f{c, b, a, 1};
          bool root = false;
          for (Coeff x = 0; x < p; ++x)
            root |= (x * x % p * x + a * x % p * x + b * x + c) % p == 0;
          EXPECT_EQ(is_irreducible(f, p), !root);
        }
}

TEST(JacobianProbe, Examples) {
  auto x = SparsePoly::variable(5, 2, 0), y = SparsePoly::variable(5, 2, 1);
  std::vector<SparsePoly> xy{x, y};
  EXPECT_EQ(jacobian_rank_probe(xy, 5, 1).verdict, ProbeVerdict::Independent);

  auto t = SparsePoly::variable(3, 1, 0);
  std::vector<SparsePoly> frob{pow(t, 3)};
  auto r = jacobian_rank_probe(frob, 5, 1);
  EXPECT_EQ(r.verdict, ProbeVerdict::Inconclusive);
  EXPECT_EQ(r.trials_run, 5u);

  std::vector<SparsePoly> sigma{pow(t, 3) - t};
  EXPECT_EQ(jacobian_rank_probe(sigma, 5, 1).verdict, ProbeVerdict::Independent);

  // dependent pair: y = x^2 never certified
  std::vector<SparsePoly> dep{x, x * x};
  EXPECT_EQ(jacobian_rank_probe(dep, 8, 2).verdict, ProbeVerdict::Inconclusive);
}

TEST(JacobianProbe, FieldExceedsDegreeBound) {
  auto x = SparsePoly::variable(2, 2, 0), y = SparsePoly::variable(2, 2, 1);
  std::vector<SparsePoly> fs{pow(x, 5) + y, pow(y, 7) + x};
  auto r = jacobian_rank_probe(fs, 3, 4);
  // determinant degree bound 4 + 6 = 10, so 2^k > 40
  EXPECT_GE(r.field_degree, 6u);
  EXPECT_EQ(r.verdict, ProbeVerdict::Independent);
}
