#include "tsalg/jacobian.hpp"

#include <numeric>
#include <random>

#include "tsalg/error.hpp"
#include "tsalg/gf.hpp"

namespace tsalg {

std::string_view to_string(ProbeVerdict v) {
  return v == ProbeVerdict::Independent ? "independent" : "inconclusive";
}

namespace {

using Elem = ExtField::Elem;

Elem eval_at(const ExtField& F, const SparsePoly& f, const std::vector<std::vector<Elem>>& powers) {
  Elem total = F.zero();
  for (std::size_t t = 0; t < f.size(); ++t) {
    Elem v = F.from_base(f.coeff(t));
    auto e = f.exponents(t);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) v = F.mul(v, powers[i][e[i]]);
    total = F.add(total, v);
  }
  return total;
}

std::size_t rank_over(const ExtField& F, std::vector<std::vector<Elem>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && F.is_zero(m[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    Elem inv = F.inv(m[rank][c]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (F.is_zero(m[i][c])) continue;
      Elem f = F.mul(m[i][c], inv);
      for (std::size_t j = c; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

ProbeResult jacobian_rank_probe(std::span<const SparsePoly> fs, std::span<const std::size_t> vars,
                                std::size_t trials, std::uint64_t seed) {
  ProbeResult res;
  if (fs.empty()) {
    res.verdict = ProbeVerdict::Independent;
    return res;
  }
  const Coeff p = fs[0].prime();
  const std::size_t n = fs[0].nvars();
  for (const auto& f : fs)
    if (f.prime() != p || f.nvars() != n) throw Error(ErrorCode::ArityMismatch, "probe inputs");
  if (vars.size() < fs.size()) throw Error(ErrorCode::ArityMismatch, "fewer variables than polynomials");
  for (auto v : vars)
    if (v >= n) throw Error(ErrorCode::ArityMismatch, "probe variable out of range");

  std::vector<std::vector<SparsePoly>> jac(fs.size());
  long det_degree = 0;
  int max_exp = 1;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    det_degree += std::max(fs[i].total_degree() - 1, 0);
    for (auto v : vars) jac[i].push_back(derivative(fs[i], v));
    for (std::size_t t = 0; t < fs[i].size(); ++t)
      for (auto e : fs[i].exponents(t)) max_exp = std::max<int>(max_exp, e);
  }
  // field size above 4 * degree bound of the determinant
  std::size_t k = 1;
  for (std::uint64_t q = p; q <= 4 * static_cast<std::uint64_t>(std::max<long>(det_degree, 1)); q *= p) ++k;
  res.field_degree = k;
  ExtField F(p, k);
  std::mt19937_64 rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    ++res.trials_run;
    std::vector<std::vector<Elem>> powers(n);
    for (std::size_t i = 0; i < n; ++i) {
      Elem x = F.random(rng);
      powers[i].push_back(F.from_base(1));
      for (int e = 1; e <= max_exp; ++e) powers[i].push_back(F.mul(powers[i].back(), x));
    }
    std::vector<std::vector<Elem>> m(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (const auto& d : jac[i]) m[i].push_back(eval_at(F, d, powers));
    std::size_t r = rank_over(F, std::move(m));
    res.best_rank = std::max(res.best_rank, r);
    if (r == fs.size()) {
      res.verdict = ProbeVerdict::Independent;
      return res;
    }
  }
  return res;
}

ProbeResult jacobian_rank_probe(std::span<const SparsePoly> fs, std::size_t trials, std::uint64_t seed) {
  const std::size_t n = fs.empty() ? 0 : fs[0].nvars();
  if (fs.size() != n) throw Error(ErrorCode::ArityMismatch, "square system expected");
  std::vector<std::size_t> vars(n);
  std::iota(vars.begin(), vars.end(), 0);
  return jacobian_rank_probe(fs, vars, trials, seed);
}

}  // namespace tsalg
