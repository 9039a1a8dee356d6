#include "tsalg/cp.hpp"

#include "tsalg/error.hpp"
#include "tsalg/standard.hpp"

namespace tsalg {

namespace {

UPoly upoly_pow(const UPoly& a, std::size_t e, Coeff p) {
  UPoly r{1};
  for (std::size_t i = 0; i < e; ++i) r = upoly_mul(r, a, p);
  trim(r);
  return r;
}

UPoly upoly_add(UPoly a, const UPoly& b, Coeff p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod_add(a[i], b[i], p);
  trim(a);
  return a;
}

UPoly constant_upoly(Coeff c) {
  UPoly r{c};
  trim(r);
  return r;
}

// sum_i weight(i) (T - i)^j over i in [from, p)
UPoly shifted_power_sum(Coeff p, std::size_t j, Coeff from, bool weighted) {
  UPoly sum;
  for (Coeff i = from; i < p; ++i) {
    UPoly term = upoly_pow(UPoly{mod_neg(i, p), 1}, j, p);
    if (weighted)
      for (auto& c : term) c = mod_mul(c, i, p);
    sum = upoly_add(sum, term, p);
  }
  return sum;
}

// the same sums evaluated on y in D_k(C_p), where y . g^i = y - i
bool dehom_sum_agrees(const DehomContext& ctx, const SparsePoly& y, std::size_t j, bool weighted, const UPoly& expect) {
  const Coeff p = ctx.prime();
  SparsePoly yj = pow(y, j);
  SparsePoly sum = ctx.zero();
  for (Element i = weighted ? 1 : 0; i < p; ++i) sum += ctx.act(yj, i).scaled(weighted ? i : 1);
  SparsePoly want = ctx.zero();
  for (std::size_t k = 0; k < expect.size(); ++k) want += pow(y, k).scaled(expect[k]);
  return sum == ctx.normal_form(want);
}

std::vector<CpTableRow> make_table(Coeff p, std::size_t jmax, bool weighted) {
  if (!is_prime(p)) throw Error(ErrorCode::BadParams, "p must be prime");
  DehomContext ctx(cyclic_group(p, 1));
  SparsePoly y = base_case_cp(ctx).y;
  std::vector<CpTableRow> rows;
  for (std::size_t j = 0; j <= jmax; ++j) {
    CpTableRow row;
    row.j = j;
    if (!weighted) {
      if (p == 2 && j == 2) row.closed = constant_upoly(1);
      else if (j == p - 1 || j == 2 * p - 2) row.closed = constant_upoly(p - 1);
    } else {
      if (p == 2) row.closed = upoly_pow(UPoly{1, 1}, j, p);
      else if (j == p - 1) row.closed = UPoly{0, p - 1};
      else if (j == p - 2) row.closed = constant_upoly(1);
    }
    trim(row.closed);
    row.brute = shifted_power_sum(p, j, weighted ? 1 : 0, weighted);
    row.dehom_agrees = dehom_sum_agrees(ctx, y, j, weighted, row.brute);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<CpTableRow> transfer_table(Coeff p, std::size_t jmax) {
  if (jmax > 2 * static_cast<std::size_t>(p) - 2) throw Error(ErrorCode::BadParams, "jmax must be at most 2p - 2");
  return make_table(p, jmax, false);
}

std::vector<CpTableRow> weighted_sum_table(Coeff p, std::size_t jmax) {
  if (jmax > static_cast<std::size_t>(p) - 1) throw Error(ErrorCode::BadParams, "jmax must be at most p - 1");
  return make_table(p, jmax, true);
}

std::vector<SparsePoly> coefficients_in_y(const DehomContext& ctx, const SparsePoly& f) {
  const Coeff p = ctx.prime();
  if (p == 2 || ctx.nvars() != p) throw Error(ErrorCode::BadParams, "needs C_p with p odd");
  SparsePoly y = base_case_cp(ctx).y;
  std::vector<SparsePoly> ypow{ctx.one()};
  for (Coeff i = 1; i < p; ++i) ypow.push_back(ctx.normal_form(ypow.back() * y));
  std::vector<SparsePoly> b(p, ctx.zero());
  for (Coeff i = 0; i < p; ++i) b[i] = -ctx.transfer(ctx.normal_form(f * ypow[p - 1 - i]));
  b[0] += ctx.transfer(f);
  SparsePoly back = ctx.zero();
  for (Coeff i = 0; i < p; ++i) back += ctx.normal_form(b[i] * ypow[i]);
  if (back != ctx.normal_form(f)) throw Error(ErrorCode::ReconstructionFailed, "sum b_i y^i differs from f");
  return b;
}

CpInvariantReport cp_invariant_generators(Coeff p, std::uint64_t seed) {
  if (!is_prime(p)) throw Error(ErrorCode::BadParams, "p must be prime");
  if (p > 7) throw Error(ErrorCode::BadParams, "p must be at most 7");
  DehomContext ctx(cyclic_group(p, 1));
  CpInvariantReport rep;
  rep.p = p;
  rep.y = base_case_cp(ctx).y;
  rep.sigma = ctx.normal_form(pow(rep.y, p) - rep.y);
  rep.generators.push_back(rep.sigma);
  const std::string subject = "cyclic:" + std::to_string(p) + ",1";

  if (p > 2) {
    rep.b = coefficients_in_y(ctx, ctx.x(0));
    for (Coeff i = 0; i + 2 < p; ++i) rep.generators.push_back(rep.b[i]);
    Check top{"cp.top_coefficient", subject, rep.b[p - 1] == ctx.constant(p - 1), "b_{p-1} = -1", "", 0};
    if (!top.pass) top.witness = "b_{p-1} = " + rep.b[p - 1].to_text();
    rep.checks.push_back(top);
    Check next{"cp.second_coefficient", subject, rep.b[p - 2].is_zero(), "b_{p-2} = 0", "", 0};
    if (!next.pass) next.witness = "b_{p-2} = " + rep.b[p - 2].to_text();
    rep.checks.push_back(next);
  }

  Check count{"cp.generator_count", subject, rep.generators.size() == p - 1,
              std::to_string(rep.generators.size()) + " generators for Krull dimension " + std::to_string(p - 1), "", 0};
  if (!count.pass) count.witness = std::to_string(rep.generators.size());
  rep.checks.push_back(count);

  Check inv{"cp.generators_invariant", subject, true, "each generator fixed by the generator of C_p", "", 0};
  for (std::size_t i = 0; i < rep.generators.size() && inv.pass; ++i)
    if (ctx.act(rep.generators[i], 1) != rep.generators[i]) {
      inv.pass = false;
      inv.witness = "generator " + std::to_string(i);
    }
  rep.checks.push_back(inv);

  std::vector<std::size_t> vars;
  for (std::size_t v = 1; v < p; ++v) vars.push_back(v);
  rep.probe = jacobian_rank_probe(rep.generators, vars, 8, seed);
  Check ind{"cp.jacobian_independence", subject, rep.probe.verdict == ProbeVerdict::Independent,
            "jacobian probe over GF(" + std::to_string(p) + "^" + std::to_string(rep.probe.field_degree) + "), " +
                std::to_string(rep.probe.trials_run) + " trials; consistent with a polynomial ring, not a proof of it",
            "", 0};
  if (!ind.pass) ind.witness = "best rank " + std::to_string(rep.probe.best_rank);
  rep.checks.push_back(ind);
  return rep;
}

}  // namespace tsalg
