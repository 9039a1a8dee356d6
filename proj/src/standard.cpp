#include "tsalg/standard.hpp"

#include <sstream>

#include "tsalg/error.hpp"

namespace tsalg {

namespace {

SparsePoly sum_all(std::span<const SparsePoly> fs, Coeff p, std::size_t nvars) {
  TermAccumulator acc(p, nvars);
  for (const auto& f : fs) acc.add(f);
  return acc.finish();
}

// Lower action and orbit of the lower point, moved into n = lower.n + 1 variables.
struct LevelContext {
  const CentralStep& step;
  const StandardAlgebraData& lower;
  Coeff p;
  std::size_t n;
  std::vector<SparsePoly> w_orbit;  // shifted (w' . q) per quotient element

  LevelContext(const CentralStep& s, const StandardAlgebraData& l)
      : step(s), lower(l), p(l.p), n(l.n + 1) {
    const std::size_t q = s.quotient.order();
    w_orbit.reserve(q);
    for (Element e = 0; e < q; ++e) w_orbit.push_back(shift_vars(l.act(l.point, e), n, 1));
  }

  SparsePoly lift(const SparsePoly& f) const { return shift_vars(f, n, 1); }

  SparsePoly act_lower(const SparsePoly& f, Element q) const {
    // f has no Y_0; act on the lower ring and shift back
    std::vector<SparsePoly> images;
    images.reserve(n);
    images.push_back(SparsePoly::variable(p, n, 0));
    for (std::size_t i = 0; i < lower.n; ++i) images.push_back(lift(lower.action[q][i]));
    return substitute(f, Substitution(std::move(images), p, n));
  }

  // alpha(h) = sum_q e(q, h) * (w' . q proj(h))
  std::vector<SparsePoly> alphas() const {
    const std::size_t m = step.proj.size();
    const std::size_t qn = step.quotient.order();
    std::vector<SparsePoly> out;
    out.reserve(m);
    for (Element h = 0; h < m; ++h) {
      TermAccumulator acc(p, n);
      for (Element q = 0; q < qn; ++q) {
        Coeff e = step.e(q, h);
        if (e) acc.add(w_orbit[step.quotient.mul(q, step.proj[h])], e);
      }
      out.push_back(acc.finish());
    }
    return out;
  }
};

CocycleSolution solve_level(const LevelContext& lc, const std::vector<SparsePoly>& alpha) {
  const auto& step = lc.step;
  const std::size_t qn = step.quotient.order();
  CocycleSolution sol;
  auto beta_of = [&](Element h) { return alpha[h] - frobenius(alpha[h]); };
  sol.beta.reserve(qn);
  for (Element q = 0; q < qn; ++q) sol.beta.push_back(beta_of(step.transversal[q]));

  // beta must be constant on cosets of Z
  for (Element h = 0; h < step.proj.size(); ++h) {
    if (beta_of(h) != sol.beta[step.proj[h]]) {
      std::ostringstream msg;
      msg << "beta is not constant on the coset of element " << h;
      throw Error(ErrorCode::CocycleUnsolved, msg.str());
    }
  }

  TermAccumulator acc(lc.p, lc.n);
  for (Element q = 0; q < qn; ++q) acc.add(sol.beta[q] * lc.w_orbit[q], lc.p - 1);
  sol.gamma = acc.finish();

  for (Element q = 0; q < qn; ++q) {
    if (lc.act_lower(sol.gamma, q) - sol.gamma != sol.beta[q]) {
      std::ostringstream msg;
      msg << "gamma . q - gamma != beta(q) for quotient element " << q;
      throw Error(ErrorCode::CocycleUnsolved, msg.str());
    }
  }
  return sol;
}

}  // namespace

CpBase base_case_cp(const DehomContext& ctx) {
  const Coeff p = ctx.prime();
  if (ctx.nvars() != p) throw Error(ErrorCode::WrongOrder, "base case needs a cyclic group of order p");
  SparsePoly y = ctx.zero();
  for (Element i = 1; i < p; ++i) y += ctx.x(i).scaled(i);
  SparsePoly w = -pow(y, p - 1);
  return {y, w};
}

SparsePoly lift_y0(const CentralStep& step, const DehomContext& ctx) {
  const Coeff p = ctx.prime();
  SparsePoly y = ctx.zero();
  for (Coeff i = 1; i < p; ++i)
    y += ctx.relative_transfer(ctx.x(step.z_powers[i]), step.transversal).scaled(i);
  return y;
}

SparsePoly lift_point(const DehomContext& ctx, const SparsePoly& y0, const SparsePoly& w_prime_embedded) {
  const Coeff p = ctx.prime();
  SparsePoly w = ctx.normal_form(-(pow(y0, p - 1) * w_prime_embedded));
  if (ctx.transfer(w) != ctx.one()) throw Error(ErrorCode::PointCheckFailed, "transfer of the lifted point is not 1");
  return w;
}

Substitution theta_substitution(const DehomContext& ctx, const SparsePoly& w) {
  std::vector<SparsePoly> images;
  images.reserve(ctx.nvars());
  for (Element g = 0; g < ctx.nvars(); ++g) images.push_back(ctx.act(w, g));
  return Substitution(std::move(images), ctx.prime(), ctx.nvars());
}

Reflexified reflexify(const DehomContext& ctx, const SparsePoly& w, const std::optional<SparsePoly>& y0) {
  if (ctx.transfer(w) != ctx.one()) throw Error(ErrorCode::PointCheckFailed, "transfer of the point is not 1");
  const Substitution theta = theta_substitution(ctx, w);
  Reflexified out{w, y0};
  for (Coeff i = 0; i + 1 < ctx.prime(); ++i) {
    out.point = ctx.normal_form(substitute(out.point, theta));
    if (out.y0) out.y0 = ctx.normal_form(substitute(*out.y0, theta));
  }
  const Substitution again = theta_substitution(ctx, out.point);
  if (ctx.normal_form(substitute(out.point, again)) != out.point)
    throw Error(ErrorCode::NotIdempotent, "reflexified point is not fixed by its own theta");
  return out;
}

std::vector<SparsePoly> abstract_action(const CentralStep& step, const StandardAlgebraData& lower) {
  LevelContext lc(step, lower);
  auto alpha = lc.alphas();
  std::vector<SparsePoly> out;
  out.reserve(alpha.size());
  for (auto& a : alpha) out.push_back(SparsePoly::variable(lc.p, lc.n, 0) - a);
  return out;
}

CocycleSolution solve_cocycle(const CentralStep& step, const StandardAlgebraData& lower) {
  LevelContext lc(step, lower);
  return solve_level(lc, lc.alphas());
}

namespace {

StandardAlgebraData trivial_data(Coeff p) {
  StandardAlgebraData d;
  d.p = p;
  d.n = 0;
  d.group = trivial_group(p);
  d.action.push_back(Substitution::identity(p, 0));
  d.point = SparsePoly::constant(p, 0, 1);
  return d;
}

StandardAlgebraData extend(const FiniteGroup& g, CentralStep step, std::shared_ptr<const StandardAlgebraData> lower) {
  LevelContext lc(step, *lower);
  const Coeff p = lc.p;
  const std::size_t n = lc.n;
  auto alpha = lc.alphas();
  CocycleSolution sol = solve_level(lc, alpha);

  StandardAlgebraData d;
  d.p = p;
  d.n = n;
  d.group = g;
  const SparsePoly y0 = SparsePoly::variable(p, n, 0);
  d.action.reserve(g.order());
  for (Element h = 0; h < g.order(); ++h) {
    std::vector<SparsePoly> images;
    images.reserve(n);
    images.push_back(y0 - alpha[h]);
    for (std::size_t i = 0; i < lower->n; ++i) images.push_back(lc.lift(lower->action[step.proj[h]][i]));
    d.action.emplace_back(std::move(images), p, n);
  }

  d.gamma.push_back(sol.gamma);
  d.sigma.push_back(y0 - frobenius(y0) + sol.gamma);
  for (std::size_t i = 0; i < lower->n; ++i) {
    d.gamma.push_back(lc.lift(lower->gamma[i]));
    d.sigma.push_back(lc.lift(lower->sigma[i]));
  }

  SparsePoly corr(p, n);
  if (p > 2) {
    const auto& qg = step.quotient;
    TermAccumulator acc(p, n);
    for (Element q = 0; q < qg.order(); ++q) {
      TermAccumulator inner(p, n);
      for (Element q2 = 0; q2 < qg.order(); ++q2) {
        Coeff e = step.e(q2, step.transversal[q]);
        if (e) inner.add(lc.w_orbit[qg.mul(q2, q)], e);
      }
      acc.add(inner.finish() * lc.w_orbit[q]);
    }
    corr = acc.finish();
  }
  d.correction.push_back(std::move(corr));
  for (std::size_t i = 0; i < lower->n; ++i) d.correction.push_back(lc.lift(lower->correction[i]));

  d.point = -(pow(y0, p - 1) * lc.w_orbit[0]);
  d.beta = std::move(sol.beta);
  d.step = std::move(step);
  d.lower = std::move(lower);
  return d;
}

std::shared_ptr<const StandardAlgebraData> build_chain(const FiniteGroup& g) {
  if (g.order() == 1) return std::make_shared<const StandardAlgebraData>(trivial_data(g.prime()));
  CentralStep step = central_step(g, default_central_element(g));
  auto lower = build_chain(step.quotient);
  return std::make_shared<const StandardAlgebraData>(extend(g, std::move(step), std::move(lower)));
}

}  // namespace

StandardAlgebraData build_standard(const FiniteGroup& g, const BuildOptions& opts) {
  StandardAlgebraData d = *build_chain(g);
  if (opts.verify_embedding) d.embedding = concrete_embedding(d, opts.point_budget);
  return d;
}

RecipeValues evaluate_recipe(const StandardAlgebraData& data, std::span<const SparsePoly> images,
                             bool all_shifts, double point_budget) {
  const auto& g = data.group;
  if (images.size() != g.order()) throw Error(ErrorCode::ArityMismatch, "one image per group element expected");
  const Coeff p = data.p;
  const std::size_t tn = images[0].nvars();
  const std::size_t shifts = all_shifts ? g.order() : 1;
  RecipeValues out;

  if (data.n == 0) {
    out.y.assign(1, {});
    out.w.push_back(images[0]);
    return out;
  }

  const CentralStep& step = *data.step;
  const auto& qg = step.quotient;
  std::vector<SparsePoly> psi(qg.order(), SparsePoly(p, tn));
  {
    std::vector<TermAccumulator> accs(qg.order(), TermAccumulator(p, tn));
    for (Element h = 0; h < g.order(); ++h) accs[step.proj[h]].add(images[h]);
    for (Element q = 0; q < qg.order(); ++q) psi[q] = accs[q].finish();
  }
  const RecipeValues lower = evaluate_recipe(*data.lower, psi, true);

  // value of y_0 . h
  std::vector<SparsePoly> y0(g.order());
  for (Element h = 0; h < g.order(); ++h) {
    TermAccumulator acc(p, tn);
    for (Element q = 0; q < qg.order(); ++q) {
      Element rh = g.mul(step.transversal[q], h);
      for (Coeff i = 1; i < p; ++i) acc.add(images[g.mul(step.z_powers[i], rh)], i);
    }
    y0[h] = acc.finish();
  }

  const bool corrected = p > 2 && !data.correction[0].is_zero();
  out.y.resize(shifts);
  out.w.resize(shifts);
  for (Element s = 0; s < shifts; ++s) {
    const Element ps = step.proj[s];
    TermAccumulator acc(p, tn);
    if (p == 2) acc.add(SparsePoly::constant(p, tn, 1));
    for (Element q = 0; q < qg.order(); ++q) {
      Element rs = g.mul(step.transversal[q], s);
      acc.add(y0[rs] * lower.w[step.proj[rs]]);
    }
    SparsePoly yt = acc.finish();
    if (corrected) {
      std::vector<SparsePoly> sub;
      sub.reserve(data.n);
      sub.emplace_back(p, tn);
      for (const auto& v : lower.y[ps]) sub.push_back(v);
      yt -= substitute(data.correction[0], Substitution(std::move(sub), p, tn)).scaled(p - 2);
    }

    const bool top_point = s == 0 || all_shifts;
    if (top_point) {
      double cost = static_cast<double>(lower.w[ps].size());
      for (Coeff i = 1; i < p; ++i) cost *= static_cast<double>(std::max<std::size_t>(yt.size(), 1));
      if (cost > point_budget) {
        out.point_skipped = true;
      } else {
        out.w[s] = -(pow(yt, p - 1) * lower.w[ps]);
      }
    }
    out.y[s].reserve(data.n);
    out.y[s].push_back(std::move(yt));
    for (const auto& v : lower.y[ps]) out.y[s].push_back(v);
  }
  return out;
}

Embedding concrete_embedding(const StandardAlgebraData& data, double point_budget) {
  DehomContext ctx(data.group);
  std::vector<SparsePoly> xs;
  xs.reserve(ctx.nvars());
  for (Element g = 0; g < ctx.nvars(); ++g) xs.push_back(ctx.x(g));
  RecipeValues v = evaluate_recipe(data, xs, false, point_budget);
  Embedding e;
  e.y = std::move(v.y[0]);
  if (v.point_skipped) {
    std::ostringstream msg;
    msg << "concrete point not materialized: estimated term products exceed " << point_budget;
    e.point_note = msg.str();
  } else {
    e.point = std::move(v.w[0]);
  }
  return e;
}

SparsePoly direct_product_point(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.prime() != h.prime()) throw Error(ErrorCode::BadParams, "factors over different primes");
  DehomContext ctx(direct_product(g, h));
  std::vector<SparsePoly> xs, ys;
  for (Element a = 0; a < g.order(); ++a) xs.push_back(ctx.x(static_cast<Element>(a * h.order())));
  for (Element b = 0; b < h.order(); ++b) ys.push_back(ctx.x(b));
  SparsePoly x1 = sum_all(xs, ctx.prime(), ctx.nvars());
  SparsePoly y1 = sum_all(ys, ctx.prime(), ctx.nvars());
  return ctx.normal_form(x1 * y1);
}

}  // namespace tsalg
