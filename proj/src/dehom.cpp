#include "tsalg/dehom.hpp"

#include "tsalg/error.hpp"

namespace tsalg {

DehomContext::DehomContext(FiniteGroup g) : group_(std::move(g)) {}

SparsePoly DehomContext::x(Element g) const {
  return normal_form(SparsePoly::variable(prime(), nvars(), g));
}

SparsePoly DehomContext::normal_form(const SparsePoly& f) const {
  if (f.nvars() != nvars() || f.prime() != prime())
    throw Error(ErrorCode::ArityMismatch, "polynomial does not live in this D_k");
  const int top = f.degree_in(0);
  if (top <= 0) return f;
  const Coeff p = prime();
  const std::size_t n = nvars();
  // f = sum_k c_k x_e^k with c_k free of x_e; Horner with x_e = 1 - sum_{g != e} x_g
  std::vector<TermAccumulator> parts;
  for (int k = 0; k <= top; ++k) parts.emplace_back(p, n, f.size() / (top + 1) + 1);
  std::vector<Exponent> buf(n);
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    std::copy(e.begin(), e.end(), buf.begin());
    buf[0] = 0;
    parts[e[0]].add(buf.data(), f.coeff(t));
  }
  SparsePoly r = parts[top].finish();
  for (int k = top - 1; k >= 0; --k) {
    if (r.total_degree() + 1 > degree_cap())
      throw Error(ErrorCode::DegreeCapExceeded, "normal form exceeds the degree cap");
    TermAccumulator acc(p, n, r.size() * n);
    for (std::size_t t = 0; t < r.size(); ++t) {
      auto e = r.exponents(t);
      Coeff c = r.coeff(t), neg = p - c;
      acc.add(e.data(), c);
      std::copy(e.begin(), e.end(), buf.begin());
      for (std::size_t g = 1; g < n; ++g) {
        if (buf[g] == 255) throw Error(ErrorCode::DegreeCapExceeded, "exponent exceeds 255");
        ++buf[g];
        acc.add(buf.data(), neg);
        --buf[g];
      }
    }
    acc.add(parts[k].finish());
    r = acc.finish();
  }
  return r;
}

SparsePoly DehomContext::act(const SparsePoly& f, Element h) const {
  if (f.nvars() != nvars()) throw Error(ErrorCode::ArityMismatch, "polynomial does not live in this D_k");
  if (h == 0) return normal_form(f);
  const std::size_t n = nvars();
  std::vector<Element> target(n);
  for (Element g = 0; g < n; ++g) target[g] = group_.mul(g, h);
  TermAccumulator acc(prime(), n, f.size());
  std::vector<Exponent> buf(n);
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    for (std::size_t g = 0; g < n; ++g) buf[target[g]] = e[g];
    acc.add(buf.data(), f.coeff(t));
  }
  return normal_form(acc.finish());
}

std::vector<SparsePoly> DehomContext::orbit(const SparsePoly& f) const {
  std::vector<SparsePoly> out;
  out.reserve(nvars());
  for (Element h = 0; h < nvars(); ++h) out.push_back(act(f, h));
  return out;
}

SparsePoly DehomContext::relative_transfer(const SparsePoly& f, std::span<const Element> elems) const {
  TermAccumulator acc(prime(), nvars(), f.size() * 2);
  for (Element h : elems) acc.add(act(f, h));
  return acc.finish();
}

SparsePoly DehomContext::transfer(const SparsePoly& f) const {
  std::vector<Element> all(nvars());
  for (Element h = 0; h < nvars(); ++h) all[h] = h;
  return relative_transfer(f, all);
}

std::vector<Coeff> DehomContext::delta_evaluation(const SparsePoly& f) const {
  const Coeff p = prime();
  const std::size_t n = nvars();
  if (f.nvars() != n) throw Error(ErrorCode::ArityMismatch, "polynomial does not live in this D_k");
  Coeff constant = 0;
  std::vector<Coeff> single(n, 0);
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    std::size_t support = 0, var = 0;
    for (std::size_t g = 0; g < n; ++g)
      if (e[g]) {
        ++support;
        var = g;
      }
    // a monomial in two different indicators vanishes at every delta point
    if (support == 0)
      constant = mod_add(constant, f.coeff(t), p);
    else if (support == 1)
      single[var] = mod_add(single[var], f.coeff(t), p);
  }
  for (auto& v : single) v = mod_add(v, constant, p);
  return single;
}

Substitution DehomContext::action_substitution(Element h) const {
  std::vector<SparsePoly> images;
  for (Element g = 0; g < nvars(); ++g) images.push_back(x(group_.mul(g, h)));
  return Substitution(std::move(images), prime(), nvars());
}

Substitution eta_embedding(const CentralStep& step, const DehomContext& g, const DehomContext& q) {
  if (step.proj.size() != g.nvars() || step.quotient.order() != q.nvars())
    throw Error(ErrorCode::ArityMismatch, "central step does not match the contexts");
  std::vector<SparsePoly> images(q.nvars(), g.zero());
  for (Element h = 0; h < g.nvars(); ++h) images[step.proj[h]] += g.x(h);
  return Substitution(std::move(images), g.prime(), g.nvars());
}

}  // namespace tsalg
