#include "tsalg/report.hpp"

#include <sstream>

namespace tsalg {

namespace {

constexpr std::size_t kMaxPrintedTerms = 2000;

Json poly_entry(const SparsePoly& f, std::string_view prefix) {
  Json j;
  j["terms"] = f.size();
  j["degree"] = f.is_zero() ? -1 : f.total_degree();
  if (f.size() <= kMaxPrintedTerms) {
    j["text"] = f.to_text(prefix);
    j["poly"] = poly_to_json(f);
  }
  return j;
}

const char* kConventions[] = {
    "Y_i are the generators of the standard subalgebra; the group acts on the right, (f.a).b = f.(ab).",
    "sigma_i = Y_i - Y_i^p + gamma_i; the central element g0 of each level sends Y_0 to Y_0 - 1.",
    "Concrete polynomials live in D_k(G) with x_e eliminated by x_e = 1 - sum of the other x_g.",
    "Statements about Krull dimension of infinite rings are covered only through the finite checks in this report.",
};

}  // namespace

Json checks_to_json(const Checks& cs, bool timings) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back(check_to_json(c, timings));
  return a;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    rows.push_back(std::vector<Coeff>(row.begin(), row.end()));
  }
  return rows;
}

std::string upoly_text(const UPoly& f) {
  std::ostringstream s;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (!f[i]) continue;
    if (!first) s << " + ";
    first = false;
    if (i == 0 || f[i] != 1) s << f[i];
    if (i > 0) s << (f[i] != 1 ? "*" : "") << "T" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return first ? "0" : s.str();
}

Json construction_report(const std::string& label, const StandardAlgebraData& d, const Checks& checks,
                         bool timings) {
  Json j;
  j["schema"] = 1;
  j["kind"] = "construction";
  j["group"] = {{"spec", label}, {"p", d.p}, {"order", d.group.order()}, {"rank", d.n},
                {"table", d.group.table()}};

  Json chain = Json::array();
  for (const StandardAlgebraData* lv = &d; lv->step; lv = lv->lower.get()) {
    chain.push_back({{"order", lv->group.order()},
                     {"central_element", lv->step->g0},
                     {"transversal", lv->step->transversal},
                     {"projection", lv->step->proj}});
  }
  j["chain"] = std::move(chain);

  Json gens = Json::array();
  for (std::size_t i = 0; i < d.n; ++i) gens.push_back("Y" + std::to_string(i));
  j["generators"] = std::move(gens);

  Json action = Json::array();
  for (Element h = 0; h < d.group.order(); ++h) {
    Json images = Json::array();
    for (std::size_t i = 0; i < d.n; ++i) images.push_back(d.action[h][i].to_text("Y"));
    action.push_back({{"element", h}, {"images", std::move(images)}});
  }
  j["action"] = std::move(action);

  Json sigma = Json::array();
  for (std::size_t i = 0; i < d.n; ++i)
    sigma.push_back({{"index", i}, {"sigma", poly_entry(d.sigma[i], "Y")}, {"gamma", poly_entry(d.gamma[i], "Y")}});
  j["relations"] = std::move(sigma);
  j["point"] = poly_entry(d.point, "Y");

  if (d.embedding) {
    Json e;
    Json ys = Json::array();
    for (const auto& y : d.embedding->y) ys.push_back(poly_entry(y, "x"));
    e["generators"] = std::move(ys);
    if (d.embedding->point)
      e["point"] = poly_entry(*d.embedding->point, "x");
    else
      e["point_note"] = d.embedding->point_note;
    j["embedding"] = std::move(e);
  }
  j["checks"] = checks_to_json(checks, timings);
  j["ok"] = all_pass(checks);
  j["conventions"] = kConventions;
  return j;
}

std::string construction_summary(const std::string& label, const StandardAlgebraData& d, const Checks& checks) {
  std::ostringstream s;
  s << "group " << label << ": order " << d.group.order() << ", p = " << d.p << ", " << d.n << " generators\n";
  for (Element h : generators(d.group)) {
    s << "element " << h << ":\n";
    for (std::size_t i = 0; i < d.n; ++i) s << "  Y" << i << " -> " << d.action[h][i].to_text("Y") << "\n";
  }
  for (std::size_t i = 0; i < d.n; ++i) {
    std::string t = d.sigma[i].to_text("Y");
    if (t.size() > 400) t = t.substr(0, 400) + "...";
    s << "sigma" << i << " = " << t << "\n";
  }
  std::size_t passed = 0;
  for (const auto& c : checks) {
    passed += c.pass;
    if (!c.pass) s << "FAIL " << c.name << ": " << c.witness << "\n";
  }
  s << passed << "/" << checks.size() << " checks passed\n";
  return s.str();
}

Json instance_report(const std::string& label, const TsInstance& a, const Checks& checks, bool timings) {
  Json j;
  j["schema"] = 1;
  j["kind"] = "instance";
  j["group"] = label;
  j["coefficients"] = a.ring().name();
  j["parameters"] = a.parameters();
  j["dimension"] = a.dim();
  Json basis = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) basis.push_back(a.basis_label(i));
  j["basis"] = std::move(basis);
  j["rewrite_rules"] = a.rewrite_rules();
  Json act = Json::array();
  for (Element h = 0; h < a.data().group.order(); ++h)
    act.push_back({{"element", h}, {"matrix", matrix_to_json(a.action(h))}});
  j["action"] = std::move(act);
  j["point"] = a.point();
  j["checks"] = checks_to_json(checks, timings);
  j["ok"] = all_pass(checks);
  j["conventions"] = {"Coordinates refer to the basis listed; e_s are the coefficient ring basis elements.",
                      "Matrix rows give the coordinates of (basis element).h."};
  return j;
}

Json extraspecial_report(const ExtraspecialModel& m, bool timings) {
  Json j;
  j["p"] = m.p;
  j["basis"] = {"y0", "y1", "y2", "1"};
  Json ys = Json::array();
  for (const auto& y : m.y) ys.push_back(y.to_text("x"));
  j["generators"] = std::move(ys);
  j["matrix_g1"] = matrix_to_json(m.m_g1);
  j["matrix_g2"] = matrix_to_json(m.m_g2);
  j["checks"] = checks_to_json(m.checks, timings);
  return j;
}

Json cp_tables_report(Coeff p, const CpInvariantReport* inv, bool timings) {
  Json j;
  j["schema"] = 1;
  j["kind"] = "cp_tables";
  j["p"] = p;
  auto rows = [](const std::vector<CpTableRow>& t) {
    Json a = Json::array();
    for (const auto& r : t)
      a.push_back({{"j", r.j},
                   {"closed_form", upoly_text(r.closed)},
                   {"sum", upoly_text(r.brute)},
                   {"agrees", r.closed == r.brute && r.dehom_agrees}});
    return a;
  };
  bool ok = true;
  auto tt = transfer_table(p, 2 * p - 2);
  auto ws = weighted_sum_table(p, p - 1);
  for (const auto* t : {&tt, &ws})
    for (const auto& r : *t) ok = ok && r.closed == r.brute && r.dehom_agrees;
  j["transfer"] = rows(tt);
  j["weighted_sum"] = rows(ws);
  if (inv) {
    Json ij;
    ij["y"] = inv->y.to_text("x");
    ij["sigma"] = inv->sigma.to_text("x");
    Json b = Json::array();
    for (const auto& f : inv->b) b.push_back(poly_entry(f, "x"));
    ij["coefficients"] = std::move(b);
    Json g = Json::array();
    for (const auto& f : inv->generators) g.push_back(poly_entry(f, "x"));
    ij["generators"] = std::move(g);
    ij["jacobian_probe"] = {{"verdict", to_string(inv->probe.verdict)},
                            {"field_degree", inv->probe.field_degree},
                            {"rank", inv->probe.best_rank}};
    ij["checks"] = checks_to_json(inv->checks, timings);
    ok = ok && all_pass(inv->checks);
    j["invariants"] = std::move(ij);
  }
  j["ok"] = ok;
  j["conventions"] = {"Tables are polynomials in F_p[T], highest degree first.",
                      "Here sigma = y^p - y, the negative of the construction's sigma."};
  return j;
}

Json artin_schreier_report(const ArtinSchreierReport& r, bool timings) {
  Json j;
  j["schema"] = 1;
  j["kind"] = "artin_schreier";
  j["p"] = r.p;
  j["relation"] = "Y^p - Y - " + std::to_string(r.gamma);
  j["has_root"] = r.has_root;
  j["irreducible_factors"] = r.frobenius_fixed;
  j["is_field"] = r.is_field;
  j["fixed_ring_dimension"] = r.fixed_ring_dim;
  j["normal_basis_rank"] = r.normal_basis_rank;
  j["action_is_frobenius"] = r.action_is_frobenius;
  j["checks"] = checks_to_json(r.checks, timings);
  j["ok"] = all_pass(r.checks);
  return j;
}

}  // namespace tsalg
