#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "tsalg/error.hpp"
#include "tsalg/report.hpp"

using namespace tsalg;

namespace {

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  bool timings = false;
};

void emit(const Json& j, const Common& c) {
  std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::BadParams, "cannot write " + c.out);
  f << text;
}

std::vector<Coeff> parse_list(const std::string& s, char sep) {
  std::vector<Coeff> v;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      long x = std::stol(item, &used);
      if (used != item.size() || x < 0) throw std::invalid_argument(item);
      v.push_back(static_cast<Coeff>(x));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "not a nonnegative integer: " + item);
    }
  }
  return v;
}

// prime, gf:k, split:k, quotient:c0,c1,...,1
CoeffRing parse_ring(const std::string& s, Coeff p) {
  if (s == "prime") return CoeffRing::prime_field(p);
  auto colon = s.find(':');
  std::string kind = s.substr(0, colon), arg = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (kind == "gf" || kind == "split") {
    auto k = parse_list(arg, ',');
    if (k.size() != 1 || k[0] == 0) throw Error(ErrorCode::BadParams, "expected " + kind + ":k with k >= 1");
    return kind == "gf" ? CoeffRing::extension_field(p, k[0]) : CoeffRing::split(p, k[0]);
  }
  if (kind == "quotient") return CoeffRing::quotient(p, parse_list(arg, ','));
  throw Error(ErrorCode::BadParams, "unknown coefficient ring " + s);
}

bool is_heisenberg(const std::string& label, const FiniteGroup& g) {
  return label.rfind("heisenberg:", 0) == 0 && g.prime() > 2;
}

int report_checks(const Checks& cs) {
  std::size_t passed = 0;
  for (const auto& c : cs) {
    passed += c.pass;
    if (!c.pass) std::cerr << "FAIL " << c.subject << " " << c.name << ": " << c.witness << "\n";
  }
  std::cerr << passed << "/" << cs.size() << " checks passed\n";
  return passed == cs.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace-surjective algebras of finite p-groups: construction and verification"};
  app.require_subcommand(1);
  app.fallthrough();
  int degree_cap = 0;
  unsigned jobs = 1;
  app.add_option("--degree-cap", degree_cap, "maximum total degree of intermediate polynomials (0 keeps default)")
      ->envname("TSALG_DEGREE_CAP");
  app.add_option("--jobs", jobs, "worker threads for the verification suite")->envname("TSALG_JOBS")->check(
      CLI::Range(1u, 256u));

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "seed for all randomness");
    sub->add_option("--out", common.out, "output file (default: stdout)");
    sub->add_flag("--timings", common.timings, "include wall times in the report");
  };

  std::string group_spec;
  bool verify_embedding = false;
  double point_budget = 2e8;
  auto* construct = app.add_subcommand("construct", "build the standard subalgebra of a group");
  construct->add_option("--group", group_spec, "group spec, e.g. cyclic:3,1 or table:path")->required();
  construct->add_flag("--verify-embedding", verify_embedding, "compute and verify the generators inside D_k(G)");
  construct->add_option("--point-budget", point_budget, "term products allowed for the concrete point");
  add_common(construct);

  std::string r_values = "random", ring_spec = "prime";
  auto* instantiate = app.add_subcommand("instantiate", "quotient by sigma_i - r_i with its verification");
  instantiate->add_option("--group", group_spec, "group spec")->required();
  instantiate->add_option("--r", r_values, "comma separated parameters (ring coordinates joined by ':') or random");
  instantiate->add_option("--ring", ring_spec, "prime, gf:k, split:k or quotient:c0,...,1");
  add_common(instantiate);

  std::vector<std::string> verify_groups;
  bool all = false, no_controls = false;
  std::size_t max_order = 16;
  std::string depth = "abstract";
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--group", verify_groups, "group spec, repeatable");
  verify->add_flag("--all", all, "every built-in group up to --max-order");
  verify->add_option("--max-order", max_order, "order bound for --all");
  verify->add_option("--depth", depth, "abstract or embedding")->check(CLI::IsMember({"abstract", "embedding"}));
  verify->add_flag("--no-controls", no_controls, "skip the negative controls");
  verify->add_option("--point-budget", point_budget, "term products allowed for concrete points");
  add_common(verify);

  Coeff p = 3;
  bool invariants = false;
  auto* cp = app.add_subcommand("cp-tables", "transfer tables and invariants for the cyclic group of order p");
  cp->add_option("--p", p, "prime")->required();
  cp->add_flag("--invariants", invariants, "also compute the invariant generators (p <= 7)");
  add_common(cp);

  Coeff gamma = 1;
  auto* as = app.add_subcommand("artin-schreier", "the algebra F_p[Y]/(Y^p - Y - gamma) with its C_p action");
  as->add_option("--p", p, "prime")->required();
  as->add_option("--gamma", gamma, "constant term parameter in F_p");
  add_common(as);

  CLI11_PARSE(app, argc, argv);

  try {
    if (degree_cap > 0) set_degree_cap(degree_cap);

    if (*construct) {
      FiniteGroup g = parse_group_spec(group_spec);
      Stopwatch clock;
      StandardAlgebraData d = build_standard(g, {.verify_embedding = verify_embedding, .point_budget = point_budget});
      Checks checks = check_abstract(d, common.seed);
      if (verify_embedding) {
        Checks more = check_standard(d, common.seed);
        checks.insert(checks.end(), more.begin(), more.end());
      }
      for (auto& c : checks) c.subject = group_spec;
      Json j = construction_report(group_spec, d, checks, common.timings);
      if (is_heisenberg(group_spec, g) && verify_embedding) {
        ExtraspecialModel m = extraspecial_model(g.prime(), common.seed);
        checks.insert(checks.end(), m.checks.begin(), m.checks.end());
        j["linear_model"] = extraspecial_report(m, common.timings);
        j["ok"] = all_pass(checks);
      }
      if (common.timings) j["seconds"] = clock.seconds();
      emit(j, common);
      if (!common.out.empty()) std::cout << construction_summary(group_spec, d, checks);
      return report_checks(checks);
    }

    if (*instantiate) {
      FiniteGroup g = parse_group_spec(group_spec);
      StandardAlgebraData d = build_standard(g);
      CoeffRing ring = parse_ring(ring_spec, g.prime());
      if (auto bad = ring.validate(); !bad.empty()) throw Error(ErrorCode::BadParams, bad);
      std::mt19937_64 rng(common.seed);
      std::vector<Vec> r;
      if (r_values == "random") {
        for (std::size_t i = 0; i < d.n; ++i) r.push_back(ring.random(rng));
      } else {
        std::stringstream in(r_values);
        for (std::string item; std::getline(in, item, ',');) {
          Vec v = parse_list(item, ':');
          if (v.size() == 1 && ring.dim() > 1) {
            Vec s = ring.one();
            for (auto& x : s) x = mod_mul(x, v[0] % g.prime(), g.prime());
            v = s;
          }
          if (v.size() != ring.dim()) throw Error(ErrorCode::ArityMismatch, "parameter " + item + " has wrong length");
          for (auto x : v)
            if (x >= g.prime()) throw Error(ErrorCode::BadParams, "parameter entry out of range: " + item);
          r.push_back(v);
        }
        if (r.size() != d.n)
          throw Error(ErrorCode::ArityMismatch,
                      "expected " + std::to_string(d.n) + " parameters, got " + std::to_string(r.size()));
      }
      TsInstance a(d, ring, r);
      Checks checks = check_relations(a);
      Checks more = verify_instance(a, rng());
      checks.insert(checks.end(), more.begin(), more.end());
      for (auto& c : checks) c.subject = group_spec;
      emit(instance_report(group_spec, a, checks, common.timings), common);
      return report_checks(checks);
    }

    if (*verify) {
      std::vector<CatalogueEntry> groups;
      if (all) groups = builtin_catalogue(max_order);
      for (const auto& s : verify_groups) groups.push_back({s, parse_group_spec(s)});
      if (groups.empty()) throw Error(ErrorCode::BadParams, "give --all or at least one --group");
      SuiteOptions opts;
      opts.depth = depth == "embedding" ? Depth::Embedding : Depth::Abstract;
      opts.seed = common.seed;
      opts.jobs = jobs;
      opts.controls = !no_controls;
      opts.point_budget = point_budget;
      Stopwatch clock;
      VerificationReport rep = run_suite(groups, opts);
      Json j = report_to_json(rep, common.timings);
      if (common.timings) j["seconds"] = clock.seconds();
      emit(j, common);
      report_checks(rep.checks);
      for (const auto& c : rep.controls)
        if (c.pass || c.witness.empty()) std::cerr << "CONTROL DID NOT FAIL " << c.name << "\n";
      return rep.ok() ? 0 : 1;
    }

    if (*cp) {
      std::optional<CpInvariantReport> inv;
      if (invariants) inv = cp_invariant_generators(p, common.seed);
      Json j = cp_tables_report(p, inv ? &*inv : nullptr, common.timings);
      emit(j, common);
      return j["ok"].get<bool>() ? 0 : 1;
    }

    if (*as) {
      ArtinSchreierReport r = artin_schreier_demo(p, gamma);
      emit(artin_schreier_report(r, common.timings), common);
      return report_checks(r.checks);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
