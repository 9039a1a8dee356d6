#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsalg/check.hpp"
#include "tsalg/linalg.hpp"
#include "tsalg/serialize.hpp"
#include "tsalg/standard.hpp"

namespace tsalg {

enum class Depth { Abstract, Embedding };

struct CatalogueEntry {
  std::string label;  // group spec understood by parse_group_spec
  FiniteGroup group;
};

// built-in groups up to max_order in a fixed order
std::vector<CatalogueEntry> builtin_catalogue(std::size_t max_order);

// Orbit of v is linearly independent of size |G| whenever tr(v) != 0; vacuous otherwise.
Check check_free_rank_one(const DehomContext& ctx, const SparsePoly& v);
// Same conclusion from the delta evaluations of v alone: the |G| shifted vectors have full rank.
Check check_orbit_rank_by_delta(const DehomContext& ctx, const SparsePoly& v);
// columns (delta_evaluation(y_i)_g)_i are pairwise distinct
Check check_separation(const DehomContext& ctx, std::span<const SparsePoly> ys);
// theta_w(w) = w by direct substitution
Check check_theta_fixes(const DehomContext& ctx, const SparsePoly& w);

// Linear model of the extraspecial group of order p^3 (p odd): y_i = sum_a a_i x_{g0^a0 g1^a1 g2^a2}.
struct ExtraspecialModel {
  Coeff p = 3;
  std::vector<SparsePoly> y;
  Matrix m_g1, m_g2;  // row i holds the coordinates of b_i . g on b = (y0, y1, y2, 1)
  Checks checks;
};
ExtraspecialModel extraspecial_model(Coeff p, std::uint64_t seed);

// identities in k[Y_0..Y_{n-1}]
Checks check_abstract(const StandardAlgebraData& data, std::uint64_t seed);
// identities in D_k(G); needs data.embedding
Checks check_standard(const StandardAlgebraData& data, std::uint64_t seed);

struct SuiteOptions {
  Depth depth = Depth::Abstract;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool controls = true;
  double point_budget = 2e8;
};

struct VerificationReport {
  std::uint64_t seed = 1;
  Depth depth = Depth::Abstract;
  std::vector<std::string> subjects;
  Checks checks;
  Checks controls;  // negative controls: each is expected to fail
  bool ok() const;
};

Checks verify_group(const CatalogueEntry& entry, const SuiteOptions& opts);
Checks negative_controls(std::uint64_t seed);
VerificationReport run_suite(const std::vector<CatalogueEntry>& groups, const SuiteOptions& opts);

Json check_to_json(const Check& c, bool timings);
Json report_to_json(const VerificationReport& r, bool timings);

std::string to_string(Depth d);

}  // namespace tsalg
