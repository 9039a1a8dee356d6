#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "tsalg/poly.hpp"

namespace tsalg {

enum class ProbeVerdict { Independent, Inconclusive };

std::string_view to_string(ProbeVerdict v);

struct ProbeResult {
  ProbeVerdict verdict = ProbeVerdict::Inconclusive;
  std::size_t trials_run = 0;
  std::size_t field_degree = 1;  // samples drawn from GF(p^field_degree)
  std::size_t best_rank = 0;
};

// One-sided algebraic independence test. fs.size() <= vars.size(); the Jacobian
// of fs with respect to vars is evaluated at random points of a small extension
// field, and full row rank at any point certifies independence.
ProbeResult jacobian_rank_probe(std::span<const SparsePoly> fs, std::span<const std::size_t> vars,
                                std::size_t trials, std::uint64_t seed);
// square system over all variables
ProbeResult jacobian_rank_probe(std::span<const SparsePoly> fs, std::size_t trials, std::uint64_t seed);

}  // namespace tsalg
