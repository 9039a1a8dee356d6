#pragma once

#include <cstdint>
#include <vector>

#include "tsalg/check.hpp"
#include "tsalg/dehom.hpp"
#include "tsalg/gf.hpp"
#include "tsalg/jacobian.hpp"

namespace tsalg {

struct CpTableRow {
  std::size_t j = 0;
  UPoly closed;        // closed form in F_p[T]
  UPoly brute;         // direct sum in F_p[T]
  bool dehom_agrees = false;  // the same sum computed with the action on y in D_k(C_p)
};

// tr(T^j) = sum_i (T - i)^j for j = 0..jmax
std::vector<CpTableRow> transfer_table(Coeff p, std::size_t jmax);
// sum_{i=1}^{p-1} i (T - i)^j for j = 0..jmax
std::vector<CpTableRow> weighted_sum_table(Coeff p, std::size_t jmax);

// f = sum_i b_i y^i with invariant b_i; p odd. Throws ReconstructionFailed if the identity fails.
std::vector<SparsePoly> coefficients_in_y(const DehomContext& ctx, const SparsePoly& f);

struct CpInvariantReport {
  Coeff p = 2;
  SparsePoly y;
  SparsePoly sigma;                 // y^p - y
  std::vector<SparsePoly> b;        // coefficients of x_identity, empty for p = 2
  std::vector<SparsePoly> generators;
  ProbeResult probe;
  Checks checks;
};

CpInvariantReport cp_invariant_generators(Coeff p, std::uint64_t seed);

}  // namespace tsalg
