#pragma once

#include <string>

#include "tsalg/cp.hpp"
#include "tsalg/instance.hpp"
#include "tsalg/serialize.hpp"
#include "tsalg/verifier.hpp"

namespace tsalg {

// Every report is a JSON object with "schema": 1 and a "kind".
Json construction_report(const std::string& label, const StandardAlgebraData& d, const Checks& checks,
                         bool timings);
std::string construction_summary(const std::string& label, const StandardAlgebraData& d, const Checks& checks);

Json instance_report(const std::string& label, const TsInstance& a, const Checks& checks, bool timings);
Json extraspecial_report(const ExtraspecialModel& m, bool timings);
Json cp_tables_report(Coeff p, const CpInvariantReport* invariants, bool timings);
Json artin_schreier_report(const ArtinSchreierReport& r, bool timings);

Json checks_to_json(const Checks& cs, bool timings);
Json matrix_to_json(const Matrix& m);
std::string upoly_text(const UPoly& f);

}  // namespace tsalg
