#include "tsalg/serialize.hpp"

#include "tsalg/error.hpp"

namespace tsalg {

Json poly_to_json(const SparsePoly& f) {
  Json terms = Json::array();
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    Json exps = Json::array();
    for (auto x : e) exps.push_back(static_cast<unsigned>(x));
    terms.push_back(Json::array({f.coeff(t), std::move(exps)}));
  }
  Json j;
  j["p"] = f.prime();
  j["nvars"] = f.nvars();
  j["terms"] = std::move(terms);
  return j;
}

SparsePoly poly_from_json(const Json& j) {
  auto fail = [](const std::string& why) { return Error(ErrorCode::ParseError, "polynomial json: " + why); };
  if (!j.is_object() || !j.contains("p") || !j.contains("nvars") || !j.contains("terms"))
    throw fail("expected object with p, nvars, terms");
  if (!j["p"].is_number_unsigned() || !j["nvars"].is_number_unsigned()) throw fail("p and nvars must be unsigned");
  const auto p = j["p"].get<std::uint64_t>();
  const auto n = j["nvars"].get<std::uint64_t>();
  if (!is_prime(p) || p >= (1u << 16)) throw fail("p must be a prime below 65536");
  if (n > 4096) throw fail("too many variables");
  const Json& terms = j["terms"];
  if (!terms.is_array()) throw fail("terms must be an array");
  TermAccumulator acc(static_cast<Coeff>(p), n, terms.size());
  std::vector<Exponent> buf(n);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const Json& term = terms[t];
    const std::string where = "term " + std::to_string(t) + ": ";
    if (!term.is_array() || term.size() != 2 || !term[0].is_number_unsigned() || !term[1].is_array())
      throw fail(where + "expected [coefficient, [exponents]]");
    const auto c = term[0].get<std::uint64_t>();
    if (c >= p) throw fail(where + "coefficient out of range");
    if (term[1].size() != n) throw fail(where + "exponent vector has wrong length");
    for (std::size_t i = 0; i < n; ++i) {
      if (!term[1][i].is_number_unsigned() || term[1][i].get<std::uint64_t>() > 255)
        throw fail(where + "exponent out of range");
      buf[i] = static_cast<Exponent>(term[1][i].get<std::uint64_t>());
    }
    acc.add(buf.data(), static_cast<Coeff>(c));
  }
  return acc.finish();
}

Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["p"] = g.prime();
  j["order"] = g.order();
  j["table"] = g.table();
  return j;
}

}  // namespace tsalg
