#include "tsalg/group.hpp"

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>

#include "tsalg/error.hpp"

namespace tsalg {

namespace {

struct Violation {
  ErrorCode code;
  std::string message;
  std::size_t row = 0, col = 0;  // table cell that exposes the problem
};

std::optional<std::size_t> log_base(std::size_t m, Coeff p) {
  std::size_t n = 0;
  while (m > 1) {
    if (m % p) return std::nullopt;
    m /= p;
    ++n;
  }
  return n;
}

std::optional<Violation> validate(Coeff p, const std::vector<std::vector<std::int64_t>>& t) {
  const std::size_t m = t.size();
  if (!is_prime(p)) return Violation{ErrorCode::BadParams, std::to_string(p) + " is not prime"};
  if (m == 0) return Violation{ErrorCode::BadTable, "empty table"};
  for (std::size_t a = 0; a < m; ++a) {
    if (t[a].size() != m)
      return Violation{ErrorCode::BadTable,
                       "row " + std::to_string(a) + " has " + std::to_string(t[a].size()) +
                           " entries, expected " + std::to_string(m),
                       a, std::min(t[a].size(), m)};
    for (std::size_t b = 0; b < m; ++b)
      if (t[a][b] < 0 || t[a][b] >= static_cast<std::int64_t>(m))
        return Violation{ErrorCode::BadTable,
                         "entry " + std::to_string(t[a][b]) + " at (" + std::to_string(a) + "," +
                             std::to_string(b) + ") out of range",
                         a, b};
  }
  if (!log_base(m, p))
    return Violation{ErrorCode::NotPPower,
                     "order " + std::to_string(m) + " is not a power of " + std::to_string(p)};
  if (m > kMaxGroupOrder)
    return Violation{ErrorCode::BadParams,
                     "order " + std::to_string(m) + " exceeds " + std::to_string(kMaxGroupOrder)};
  for (std::size_t a = 0; a < m; ++a) {
    if (t[0][a] != static_cast<std::int64_t>(a))
      return Violation{ErrorCode::NoIdentity,
                       "element 0 is not a left identity: 0*" + std::to_string(a) + " = " +
                           std::to_string(t[0][a]),
                       0, a};
    if (t[a][0] != static_cast<std::int64_t>(a))
      return Violation{ErrorCode::NoIdentity,
                       "element 0 is not a right identity: " + std::to_string(a) + "*0 = " +
                           std::to_string(t[a][0]),
                       a, 0};
  }
  for (std::size_t a = 0; a < m; ++a) {
    std::size_t count = 0, last = 0;
    for (std::size_t b = 0; b < m; ++b)
      if (t[a][b] == 0 && t[b][a] == 0) {
        ++count;
        last = b;
      }
    if (count != 1)
      return Violation{ErrorCode::NoInverse,
                       "element " + std::to_string(a) + " has " + std::to_string(count) +
                           " two-sided inverses",
                       a, last};
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      auto ab = static_cast<std::size_t>(t[a][b]);
      for (std::size_t c = 0; c < m; ++c) {
        auto bc = static_cast<std::size_t>(t[b][c]);
        if (t[ab][c] != t[a][bc])
          return Violation{ErrorCode::NotAssociative,
                           "(a*b)*c != a*(b*c) for a=" + std::to_string(a) +
                               ", b=" + std::to_string(b) + ", c=" + std::to_string(c),
                           ab, c};
      }
    }
  return std::nullopt;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(Coeff p, const std::vector<std::vector<std::int64_t>>& table) {
  if (auto v = validate(p, table)) throw Error(v->code, v->message);
  FiniteGroup g;
  g.p_ = p;
  g.order_ = table.size();
  g.rank_ = *log_base(g.order_, p);
  g.table_.resize(g.order_ * g.order_);
  g.inverse_.assign(g.order_, 0);
  for (std::size_t a = 0; a < g.order_; ++a)
    for (std::size_t b = 0; b < g.order_; ++b) {
      g.table_[a * g.order_ + b] = static_cast<Element>(table[a][b]);
      if (table[a][b] == 0) g.inverse_[a] = static_cast<Element>(b);
    }
  return g;
}

FiniteGroup group_from_table(Coeff p, const std::vector<std::vector<std::int64_t>>& table) {
  return FiniteGroup::from_table(p, table);
}

Element FiniteGroup::pow(Element a, std::uint64_t e) const {
  // the exponent of a p-group divides its order
  Element r = 0;
  for (std::uint64_t i = 0; i < e % order_; ++i) r = mul(r, a);
  return r;
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<std::vector<std::int64_t>> FiniteGroup::table() const {
  std::vector<std::vector<std::int64_t>> t(order_, std::vector<std::int64_t>(order_));
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b) t[a][b] = table_[a * order_ + b];
  return t;
}

FiniteGroup read_cayley_table(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto perr = [&](std::size_t l, std::size_t c, const std::string& why) {
    return Error(ErrorCode::ParseError,
                 "line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + why);
  };
  struct Token {
    std::int64_t value;
    std::size_t col;
  };
  auto tokenize = [&](const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      if (i >= s.size()) break;
      std::size_t start = i;
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      std::string tok = s.substr(start, i - start);
      std::int64_t v = 0;
      std::size_t used = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (...) {
        used = 0;
      }
      if (used != tok.size()) throw perr(lineno, start + 1, "not an integer: '" + tok + "'");
      out.push_back({v, start + 1});
    }
    return out;
  };
  if (!std::getline(in, line)) throw perr(1, 1, "missing header 'p order'");
  ++lineno;
  auto header = tokenize(line);
  if (header.size() != 2) throw perr(1, 1, "header must be 'p order'");
  if (header[0].value < 2 || header[0].value >= (1 << 16) || !is_prime(header[0].value))
    throw perr(1, header[0].col, "p must be a prime");
  if (header[1].value < 1 || header[1].value > static_cast<std::int64_t>(kMaxGroupOrder))
    throw perr(1, header[1].col, "order out of range");
  const auto p = static_cast<Coeff>(header[0].value);
  const auto m = static_cast<std::size_t>(header[1].value);
  std::vector<std::vector<std::int64_t>> table;
  std::vector<std::vector<std::size_t>> cols;
  while (table.size() < m) {
    if (!std::getline(in, line)) throw perr(lineno + 1, 1, "expected " + std::to_string(m) + " rows");
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) throw perr(lineno, 1, "empty row");
    if (toks.size() != m)
      throw perr(lineno, toks.size() > m ? toks[m].col : line.size() + 1,
                 "expected " + std::to_string(m) + " entries, found " + std::to_string(toks.size()));
    std::vector<std::int64_t> row;
    std::vector<std::size_t> c;
    for (auto& t : toks) {
      row.push_back(t.value);
      c.push_back(t.col);
    }
    table.push_back(std::move(row));
    cols.push_back(std::move(c));
  }
  if (auto v = validate(p, table)) {
    std::size_t l = 2 + v->row, c = v->row < cols.size() && v->col < cols[v->row].size()
                                        ? cols[v->row][v->col]
                                        : 1;
    throw Error(v->code, "line " + std::to_string(l) + ", column " + std::to_string(c) + ": " +
                             v->message);
  }
  return FiniteGroup::from_table(p, table);
}

std::string write_cayley_table(const FiniteGroup& g) {
  std::ostringstream out;
  out << g.prime() << ' ' << g.order() << '\n';
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
    out << '\n';
  }
  return out.str();
}

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) {
    r *= b;
    if (r > kMaxGroupOrder) throw Error(ErrorCode::BadParams, "group order exceeds 256");
  }
  return r;
}

void require_prime(long p) {
  if (p < 2 || p >= (1 << 16) || !is_prime(static_cast<std::uint64_t>(p)))
    throw Error(ErrorCode::BadParams, std::to_string(p) + " is not a prime");
}

using Table = std::vector<std::vector<std::int64_t>>;

}  // namespace

FiniteGroup trivial_group(Coeff p) { return FiniteGroup::from_table(p, Table{{0}}); }

FiniteGroup cyclic_group(Coeff p, std::size_t n) {
  require_prime(p);
  std::size_t m = ipow(p, n);
  Table t(m, std::vector<std::int64_t>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t[a][b] = static_cast<std::int64_t>((a + b) % m);
  return FiniteGroup::from_table(p, t);
}

FiniteGroup elementary_abelian_group(Coeff p, std::size_t n) {
  require_prime(p);
  std::size_t m = ipow(p, n);
  Table t(m, std::vector<std::int64_t>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      std::size_t r = 0, place = 1, x = a, y = b;
      for (std::size_t i = 0; i < n; ++i) {
        r += ((x % p + y % p) % p) * place;
        x /= p;
        y /= p;
        place *= p;
      }
      t[a][b] = static_cast<std::int64_t>(r);
    }
  return FiniteGroup::from_table(p, t);
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.prime() != h.prime()) throw Error(ErrorCode::BadParams, "factors over different primes");
  const std::size_t m = h.order(), total = g.order() * h.order();
  if (total > kMaxGroupOrder) throw Error(ErrorCode::BadParams, "group order exceeds 256");
  Table t(total, std::vector<std::int64_t>(total));
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b)
      t[a][b] = static_cast<std::int64_t>(
          g.mul(static_cast<Element>(a / m), static_cast<Element>(b / m)) * m +
          h.mul(static_cast<Element>(a % m), static_cast<Element>(b % m)));
  return FiniteGroup::from_table(g.prime(), t);
}

FiniteGroup dihedral_group(std::size_t order) {
  if (order < 4 || order > kMaxGroupOrder || (order & (order - 1)))
    throw Error(ErrorCode::BadParams, "dihedral order must be a power of 2, at least 4");
  const std::size_t m = order / 2;
  Table t(order, std::vector<std::int64_t>(order));
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      std::size_t i = a % m, j = a / m, k = b % m, l = b / m;
      std::size_t rot = j ? (i + m - k) % m : (i + k) % m;
      t[a][b] = static_cast<std::int64_t>(rot + m * (j ^ l));
    }
  return FiniteGroup::from_table(2, t);
}

FiniteGroup quaternion_group(std::size_t order) {
  if (order != 8) throw Error(ErrorCode::BadParams, "only the quaternion group of order 8 is built in");
  // unit products u*v = sign * w over units 1, i, j, k
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  Table t(8, std::vector<std::int64_t>(8));
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      std::size_t u = a / 2, v = b / 2;
      std::size_t s = (a % 2) ^ (b % 2) ^ static_cast<std::size_t>(sign[u][v]);
      t[a][b] = static_cast<std::int64_t>(2 * unit[u][v] + s);
    }
  return FiniteGroup::from_table(2, t);
}

FiniteGroup heisenberg_group(Coeff p) {
  require_prime(p);
  if (p == 2) throw Error(ErrorCode::BadParams, "heisenberg(p) needs p > 2");
  const std::size_t m = std::size_t(p) * p * p;
  if (m > kMaxGroupOrder) throw Error(ErrorCode::BadParams, "group order exceeds 256");
  Table t(m, std::vector<std::int64_t>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      std::size_t a0 = a / (p * p), a1 = a / p % p, a2 = a % p;
      std::size_t b0 = b / (p * p), b1 = b / p % p, b2 = b % p;
      // g2^a2 g1^b1 = g0^{-a2 b1} g1^b1 g2^a2
      std::size_t c0 = (a0 + b0 + p * p - (a2 * b1) % p) % p;
      t[a][b] = static_cast<std::int64_t>(c0 * p * p + (a1 + b1) % p * p + (a2 + b2) % p);
    }
  return FiniteGroup::from_table(p, t);
}

FiniteGroup builtin_group(std::string_view family, std::span<const long> params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw Error(ErrorCode::BadParams, std::string(family) + " takes " + std::to_string(k) +
                                            " parameter(s)");
    for (long v : params)
      if (v < 0) throw Error(ErrorCode::BadParams, "negative parameter");
  };
  if (family == "cyclic") {
    need(2);
    require_prime(params[0]);
    return cyclic_group(static_cast<Coeff>(params[0]), static_cast<std::size_t>(params[1]));
  }
  if (family == "elementary_abelian" || family == "elementary") {
    need(2);
    require_prime(params[0]);
    return elementary_abelian_group(static_cast<Coeff>(params[0]), static_cast<std::size_t>(params[1]));
  }
  if (family == "dihedral") {
    need(1);
    return dihedral_group(static_cast<std::size_t>(params[0]));
  }
  if (family == "quaternion") {
    need(1);
    return quaternion_group(static_cast<std::size_t>(params[0]));
  }
  if (family == "heisenberg") {
    need(1);
    require_prime(params[0]);
    return heisenberg_group(static_cast<Coeff>(params[0]));
  }
  throw Error(ErrorCode::BadParams, "unknown group family '" + std::string(family) + "'");
}

FiniteGroup parse_group_spec(std::string_view spec) {
  if (spec.substr(0, 6) == "table:") {
    std::string path(spec.substr(6));
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BadParams, "cannot open table file '" + path + "'");
    return read_cayley_table(in);
  }
  if (auto star = spec.find('*'); star != std::string_view::npos)
    return direct_product(parse_group_spec(spec.substr(0, star)),
                          parse_group_spec(spec.substr(star + 1)));
  auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorCode::BadParams, "group spec '" + std::string(spec) + "' lacks ':params'");
  std::string_view family = spec.substr(0, colon);
  std::vector<long> params;
  std::string rest(spec.substr(colon + 1));
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (...) {
      used = 0;
    }
    if (item.empty() || used != item.size())
      throw Error(ErrorCode::BadParams, "bad parameter '" + item + "' in '" + std::string(spec) + "'");
    params.push_back(v);
  }
  return builtin_group(family, params);
}

std::vector<Element> center(const FiniteGroup& g) {
  std::vector<Element> z;
  for (Element a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Element b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return z;
}

std::vector<Element> generators(const FiniteGroup& g) {
  std::vector<Element> gens;
  std::vector<bool> in(g.order(), false);
  in[0] = true;
  for (Element x = 0; x < g.order(); ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    std::vector<Element> frontier;
    for (Element a = 0; a < g.order(); ++a)
      if (in[a]) frontier.push_back(a);
    while (!frontier.empty()) {
      std::vector<Element> next;
      for (Element a : frontier)
        for (Element s : gens) {
          Element b = g.mul(a, s);
          if (!in[b]) {
            in[b] = true;
            next.push_back(b);
          }
        }
      frontier = std::move(next);
    }
  }
  return gens;
}

CentralStep central_step(const FiniteGroup& g, Element g0) {
  const std::size_t m = g.order();
  const Coeff p = g.prime();
  if (g0 >= m) throw Error(ErrorCode::BadParams, "element " + std::to_string(g0) + " out of range");
  for (Element b = 0; b < m; ++b)
    if (g.mul(g0, b) != g.mul(b, g0))
      throw Error(ErrorCode::NotCentral, "g0=" + std::to_string(g0) + " does not commute with " +
                                             std::to_string(b));
  if (g.element_order(g0) != p)
    throw Error(ErrorCode::WrongOrder, "g0=" + std::to_string(g0) + " has order " +
                                           std::to_string(g.element_order(g0)));
  CentralStep s;
  s.g0 = g0;
  for (Element z = 0, i = 0; i < p; ++i, z = g.mul(z, g0)) s.z_powers.push_back(z);
  constexpr Element kUnset = ~Element(0);
  s.proj.assign(m, kUnset);
  for (Element a = 0; a < m; ++a) {
    if (s.proj[a] != kUnset) continue;
    auto c = static_cast<Element>(s.transversal.size());
    s.transversal.push_back(a);
    for (Element z : s.z_powers) s.proj[g.mul(z, a)] = c;
  }
  const std::size_t q = s.transversal.size();
  Table t(q, std::vector<std::int64_t>(q));
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) t[a][b] = s.proj[g.mul(s.transversal[a], s.transversal[b])];
  s.quotient = FiniteGroup::from_table(p, t);
  s.e_table.assign(q * m, 0);
  s.r_table.assign(q * m, 0);
  for (std::size_t rq = 0; rq < q; ++rq)
    for (Element h = 0; h < m; ++h) {
      Element x = g.mul(s.transversal[rq], h);
      Element rep = s.transversal[s.proj[x]];
      Element z = g.mul(x, g.inverse(rep));
      Coeff e = 0;
      while (s.z_powers[e] != z) ++e;
      s.e_table[rq * m + h] = e;
      s.r_table[rq * m + h] = rep;
    }
  return s;
}

Element default_central_element(const FiniteGroup& g) {
  for (Element z : center(g))
    if (z != 0 && g.element_order(z) == g.prime()) return z;
  throw Error(ErrorCode::BadParams, "trivial group has no central element of order p");
}

CentralChain central_chain(const FiniteGroup& g) {
  CentralChain chain;
  chain.groups.push_back(g);
  while (chain.groups.back().order() > 1) {
    const FiniteGroup& cur = chain.groups.back();
    chain.steps.push_back(central_step(cur, default_central_element(cur)));
    chain.groups.push_back(chain.steps.back().quotient);
  }
  return chain;
}

}  // namespace tsalg
