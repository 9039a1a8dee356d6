#include "tsalg/poly.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstring>
#include <numeric>
#include <optional>

#include "tsalg/error.hpp"

namespace tsalg {

namespace detail {
struct PolyAccess {
  static SparsePoly make(Coeff p, std::size_t n, std::vector<Exponent>&& exps,
                         std::vector<Coeff>&& coeffs) {
    SparsePoly f;
    f.p_ = p;
    f.nvars_ = static_cast<std::uint32_t>(n);
    f.exps_ = std::move(exps);
    f.coeffs_ = std::move(coeffs);
    return f;
  }
};
}  // namespace detail

using detail::PolyAccess;

namespace {

std::atomic<int> g_degree_cap{64};

int term_degree(const Exponent* e, std::size_t n) {
  int d = 0;
  for (std::size_t i = 0; i < n; ++i) d += e[i];
  return d;
}

// negative when a comes first, i.e. a is the larger monomial
int compare_terms(const Exponent* a, const Exponent* b, std::size_t n) {
  int da = term_degree(a, n), db = term_degree(b, n);
  if (da != db) return da > db ? -1 : 1;
  int c = n == 0 ? 0 : std::memcmp(a, b, n);
  return c > 0 ? -1 : (c < 0 ? 1 : 0);
}

void check_compatible(const SparsePoly& a, const SparsePoly& b) {
  if (a.prime() != b.prime() || a.nvars() != b.nvars())
    throw Error(ErrorCode::ArityMismatch,
                "operands over (p=" + std::to_string(a.prime()) + ", nvars=" +
                    std::to_string(a.nvars()) + ") and (p=" + std::to_string(b.prime()) +
                    ", nvars=" + std::to_string(b.nvars()) + ")");
}

void check_degree(long d) {
  int cap = g_degree_cap.load(std::memory_order_relaxed);
  if (d > cap)
    throw Error(ErrorCode::DegreeCapExceeded,
                "total degree " + std::to_string(d) + " exceeds cap " + std::to_string(cap));
}

SparsePoly merge(const SparsePoly& a, const SparsePoly& b, bool subtract) {
  check_compatible(a, b);
  const Coeff p = a.prime();
  const std::size_t n = a.nvars();
  std::vector<Exponent> exps;
  std::vector<Coeff> coeffs;
  exps.reserve((a.size() + b.size()) * n);
  coeffs.reserve(a.size() + b.size());
  auto push = [&](std::span<const Exponent> e, Coeff c) {
    exps.insert(exps.end(), e.begin(), e.end());
    coeffs.push_back(c);
  };
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto ea = a.exponents(i), eb = b.exponents(j);
    int c = compare_terms(ea.data(), eb.data(), n);
    if (c < 0) {
      push(ea, a.coeff(i++));
    } else if (c > 0) {
      Coeff v = b.coeff(j++);
      push(eb, subtract ? p - v : v);
    } else {
      Coeff v = subtract ? mod_sub(a.coeff(i), b.coeff(j), p) : mod_add(a.coeff(i), b.coeff(j), p);
      if (v != 0) push(ea, v);
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) push(a.exponents(i), a.coeff(i));
  for (; j < b.size(); ++j) push(b.exponents(j), subtract ? p - b.coeff(j) : b.coeff(j));
  return PolyAccess::make(p, n, std::move(exps), std::move(coeffs));
}

}  // namespace

void set_degree_cap(int cap) { g_degree_cap.store(cap); }
int degree_cap() { return g_degree_cap.load(); }

SparsePoly::SparsePoly(Coeff p, std::size_t nvars)
    : p_(p), nvars_(static_cast<std::uint32_t>(nvars)) {
  if (p >= (1u << 16) || !is_prime(p))
    throw Error(ErrorCode::BadParams, "p must be a prime below 2^16, got " + std::to_string(p));
  if (nvars > 256) throw Error(ErrorCode::BadParams, "at most 256 variables");
}

SparsePoly SparsePoly::constant(Coeff p, std::size_t nvars, Coeff c) {
  SparsePoly f(p, nvars);
  if (c % p != 0) {
    f.exps_.assign(nvars, 0);
    f.coeffs_.push_back(c % p);
  }
  return f;
}

SparsePoly SparsePoly::variable(Coeff p, std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw Error(ErrorCode::ArityMismatch, "variable index out of range");
  SparsePoly f(p, nvars);
  f.exps_.assign(nvars, 0);
  f.exps_[i] = 1;
  f.coeffs_.push_back(1);
  return f;
}

SparsePoly SparsePoly::monomial(Coeff p, std::span<const Exponent> exps, Coeff c) {
  SparsePoly f(p, exps.size());
  if (c % p != 0) {
    f.exps_.assign(exps.begin(), exps.end());
    f.coeffs_.push_back(c % p);
  }
  return f;
}

bool SparsePoly::is_constant() const {
  return coeffs_.empty() || (coeffs_.size() == 1 && term_degree(exps_.data(), nvars_) == 0);
}

Coeff SparsePoly::constant_term() const {
  if (coeffs_.empty()) return 0;
  std::size_t last = coeffs_.size() - 1;
  return term_degree(exps_.data() + last * nvars_, nvars_) == 0 ? coeffs_[last] : 0;
}

Coeff SparsePoly::coeff_of(std::span<const Exponent> exps) const {
  if (exps.size() != nvars_) throw Error(ErrorCode::ArityMismatch, "exponent vector length");
  std::size_t lo = 0, hi = coeffs_.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    int c = compare_terms(exps_.data() + mid * nvars_, exps.data(), nvars_);
    if (c == 0) return coeffs_[mid];
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return 0;
}

int SparsePoly::total_degree() const {
  if (coeffs_.empty()) return -1;
  return term_degree(exps_.data(), nvars_);
}

int SparsePoly::degree_in(std::size_t var) const {
  int d = coeffs_.empty() ? -1 : 0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) d = std::max<int>(d, exps_[t * nvars_ + var]);
  return d;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r = *this;
  for (auto& c : r.coeffs_) c = p_ - c;
  return r;
}

SparsePoly SparsePoly::scaled(Coeff c) const {
  c %= p_;
  if (c == 0) return SparsePoly(p_, nvars_);
  SparsePoly r = *this;
  for (auto& v : r.coeffs_) v = mod_mul(v, c, p_);
  return r;
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, false); }
SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, true); }

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  check_compatible(a, b);
  const Coeff p = a.prime();
  const std::size_t n = a.nvars();
  if (a.is_zero() || b.is_zero()) return SparsePoly(p, n);
  check_degree(static_cast<long>(a.total_degree()) + b.total_degree());
  if (a.size() == 1 && a.total_degree() == 0) return b.scaled(a.coeff(0));
  if (b.size() == 1 && b.total_degree() == 0) return a.scaled(b.coeff(0));
  const SparsePoly& big = a.size() >= b.size() ? a : b;
  const SparsePoly& small = a.size() >= b.size() ? b : a;
  TermAccumulator acc(p, n, std::min<std::size_t>(big.size() * small.size(), 1u << 18));
  std::vector<Exponent> buf(n);
  for (std::size_t i = 0; i < small.size(); ++i) {
    auto ei = small.exponents(i);
    Coeff ci = small.coeff(i);
    for (std::size_t j = 0; j < big.size(); ++j) {
      auto ej = big.exponents(j);
      for (std::size_t k = 0; k < n; ++k) {
        unsigned s = unsigned(ei[k]) + ej[k];
        if (s > 255) throw Error(ErrorCode::DegreeCapExceeded, "exponent exceeds 255");
        buf[k] = static_cast<Exponent>(s);
      }
      acc.add(buf.data(), mod_mul(ci, big.coeff(j), p));
    }
  }
  return acc.finish();
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) { return *this = *this + o; }
SparsePoly& SparsePoly::operator-=(const SparsePoly& o) { return *this = *this - o; }
SparsePoly& SparsePoly::operator*=(const SparsePoly& o) { return *this = *this * o; }

std::string SparsePoly::to_text(std::string_view prefix) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    if (t) out += " + ";
    out += std::to_string(coeffs_[t]);
    auto e = exponents(t);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      out += '*';
      out += prefix;
      out += std::to_string(i);
      out += '^';
      out += std::to_string(e[i]);
    }
  }
  return out;
}

SparsePoly SparsePoly::from_text(std::string_view text, Coeff p, std::size_t nvars,
                                 std::string_view prefix) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorCode::ParseError, why + " at offset " + std::to_string(pos));
  };
  auto skip_ws = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  auto read_uint = [&]() -> std::uint64_t {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc()) throw fail("expected an integer");
    pos = static_cast<std::size_t>(ptr - text.data());
    return v;
  };
  TermAccumulator acc(p, nvars);
  std::vector<Exponent> e(nvars);
  skip_ws();
  if (text.substr(pos) == "0") return SparsePoly(p, nvars);
  while (true) {
    skip_ws();
    std::fill(e.begin(), e.end(), 0);
    Coeff c = 1;
    bool first = true;
    while (true) {
      skip_ws();
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])) && first) {
        c = static_cast<Coeff>(read_uint() % p);
      } else if (text.substr(pos, prefix.size()) == prefix) {
        pos += prefix.size();
        std::uint64_t var = read_uint();
        if (var >= nvars) throw fail("variable index out of range");
        std::uint64_t ex = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          ex = read_uint();
        }
        if (e[var] + ex > 255) throw fail("exponent too large");
        e[var] = static_cast<Exponent>(e[var] + ex);
      } else {
        throw fail("expected a coefficient or variable");
      }
      first = false;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    acc.add(e.data(), c);
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '+') throw fail("expected '+'");
    ++pos;
  }
  return acc.finish();
}

TermAccumulator::TermAccumulator(Coeff p, std::size_t nvars, std::size_t expected)
    : p_(p), nvars_(nvars) {
  std::size_t cap = 16;
  while (cap < expected * 2) cap <<= 1;
  slots_.assign(cap, 0);
  mask_ = cap - 1;
  exps_.reserve(std::min<std::size_t>(expected, 1u << 20) * nvars);
  coeffs_.reserve(std::min<std::size_t>(expected, 1u << 20));
}

std::uint64_t TermAccumulator::hash(const Exponent* e) const {
  std::uint64_t h = 0x9E3779B97F4A7C15ull;
  std::size_t i = 0;
  for (; i + 8 <= nvars_; i += 8) {
    std::uint64_t chunk;
    std::memcpy(&chunk, e + i, 8);
    h = (h ^ chunk) * 0xBF58476D1CE4E5B9ull;
    h ^= h >> 31;
  }
  std::uint64_t tail = 0;
  for (std::size_t k = 0; i < nvars_; ++i, ++k) tail |= std::uint64_t(e[i]) << (8 * k);
  h = (h ^ tail) * 0x94D049BB133111EBull;
  h ^= h >> 29;
  return h;
}

void TermAccumulator::rehash(std::size_t capacity) {
  slots_.assign(capacity, 0);
  mask_ = capacity - 1;
  for (std::uint32_t t = 0; t < coeffs_.size(); ++t) {
    std::size_t s = hash(exps_.data() + std::size_t(t) * nvars_) & mask_;
    while (slots_[s]) s = (s + 1) & mask_;
    slots_[s] = t + 1;
  }
}

void TermAccumulator::add(const Exponent* e, Coeff c) {
  if (c == 0) return;
  std::size_t s = hash(e) & mask_;
  while (std::uint32_t idx = slots_[s]) {
    std::size_t t = idx - 1;
    if (nvars_ == 0 || std::memcmp(exps_.data() + t * nvars_, e, nvars_) == 0) {
      coeffs_[t] = mod_add(coeffs_[t], c, p_);
      return;
    }
    s = (s + 1) & mask_;
  }
  slots_[s] = static_cast<std::uint32_t>(coeffs_.size() + 1);
  exps_.insert(exps_.end(), e, e + nvars_);
  coeffs_.push_back(c);
  if (coeffs_.size() * 2 > slots_.size()) rehash(slots_.size() * 2);
}

void TermAccumulator::add(const SparsePoly& f, Coeff scale) {
  if (f.prime() != p_ || f.nvars() != nvars_)
    throw Error(ErrorCode::ArityMismatch, "accumulator operand");
  scale %= p_;
  if (scale == 0) return;
  for (std::size_t t = 0; t < f.size(); ++t)
    add(f.exponents(t).data(), scale == 1 ? f.coeff(t) : mod_mul(f.coeff(t), scale, p_));
}

SparsePoly TermAccumulator::finish() {
  std::vector<std::uint32_t> order;
  order.reserve(coeffs_.size());
  for (std::uint32_t t = 0; t < coeffs_.size(); ++t)
    if (coeffs_[t]) order.push_back(t);
  std::vector<int> deg(coeffs_.size());
  for (auto t : order) deg[t] = term_degree(exps_.data() + std::size_t(t) * nvars_, nvars_);
  const Exponent* base = exps_.data();
  const std::size_t n = nvars_;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (deg[a] != deg[b]) return deg[a] > deg[b];
    return n != 0 && std::memcmp(base + a * n, base + b * n, n) > 0;
  });
  std::vector<Exponent> exps(order.size() * n);
  std::vector<Coeff> coeffs(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (n) std::memcpy(exps.data() + k * n, base + std::size_t(order[k]) * n, n);
    coeffs[k] = coeffs_[order[k]];
  }
  exps_.clear();
  coeffs_.clear();
  std::fill(slots_.begin(), slots_.end(), 0);
  return PolyAccess::make(p_, n, std::move(exps), std::move(coeffs));
}

SparsePoly frobenius(const SparsePoly& f) {
  const Coeff p = f.prime();
  const std::size_t n = f.nvars();
  if (f.is_zero()) return f;
  check_degree(static_cast<long>(f.total_degree()) * p);
  std::vector<Exponent> exps;
  std::vector<Coeff> coeffs;
  exps.reserve(f.size() * n);
  for (std::size_t t = 0; t < f.size(); ++t) {
    for (auto e : f.exponents(t)) {
      unsigned s = unsigned(e) * p;
      if (s > 255) throw Error(ErrorCode::DegreeCapExceeded, "exponent exceeds 255");
      exps.push_back(static_cast<Exponent>(s));
    }
    coeffs.push_back(f.coeff(t));
  }
  // scaling all exponents by p preserves the graded-lex order
  return PolyAccess::make(p, n, std::move(exps), std::move(coeffs));
}

namespace {

SparsePoly pow_binary(SparsePoly base, std::uint64_t e) {
  SparsePoly result = SparsePoly::constant(base.prime(), base.nvars(), 1);
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

}  // namespace

SparsePoly pow(const SparsePoly& f, std::uint64_t e) {
  const Coeff p = f.prime();
  SparsePoly result = SparsePoly::constant(p, f.nvars(), 1);
  if (e == 0) return result;
  if (f.is_zero()) return f;
  if (f.total_degree() > 0) check_degree(static_cast<long>(f.total_degree()) * static_cast<long>(std::min<std::uint64_t>(e, 1u << 20)));
  // f^e = prod_k (f^{p^k})^{d_k} over the base-p digits d_k of e
  SparsePoly cur = f;
  while (e > 0) {
    std::uint64_t d = e % p;
    if (d) result *= pow_binary(cur, d);
    e /= p;
    if (e) cur = frobenius(cur);
  }
  return result;
}

SparsePoly derivative(const SparsePoly& f, std::size_t var) {
  const Coeff p = f.prime();
  const std::size_t n = f.nvars();
  if (var >= n) throw Error(ErrorCode::ArityMismatch, "derivative variable out of range");
  TermAccumulator acc(p, n, f.size());
  std::vector<Exponent> buf(n);
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    if (e[var] == 0) continue;
    Coeff c = mod_mul(f.coeff(t), e[var] % p, p);
    if (c == 0) continue;
    std::copy(e.begin(), e.end(), buf.begin());
    --buf[var];
    acc.add(buf.data(), c);
  }
  return acc.finish();
}

Coeff evaluate(const SparsePoly& f, std::span<const Coeff> point) {
  const Coeff p = f.prime();
  if (point.size() != f.nvars()) throw Error(ErrorCode::ArityMismatch, "evaluation point");
  Coeff total = 0;
  for (std::size_t t = 0; t < f.size(); ++t) {
    Coeff v = f.coeff(t);
    auto e = f.exponents(t);
    for (std::size_t i = 0; i < e.size() && v; ++i)
      if (e[i]) v = mod_mul(v, mod_pow(point[i], e[i], p), p);
    total = mod_add(total, v, p);
  }
  return total;
}

SparsePoly shift_vars(const SparsePoly& f, std::size_t new_nvars, std::size_t offset) {
  const std::size_t n = f.nvars();
  if (offset + n > new_nvars) throw Error(ErrorCode::ArityMismatch, "shift out of range");
  TermAccumulator acc(f.prime(), new_nvars, f.size());
  std::vector<Exponent> buf(new_nvars, 0);
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    std::copy(e.begin(), e.end(), buf.begin() + offset);
    acc.add(buf.data(), f.coeff(t));
  }
  return acc.finish();
}

Substitution::Substitution(std::vector<SparsePoly> images, Coeff p, std::size_t target_nvars)
    : images_(std::move(images)), p_(p), target_nvars_(target_nvars) {
  for (const auto& img : images_)
    if (img.prime() != p || img.nvars() != target_nvars)
      throw Error(ErrorCode::ArityMismatch, "substitution images must share p and target nvars");
}

Substitution Substitution::identity(Coeff p, std::size_t nvars) {
  std::vector<SparsePoly> images;
  for (std::size_t i = 0; i < nvars; ++i) images.push_back(SparsePoly::variable(p, nvars, i));
  return Substitution(std::move(images), p, nvars);
}

SparsePoly substitute(const SparsePoly& f, const Substitution& s) {
  if (f.nvars() != s.arity() || f.prime() != s.prime())
    throw Error(ErrorCode::ArityMismatch, "substitution arity " + std::to_string(s.arity()) +
                                              " for a polynomial in " +
                                              std::to_string(f.nvars()) + " variables");
  const Coeff p = f.prime();
  const std::size_t n = f.nvars();
  // powers of each image, filled on demand
  std::vector<std::vector<std::optional<SparsePoly>>> powers(n);
  auto power = [&](std::size_t i, unsigned e) -> const SparsePoly& {
    auto& row = powers[i];
    if (row.size() <= e) row.resize(e + 1);
    if (!row[e]) row[e] = e == 1 ? s[i] : pow(s[i], e);
    return *row[e];
  };
  TermAccumulator acc(p, s.target_nvars(), f.size() * 4);
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    std::optional<SparsePoly> prod;
    for (std::size_t i = 0; i < n; ++i) {
      if (!e[i]) continue;
      const SparsePoly& factor = power(i, e[i]);
      prod = prod ? *prod * factor : factor;
      if (prod->is_zero()) break;
    }
    if (prod)
      acc.add(*prod, f.coeff(t));
    else
      acc.add(SparsePoly::constant(p, s.target_nvars(), f.coeff(t)));
  }
  return acc.finish();
}

Substitution compose(const Substitution& s, const Substitution& t) {
  if (t.target_nvars() != s.arity()) throw Error(ErrorCode::ArityMismatch, "composition arity");
  std::vector<SparsePoly> images;
  images.reserve(t.arity());
  for (const auto& img : t.images()) images.push_back(substitute(img, s));
  return Substitution(std::move(images), s.prime(), s.target_nvars());
}

}  // namespace tsalg
