#include "tsalg/instance.hpp"

#include <sstream>

#include "tsalg/error.hpp"
#include "tsalg/gf.hpp"

namespace tsalg {

namespace {

std::string vec_text(const Vec& v) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << "]";
  return out.str();
}

Vec vadd(Vec a, const Vec& b, Coeff p) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = mod_add(a[i], b[i], p);
  return a;
}

Vec vsub(Vec a, const Vec& b, Coeff p) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = mod_sub(a[i], b[i], p);
  return a;
}

Matrix columns_to_matrix(Coeff p, const std::vector<Vec>& cols) {
  const std::size_t rows = cols.empty() ? 0 : cols[0].size();
  Matrix m(p, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
  return m;
}

Matrix rows_to_matrix(Coeff p, const std::vector<Vec>& rows) {
  Matrix m(p, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
  return m;
}

}  // namespace

// ---- coefficient rings

CoeffRing CoeffRing::prime_field(Coeff p) {
  CoeffRing r = quotient(p, {0, 1});
  r.name_ = "F_" + std::to_string(p);
  return r;
}

CoeffRing CoeffRing::extension_field(Coeff p, std::size_t k) {
  if (k == 1) return prime_field(p);
  CoeffRing r = quotient(p, find_irreducible(p, k));
  r.name_ = "F_" + std::to_string(p) + "^" + std::to_string(k);
  return r;
}

CoeffRing CoeffRing::quotient(Coeff p, std::vector<Coeff> modulus) {
  if (!is_prime(p)) throw Error(ErrorCode::BadParams, "coefficient ring needs a prime");
  trim(modulus);
  if (modulus.size() < 2 || modulus.back() != 1) throw Error(ErrorCode::BadParams, "modulus must be monic of degree >= 1");
  CoeffRing r;
  r.p_ = p;
  r.dim_ = modulus.size() - 1;
  r.name_ = "F_" + std::to_string(p) + "[t]/(" + vec_text(modulus) + ")";
  r.one_.assign(r.dim_, 0);
  r.one_[0] = 1;
  r.table_.resize(r.dim_ * r.dim_);
  for (std::size_t i = 0; i < r.dim_; ++i)
    for (std::size_t j = 0; j < r.dim_; ++j) {
      UPoly t(i + j + 1, 0);
      t[i + j] = 1;
      UPoly red = upoly_mod(t, modulus, p);
      red.resize(r.dim_, 0);
      r.table_[i * r.dim_ + j] = red;
    }
  return r;
}

CoeffRing CoeffRing::split(Coeff p, std::size_t k) {
  if (!is_prime(p) || k == 0) throw Error(ErrorCode::BadParams, "split ring needs a prime and k >= 1");
  CoeffRing r;
  r.p_ = p;
  r.dim_ = k;
  r.name_ = "F_" + std::to_string(p) + "^x" + std::to_string(k);
  r.one_.assign(k, 1);
  r.table_.assign(k * k, Vec(k, 0));
  for (std::size_t i = 0; i < k; ++i) r.table_[i * k + i][i] = 1;
  return r;
}

Vec CoeffRing::basis(std::size_t i) const {
  Vec v(dim_, 0);
  v[i] = 1;
  return v;
}

Vec CoeffRing::mul(const Vec& a, const Vec& b) const {
  Vec out(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (!b[j]) continue;
      Coeff c = mod_mul(a[i], b[j], p_);
      const Vec& t = table_[i * dim_ + j];
      for (std::size_t k = 0; k < dim_; ++k) out[k] = mod_add(out[k], mod_mul(c, t[k], p_), p_);
    }
  }
  return out;
}

Matrix CoeffRing::mul_matrix(const Vec& a) const {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < dim_; ++j) cols.push_back(mul(a, basis(j)));
  return columns_to_matrix(p_, cols);
}

Vec CoeffRing::random(std::mt19937_64& rng) const {
  Vec v(dim_);
  for (auto& c : v) c = static_cast<Coeff>(rng() % p_);
  return v;
}

std::string CoeffRing::validate() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    if (mul(one_, basis(i)) != basis(i)) return "one is not a unit on basis element " + std::to_string(i);
    for (std::size_t j = 0; j < dim_; ++j) {
      if (mul(basis(i), basis(j)) != mul(basis(j), basis(i)))
        return "basis elements " + std::to_string(i) + ", " + std::to_string(j) + " do not commute";
      for (std::size_t k = 0; k < dim_; ++k)
        if (mul(mul(basis(i), basis(j)), basis(k)) != mul(basis(i), mul(basis(j), basis(k))))
          return "associativity fails on basis triple " + std::to_string(i) + ", " + std::to_string(j) + ", " +
                 std::to_string(k);
    }
  }
  return {};
}

// ---- instances

TsInstance::TsInstance(const StandardAlgebraData& data, CoeffRing ring, std::vector<Vec> r)
    : ring_(std::move(ring)), r_(std::move(r)), p_(data.p), n_(data.n), d_(ring_.dim()) {
  if (ring_.prime() != p_) throw Error(ErrorCode::BadParams, "coefficient ring over a different prime");
  if (r_.size() != n_) throw Error(ErrorCode::ArityMismatch, "expected one parameter per generator");
  for (const auto& v : r_)
    if (v.size() != d_) throw Error(ErrorCode::ArityMismatch, "parameter is not an element of the coefficient ring");
  auto copy = std::make_shared<StandardAlgebraData>(data);
  copy->embedding.reset();
  data_ = std::move(copy);
  dim_ = d_;
  for (std::size_t j = 0; j < n_; ++j) dim_ *= p_;
  build_multiplication();
  act_.reserve(data.group.order());
  for (Element h = 0; h < data.group.order(); ++h) act_.push_back(action_matrix(data_->action[h]));
}

Vec TsInstance::scalar(const Vec& c) const {
  Vec v(dim_, 0);
  for (std::size_t s = 0; s < d_; ++s) v[s] = c[s];
  return v;
}

Vec TsInstance::one() const { return scalar(ring_.one()); }

Vec TsInstance::y(std::size_t j) const { return m_[j].apply(one()); }

Vec TsInstance::apply_poly(const SparsePoly& f, const Vec& v) const {
  Vec out(dim_, 0);
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    Vec w = v;
    for (std::size_t k = 0; k < n_; ++k)
      for (unsigned i = 0; i < e[k]; ++i) w = m_[k].apply(w);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = mod_add(out[i], mod_mul(f.coeff(t), w[i], p_), p_);
  }
  return out;
}

void TsInstance::build_multiplication() {
  const auto& data = *data_;
  std::vector<std::size_t> stride(n_ + 1, d_);
  for (std::size_t j = 0; j < n_; ++j) stride[j + 1] = stride[j] * p_;
  auto digit = [&](std::size_t idx, std::size_t j) { return (idx / stride[j]) % p_; };
  auto unit = [&](std::size_t idx) {
    Vec v(dim_, 0);
    v[idx] = 1;
    return v;
  };
  // r * v acts blockwise on the coefficient coordinates
  auto scale = [&](const Vec& c, const Vec& v) {
    Vec out(dim_, 0);
    for (std::size_t block = 0; block < dim_; block += d_) {
      Vec part(v.begin() + block, v.begin() + block + d_);
      Vec prod = ring_.mul(c, part);
      std::copy(prod.begin(), prod.end(), out.begin() + block);
    }
    return out;
  };

  m_.assign(n_, Matrix(p_, dim_, dim_));
  // gamma_j only mentions Y_{>j}, so building from the top index down only
  // ever uses operators that are already complete
  for (std::size_t jj = n_; jj-- > 0;) {
    for (std::size_t k = 0; k <= jj; ++k)
      if (data.gamma[jj].mentions(k)) throw Error(ErrorCode::BadParams, "gamma is not triangular");
    Matrix m(p_, dim_, dim_);
    for (std::size_t col = 0; col < dim_; ++col) {
      Vec image;
      if (digit(col, jj) + 1 < p_) {
        image = unit(col + stride[jj]);
      } else {
        std::size_t base = col - (p_ - 1) * stride[jj];
        Vec v = unit(base);
        image = vadd(unit(base + stride[jj]), apply_poly(data.gamma[jj], v), p_);
        image = vsub(image, scale(r_[jj], v), p_);
      }
      for (std::size_t row = 0; row < dim_; ++row) m.at(row, col) = image[row];
    }
    m_[jj] = std::move(m);
  }

  basis_.clear();
  basis_.reserve(dim_);
  for (std::size_t b = 0; b < dim_; ++b) {
    std::vector<Vec> cols;
    cols.reserve(dim_);
    const Vec es = ring_.basis(b % d_);
    for (std::size_t c = 0; c < dim_; ++c) {
      Vec v = scale(es, unit(c));
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t i = 0; i < digit(b, j); ++i) v = m_[j].apply(v);
      cols.push_back(std::move(v));
    }
    basis_.push_back(columns_to_matrix(p_, cols));
  }
}

Matrix TsInstance::mul_matrix(const Vec& a) const {
  Matrix m(p_, dim_, dim_);
  for (std::size_t b = 0; b < dim_; ++b)
    if (a[b]) m = m + basis_[b].scaled(a[b]);
  return m;
}

Vec TsInstance::mul(const Vec& a, const Vec& b) const {
  Vec out(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!a[i]) continue;
    Vec t = basis_[i].apply(b);
    for (std::size_t k = 0; k < dim_; ++k) out[k] = mod_add(out[k], mod_mul(a[i], t[k], p_), p_);
  }
  return out;
}

Vec TsInstance::pow(const Vec& a, std::uint64_t e) const {
  Vec result = one(), base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

Vec TsInstance::eval(const SparsePoly& f) const {
  if (f.nvars() != n_) throw Error(ErrorCode::ArityMismatch, "polynomial in the wrong number of generators");
  return apply_poly(f, one());
}

Vec TsInstance::monomial(std::span<const std::size_t> steps) const {
  Vec v = one();
  for (auto j : steps) v = m_.at(j).apply(v);
  return v;
}

Vec TsInstance::point() const { return eval(data_->point); }

Matrix TsInstance::action_matrix(const Substitution& s) const {
  std::vector<Matrix> u;
  u.reserve(n_);
  for (std::size_t j = 0; j < n_; ++j) u.push_back(mul_matrix(eval(s[j])));
  std::vector<Vec> cols;
  cols.reserve(dim_);
  for (std::size_t b = 0; b < dim_; ++b) {
    Vec v = scalar(ring_.basis(b % d_));
    std::size_t rest = b / d_;
    for (std::size_t j = 0; j < n_; ++j, rest /= p_)
      for (std::size_t i = 0; i < rest % p_; ++i) v = u[j].apply(v);
    cols.push_back(std::move(v));
  }
  return columns_to_matrix(p_, cols);
}

std::string TsInstance::basis_label(std::size_t i) const {
  std::ostringstream out;
  bool any = false;
  if (d_ > 1) {
    out << "e" << i % d_;
    any = true;
  }
  std::size_t rest = i / d_;
  for (std::size_t j = 0; j < n_; ++j, rest /= p_) {
    if (rest % p_ == 0) continue;
    out << (any ? "*" : "") << "Y" << j << "^" << rest % p_;
    any = true;
  }
  if (!any) out << "1";
  return out.str();
}

std::vector<std::string> TsInstance::rewrite_rules() const {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < n_; ++j) {
    std::ostringstream rule;
    rule << "Y" << j << "^" << p_ << " -> Y" << j << " + (" << data_->gamma[j].to_text("Y") << ") - " << vec_text(r_[j]);
    out.push_back(rule.str());
  }
  return out;
}

TsInstance TsInstance::with_corrupted_action(Element h) const {
  TsInstance copy = *this;
  copy.act_.at(h) = Matrix::identity(p_, dim_);
  return copy;
}

// ---- verification

Checks check_relations(const TsInstance& a) {
  Checks out;
  const auto& data = a.data();
  {
    Stopwatch sw;
    Check c{"instance.relations", "", true, "sigma_i(Y) acts as multiplication by r_i", "", 0};
    for (std::size_t j = 0; j < a.n() && c.pass; ++j) {
      for (std::size_t b = 0; b < a.dim() && c.pass; ++b) {
        Vec e(a.dim(), 0);
        e[b] = 1;
        Vec lhs = a.mul(a.eval(data.sigma[j]), e);
        Vec rhs = a.mul(a.scalar(a.parameters()[j]), e);
        if (lhs != rhs) {
          c.pass = false;
          c.witness = "sigma_" + std::to_string(j) + " on basis element " + a.basis_label(b);
        }
      }
    }
    c.seconds = sw.seconds();
    out.push_back(c);
  }
  {
    Stopwatch sw;
    Check c{"instance.commuting", "", true, "multiplication operators of the generators commute", "", 0};
    for (std::size_t i = 0; i < a.n() && c.pass; ++i)
      for (std::size_t j = i + 1; j < a.n() && c.pass; ++j)
        if (a.y_matrix(i) * a.y_matrix(j) != a.y_matrix(j) * a.y_matrix(i)) {
          c.pass = false;
          c.witness = "Y" + std::to_string(i) + ", Y" + std::to_string(j);
        }
    c.seconds = sw.seconds();
    out.push_back(c);
  }
  return out;
}

Checks verify_instance(const TsInstance& a, std::uint64_t seed) {
  Checks out = check_relations(a);
  const Coeff p = a.prime();
  const auto& g = a.data().group;
  const std::size_t dim = a.dim();
  const std::size_t d = a.ring().dim();
  std::mt19937_64 rng(seed);

  {
    Stopwatch sw;
    std::size_t expect = d;
    for (std::size_t j = 0; j < a.n(); ++j) expect *= p;
    Check c{"instance.dimension", "", dim == expect,
            "dim_Fp A = " + std::to_string(dim) + ", p^n dim R = " + std::to_string(expect), "", 0};
    if (!c.pass) c.witness = std::to_string(dim);
    c.seconds = sw.seconds();
    out.push_back(c);
  }
  const Vec w = a.point();
  {
    Stopwatch sw;
    Vec tr(dim, 0);
    for (Element h = 0; h < g.order(); ++h) tr = vadd(tr, a.act(w, h), p);
    Check c{"instance.trace_of_point", "", tr == a.one(), "sum over G of the image of the point is 1", "", 0};
    if (!c.pass) c.witness = "trace = " + vec_text(tr);
    c.seconds = sw.seconds();
    out.push_back(c);
  }
  {
    Stopwatch sw;
    auto kernel_dim = [&](std::span<const Element> elems) {
      Matrix stacked;
      for (Element h : elems) stacked = stacked.stacked(a.action(h) - Matrix::identity(p, dim));
      return dim - stacked.rank();
    };
    auto gens = generators(g);
    std::size_t kd = kernel_dim(gens);
    Check c{"instance.fixed_dimension", "", kd == d,
            "dim_Fp A^G = " + std::to_string(kd) + " from generators, dim R = " + std::to_string(d), "", 0};
    if (g.order() <= 8) {
      std::vector<Element> all(g.order());
      for (Element h = 0; h < g.order(); ++h) all[h] = h;
      std::size_t ka = kernel_dim(all);
      c.detail += "; all elements give " + std::to_string(ka);
      if (ka != kd) c.pass = false;
    }
    if (!c.pass) c.witness = "fixed subspace dimension " + std::to_string(kd);
    c.seconds = sw.seconds();
    out.push_back(c);
  }
  {
    Stopwatch sw;
    std::vector<Vec> rows;
    for (Element h = 0; h < g.order(); ++h) {
      Vec wh = a.act(w, h);
      for (std::size_t s = 0; s < d; ++s) rows.push_back(a.mul(a.scalar(a.ring().basis(s)), wh));
    }
    std::size_t rank = rows_to_matrix(p, rows).rank();
    Check c{"instance.free_orbit", "", rank == dim,
            "F_p-rank of R-span of the orbit of the point = " + std::to_string(rank), "", 0};
    if (!c.pass) c.witness = "rank " + std::to_string(rank) + " < " + std::to_string(dim);
    c.seconds = sw.seconds();
    out.push_back(c);
  }
  {
    Stopwatch sw;
    Check c{"instance.action_multiplicative", "", true, "act(ab) = act(a) act(b) on 10 random pairs per element", "", 0};
    for (Element h = 0; h < g.order() && c.pass; ++h) {
      for (int t = 0; t < 10 && c.pass; ++t) {
        Vec x(dim), y(dim);
        for (auto& v : x) v = static_cast<Coeff>(rng() % p);
        for (auto& v : y) v = static_cast<Coeff>(rng() % p);
        if (a.act(a.mul(x, y), h) != a.mul(a.act(x, h), a.act(y, h))) {
          c.pass = false;
          c.witness = "element " + std::to_string(h) + ", a = " + vec_text(x) + ", b = " + vec_text(y);
        }
      }
      for (std::size_t s = 0; s < d && c.pass; ++s) {
        Vec e = a.scalar(a.ring().basis(s));
        if (a.act(e, h) != e) {
          c.pass = false;
          c.witness = "element " + std::to_string(h) + " moves coefficient basis element " + std::to_string(s);
        }
      }
    }
    c.seconds = sw.seconds();
    out.push_back(c);
  }
  {
    Stopwatch sw;
    Check c{"instance.group_law", "", true, "act(g h) = act(h) after act(g) for all pairs", "", 0};
    for (Element x = 0; x < g.order() && c.pass; ++x)
      for (Element y = 0; y < g.order() && c.pass; ++y)
        if (a.action(g.mul(x, y)) != a.action(y) * a.action(x)) {
          c.pass = false;
          c.witness = "pair (" + std::to_string(x) + ", " + std::to_string(y) + ")";
        }
    c.seconds = sw.seconds();
    out.push_back(c);
  }
  return out;
}

ArtinSchreierReport artin_schreier_demo(Coeff p, Coeff gamma) {
  if (!is_prime(p)) throw Error(ErrorCode::BadParams, "p must be prime");
  ArtinSchreierReport rep;
  rep.p = p;
  rep.gamma = gamma % p;
  auto data = build_standard(cyclic_group(p, 1));
  // sigma = Y - Y^p = r with r = -gamma gives Y^p - Y - gamma = 0
  TsInstance a(data, CoeffRing::prime_field(p), {Vec{mod_neg(rep.gamma, p)}});
  const std::size_t dim = a.dim();

  rep.has_root = false;
  for (Coeff x = 0; x < p; ++x)
    if (mod_sub(mod_sub(mod_pow(x, p, p), x, p), rep.gamma, p) == 0) rep.has_root = true;

  std::vector<Vec> frob_cols;
  for (std::size_t b = 0; b < dim; ++b) {
    Vec e(dim, 0);
    e[b] = 1;
    frob_cols.push_back(a.pow(e, p));
  }
  Matrix frob = columns_to_matrix(p, frob_cols);
  rep.frobenius_fixed = dim - (frob - Matrix::identity(p, dim)).rank();
  rep.is_field = rep.frobenius_fixed == 1;
  rep.fixed_ring_dim = dim - (a.action(1) - Matrix::identity(p, dim)).rank();

  std::vector<Vec> conj;
  const Vec beta = a.y(0);
  for (Coeff i = 0; i < p; ++i) conj.push_back(a.pow(vsub(beta, a.scalar({i}), p), p - 1));
  rep.normal_basis_rank = rows_to_matrix(p, conj).rank();

  Element frob_elem = 0;
  for (Element h = 0; h < p; ++h)
    if (a.action(h) == frob) {
      rep.action_is_frobenius = true;
      frob_elem = h;
    }

  const std::string subject = "Y^" + std::to_string(p) + " - Y - " + std::to_string(rep.gamma) + " over F_" + std::to_string(p);
  rep.checks = verify_instance(a, 0);
  for (auto& c : rep.checks) c.subject = subject;
  {
    Check c{"artin_schreier.field_iff_no_root", subject, rep.is_field == !rep.has_root,
            "irreducible factors = " + std::to_string(rep.frobenius_fixed) + ", root in F_p: " +
                (rep.has_root ? "yes" : "no"),
            "", 0};
    if (!c.pass) c.witness = "Frobenius-fixed dimension " + std::to_string(rep.frobenius_fixed);
    rep.checks.push_back(c);
  }
  if (rep.is_field) {
    Check c{"artin_schreier.normal_basis", subject, rep.normal_basis_rank == p,
            "rank of {(beta - i)^(p-1)} = " + std::to_string(rep.normal_basis_rank), "", 0};
    if (!c.pass) c.witness = "rank " + std::to_string(rep.normal_basis_rank);
    rep.checks.push_back(c);
    Check f{"artin_schreier.galois_group_is_frobenius", subject, rep.action_is_frobenius,
            rep.action_is_frobenius ? "Frobenius is the action of element " + std::to_string(frob_elem)
                                    : "no group element acts as Frobenius",
            "", 0};
    if (!f.pass) f.witness = "Frobenius matrix not among the action matrices";
    rep.checks.push_back(f);
  }
  return rep;
}

}  // namespace tsalg
