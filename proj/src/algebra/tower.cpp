#include "msf/algebra/tower.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "msf/error.hpp"

namespace msf::algebra {

namespace {

// Multiplication by a fixed coefficient is cached as a dense matrix when the
// coefficient algebra is at most this large.
constexpr std::size_t kMatrixLimit = 600;

bool scalar_like(const Vec& v) {
  return std::all_of(v.begin() + 1, v.end(), [](Elem x) { return x == 0; });
}

bool block_zero(const Elem* p, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    if (p[i] != 0) return false;
  }
  return true;
}

}  // namespace

std::size_t default_dim_cap() {
  if (const char* env = std::getenv("MSF_MAX_DIM")) {
    try {
      const long long v = std::stoll(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 20000;
}

// ---------------------------------------------------------------------------

const FieldCtx& LevelAlgebra::field() const { return tower_->field(); }
std::size_t LevelAlgebra::dim() const { return tower_->dim(level_); }
Vec LevelAlgebra::one() const { return tower_->one(level_); }
Vec LevelAlgebra::mul(const Vec& a, const Vec& b) const { return tower_->mul(level_, a, b); }

void LevelAlgebra::for_each_basis_product(const Vec& a,
                                          const std::function<bool(std::size_t, const Vec&)>& visit) const {
  tower_->for_each_monomial_product(level_, a, visit);
}

std::vector<Vec> LevelAlgebra::generators() const {
  std::vector<Vec> out;
  for (unsigned i = 1; i <= level_; ++i) out.push_back(tower_->var(level_, i));
  return out;
}

std::size_t LevelAlgebra::idempotent_rank(const Vec& e) const { return tower_->support_size(level_, e); }

// ---------------------------------------------------------------------------

Tower::Tower(FieldCtx field, Kind kind, unsigned n, unsigned levels)
    : field_(std::move(field)), kind_(kind), n_(n), levels_(levels) {}

std::shared_ptr<const Tower> Tower::essential(const FieldCtx& field, const ff::Poly& f, unsigned levels,
                                              std::size_t cap) {
  if (f.degree() < 1) throw InvalidInput("polynomial must be nonconstant");
  if (f.lead() != field.one()) throw InvalidInput("polynomial must be monic");
  const auto n = static_cast<unsigned>(f.degree());
  if (levels < 1 || levels > n) throw InvalidInput("level must lie in [1, deg f]");
  std::shared_ptr<Tower> t(new Tower(field, Kind::Essential, n, levels));
  t->build(f, cap);
  return t;
}

std::shared_ptr<const Tower> Tower::tensor(const FieldCtx& field, const ff::Poly& f, unsigned levels,
                                           std::size_t cap) {
  if (f.degree() < 1) throw InvalidInput("polynomial must be nonconstant");
  if (f.lead() != field.one()) throw InvalidInput("polynomial must be monic");
  if (levels < 1) throw InvalidInput("level must be at least 1");
  std::shared_ptr<Tower> t(new Tower(field, Kind::Tensor, static_cast<unsigned>(f.degree()), levels));
  t->build(f, cap);
  return t;
}

void Tower::build(const ff::Poly& f, std::size_t cap) {
  dim_ = {1};
  deg_ = {0};
  levels_data_.resize(levels_ + 1);
  levels_data_[0].trace = {field_.one()};
  views_.push_back(std::make_unique<LevelAlgebra>(this, 0));
  for (unsigned s = 1; s <= levels_; ++s) {
    const std::size_t d = kind_ == Kind::Essential ? n_ - s + 1 : n_;
    const std::size_t dl = dim_[s - 1];
    if (dl > cap / d) {
      throw LimitExceeded("algebra dimension at level " + std::to_string(s) + " exceeds the cap of " +
                          std::to_string(cap));
    }
    dim_.push_back(dl * d);
    deg_.push_back(d);
    auto& data = levels_data_[s];
    if (s == 1 || kind_ == Kind::Tensor) {
      for (std::size_t j = 0; j < d; ++j) data.g.push_back(scalar(s - 1, f.coeff(j)));
    } else {
      // F_s(X) = F_{s-1}(X) / (X - x_{s-1}) over A_{s-1}
      const auto& prev = levels_data_[s - 1].g;
      const std::size_t dp = deg_[s - 1];
      std::vector<Vec> a;
      for (std::size_t j = 0; j < dp; ++j) a.push_back(lift(s - 2, prev[j], s - 1));
      std::vector<Vec> q(dp);
      q[dp - 1] = one(s - 1);
      for (std::size_t k = dp - 1; k >= 1; --k) {
        q[k - 1] = ff::vec_add(field_, a[k], mul_var(s - 1, q[k], s - 1));
      }
      const Vec remainder = ff::vec_add(field_, a[0], mul_var(s - 1, q[0], s - 1));
      if (!ff::vec_is_zero(remainder)) {
        throw InvalidInput("nonzero remainder building level " + std::to_string(s) +
                           ": polynomial is not squarefree and split");
      }
      q.pop_back();
      data.g = std::move(q);
    }
    finish_level(s);
  }
}

void Tower::finish_level(unsigned s) {
  auto& data = levels_data_[s];
  const std::size_t d = deg_[s];
  const std::size_t dl = dim_[s - 1];
  auto cache_matrix = [&](const Vec& v) {
    Matrix m(dl, dl);
    for_each_monomial_product(s - 1, v, [&](std::size_t k, const Vec& prod) {
      std::copy(prod.begin(), prod.end(), m.row(k).begin());
      return true;
    });
    return m;
  };
  data.g_scalar.resize(d);
  data.g_mat.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    data.g_scalar[j] = scalar_like(data.g[j]);
    if (!data.g_scalar[j] && dl <= kMatrixLimit) data.g_mat[j] = cache_matrix(data.g[j]);
  }

  // Newton: P_k + g_{d-1} P_{k-1} + ... + g_{d-k+1} P_1 + k g_{d-k} = 0
  data.power_sums.assign(d, Vec());
  data.power_sums[0] = scalar(s - 1, field_.from_int(static_cast<std::int64_t>(d)));
  for (std::size_t k = 1; k < d; ++k) {
    Vec acc = ff::vec_scale(field_, data.g[d - k], field_.from_int(static_cast<std::int64_t>(k)));
    for (std::size_t i = 1; i < k; ++i) acc = ff::vec_add(field_, acc, mul(s - 1, data.g[d - i], data.power_sums[k - i]));
    for (auto& x : acc) x = field_.neg(x);
    data.power_sums[k] = std::move(acc);
  }
  data.p_scalar.resize(d);
  data.p_mat.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    data.p_scalar[k] = scalar_like(data.power_sums[k]);
    if (!data.p_scalar[k] && dl <= kMatrixLimit) data.p_mat[k] = cache_matrix(data.power_sums[k]);
  }

  // trace_s(a) = sum_k trace_{s-1}(a_k P_k)
  const Vec& lower = levels_data_[s - 1].trace;
  data.trace.assign(dim_[s], 0);
  for (std::size_t k = 0; k < d; ++k) {
    Elem* block = data.trace.data() + k * dl;
    const Vec& pk = data.power_sums[k];
    if (data.p_scalar[k]) {
      for (std::size_t mu = 0; mu < dl; ++mu) block[mu] = field_.mul(pk[0], lower[mu]);
      continue;
    }
    auto dot = [&](std::span<const Elem> v) {
      Elem acc = 0;
      for (std::size_t r = 0; r < dl; ++r) {
        if (v[r] != 0 && lower[r] != 0) acc = field_.mul_add(v[r], lower[r], acc);
      }
      return acc;
    };
    if (data.p_mat[k].rows() == dl) {
      for (std::size_t mu = 0; mu < dl; ++mu) block[mu] = dot(data.p_mat[k].row(mu));
    } else {
      for_each_monomial_product(s - 1, pk, [&](std::size_t mu, const Vec& prod) {
        block[mu] = dot(prod);
        return true;
      });
    }
  }
  views_.push_back(std::make_unique<LevelAlgebra>(this, s));
}

// ---------------------------------------------------------------------------

Vec Tower::one(unsigned s) const { return scalar(s, field_.one()); }

Vec Tower::scalar(unsigned s, Elem c) const {
  Vec v(dim_.at(s), 0);
  v[0] = c;
  return v;
}

Vec Tower::var(unsigned s, unsigned i) const {
  if (i < 1 || i > s) throw InvalidInput("variable index out of range");
  return mul_var(s, one(s), i);
}

Vec Tower::mul(unsigned s, const Vec& a, const Vec& b) const {
  Vec out(dim_.at(s), 0);
  mul_acc(s, a.data(), b.data(), out.data());
  return out;
}

Vec Tower::mul_var(unsigned s, const Vec& a, unsigned i) const {
  if (i < 1 || i > s) throw InvalidInput("variable index out of range");
  Vec out(dim_.at(s));
  mul_var_into(s, a.data(), i, out.data());
  return out;
}

Vec Tower::lift(unsigned t, const Vec& a, unsigned s) const {
  if (t > s) throw InvalidInput("cannot lift to a lower level");
  Vec out(dim_.at(s), 0);
  std::copy(a.begin(), a.end(), out.begin());
  return out;
}

void Tower::lower_acc(unsigned s, bool power_sum, std::size_t j, const Elem* c, Elem* out) const {
  const auto& data = levels_data_[s];
  const std::size_t dl = dim_[s - 1];
  const bool scal = power_sum ? data.p_scalar[j] : data.g_scalar[j];
  const Vec& v = power_sum ? data.power_sums[j] : data.g[j];
  if (scal) {
    const Elem x = v[0];
    if (x == 0) return;
    for (std::size_t i = 0; i < dl; ++i) {
      if (c[i] != 0) out[i] = field_.mul_add(c[i], x, out[i]);
    }
    return;
  }
  const Matrix& m = power_sum ? data.p_mat[j] : data.g_mat[j];
  if (m.rows() == dl) {
    for (std::size_t mu = 0; mu < dl; ++mu) {
      const Elem cm = c[mu];
      if (cm == 0) continue;
      const auto row = m.row(mu);
      for (std::size_t r = 0; r < dl; ++r) {
        if (row[r] != 0) out[r] = field_.mul_add(cm, row[r], out[r]);
      }
    }
    return;
  }
  mul_acc(s - 1, c, v.data(), out);
}

void Tower::mul_acc(unsigned s, const Elem* a, const Elem* b, Elem* out) const {
  if (s == 0) {
    out[0] = field_.mul_add(a[0], b[0], out[0]);
    return;
  }
  const std::size_t d = deg_[s];
  const std::size_t dl = dim_[s - 1];
  if (s == 1) {
    Elem stack_buf[128];
    std::vector<Elem> heap_buf;
    Elem* prod = stack_buf;
    if (2 * d - 1 > 128) {
      heap_buf.assign(2 * d - 1, 0);
      prod = heap_buf.data();
    } else {
      std::fill(stack_buf, stack_buf + 2 * d - 1, 0);
    }
    for (std::size_t k = 0; k < d; ++k) {
      if (a[k] == 0) continue;
      for (std::size_t l = 0; l < d; ++l) {
        if (b[l] != 0) prod[k + l] = field_.mul_add(a[k], b[l], prod[k + l]);
      }
    }
    const auto& g = levels_data_[1].g;
    for (std::size_t t = 2 * d - 1; t-- > d;) {
      if (prod[t] == 0) continue;
      const Elem nc = field_.neg(prod[t]);
      for (std::size_t j = 0; j < d; ++j) {
        if (g[j][0] != 0) prod[t - d + j] = field_.mul_add(nc, g[j][0], prod[t - d + j]);
      }
    }
    for (std::size_t i = 0; i < d; ++i) out[i] = field_.add(out[i], prod[i]);
    return;
  }
  std::vector<bool> a_nz(d), b_nz(d);
  for (std::size_t k = 0; k < d; ++k) {
    a_nz[k] = !block_zero(a + k * dl, dl);
    b_nz[k] = !block_zero(b + k * dl, dl);
  }
  std::vector<Elem> prod((2 * d - 1) * dl, 0);
  for (std::size_t k = 0; k < d; ++k) {
    if (!a_nz[k]) continue;
    for (std::size_t l = 0; l < d; ++l) {
      if (b_nz[l]) mul_acc(s - 1, a + k * dl, b + l * dl, prod.data() + (k + l) * dl);
    }
  }
  for (std::size_t t = 2 * d - 1; t-- > d;) {
    Elem* c = prod.data() + t * dl;
    if (block_zero(c, dl)) continue;
    for (std::size_t i = 0; i < dl; ++i) c[i] = field_.neg(c[i]);
    for (std::size_t j = 0; j < d; ++j) lower_acc(s, false, j, c, prod.data() + (t - d + j) * dl);
  }
  for (std::size_t i = 0; i < d * dl; ++i) out[i] = field_.add(out[i], prod[i]);
}

void Tower::mul_var_into(unsigned s, const Elem* a, unsigned i, Elem* out) const {
  const std::size_t d = deg_[s];
  const std::size_t dl = dim_[s - 1];
  if (i < s) {
    for (std::size_t k = 0; k < d; ++k) mul_var_into(s - 1, a + k * dl, i, out + k * dl);
    return;
  }
  std::fill(out, out + dl, 0);
  std::copy(a, a + (d - 1) * dl, out + dl);
  const Elem* top = a + (d - 1) * dl;
  if (block_zero(top, dl)) return;
  std::vector<Elem> neg_top(dl);
  for (std::size_t r = 0; r < dl; ++r) neg_top[r] = field_.neg(top[r]);
  for (std::size_t j = 0; j < d; ++j) lower_acc(s, false, j, neg_top.data(), out + j * dl);
}

Vec Tower::substitute(unsigned src, const Vec& a, unsigned dst, const std::vector<unsigned>& var_map) const {
  if (var_map.size() != src) throw InvalidInput("variable map has the wrong length");
  for (unsigned y : var_map) {
    if (y < 1 || y > dst) throw InvalidInput("variable image out of range");
  }
  const std::size_t dd = dim_.at(dst);
  if (src == 0) return scalar(dst, a[0]);
  // Horner nesting with the most expensive image variable outermost
  std::vector<unsigned> order(src);
  std::iota(order.begin(), order.end(), 1u);
  std::stable_sort(order.begin(), order.end(),
                   [&](unsigned x, unsigned y) { return var_map[x - 1] > var_map[y - 1]; });
  Vec scratch(dd);
  auto eval = [&](auto&& self, unsigned depth, std::size_t base, Vec& r) -> bool {
    const unsigned v = order[depth];
    const std::size_t d = deg_[v];
    const std::size_t stride = dim_[v - 1];
    const unsigned y = var_map[v - 1];
    std::fill(r.begin(), r.end(), 0);
    bool nz = false;
    if (depth + 1 == src) {
      for (std::size_t k = d; k-- > 0;) {
        if (nz) {
          mul_var_into(dst, r.data(), y, scratch.data());
          r.swap(scratch);
        }
        const Elem c = a[base + k * stride];
        if (c != 0) {
          r[0] = field_.add(r[0], c);
          nz = true;
        }
      }
      return nz;
    }
    Vec sub(dd);
    for (std::size_t k = d; k-- > 0;) {
      if (nz) {
        mul_var_into(dst, r.data(), y, scratch.data());
        r.swap(scratch);
      }
      if (self(self, depth + 1, base + k * stride, sub)) {
        for (std::size_t i = 0; i < dd; ++i) {
          if (sub[i] != 0) r[i] = field_.add(r[i], sub[i]);
        }
        nz = true;
      }
    }
    return nz;
  };
  Vec out(dd);
  eval(eval, 0, 0, out);
  return out;
}

Vec Tower::embed_iota(unsigned s, unsigned j, const Vec& a) const {
  if (s < 1 || j < 1 || j > s) throw InvalidInput("slot out of range");
  if (j == s) return lift(s - 1, a, s);
  std::vector<unsigned> map(s - 1);
  for (unsigned i = 1; i < s; ++i) map[i - 1] = i < j ? i : i + 1;
  return substitute(s - 1, a, s, map);
}

Vec Tower::symm_action(unsigned s, const std::vector<unsigned>& sigma, const Vec& a) const {
  if (sigma.size() != s) throw InvalidInput("permutation has the wrong degree");
  std::vector<unsigned> map(s);
  bool identity = true;
  for (unsigned i = 0; i < s; ++i) {
    map[i] = sigma[i] + 1;
    identity = identity && sigma[i] == i;
  }
  if (identity) return a;
  return substitute(s, a, s, map);
}

Vec Tower::relative_trace(unsigned s, const Vec& a) const {
  if (s < 1) throw InvalidInput("no trace below level 1");
  const std::size_t d = deg_[s];
  const std::size_t dl = dim_[s - 1];
  Vec out(dl, 0);
  for (std::size_t k = 0; k < d; ++k) {
    const Elem* block = a.data() + k * dl;
    if (!block_zero(block, dl)) lower_acc(s, true, k, block, out.data());
  }
  return out;
}

Vec Tower::fiber_count(unsigned s, unsigned j, const Vec& a) const {
  if (s < 1 || j < 1 || j > s) throw InvalidInput("slot out of range");
  if (j == s) return relative_trace(s, a);
  std::vector<unsigned> map(s);
  for (unsigned i = 1; i <= s; ++i) map[i - 1] = i == j ? s : (i > j ? i - 1 : i);
  return relative_trace(s, substitute(s, a, s, map));
}

std::size_t Tower::support_size(unsigned s, const Vec& e) const {
  if (s == 0) return e[0] != 0 ? 1 : 0;
  if (ff::vec_is_zero(e)) return 0;
  const std::uint64_t p = field_.characteristic();
  if (p > dim_[s]) {
    const Vec& t = levels_data_[s].trace;
    Elem acc = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0 && t[i] != 0) acc = field_.mul_add(e[i], t[i], acc);
    }
    return field_.to_int(acc);
  }
  const std::size_t d = deg_[s];
  if (d >= p) return level(s).Algebra::idempotent_rank(e);
  // the relative trace takes the values 0..d; split it into level sets
  const Vec c = relative_trace(s, e);
  std::vector<Vec> factor(d + 1);
  for (std::size_t w = 0; w <= d; ++w) {
    factor[w] = c;
    factor[w][0] = field_.sub(factor[w][0], field_.from_int(static_cast<std::int64_t>(w)));
  }
  std::vector<Vec> prefix(d + 2), suffix(d + 2);
  prefix[0] = one(s - 1);
  for (std::size_t w = 0; w <= d; ++w) prefix[w + 1] = mul(s - 1, prefix[w], factor[w]);
  suffix[d + 1] = one(s - 1);
  for (std::size_t w = d + 1; w-- > 0;) suffix[w] = mul(s - 1, suffix[w + 1], factor[w]);
  std::size_t total = 0;
  for (std::size_t v = 1; v <= d; ++v) {
    Elem denom = field_.one();
    for (std::size_t w = 0; w <= d; ++w) {
      if (w != v) denom = field_.mul(denom, field_.from_int(static_cast<std::int64_t>(v) - static_cast<std::int64_t>(w)));
    }
    Vec ind = ff::vec_scale(field_, mul(s - 1, prefix[v], suffix[v + 1]), field_.inv(denom));
    if (!ff::vec_is_zero(ind)) total += v * support_size(s - 1, ind);
  }
  return total;
}

Elem Tower::evaluate_ptr(unsigned s, const Elem* a, std::span<const Elem> point) const {
  if (s == 0) return a[0];
  const std::size_t d = deg_[s];
  const std::size_t dl = dim_[s - 1];
  const Elem x = point[s - 1];
  Elem acc = 0;
  for (std::size_t k = d; k-- > 0;) acc = field_.mul_add(acc, x, evaluate_ptr(s - 1, a + k * dl, point));
  return acc;
}

Elem Tower::evaluate(unsigned s, std::span<const Elem> a, std::span<const Elem> point) const {
  if (point.size() < s || a.size() != dim_.at(s)) throw InvalidInput("evaluation shape mismatch");
  return evaluate_ptr(s, a.data(), point);
}

void Tower::for_each_monomial_product(unsigned s, const Vec& a,
                                      const std::function<bool(std::size_t, const Vec&)>& visit) const {
  const std::size_t total = dim_.at(s);
  if (s == 0) {
    visit(0, a);
    return;
  }
  std::vector<std::size_t> exps(s + 1, 0);
  std::vector<Vec> head(s + 1, a);
  Vec cur = a;
  if (!visit(0, cur)) return;
  for (std::size_t idx = 1; idx < total; ++idx) {
    unsigned i = 1;
    while (exps[i] + 1 == deg_[i]) {
      exps[i] = 0;
      ++i;
    }
    ++exps[i];
    if (i == 1) {
      cur = mul_var(s, cur, 1);
    } else {
      cur = mul_var(s, head[i], i);
      for (unsigned k = 2; k <= i; ++k) head[k] = cur;
    }
    if (!visit(idx, cur)) return;
  }
}

}  // namespace msf::algebra
