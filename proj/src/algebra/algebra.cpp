#include "msf/algebra/algebra.hpp"

#include <algorithm>
#include <random>

#include "msf/error.hpp"

namespace msf::algebra {

using ff::vec_add;
using ff::vec_is_zero;
using ff::vec_sub;

void Algebra::for_each_basis_product(const Vec& a,
                                     const std::function<bool(std::size_t, const Vec&)>& visit) const {
  for (std::size_t k = 0; k < dim(); ++k) {
    if (!visit(k, mul(a, basis(k)))) return;
  }
}

std::vector<Vec> Algebra::generators() const {
  std::vector<Vec> out;
  for (std::size_t k = 0; k < dim(); ++k) out.push_back(basis(k));
  return out;
}

std::size_t Algebra::idempotent_rank(const Vec& e) const { return ff::rank(field(), mult_matrix(e)); }

Vec Algebra::basis(std::size_t k) const {
  Vec v(dim(), 0);
  v[k] = field().one();
  return v;
}

Matrix Algebra::mult_matrix(const Vec& a) const {
  Matrix m(dim(), dim());
  for_each_basis_product(a, [&](std::size_t k, const Vec& col) {
    for (std::size_t r = 0; r < col.size(); ++r) m.at(r, k) = col[r];
    return true;
  });
  return m;
}

Vec Algebra::pow(const Vec& a, std::uint64_t k, const Vec& unit) const {
  Vec result = unit;
  Vec base = a;
  bool first = true;
  while (k) {
    if (k & 1) {
      result = first ? base : mul(result, base);
      first = false;
    }
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return result;
}

TableAlgebra::TableAlgebra(FieldCtx field, std::size_t dim, std::vector<Vec> table, Vec one)
    : field_(std::move(field)), dim_(dim), table_(std::move(table)), one_(std::move(one)) {
  if (table_.size() != dim_ * dim_ || one_.size() != dim_) throw InvalidInput("structure table shape mismatch");
  for (const auto& v : table_) {
    if (v.size() != dim_) throw InvalidInput("structure table shape mismatch");
  }
}

TableAlgebra TableAlgebra::split(const FieldCtx& field, std::size_t k) {
  std::vector<Vec> table(k * k, Vec(k, 0));
  for (std::size_t i = 0; i < k; ++i) table[i * k + i][i] = field.one();
  return TableAlgebra(field, k, std::move(table), Vec(k, field.one()));
}

Vec TableAlgebra::mul(const Vec& a, const Vec& b) const {
  Vec out(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (b[j] == 0) continue;
      ff::vec_axpy(field_, out, field_.mul(a[i], b[j]), table_[i * dim_ + j]);
    }
  }
  return out;
}

bool TableAlgebra::verify(std::size_t samples) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    if (mul(one_, basis(i)) != basis(i)) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (table_[i * dim_ + j] != table_[j * dim_ + i]) return false;
    }
  }
  std::mt19937_64 rng(dim_);
  for (std::size_t t = 0; t < samples && dim_ > 0; ++t) {
    const Vec a = basis(rng() % dim_), b = basis(rng() % dim_), c = basis(rng() % dim_);
    if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
  }
  return true;
}

TableAlgebra build_quotient_algebra(const ff::Poly& f, const FieldCtx& field) {
  if (f.degree() < 1) throw InvalidInput("modulus must have degree at least 1");
  if (f.lead() != field.one()) throw InvalidInput("modulus must be monic");
  const std::size_t n = static_cast<std::size_t>(f.degree());
  std::vector<Vec> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vec mono(i + j + 1, 0);
      mono[i + j] = field.one();
      ff::Poly r = ff::rem(field, ff::Poly(std::move(mono)), f);
      Vec v(n, 0);
      std::copy(r.c.begin(), r.c.end(), v.begin());
      table[i * n + j] = std::move(v);
    }
  }
  Vec one(n, 0);
  one[0] = field.one();
  return TableAlgebra(field, n, std::move(table), std::move(one));
}

bool is_zero(const Vec& a) { return vec_is_zero(a); }

Ideal ideal_from_idempotent(const Algebra& alg, Vec e) {
  Ideal out;
  out.dim = is_zero(e) ? 0 : alg.idempotent_rank(e);
  out.e = std::move(e);
  return out;
}

Vec support_idempotent(const Algebra& alg, const Vec& z) {
  if (is_zero(z)) return alg.zero();
  return alg.pow(z, alg.field().order() - 1);
}

namespace {

Vec idem_sum(const Algebra& alg, const Vec& a, const Vec& b) {
  return vec_sub(alg.field(), vec_add(alg.field(), a, b), alg.mul(a, b));
}

}  // namespace

Ideal span(const Algebra& alg, const std::vector<Vec>& elements) {
  Vec e = alg.zero();
  for (const auto& z : elements) {
    if (is_zero(z)) continue;
    const Vec ez = support_idempotent(alg, z);
    e = is_zero(e) ? ez : idem_sum(alg, e, ez);
  }
  return ideal_from_idempotent(alg, std::move(e));
}

Ideal product(const Algebra& alg, const Ideal& a, const Ideal& b) {
  if (a.is_zero() || b.is_zero()) return Ideal{alg.zero(), 0};
  return ideal_from_idempotent(alg, alg.mul(a.e, b.e));
}

Ideal intersect(const Algebra& alg, const Ideal& a, const Ideal& b) { return product(alg, a, b); }

Ideal sum(const Algebra& alg, const Ideal& a, const Ideal& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return ideal_from_idempotent(alg, idem_sum(alg, a.e, b.e));
}

Ideal annihilator_in(const Algebra& alg, const Ideal& a, const Ideal& parent) {
  if (a.is_zero()) return parent;
  return ideal_from_idempotent(alg, vec_sub(alg.field(), parent.e, alg.mul(parent.e, a.e)));
}

Ideal whole(const Algebra& alg) { return Ideal{alg.one(), alg.dim()}; }

std::vector<Vec> ideal_basis(const Algebra& alg, const Vec& e) {
  std::vector<Vec> spanning;
  alg.for_each_basis_product(e, [&](std::size_t, const Vec& v) {
    if (!is_zero(v)) spanning.push_back(v);
    return true;
  });
  return ff::echelon_basis(alg.field(), spanning, alg.dim());
}

Vec identity_of(const Algebra& alg, const std::vector<Vec>& basis) {
  if (basis.empty()) throw InvalidInput("identity of the zero ideal");
  const auto& f = alg.field();
  const std::size_t k = basis.size();
  const std::size_t d = alg.dim();
  // unknown lambda in F^k; equations sum_i lambda_i (b_i b_j) = b_j for all j
  Matrix m(k * d, k);
  Vec rhs(k * d, 0);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      const Vec prod = alg.mul(basis[i], basis[j]);
      for (std::size_t r = 0; r < d; ++r) m.at(j * d + r, i) = prod[r];
    }
    for (std::size_t r = 0; r < d; ++r) rhs[j * d + r] = basis[j][r];
  }
  auto lambda = ff::solve(f, m, rhs);
  if (!lambda) throw InvalidInput("subspace has no identity element");
  Vec e(d, 0);
  for (std::size_t i = 0; i < k; ++i) ff::vec_axpy(f, e, (*lambda)[i], basis[i]);
  return e;
}

Ideal hom_kernel(const Algebra& alg, const Ideal& ideal, const std::function<Vec(const Vec&)>& phi) {
  if (ideal.is_zero()) return ideal;
  const auto basis = ideal_basis(alg, ideal.e);
  std::vector<Vec> images;
  images.reserve(basis.size());
  for (const auto& b : basis) images.push_back(phi(b));
  const std::size_t rows = images.front().size();
  const auto ker = ff::nullspace(alg.field(), Matrix::from_columns(images, rows));
  std::vector<Vec> elements;
  for (const auto& coeffs : ker) {
    Vec v(alg.dim(), 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) ff::vec_axpy(alg.field(), v, coeffs[i], basis[i]);
    elements.push_back(std::move(v));
  }
  return span(alg, elements);
}

bool invertible_in(const Algebra& alg, const Vec& z, const Vec& unit) {
  if (is_zero(z)) return is_zero(unit);
  return alg.pow(z, alg.field().order() - 1, unit) == unit;
}

Vec inverse_in(const Algebra& alg, const Vec& z, const Vec& unit) {
  return alg.pow(z, alg.field().order() - 2, unit);
}

}  // namespace msf::algebra
