#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "msf/ff/field.hpp"
#include "msf/ff/linalg.hpp"
#include "msf/ff/poly.hpp"

namespace msf::algebra {

using ff::Elem;
using ff::FieldCtx;
using ff::Matrix;
using ff::Vec;

/// Finite-dimensional commutative associative F_q-algebra with identity, elements
/// given by coordinates in a fixed basis.
class Algebra {
 public:
  virtual ~Algebra() = default;

  virtual const FieldCtx& field() const = 0;
  virtual std::size_t dim() const = 0;
  virtual Vec one() const = 0;
  virtual Vec mul(const Vec& a, const Vec& b) const = 0;

  /// Calls visit(k, a * b_k) for k = 0, 1, ... in basis order until it returns false.
  virtual void for_each_basis_product(const Vec& a,
                                      const std::function<bool(std::size_t, const Vec&)>& visit) const;
  /// Elements generating the algebra together with the identity.
  virtual std::vector<Vec> generators() const;
  /// dim(e A) for an idempotent e. Default: rank of the multiplication operator.
  virtual std::size_t idempotent_rank(const Vec& e) const;

  Vec zero() const { return Vec(dim(), 0); }
  Vec basis(std::size_t k) const;
  /// Columns are a * b_k.
  Matrix mult_matrix(const Vec& a) const;
  /// a^k with a^0 = unit. The unit must be an idempotent with a = unit * a.
  Vec pow(const Vec& a, std::uint64_t k, const Vec& unit) const;
  Vec pow(const Vec& a, std::uint64_t k) const { return pow(a, k, one()); }
};

/// Explicit structure constants: table[i * dim + j] = b_i * b_j.
class TableAlgebra final : public Algebra {
 public:
  TableAlgebra(FieldCtx field, std::size_t dim, std::vector<Vec> table, Vec one);

  /// F_q^k with componentwise product.
  static TableAlgebra split(const FieldCtx& field, std::size_t k);

  const FieldCtx& field() const override { return field_; }
  std::size_t dim() const override { return dim_; }
  Vec one() const override { return one_; }
  Vec mul(const Vec& a, const Vec& b) const override;
  const Vec& product_of_basis(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }

  /// Commutativity, associativity on `samples` basis triples, and the identity law.
  bool verify(std::size_t samples = 64) const;

 private:
  FieldCtx field_;
  std::size_t dim_;
  std::vector<Vec> table_;
  Vec one_;
};

/// F_q[x]/(f) on the basis 1, x, ..., x^{n-1}. f must be monic of degree >= 1.
TableAlgebra build_quotient_algebra(const ff::Poly& f, const FieldCtx& field);

// ---------------------------------------------------------------------------
// Ideals of split semisimple algebras.
//
// Every ideal I is principal and generated by its identity idempotent e_I, so an
// ideal is carried as that idempotent together with its dimension. Explicit echelon
// bases are produced on request.

struct Ideal {
  Vec e;
  std::size_t dim = 0;

  bool is_zero() const { return dim == 0; }
  friend bool operator==(const Ideal&, const Ideal&) = default;
};

/// Returns true iff a is zero.
bool is_zero(const Vec& a);

/// Ideal with idempotent e; the dimension is taken from the algebra.
Ideal ideal_from_idempotent(const Algebra& alg, Vec e);
/// Idempotent of the principal ideal generated by z: z^(q-1).
Vec support_idempotent(const Algebra& alg, const Vec& z);
/// Ideal generated by a list of elements.
Ideal span(const Algebra& alg, const std::vector<Vec>& elements);
Ideal product(const Algebra& alg, const Ideal& a, const Ideal& b);
Ideal intersect(const Algebra& alg, const Ideal& a, const Ideal& b);
Ideal sum(const Algebra& alg, const Ideal& a, const Ideal& b);
/// {x in parent : x * a = 0}.
Ideal annihilator_in(const Algebra& alg, const Ideal& a, const Ideal& parent);
Ideal whole(const Algebra& alg);

/// Reduced echelon basis of e A.
std::vector<Vec> ideal_basis(const Algebra& alg, const Vec& e);
/// Identity of the subspace spanned by `basis` (which must be an ideal), found by
/// solving e * b = b for e inside the span. Throws InvalidInput on the zero ideal.
Vec identity_of(const Algebra& alg, const std::vector<Vec>& basis);
/// Kernel of a linear map restricted to the ideal I, as an ideal (the map must be an
/// algebra homomorphism on I for the result to be an ideal).
Ideal hom_kernel(const Algebra& alg, const Ideal& ideal, const std::function<Vec(const Vec&)>& phi);

/// z is invertible in the algebra e A.
bool invertible_in(const Algebra& alg, const Vec& z, const Vec& unit);
/// Inverse of an invertible element of e A.
Vec inverse_in(const Algebra& alg, const Vec& z, const Vec& unit);

}  // namespace msf::algebra
