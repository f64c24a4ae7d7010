#pragma once

#include <memory>
#include <vector>

#include "msf/algebra/tower.hpp"
#include "msf/tuples.hpp"

namespace msf::algebra {

/// Ranks (in TupleSpace(n, s)) of the distinct root tuples where `element` is nonzero.
/// roots[i] is the root assigned to point i.
std::vector<std::size_t> support_oracle(const Tower& tower, unsigned s, const Vec& element,
                                        const std::vector<Elem>& roots);

/// Support of the span of a list of elements; throws InternalError if some element
/// vanishes at every point.
std::vector<std::size_t> support_of_basis(const Tower& tower, unsigned s, const std::vector<Vec>& basis,
                                          const std::vector<Elem>& roots);

/// Idempotent of A_s equal to 1 exactly on the tuples whose rank is flagged.
Vec idempotent_from_support(const Tower& tower, unsigned s, const std::vector<bool>& flagged,
                            const std::vector<Elem>& roots);

/// The essential ideal of the m-th tensor power, built as the annihilator of the sum
/// of the ideals Delta_{i,j} = {b : (x_i - x_j) b = 0}.
struct DeltaResult {
  std::shared_ptr<const Tower> tensor;
  std::vector<Vec> basis;  // echelon basis, tensor coordinates
  Vec identity;            // tensor coordinates
  std::unique_ptr<TableAlgebra> algebra;  // structure constants on `basis`
  std::vector<std::size_t> delta_dims;    // dim Delta_{i,j}, pairs i < j in lexicographic order
};

DeltaResult delta_crosscheck(const FieldCtx& field, const ff::Poly& f, unsigned m,
                             std::size_t cap = default_dim_cap());

/// Checks that x^a -> e * x^a (e the identity of the Delta ideal) is a unital algebra
/// isomorphism from level m of the essential tower onto the Delta ideal.
bool isomorphic_to_essential(const Tower& essential, unsigned m, const DeltaResult& delta);

}  // namespace msf::algebra
