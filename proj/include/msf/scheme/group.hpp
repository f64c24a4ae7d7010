#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msf/scheme/collection.hpp"

namespace msf::scheme {

/// A permutation of {0, ..., n-1} as its image list.
using Perm = std::vector<unsigned>;

Perm compose(const Perm& a, const Perm& b);  // (a*b)(x) = a(b(x))
Perm inverse(const Perm& a);
Perm identity_perm(unsigned n);

/// Permutation group given by generators; elements enumerated on demand.
class PermGroup {
 public:
  static constexpr std::size_t kDefaultBudget = 1'000'000;

  /// Throws InvalidInput if a generator is not a bijection of {0, ..., n-1}.
  PermGroup(unsigned n, std::vector<Perm> generators, std::string name = {});

  unsigned degree() const { return n_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::string& name() const { return name_; }

  /// All elements, sorted. Throws LimitExceeded past the budget.
  const std::vector<Perm>& elements(std::size_t budget = kDefaultBudget) const;
  std::size_t order() const { return elements().size(); }
  bool contains(const Perm& g) const;

  std::vector<unsigned> orbit(unsigned point) const;
  bool is_transitive() const { return orbit(0).size() == n_; }
  /// Elements fixing `point`, sorted.
  std::vector<Perm> stabilizer(unsigned point) const;

 private:
  unsigned n_;
  std::vector<Perm> gens_;
  std::string name_;
  mutable std::vector<Perm> elems_;
};

/// Closure of a set of permutations under composition, sorted.
std::vector<Perm> generated_subgroup(unsigned n, const std::vector<Perm>& gens,
                                     std::size_t budget = PermGroup::kDefaultBudget);

/// Built-in groups of degree <= 15: cyclic groups, Frobenius groups of order p*k
/// (p <= 13, k | p-1, k > 1), Symm_3, Symm_4, the Klein group, Z/2 wr Z/2,
/// Z/3 x Z/3 and the wreath products Z/3 wr Z/3, Z/3 wr Z/5, Z/5 wr Z/3.
std::vector<PermGroup> group_catalog();
PermGroup cyclic_group(unsigned n);
PermGroup frobenius_group(unsigned p, unsigned k);
/// Z/a wr Z/b acting on b blocks of a points.
PermGroup wreath_cyclic(unsigned a, unsigned b);

/// One generator per line in 1-based image notation; '#' starts a comment.
PermGroup parse_group(const std::string& text);
std::string format_group(const PermGroup& g);

/// Colours are the orbits of G on V^(s), s = 1..m. Throws LimitExceeded past the
/// tuple-space budget.
MCollection orbit_scheme(const PermGroup& g, unsigned m);

struct OrbitMatching {
  unsigned level = 0;               // s + 1
  std::vector<unsigned> tuple;      // (b_1, ..., b_{s+1}), 0-based
  std::vector<unsigned> base;       // b_1, ..., b_s
  std::size_t overgroup_order = 0;  // |H|
  std::vector<unsigned> block;      // B = orbit of b_1 under H
  std::size_t orbit_size = 0;       // |P|
};

/// A matching colour of the orbit scheme from a minimal overgroup H of the point
/// stabiliser and an irredundant base of H on the orbit of point 0. The result is
/// checked (pi_s(P) = pi_{s+1}(P), both of size |P|) before it is returned.
/// Throws InvalidInput unless G is nontrivial, transitive and of odd order.
OrbitMatching orbit_matching_construct(const PermGroup& g);

}  // namespace msf::scheme
