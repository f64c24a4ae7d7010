#pragma once

#include <optional>
#include <vector>

#include "msf/scheme/collection.hpp"

namespace msf::scheme {

struct LevelReport {
  unsigned level = 0;
  std::size_t colors = 0;
  bool compatible = true;
  bool regular = true;
  bool invariant = true;
  bool symmetric = true;
  bool antisymmetric = true;
};

struct PropertyReport {
  std::vector<LevelReport> levels;  // levels[s-1]
  bool homogeneous = false;

  bool compatible() const;
  bool regular() const;
  bool invariant() const;
  bool symmetric() const;
  /// Over levels 2..m.
  bool antisymmetric() const;
  bool is_scheme() const { return compatible() && regular() && invariant(); }
};

/// Every flag straight from its definition. Level 1 is vacuously compatible,
/// regular, invariant, symmetric and antisymmetric.
PropertyReport check_properties(const MCollection& pi);
LevelReport check_level(const MCollection& pi, unsigned s);

/// Per-colour data of one level s >= 2.
struct ColorStats {
  unsigned level = 0;
  std::vector<std::size_t> size;
  /// projected[c][i-1]: colour of pi_i(P), or kNoColor if the projection is not one colour.
  std::vector<std::vector<Color>> projected;
  /// fiber[c][i-1]: distinct nonzero values of #{v in P : pi_i(v) = u} over lower tuples u.
  std::vector<std::vector<std::vector<std::size_t>>> fiber;
};

ColorStats color_stats(const MCollection& pi, unsigned s);

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool operator==(const Rational&) const = default;
};

/// #P / #pi_i(P) in lowest terms. Throws InvalidState unless level s is compatible and regular.
Rational subdegree(const MCollection& pi, unsigned s, Color p, unsigned slot);

/// Coarsest m-scheme refining pi: compatibility, invariance and lower-level
/// regularity splits, levels ascending, repeated until nothing changes.
MCollection refine_closure(const MCollection& pi);

struct Matching {
  unsigned level = 0;
  Color color = 0;
  unsigned slot_i = 0;  // 1-based, slot_i < slot_j
  unsigned slot_j = 0;
  bool operator==(const Matching&) const = default;
};

/// Colours P with pi_i(P) = pi_j(P) of the same size as P, every slot pair listed.
std::vector<Matching> find_matchings(const MCollection& pi);

struct DescentStep {
  unsigned level = 0;
  Color color = 0;
  std::size_t size = 0;
  std::size_t subdegree = 0;  // d_s = |P_s| / |P_{s-1}|, and |P_1| at level 1
};

struct DescentResult {
  bool matching = false;  // false: the chain ran out of levels
  std::vector<DescentStep> chain;
};

/// The halving descent: P_1 the smallest level-1 colour of size > 1, then at each
/// level the smallest colour (ties to the least tuple) of tuples whose last two
/// projections lie in P_{s-1}, until the subdegree is 1.
/// Throws InvalidState unless pi is an m-scheme (m >= 2), antisymmetric at level 2,
/// with fewer than n level-1 colours; InternalError if a subdegree fails to halve.
DescentResult evdokimov_descent(const MCollection& pi);

}  // namespace msf::scheme
