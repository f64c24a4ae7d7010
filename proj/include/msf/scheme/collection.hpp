#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "msf/tuples.hpp"

namespace msf::scheme {

using Color = std::uint32_t;
inline constexpr Color kNoColor = UINT32_MAX;

/// Tuple spaces V^(0..m) on n points with projection and coordinate-permutation
/// tables. Shared and immutable; get() caches one instance per (n, m).
class Geometry {
 public:
  static std::shared_ptr<const Geometry> get(unsigned n, unsigned m);

  Geometry(unsigned n, unsigned m);

  unsigned n() const { return n_; }
  unsigned m() const { return m_; }
  const TupleSpace& space(unsigned s) const { return spaces_.at(s); }
  std::size_t size(unsigned s) const { return spaces_.at(s).size(); }

  /// Rank at level s-1 of the tuple with coordinate `slot` (1-based) deleted.
  std::uint32_t project(unsigned s, unsigned slot, std::size_t rank) const {
    return proj_[s][slot - 1][rank];
  }

  /// Elements of Symm_s in lexicographic order of their image lists; index 0 is the identity.
  const std::vector<std::vector<unsigned>>& perms(unsigned s) const { return perms_.at(s); }

  /// Rank of v^sigma = (v[sigma(0)], ..., v[sigma(s-1)]) for sigma = perms(s)[k].
  /// Built on first use; throws LimitExceeded when s! * |V^(s)| is too large.
  std::uint32_t act(unsigned s, std::size_t k, std::size_t rank) const { return act_table(s)[k][rank]; }
  const std::vector<std::vector<std::uint32_t>>& act_table(unsigned s) const;

 private:
  unsigned n_, m_;
  std::vector<TupleSpace> spaces_;
  std::vector<std::vector<std::vector<std::uint32_t>>> proj_;
  std::vector<std::vector<std::vector<unsigned>>> perms_;
  mutable std::vector<std::vector<std::vector<std::uint32_t>>> act_;
  std::unique_ptr<std::once_flag[]> act_once_;
};

/// Colour ids renumbered by first occurrence, so that colour 0 holds tuple 0 and so on.
std::vector<Color> canonical_colors(const std::vector<Color>& raw);

/// Partitions of V^(1), ..., V^(m) given as colour maps over tuple ranks. Colour
/// ids are always canonical, so two collections compare equal iff they are the
/// same partitions.
class MCollection {
 public:
  /// The trivial collection: one colour per level.
  MCollection(unsigned n, unsigned m);
  /// levels[s-1] is the colour map of V^(s); it is canonicalised.
  MCollection(unsigned n, std::vector<std::vector<Color>> levels);

  unsigned n() const { return n_; }
  unsigned m() const { return static_cast<unsigned>(levels_.size()); }
  const Geometry& geometry() const { return *geo_; }
  const TupleSpace& space(unsigned s) const { return geo_->space(s); }

  Color color(unsigned s, std::size_t rank) const { return levels_[s - 1][rank]; }
  const std::vector<Color>& level(unsigned s) const { return levels_.at(s - 1); }
  std::size_t color_count(unsigned s) const { return counts_.at(s - 1); }
  std::vector<std::size_t> color_sizes(unsigned s) const;
  /// Ranks of the tuples in a colour, ascending.
  std::vector<std::size_t> members(unsigned s, Color c) const;

  /// Replaces level s; returns true if the partition changed.
  bool set_level(unsigned s, std::vector<Color> colors);

  /// Keeps levels 1..k.
  MCollection truncated(unsigned k) const;

  bool operator==(const MCollection& other) const { return n_ == other.n_ && levels_ == other.levels_; }

 private:
  unsigned n_;
  std::shared_ptr<const Geometry> geo_;
  std::vector<std::vector<Color>> levels_;
  std::vector<std::size_t> counts_;
};

/// `mscheme v1 n=<n> m=<m>` followed by `s i1 .. is c` per tuple, 1-based points.
std::string format_scheme(const MCollection& pi);
/// Throws InvalidInput naming the offending line.
MCollection parse_scheme(const std::string& text);

}  // namespace msf::scheme
