#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace msf {

/// Ordered tuples of s pairwise distinct points of {0, ..., n-1}, in lexicographic
/// order. Points are 0-based here; file formats shift to 1-based.
class TupleSpace {
 public:
  TupleSpace() = default;
  TupleSpace(unsigned n, unsigned s);

  unsigned n() const { return n_; }
  unsigned arity() const { return s_; }
  std::size_t size() const { return count_; }

  std::span<const unsigned> at(std::size_t rank) const { return {flat_.data() + rank * s_, s_}; }
  std::size_t rank(std::span<const unsigned> tuple) const;
  /// Rank of the tuple, or size() if it is not a distinct tuple of this space.
  std::size_t try_rank(std::span<const unsigned> tuple) const;

 private:
  unsigned n_ = 0;
  unsigned s_ = 0;
  std::size_t count_ = 0;
  std::vector<unsigned> flat_;
  std::vector<std::size_t> weight_;
};

/// n!/(n-s)!, saturating at SIZE_MAX.
std::size_t falling_factorial(unsigned n, unsigned s);

}  // namespace msf
