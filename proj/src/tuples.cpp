#include "msf/tuples.hpp"

#include <limits>

#include "msf/error.hpp"

namespace msf {

std::size_t falling_factorial(unsigned n, unsigned s) {
  if (s > n) return 0;
  std::size_t out = 1;
  for (unsigned i = 0; i < s; ++i) {
    const std::size_t f = n - i;
    if (out > std::numeric_limits<std::size_t>::max() / f) return std::numeric_limits<std::size_t>::max();
    out *= f;
  }
  return out;
}

TupleSpace::TupleSpace(unsigned n, unsigned s) : n_(n), s_(s) {
  if (s > n) throw InvalidInput("tuple arity exceeds point count");
  count_ = falling_factorial(n, s);
  if (count_ > 50'000'000) throw LimitExceeded("tuple space too large");
  weight_.resize(s);
  for (unsigned i = 0; i < s; ++i) weight_[i] = falling_factorial(n - i - 1, s - i - 1);
  flat_.reserve(count_ * s);
  std::vector<unsigned> cur(s);
  std::vector<bool> used(n, false);
  // depth-first enumeration in lexicographic order
  auto rec = [&](auto&& self, unsigned depth) -> void {
    if (depth == s) {
      flat_.insert(flat_.end(), cur.begin(), cur.end());
      return;
    }
    for (unsigned v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      cur[depth] = v;
      self(self, depth + 1);
      used[v] = false;
    }
  };
  rec(rec, 0);
}

std::size_t TupleSpace::try_rank(std::span<const unsigned> tuple) const {
  if (tuple.size() != s_) return count_;
  std::size_t r = 0;
  std::uint64_t seen = 0;
  std::vector<bool> used;
  if (n_ > 64) used.assign(n_, false);
  for (unsigned i = 0; i < s_; ++i) {
    const unsigned v = tuple[i];
    if (v >= n_) return count_;
    unsigned smaller = 0;
    if (n_ <= 64) {
      if (seen >> v & 1) return count_;
      smaller = v - static_cast<unsigned>(__builtin_popcountll(seen & ((std::uint64_t{1} << v) - 1)));
      seen |= std::uint64_t{1} << v;
    } else {
      if (used[v]) return count_;
      for (unsigned u = 0; u < v; ++u) smaller += used[u] ? 0 : 1;
      used[v] = true;
    }
    r += smaller * weight_[i];
  }
  return r;
}

std::size_t TupleSpace::rank(std::span<const unsigned> tuple) const {
  const std::size_t r = try_rank(tuple);
  if (r == count_) throw InvalidInput("not a distinct tuple of the space");
  return r;
}

}  // namespace msf
