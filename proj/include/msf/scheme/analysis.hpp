#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msf/scheme/collection.hpp"

namespace msf::scheme {

/// Classes are the level-2 colours (the diagonal is not a class).
struct AssociationScheme {
  unsigned n = 0;
  std::size_t classes = 0;
  std::vector<std::size_t> class_size;
  std::vector<std::vector<int>> relation;  // relation[a][b], -1 on the diagonal
  std::vector<std::uint64_t> p;            // p[(k * classes + i) * classes + j]

  std::uint64_t intersection(std::size_t k, std::size_t i, std::size_t j) const {
    return p[(k * classes + i) * classes + j];
  }
};

/// Levels 1 and 2 of a homogeneous 3-scheme with all intersection numbers
/// p^k_ij = #{c : (a,c) in P_i, (c,b) in P_j} for (a,b) in P_k, counted by brute
/// force and checked against the sum of #P / #P_k over the level-3 colours P above.
/// Throws InvalidState if pi is not a homogeneous 3-scheme or a count depends on the pair.
AssociationScheme scheme_to_association(const MCollection& pi);

struct HanakiUnoResult {
  bool ok = false;
  std::size_t d = 0;
  std::optional<std::pair<Color, Color>> violation;  // two classes of different size, or one class twice
};

/// All level-2 colours of a homogeneous collection on a prime number n of points
/// should have one size d*n with d | n-1. Throws InvalidInput for composite n,
/// InvalidState if level 1 has more than one colour.
HanakiUnoResult hanaki_uno_verify(const MCollection& pi);

/// Points w with (v, w) in the level-2 colour of (v, least w != v); level s of the
/// result colours (w_1..w_s) by the colour of (v, w_1, .., w_s). The result has
/// min(m - 1, d) levels on d points, relabelled in increasing order.
/// Throws InvalidState unless pi is a homogeneous m-scheme with m >= 2.
MCollection induced_subscheme(const MCollection& pi, unsigned v);

struct NonexistenceCertificate {
  unsigned n = 0;
  unsigned r = 0;
  bool counting = false;           // C(n-1, r-1) is not divisible by r
  bool exhaustive = false;         // every antisymmetric seed was closed and checked
  std::uint64_t search_space = 0;  // number of seeds (saturating)
  std::uint64_t seeds_checked = 0;
  std::uint64_t candidates = 0;    // closures on which s! | t_s was checked
  std::optional<MCollection> counterexample;
  bool complete() const { return !counterexample && (counting || exhaustive); }
};

/// Evidence that no homogeneous antisymmetric r-scheme on n points exists, r the
/// least prime divisor of n. The arithmetic test applies always; the seed search
/// (one Symm_s-orbit representative per s-subset, closed under refine_closure)
/// runs when the number of seeds is within the budget.
NonexistenceCertificate nonexistence_check(unsigned n, unsigned r, std::uint64_t budget = 200'000);

struct FiberWitness {
  Color p = 0;  // level 2
  Color q = 0;  // level 3, kNoColor when P itself has subdegree 1
  std::size_t subdegree = 0;
};

/// First (P, Q) with pi_2(Q) = pi_3(Q) = P and 8 * #Q < n * #P, reading levels up to 4.
/// Failing that, the first level-2 colour of subdegree 1 (as in cyclic orbit schemes,
/// where no such Q exists) is returned with q = kNoColor.
/// Throws InvalidInput for n <= 8 and InvalidState unless pi is a homogeneous m-scheme
/// (m >= 3) antisymmetric at level 2. A missing witness is an InternalError when the
/// scheme is antisymmetric at every level and an InvalidState otherwise.
FiberWitness fiber_bound_check(const MCollection& pi);

struct PrimitivityEntry {
  unsigned level = 0;
  Color color = 0;
  Color lower = 0;             // Q = pi_s(P) = pi_{s-1}(P)
  std::size_t components = 0;  // of G(P, v_1..v_{s-2}), the same for every base
  std::size_t vertices = 0;
  std::size_t bases = 0;
};

struct PrimitivityReport {
  std::vector<PrimitivityEntry> entries;
  bool primitive = true;
};

/// Throws InvalidState unless pi is an m-scheme; InternalError if component
/// counts differ between base tuples.
PrimitivityReport primitivity_report(const MCollection& pi);

struct ConjectureInstance {
  std::string source;
  std::vector<std::size_t> colors;  // per level
  std::size_t matchings = 0;
};

struct ConjectureReport {
  unsigned n = 0;
  unsigned m = 0;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::size_t seeds_tried = 0;
  std::optional<NonexistenceCertificate> nonexistence;
  std::vector<ConjectureInstance> instances;
  std::vector<MCollection> schemes;  // schemes[i] is instances[i]
  bool counterexample = false;  // an instance without a matching
};

/// Looks for homogeneous antisymmetric m-schemes on n points without matchings:
/// orbit schemes of odd-order transitive catalog groups, then `budget` closures of
/// random antisymmetric seeds (mt19937_64 with the given seed). If the least prime
/// divisor r of n is at most m, the nonexistence check runs instead.
ConjectureReport conjecture_search(unsigned n, std::size_t budget, std::uint64_t seed, unsigned m = 4);

}  // namespace msf::scheme
