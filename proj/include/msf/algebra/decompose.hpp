#pragma once

#include <functional>

#include "msf/algebra/algebra.hpp"
#include "msf/error.hpp"

namespace msf::algebra {

/// Raised when a step needs primitive r-th roots of unity that the field lacks. The
/// caller may retry over an extension with r | q - 1.
class NeedsRootOfUnity : public InvalidInput {
 public:
  explicit NeedsRootOfUnity(std::uint64_t r)
      : InvalidInput("field lacks primitive " + std::to_string(r) + "-th roots of unity"), prime(r) {}
  std::uint64_t prime;
};

struct RootResult {
  enum class Kind { Root, NoRoot, ZeroDivisor };
  Kind kind = Kind::NoRoot;
  Vec value;
};

/// r-th root of c in the split algebra unit*A (Adleman-Manders-Miller, with every
/// branch decided uniformly or else reported as a zero divisor). nu must be an r-th
/// nonresidue of the field. A Root is the least of d * zeta^j over the r-th roots of
/// unity zeta^j, for the root d the iteration produces.
RootResult rth_root_or_zero_divisor(const Algebra& alg, const Vec& c, std::uint64_t r, Elem nu, const Vec& unit);
RootResult rth_root_or_zero_divisor(const Algebra& alg, const Vec& c, std::uint64_t r, Elem nu);

using Automorphism = std::function<Vec(const Vec&)>;

/// Least k >= 1 with tau^k = id on unit*A, checked on the generators unit*g.
std::uint64_t automorphism_order(const Algebra& alg, const Vec& unit, const Automorphism& tau,
                                 std::uint64_t cutoff = 1'000'000);

struct Decomposition {
  std::vector<Ideal> parts;  // two orthogonal nonzero ideals summing to the input
  Vec zero_divisor;          // the element the split came from
  std::uint64_t order = 0;   // order of tau on the ideal
  std::uint64_t prime = 0;   // prime r used for the eigen-decomposition
};

/// Splits the ideal using a nontrivial automorphism tau of it.
///
/// r is the least prime divisor of ord(tau) with r | q - 1. For basis products a of
/// the ideal in index order the resolvent b = sum_j zeta^{-j} tau'^j(a), tau' =
/// tau^(ord/r), is formed until b != 0; an r-th root d of b^r gives u = b / d with
/// u^r = 1 and tau(u) = zeta u, and the first u - zeta^i that is a nonzero zero
/// divisor splits the ideal. Zero divisors met on the way split it directly.
///
/// If no prime divisor of ord(tau) divides q - 1 but the characteristic p does,
/// sigma = tau^(ord/p) is used instead: for the first basis product b with
/// coordinates in F_p whose orbit trace T is nonzero, either T is a zero divisor or
/// u = -(sum_j j sigma^j(b)) / T satisfies sigma(u) = u + 1. When the basis consists
/// of F_p-valued functions (as in towers over split f), u vanishes on one point of
/// every orbit; invertible candidates are skipped.
///
/// Throws InvalidInput if tau is the identity, NeedsRootOfUnity if neither case
/// applies, LimitExceeded if the scan is exhausted.
Decomposition decompose_by_automorphism(const Algebra& alg, const Ideal& ideal, const Automorphism& tau);

/// The split of `ideal` by a zero divisor z of it: span(z) and its complement.
std::vector<Ideal> split_by_zero_divisor(const Algebra& alg, const Ideal& ideal, const Vec& z);

}  // namespace msf::algebra
