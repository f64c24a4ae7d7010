#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace msf::ff {

/// A field element in packed form. Coefficient i of the representative polynomial
/// in t (the adjoined root of h) occupies its own bit slot, with the constant term in
/// the most significant slot. Numeric order of packed values is therefore the
/// canonical element order: lexicographic on coefficient vectors, constant term first.
using Elem = std::uint64_t;

/// Prime field F_p (e = 1) or extension F_q = F_p[t]/(h), q = p^e.
class FieldCtx {
 public:
  /// F_p itself. p must be an odd prime below 2^31.
  static FieldCtx prime(std::uint64_t p);

  /// F_p[t]/(h). `h` holds p-residues lowest degree first, is monic of degree e >= 1
  /// and must be irreducible (checked).
  FieldCtx(std::uint64_t p, std::vector<std::uint64_t> h);

  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  const std::vector<std::uint64_t>& modulus() const { return h_; }
  /// q = p^e.
  std::uint64_t order() const { return q_; }
  /// Prime divisors of q - 1 below 10^4, ascending.
  const std::vector<std::uint64_t>& small_prime_factors() const { return unit_primes_; }
  bool supports_root_of_unity(std::uint64_t r) const { return (q_ - 1) % r == 0; }

  Elem zero() const { return 0; }
  Elem one() const { return from_int(1); }
  Elem from_int(std::int64_t v) const;
  /// Embeds a p-residue vector (lowest degree first, length <= e).
  Elem from_digits(const std::vector<std::uint64_t>& digits) const;
  std::vector<std::uint64_t> digits(Elem a) const;
  bool in_prime_field(Elem a) const { return (a & ~top_mask_) == 0; }
  /// Residue of a prime-field element. Throws InvalidInput otherwise.
  std::uint64_t to_int(Elem a) const;

  /// Canonical enumeration: element number k in [0, q).
  Elem element_at(std::uint64_t k) const;
  std::uint64_t index_of(Elem a) const;

  Elem add(Elem a, Elem b) const {
    if (e_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_ext(a, b);
  }
  Elem sub(Elem a, Elem b) const {
    if (e_ == 1) return a >= b ? a - b : a + p_ - b;
    return sub_ext(a, b);
  }
  Elem neg(Elem a) const { return sub(0, a); }
  Elem mul(Elem a, Elem b) const {
    if (e_ == 1) return (a * b) % p_;
    return mul_ext(a, b);
  }
  /// a*b + c.
  Elem mul_add(Elem a, Elem b, Elem c) const {
    if (e_ == 1) return (a * b + c) % p_;
    return add_ext(mul_ext(a, b), c);
  }
  Elem pow(Elem a, std::uint64_t k) const;
  /// Multiplicative inverse; throws InvalidInput on zero.
  Elem inv(Elem a) const;

  /// `p=<p>;e=<e>;h=<coeffs>`.
  std::string describe() const;
  static FieldCtx parse(const std::string& text);

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
    return a.p_ == b.p_ && a.h_ == b.h_;
  }

 private:
  FieldCtx() = default;
  void init_layout();
  Elem add_ext(Elem a, Elem b) const;
  Elem sub_ext(Elem a, Elem b) const;
  Elem mul_ext(Elem a, Elem b) const;

  std::uint64_t p_ = 0;
  unsigned e_ = 1;
  std::vector<std::uint64_t> h_;
  std::uint64_t q_ = 0;
  unsigned bits_ = 0;
  std::uint64_t slot_mask_ = 0;
  std::uint64_t top_mask_ = 0;
  std::vector<std::uint64_t> unit_primes_;
};

bool is_prime(std::uint64_t n);
/// Prime divisors of n, ascending (trial division; n is desk-scale).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Smallest field F_{p^e} such that every prime r <= max_level divides p^e - 1. The
/// modulus is the first irreducible monic polynomial in canonical enumeration order.
FieldCtx build_scheme_field(std::uint64_t p, unsigned max_level);

/// Same, for an explicit set of primes that must divide q - 1.
FieldCtx build_field_for_primes(std::uint64_t p, const std::vector<std::uint64_t>& primes);

/// First element, in canonical order, that is not an r-th power.
Elem find_nonresidue(const FieldCtx& field, std::uint64_t r);

/// Element of multiplicative order exactly r: nu^((q-1)/r) for the canonical nonresidue nu.
Elem root_of_unity(const FieldCtx& field, std::uint64_t r);

}  // namespace msf::ff
