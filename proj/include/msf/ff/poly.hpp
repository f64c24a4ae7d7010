#pragma once

#include <string>
#include <vector>

#include "msf/ff/field.hpp"

namespace msf::ff {

/// Univariate polynomial over a FieldCtx, lowest degree first, no trailing zeros.
/// The zero polynomial has no coefficients and degree -1.
struct Poly {
  std::vector<Elem> c;

  Poly() = default;
  explicit Poly(std::vector<Elem> coeffs) : c(std::move(coeffs)) { normalize(); }

  void normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  Elem lead() const { return c.empty() ? 0 : c.back(); }
  Elem coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }

  friend bool operator==(const Poly&, const Poly&) = default;
};

Poly poly_from_ints(const FieldCtx& f, const std::vector<std::int64_t>& coeffs);
/// Prime-field residues of every coefficient; throws InvalidInput if one lies outside F_p.
std::vector<std::uint64_t> poly_to_ints(const FieldCtx& f, const Poly& a);

/// Comma separated decimal coefficients, lowest degree first ("6,0,1" is x^2 + 6).
Poly parse_poly(const FieldCtx& f, const std::string& text);
std::string format_poly(const FieldCtx& f, const Poly& a);

Poly add(const FieldCtx& f, const Poly& a, const Poly& b);
Poly sub(const FieldCtx& f, const Poly& a, const Poly& b);
Poly mul(const FieldCtx& f, const Poly& a, const Poly& b);
Poly scale(const FieldCtx& f, const Poly& a, Elem s);
/// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> divmod(const FieldCtx& f, const Poly& a, const Poly& b);
Poly rem(const FieldCtx& f, const Poly& a, const Poly& b);
Poly monic(const FieldCtx& f, const Poly& a);
/// Monic gcd; throws InvalidInput when both inputs are zero.
Poly poly_gcd(const FieldCtx& f, const Poly& a, const Poly& b);
/// a^k mod m.
Poly powmod(const FieldCtx& f, const Poly& a, std::uint64_t k, const Poly& m);
Elem eval(const FieldCtx& f, const Poly& a, Elem x);
/// Exact division; throws InvalidInput on a nonzero remainder.
Poly exact_div(const FieldCtx& f, const Poly& a, const Poly& b);
Poly linear(const FieldCtx& f, Elem root);  // x - root

/// Monic product of (x - a) over the distinct roots a in F_p of f, computed as
/// gcd(f, x^p - x mod f).
Poly split_squarefree_part(const FieldCtx& f, const Poly& poly);

/// All roots of `poly` in F_p by exhaustive search, ascending. Test-mode helper.
std::vector<Elem> prime_field_roots(const FieldCtx& f, const Poly& poly);

}  // namespace msf::ff
