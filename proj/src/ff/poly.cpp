#include "msf/ff/poly.hpp"

#include <sstream>

#include "msf/error.hpp"

namespace msf::ff {

Poly poly_from_ints(const FieldCtx& f, const std::vector<std::int64_t>& coeffs) {
  std::vector<Elem> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(f.from_int(v));
  return Poly(std::move(c));
}

std::vector<std::uint64_t> poly_to_ints(const FieldCtx& f, const Poly& a) {
  std::vector<std::uint64_t> out;
  out.reserve(a.c.size());
  for (Elem x : a.c) out.push_back(f.to_int(x));
  return out;
}

Poly parse_poly(const FieldCtx& f, const std::string& text) {
  std::vector<std::int64_t> coeffs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::logic_error&) {
      throw InvalidInput("bad polynomial coefficient '" + item + "'");
    }
    if (used != item.size()) throw InvalidInput("bad polynomial coefficient '" + item + "'");
    coeffs.push_back(v);
  }
  if (coeffs.empty()) throw InvalidInput("empty polynomial");
  return poly_from_ints(f, coeffs);
}

std::string format_poly(const FieldCtx& f, const Poly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (i) os << ',';
    if (f.in_prime_field(a.c[i])) {
      os << f.to_int(a.c[i]);
    } else {
      os << '[';
      auto d = f.digits(a.c[i]);
      for (std::size_t j = 0; j < d.size(); ++j) os << (j ? " " : "") << d[j];
      os << ']';
    }
  }
  return os.str();
}

Poly add(const FieldCtx& f, const Poly& a, const Poly& b) {
  std::vector<Elem> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(a.coeff(i), b.coeff(i));
  return Poly(std::move(c));
}

Poly sub(const FieldCtx& f, const Poly& a, const Poly& b) {
  std::vector<Elem> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.sub(a.coeff(i), b.coeff(i));
  return Poly(std::move(c));
}

Poly mul(const FieldCtx& f, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Elem> c(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] = f.mul_add(a.c[i], b.c[j], c[i + j]);
  }
  return Poly(std::move(c));
}

Poly scale(const FieldCtx& f, const Poly& a, Elem s) {
  std::vector<Elem> c(a.c.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.mul(a.c[i], s);
  return Poly(std::move(c));
}

std::pair<Poly, Poly> divmod(const FieldCtx& f, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw InvalidInput("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Elem> r = a.c;
  std::vector<Elem> q(a.c.size() - b.c.size() + 1, 0);
  const Elem lead_inv = f.inv(b.lead());
  for (std::size_t k = q.size(); k-- > 0;) {
    const Elem coef = f.mul(r[k + b.c.size() - 1], lead_inv);
    q[k] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r[k + j] = f.sub(r[k + j], f.mul(coef, b.c[j]));
  }
  r.resize(b.c.size() - 1);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly rem(const FieldCtx& f, const Poly& a, const Poly& b) { return divmod(f, a, b).second; }

Poly monic(const FieldCtx& f, const Poly& a) {
  if (a.is_zero()) return a;
  return scale(f, a, f.inv(a.lead()));
}

Poly poly_gcd(const FieldCtx& f, const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw InvalidInput("gcd of two zero polynomials");
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = rem(f, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(f, x);
}

Poly powmod(const FieldCtx& f, const Poly& a, std::uint64_t k, const Poly& m) {
  Poly result = rem(f, Poly({f.one()}), m);
  Poly base = rem(f, a, m);
  while (k) {
    if (k & 1) result = rem(f, mul(f, result, base), m);
    base = rem(f, mul(f, base, base), m);
    k >>= 1;
  }
  return result;
}

Elem eval(const FieldCtx& f, const Poly& a, Elem x) {
  Elem acc = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) acc = f.mul_add(acc, x, a.c[i]);
  return acc;
}

Poly exact_div(const FieldCtx& f, const Poly& a, const Poly& b) {
  auto [q, r] = divmod(f, a, b);
  if (!r.is_zero()) throw InvalidInput("polynomial division leaves a remainder");
  return q;
}

Poly linear(const FieldCtx& f, Elem root) { return Poly({f.neg(root), f.one()}); }

Poly split_squarefree_part(const FieldCtx& f, const Poly& poly) {
  if (poly.degree() < 1) throw InvalidInput("polynomial must be nonconstant");
  const Poly x({0, f.one()});
  const Poly xp = powmod(f, x, f.characteristic(), poly);
  return poly_gcd(f, poly, sub(f, xp, x));
}

std::vector<Elem> prime_field_roots(const FieldCtx& f, const Poly& poly) {
  std::vector<Elem> roots;
  for (std::uint64_t a = 0; a < f.characteristic(); ++a) {
    const Elem x = f.from_int(static_cast<std::int64_t>(a));
    if (eval(f, poly, x) == 0) roots.push_back(x);
  }
  return roots;
}

}  // namespace msf::ff
