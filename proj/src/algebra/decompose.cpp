#include "msf/algebra/decompose.hpp"

#include <algorithm>
#include <optional>

namespace msf::algebra {

namespace {

using ff::vec_scale;
using ff::vec_sub;

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  // extended Euclid on small integers
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    t -= quot * new_t;
    std::swap(t, new_t);
    r -= quot * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

// First j such that z - zeta^j unit is a nonzero zero divisor, as that element.
std::optional<Vec> separating_element(const Algebra& alg, const Vec& z, const Vec& unit, Elem zeta,
                                      std::uint64_t r) {
  const auto& f = alg.field();
  Elem zj = f.one();
  for (std::uint64_t j = 0; j < r; ++j, zj = f.mul(zj, zeta)) {
    Vec cand = vec_sub(f, z, vec_scale(f, unit, zj));
    if (!is_zero(cand) && !invertible_in(alg, cand, unit)) return cand;
  }
  return std::nullopt;
}

RootResult zero_divisor(Vec z) { return RootResult{RootResult::Kind::ZeroDivisor, std::move(z)}; }

}  // namespace

RootResult rth_root_or_zero_divisor(const Algebra& alg, const Vec& c, std::uint64_t r, Elem nu, const Vec& unit) {
  const auto& f = alg.field();
  const std::uint64_t q1 = f.order() - 1;
  if (r < 2 || q1 % r != 0) throw InvalidInput("r does not divide q - 1");
  if (is_zero(c)) return RootResult{RootResult::Kind::Root, alg.zero()};
  if (!invertible_in(alg, c, unit)) return zero_divisor(c);
  const Vec g = alg.pow(c, q1 / r, unit);
  if (g != unit) {
    Vec z = vec_sub(f, g, unit);
    if (invertible_in(alg, z, unit)) return RootResult{RootResult::Kind::NoRoot, {}};
    return zero_divisor(std::move(z));
  }

  std::uint64_t t = 0, w = q1;
  while (w % r == 0) {
    w /= r;
    ++t;
  }
  std::uint64_t u = w == 1 ? 1 : inverse_mod(r % w, w);
  const std::uint64_t m = (r * u - 1) / w;
  std::uint64_t rt = 1;
  for (std::uint64_t i = 0; i < t; ++i) rt *= r;

  const Vec x = alg.pow(c, u, unit);              // x^r = c * gamma^m
  const Vec gamma = alg.pow(c, w, unit);          // lies in the r-part
  const Vec y = alg.pow(gamma, (rt - m % rt) % rt, unit);  // gamma^{-m}
  const Elem rho = f.pow(nu, w);                  // generator of the r-part of F_q^*
  const Elem zeta = f.pow(rho, rt / r);

  // discrete log of y to base rho, digit by digit
  std::uint64_t L = 0, rk = 1;
  const Elem rho_inv = f.inv(rho);
  for (std::uint64_t k = 0; k < t; ++k) {
    std::uint64_t e = 1;
    for (std::uint64_t i = 0; i + 1 + k < t; ++i) e *= r;
    const Vec z = alg.pow(vec_scale(f, y, f.pow(rho_inv, L)), e, unit);
    std::optional<std::uint64_t> digit;
    Elem zj = f.one();
    for (std::uint64_t j = 0; j < r; ++j, zj = f.mul(zj, zeta)) {
      if (z == vec_scale(f, unit, zj)) {
        digit = j;
        break;
      }
    }
    if (!digit) {
      auto sep = separating_element(alg, z, unit, zeta, r);
      if (!sep) throw InternalError("discrete log step produced no separating element");
      return zero_divisor(std::move(*sep));
    }
    L += *digit * rk;
    rk *= r;
  }
  if (L % r != 0) throw InternalError("r-th power residue with a non-divisible logarithm");
  const Vec d = vec_scale(f, x, f.pow(rho, L / r));
  if (alg.pow(d, r, unit) != c) throw InternalError("root extraction produced a wrong root");

  Vec best = d;
  Elem zj = zeta;
  for (std::uint64_t j = 1; j < r; ++j, zj = f.mul(zj, zeta)) {
    Vec cand = vec_scale(f, d, zj);
    if (cand < best) best = std::move(cand);
  }
  return RootResult{RootResult::Kind::Root, std::move(best)};
}

RootResult rth_root_or_zero_divisor(const Algebra& alg, const Vec& c, std::uint64_t r, Elem nu) {
  return rth_root_or_zero_divisor(alg, c, r, nu, alg.one());
}

std::uint64_t automorphism_order(const Algebra& alg, const Vec& unit, const Automorphism& tau,
                                 std::uint64_t cutoff) {
  std::vector<Vec> gens;
  for (const auto& g : alg.generators()) gens.push_back(alg.mul(unit, g));
  std::vector<Vec> cur = gens;
  for (std::uint64_t k = 1; k <= cutoff; ++k) {
    for (auto& v : cur) v = tau(v);
    if (cur == gens) return k;
  }
  throw LimitExceeded("automorphism order exceeds the cutoff");
}

std::vector<Ideal> split_by_zero_divisor(const Algebra& alg, const Ideal& ideal, const Vec& z) {
  const Vec ez = alg.mul(ideal.e, z);
  if (is_zero(ez)) throw InvalidInput("zero divisor vanishes on the ideal");
  Vec j = support_idempotent(alg, ez);
  if (j == ideal.e) throw InvalidInput("element is invertible on the ideal");
  Ideal first = ideal_from_idempotent(alg, j);
  Ideal second = ideal_from_idempotent(alg, vec_sub(alg.field(), ideal.e, j));
  if (first.dim + second.dim != ideal.dim) throw InternalError("split dimensions do not add up");
  return {std::move(first), std::move(second)};
}

Decomposition decompose_by_automorphism(const Algebra& alg, const Ideal& ideal, const Automorphism& tau) {
  if (ideal.is_zero()) throw InvalidInput("cannot decompose the zero ideal");
  const auto& f = alg.field();
  const Vec& unit = ideal.e;
  const std::uint64_t k = automorphism_order(alg, unit, tau);
  if (k == 1) throw InvalidInput("automorphism is the identity on the ideal");
  const auto primes = ff::prime_factors(k);
  const auto it = std::find_if(primes.begin(), primes.end(), [&](std::uint64_t r) { return f.supports_root_of_unity(r); });
  const std::uint64_t p = f.characteristic();
  if (it == primes.end() && k % p != 0) throw NeedsRootOfUnity(primes.front());
  const std::uint64_t r = it == primes.end() ? p : *it;
  const std::uint64_t step = k / r;
  auto tau_r = [&](Vec v) {
    for (std::uint64_t i = 0; i < step; ++i) v = tau(v);
    return v;
  };
  Decomposition out;
  out.order = k;
  out.prime = r;
  auto finish = [&](Vec z) {
    out.parts = split_by_zero_divisor(alg, ideal, z);
    out.zero_divisor = std::move(z);
  };
  bool done = false;
  if (r == p) {
    // sigma = tau^(k/p) has order p. For b with values in F_p (coordinates in F_p over
    // a basis of F_p-valued functions), T = sum sigma^j(b) and
    // w = sum j sigma^j(b) satisfy sigma(w) = w - T, so u = -w/T has sigma(u) = u + 1
    // and runs through all of F_p on every orbit.
    alg.for_each_basis_product(unit, [&](std::size_t, const Vec& a) {
      if (is_zero(a) || !std::all_of(a.begin(), a.end(), [&](Elem x) { return f.in_prime_field(x); })) return true;
      Vec trace = a;
      Vec w(a.size(), 0);
      Vec img = a;
      for (std::uint64_t j = 1; j < p; ++j) {
        img = tau_r(std::move(img));
        ff::vec_axpy(f, trace, f.one(), img);
        ff::vec_axpy(f, w, f.from_int(static_cast<std::int64_t>(j)), img);
      }
      if (is_zero(trace)) return true;
      if (!invertible_in(alg, trace, unit)) {
        finish(std::move(trace));
      } else {
        Vec u = vec_scale(f, alg.mul(w, inverse_in(alg, trace, unit)), f.neg(f.one()));
        if (invertible_in(alg, u, unit)) return true;
        finish(std::move(u));
      }
      done = true;
      return false;
    });
    if (!done) throw LimitExceeded("trace scan exhausted without a split");
    return out;
  }
  const Elem nu = ff::find_nonresidue(f, r);
  const Elem zeta = f.pow(nu, (f.order() - 1) / r);
  const Elem zeta_inv = f.inv(zeta);

  alg.for_each_basis_product(unit, [&](std::size_t, const Vec& a) {
    if (is_zero(a)) return true;
    Vec b = a;
    Vec img = a;
    Elem coef = f.one();
    for (std::uint64_t j = 1; j < r; ++j) {
      img = tau_r(std::move(img));
      coef = f.mul(coef, zeta_inv);
      ff::vec_axpy(f, b, coef, img);
    }
    if (is_zero(b)) return true;
    const Vec c = alg.pow(b, r, unit);
    auto root = rth_root_or_zero_divisor(alg, c, r, nu, unit);
    if (root.kind == RootResult::Kind::ZeroDivisor) {
      finish(std::move(root.value));
      done = true;
      return false;
    }
    if (root.kind == RootResult::Kind::NoRoot) return true;
    const Vec& d = root.value;
    if (!invertible_in(alg, d, unit)) {
      finish(d);
      done = true;
      return false;
    }
    const Vec u = alg.mul(b, inverse_in(alg, d, unit));
    auto sep = separating_element(alg, u, unit, zeta, r);
    if (!sep) throw InternalError("eigenvector of a nontrivial automorphism is a scalar");
    finish(std::move(*sep));
    done = true;
    return false;
  });
  if (!done) throw LimitExceeded("resolvent scan exhausted without a split");
  return out;
}

}  // namespace msf::algebra
