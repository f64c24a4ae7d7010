#include "msf/ff/field.hpp"

#include <array>
#include <bit>
#include <numeric>
#include <sstream>

#include "msf/error.hpp"

namespace msf::ff {
namespace {

constexpr unsigned kMaxExtDegree = 16;

using Residues = std::vector<std::uint64_t>;

// Minimal F_p[t] helpers, only for the irreducibility test of the modulus.
void trim(Residues& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, base = a % p, k = p - 2;
  while (k) {
    if (k & 1) result = result * base % p;
    base = base * base % p;
    k >>= 1;
  }
  return result;
}

Residues rem_mod(Residues a, const Residues& b, std::uint64_t p) {
  trim(a);
  const std::uint64_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - c * b[i] % p) % p;
    }
    trim(a);
  }
  return a;
}

Residues mul_mod(const Residues& a, const Residues& b, const Residues& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Residues c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return rem_mod(std::move(c), m, p);
}

Residues gcd_residues(Residues a, Residues b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Residues r = rem_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool irreducible_over_prime_field(const Residues& h, std::uint64_t p) {
  const std::size_t e = h.size() - 1;
  if (e == 1) return true;
  // t^(p^i) mod h, i = 1 .. e-1; any common factor with t^(p^i) - t means a factor of degree | i.
  Residues power = {0, 1};
  for (std::size_t i = 1; i < e; ++i) {
    Residues acc = {1};
    Residues base = power;
    std::uint64_t k = p;
    while (k) {
      if (k & 1) acc = mul_mod(acc, base, h, p);
      base = mul_mod(base, base, h, p);
      k >>= 1;
    }
    power = acc;
    Residues diff = power;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (gcd_residues(h, diff, p).size() > 1) return false;
  }
  return true;
}

std::uint64_t multiplicative_order_mod(std::uint64_t p, std::uint64_t r) {
  std::uint64_t x = p % r, k = 1;
  while (x != 1) {
    x = x * (p % r) % r;
    ++k;
  }
  return k;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

FieldCtx FieldCtx::prime(std::uint64_t p) {
  if (p == 2) throw InvalidInput("characteristic 2 is not supported");
  if (p >= (1ULL << 31) || !is_prime(p)) throw InvalidInput("p must be an odd prime below 2^31");
  FieldCtx f;
  f.p_ = p;
  f.h_ = {0, 1};
  f.init_layout();
  return f;
}

FieldCtx::FieldCtx(std::uint64_t p, std::vector<std::uint64_t> h) : p_(p), h_(std::move(h)) {
  if (p == 2) throw InvalidInput("characteristic 2 is not supported");
  if (p >= (1ULL << 31) || !is_prime(p)) throw InvalidInput("p must be an odd prime below 2^31");
  for (auto& c : h_) c %= p_;
  trim(h_);
  if (h_.size() < 2 || h_.back() != 1) throw InvalidInput("field modulus must be monic of degree >= 1");
  if (!irreducible_over_prime_field(h_, p_)) throw InvalidInput("field modulus is reducible");
  init_layout();
}

void FieldCtx::init_layout() {
  e_ = static_cast<unsigned>(h_.size() - 1);
  if (e_ > kMaxExtDegree) throw LimitExceeded("extension degree above cap");
  bits_ = static_cast<unsigned>(std::bit_width(p_ - 1));
  if (bits_ * e_ > 63) throw LimitExceeded("field order does not fit a machine word");
  q_ = 1;
  for (unsigned i = 0; i < e_; ++i) q_ *= p_;
  slot_mask_ = (1ULL << bits_) - 1;
  top_mask_ = slot_mask_ << (bits_ * (e_ - 1));
  unit_primes_.clear();
  std::uint64_t m = q_ - 1;
  for (std::uint64_t d = 2; d < 10000 && d <= m; ++d) {
    if (m % d == 0 && is_prime(d)) unit_primes_.push_back(d);
  }
}

Elem FieldCtx::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return static_cast<Elem>(r) << (bits_ * (e_ - 1));
}

Elem FieldCtx::from_digits(const std::vector<std::uint64_t>& digits) const {
  if (digits.size() > e_) throw InvalidInput("too many coefficients for field element");
  Elem out = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    out |= (digits[i] % p_) << (bits_ * (e_ - 1 - i));
  }
  return out;
}

std::vector<std::uint64_t> FieldCtx::digits(Elem a) const {
  std::vector<std::uint64_t> d(e_);
  for (unsigned i = 0; i < e_; ++i) d[i] = (a >> (bits_ * (e_ - 1 - i))) & slot_mask_;
  return d;
}

std::uint64_t FieldCtx::to_int(Elem a) const {
  if (!in_prime_field(a)) throw InvalidInput("element is not in the prime field");
  return a >> (bits_ * (e_ - 1));
}

Elem FieldCtx::element_at(std::uint64_t k) const {
  Elem out = 0;
  for (unsigned i = 0; i < e_; ++i) {
    // Last coefficient varies fastest.
    out |= (k % p_) << (bits_ * i);
    k /= p_;
  }
  return out;
}

std::uint64_t FieldCtx::index_of(Elem a) const {
  std::uint64_t k = 0;
  for (unsigned i = 0; i < e_; ++i) k = k * p_ + ((a >> (bits_ * (e_ - 1 - i))) & slot_mask_);
  return k;
}

Elem FieldCtx::add_ext(Elem a, Elem b) const {
  Elem out = 0;
  for (unsigned i = 0; i < e_; ++i) {
    const unsigned sh = bits_ * i;
    std::uint64_t s = ((a >> sh) & slot_mask_) + ((b >> sh) & slot_mask_);
    if (s >= p_) s -= p_;
    out |= s << sh;
  }
  return out;
}

Elem FieldCtx::sub_ext(Elem a, Elem b) const {
  Elem out = 0;
  for (unsigned i = 0; i < e_; ++i) {
    const unsigned sh = bits_ * i;
    const std::uint64_t x = (a >> sh) & slot_mask_, y = (b >> sh) & slot_mask_;
    out |= (x >= y ? x - y : x + p_ - y) << sh;
  }
  return out;
}

Elem FieldCtx::mul_ext(Elem a, Elem b) const {
  std::array<std::uint64_t, kMaxExtDegree> x{}, y{};
  std::array<std::uint64_t, 2 * kMaxExtDegree> z{};
  for (unsigned i = 0; i < e_; ++i) {
    x[i] = (a >> (bits_ * (e_ - 1 - i))) & slot_mask_;
    y[i] = (b >> (bits_ * (e_ - 1 - i))) & slot_mask_;
  }
  for (unsigned i = 0; i < e_; ++i) {
    if (x[i] == 0) continue;
    for (unsigned j = 0; j < e_; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p_;
  }
  for (unsigned k = 2 * e_ - 2; k >= e_; --k) {
    const std::uint64_t c = z[k];
    if (c == 0) continue;
    for (unsigned j = 0; j < e_; ++j) {
      z[k - e_ + j] = (z[k - e_ + j] + (p_ - c) * h_[j]) % p_;
    }
  }
  Elem out = 0;
  for (unsigned i = 0; i < e_; ++i) out |= z[i] << (bits_ * (e_ - 1 - i));
  return out;
}

Elem FieldCtx::pow(Elem a, std::uint64_t k) const {
  Elem result = one();
  while (k) {
    if (k & 1) result = mul(result, a);
    a = mul(a, a);
    k >>= 1;
  }
  return result;
}

Elem FieldCtx::inv(Elem a) const {
  if (a == 0) throw InvalidInput("inverse of zero");
  return pow(a, q_ - 2);
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "p=" << p_ << ";e=" << e_ << ";h=";
  for (std::size_t i = 0; i < h_.size(); ++i) os << (i ? "," : "") << h_[i];
  return os.str();
}

FieldCtx FieldCtx::parse(const std::string& text) {
  std::uint64_t p = 0;
  long e = -1;
  std::vector<std::uint64_t> h;
  std::stringstream ss(text);
  std::string part;
  try {
    while (std::getline(ss, part, ';')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw InvalidInput("malformed field descriptor: " + text);
      const std::string key = part.substr(0, eq), val = part.substr(eq + 1);
      if (key == "p") {
        p = std::stoull(val);
      } else if (key == "e") {
        e = std::stol(val);
      } else if (key == "h") {
        std::stringstream hs(val);
        std::string c;
        while (std::getline(hs, c, ',')) h.push_back(std::stoull(c));
      } else {
        throw InvalidInput("unknown field descriptor key: " + key);
      }
    }
  } catch (const std::logic_error&) {
    throw InvalidInput("malformed field descriptor: " + text);
  }
  if (p == 0 || h.empty()) throw InvalidInput("incomplete field descriptor: " + text);
  if (e >= 0 && static_cast<std::size_t>(e) + 1 != h.size()) {
    throw InvalidInput("field descriptor degree does not match modulus");
  }
  if (h.size() == 2 && h[0] == 0 && h[1] == 1) return prime(p);
  return FieldCtx(p, std::move(h));
}

FieldCtx build_field_for_primes(std::uint64_t p, const std::vector<std::uint64_t>& primes) {
  if (p == 2 || p >= (1ULL << 31) || !is_prime(p)) throw InvalidInput("p must be an odd prime below 2^31");
  std::uint64_t e = 1;
  for (std::uint64_t r : primes) {
    if (r == p) throw InvalidInput("no extension of F_p has primitive " + std::to_string(r) + "-th roots of unity");
    e = std::lcm(e, multiplicative_order_mod(p, r));
    if (e > kMaxExtDegree) throw LimitExceeded("required extension degree above cap");
  }
  if (e == 1) return FieldCtx::prime(p);
  if (std::bit_width(p - 1) * e > 63) throw LimitExceeded("field order does not fit a machine word");
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < e; ++i) count *= p;
  for (std::uint64_t k = 0; k < count; ++k) {
    // Lower coefficients in canonical order: constant term most significant.
    std::vector<std::uint64_t> h(e + 1);
    std::uint64_t rest = k;
    for (std::uint64_t i = e; i-- > 0;) {
      h[i] = rest % p;
      rest /= p;
    }
    h[e] = 1;
    if (h[0] == 0) continue;
    if (irreducible_over_prime_field(h, p)) return FieldCtx(p, std::move(h));
  }
  throw InternalError("no irreducible polynomial found");
}

FieldCtx build_scheme_field(std::uint64_t p, unsigned max_level) {
  if (max_level < 2 || max_level > 12) throw InvalidInput("level bound must lie in [2, 12]");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t r = 2; r <= max_level; ++r)
    if (is_prime(r)) primes.push_back(r);
  return build_field_for_primes(p, primes);
}

Elem find_nonresidue(const FieldCtx& field, std::uint64_t r) {
  const std::uint64_t q = field.order();
  if (r < 2 || (q - 1) % r != 0) throw InvalidInput("r does not divide q - 1");
  const std::uint64_t exponent = (q - 1) / r;
  for (std::uint64_t k = 1; k < q; ++k) {
    const Elem a = field.element_at(k);
    if (a == 0) continue;
    if (field.pow(a, exponent) != field.one()) return a;
  }
  throw InternalError("no nonresidue found");
}

Elem root_of_unity(const FieldCtx& field, std::uint64_t r) {
  return field.pow(find_nonresidue(field, r), (field.order() - 1) / r);
}

}  // namespace msf::ff
