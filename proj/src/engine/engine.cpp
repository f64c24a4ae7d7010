#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "msf/algebra/decompose.hpp"
#include "msf/engine/engine.hpp"
#include "msf/error.hpp"
#include "msf/ff/linalg.hpp"

namespace msf::engine {

namespace {

using Key = std::pair<std::uint64_t, unsigned>;

/// lambda with a = lambda * b, if any (b nonzero).
std::optional<Elem> ratio(const FieldCtx& f, const Vec& a, const Vec& b) {
  std::size_t k = 0;
  while (k < b.size() && b[k] == 0) ++k;
  if (k == b.size()) throw InternalError("ratio against zero");
  const Elem lam = f.mul(a[k], f.inv(b[k]));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != f.mul(lam, b[i])) return std::nullopt;
  }
  return lam;
}

Poly lift_poly(const FieldCtx& from, const Poly& a, const FieldCtx& to) {
  std::vector<std::int64_t> c;
  for (auto v : ff::poly_to_ints(from, a)) c.push_back(static_cast<std::int64_t>(v));
  return ff::poly_from_ints(to, c);
}

unsigned ceil_log2(unsigned n) {
  unsigned k = 0;
  while ((1u << k) < n) ++k;
  return k;
}

std::uint64_t largest_prime_factor(std::uint64_t n) {
  const auto ps = ff::prime_factors(n);
  return ps.empty() ? 1 : ps.back();
}

class Runner {
 public:
  Runner(SchemeState& st, const EngineOptions& opt, std::uint64_t p, std::vector<std::string>& notes)
      : st_(st), opt_(opt), p_(p), notes_(notes), pos_(st.m() + 1), pos_version_(st.m() + 1, ~0ull),
        labels_(st.m() + 1), perms_(st.m() + 1) {}

  /// True if level 1 split.
  bool run() {
    for (;;) {
      if (st_.count(1) > 1) return true;
      if (pass()) continue;
      if (tower_step()) continue;
      return false;
    }
  }

  void log(Event ev) {
    const auto& done = st_.apply(std::move(ev));
    if (opt_.observer) opt_.observer(st_, done);
  }

 private:
  struct Labels {
    std::uint64_t version = ~0ull;
    std::vector<Vec> label;
    std::map<std::vector<Elem>, std::size_t> index;
  };

  const FieldCtx& field() const { return st_.field(); }
  const algebra::Tower& tower() const { return st_.tower(); }

  bool pass() {
    for (unsigned s = 2; s <= st_.m(); ++s) {
      if (compat(s) || invariance(s) || antisym(s) || regularity(s) || matching(s)) return true;
    }
    return false;
  }

  std::optional<std::size_t> position(unsigned s, std::uint64_t uid) {
    if (pos_version_[s] != st_.version(s)) {
      pos_[s].clear();
      for (std::size_t i = 0; i < st_.count(s); ++i) pos_[s][st_.level(s)[i].uid] = i;
      pos_version_[s] = st_.version(s);
    }
    auto it = pos_[s].find(uid);
    if (it == pos_[s].end()) return std::nullopt;
    return it->second;
  }

  /// Digit labels L_d = sum_i digit_d(i) e_i, digits of i in base q.
  const Labels& labels(unsigned s) {
    auto& lab = labels_[s];
    if (lab.version == st_.version(s)) return lab;
    const auto& f = field();
    const std::size_t t = st_.count(s);
    std::size_t digits = 0;
    for (std::uint64_t span = 1; span < t; span *= f.order()) {
      ++digits;
      if (span > std::numeric_limits<std::uint64_t>::max() / f.order()) break;
    }
    lab.label.assign(digits, Vec(tower().dim(s), 0));
    lab.index.clear();
    for (std::size_t i = 0; i < t; ++i) {
      std::vector<Elem> key;
      std::uint64_t rest = i;
      for (std::size_t d = 0; d < digits; ++d) {
        const Elem digit = f.element_at(rest % f.order());
        rest /= f.order();
        key.push_back(digit);
        if (digit != 0) ff::vec_axpy(f, lab.label[d], digit, st_.level(s)[i].ideal.e);
      }
      lab.index[key] = i;
    }
    lab.version = st_.version(s);
    return lab;
  }

  /// Position of the ideal containing x (nonzero), if x lies inside a single one.
  std::optional<std::size_t> locate(unsigned s, const Vec& x) {
    const auto& lab = labels(s);
    std::vector<Elem> key;
    for (const auto& l : lab.label) {
      auto r = ratio(field(), tower().mul(s, x, l), x);
      if (!r) return std::nullopt;
      key.push_back(*r);
    }
    auto it = lab.index.find(key);
    if (it == lab.index.end()) throw InternalError("label digits match no ideal");
    return it->second;
  }

  const Vec& fiber(unsigned s, std::size_t u, unsigned j) {
    const Key key{st_.level(s)[u].uid, j};
    auto it = fiber_.find(key);
    if (it != fiber_.end()) return it->second;
    return fiber_[key] = tower().fiber_count(s, j, st_.level(s)[u].ideal.e);
  }

  /// Lower ideal that slot j of upper ideal u projects into, if it is a single one.
  std::optional<std::size_t> lower_of(unsigned s, std::size_t u, unsigned j) {
    const Key key{st_.level(s)[u].uid, j};
    if (auto it = proj_.find(key); it != proj_.end()) {
      if (auto pos = position(s - 1, it->second)) return pos;
    }
    auto pos = locate(s - 1, fiber(s, u, j));
    if (pos) proj_[key] = st_.level(s - 1)[*pos].uid;
    return pos;
  }

  bool compat(unsigned s) {
    for (std::size_t u = 0; u < st_.count(s); ++u) {
      for (unsigned j = 1; j <= s; ++j) {
        if (lower_of(s, u, j)) continue;
        const Vec& c = fiber(s, u, j);
        for (std::size_t i = 0; i < st_.count(s - 1); ++i) {
          if (algebra::is_zero(tower().mul(s - 1, c, st_.level(s - 1)[i].ideal.e))) continue;
          Event ev;
          ev.kind = EventKind::Compat;
          ev.level = s;
          ev.index = u;
          ev.slot = j;
          ev.source = i;
          log(std::move(ev));
          return true;
        }
        throw InternalError("fiber count meets no lower ideal");
      }
    }
    return false;
  }

  bool invariance(unsigned s) {
    auto& perms = perms_[s];
    perms.assign(s - 1, std::vector<std::size_t>(st_.count(s)));
    for (unsigned k = 1; k < s; ++k) {
      std::vector<unsigned> tau(s);
      for (unsigned i = 0; i < s; ++i) tau[i] = i;
      std::swap(tau[k - 1], tau[k]);
      for (std::size_t a = 0; a < st_.count(s); ++a) {
        const Key key{st_.level(s)[a].uid, k};
        if (auto it = image_target_.find(key); it != image_target_.end()) {
          if (auto pos = position(s, it->second)) {
            perms[k - 1][a] = *pos;
            continue;
          }
        }
        auto img = image_.find(key);
        if (img == image_.end()) img = image_.emplace(key, tower().symm_action(s, tau, st_.level(s)[a].ideal.e)).first;
        const Vec& x = img->second;
        Event ev;
        ev.kind = EventKind::Invariant;
        ev.level = s;
        ev.slot = k;
        if (auto b = locate(s, x)) {
          if (st_.level(s)[*b].ideal.dim == st_.level(s)[a].ideal.dim) {
            image_target_[key] = st_.level(s)[*b].uid;
            perms[k - 1][a] = *b;
            continue;
          }
          ev.index = *b;
          ev.source = a;
          log(std::move(ev));
          return true;
        }
        std::optional<std::size_t> inside;
        for (std::size_t b = 0; b < st_.count(s); ++b) {
          const Vec& eb = st_.level(s)[b].ideal.e;
          const Vec y = tower().mul(s, x, eb);
          if (algebra::is_zero(y)) continue;
          if (y != eb) {
            ev.index = b;
            ev.source = a;
            log(std::move(ev));
            return true;
          }
          if (!inside) inside = b;
        }
        if (!inside) throw InternalError("image of an ideal meets no ideal");
        ev.index = a;
        ev.source = *inside;
        log(std::move(ev));
        return true;
      }
    }
    return false;
  }

  bool antisym(unsigned s) {
    using Perm = std::vector<unsigned>;
    const auto& gens = perms_[s];
    const std::size_t t = st_.count(s);
    std::map<Perm, std::vector<std::size_t>> action;
    Perm id(s);
    for (unsigned i = 0; i < s; ++i) id[i] = i;
    std::vector<std::size_t> ident(t);
    for (std::size_t i = 0; i < t; ++i) ident[i] = i;
    action[id] = ident;
    std::vector<Perm> queue{id};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Perm sigma = queue[head];
      const auto cur = action.at(sigma);
      for (unsigned k = 1; k < s; ++k) {
        Perm rho(s);
        for (unsigned i = 0; i < s; ++i) {
          const unsigned v = sigma[i];
          rho[i] = v == k - 1 ? k : (v == k ? k - 1 : v);
        }
        if (action.count(rho)) continue;
        std::vector<std::size_t> next(t);
        for (std::size_t i = 0; i < t; ++i) next[i] = gens[k - 1][cur[i]];
        action.emplace(rho, std::move(next));
        queue.push_back(std::move(rho));
      }
    }
    for (const auto& [sigma, act] : action) {
      if (sigma == id) continue;
      for (std::size_t i = 0; i < t; ++i) {
        if (act[i] != i) continue;
        Event ev;
        ev.kind = EventKind::Antisym;
        ev.level = s;
        ev.index = i;
        ev.sigma = sigma;
        log(std::move(ev));
        return true;
      }
    }
    return false;
  }

  /// kappa with fiber(s, u, j) = kappa * e_lower; after compat.
  std::optional<Elem> slot_count(unsigned s, std::size_t u, unsigned j, std::size_t lower) {
    const Key key{st_.level(s)[u].uid, j};
    const std::uint64_t luid = st_.level(s - 1)[lower].uid;
    if (auto it = count_.find(key); it != count_.end() && it->second.first == luid) return it->second.second;
    auto r = ratio(field(), fiber(s, u, j), st_.level(s - 1)[lower].ideal.e);
    if (r) count_[key] = {luid, *r};
    return r;
  }

  bool regularity(unsigned s) {
    const auto& f = field();
    const auto& alg = st_.algebra(s - 1);
    for (std::size_t u = 0; u < st_.count(s); ++u) {
      for (unsigned j = 1; j <= s; ++j) {
        const std::size_t i = *lower_of(s, u, j);
        if (slot_count(s, u, j, i)) continue;
        const Vec& c = fiber(s, u, j);
        const Vec& e = st_.level(s - 1)[i].ideal.e;
        for (unsigned k = 0; k <= st_.n(); ++k) {
          const Vec z = ff::vec_sub(f, c, ff::vec_scale(f, e, f.from_int(k)));
          if (algebra::support_idempotent(alg, z) == e) continue;
          Event ev;
          ev.kind = EventKind::Regular;
          ev.level = s - 1;
          ev.index = i;
          ev.source = u;
          ev.slot = j;
          ev.value = k;
          log(std::move(ev));
          return true;
        }
        throw InternalError("fiber count takes no value below n + 1");
      }
    }
    return false;
  }

  bool matching(unsigned s) {
    const Elem one = field().one();
    for (std::size_t u = 0; u < st_.count(s); ++u) {
      for (unsigned i = 1; i <= s; ++i) {
        const std::size_t qi = *lower_of(s, u, i);
        if (*slot_count(s, u, i, qi) != one) continue;
        if (st_.level(s - 1)[qi].ideal.dim != st_.level(s)[u].ideal.dim) continue;
        for (unsigned j = i + 1; j <= s; ++j) {
          const std::size_t qj = *lower_of(s, u, j);
          if (qj != qi || *slot_count(s, u, j, qj) != one) continue;
          Event ev;
          ev.kind = EventKind::Matching;
          ev.level = s - 1;
          ev.index = qi;
          ev.source = u;
          ev.slot = i;
          ev.slot2 = j;
          log(std::move(ev));
          return true;
        }
      }
    }
    return false;
  }

  bool tower_step();

  SchemeState& st_;
  const EngineOptions& opt_;
  std::uint64_t p_;
  std::vector<std::string>& notes_;
  std::vector<std::unordered_map<std::uint64_t, std::size_t>> pos_;
  std::vector<std::uint64_t> pos_version_;
  std::vector<Labels> labels_;
  std::vector<std::vector<std::vector<std::size_t>>> perms_;
  std::map<Key, Vec> fiber_;
  std::map<Key, std::uint64_t> proj_;
  std::map<Key, std::pair<std::uint64_t, Elem>> count_;
  std::map<Key, Vec> image_;
  std::map<Key, std::uint64_t> image_target_;
  std::set<std::uint64_t> tower_tried_;
};

bool Runner::tower_step() {
  if (opt_.tower == TowerMode::Off) return false;
  const unsigned n = st_.n();
  const unsigned max_depth = opt_.max_depth ? opt_.max_depth : n;
  if (opt_.depth >= max_depth) return false;
  const auto& f = field();
  const auto& a1 = st_.algebra(1);
  const Vec one1 = a1.one();
  for (std::size_t u = 0; u < st_.count(2); ++u) {
    const auto& part = st_.level(2)[u];
    if (!tower_tried_.insert(part.uid).second) continue;
    const auto basis = imprimitivity_space(tower(), 2, part.ideal.e, one1);
    const std::size_t c = basis.size();
    if (c <= 1 || c >= n) continue;
    if (opt_.tower == TowerMode::Sqrt && c * c > n) continue;
    // an element of S(I) separating all components
    std::optional<std::pair<Vec, Poly>> found;
    auto attempt = [&](const Vec& h) {
      Poly g = minimal_polynomial(a1, h, one1);
      if (static_cast<std::size_t>(g.degree()) == c) found.emplace(h, std::move(g));
      return found.has_value();
    };
    for (std::size_t i = 0; i < c && !found; ++i) attempt(basis[i]);
    for (std::size_t i = 0; i < c && !found; ++i) {
      for (std::size_t j = i + 1; j < c && !found; ++j) attempt(ff::vec_add(f, basis[i], basis[j]));
    }
    if (!found) {
      notes_.push_back("tower: no separating element for a level-2 ideal with " + std::to_string(c) + " components");
      continue;
    }
    const auto& [h, g] = *found;
    if (!std::all_of(g.c.begin(), g.c.end(), [&](Elem x) { return f.in_prime_field(x); })) continue;
    const FieldCtx fp = FieldCtx::prime(p_);
    FactorOptions sub;
    sub.strategy = opt_.recursion_strategy;
    sub.engine = opt_;
    sub.engine.observer = nullptr;
    sub.engine.depth = opt_.depth + 1;
    sub.engine.max_depth = max_depth;
    const FactorResult r = factor(p_, lift_poly(f, g, fp), sub);
    if (r.status != Status::Factored || r.factors.size() < 2) {
      notes_.push_back("tower: recursion on a degree " + std::to_string(c) + " polynomial gave no factor");
      continue;
    }
    const Poly g1 = lift_poly(fp, r.factors.front(), f);
    Vec z = a1.zero();
    for (std::size_t k = g1.c.size(); k-- > 0;) {
      z = a1.mul(z, h);
      z[0] = f.add(z[0], g1.c[k]);
    }
    Event ev;
    ev.kind = EventKind::Tower;
    ev.level = 1;
    ev.index = 0;
    ev.value = c;
    ev.element = std::move(z);
    log(std::move(ev));
    notes_.push_back("tower: level 1 split through a degree " + std::to_string(c) + " polynomial");
    return true;
  }
  return false;
}

std::vector<std::uint64_t> primes_up_to(unsigned m) {
  std::vector<std::uint64_t> out;
  for (unsigned r = 2; r <= m; ++r) {
    if (ff::is_prime(r)) out.push_back(r);
  }
  return out;
}

}  // namespace

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Auto: return "auto";
    case Strategy::Evdokimov: return "evdokimov";
    case Strategy::SmoothPrime: return "smooth-prime";
    case Strategy::Fixed: return "fixed";
  }
  return "?";
}

Strategy parse_strategy(const std::string& name) {
  for (auto s : {Strategy::Auto, Strategy::Evdokimov, Strategy::SmoothPrime, Strategy::Fixed}) {
    if (name == to_string(s)) return s;
  }
  throw InvalidInput("unknown strategy '" + name + "'");
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Factored: return "factored";
    case Status::Scheme: return "scheme";
    case Status::Limit: return "limit";
  }
  return "?";
}

unsigned choose_levels(Strategy s, unsigned n, unsigned fixed_levels, LevelBudget budget) {
  if (n < 2) throw InvalidInput("need degree at least 2");
  auto evdokimov = [&] {
    if (budget == LevelBudget::Aggressive) {
      const double k = std::ceil(2.0 * std::log2(static_cast<double>(n)) / 3.0 - 1e-9);
      return std::max(2u, static_cast<unsigned>(k));
    }
    return std::max(2u, ceil_log2(n));
  };
  auto smooth = [&] { return std::max(2u, static_cast<unsigned>(largest_prime_factor(n - 1)) + 1); };
  unsigned m = 0;
  switch (s) {
    case Strategy::Evdokimov:
      m = evdokimov();
      break;
    case Strategy::SmoothPrime:
      if (!ff::is_prime(n)) throw InvalidInput("smooth-prime strategy needs prime degree");
      m = smooth();
      break;
    case Strategy::Fixed:
      if (fixed_levels < 2) throw InvalidInput("fixed strategy needs --levels >= 2");
      m = fixed_levels;
      break;
    case Strategy::Auto:
      m = evdokimov();
      if (n % 2 == 0) m = 2;
      if (ff::is_prime(n)) m = std::min(m, smooth());
      break;
  }
  return std::min(m, n);
}

EngineResult run_engine(const Poly& f, std::uint64_t p, unsigned m, const EngineOptions& opt) {
  const FieldCtx fp = FieldCtx::prime(p);
  if (f.degree() < 2) throw InvalidInput("need a polynomial of degree at least 2");
  if (f.lead() != fp.one()) throw InvalidInput("polynomial must be monic");
  if (ff::split_squarefree_part(fp, f) != f) throw InvalidInput("polynomial must be squarefree and split over F_p");
  const unsigned n = static_cast<unsigned>(f.degree());
  if (m < 2 || m > n) throw InvalidInput("levels must lie in 2..deg f");

  EngineResult out;
  out.levels = m;
  auto primes = primes_up_to(m);
  for (;;) {
    const FieldCtx field = ff::build_field_for_primes(p, primes);
    out.field = field.describe();
    out.events.clear();
    auto st = std::make_shared<SchemeState>(field, lift_poly(fp, f, field), m, opt.cap);
    Runner runner(*st, opt, p, out.notes);
    try {
      for (unsigned s = 2; s <= m; ++s) {
        Event ev;
        ev.kind = EventKind::Init;
        ev.level = s;
        runner.log(std::move(ev));
      }
      const bool split = runner.run();
      out.events = st->events();
      if (!split) {
        out.status = Status::Scheme;
        for (unsigned s = 1; s <= m; ++s) out.certificate.push_back(st->dims(s));
        out.state = st;
        return out;
      }
      const auto& fq = st->poly();
      Poly product{{fp.one()}};
      for (const auto& part : st->level(1)) {
        Vec e = part.ideal.e;
        e[0] = field.sub(e[0], field.one());
        const Poly g = ff::poly_gcd(field, fq, Poly(e));
        if (g.degree() < 1 || g.degree() >= static_cast<int>(n)) throw InternalError("level-1 ideal gives a trivial factor");
        out.factors.push_back(lift_poly(field, g, fp));
        product = ff::mul(fp, product, out.factors.back());
      }
      if (product != f) throw InternalError("factors do not multiply back to f");
      Event ev;
      ev.kind = EventKind::Factor;
      ev.level = 1;
      ev.value = out.factors.size();
      runner.log(std::move(ev));
      out.events = st->events();
      out.state = st;
      out.status = Status::Factored;
      return out;
    } catch (const algebra::NeedsRootOfUnity& e) {
      if (std::find(primes.begin(), primes.end(), e.prime) != primes.end()) throw InternalError(e.what());
      primes.push_back(e.prime);
      std::sort(primes.begin(), primes.end());
      out.notes.push_back("restart over a field with primitive " + std::to_string(e.prime) + "-th roots of unity");
    } catch (const LimitExceeded& e) {
      out.status = Status::Limit;
      out.events = st->events();
      out.notes.push_back(e.what());
      return out;
    }
  }
}

FactorResult factor(std::uint64_t p, const Poly& f, const FactorOptions& opt) {
  if (p == 2 || !ff::is_prime(p)) throw InvalidInput("p must be an odd prime");
  const FieldCtx fp = FieldCtx::prime(p);
  if (f.is_zero()) throw InvalidInput("cannot factor the zero polynomial");
  FactorResult out;
  out.p = p;
  out.input = f;
  out.strategy = opt.strategy;
  const Poly g = f.degree() >= 1 ? ff::split_squarefree_part(fp, f) : Poly({fp.one()});
  out.remainder = ff::exact_div(fp, f, g);
  out.field = fp.describe();
  if (g.degree() < 2) {
    if (g.degree() == 1) out.factors.push_back(g);
    out.status = Status::Factored;
    out.complete = true;
    return out;
  }
  const unsigned n = static_cast<unsigned>(g.degree());
  const unsigned m = choose_levels(opt.strategy, n, opt.levels, opt.budget);
  out.levels = m;
  EngineResult r;
  try {
    r = run_engine(g, p, m, opt.engine);
  } catch (const LimitExceeded& e) {
    out.status = Status::Limit;
    out.diagnostic = e.what();
    out.factors = {g};
    return out;
  }
  out.status = r.status;
  out.field = r.field;
  out.events = std::move(r.events);
  out.certificate = std::move(r.certificate);
  out.state = r.state;
  for (const auto& note : r.notes) {
    if (!out.diagnostic.empty()) out.diagnostic += "; ";
    out.diagnostic += note;
  }
  if (r.status == Status::Scheme && opt.strategy == Strategy::SmoothPrime) {
    out.diagnostic = "unexpected outcome: the smooth-prime run ended in an antisymmetric scheme" +
                     (out.diagnostic.empty() ? std::string() : "; " + out.diagnostic);
  }
  if (r.status != Status::Factored) {
    out.factors = {g};
    return out;
  }
  out.factors = std::move(r.factors);
  if (opt.complete) {
    const unsigned max_depth = opt.engine.max_depth ? opt.engine.max_depth : n;
    std::vector<Poly> done;
    for (const auto& h : out.factors) {
      if (h.degree() < 2 || opt.engine.depth + 1 > max_depth) {
        done.push_back(h);
        continue;
      }
      FactorOptions sub = opt;
      sub.engine.observer = nullptr;
      sub.engine.depth = opt.engine.depth + 1;
      sub.engine.max_depth = max_depth;
      if (sub.strategy == Strategy::SmoothPrime && !ff::is_prime(static_cast<std::uint64_t>(h.degree()))) {
        sub.strategy = Strategy::Evdokimov;
      }
      const FactorResult r2 = factor(p, h, sub);
      for (const auto& x : r2.factors) done.push_back(x);
    }
    out.factors = std::move(done);
  }
  out.complete = std::all_of(out.factors.begin(), out.factors.end(), [](const Poly& h) { return h.degree() == 1; });
  return out;
}

FactorResult factor_smooth_prime(std::uint64_t p, const Poly& f, const EngineOptions& opt) {
  if (!ff::is_prime(static_cast<std::uint64_t>(std::max(f.degree(), 0)))) {
    throw InvalidInput("smooth-prime driver needs prime degree");
  }
  FactorOptions fo;
  fo.strategy = Strategy::SmoothPrime;
  fo.engine = opt;
  const FieldCtx fp = FieldCtx::prime(p == 2 ? 3 : p);
  if (p != 2 && ff::split_squarefree_part(fp, f) != ff::monic(fp, f)) {
    throw InvalidInput("polynomial must be squarefree and split over F_p");
  }
  return factor(p, f, fo);
}

}  // namespace msf::engine
