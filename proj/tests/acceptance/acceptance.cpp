// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "msf/algebra/oracle.hpp"
#include "msf/algebra/tower.hpp"
#include "msf/engine/engine.hpp"
#include "msf/error.hpp"
#include "msf/io/report.hpp"
#include "msf/scheme/analysis.hpp"
#include "msf/scheme/group.hpp"
#include "msf/scheme/properties.hpp"

using namespace msf;
using engine::Status;
using ff::FieldCtx;
using ff::Poly;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

Poly from_roots(const FieldCtx& f, const std::vector<std::uint64_t>& roots) {
  Poly g({f.one()});
  for (auto r : roots) g = ff::mul(f, g, ff::linear(f, f.from_int(static_cast<std::int64_t>(r))));
  return g;
}

std::vector<std::uint64_t> random_roots(std::mt19937_64& rng, std::uint64_t p, unsigned n) {
  std::vector<std::uint64_t> all(p);
  for (std::uint64_t i = 0; i < p; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(n);
  return all;
}

std::vector<std::uint64_t> roots_of(const FieldCtx& fp, const Poly& f) {
  std::vector<std::uint64_t> out;
  for (auto r : ff::prime_field_roots(fp, f)) out.push_back(fp.to_int(r));
  return out;
}

// Every factor monic of degree 0 < d < deg f, dividing f exactly, and the product is f.
std::string check_factors(const FieldCtx& fp, const Poly& f, const std::vector<Poly>& factors) {
  if (factors.size() < 2) return "no nontrivial split";
  Poly prod({fp.one()});
  for (const auto& g : factors) {
    if (g.degree() < 1 || g.degree() >= f.degree()) return "factor of trivial degree";
    if (g.lead() != fp.one()) return "factor not monic";
    if (!ff::divmod(fp, f, g).second.is_zero()) return "factor does not divide f";
    prod = ff::mul(fp, prod, g);
  }
  if (prod != f) return "product differs from f";
  return {};
}

std::string str(std::size_t v) { return std::to_string(v); }

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// 1. even degree at two levels
Outcome even_degree() {
  Outcome out;
  std::mt19937_64 rng(101);
  double worst = 0;
  std::size_t runs = 0;
  for (std::uint64_t p : {7, 13, 29, 101}) {
    const auto fp = FieldCtx::prime(p);
    for (unsigned n : {2u, 4u, 6u}) {
      for (int k = 0; k < 50; ++k) {
        const auto f = from_roots(fp, random_roots(rng, p, n));
        engine::FactorOptions opt;
        opt.strategy = engine::Strategy::Fixed;
        opt.levels = 2;
        const auto t0 = Clock::now();
        const auto r = engine::factor(p, f, opt);
        const double t = seconds_since(t0);
        worst = std::max(worst, t);
        ++runs;
        if (r.status != Status::Factored) {
          out.fail("certificate or limit for n=" + str(n) + " p=" + str(p));
          continue;
        }
        const auto why = check_factors(fp, f, r.factors);
        if (!why.empty()) out.fail(why);
        if (t >= 1.0) out.fail("slow run: " + fixed2(t) + " s");
      }
    }
  }
  if (out.ok) out.detail = str(runs) + " runs, worst " + fixed2(worst) + " s";
  return out;
}

// 2. evdokimov levels with complete factorization
Outcome evdokimov_complete() {
  Outcome out;
  std::mt19937_64 rng(202);
  const std::vector<std::uint64_t> primes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const unsigned n = 2 + static_cast<unsigned>(rng() % 7);
    std::uint64_t p = 0;
    do {
      p = primes[rng() % primes.size()];
    } while (p < n);
    const auto fp = FieldCtx::prime(p);
    const auto f = from_roots(fp, random_roots(rng, p, n));
    engine::FactorOptions opt;
    opt.strategy = engine::Strategy::Evdokimov;
    opt.complete = true;
    const auto t0 = Clock::now();
    const auto r = engine::factor(p, f, opt);
    const double t = seconds_since(t0);
    worst = std::max(worst, t);
    if (r.status != Status::Factored || !r.complete || r.factors.size() != n) {
      out.fail("incomplete factorization, n=" + str(n) + " p=" + str(p));
      continue;
    }
    const auto why = check_factors(fp, f, r.factors);
    if (!why.empty()) out.fail(why);
    if (t >= 10.0) out.fail("slow run: " + fixed2(t) + " s");
  }
  if (out.ok) out.detail = "100 runs, worst " + fixed2(worst) + " s";
  return out;
}

// 3. prime degree with m = r + 1
Outcome smooth_prime() {
  Outcome out;
  std::mt19937_64 rng(303);
  double worst7 = 0;
  for (auto [n, p] : {std::pair<unsigned, std::uint64_t>{5, 11}, {7, 853}}) {
    const auto fp = FieldCtx::prime(p);
    for (int k = 0; k < 20; ++k) {
      const auto roots = random_roots(rng, p, n);
      const auto f = from_roots(fp, roots);
      const auto t0 = Clock::now();
      const auto r = engine::factor_smooth_prime(p, f);
      const double t = seconds_since(t0);
      if (n == 7) worst7 = std::max(worst7, t);
      if (r.levels != (n == 5 ? 3u : 4u)) out.fail("unexpected level count " + str(r.levels));
      if (r.status == Status::Scheme) {
        // prime degree at m = r + 1 should always split; report whether a certificate would even verify
        const auto why = engine::verify_certificate(*r.state, roots_of(fp, f));
        out.fail("scheme outcome for n=" + str(n) + " p=" + str(p) +
                 (why.empty() ? " with a valid certificate" : " (certificate invalid: " + why + ")"));
        continue;
      }
      if (r.status != Status::Factored) {
        out.fail("limit for n=" + str(n));
        continue;
      }
      const auto why = check_factors(fp, f, r.factors);
      if (!why.empty()) out.fail(why);
      if (n == 7 && t >= 120.0) out.fail("slow run: " + fixed2(t) + " s");
    }
  }
  if (out.ok) out.detail = "40 runs (n=5 over F_11, n=7 over F_853), worst n=7 " + fixed2(worst7) + " s";
  return out;
}

// 4. dimensions of the essential powers, and the two constructions agree
Outcome dimension_law() {
  Outcome out;
  std::size_t checked = 0;
  for (unsigned n = 2; n <= 7; ++n) {
    std::vector<std::uint64_t> roots;
    for (unsigned i = 1; i <= n; ++i) roots.push_back(i);
    for (unsigned m = 1; m <= std::min(4u, n); ++m) {
      const auto field = ff::build_scheme_field(101, std::max(m, 2u));
      const auto t = algebra::Tower::essential(field, from_roots(field, roots), m);
      std::size_t want = 1;
      for (unsigned s = 1; s <= m; ++s) {
        want *= n - s + 1;
        if (t->dim(s) != want) out.fail("dim A_" + str(s) + " wrong for n=" + str(n));
        ++checked;
      }
    }
  }
  std::size_t iso = 0;
  for (unsigned n = 2; n <= 4; ++n) {
    std::vector<std::uint64_t> roots;
    for (unsigned i = 1; i <= n; ++i) roots.push_back(2 * i + 1);
    const auto fp = FieldCtx::prime(101);
    const auto f = from_roots(fp, roots);
    for (unsigned m = 2; m <= std::min(3u, n); ++m) {
      const auto t = algebra::Tower::essential(fp, f, m);
      const auto d = algebra::delta_crosscheck(fp, f, m);
      if (d.basis.size() != t->dim(m)) out.fail("Delta ideal dimension differs, n=" + str(n) + " m=" + str(m));
      if (!algebra::isomorphic_to_essential(*t, m, d)) out.fail("constructions not isomorphic, n=" + str(n));
      ++iso;
    }
  }
  if (out.ok) out.detail = str(checked) + " dimensions exact, " + str(iso) + " isomorphisms";
  return out;
}

// 5. supports partition every level after every event
Outcome oracle_equivalence() {
  Outcome out;
  std::mt19937_64 rng(505);
  const std::vector<std::uint64_t> primes{7, 11, 13, 29, 31, 43, 61, 101};
  std::size_t events = 0, certificates = 0;
  for (int k = 0; k < 20; ++k) {
    const unsigned n = 3 + static_cast<unsigned>(rng() % 4);
    const std::uint64_t p = primes[rng() % primes.size()];
    const unsigned m = 2 + static_cast<unsigned>(rng() % 2);
    const auto fp = FieldCtx::prime(p);
    const auto f = from_roots(fp, random_roots(rng, p, n));
    const auto roots = roots_of(fp, f);
    engine::OracleMonitor mon(roots);
    engine::EngineOptions eo;
    eo.observer = std::ref(mon);
    try {
      const auto r = engine::run_engine(f, p, m, eo);
      events += mon.checked();
      if (mon.checked() != r.events.size()) out.fail("monitor missed events");
      // the terminal partition always comes from disjoint supports
      const auto pi = engine::support_scheme(*r.state, roots);
      if (r.status == Status::Scheme) {
        ++certificates;
        const auto why = engine::verify_certificate(*r.state, roots);
        if (!why.empty()) out.fail(why);
        const auto rep = scheme::check_properties(pi);
        if (!rep.homogeneous || !rep.antisymmetric()) out.fail("certificate flags do not hold");
      } else if (r.status == Status::Factored) {
        const auto why = check_factors(fp, f, r.factors);
        if (!why.empty()) out.fail(why);
      }
    } catch (const InternalError& e) {
      out.fail(e.what());
    }
  }
  // random n <= 6 inputs rarely end in a certificate; x^7 - 1 over F_43 does
  {
    const auto f43 = FieldCtx::prime(43);
    const auto f = ff::poly_from_ints(f43, {-1, 0, 0, 0, 0, 0, 0, 1});
    const auto roots = roots_of(f43, f);
    engine::OracleMonitor mon(roots);
    engine::EngineOptions eo;
    eo.observer = std::ref(mon);
    try {
      const auto r = engine::run_engine(f, 43, 2, eo);
      events += mon.checked();
      if (r.status != Status::Scheme) {
        out.fail("x^7 - 1 over F_43 did not end in a certificate");
      } else {
        ++certificates;
        const auto why = engine::verify_certificate(*r.state, roots);
        if (!why.empty()) out.fail(why);
      }
    } catch (const InternalError& e) {
      out.fail(e.what());
    }
  }
  if (out.ok) out.detail = "21 runs, " + str(events) + " events checked, " + "certificates verified: " + str(certificates);
  return out;
}

// components of the graph on n points whose edges are the flagged pairs
std::size_t components(unsigned n, const TupleSpace& space, const std::vector<bool>& flagged) {
  std::vector<std::vector<unsigned>> adj(n);
  for (std::size_t r = 0; r < space.size(); ++r) {
    if (!flagged[r]) continue;
    const auto t = space.at(r);
    adj[t[0]].push_back(t[1]);
    adj[t[1]].push_back(t[0]);
  }
  std::vector<bool> seen(n, false);
  std::size_t k = 0;
  for (unsigned v = 0; v < n; ++v) {
    if (seen[v]) continue;
    ++k;
    std::vector<unsigned> stack{v};
    seen[v] = true;
    while (!stack.empty()) {
      const unsigned x = stack.back();
      stack.pop_back();
      for (unsigned y : adj[x]) {
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
  }
  return k;
}

// 6. dim S(I) equals the component count
Outcome imprimitivity_components() {
  Outcome out;
  std::mt19937_64 rng(606);
  const std::uint64_t p = 101;
  const auto fp = FieldCtx::prime(p);
  std::size_t instances = 0;
  std::vector<std::size_t> by_c(4, 0);
  auto check = [&](const algebra::Tower& tower, unsigned n, const std::vector<bool>& flagged,
                   const std::vector<ff::Elem>& pts) {
    const TupleSpace space(n, 2);
    const auto e = algebra::idempotent_from_support(tower, 2, flagged, pts);
    const auto S = engine::imprimitivity_space(tower, 2, e, tower.one(1));
    const auto k = components(n, space, flagged);
    if (S.size() != k) out.fail("dim S = " + str(S.size()) + " but " + str(k) + " components");
    if (k <= 3) ++by_c[k];
    ++instances;
  };
  // blocks of a random partition into c parts, edges drawn inside blocks only
  for (int k = 0; k < 18; ++k) {
    const unsigned n = 4 + static_cast<unsigned>(k % 5);
    const unsigned c = 1 + static_cast<unsigned>(k % 3);
    const auto roots = random_roots(rng, p, n);
    const auto tower = algebra::Tower::essential(fp, from_roots(fp, roots), 2);
    std::vector<ff::Elem> pts;
    for (auto r : roots) pts.push_back(fp.from_int(static_cast<std::int64_t>(r)));
    std::vector<unsigned> block(n);
    for (unsigned i = 0; i < n; ++i) block[i] = i < c ? i : static_cast<unsigned>(rng() % c);
    // a spanning path inside each block keeps the block count exact
    const TupleSpace space(n, 2);
    std::vector<bool> flagged(space.size(), false);
    for (unsigned b = 0; b < c; ++b) {
      std::vector<unsigned> members;
      for (unsigned i = 0; i < n; ++i) {
        if (block[i] == b) members.push_back(i);
      }
      for (std::size_t i = 0; i + 1 < members.size(); ++i) {
        const std::vector<unsigned> t{members[i], members[i + 1]};
        flagged[space.rank(t)] = true;
      }
    }
    for (std::size_t r = 0; r < space.size(); ++r) {
      const auto t = space.at(r);
      if (block[t[0]] == block[t[1]] && rng() % 4 == 0) flagged[r] = true;
    }
    if (std::none_of(flagged.begin(), flagged.end(), [](bool b) { return b; })) continue;
    check(*tower, n, flagged, pts);
  }
  // level-2 ideals of an engine certificate (x^7 - 1 over F_43)
  const auto f43 = FieldCtx::prime(43);
  const auto f = ff::poly_from_ints(f43, {-1, 0, 0, 0, 0, 0, 0, 1});
  const auto r = engine::run_engine(f, 43, 2);
  if (r.status == Status::Scheme) {
    const auto roots = roots_of(f43, f);
    const auto pi = engine::support_scheme(*r.state, roots);
    const auto& st = *r.state;
    std::vector<ff::Elem> pts;
    for (auto x : roots) pts.push_back(st.field().from_int(static_cast<std::int64_t>(x)));
    for (std::size_t i = 0; i < st.count(2); ++i) {
      std::vector<bool> flagged(pi.space(2).size());
      const auto ranks = algebra::support_oracle(st.tower(), 2, st.level(2)[i].ideal.e, pts);
      for (auto rk : ranks) flagged[rk] = true;
      const auto S = engine::imprimitivity_space(st.tower(), 2, st.level(2)[i].ideal.e, st.tower().one(1));
      const auto k = components(7, pi.space(2), flagged);
      if (S.size() != k) out.fail("certificate ideal: dim S = " + str(S.size()) + " but " + str(k) + " components");
      if (k <= 3) ++by_c[k];
      ++instances;
    }
  } else {
    out.fail("expected a certificate for x^7 - 1 over F_43");
  }
  if (instances < 10 || by_c[1] == 0 || by_c[2] == 0 || by_c[3] == 0) out.fail("not enough instances of c = 1, 2, 3");
  if (out.ok) {
    out.detail = str(instances) + " instances, c=1: " + str(by_c[1]) + ", c=2: " + str(by_c[2]) + ", c=3: " + str(by_c[3]);
  }
  return out;
}

// 7. orbit schemes of the catalog
Outcome orbit_suite() {
  Outcome out;
  std::size_t groups = 0, matchings = 0;
  for (const auto& g : scheme::group_catalog()) {
    const unsigned m = std::min(3u, g.degree());
    const auto pi = scheme::orbit_scheme(g, m);
    const auto rep = scheme::check_properties(pi);
    if (!rep.compatible() || !rep.regular() || !rep.invariant()) out.fail(g.name() + " orbit scheme is not a scheme");
    const bool odd = g.order() % 2 == 1;
    if (rep.levels[1].antisymmetric != odd) out.fail(g.name() + ": antisymmetry differs from odd order");
    ++groups;
    if (!odd || !g.is_transitive() || g.order() == 1) continue;
    const auto om = scheme::orbit_matching_construct(g);
    const auto big = scheme::orbit_scheme(g, om.level);
    const auto c = big.color(om.level, big.space(om.level).rank(om.tuple));
    const auto ms = scheme::find_matchings(big);
    const bool found = std::any_of(ms.begin(), ms.end(), [&](const scheme::Matching& mt) {
      return mt.level == om.level && mt.color == c;
    });
    if (!found) out.fail(g.name() + ": constructed colour is not a matching");
    const std::string name = g.name();
    if (name == "Z/7" && om.level != 2) out.fail("Z/7 matching not at level 2");
    if ((name == "F_21" || name == "F_39") && om.level != 3) out.fail(name + " matching not at level 3");
    ++matchings;
  }
  if (out.ok) out.detail = str(groups) + " groups, " + str(matchings) + " constructed matchings verified";
  return out;
}

// 8. fiber bound on 4-schemes with 9 <= n <= 13
Outcome fiber_bound() {
  Outcome out;
  std::vector<std::pair<std::string, scheme::MCollection>> cases;
  for (const auto& g : scheme::group_catalog()) {
    if (g.degree() < 9 || g.degree() > 13 || g.order() % 2 == 0 || !g.is_transitive()) continue;
    cases.emplace_back("orbit:" + g.name(), scheme::orbit_scheme(g, 4));
  }
  std::size_t searched = 0;
  for (unsigned n = 9; n <= 13; ++n) {
    const auto rep = scheme::conjecture_search(n, 20, 8, 4);
    for (std::size_t i = 0; i < rep.schemes.size(); ++i) {
      cases.emplace_back("search:" + rep.instances[i].source, rep.schemes[i]);
      ++searched;
    }
  }
  for (const auto& [name, pi] : cases) {
    try {
      const auto w = scheme::fiber_bound_check(pi);
      if (8 * w.subdegree >= pi.n()) out.fail(name + ": subdegree " + str(w.subdegree) + " not below n/8");
    } catch (const std::exception& e) {
      out.fail(name + ": " + e.what());
    }
  }
  if (out.ok) out.detail = str(cases.size()) + " schemes (" + str(searched) + " from the search), zero failures";
  return out;
}

// 9. level-2 colour sizes on prime degree
Outcome hanaki_uno() {
  Outcome out;
  std::vector<std::pair<std::string, scheme::MCollection>> cases;
  cases.emplace_back("cyclotomic d=1", scheme::orbit_scheme(scheme::cyclic_group(7), 2));
  cases.emplace_back("cyclotomic d=3", scheme::orbit_scheme(scheme::frobenius_group(7, 3), 2));
  for (const auto& g : scheme::group_catalog()) {
    if (!ff::is_prime(g.degree()) || !g.is_transitive()) continue;
    cases.emplace_back(g.name(), scheme::orbit_scheme(g, 2));
  }
  std::size_t d1 = 0, d3 = 0;
  for (const auto& [name, pi] : cases) {
    const auto h = scheme::hanaki_uno_verify(pi);
    const unsigned n = pi.n();
    if (!h.ok) {
      out.fail(name + ": unequal level-2 sizes");
      continue;
    }
    if ((n - 1) % h.d != 0) out.fail(name + ": d does not divide n - 1");
    for (auto sz : pi.color_sizes(2)) {
      if (sz != h.d * n) out.fail(name + ": colour size is not d n");
    }
    if (n == 7 && h.d == 1) ++d1;
    if (n == 7 && h.d == 3) ++d3;
  }
  if (d1 == 0 || d3 == 0) out.fail("missing a 7-point cyclotomic case");
  if (out.ok) out.detail = str(cases.size()) + " schemes";
  return out;
}

// 10. identical JSON and event logs across two runs
Outcome determinism() {
  Outcome out;
  struct Fixture {
    std::uint64_t p;
    std::vector<std::int64_t> f;
    engine::Strategy strategy;
    unsigned levels;
    bool complete;
  };
  std::vector<Fixture> fixtures;
  std::mt19937_64 rng(1010);
  const engine::Strategy cycle[] = {engine::Strategy::Auto, engine::Strategy::Evdokimov, engine::Strategy::Fixed};
  for (int k = 0; k < 17; ++k) {
    const std::uint64_t p = std::vector<std::uint64_t>{13, 29, 31, 61, 101}[k % 5];
    const unsigned n = 2 + static_cast<unsigned>(k % 6);
    const auto fp = FieldCtx::prime(p);
    const auto f = from_roots(fp, random_roots(rng, p, n));
    std::vector<std::int64_t> c;
    for (auto x : ff::poly_to_ints(fp, f)) c.push_back(static_cast<std::int64_t>(x));
    fixtures.push_back({p, c, cycle[k % 3], 2, k % 2 == 0});
  }
  fixtures.push_back({43, {-1, 0, 0, 0, 0, 0, 0, 1}, engine::Strategy::Fixed, 2, false});  // certificate
  fixtures.push_back({7, {0, 0, 1, 0, 1}, engine::Strategy::Auto, 0, true});               // remainder
  fixtures.push_back({11, {1, 2, 3, 4, 5, 1}, engine::Strategy::SmoothPrime, 0, false});
  auto render = [](const Fixture& fx) {
    const auto fp = FieldCtx::prime(fx.p);
    engine::FactorOptions opt;
    opt.strategy = fx.strategy;
    opt.levels = fx.levels;
    opt.complete = fx.complete;
    std::string text;
    try {
      const auto r = engine::factor(fx.p, ff::poly_from_ints(fp, fx.f), opt);
      text = io::dump(io::factor_json(r));
      if (r.state) {
        text += io::event_lines(r.state->field(), r.events);
        if (r.status == Status::Scheme) text += io::dump(io::certificate_json(*r.state));
      }
    } catch (const InvalidInput& e) {
      text = std::string("invalid: ") + e.what();
    }
    return text;
  };
  for (const auto& fx : fixtures) {
    if (render(fx) != render(fx)) out.fail("outputs differ for p=" + str(fx.p));
  }
  if (out.ok) out.detail = str(fixtures.size()) + " fixtures byte-identical";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"even degree splits at m=2", even_degree},
      {"evdokimov complete factorization", evdokimov_complete},
      {"smooth-prime driver", smooth_prime},
      {"dimension law and Delta isomorphism", dimension_law},
      {"oracle equivalence", oracle_equivalence},
      {"imprimitivity space vs components", imprimitivity_components},
      {"orbit-scheme suite", orbit_suite},
      {"fiber bound on 4-schemes", fiber_bound},
      {"prime-degree colour sizes", hanaki_uno},
      {"determinism", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all = all && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << " ["
              << fixed2(seconds_since(t0)) << " s]" << std::endl;
  }
  return all ? 0 : 1;
}
