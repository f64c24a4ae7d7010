#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include "doctest.h"
#include "msf/error.hpp"
#include "msf/scheme/analysis.hpp"
#include "msf/scheme/group.hpp"
#include "msf/scheme/properties.hpp"

using namespace msf;
using namespace msf::scheme;

namespace {

using Tuple = std::vector<unsigned>;
using Coloring = std::map<Tuple, unsigned>;

std::vector<Tuple> all_tuples(unsigned n, unsigned s) {
  std::vector<Tuple> out;
  Tuple t;
  std::vector<bool> used(n);
  auto rec = [&](auto&& self) -> void {
    if (t.size() == s) {
      out.push_back(t);
      return;
    }
    for (unsigned v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      t.push_back(v);
      self(self);
      t.pop_back();
      used[v] = false;
    }
  };
  rec(rec);
  return out;
}

std::vector<Coloring> as_maps(const MCollection& pi) {
  std::vector<Coloring> out(pi.m() + 1);
  for (unsigned s = 1; s <= pi.m(); ++s) {
    const auto& sp = pi.space(s);
    for (std::size_t r = 0; r < sp.size(); ++r) out[s][Tuple(sp.at(r).begin(), sp.at(r).end())] = pi.color(s, r);
  }
  return out;
}

struct Flags {
  bool compatible = true, regular = true, invariant = true, symmetric = true, antisymmetric = true;
};

// Straight from the definitions, on explicit tuples.
Flags brute_flags(unsigned n, const std::vector<Coloring>& col, unsigned s) {
  Flags f;
  const auto upper = all_tuples(n, s);
  std::map<unsigned, std::set<Tuple>> classes;
  for (const auto& t : upper) classes[col[s].at(t)].insert(t);
  for (unsigned i = 0; i < s; ++i) {
    auto del = [&](const Tuple& t) {
      Tuple u = t;
      u.erase(u.begin() + i);
      return u;
    };
    for (const auto& [c, members] : classes) {
      std::set<unsigned> proj;
      for (const auto& t : members) proj.insert(col[s - 1].at(del(t)));
      if (proj.size() > 1) f.compatible = false;
      // fiber counts over each lower tuple
      std::map<unsigned, std::set<std::size_t>> by_lower_color;
      for (const auto& u : all_tuples(n, s - 1)) {
        std::size_t cnt = 0;
        for (const auto& t : members) cnt += del(t) == u;
        by_lower_color[col[s - 1].at(u)].insert(cnt);
      }
      for (const auto& [q, counts] : by_lower_color) {
        if (counts.size() > 1) f.regular = false;
      }
    }
  }
  Tuple sigma(s);
  std::iota(sigma.begin(), sigma.end(), 0u);
  while (std::next_permutation(sigma.begin(), sigma.end())) {
    for (const auto& [c, members] : classes) {
      std::set<Tuple> img;
      for (const auto& t : members) {
        Tuple u(s);
        for (unsigned i = 0; i < s; ++i) u[i] = t[sigma[i]];
        img.insert(u);
      }
      const bool is_class = std::any_of(classes.begin(), classes.end(), [&](const auto& kv) { return kv.second == img; });
      if (!is_class) f.invariant = false;
      if (img != members) f.symmetric = false;
      if (img == members) f.antisymmetric = false;
    }
  }
  return f;
}

void expect_flags_match(const MCollection& pi) {
  const auto rep = check_properties(pi);
  const auto maps = as_maps(pi);
  for (unsigned s = 2; s <= pi.m(); ++s) {
    const auto b = brute_flags(pi.n(), maps, s);
    const auto& l = rep.levels[s - 1];
    CHECK(l.compatible == b.compatible);
    CHECK(l.regular == b.regular);
    CHECK(l.invariant == b.invariant);
    CHECK(l.symmetric == b.symmetric);
    CHECK(l.antisymmetric == b.antisymmetric);
  }
}

// Orbits by applying every group element, the group closed by BFS over words.
std::vector<Coloring> brute_orbits(unsigned n, const std::vector<Perm>& gens, unsigned m) {
  std::set<Perm> group;
  std::queue<Perm> q;
  Perm id(n);
  std::iota(id.begin(), id.end(), 0u);
  group.insert(id);
  q.push(id);
  while (!q.empty()) {
    const Perm x = q.front();
    q.pop();
    for (const auto& g : gens) {
      Perm y(n);
      for (unsigned i = 0; i < n; ++i) y[i] = x[g[i]];
      if (group.insert(y).second) q.push(y);
    }
  }
  std::vector<Coloring> out(m + 1);
  for (unsigned s = 1; s <= m; ++s) {
    unsigned next = 0;
    for (const auto& t : all_tuples(n, s)) {
      if (out[s].count(t)) continue;
      for (const auto& g : group) {
        Tuple u(s);
        for (unsigned i = 0; i < s; ++i) u[i] = g[t[i]];
        out[s][u] = next;
      }
      ++next;
    }
  }
  return out;
}

bool same_partition(const Coloring& a, const Coloring& b) {
  std::map<unsigned, unsigned> ab, ba;
  for (const auto& [t, c] : a) {
    const unsigned d = b.at(t);
    if (!ab.try_emplace(c, d).first->second == d) return false;
    if (ab.at(c) != d || ba.try_emplace(d, c).first->second != c) return false;
  }
  return true;
}

MCollection seeded_pair(unsigned n, unsigned m, const std::vector<Tuple>& special) {
  MCollection pi(n, m);
  std::vector<Color> lv(pi.level(2).size(), 0);
  for (const auto& t : special) lv[pi.space(2).rank(t)] = 1;
  pi.set_level(2, lv);
  return pi;
}

PermGroup by_name(const std::string& name) {
  for (auto& g : group_catalog()) {
    if (g.name() == name) return g;
  }
  throw std::runtime_error("no group " + name);
}

// Component counts by BFS over explicit adjacency, for G(P, base).
std::size_t bfs_components(unsigned n, const std::vector<Coloring>& col, unsigned s, unsigned p, unsigned q,
                           const Tuple& base) {
  std::vector<unsigned> verts;
  for (unsigned v = 0; v < n; ++v) {
    Tuple t = base;
    t.push_back(v);
    if (std::find(base.begin(), base.end(), v) == base.end() && col[s - 1].at(t) == q) verts.push_back(v);
  }
  std::map<unsigned, std::vector<unsigned>> adj;
  for (unsigned u : verts) {
    for (unsigned v : verts) {
      if (u == v) continue;
      Tuple t = base;
      t.push_back(u);
      t.push_back(v);
      if (col[s].at(t) == p) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
    }
  }
  std::set<unsigned> seen;
  std::size_t comps = 0;
  for (unsigned v : verts) {
    if (seen.count(v)) continue;
    ++comps;
    std::queue<unsigned> bq;
    bq.push(v);
    seen.insert(v);
    while (!bq.empty()) {
      const unsigned x = bq.front();
      bq.pop();
      for (unsigned y : adj[x]) {
        if (seen.insert(y).second) bq.push(y);
      }
    }
  }
  return comps;
}

}  // namespace

TEST_CASE("property checks on small collections") {
  const auto z3 = orbit_scheme(cyclic_group(3), 2);
  auto rep = check_properties(z3);
  CHECK(rep.is_scheme());
  CHECK(rep.homogeneous);
  CHECK(rep.antisymmetric());
  CHECK(z3.color_count(2) == 2);

  const MCollection trivial(4, 2);
  rep = check_properties(trivial);
  CHECK(rep.is_scheme());
  CHECK(rep.symmetric());
  CHECK_FALSE(rep.antisymmetric());

  const auto seeded = seeded_pair(3, 2, {{0, 1}});
  rep = check_properties(seeded);
  CHECK_FALSE(rep.invariant());
  CHECK_FALSE(rep.regular());
  CHECK(rep.compatible());
}

TEST_CASE("property checks agree with the definitions") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned n = 3 + rng() % 3;
    const unsigned m = 2 + rng() % 2;
    std::vector<std::vector<Color>> levels;
    const auto geo = Geometry::get(n, m);
    for (unsigned s = 1; s <= m; ++s) {
      const unsigned k = 1 + rng() % 3;
      std::vector<Color> lv(geo->size(s));
      for (auto& c : lv) c = static_cast<Color>(rng() % k);
      levels.push_back(std::move(lv));
    }
    const MCollection pi(n, levels);
    expect_flags_match(pi);
    expect_flags_match(refine_closure(pi));
  }
  for (const char* name : {"Z/4", "Z/5", "Symm_3", "F_21", "Klein_4", "F_10"}) {
    expect_flags_match(orbit_scheme(by_name(name), 3));
  }
}

TEST_CASE("subdegrees") {
  const auto z7 = orbit_scheme(cyclic_group(7), 2);
  for (Color c = 0; c < z7.color_count(2); ++c) CHECK(subdegree(z7, 2, c, 1) == Rational{1, 1});
  for (unsigned n : {3u, 5u, 6u}) CHECK(subdegree(MCollection(n, 2), 2, 0, 2) == Rational{n - 1, 1});
  const auto f21 = orbit_scheme(frobenius_group(7, 3), 2);
  CHECK(f21.color_count(2) == 2);
  for (Color c = 0; c < 2; ++c) CHECK(subdegree(f21, 2, c, 1) == Rational{3, 1});
  CHECK_THROWS_AS(subdegree(seeded_pair(3, 2, {{0, 1}}), 2, 0, 1), InvalidState);
}

TEST_CASE("refinement closure") {
  const MCollection trivial(5, 3);
  CHECK(refine_closure(trivial) == trivial);
  for (const char* name : {"Z/7", "F_21", "Symm_4", "Z/3wrZ/3", "F_20"}) {
    const auto g = by_name(name);
    const auto pi = orbit_scheme(g, std::min(3u, g.degree()));
    CHECK(refine_closure(pi) == pi);
  }
  const auto seeded = seeded_pair(3, 2, {{0, 1}});
  const auto closed = refine_closure(seeded);
  CHECK(check_properties(closed).is_scheme());
  // refines the seed: equal closed colours imply equal seed colours
  for (unsigned s = 1; s <= 2; ++s) {
    std::map<Color, Color> back;
    for (std::size_t r = 0; r < closed.level(s).size(); ++r) {
      auto [it, fresh] = back.try_emplace(closed.color(s, r), seeded.color(s, r));
      CHECK(it->second == seeded.color(s, r));
    }
  }
  CHECK(refine_closure(closed) == closed);
}

TEST_CASE("refinement closure is idempotent and refines its input") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const unsigned n = 4 + rng() % 3;
    const auto geo = Geometry::get(n, 3);
    std::vector<std::vector<Color>> levels(3);
    levels[0].assign(n, 0);
    for (unsigned s = 2; s <= 3; ++s) {
      levels[s - 1].resize(geo->size(s));
      for (auto& c : levels[s - 1]) c = static_cast<Color>(rng() % 4 == 0);
    }
    const MCollection pi(n, levels);
    const auto c1 = refine_closure(pi);
    CHECK(check_properties(c1).is_scheme());
    CHECK(refine_closure(c1) == c1);
    for (unsigned s = 1; s <= 3; ++s) {
      std::map<Color, Color> back;
      bool refines = true;
      for (std::size_t r = 0; r < c1.level(s).size(); ++r) {
        auto [it, fresh] = back.try_emplace(c1.color(s, r), pi.color(s, r));
        refines &= it->second == pi.color(s, r);
      }
      CHECK(refines);
    }
  }
}

TEST_CASE("matchings") {
  const auto z7 = orbit_scheme(cyclic_group(7), 2);
  const auto mz = find_matchings(z7);
  REQUIRE(mz.size() == 6);
  for (Color c = 0; c < 6; ++c) CHECK(mz[c] == Matching{2, c, 1, 2});
  CHECK(find_matchings(MCollection(5, 2)).empty());
  CHECK(find_matchings(orbit_scheme(by_name("Symm_3"), 2)).empty());
}

TEST_CASE("matchings make both projections bijective") {
  for (const char* name : {"Z/7", "F_21", "Z/9", "F_55", "Z/3xZ/3"}) {
    const auto g = by_name(name);
    const auto pi = orbit_scheme(g, 3);
    const auto& geo = pi.geometry();
    for (const auto& mt : find_matchings(pi)) {
      std::set<std::uint32_t> a, b;
      bool moved = true;
      for (const auto r : pi.members(mt.level, mt.color)) {
        a.insert(geo.project(mt.level, mt.slot_i, r));
        b.insert(geo.project(mt.level, mt.slot_j, r));
        moved &= geo.project(mt.level, mt.slot_i, r) != geo.project(mt.level, mt.slot_j, r);
      }
      CHECK(a.size() == pi.members(mt.level, mt.color).size());
      CHECK(a == b);
      CHECK(moved);
    }
  }
}

TEST_CASE("halving descent") {
  auto d = evdokimov_descent(orbit_scheme(cyclic_group(7), 2));
  CHECK(d.matching);
  REQUIRE(d.chain.size() == 2);
  CHECK(d.chain[1].level == 2);
  CHECK(d.chain[1].subdegree == 1);

  d = evdokimov_descent(orbit_scheme(frobenius_group(7, 3), 3));
  CHECK(d.matching);
  REQUIRE(d.chain.size() == 3);
  CHECK(d.chain[1].subdegree == 3);
  CHECK(d.chain[2].subdegree == 1);
  CHECK(d.chain[2].level == 3);

  CHECK_THROWS_AS(evdokimov_descent(MCollection(5, 3)), InvalidState);
}

TEST_CASE("orbit schemes") {
  const auto z3 = orbit_scheme(cyclic_group(3), 2);
  CHECK(z3.color_count(1) == 1);
  CHECK(z3.color_sizes(2) == std::vector<std::size_t>{3, 3});

  CHECK(orbit_scheme(by_name("Symm_3"), 2).color_sizes(2) == std::vector<std::size_t>{6});

  const auto z4 = orbit_scheme(cyclic_group(4), 2);
  CHECK_FALSE(check_properties(z4).antisymmetric());
  const std::vector<unsigned> diff2 = {0, 2};
  const Color c = z4.color(2, z4.space(2).rank(diff2));
  CHECK(z4.members(2, c).size() == 4);

  for (const auto& g : group_catalog()) {
    if (g.degree() > 7) continue;
    const unsigned m = std::min(3u, g.degree());
    const auto pi = orbit_scheme(g, m);
    const auto oracle = brute_orbits(g.degree(), g.generators(), m);
    const auto maps = as_maps(pi);
    for (unsigned s = 1; s <= m; ++s) CHECK(same_partition(maps[s], oracle[s]));
    CHECK(check_properties(pi).homogeneous == g.is_transitive());
  }
}

TEST_CASE("orbit schemes of random subgroups are schemes") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const unsigned n = 3 + rng() % 6;
    std::vector<Perm> gens;
    const unsigned k = 1 + rng() % 2;
    for (unsigned i = 0; i < k; ++i) {
      Perm p = identity_perm(n);
      std::shuffle(p.begin(), p.end(), rng);
      gens.push_back(p);
    }
    const PermGroup g(n, gens);
    const auto pi = orbit_scheme(g, std::min(3u, n));
    const auto rep = check_properties(pi);
    CHECK(rep.is_scheme());
    CHECK(rep.levels[1].antisymmetric == (g.order() % 2 == 1));
  }
}

TEST_CASE("matching construction in orbit schemes") {
  auto om = orbit_matching_construct(cyclic_group(7));
  CHECK(om.level == 2);
  om = orbit_matching_construct(frobenius_group(7, 3));
  CHECK(om.level == 3);
  CHECK(om.base.size() == 2);
  om = orbit_matching_construct(frobenius_group(13, 3));
  CHECK(om.level == 3);
  CHECK_THROWS_AS(orbit_matching_construct(cyclic_group(6)), InvalidInput);
  CHECK_THROWS_AS(orbit_matching_construct(PermGroup(3, {{0, 1, 2}})), InvalidInput);

  // the returned tuple lies in a matching colour of the orbit scheme
  for (const char* name : {"F_21", "Z/3wrZ/3", "F_55"}) {
    const auto g = by_name(name);
    const auto r = orbit_matching_construct(g);
    const auto pi = orbit_scheme(g, r.level);
    const Color c = pi.color(r.level, pi.space(r.level).rank(r.tuple));
    const auto ms = find_matchings(pi);
    CHECK(std::any_of(ms.begin(), ms.end(), [&](const Matching& mt) {
      return mt.level == r.level && mt.color == c && mt.slot_i == r.level - 1 && mt.slot_j == r.level;
    }));
  }
}

TEST_CASE("association schemes") {
  const auto z7 = orbit_scheme(cyclic_group(7), 3);
  const auto as = scheme_to_association(z7);
  CHECK(as.classes == 6);
  auto cls = [&](unsigned d) { return static_cast<std::size_t>(as.relation[0][d]); };
  CHECK(as.intersection(cls(2), cls(1), cls(1)) == 1);
  CHECK(as.intersection(cls(3), cls(1), cls(1)) == 0);

  for (unsigned n : {4u, 5u, 7u}) {
    const auto t = scheme_to_association(MCollection(n, 3));
    CHECK(t.classes == 1);
    CHECK(t.intersection(0, 0, 0) == n - 2);
  }
  auto bad = MCollection(4, 3);
  std::vector<Color> lv(bad.level(3).size(), 0);
  lv[0] = 1;
  bad.set_level(3, lv);
  CHECK_THROWS_AS(scheme_to_association(bad), InvalidState);
}

TEST_CASE("intersection numbers match brute force") {
  for (const char* name : {"F_21", "Z/9", "Z/3xZ/3", "F_20", "Symm_4"}) {
    const auto g = by_name(name);
    const auto as = scheme_to_association(orbit_scheme(g, 3));
    const unsigned n = g.degree();
    for (unsigned a = 0; a < n; ++a) {
      for (unsigned b = 0; b < n; ++b) {
        if (a == b) continue;
        for (std::size_t i = 0; i < as.classes; ++i) {
          for (std::size_t j = 0; j < as.classes; ++j) {
            std::uint64_t cnt = 0;
            for (unsigned c = 0; c < n; ++c) {
              if (c != a && c != b && as.relation[a][c] == static_cast<int>(i) && as.relation[c][b] == static_cast<int>(j)) ++cnt;
            }
            CHECK(cnt == as.intersection(static_cast<std::size_t>(as.relation[a][b]), i, j));
          }
        }
      }
    }
  }
}

TEST_CASE("Hanaki-Uno sizes") {
  auto h = hanaki_uno_verify(orbit_scheme(cyclic_group(7), 2));
  CHECK(h.ok);
  CHECK(h.d == 1);
  h = hanaki_uno_verify(orbit_scheme(frobenius_group(7, 3), 2));
  CHECK(h.ok);
  CHECK(h.d == 3);
  CHECK(orbit_scheme(frobenius_group(7, 3), 2).color_sizes(2) == std::vector<std::size_t>{21, 21});
  CHECK_THROWS_AS(hanaki_uno_verify(MCollection(6, 2)), InvalidInput);
}

TEST_CASE("induced subschemes") {
  const auto f21 = orbit_scheme(frobenius_group(7, 3), 4);
  const auto sub = induced_subscheme(f21, 0);
  CHECK(sub.n() == 3);
  CHECK(check_properties(sub).is_scheme());
  CHECK(check_properties(sub).homogeneous);
  const auto one = induced_subscheme(orbit_scheme(cyclic_group(7), 3), 0);
  CHECK(one.n() == 1);
  CHECK(one.m() == 1);
  CHECK_THROWS_AS(induced_subscheme(seeded_pair(3, 2, {{0, 1}}), 0), InvalidState);
}

TEST_CASE("nonexistence for the least prime divisor") {
  auto c = nonexistence_check(4, 2);
  CHECK(c.exhaustive);
  CHECK(c.counting);
  CHECK(c.complete());
  CHECK(c.search_space == 64);
  c = nonexistence_check(3, 3);
  CHECK(c.exhaustive);
  CHECK(c.complete());
  CHECK(c.search_space == 48);
  c = nonexistence_check(25, 5, 10);
  CHECK_FALSE(c.exhaustive);
  CHECK(c.counting);
  CHECK_THROWS_AS(nonexistence_check(9, 2), InvalidInput);
}

TEST_CASE("antisymmetric invariant levels have t_s divisible by s!") {
  for (const auto& g : group_catalog()) {
    if (g.degree() > 9) continue;
    const auto pi = orbit_scheme(g, std::min(3u, g.degree()));
    const auto rep = check_properties(pi);
    std::size_t fact = 1;
    for (unsigned s = 2; s <= pi.m(); ++s) {
      fact *= s;
      if (rep.levels[s - 1].antisymmetric) CHECK(pi.color_count(s) % fact == 0);
    }
  }
}

TEST_CASE("fiber bound") {
  const auto f39 = orbit_scheme(frobenius_group(13, 3), 4);
  const auto w = fiber_bound_check(f39);
  CHECK(w.subdegree == 1);
  CHECK_THROWS_AS(fiber_bound_check(orbit_scheme(cyclic_group(8), 3)), InvalidInput);
  const auto z11 = orbit_scheme(cyclic_group(11), 4);
  const auto wz = fiber_bound_check(z11);
  CHECK(wz.q == kNoColor);
  CHECK(wz.subdegree == 1);
}

TEST_CASE("primitivity") {
  auto rep = primitivity_report(orbit_scheme(cyclic_group(7), 2));
  CHECK(rep.primitive);
  CHECK(rep.entries.size() == 6);

  const auto z9 = orbit_scheme(cyclic_group(9), 2);
  rep = primitivity_report(z9);
  CHECK_FALSE(rep.primitive);
  const std::vector<unsigned> diff3 = {0, 3};
  const Color c = z9.color(2, z9.space(2).rank(diff3));
  for (const auto& e : rep.entries) {
    if (e.color == c) CHECK(e.components == 3);
  }
  rep = primitivity_report(MCollection(5, 2));
  CHECK(rep.primitive);
  REQUIRE(rep.entries.size() == 1);
  CHECK(rep.entries[0].components == 1);
}

TEST_CASE("primitivity agrees with breadth-first search") {
  for (const char* name : {"Z/9", "Z/3xZ/3", "Z/2wrZ/2", "F_21", "Z/6", "Z/3wrZ/3"}) {
    const auto g = by_name(name);
    const auto pi = orbit_scheme(g, 3);
    const auto maps = as_maps(pi);
    for (const auto& e : primitivity_report(pi).entries) {
      std::set<Tuple> bases;
      for (const auto& [t, col] : maps[e.level - 1]) {
        if (col == e.lower) bases.insert(Tuple(t.begin(), t.end() - 1));
      }
      for (const auto& b : bases) CHECK(bfs_components(g.degree(), maps, e.level, e.color, e.lower, b) == e.components);
    }
  }
}

TEST_CASE("scheme and group files") {
  const auto pi = orbit_scheme(frobenius_group(7, 3), 3);
  const auto text = format_scheme(pi);
  CHECK(text.rfind("mscheme v1 n=7 m=3\n", 0) == 0);
  CHECK(parse_scheme(text) == pi);
  CHECK(format_scheme(parse_scheme(text)) == text);

  CHECK_THROWS_AS(parse_scheme(""), InvalidInput);
  CHECK_THROWS_WITH_AS(parse_scheme("mscheme v1 n=3 m=1\n1 1 0\n1 1 0\n1 2 0\n1 3 0\n"), "line 3: tuple listed twice",
                       InvalidInput);
  CHECK_THROWS_WITH_AS(parse_scheme("mscheme v1 n=3 m=2\n1 1 0\n1 2 0\n1 3 0\n2 1 1 0\n"),
                       "line 5: points of a tuple must be distinct", InvalidInput);
  CHECK_THROWS_AS(parse_scheme("mscheme v1 n=3 m=1\n1 1 0\n1 2 0\n"), InvalidInput);
  // colour ids in files are arbitrary labels
  CHECK(parse_scheme("mscheme v1 n=2 m=1\n1 1 7\n1 2 7\n") == MCollection(2, 1));

  const auto g = parse_group("# Z/3\n2 3 1\n");
  CHECK(g.degree() == 3);
  CHECK(g.order() == 3);
  CHECK(format_group(g) == "2 3 1\n");
  CHECK_THROWS_AS(parse_group("1 1 2\n"), InvalidInput);
  CHECK_THROWS_AS(parse_group("1 2 3\n1 2\n"), InvalidInput);
}

TEST_CASE("catalog") {
  const auto cat = group_catalog();
  std::set<std::string> names;
  for (const auto& g : cat) {
    CHECK(g.degree() <= 15);
    names.insert(g.name());
  }
  for (const char* want : {"Z/15", "F_21", "F_39", "F_55", "Z/3wrZ/5", "Z/5wrZ/3", "Z/2wrZ/2", "Klein_4"}) {
    CHECK(names.count(want) == 1);
  }
  CHECK(by_name("F_21").order() == 21);
  CHECK(by_name("Z/3wrZ/3").order() == 81);
  CHECK(by_name("Z/3wrZ/5").order() == 1215);
  CHECK(by_name("Z/5wrZ/3").order() == 375);
  CHECK(by_name("Z/2wrZ/2").order() == 8);
}

TEST_CASE("conjecture search") {
  auto rep = conjecture_search(4, 10, 1);
  REQUIRE(rep.nonexistence);
  CHECK(rep.nonexistence->complete());
  CHECK(rep.instances.empty());

  rep = conjecture_search(7, 5, 42);
  CHECK_FALSE(rep.counterexample);
  CHECK_FALSE(rep.instances.empty());
  for (const auto& inst : rep.instances) CHECK(inst.matchings > 0);
}

TEST_CASE("fiber bound on catalog 4-schemes") {
  for (const auto& g : group_catalog()) {
    if (g.degree() < 9 || g.degree() > 13 || g.order() % 2 == 0 || !g.is_transitive()) continue;
    const auto pi = orbit_scheme(g, 4);
    const auto w = fiber_bound_check(pi);
    CHECK(8 * w.subdegree < g.degree());
    if (w.q == kNoColor) {
      CHECK(pi.color_sizes(2)[w.p] == g.degree());
    } else {
      const auto st = color_stats(pi, 3);
      CHECK(st.projected[w.q][1] == w.p);
      CHECK(st.projected[w.q][2] == w.p);
    }
  }
}
