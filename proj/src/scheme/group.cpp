#include "msf/scheme/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "msf/error.hpp"
#include "msf/ff/field.hpp"

namespace msf::scheme {

namespace {

bool is_bijection(const Perm& p, unsigned n) {
  if (p.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (unsigned v : p) {
    if (v >= n || hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

struct Dsu {
  std::vector<std::uint32_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Greedy generating set of a subgroup given by its element list.
std::vector<Perm> generators_of(unsigned n, const std::vector<Perm>& elems) {
  std::vector<Perm> gens;
  std::vector<Perm> span = {identity_perm(n)};
  for (const auto& g : elems) {
    if (std::binary_search(span.begin(), span.end(), g)) continue;
    gens.push_back(g);
    span = generated_subgroup(n, gens);
  }
  return gens;
}

std::vector<Perm> stabilizer_in(const std::vector<Perm>& elems, unsigned point) {
  std::vector<Perm> out;
  for (const auto& g : elems) {
    if (g[point] == point) out.push_back(g);
  }
  return out;
}

std::vector<unsigned> orbit_under(const std::vector<Perm>& elems, unsigned point) {
  std::set<unsigned> pts;
  for (const auto& g : elems) pts.insert(g[point]);
  return {pts.begin(), pts.end()};
}

// Orbit of a tuple under the group generated by gens.
std::set<std::vector<unsigned>> tuple_orbit(const std::vector<Perm>& gens, const std::vector<unsigned>& start) {
  std::set<std::vector<unsigned>> seen = {start};
  std::deque<std::vector<unsigned>> queue = {start};
  while (!queue.empty()) {
    const auto t = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      std::vector<unsigned> img(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) img[i] = g[t[i]];
      if (seen.insert(img).second) queue.push_back(std::move(img));
    }
  }
  return seen;
}

}  // namespace

Perm compose(const Perm& a, const Perm& b) {
  Perm out(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) out[x] = a[b[x]];
  return out;
}

Perm inverse(const Perm& a) {
  Perm out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) out[a[x]] = static_cast<unsigned>(x);
  return out;
}

Perm identity_perm(unsigned n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

std::vector<Perm> generated_subgroup(unsigned n, const std::vector<Perm>& gens, std::size_t budget) {
  std::set<Perm> seen = {identity_perm(n)};
  std::deque<Perm> queue = {identity_perm(n)};
  while (!queue.empty()) {
    const Perm x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Perm y = compose(g, x);
      if (seen.insert(y).second) {
        if (seen.size() > budget) throw LimitExceeded("group enumeration budget exceeded");
        queue.push_back(std::move(y));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

PermGroup::PermGroup(unsigned n, std::vector<Perm> generators, std::string name)
    : n_(n), gens_(std::move(generators)), name_(std::move(name)) {
  if (n == 0) throw InvalidInput("group degree must be positive");
  for (const auto& g : gens_) {
    if (!is_bijection(g, n)) throw InvalidInput("generator is not a permutation of the points");
  }
}

const std::vector<Perm>& PermGroup::elements(std::size_t budget) const {
  if (elems_.empty()) elems_ = generated_subgroup(n_, gens_, budget);
  return elems_;
}

bool PermGroup::contains(const Perm& g) const {
  const auto& e = elements();
  return std::binary_search(e.begin(), e.end(), g);
}

std::vector<unsigned> PermGroup::orbit(unsigned point) const {
  std::vector<char> seen(n_, 0);
  std::vector<unsigned> out = {point}, queue = {point};
  seen[point] = 1;
  while (!queue.empty()) {
    const unsigned x = queue.back();
    queue.pop_back();
    for (const auto& g : gens_) {
      if (!seen[g[x]]) {
        seen[g[x]] = 1;
        out.push_back(g[x]);
        queue.push_back(g[x]);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Perm> PermGroup::stabilizer(unsigned point) const { return stabilizer_in(elements(), point); }

PermGroup cyclic_group(unsigned n) {
  Perm g(n);
  for (unsigned x = 0; x < n; ++x) g[x] = (x + 1) % n;
  return PermGroup(n, {g}, "Z/" + std::to_string(n));
}

PermGroup frobenius_group(unsigned p, unsigned k) {
  if (!ff::is_prime(p) || k == 0 || (p - 1) % k != 0) throw InvalidInput("Frobenius group needs a prime p and k | p-1");
  // multiplier of order k: root^((p-1)/k) for a primitive root
  std::uint64_t root = 1;
  for (unsigned g = 2; g < p; ++g) {
    bool primitive = true;
    for (auto q : ff::prime_factors(p - 1)) {
      std::uint64_t x = 1;
      for (std::uint64_t e = 0; e < (p - 1) / q; ++e) x = x * g % p;
      if (x == 1) primitive = false;
    }
    if (primitive) {
      root = g;
      break;
    }
  }
  unsigned omega = 1;
  for (unsigned e = 0; e < (p - 1) / k; ++e) omega = static_cast<unsigned>(omega * root % p);
  Perm shift(p), mult(p);
  for (unsigned x = 0; x < p; ++x) {
    shift[x] = (x + 1) % p;
    mult[x] = static_cast<unsigned>(static_cast<std::uint64_t>(x) * omega % p);
  }
  return PermGroup(p, {shift, mult}, "F_" + std::to_string(p * k));
}

PermGroup wreath_cyclic(unsigned a, unsigned b) {
  const unsigned n = a * b;
  Perm rot = identity_perm(n), shift(n);
  for (unsigned i = 0; i < a; ++i) rot[i] = (i + 1) % a;
  for (unsigned j = 0; j < b; ++j) {
    for (unsigned i = 0; i < a; ++i) shift[j * a + i] = ((j + 1) % b) * a + i;
  }
  return PermGroup(n, {rot, shift}, "Z/" + std::to_string(a) + "wrZ/" + std::to_string(b));
}

std::vector<PermGroup> group_catalog() {
  std::vector<PermGroup> out;
  for (unsigned n = 2; n <= 15; ++n) out.push_back(cyclic_group(n));
  for (unsigned p : {3u, 5u, 7u, 11u, 13u}) {
    for (unsigned k = 2; k <= p - 1; ++k) {
      if ((p - 1) % k == 0) out.push_back(frobenius_group(p, k));
    }
  }
  out.emplace_back(3, std::vector<Perm>{{1, 0, 2}, {1, 2, 0}}, "Symm_3");
  out.emplace_back(4, std::vector<Perm>{{1, 0, 2, 3}, {1, 2, 3, 0}}, "Symm_4");
  out.emplace_back(4, std::vector<Perm>{{1, 0, 3, 2}, {2, 3, 0, 1}}, "Klein_4");
  out.push_back(wreath_cyclic(2, 2));
  {
    Perm a(9), b(9);
    for (unsigned x = 0; x < 9; ++x) {
      a[x] = ((x / 3 + 1) % 3) * 3 + x % 3;
      b[x] = (x / 3) * 3 + (x % 3 + 1) % 3;
    }
    out.emplace_back(9, std::vector<Perm>{a, b}, "Z/3xZ/3");
  }
  out.push_back(wreath_cyclic(3, 3));
  out.push_back(wreath_cyclic(3, 5));
  out.push_back(wreath_cyclic(5, 3));
  return out;
}

PermGroup parse_group(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<Perm> gens;
  unsigned n = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    Perm p;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || v < 1) throw InvalidInput("line " + std::to_string(lineno) + ": bad point '" + tok + "'");
      p.push_back(static_cast<unsigned>(v - 1));
    }
    if (p.empty()) continue;
    if (n == 0) n = static_cast<unsigned>(p.size());
    if (p.size() != n || !is_bijection(p, n)) {
      throw InvalidInput("line " + std::to_string(lineno) + ": not a permutation of 1.." + std::to_string(n));
    }
    gens.push_back(std::move(p));
  }
  if (gens.empty()) throw InvalidInput("group file has no generators");
  return PermGroup(n, std::move(gens));
}

std::string format_group(const PermGroup& g) {
  std::ostringstream out;
  for (const auto& p : g.generators()) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i] + 1;
    out << '\n';
  }
  return out.str();
}

MCollection orbit_scheme(const PermGroup& g, unsigned m) {
  const unsigned n = g.degree();
  const auto geo = Geometry::get(n, m);
  std::vector<std::vector<Color>> levels;
  std::vector<unsigned> img;
  for (unsigned s = 1; s <= m; ++s) {
    const auto& space = geo->space(s);
    Dsu dsu(space.size());
    for (const auto& p : g.generators()) {
      for (std::size_t r = 0; r < space.size(); ++r) {
        const auto t = space.at(r);
        img.resize(s);
        for (unsigned i = 0; i < s; ++i) img[i] = p[t[i]];
        dsu.unite(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(space.rank(img)));
      }
    }
    std::vector<Color> raw(space.size());
    for (std::size_t r = 0; r < space.size(); ++r) raw[r] = dsu.find(static_cast<std::uint32_t>(r));
    levels.push_back(std::move(raw));
  }
  return MCollection(n, std::move(levels));
}

OrbitMatching orbit_matching_construct(const PermGroup& g) {
  const unsigned n = g.degree();
  const auto& elems = g.elements();
  if (elems.size() < 2) throw InvalidInput("group is trivial");
  if (elems.size() % 2 == 0) throw InvalidInput("group has even order");
  if (!g.is_transitive()) throw InvalidInput("group is not transitive");

  const auto g1 = stabilizer_in(elems, 0);
  const auto g1_gens = generators_of(n, g1);

  // <G_1, x> depends only on x(0); the smallest such group is a minimal overgroup
  std::vector<Perm> h;
  for (unsigned j = 1; j < n; ++j) {
    const auto x = std::find_if(elems.begin(), elems.end(), [&](const Perm& e) { return e[0] == j; });
    auto gens = g1_gens;
    gens.push_back(*x);
    auto cand = generated_subgroup(n, gens);
    if (h.empty() || cand.size() < h.size()) h = std::move(cand);
  }

  OrbitMatching out;
  out.overgroup_order = h.size();
  out.block = orbit_under(h, 0);
  const auto& block = out.block;
  auto acts_trivially = [&](const std::vector<Perm>& k) {
    return std::all_of(k.begin(), k.end(), [&](const Perm& e) {
      return std::all_of(block.begin(), block.end(), [&](unsigned b) { return e[b] == b; });
    });
  };

  // irredundant base of H on B, starting at point 0
  std::vector<std::vector<Perm>> chain = {h};
  out.base = {0};
  chain.push_back(stabilizer_in(h, 0));
  while (!acts_trivially(chain.back())) {
    const auto& k = chain.back();
    const auto moved = std::find_if(block.begin(), block.end(), [&](unsigned b) {
      return std::any_of(k.begin(), k.end(), [&](const Perm& e) { return e[b] != b; });
    });
    out.base.push_back(*moved);
    chain.push_back(stabilizer_in(k, *moved));
  }
  const std::size_t s = out.base.size();
  // K = stabiliser of b_1..b_{s-1}; b_{s+1} a second point in the K-orbit of b_s
  const auto& k = chain[s - 1];
  const auto korb = orbit_under(k, out.base.back());
  const auto next = std::find_if(korb.begin(), korb.end(), [&](unsigned b) { return b != out.base.back(); });
  if (next == korb.end()) throw InternalError("base point orbit is a singleton");

  out.tuple = out.base;
  out.tuple.push_back(*next);
  out.level = static_cast<unsigned>(s + 1);

  const auto orbit_p = tuple_orbit(g.generators(), out.tuple);
  const auto orbit_q = tuple_orbit(g.generators(), out.base);
  std::vector<unsigned> other(out.tuple.begin(), out.tuple.end());
  other.erase(other.end() - 2);
  out.orbit_size = orbit_p.size();
  if (!orbit_q.count(other) || orbit_q.size() != orbit_p.size()) {
    throw InternalError("constructed orbit is not a matching");
  }
  return out;
}

}  // namespace msf::scheme
