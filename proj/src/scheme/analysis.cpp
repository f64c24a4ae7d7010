#include "msf/scheme/analysis.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "msf/error.hpp"
#include "msf/ff/field.hpp"
#include "msf/scheme/group.hpp"
#include "msf/scheme/properties.hpp"

namespace msf::scheme {

namespace {

struct Dsu {
  std::vector<unsigned> parent;
  explicit Dsu(unsigned n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  unsigned find(unsigned x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(unsigned a, unsigned b) { parent[find(a)] = find(b); }
};

// C(a, b) mod prime r by Lucas' theorem.
std::uint64_t binomial_mod(std::uint64_t a, std::uint64_t b, std::uint64_t r) {
  std::uint64_t out = 1;
  while (a > 0 || b > 0) {
    const std::uint64_t ad = a % r, bd = b % r;
    if (bd > ad) return 0;
    std::vector<std::uint64_t> row(ad + 1, 0);
    row[0] = 1;
    for (std::uint64_t i = 1; i <= ad; ++i) {
      for (std::uint64_t j = i; j > 0; --j) row[j] = (row[j] + row[j - 1]) % r;
    }
    out = out * row[bd] % r;
    a /= r;
    b /= r;
  }
  return out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

// Increasing tuples of V^(s): one per s-subset, in lexicographic order.
std::vector<std::size_t> subset_ranks(const Geometry& geo, unsigned s) {
  std::vector<std::size_t> out;
  const auto& space = geo.space(s);
  for (std::size_t r = 0; r < space.size(); ++r) {
    const auto t = space.at(r);
    if (std::is_sorted(t.begin(), t.end())) out.push_back(r);
  }
  return out;
}

// Seed level s: subset k gets representative perms[choice[k]] of its sorted tuple and
// class cls[k]; a tuple's colour is (class, the permutation carrying the representative to it).
std::vector<Color> domain_level(const Geometry& geo, unsigned s, const std::vector<std::size_t>& subsets,
                                const std::vector<std::size_t>& choice, const std::vector<std::size_t>& cls) {
  const auto& table = geo.act_table(s);
  const std::size_t f = table.size();
  std::vector<Color> col(geo.size(s), kNoColor);
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    const std::uint32_t rep = table[choice[k]][subsets[k]];
    for (std::size_t j = 0; j < f; ++j) col[table[j][rep]] = static_cast<Color>(cls[k] * f + j);
  }
  return col;
}

bool homogeneous_antisymmetric(const MCollection& pi) {
  if (pi.color_count(1) != 1) return false;
  const auto rep = check_properties(pi);
  return rep.is_scheme() && rep.antisymmetric();
}

void check_divisibility(const MCollection& pi, std::uint64_t& candidates) {
  ++candidates;
  std::size_t fact = 1;
  for (unsigned s = 2; s <= pi.m(); ++s) {
    fact *= s;
    const auto rep = check_level(pi, s);
    if (rep.invariant && rep.antisymmetric && pi.color_count(s) % fact != 0) {
      throw InternalError("invariant antisymmetric level with t_s not divisible by s!");
    }
  }
}

}  // namespace

AssociationScheme scheme_to_association(const MCollection& pi) {
  if (pi.m() < 3) throw InvalidState("need the first three levels of a scheme");
  const MCollection three = pi.truncated(3);
  const auto rep = check_properties(three);
  if (!rep.homogeneous || !rep.is_scheme()) throw InvalidState("not a homogeneous 3-scheme");

  const auto& geo = three.geometry();
  AssociationScheme out;
  const unsigned n = pi.n();
  out.n = n;
  out.classes = three.color_count(2);
  out.class_size = three.color_sizes(2);
  out.relation.assign(n, std::vector<int>(n, -1));
  const auto& space2 = geo.space(2);
  for (std::size_t r = 0; r < space2.size(); ++r) {
    const auto t = space2.at(r);
    out.relation[t[0]][t[1]] = static_cast<int>(three.color(2, r));
  }
  const std::size_t t = out.classes;
  out.p.assign(t * t * t, UINT64_MAX);
  std::vector<std::uint64_t> counts(t * t);
  for (unsigned a = 0; a < n; ++a) {
    for (unsigned b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto k = static_cast<std::size_t>(out.relation[a][b]);
      std::fill(counts.begin(), counts.end(), 0);
      for (unsigned c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        ++counts[static_cast<std::size_t>(out.relation[a][c]) * t + static_cast<std::size_t>(out.relation[c][b])];
      }
      for (std::size_t ij = 0; ij < t * t; ++ij) {
        auto& slot = out.p[k * t * t + ij];
        if (slot == UINT64_MAX) {
          slot = counts[ij];
        } else if (slot != counts[ij]) {
          throw InvalidState("composition count depends on the chosen pair");
        }
      }
    }
  }
  // identity from the level-3 colours over (a, c, b): pi_3 -> (a,c), pi_1 -> (c,b), pi_2 -> (a,b)
  const auto st = color_stats(three, 3);
  std::vector<std::uint64_t> expect(t * t * t, 0);
  for (Color q = 0; q < st.size.size(); ++q) {
    const Color i = st.projected[q][2], j = st.projected[q][0], k = st.projected[q][1];
    if (st.size[q] % out.class_size[k] != 0) throw InvalidState("non-integral level-3 subdegree");
    expect[(k * t + i) * t + j] += st.size[q] / out.class_size[k];
  }
  if (expect != out.p) throw InvalidState("intersection numbers disagree with level-3 subdegrees");
  return out;
}

HanakiUnoResult hanaki_uno_verify(const MCollection& pi) {
  const unsigned n = pi.n();
  if (!ff::is_prime(n)) throw InvalidInput("point count is not prime");
  if (pi.m() < 2) throw InvalidState("need level 2");
  if (pi.color_count(1) != 1) throw InvalidState("collection is not homogeneous");
  HanakiUnoResult out;
  const auto sizes = pi.color_sizes(2);
  for (Color c = 0; c < sizes.size(); ++c) {
    if (sizes[c] != sizes[0]) {
      out.violation = std::make_pair(Color{0}, c);
      return out;
    }
  }
  if (sizes[0] % n != 0 || (n - 1) % (sizes[0] / n) != 0) {
    out.violation = std::make_pair(Color{0}, Color{0});
    return out;
  }
  out.ok = true;
  out.d = sizes[0] / n;
  return out;
}

MCollection induced_subscheme(const MCollection& pi, unsigned v) {
  const unsigned n = pi.n();
  if (v >= n) throw InvalidInput("point out of range");
  if (pi.m() < 2) throw InvalidState("need at least two levels");
  const auto rep = check_properties(pi);
  if (!rep.homogeneous || !rep.is_scheme()) throw InvalidState("not a homogeneous m-scheme");
  const auto& geo = pi.geometry();
  const unsigned w0 = v == 0 ? 1 : 0;
  const std::vector<unsigned> first = {v, w0};
  const Color chosen = pi.color(2, geo.space(2).rank(first));
  std::vector<unsigned> fiber;
  for (unsigned w = 0; w < n; ++w) {
    if (w == v) continue;
    const std::vector<unsigned> pair = {v, w};
    if (pi.color(2, geo.space(2).rank(pair)) == chosen) fiber.push_back(w);
  }
  const unsigned d = static_cast<unsigned>(fiber.size());
  const unsigned levels = std::min(pi.m() - 1, d);
  const auto sub = Geometry::get(d, levels);
  std::vector<std::vector<Color>> cols(levels);
  std::vector<unsigned> big;
  for (unsigned s = 1; s <= levels; ++s) {
    const auto& space = sub->space(s);
    cols[s - 1].resize(space.size());
    for (std::size_t r = 0; r < space.size(); ++r) {
      big.assign(1, v);
      for (unsigned x : space.at(r)) big.push_back(fiber[x]);
      cols[s - 1][r] = pi.color(s + 1, geo.space(s + 1).rank(big));
    }
  }
  return MCollection(d, std::move(cols));
}

NonexistenceCertificate nonexistence_check(unsigned n, unsigned r, std::uint64_t budget) {
  if (n < 2) throw InvalidInput("need at least two points");
  const auto primes = ff::prime_factors(n);
  if (primes.front() != r) throw InvalidInput("r must be the least prime divisor of n");
  NonexistenceCertificate out;
  out.n = n;
  out.r = r;
  out.counting = binomial_mod(n - 1, r - 1, r) != 0;

  const auto geo = Geometry::get(n, r);
  std::vector<std::vector<std::size_t>> subsets(r + 1);
  std::uint64_t space = 1;
  for (unsigned s = 2; s <= r; ++s) {
    subsets[s] = subset_ranks(*geo, s);
    for (std::size_t k = 0; k < subsets[s].size(); ++k) space = saturating_mul(space, geo->perms(s).size());
  }
  out.search_space = space;
  if (space > budget) return out;

  // level by level; a seed whose lower-level closure is inhomogeneous is pruned
  std::vector<std::vector<Color>> seed_levels(r);
  seed_levels[0].assign(n, 0);
  auto rec = [&](auto&& self, unsigned s) -> void {
    if (out.counterexample) return;
    const std::size_t f = geo->perms(s).size();
    std::vector<std::size_t> choice(subsets[s].size(), 0);
    const std::vector<std::size_t> cls(subsets[s].size(), 0);
    while (true) {
      seed_levels[s - 1] = domain_level(*geo, s, subsets[s], choice, cls);
      const MCollection closure =
          refine_closure(MCollection(n, std::vector<std::vector<Color>>(seed_levels.begin(), seed_levels.begin() + s)));
      check_divisibility(closure, out.candidates);
      if (closure.color_count(1) == 1) {
        if (s == r) {
          ++out.seeds_checked;
          if (homogeneous_antisymmetric(closure)) {
            out.counterexample = closure;
            return;
          }
        } else {
          self(self, s + 1);
          if (out.counterexample) return;
        }
      } else {
        std::uint64_t pruned = 1;
        for (unsigned t = s + 1; t <= r; ++t) {
          for (std::size_t k = 0; k < subsets[t].size(); ++k) pruned = saturating_mul(pruned, geo->perms(t).size());
        }
        out.seeds_checked += pruned;
      }
      std::size_t k = 0;
      while (k < choice.size() && ++choice[k] == f) choice[k++] = 0;
      if (k == choice.size()) break;
    }
  };
  if (r >= 2) rec(rec, 2);
  out.exhaustive = !out.counterexample && out.seeds_checked == space;
  return out;
}

FiberWitness fiber_bound_check(const MCollection& pi) {
  const unsigned n = pi.n();
  if (n <= 8) throw InvalidInput("the bound needs more than 8 points");
  if (pi.m() < 3) throw InvalidState("need at least three levels");
  const auto four = pi.truncated(std::min(pi.m(), 4u));
  const auto rep = check_properties(four);
  if (!rep.homogeneous || !rep.is_scheme() || !rep.levels[1].antisymmetric) {
    throw InvalidState("not a homogeneous scheme antisymmetric at level 2");
  }
  const auto st = color_stats(four, 3);
  const auto sizes2 = four.color_sizes(2);
  for (Color p = 0; p < sizes2.size(); ++p) {
    for (Color q = 0; q < st.size.size(); ++q) {
      if (st.projected[q][1] != p || st.projected[q][2] != p) continue;
      if (8 * st.size[q] < static_cast<std::size_t>(n) * sizes2[p]) {
        return FiberWitness{p, q, st.size[q] / sizes2[p]};
      }
    }
  }
  // a level-2 colour of subdegree 1 has no fiber Q with both projections P
  for (Color p = 0; p < sizes2.size(); ++p) {
    if (sizes2[p] == n) return FiberWitness{p, kNoColor, 1};
  }
  if (rep.antisymmetric()) throw InternalError("no colour with subdegree below n/8");
  throw InvalidState("no witness, and the scheme is not antisymmetric at every level");
}

PrimitivityReport primitivity_report(const MCollection& pi) {
  if (!check_properties(pi).is_scheme()) throw InvalidState("collection is not an m-scheme");
  const auto& geo = pi.geometry();
  const unsigned n = pi.n();
  PrimitivityReport out;
  for (unsigned s = 2; s <= pi.m(); ++s) {
    const auto st = color_stats(pi, s);
    for (Color p = 0; p < st.size.size(); ++p) {
      const Color q = st.projected[p][s - 1];
      if (q == kNoColor || q != st.projected[p][s - 2]) continue;
      // one graph per base tuple (v_1..v_{s-2}), keyed by its rank at level s-2
      std::map<std::size_t, std::pair<Dsu, std::vector<unsigned>>> graphs;
      for (std::size_t r = 0; r < geo.size(s - 1); ++r) {
        if (pi.color(s - 1, r) != q) continue;
        const std::size_t base = s == 2 ? 0 : geo.project(s - 1, s - 1, r);
        auto it = graphs.try_emplace(base, Dsu(n), std::vector<unsigned>{}).first;
        it->second.second.push_back(geo.space(s - 1).at(r)[s - 2]);
      }
      for (std::size_t r = 0; r < geo.size(s); ++r) {
        if (pi.color(s, r) != p) continue;
        const auto t = geo.space(s).at(r);
        const std::size_t base = s == 2 ? 0 : geo.project(s - 1, s - 1, geo.project(s, s, r));
        graphs.at(base).first.unite(t[s - 2], t[s - 1]);
      }
      PrimitivityEntry e{s, p, q, 0, 0, graphs.size()};
      bool first = true;
      for (auto& [base, g] : graphs) {
        std::set<unsigned> roots;
        for (unsigned x : g.second) roots.insert(g.first.find(x));
        if (first) {
          e.components = roots.size();
          e.vertices = g.second.size();
          first = false;
        } else if (roots.size() != e.components) {
          throw InternalError("component count depends on the base tuple");
        }
      }
      if (e.components != 1) out.primitive = false;
      out.entries.push_back(e);
    }
  }
  return out;
}

ConjectureReport conjecture_search(unsigned n, std::size_t budget, std::uint64_t seed, unsigned m) {
  if (n < 2) throw InvalidInput("need at least two points");
  if (m < 2) throw InvalidInput("need at least two levels");
  ConjectureReport out;
  out.n = n;
  out.m = m;
  out.seed = seed;
  out.budget = budget;
  const unsigned r = static_cast<unsigned>(ff::prime_factors(n).front());
  if (m > n || r <= m) {
    // an m-scheme truncates to an r-scheme, and none exist when m > n
    if (m <= n) out.nonexistence = nonexistence_check(n, r, std::max<std::uint64_t>(budget, 1));
    return out;
  }

  std::vector<MCollection> seen;
  auto record = [&](const MCollection& pi, std::string source) {
    if (!homogeneous_antisymmetric(pi)) return;
    if (std::find(seen.begin(), seen.end(), pi) != seen.end()) return;
    seen.push_back(pi);
    ConjectureInstance inst;
    inst.source = std::move(source);
    for (unsigned s = 1; s <= pi.m(); ++s) inst.colors.push_back(pi.color_count(s));
    inst.matchings = find_matchings(pi).size();
    if (inst.matchings == 0) out.counterexample = true;
    out.instances.push_back(std::move(inst));
    out.schemes.push_back(pi);
  };

  for (const auto& g : group_catalog()) {
    if (g.degree() != n || g.order() % 2 == 0 || !g.is_transitive()) continue;
    record(orbit_scheme(g, m), "orbit:" + g.name());
  }

  // Random seeds invariant under the cyclic shift, so closures stay homogeneous.
  // Every prime factor of n exceeds m here, so no s-subset is shift-invariant.
  std::mt19937_64 rng(seed);
  const auto geo = Geometry::get(n, m);
  std::vector<unsigned> buf;
  for (std::size_t it = 0; it < budget; ++it) {
    ++out.seeds_tried;
    std::vector<std::vector<Color>> levels(m);
    levels[0].assign(n, 0);
    for (unsigned s = 2; s <= m; ++s) {
      const auto subsets = subset_ranks(*geo, s);
      const std::size_t f = geo->perms(s).size();
      const std::size_t classes = 1 + rng() % 2;
      std::vector<std::size_t> choice(subsets.size()), cls(subsets.size());
      std::vector<char> done(subsets.size(), 0);
      for (std::size_t k = 0; k < subsets.size(); ++k) {
        if (done[k]) continue;
        const std::size_t c = rng() % f, cl = rng() % classes;
        // propagate the choice along the shift orbit of the representative
        std::uint32_t rep = geo->act_table(s)[c][subsets[k]];
        for (unsigned shift = 0; shift < n; ++shift) {
          const auto t = geo->space(s).at(rep);
          buf.assign(t.begin(), t.end());
          for (auto& x : buf) x = (x + 1) % n;
          rep = static_cast<std::uint32_t>(geo->space(s).rank(buf));
          std::vector<unsigned> sorted = buf;
          std::sort(sorted.begin(), sorted.end());
          const auto pos = std::lower_bound(subsets.begin(), subsets.end(), geo->space(s).rank(sorted)) - subsets.begin();
          if (done[pos]) continue;
          done[pos] = 1;
          // choice index j with perms[j] applied to the sorted tuple giving rep
          for (std::size_t j = 0; j < f; ++j) {
            if (geo->act_table(s)[j][subsets[pos]] == rep) {
              choice[pos] = j;
              break;
            }
          }
          cls[pos] = cl;
        }
      }
      levels[s - 1] = domain_level(*geo, s, subsets, choice, cls);
    }
    record(refine_closure(MCollection(n, std::move(levels))), "random:" + std::to_string(it));
  }
  return out;
}

}  // namespace msf::scheme
