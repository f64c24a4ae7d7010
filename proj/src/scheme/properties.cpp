#include "msf/scheme/properties.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "msf/error.hpp"

namespace msf::scheme {

namespace {

bool all_of(const std::vector<LevelReport>& lv, bool LevelReport::*flag, unsigned from) {
  return std::all_of(lv.begin(), lv.end(), [&](const LevelReport& r) { return r.level < from || r.*flag; });
}

struct FiberRun {
  Color upper;
  std::uint32_t lower;
  std::size_t count;
};

// (colour of v, pi_slot(v)) pairs grouped into runs with their multiplicities.
std::vector<FiberRun> fiber_runs(const MCollection& pi, unsigned s, unsigned slot) {
  const auto& geo = pi.geometry();
  const auto& lv = pi.level(s);
  std::vector<std::uint64_t> keys(lv.size());
  for (std::size_t r = 0; r < lv.size(); ++r) {
    keys[r] = (static_cast<std::uint64_t>(lv[r]) << 32) | geo.project(s, slot, r);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<FiberRun> runs;
  for (std::size_t a = 0; a < keys.size();) {
    std::size_t b = a;
    while (b < keys.size() && keys[b] == keys[a]) ++b;
    runs.push_back({static_cast<Color>(keys[a] >> 32), static_cast<std::uint32_t>(keys[a] & 0xffffffffu), b - a});
    a = b;
  }
  return runs;
}

// Refines colours by key; ids by first occurrence. Returns true if the count grew.
template <class KeyFn>
bool split_level(MCollection& pi, unsigned s, KeyFn key) {
  const std::size_t before = pi.color_count(s);
  std::map<std::vector<std::uint64_t>, Color> ids;
  std::vector<Color> next(pi.level(s).size());
  std::vector<std::uint64_t> k;
  for (std::size_t r = 0; r < next.size(); ++r) {
    k.clear();
    k.push_back(pi.color(s, r));
    key(r, k);
    auto [it, fresh] = ids.try_emplace(k, static_cast<Color>(ids.size()));
    next[r] = it->second;
  }
  pi.set_level(s, std::move(next));
  return pi.color_count(s) > before;
}

}  // namespace

bool PropertyReport::compatible() const { return all_of(levels, &LevelReport::compatible, 2); }
bool PropertyReport::regular() const { return all_of(levels, &LevelReport::regular, 2); }
bool PropertyReport::invariant() const { return all_of(levels, &LevelReport::invariant, 2); }
bool PropertyReport::symmetric() const { return all_of(levels, &LevelReport::symmetric, 2); }
bool PropertyReport::antisymmetric() const { return all_of(levels, &LevelReport::antisymmetric, 2); }

LevelReport check_level(const MCollection& pi, unsigned s) {
  LevelReport rep;
  rep.level = s;
  rep.colors = pi.color_count(s);
  if (s < 2) return rep;
  const auto& geo = pi.geometry();
  const auto& lv = pi.level(s);
  const std::size_t t = pi.color_count(s);

  // compatibility and regularity, slot by slot
  const auto lower_sizes = pi.color_sizes(s - 1);
  for (unsigned i = 1; i <= s; ++i) {
    std::vector<Color> proj(t, kNoColor);
    for (std::size_t r = 0; r < lv.size(); ++r) {
      const Color q = pi.color(s - 1, geo.project(s, i, r));
      if (proj[lv[r]] == kNoColor) {
        proj[lv[r]] = q;
      } else if (proj[lv[r]] != q) {
        rep.compatible = false;
      }
    }
    // (upper colour, lower colour) -> (fiber count, number of lower tuples seen)
    std::unordered_map<std::uint64_t, std::pair<std::size_t, std::size_t>> seen;
    for (const auto& run : fiber_runs(pi, s, i)) {
      const Color q = pi.color(s - 1, run.lower);
      const auto key = (static_cast<std::uint64_t>(run.upper) << 32) | q;
      auto [it, fresh] = seen.try_emplace(key, run.count, 0);
      if (it->second.first != run.count) rep.regular = false;
      ++it->second.second;
    }
    for (const auto& [key, v] : seen) {
      if (v.second != lower_sizes[key & 0xffffffffu]) rep.regular = false;
    }
  }

  // coordinate permutations
  const auto& table = geo.act_table(s);
  rep.antisymmetric = true;
  for (std::size_t k = 1; k < table.size(); ++k) {
    std::vector<Color> image(t, kNoColor);
    std::vector<char> fixed(t, 1);
    for (std::size_t r = 0; r < lv.size(); ++r) {
      const Color c = lv[r];
      const Color d = lv[table[k][r]];
      if (image[c] == kNoColor) {
        image[c] = d;
      } else if (image[c] != d) {
        rep.invariant = false;
      }
      if (d != c) {
        rep.symmetric = false;
        fixed[c] = 0;
      }
    }
    if (std::any_of(fixed.begin(), fixed.end(), [](char f) { return f != 0; })) rep.antisymmetric = false;
  }
  return rep;
}

PropertyReport check_properties(const MCollection& pi) {
  PropertyReport rep;
  for (unsigned s = 1; s <= pi.m(); ++s) rep.levels.push_back(check_level(pi, s));
  rep.homogeneous = pi.color_count(1) == 1;
  return rep;
}

ColorStats color_stats(const MCollection& pi, unsigned s) {
  if (s < 2 || s > pi.m()) throw InvalidInput("colour statistics need a level 2 <= s <= m");
  ColorStats st;
  st.level = s;
  st.size = pi.color_sizes(s);
  const std::size_t t = st.size.size();
  st.projected.assign(t, std::vector<Color>(s, kNoColor));
  st.fiber.assign(t, std::vector<std::vector<std::size_t>>(s));
  const auto& geo = pi.geometry();
  for (unsigned i = 1; i <= s; ++i) {
    std::vector<char> mixed(t, 0);
    for (std::size_t r = 0; r < pi.level(s).size(); ++r) {
      const Color c = pi.color(s, r);
      const Color q = pi.color(s - 1, geo.project(s, i, r));
      Color& slot = st.projected[c][i - 1];
      if (slot == kNoColor && !mixed[c]) {
        slot = q;
      } else if (slot != q) {
        slot = kNoColor;
        mixed[c] = 1;
      }
    }
    for (const auto& run : fiber_runs(pi, s, i)) {
      auto& f = st.fiber[run.upper][i - 1];
      if (std::find(f.begin(), f.end(), run.count) == f.end()) f.push_back(run.count);
    }
    for (auto& per_color : st.fiber) std::sort(per_color[i - 1].begin(), per_color[i - 1].end());
  }
  return st;
}

Rational subdegree(const MCollection& pi, unsigned s, Color p, unsigned slot) {
  if (s < 2 || s > pi.m()) throw InvalidInput("subdegree needs a level 2 <= s <= m");
  if (p >= pi.color_count(s) || slot < 1 || slot > s) throw InvalidInput("colour or slot out of range");
  const auto rep = check_level(pi, s);
  if (!rep.compatible || !rep.regular) throw InvalidState("level is not compatible and regular");
  std::size_t size_p = 0;
  Color q = kNoColor;
  for (std::size_t r = 0; r < pi.level(s).size(); ++r) {
    if (pi.color(s, r) != p) continue;
    ++size_p;
    q = pi.color(s - 1, pi.geometry().project(s, slot, r));
  }
  const std::size_t size_q = pi.color_sizes(s - 1)[q];
  const std::uint64_t g = std::gcd(size_p, size_q);
  return Rational{size_p / g, size_q / g};
}

MCollection refine_closure(const MCollection& input) {
  MCollection pi = input;
  const auto& geo = pi.geometry();
  bool changed = true;
  while (changed) {
    changed = false;
    for (unsigned s = 1; s <= pi.m(); ++s) {
      if (s >= 2) {
        changed |= split_level(pi, s, [&](std::size_t r, std::vector<std::uint64_t>& k) {
          for (unsigned i = 1; i <= s; ++i) k.push_back(pi.color(s - 1, geo.project(s, i, r)));
        });
        const auto& table = geo.act_table(s);
        changed |= split_level(pi, s, [&](std::size_t r, std::vector<std::uint64_t>& k) {
          for (std::size_t j = 1; j < table.size(); ++j) k.push_back(pi.color(s, table[j][r]));
        });
        // fiber signature of each lower tuple: sorted (slot, upper colour) incidences
        std::vector<std::vector<std::uint64_t>> sig(geo.size(s - 1));
        const std::uint64_t t = pi.color_count(s);
        for (std::size_t r = 0; r < geo.size(s); ++r) {
          for (unsigned i = 1; i <= s; ++i) sig[geo.project(s, i, r)].push_back((i - 1) * t + pi.color(s, r));
        }
        for (auto& v : sig) std::sort(v.begin(), v.end());
        changed |= split_level(pi, s - 1, [&](std::size_t r, std::vector<std::uint64_t>& k) {
          k.insert(k.end(), sig[r].begin(), sig[r].end());
        });
      }
    }
  }
  return pi;
}

std::vector<Matching> find_matchings(const MCollection& pi) {
  std::vector<Matching> out;
  for (unsigned s = 2; s <= pi.m(); ++s) {
    const auto st = color_stats(pi, s);
    const auto lower = pi.color_sizes(s - 1);
    for (Color c = 0; c < st.size.size(); ++c) {
      for (unsigned i = 1; i <= s; ++i) {
        for (unsigned j = i + 1; j <= s; ++j) {
          const Color a = st.projected[c][i - 1];
          if (a == kNoColor || a != st.projected[c][j - 1] || lower[a] != st.size[c]) continue;
          out.push_back({s, c, i, j});
        }
      }
    }
  }
  return out;
}

DescentResult evdokimov_descent(const MCollection& pi) {
  if (pi.m() < 2) throw InvalidState("descent needs at least two levels");
  const auto rep = check_properties(pi);
  if (!rep.is_scheme()) throw InvalidState("collection is not an m-scheme");
  if (!rep.levels[1].antisymmetric) throw InvalidState("scheme is not antisymmetric at level 2");
  if (pi.color_count(1) >= pi.n()) throw InvalidState("every level-1 colour is a single point");

  const auto& geo = pi.geometry();
  DescentResult out;
  // P_1: smallest level-1 colour with more than one point, ties to the least point
  const auto sizes1 = pi.color_sizes(1);
  Color p = kNoColor;
  for (Color c = 0; c < sizes1.size(); ++c) {
    if (sizes1[c] > 1 && (p == kNoColor || sizes1[c] < sizes1[p])) p = c;
  }
  out.chain.push_back({1, p, sizes1[p], sizes1[p]});

  for (unsigned s = 2; s <= pi.m(); ++s) {
    const auto sizes = pi.color_sizes(s);
    const Color prev = out.chain.back().color;
    Color best = kNoColor;
    // colours are visited in order of their least tuple, so strict < keeps the tie rule
    std::vector<char> inside(sizes.size(), 0);
    for (std::size_t r = 0; r < geo.size(s); ++r) {
      if (pi.color(s - 1, geo.project(s, s - 1, r)) == prev && pi.color(s - 1, geo.project(s, s, r)) == prev) {
        inside[pi.color(s, r)] = 1;
      }
    }
    for (Color c = 0; c < sizes.size(); ++c) {
      if (inside[c] && (best == kNoColor || sizes[c] < sizes[best])) best = c;
    }
    if (best == kNoColor) throw InternalError("no colour above the previous descent colour");
    const std::size_t prev_size = out.chain.back().size;
    if (sizes[best] % prev_size != 0) throw InternalError("non-integral subdegree in a scheme");
    const std::size_t d = sizes[best] / prev_size;
    if (2 * d >= out.chain.back().subdegree) throw InternalError("subdegree failed to halve");
    out.chain.push_back({s, best, sizes[best], d});
    if (d == 1) {
      out.matching = true;
      break;
    }
  }
  return out;
}

}  // namespace msf::scheme
