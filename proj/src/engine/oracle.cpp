#include "msf/engine/engine.hpp"
#include "msf/error.hpp"
#include "msf/scheme/properties.hpp"

namespace msf::engine {

namespace {

/// Values of the idempotent e at every tuple of V^(s); throws unless they are 0/1.
std::vector<bool> support_bits(const SchemeState& st, unsigned s, const Vec& e, const std::vector<Elem>& pts) {
  const auto& field = st.field();
  const auto& space = scheme::Geometry::get(st.n(), st.m())->space(s);
  std::vector<bool> out(space.size());
  std::vector<Elem> point(s);
  for (std::size_t r = 0; r < space.size(); ++r) {
    const auto t = space.at(r);
    for (unsigned i = 0; i < s; ++i) point[i] = pts[t[i]];
    const Elem v = st.tower().evaluate(s, e, point);
    if (v != 0 && v != field.one()) throw InternalError("idempotent takes a value other than 0 and 1");
    out[r] = v != 0;
  }
  return out;
}

std::vector<Elem> points_of(const SchemeState& st, const std::vector<std::uint64_t>& roots) {
  if (roots.size() != st.n()) throw InvalidInput("need one root per point");
  std::vector<Elem> pts;
  for (auto r : roots) pts.push_back(st.field().from_int(static_cast<std::int64_t>(r)));
  return pts;
}

std::size_t popcount(const std::vector<bool>& bits) {
  std::size_t k = 0;
  for (bool b : bits) k += b;
  return k;
}

}  // namespace

scheme::MCollection support_scheme(const SchemeState& st, const std::vector<std::uint64_t>& roots) {
  const auto pts = points_of(st, roots);
  std::vector<std::vector<scheme::Color>> levels;
  for (unsigned s = 1; s <= st.m(); ++s) {
    const auto geo = scheme::Geometry::get(st.n(), st.m());
    std::vector<scheme::Color> colors(geo->size(s), scheme::kNoColor);
    for (std::size_t i = 0; i < st.count(s); ++i) {
      const auto bits = support_bits(st, s, st.level(s)[i].ideal.e, pts);
      if (popcount(bits) != st.level(s)[i].ideal.dim) throw InternalError("support size differs from the ideal dimension");
      for (std::size_t r = 0; r < bits.size(); ++r) {
        if (!bits[r]) continue;
        if (colors[r] != scheme::kNoColor) throw InternalError("supports of two ideals overlap");
        colors[r] = static_cast<scheme::Color>(i);
      }
    }
    for (auto c : colors) {
      if (c == scheme::kNoColor) throw InternalError("supports do not cover the level");
    }
    levels.push_back(std::move(colors));
  }
  return scheme::MCollection(st.n(), std::move(levels));
}

void OracleMonitor::operator()(const SchemeState& st, const Event& ev) {
  if (st.events().size() == 1) {
    supports_.assign(st.m() + 1, {});
    uids_.assign(st.m() + 1, {});
    for (unsigned s = 1; s <= st.m(); ++s) uids_[s] = {0};
  }
  const auto pts = points_of(st, roots_);
  const unsigned s = ev.level;
  const auto& parts = st.level(s);
  std::vector<std::uint64_t> now;
  std::vector<bool> covered;
  for (const auto& part : parts) {
    now.push_back(part.uid);
    auto it = supports_[s].find(part.uid);
    if (it == supports_[s].end()) {
      it = supports_[s].emplace(part.uid, support_bits(st, s, part.ideal.e, pts)).first;
    }
    const auto& bits = it->second;
    const std::size_t k = popcount(bits);
    if (k == 0) throw InternalError("zero ideal in the decomposition");
    if (k != part.ideal.dim) throw InternalError("support size differs from the ideal dimension");
    if (covered.empty()) covered.assign(bits.size(), false);
    for (std::size_t r = 0; r < bits.size(); ++r) {
      if (!bits[r]) continue;
      if (covered[r]) throw InternalError("supports of two ideals overlap");
      covered[r] = true;
    }
  }
  for (bool c : covered) {
    if (!c) throw InternalError("supports do not cover the level");
  }
  // each new part lies inside the support of the ideal it replaced
  const auto& before = uids_[s];
  if (ev.kind != EventKind::Factor) {
    if (now.size() != before.size() + 1) throw InternalError("event did not add exactly one ideal");
    const auto& left = supports_[s].at(now[ev.index]);
    const auto& right = supports_[s].at(now[ev.index + 1]);
    if (before[ev.index] != 0) {
      const auto& old = supports_[s].at(before[ev.index]);
      for (std::size_t r = 0; r < old.size(); ++r) {
        if (old[r] != (left[r] || right[r])) throw InternalError("event is not a refinement of the replaced ideal");
      }
    }
  } else if (now != before) {
    throw InternalError("factor event changed the decomposition");
  }
  uids_[s] = std::move(now);
  ++checked_;
}

std::string verify_certificate(const SchemeState& st, const std::vector<std::uint64_t>& roots) {
  const auto pi = support_scheme(st, roots);
  const auto rep = scheme::check_properties(pi);
  if (!rep.homogeneous) return "support scheme is not homogeneous";
  if (!rep.is_scheme()) return "support collection is not an m-scheme";
  if (!rep.antisymmetric()) return "support scheme is not antisymmetric";
  if (!scheme::find_matchings(pi).empty()) return "support scheme has a matching the engine did not exploit";
  return {};
}

}  // namespace msf::engine
