#include "msf/scheme/collection.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "msf/error.hpp"

namespace msf::scheme {

namespace {

constexpr std::size_t kActLimit = 50'000'000;
constexpr unsigned kMaxPermArity = 8;

}  // namespace

std::shared_ptr<const Geometry> Geometry::get(unsigned n, unsigned m) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const Geometry>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, m}];
  if (!slot) slot = std::make_shared<const Geometry>(n, m);
  return slot;
}

Geometry::Geometry(unsigned n, unsigned m) : n_(n), m_(m) {
  if (n == 0) throw InvalidInput("a collection needs at least one point");
  if (m == 0 || m > n) throw InvalidInput("level bound must satisfy 1 <= m <= n");
  for (unsigned s = 0; s <= m; ++s) spaces_.emplace_back(n, s);

  proj_.resize(m + 1);
  std::vector<unsigned> buf;
  for (unsigned s = 1; s <= m; ++s) {
    proj_[s].assign(s, std::vector<std::uint32_t>(spaces_[s].size()));
    for (std::size_t r = 0; r < spaces_[s].size(); ++r) {
      const auto t = spaces_[s].at(r);
      for (unsigned i = 0; i < s; ++i) {
        buf.assign(t.begin(), t.end());
        buf.erase(buf.begin() + i);
        proj_[s][i][r] = static_cast<std::uint32_t>(spaces_[s - 1].rank(buf));
      }
    }
  }

  perms_.resize(m + 1);
  for (unsigned s = 0; s <= std::min(m, kMaxPermArity); ++s) {
    std::vector<unsigned> p(s);
    std::iota(p.begin(), p.end(), 0u);
    do {
      perms_[s].push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  act_.resize(m + 1);
  act_once_ = std::make_unique<std::once_flag[]>(m + 1);
}

const std::vector<std::vector<std::uint32_t>>& Geometry::act_table(unsigned s) const {
  if (s > m_) throw InvalidInput("level out of range");
  std::call_once(act_once_[s], [&] {
    if (s > kMaxPermArity || perms_[s].size() * spaces_[s].size() > kActLimit) {
      throw LimitExceeded("coordinate permutation table too large");
    }
    const auto& space = spaces_[s];
    auto& table = act_[s];
    table.assign(perms_[s].size(), std::vector<std::uint32_t>(space.size()));
    std::vector<unsigned> img(s);
    for (std::size_t k = 0; k < perms_[s].size(); ++k) {
      const auto& sigma = perms_[s][k];
      for (std::size_t r = 0; r < space.size(); ++r) {
        const auto t = space.at(r);
        for (unsigned i = 0; i < s; ++i) img[i] = t[sigma[i]];
        table[k][r] = static_cast<std::uint32_t>(space.rank(img));
      }
    }
  });
  return act_[s];
}

std::vector<Color> canonical_colors(const std::vector<Color>& raw) {
  std::unordered_map<Color, Color> ids;
  std::vector<Color> out(raw.size());
  for (std::size_t r = 0; r < raw.size(); ++r) {
    auto [it, fresh] = ids.try_emplace(raw[r], static_cast<Color>(ids.size()));
    out[r] = it->second;
  }
  return out;
}

MCollection::MCollection(unsigned n, unsigned m) : n_(n), geo_(Geometry::get(n, m)) {
  for (unsigned s = 1; s <= m; ++s) {
    levels_.emplace_back(geo_->size(s), 0);
    counts_.push_back(1);
  }
}

MCollection::MCollection(unsigned n, std::vector<std::vector<Color>> levels)
    : n_(n), geo_(Geometry::get(n, static_cast<unsigned>(levels.size()))) {
  for (unsigned s = 1; s <= levels.size(); ++s) {
    if (levels[s - 1].size() != geo_->size(s)) throw InvalidInput("colour map size does not match V^(s)");
    levels_.push_back(canonical_colors(levels[s - 1]));
    const auto& lv = levels_.back();
    counts_.push_back(lv.empty() ? 0 : *std::max_element(lv.begin(), lv.end()) + 1);
  }
}

std::vector<std::size_t> MCollection::color_sizes(unsigned s) const {
  std::vector<std::size_t> out(color_count(s), 0);
  for (Color c : level(s)) ++out[c];
  return out;
}

std::vector<std::size_t> MCollection::members(unsigned s, Color c) const {
  std::vector<std::size_t> out;
  const auto& lv = level(s);
  for (std::size_t r = 0; r < lv.size(); ++r) {
    if (lv[r] == c) out.push_back(r);
  }
  return out;
}

bool MCollection::set_level(unsigned s, std::vector<Color> colors) {
  if (s == 0 || s > m()) throw InvalidInput("level out of range");
  if (colors.size() != geo_->size(s)) throw InvalidInput("colour map size does not match V^(s)");
  colors = canonical_colors(colors);
  if (colors == levels_[s - 1]) return false;
  counts_[s - 1] = colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  levels_[s - 1] = std::move(colors);
  return true;
}

MCollection MCollection::truncated(unsigned k) const {
  if (k == 0 || k > m()) throw InvalidInput("level out of range");
  return MCollection(n_, std::vector<std::vector<Color>>(levels_.begin(), levels_.begin() + k));
}

std::string format_scheme(const MCollection& pi) {
  std::ostringstream out;
  out << "mscheme v1 n=" << pi.n() << " m=" << pi.m() << '\n';
  for (unsigned s = 1; s <= pi.m(); ++s) {
    const auto& space = pi.space(s);
    for (std::size_t r = 0; r < space.size(); ++r) {
      out << s;
      for (unsigned v : space.at(r)) out << ' ' << v + 1;
      out << ' ' << pi.color(s, r) << '\n';
    }
  }
  return out.str();
}

MCollection parse_scheme(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> InvalidInput {
    return InvalidInput("line " + std::to_string(lineno) + ": " + msg);
  };

  unsigned n = 0, m = 0;
  bool have_header = false;
  std::vector<std::vector<std::int64_t>> raw;
  std::vector<unsigned> tuple;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!have_header) {
      std::string version, nf, mf;
      if (first != "mscheme" || !(ls >> version >> nf >> mf) || version != "v1" || nf.rfind("n=", 0) != 0 ||
          mf.rfind("m=", 0) != 0) {
        throw fail("expected header 'mscheme v1 n=<n> m=<m>'");
      }
      try {
        n = static_cast<unsigned>(std::stoul(nf.substr(2)));
        m = static_cast<unsigned>(std::stoul(mf.substr(2)));
      } catch (const std::exception&) {
        throw fail("bad n or m in header");
      }
      if (n == 0 || m == 0 || m > n) throw fail("header needs 1 <= m <= n");
      const auto geo = Geometry::get(n, m);
      raw.resize(m);
      for (unsigned s = 1; s <= m; ++s) raw[s - 1].assign(geo->size(s), -1);
      have_header = true;
      continue;
    }
    std::vector<long long> nums;
    try {
      nums.push_back(std::stoll(first));
      std::string tok;
      while (ls >> tok) {
        std::size_t used = 0;
        nums.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      }
    } catch (const std::exception&) {
      throw fail("non-integer token");
    }
    const long long s = nums[0];
    if (s < 1 || s > static_cast<long long>(m)) throw fail("level out of range");
    if (nums.size() != static_cast<std::size_t>(s) + 2) throw fail("expected level, " + std::to_string(s) + " points and a colour");
    tuple.clear();
    for (long long i = 1; i <= s; ++i) {
      if (nums[i] < 1 || nums[i] > static_cast<long long>(n)) throw fail("point out of range");
      tuple.push_back(static_cast<unsigned>(nums[i] - 1));
    }
    const long long c = nums.back();
    if (c < 0 || c >= static_cast<long long>(UINT32_MAX)) throw fail("colour id out of range");
    const auto& space = Geometry::get(n, m)->space(static_cast<unsigned>(s));
    const std::size_t r = space.try_rank(tuple);
    if (r == space.size()) throw fail("points of a tuple must be distinct");
    auto& slot = raw[s - 1][r];
    if (slot != -1) throw fail("tuple listed twice");
    slot = c;
  }
  if (!have_header) throw InvalidInput("empty scheme file");
  std::vector<std::vector<Color>> levels(m);
  for (unsigned s = 1; s <= m; ++s) {
    levels[s - 1].reserve(raw[s - 1].size());
    for (auto c : raw[s - 1]) {
      if (c == -1) throw InvalidInput("level " + std::to_string(s) + " is missing tuples");
      levels[s - 1].push_back(static_cast<Color>(c));
    }
  }
  return MCollection(n, std::move(levels));
}

}  // namespace msf::scheme
