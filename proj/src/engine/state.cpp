#include <algorithm>

#include "msf/algebra/decompose.hpp"
#include "msf/engine/engine.hpp"
#include "msf/error.hpp"
#include "msf/ff/linalg.hpp"

namespace msf::engine {

namespace {

std::vector<unsigned> transposition(unsigned s, unsigned k) {
  std::vector<unsigned> sigma(s);
  for (unsigned i = 0; i < s; ++i) sigma[i] = i;
  std::swap(sigma[k - 1], sigma[k]);
  return sigma;
}

std::vector<Ideal> two_parts(const algebra::Algebra& alg, const Ideal& whole, const Vec& j) {
  if (algebra::is_zero(j) || j == whole.e) throw InternalError("event does not split its ideal");
  Ideal a = algebra::ideal_from_idempotent(alg, j);
  Ideal b = algebra::ideal_from_idempotent(alg, ff::vec_sub(alg.field(), whole.e, j));
  if (a.dim == 0 || b.dim == 0 || a.dim + b.dim != whole.dim) throw InternalError("split dimensions do not add up");
  return {std::move(a), std::move(b)};
}

}  // namespace

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Init: return "init";
    case EventKind::Compat: return "compat";
    case EventKind::Regular: return "regular";
    case EventKind::Invariant: return "invariant";
    case EventKind::Antisym: return "antisym";
    case EventKind::Matching: return "matching";
    case EventKind::Tower: return "tower";
    case EventKind::Factor: return "factor";
  }
  return "?";
}

SchemeState::SchemeState(const FieldCtx& field, const Poly& f, unsigned m, std::size_t cap) : f_(f), m_(m) {
  if (f.degree() < 2) throw InvalidInput("need a polynomial of degree at least 2");
  if (f.lead() != field.one()) throw InvalidInput("polynomial must be monic");
  if (m < 2 || m > static_cast<unsigned>(f.degree())) throw InvalidInput("levels must lie in 2..deg f");
  tower_ = algebra::Tower::essential(field, f, m, cap);
  levels_.resize(m + 1);
  versions_.assign(m + 1, 0);
  for (unsigned s = 1; s <= m; ++s) {
    levels_[s].push_back(Part{algebra::whole(tower_->level(s)), next_uid_++});
  }
}

std::vector<std::size_t> SchemeState::dims(unsigned s) const {
  std::vector<std::size_t> out;
  for (const auto& p : levels_.at(s)) out.push_back(p.ideal.dim);
  return out;
}

void SchemeState::split(unsigned s, std::size_t index, std::vector<Ideal> parts) {
  auto& lv = levels_.at(s);
  lv.erase(lv.begin() + static_cast<std::ptrdiff_t>(index));
  for (std::size_t k = 0; k < parts.size(); ++k) {
    lv.insert(lv.begin() + static_cast<std::ptrdiff_t>(index + k), Part{std::move(parts[k]), next_uid_++});
  }
  ++versions_[s];
}

const Event& SchemeState::apply(Event ev) {
  const auto& t = *tower_;
  const unsigned s = ev.level;
  if (s < 1 || s > m_) throw InvalidInput("event level out of range");
  const auto& lv = levels_[s];
  if (ev.kind != EventKind::Factor && ev.index >= lv.size()) throw InvalidInput("event index out of range");
  ev.before = dims(s);
  const auto& alg = t.level(s);
  std::vector<Ideal> parts;
  auto decompose = [&](const algebra::Automorphism& tau) {
    parts = algebra::decompose_by_automorphism(alg, lv[ev.index].ideal, tau).parts;
  };
  switch (ev.kind) {
    case EventKind::Init: {
      if (s < 2 || lv.size() != 1) throw InvalidInput("init applies to an undecomposed level >= 2");
      ev.sigma = transposition(s, 1);
      decompose([&](const Vec& a) { return t.symm_action(s, ev.sigma, a); });
      break;
    }
    case EventKind::Compat: {
      const Vec& lower = levels_.at(s - 1).at(ev.source).ideal.e;
      const Ideal& whole = lv[ev.index].ideal;
      parts = two_parts(alg, whole, t.mul(s, whole.e, t.embed_iota(s, ev.slot, lower)));
      break;
    }
    case EventKind::Regular: {
      const Vec& upper = levels_.at(s + 1).at(ev.source).ideal.e;
      const Ideal& whole = lv[ev.index].ideal;
      const auto& f = t.field();
      const Vec c = t.mul(s, whole.e, t.fiber_count(s + 1, ev.slot, upper));
      const Vec z = ff::vec_sub(f, c, ff::vec_scale(f, whole.e, f.from_int(static_cast<std::int64_t>(ev.value))));
      parts = two_parts(alg, whole, ff::vec_sub(f, whole.e, algebra::support_idempotent(alg, z)));
      break;
    }
    case EventKind::Invariant: {
      const Ideal& whole = lv[ev.index].ideal;
      const Vec img = t.symm_action(s, transposition(s, ev.slot), lv.at(ev.source).ideal.e);
      parts = two_parts(alg, whole, t.mul(s, img, whole.e));
      break;
    }
    case EventKind::Antisym: {
      if (t.symm_action(s, ev.sigma, lv[ev.index].ideal.e) != lv[ev.index].ideal.e) {
        throw InternalError("antisymmetry event on an ideal the permutation moves");
      }
      decompose([&](const Vec& a) { return t.symm_action(s, ev.sigma, a); });
      break;
    }
    case EventKind::Matching: {
      const Vec& upper = levels_.at(s + 1).at(ev.source).ideal.e;
      decompose([&](const Vec& a) {
        return t.fiber_count(s + 1, ev.slot, t.mul(s + 1, t.embed_iota(s + 1, ev.slot2, a), upper));
      });
      break;
    }
    case EventKind::Tower: {
      parts = algebra::split_by_zero_divisor(alg, lv[ev.index].ideal, ev.element);
      break;
    }
    case EventKind::Factor:
      break;
  }
  if (!parts.empty()) split(s, ev.index, std::move(parts));
  ev.after = dims(s);
  events_.push_back(std::move(ev));
  return events_.back();
}

bool SchemeState::verify() const {
  const auto& f = tower_->field();
  for (unsigned s = 1; s <= m_; ++s) {
    const auto& alg = tower_->level(s);
    Vec total = alg.zero();
    std::size_t dims = 0;
    for (std::size_t i = 0; i < levels_[s].size(); ++i) {
      const auto& a = levels_[s][i].ideal;
      if (a.dim == 0 || alg.mul(a.e, a.e) != a.e || alg.idempotent_rank(a.e) != a.dim) return false;
      if (i + 1 < levels_[s].size() && !algebra::is_zero(alg.mul(a.e, levels_[s][i + 1].ideal.e))) return false;
      total = ff::vec_add(f, total, a.e);
      dims += a.dim;
    }
    // idempotents summing to 1 with dims summing to dim A are pairwise orthogonal
    if (total != alg.one() || dims != alg.dim()) return false;
  }
  return true;
}

SchemeState init_state(const FieldCtx& field, const Poly& f, unsigned m, std::size_t cap) {
  SchemeState st(field, f, m, cap);
  for (unsigned s = 2; s <= m; ++s) {
    Event ev;
    ev.kind = EventKind::Init;
    ev.level = s;
    st.apply(std::move(ev));
  }
  return st;
}

SchemeState replay(const FieldCtx& field, const Poly& f, unsigned m, const std::vector<Event>& events,
                   std::size_t cap) {
  SchemeState st(field, f, m, cap);
  for (const auto& ev : events) {
    const auto& done = st.apply(ev);
    if (done.after != ev.after) throw InternalError("replay diverged from the log");
  }
  return st;
}

std::vector<Vec> imprimitivity_space(const algebra::Tower& tower, unsigned s, const Vec& e, const Vec& e_lower) {
  if (s < 2 || s > tower.levels()) throw InvalidInput("level out of range");
  const auto& lower = tower.level(s - 1);
  const auto& f = tower.field();
  const auto basis = algebra::ideal_basis(lower, e_lower);
  std::vector<Vec> images;
  for (const auto& h : basis) {
    const Vec d = ff::vec_sub(f, tower.embed_iota(s, s, h), tower.embed_iota(s, s - 1, h));
    images.push_back(tower.mul(s, d, e));
  }
  const auto ker = ff::nullspace(f, ff::Matrix::from_columns(images, tower.dim(s)));
  std::vector<Vec> out;
  for (const auto& coeffs : ker) {
    Vec v(lower.dim(), 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) ff::vec_axpy(f, v, coeffs[i], basis[i]);
    out.push_back(std::move(v));
  }
  return ff::echelon_basis(f, out, lower.dim());
}

Poly minimal_polynomial(const algebra::Algebra& alg, const Vec& h, const Vec& unit) {
  const auto& f = alg.field();
  std::vector<Vec> powers{unit};
  for (;;) {
    const Vec next = alg.mul(powers.back(), h);
    auto coeffs = ff::solve(f, ff::Matrix::from_columns(powers, alg.dim()), next);
    if (coeffs) {
      std::vector<Elem> c(powers.size() + 1);
      for (std::size_t i = 0; i < powers.size(); ++i) c[i] = f.neg((*coeffs)[i]);
      c.back() = f.one();
      return Poly(std::move(c));
    }
    powers.push_back(next);
    if (powers.size() > alg.dim() + 1) throw InternalError("minimal polynomial degree exceeds the dimension");
  }
}

}  // namespace msf::engine
