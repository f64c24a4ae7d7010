#include "msf/algebra/oracle.hpp"

#include "msf/error.hpp"

namespace msf::algebra {

namespace {

std::vector<Elem> point_of(const TupleSpace& space, std::size_t rank, const std::vector<Elem>& roots) {
  std::vector<Elem> pt;
  for (unsigned v : space.at(rank)) pt.push_back(roots.at(v));
  return pt;
}

}  // namespace

std::vector<std::size_t> support_oracle(const Tower& tower, unsigned s, const Vec& element,
                                        const std::vector<Elem>& roots) {
  if (roots.size() != tower.n()) throw InvalidInput("root count does not match the degree");
  const TupleSpace space(tower.n(), s);
  std::vector<std::size_t> out;
  if (is_zero(element)) return out;
  for (std::size_t r = 0; r < space.size(); ++r) {
    if (tower.evaluate(s, element, point_of(space, r, roots)) != 0) out.push_back(r);
  }
  return out;
}

std::vector<std::size_t> support_of_basis(const Tower& tower, unsigned s, const std::vector<Vec>& basis,
                                          const std::vector<Elem>& roots) {
  const TupleSpace space(tower.n(), s);
  std::vector<bool> hit(space.size(), false);
  for (const auto& b : basis) {
    const auto supp = support_oracle(tower, s, b, roots);
    if (supp.empty() && !is_zero(b)) throw InternalError("nonzero ideal element vanishes everywhere");
    for (auto r : supp) hit[r] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < hit.size(); ++r) {
    if (hit[r]) out.push_back(r);
  }
  return out;
}

Vec idempotent_from_support(const Tower& tower, unsigned s, const std::vector<bool>& flagged,
                            const std::vector<Elem>& roots) {
  const auto& f = tower.field();
  const unsigned n = tower.n();
  const TupleSpace space(n, s);
  if (flagged.size() != space.size()) throw InvalidInput("support flag count mismatch");
  // Lagrange indicator of each root as an element of A_1
  std::vector<Vec> lagrange(n);
  for (unsigned a = 0; a < n; ++a) {
    Vec ell = tower.one(1);
    for (unsigned b = 0; b < n; ++b) {
      if (b == a) continue;
      Vec lin = tower.var(1, 1);
      lin[0] = f.sub(lin[0], roots[b]);
      ell = ff::vec_scale(f, tower.mul(1, ell, lin), f.inv(f.sub(roots[a], roots[b])));
    }
    lagrange[a] = std::move(ell);
  }
  // indicator of root a in variable x_i
  std::vector<std::vector<Vec>> slot(s + 1, std::vector<Vec>(n));
  for (unsigned i = 1; i <= s; ++i) {
    for (unsigned a = 0; a < n; ++a) slot[i][a] = tower.substitute(1, lagrange[a], s, {i});
  }
  Vec e = tower.level(s).zero();
  for (std::size_t r = 0; r < space.size(); ++r) {
    if (!flagged[r]) continue;
    const auto tup = space.at(r);
    Vec delta = slot[1][tup[0]];
    for (unsigned i = 2; i <= s; ++i) delta = tower.mul(s, delta, slot[i][tup[i - 1]]);
    e = ff::vec_add(f, e, delta);
  }
  return e;
}

DeltaResult delta_crosscheck(const FieldCtx& field, const ff::Poly& f, unsigned m, std::size_t cap) {
  DeltaResult out;
  out.tensor = Tower::tensor(field, f, m, cap);
  const Tower& t = *out.tensor;
  const LevelAlgebra& alg = t.level(m);
  const std::size_t N = alg.dim();

  std::vector<Vec> delta_sum;
  for (unsigned i = 1; i <= m; ++i) {
    for (unsigned j = i + 1; j <= m; ++j) {
      const Vec diff = ff::vec_sub(field, t.var(m, i), t.var(m, j));
      const auto ker = ff::nullspace(field, alg.mult_matrix(diff));
      out.delta_dims.push_back(ker.size());
      delta_sum.insert(delta_sum.end(), ker.begin(), ker.end());
    }
  }
  delta_sum = ff::echelon_basis(field, delta_sum, N);

  if (delta_sum.empty()) {
    for (std::size_t k = 0; k < N; ++k) out.basis.push_back(alg.basis(k));
  } else {
    // {b : b k = 0 for every k in the Delta sum}
    Matrix system(delta_sum.size() * N, N);
    for (std::size_t a = 0; a < delta_sum.size(); ++a) {
      const Matrix mk = alg.mult_matrix(delta_sum[a]);
      for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = 0; c < N; ++c) system.at(a * N + r, c) = mk.at(r, c);
      }
    }
    out.basis = ff::echelon_basis(field, ff::nullspace(field, std::move(system)), N);
  }
  if (out.basis.empty()) throw InternalError("essential ideal is zero");
  out.identity = identity_of(alg, out.basis);

  const std::size_t k = out.basis.size();
  std::vector<Vec> table(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      auto coords = ff::coordinates_in(field, out.basis, alg.mul(out.basis[i], out.basis[j]));
      if (!coords) throw InternalError("Delta annihilator is not closed under multiplication");
      table[i * k + j] = std::move(*coords);
    }
  }
  auto one = ff::coordinates_in(field, out.basis, out.identity);
  if (!one) throw InternalError("identity outside the ideal");
  out.algebra = std::make_unique<TableAlgebra>(field, k, std::move(table), std::move(*one));
  return out;
}

bool isomorphic_to_essential(const Tower& essential, unsigned m, const DeltaResult& delta) {
  const auto& field = essential.field();
  const Tower& t = *delta.tensor;
  const unsigned n = essential.n();
  const std::size_t D = essential.dim(m);
  if (D != delta.basis.size()) return false;
  const LevelAlgebra& talg = t.level(m);

  // image of each essential monomial: the same exponent vector in the tensor basis
  std::vector<Vec> image(D);
  for (std::size_t idx = 0; idx < D; ++idx) {
    std::size_t rest = idx, tindex = 0, tstride = 1;
    for (unsigned i = 1; i <= m; ++i) {
      const std::size_t a = rest % essential.degree(i);
      rest /= essential.degree(i);
      tindex += a * tstride;
      tstride *= n;
    }
    image[idx] = talg.mul(delta.identity, talg.basis(tindex));
  }
  auto phi = [&](const Vec& v) {
    Vec out(talg.dim(), 0);
    for (std::size_t i = 0; i < D; ++i) ff::vec_axpy(field, out, v[i], image[i]);
    return out;
  };
  if (phi(essential.one(m)) != delta.identity) return false;
  if (ff::echelon_basis(field, image, talg.dim()).size() != D) return false;
  const LevelAlgebra& ealg = essential.level(m);
  for (std::size_t i = 0; i < D; ++i) {
    for (std::size_t j = i; j < D; ++j) {
      if (phi(ealg.mul(ealg.basis(i), ealg.basis(j))) != talg.mul(image[i], image[j])) return false;
    }
  }
  // images lie in the Delta ideal
  for (const auto& v : image) {
    if (!ff::coordinates_in(field, delta.basis, v)) return false;
  }
  return true;
}

}  // namespace msf::algebra
