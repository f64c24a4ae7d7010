#pragma once

#include <memory>
#include <span>
#include <vector>

#include "msf/algebra/algebra.hpp"

namespace msf::algebra {

/// Dimension cap for algebra constructions: MSF_MAX_DIM if set, else 20000.
std::size_t default_dim_cap();

class Tower;

/// Level s of a tower viewed as a standalone algebra.
class LevelAlgebra final : public Algebra {
 public:
  LevelAlgebra(const Tower* tower, unsigned level) : tower_(tower), level_(level) {}

  const FieldCtx& field() const override;
  std::size_t dim() const override;
  Vec one() const override;
  Vec mul(const Vec& a, const Vec& b) const override;
  void for_each_basis_product(const Vec& a,
                              const std::function<bool(std::size_t, const Vec&)>& visit) const override;
  std::vector<Vec> generators() const override;
  std::size_t idempotent_rank(const Vec& e) const override;

  unsigned level() const { return level_; }
  const Tower& tower() const { return *tower_; }

 private:
  const Tower* tower_;
  unsigned level_;
};

/// A chain of algebras A_0 = F_q, A_s = A_{s-1}[x_s]/(F_s(x_s)) with F_s monic of
/// degree d_s over A_{s-1}.
///
/// Elements of A_s are coordinate vectors on the monomials x_1^{a_1}...x_s^{a_s},
/// a_i < d_i, with x_1 varying fastest; equivalently d_s consecutive blocks holding
/// the A_{s-1} coefficients of x_s^0, ..., x_s^{d_s-1}.
///
/// The essential power of f uses F_1 = f and F_s(X) = F_{s-1}(..., X) / (X - x_{s-1}),
/// so that A_s is the algebra of functions on ordered s-tuples of distinct roots. The
/// tensor power uses F_s = f at every level.
class Tower {
 public:
  enum class Kind { Essential, Tensor };

  static std::shared_ptr<const Tower> essential(const FieldCtx& field, const ff::Poly& f, unsigned levels,
                                                std::size_t cap = default_dim_cap());
  static std::shared_ptr<const Tower> tensor(const FieldCtx& field, const ff::Poly& f, unsigned levels,
                                             std::size_t cap = default_dim_cap());

  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  const FieldCtx& field() const { return field_; }
  Kind kind() const { return kind_; }
  unsigned n() const { return n_; }
  unsigned levels() const { return levels_; }
  std::size_t dim(unsigned s) const { return dim_.at(s); }
  std::size_t degree(unsigned s) const { return deg_.at(s); }
  /// Coefficients F_s = X^d + sum_k g_k X^k; g_k lives in A_{s-1}.
  const std::vector<Vec>& modulus(unsigned s) const { return levels_data_.at(s).g; }
  /// Power sums of the roots of F_s, P_0 .. P_{d-1}, in A_{s-1}.
  const std::vector<Vec>& power_sums(unsigned s) const { return levels_data_.at(s).power_sums; }
  const LevelAlgebra& level(unsigned s) const { return *views_.at(s); }

  Vec one(unsigned s) const;
  Vec scalar(unsigned s, Elem c) const;
  /// x_i in A_s, 1 <= i <= s.
  Vec var(unsigned s, unsigned i) const;
  Vec mul(unsigned s, const Vec& a, const Vec& b) const;
  Vec mul_var(unsigned s, const Vec& a, unsigned i) const;
  /// Natural inclusion A_t -> A_s for t <= s.
  Vec lift(unsigned t, const Vec& a, unsigned s) const;

  /// Image of a in A_dst under x_i -> x_{var_map[i-1]} (images 1-based).
  Vec substitute(unsigned src, const Vec& a, unsigned dst, const std::vector<unsigned>& var_map) const;
  /// Slot insertion A_{s-1} -> A_s: x_i -> x_i for i < j, x_i -> x_{i+1} for i >= j.
  Vec embed_iota(unsigned s, unsigned j, const Vec& a) const;
  /// a^sigma = a(x_{sigma(1)}, ..., x_{sigma(s)}); sigma holds 0-based images.
  Vec symm_action(unsigned s, const std::vector<unsigned>& sigma, const Vec& a) const;

  /// Sum over the roots of F_s: A_s -> A_{s-1}.
  Vec relative_trace(unsigned s, const Vec& a) const;
  /// Sum over slot j: (c)(v) = sum_x a(v with x inserted at position j).
  Vec fiber_count(unsigned s, unsigned j, const Vec& a) const;
  /// Number of points where the idempotent e equals 1, i.e. dim(e A_s).
  std::size_t support_size(unsigned s, const Vec& e) const;
  /// Linear functional a -> sum of a over all points.
  const Vec& trace_functional(unsigned s) const { return levels_data_.at(s).trace; }

  /// Value of a at the point (x_1, ..., x_s) = point.
  Elem evaluate(unsigned s, std::span<const Elem> a, std::span<const Elem> point) const;

  /// Calls visit(k, a * m_k) over the monomial basis in index order.
  void for_each_monomial_product(unsigned s, const Vec& a,
                                 const std::function<bool(std::size_t, const Vec&)>& visit) const;

 private:
  struct LevelData {
    std::vector<Vec> g;
    std::vector<bool> g_scalar;
    std::vector<Matrix> g_mat;
    std::vector<Vec> power_sums;
    std::vector<bool> p_scalar;
    std::vector<Matrix> p_mat;
    Vec trace;
  };

  Tower(FieldCtx field, Kind kind, unsigned n, unsigned levels);
  void build(const ff::Poly& f, std::size_t cap);
  void finish_level(unsigned s);

  void mul_acc(unsigned s, const Elem* a, const Elem* b, Elem* out) const;
  void mul_var_into(unsigned s, const Elem* a, unsigned i, Elem* out) const;
  /// out += c * (g_j or P_j) in A_{s-1}.
  void lower_acc(unsigned s, bool power_sum, std::size_t j, const Elem* c, Elem* out) const;
  Elem evaluate_ptr(unsigned s, const Elem* a, std::span<const Elem> point) const;

  FieldCtx field_;
  Kind kind_;
  unsigned n_;
  unsigned levels_;
  std::vector<std::size_t> dim_;
  std::vector<std::size_t> deg_;
  std::vector<LevelData> levels_data_;
  std::vector<std::unique_ptr<LevelAlgebra>> views_;
};

}  // namespace msf::algebra
