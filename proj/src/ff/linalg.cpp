#include "msf/ff/linalg.hpp"

#include <algorithm>

#include "msf/error.hpp"

namespace msf::ff {

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidInput("row length mismatch");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw InvalidInput("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = columns[c][r];
  }
  return m;
}

Matrix Matrix::identity(const FieldCtx& f, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

Vec Matrix::column(std::size_t c) const {
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Vec Matrix::apply(const FieldCtx& f, std::span<const Elem> x) const {
  if (x.size() != cols_) throw InvalidInput("matrix-vector shape mismatch");
  Vec out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Elem acc = 0;
    const auto rr = row(r);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (rr[c] != 0 && x[c] != 0) acc = f.mul_add(rr[c], x[c], acc);
    }
    out[r] = acc;
  }
  return out;
}

Matrix Matrix::multiply(const FieldCtx& f, const Matrix& other) const {
  if (cols_ != other.rows_) throw InvalidInput("matrix product shape mismatch");
  Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto dst = out.row(r);
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elem a = at(r, k);
      if (a == 0) continue;
      const auto src = other.row(k);
      for (std::size_t c = 0; c < other.cols_; ++c) dst[c] = f.mul_add(a, src[c], dst[c]);
    }
  }
  return out;
}

std::vector<std::size_t> Matrix::rref(const FieldCtx& f) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < cols_ && lead_row < rows_; ++c) {
    std::size_t r = lead_row;
    while (r < rows_ && at(r, c) == 0) ++r;
    if (r == rows_) continue;
    if (r != lead_row) {
      std::swap_ranges(row(r).begin(), row(r).end(), row(lead_row).begin());
    }
    auto pr = row(lead_row);
    const Elem inv = f.inv(pr[c]);
    for (std::size_t k = c; k < cols_; ++k) pr[k] = f.mul(pr[k], inv);
    for (std::size_t other = 0; other < rows_; ++other) {
      if (other == lead_row) continue;
      auto orow = row(other);
      const Elem factor = orow[c];
      if (factor == 0) continue;
      const Elem negf = f.neg(factor);
      for (std::size_t k = c; k < cols_; ++k) {
        if (pr[k] != 0) orow[k] = f.mul_add(negf, pr[k], orow[k]);
      }
    }
    pivots.push_back(c);
    ++lead_row;
  }
  rows_ = lead_row;
  data_.resize(rows_ * cols_);
  return pivots;
}

std::size_t rank(const FieldCtx& f, Matrix m) { return m.rref(f).size(); }

std::vector<Vec> nullspace(const FieldCtx& f, Matrix m) {
  const std::size_t n = m.cols();
  const auto pivots = m.rref(f);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, 0);
    v[free] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(m.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const FieldCtx& f, const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw InvalidInput("right-hand side shape mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = b[r];
  }
  const auto pivots = aug.rref(f);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, m.cols());
  return x;
}

std::vector<Vec> echelon_basis(const FieldCtx& f, const std::vector<Vec>& vectors, std::size_t dim) {
  if (vectors.empty()) return {};
  Matrix m = Matrix::from_rows(vectors, dim);
  m.rref(f);
  std::vector<Vec> out;
  out.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row_vec(r));
  return out;
}

std::optional<Vec> coordinates_in(const FieldCtx& f, const std::vector<Vec>& echelon, const Vec& v) {
  Vec rest = v;
  Vec coords(echelon.size(), 0);
  for (std::size_t i = 0; i < echelon.size(); ++i) {
    const auto& b = echelon[i];
    const auto it = std::find_if(b.begin(), b.end(), [](Elem x) { return x != 0; });
    const std::size_t pivot = static_cast<std::size_t>(it - b.begin());
    const Elem c = rest[pivot];
    coords[i] = c;
    if (c != 0) vec_axpy(f, rest, f.neg(c), b);
  }
  if (!vec_is_zero(rest)) return std::nullopt;
  return coords;
}

Vec vec_add(const FieldCtx& f, const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
  return out;
}

Vec vec_sub(const FieldCtx& f, const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
  return out;
}

Vec vec_scale(const FieldCtx& f, const Vec& a, Elem s) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(a[i], s);
  return out;
}

void vec_axpy(const FieldCtx& f, Vec& a, Elem s, std::span<const Elem> b) {
  if (s == 0) return;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] != 0) a[i] = f.mul_add(s, b[i], a[i]);
  }
}

bool vec_is_zero(std::span<const Elem> a) {
  return std::all_of(a.begin(), a.end(), [](Elem x) { return x == 0; });
}

}  // namespace msf::ff
