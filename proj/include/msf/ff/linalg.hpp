#pragma once

#include <optional>
#include <span>
#include <vector>

#include "msf/ff/field.hpp"

namespace msf::ff {

using Vec = std::vector<Elem>;

/// Dense row-major matrix over a FieldCtx.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vec>& columns, std::size_t rows);
  static Matrix identity(const FieldCtx& f, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vec row_vec(std::size_t r) const { return Vec(row(r).begin(), row(r).end()); }
  Vec column(std::size_t c) const;

  Matrix transpose() const;
  Vec apply(const FieldCtx& f, std::span<const Elem> x) const;
  Matrix multiply(const FieldCtx& f, const Matrix& other) const;

  /// Reduced row echelon form in place, pivots chosen as the first nonzero entry
  /// scanning rows downward. Returns the pivot columns, ascending. Zero rows are
  /// dropped, so rows() becomes the rank.
  std::vector<std::size_t> rref(const FieldCtx& f);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec data_;
};

std::size_t rank(const FieldCtx& f, Matrix m);

/// Basis of {x : m x = 0}, one vector per free column in ascending order, with the
/// free coordinate set to 1.
std::vector<Vec> nullspace(const FieldCtx& f, Matrix m);

/// Some x with m x = b, if one exists.
std::optional<Vec> solve(const FieldCtx& f, const Matrix& m, const Vec& b);

/// Reduced echelon basis of the span of `vectors`.
std::vector<Vec> echelon_basis(const FieldCtx& f, const std::vector<Vec>& vectors, std::size_t dim);

/// Coordinates of v in an echelon basis produced by echelon_basis, or nullopt if v is
/// outside the span.
std::optional<Vec> coordinates_in(const FieldCtx& f, const std::vector<Vec>& echelon, const Vec& v);

// Vector helpers.
Vec vec_add(const FieldCtx& f, const Vec& a, const Vec& b);
Vec vec_sub(const FieldCtx& f, const Vec& a, const Vec& b);
Vec vec_scale(const FieldCtx& f, const Vec& a, Elem s);
/// a += s * b
void vec_axpy(const FieldCtx& f, Vec& a, Elem s, std::span<const Elem> b);
bool vec_is_zero(std::span<const Elem> a);

}  // namespace msf::ff
