#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bigres/field.hpp"

namespace bigres {

template <class F>
using Vec = std::vector<typename F::Element>;

/// Dense row-major matrix over F.
template <class F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix() = default;
  Matrix(const F& field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }
  /// Builds a matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(const F& field, std::size_t rows, const std::vector<Vec<F>>& columns);

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec<F> row(std::size_t r) const {
    return Vec<F>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  Vec<F> column(std::size_t c) const {
    Vec<F> v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!field_.is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix operator*(const Matrix& o) const;
  Vec<F> operator*(const Vec<F>& v) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

/// Sparse rows used to feed the elimination without materializing a dense
/// matrix. Entries may be listed in any order; duplicates are summed.
template <class F>
struct RowSystem {
  F field{};
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::size_t, typename F::Element>>> rows;
};

/// Row echelon form of a row space. Every stored row is a contiguous segment
/// starting at its pivot column with a leading 1; pivots are strictly
/// increasing. Pivots are chosen deterministically: for each column in
/// increasing order, the surviving row of smallest original index that is
/// nonzero there.
template <class F>
class Echelon {
 public:
  using Element = typename F::Element;
  struct Row {
    std::size_t lo = 0;
    std::vector<Element> v;
  };

  Echelon() = default;
  Echelon(const F& field, std::size_t cols, std::vector<Row> rows)
      : field_(field), cols_(cols), rows_(std::move(rows)) {}

  const F& field() const { return field_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  std::vector<std::size_t> pivots() const;
  std::vector<std::size_t> free_columns() const;

  /// Subtracts multiples of the rows so that x vanishes at every pivot. The
  /// result is the unique representative of x + rowspan with that property.
  void reduce(Vec<F>& x) const;

  /// Basis of the right kernel of the original matrix: one vector per free
  /// column c, equal to 1 at c and 0 at every other free column.
  std::vector<Vec<F>> kernel_vectors() const;

 private:
  F field_{};
  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

template <class F>
Echelon<F> echelonize(const Matrix<F>& m);
template <class F>
Echelon<F> echelonize(RowSystem<F> rows);

template <class F>
std::size_t mat_rank(const Matrix<F>& m);
template <class F>
std::size_t mat_rank(RowSystem<F> rows);
/// Kernel basis as column vectors, echelonized as in Echelon::kernel_vectors.
template <class F>
std::vector<Vec<F>> mat_kernel_basis(const Matrix<F>& m);
template <class F>
std::size_t kernel_dim(const Matrix<F>& m) {
  return m.cols() - mat_rank(m);
}
/// Fully reduced row echelon form (zero rows dropped).
template <class F>
Matrix<F> mat_rref(const Matrix<F>& m);
template <class F>
typename F::Element mat_det(const Matrix<F>& m);

template <class F>
struct SpanReduction {
  Vec<F> residual;
  bool in_span = false;
  /// Present when in_span: v == basis * coefficients.
  std::optional<Vec<F>> coefficients;
};

/// Reduces v modulo the column span of `basis`. Throws std::invalid_argument
/// on dimension mismatch.
template <class F>
SpanReduction<F> reduce_mod_span(const Vec<F>& v, const Matrix<F>& basis);

}  // namespace bigres
