#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bigres/bipoly.hpp"

namespace bigres {

/// Matrix with bihomogeneous polynomial entries. Entries of one matrix may
/// have different degrees; zero entries carry an arbitrary degree.
template <class F>
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(const F& field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, BiPoly<F>(field, BiDegree{0, 0})) {}

  static PolyMatrix from_columns(const F& field, std::size_t rows,
                                 const std::vector<std::vector<BiPoly<F>>>& columns) {
    PolyMatrix m(field, rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != rows) throw std::invalid_argument("PolyMatrix column length mismatch");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BiPoly<F>& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BiPoly<F>& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<BiPoly<F>> column(std::size_t c) const {
    std::vector<BiPoly<F>> v;
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
  }

  bool is_zero() const {
    for (const auto& p : data_)
      if (!p.is_zero()) return false;
    return true;
  }

  PolyMatrix operator*(const PolyMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("PolyMatrix product: dimension mismatch");
    PolyMatrix out(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < o.cols_; ++j) {
        BiPoly<F> acc(field_, BiDegree{0, 0});
        for (std::size_t k = 0; k < cols_; ++k) {
          const auto& a = (*this)(i, k);
          const auto& b = o(k, j);
          if (a.is_zero() || b.is_zero()) continue;
          acc = acc + a * b;
        }
        out(i, j) = acc;
      }
    return out;
  }

  /// Entries as text, one row per line, cells separated by " | ".
  std::string to_string() const {
    std::string out;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (c) out += " | ";
        out += (*this)(r, c).to_string();
      }
      out += '\n';
    }
    return out;
  }

 private:
  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BiPoly<F>> data_;
};

}  // namespace bigres
