#pragma once

#include <cstddef>
#include <vector>

#include "affkm/rational.hpp"

namespace affkm {

/// Dense exact-rational matrix, sized for Cartan data (rank <= 8).
class QMat {
public:
  QMat() = default;
  QMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

  static QMat identity(std::size_t n);
  static QMat from_int_rows(const std::vector<std::vector<int>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  QMat transposed() const;
  QMat operator*(const QMat& o) const;
  QVec apply(const QVec& v) const;

  /// Exact Gauss-Jordan inverse; throws std::domain_error if singular.
  QMat inverse() const;

  /// Exact determinant by fraction elimination.
  Rat det() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

} // namespace affkm
