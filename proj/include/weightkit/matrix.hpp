// Dense exact matrices over a RingSpec.
#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "weightkit/ring.hpp"

namespace weightkit {

/// Row-major rows x cols matrix; every entry lives in spec(). Empty shapes
/// are valid and stand for zero modules / zero maps. Matrices act on column
/// vectors.
class Matrix {
 public:
  Matrix() = default;
  Matrix(RingSpec spec, std::size_t rows, std::size_t cols);

  static Matrix identity(RingSpec spec, std::size_t n);
  static Matrix from_ints(RingSpec spec,
                          std::initializer_list<std::initializer_list<long>> rows);
  static Matrix from_rows(RingSpec spec,
                          const std::vector<std::vector<RingElement>>& rows,
                          std::size_t cols_if_empty = 0);
  /// n x 1 column.
  static Matrix column_vector(RingSpec spec, const std::vector<RingElement>& v);

  const RingSpec& spec() const { return spec_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  RingElement& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const RingElement& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix transpose() const;
  Matrix column(std::size_t j) const;
  Matrix columns(std::size_t first, std::size_t count) const;
  Matrix row_block(std::size_t first, std::size_t count) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const;
  Matrix select_columns(const std::vector<std::size_t>& idx) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;

  std::vector<RingElement> column_entries(std::size_t j) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source,
                        const RingElement& factor);
  void add_col_multiple(std::size_t target, std::size_t source,
                        const RingElement& factor);
  void scale_row(std::size_t r, const RingElement& factor);
  void scale_col(std::size_t c, const RingElement& factor);

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const RingElement& s, Matrix m);
  Matrix operator-() const;
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  RingSpec spec_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<RingElement> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const Matrix& a, const Matrix& b);
/// Kronecker product.
Matrix kronecker(const Matrix& a, const Matrix& b);

/// Determinant of a square matrix by Euclidean row reduction.
RingElement determinant(const Matrix& m);

}  // namespace weightkit
