#include "weightkit/matrix.hpp"

#include <sstream>

namespace weightkit {

Matrix::Matrix(RingSpec spec, std::size_t rows, std::size_t cols)
    : spec_(spec), rows_(rows), cols_(cols), data_(rows * cols, spec.zero()) {}

Matrix Matrix::identity(RingSpec spec, std::size_t n) {
  Matrix m(spec, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = spec.one();
  return m;
}

Matrix Matrix::from_ints(RingSpec spec,
                         std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(spec, r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error("ragged matrix literal");
    std::size_t j = 0;
    for (long v : row) m(i, j++) = spec.from_int(v);
    ++i;
  }
  return m;
}

Matrix Matrix::from_rows(RingSpec spec,
                         const std::vector<std::vector<RingElement>>& rows,
                         std::size_t cols_if_empty) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? cols_if_empty : rows.front().size();
  Matrix m(spec, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error("ragged matrix: row " + std::to_string(i));
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::column_vector(RingSpec spec, const std::vector<RingElement>& v) {
  Matrix m(spec, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(spec_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::column(std::size_t j) const { return columns(j, 1); }

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
  return block(0, first, rows_, count);
}

Matrix Matrix::row_block(std::size_t first, std::size_t count) const {
  return block(first, 0, count, cols_);
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error("matrix block out of range");
  Matrix b(spec_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
  Matrix b(spec_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < idx.size(); ++k) b(i, k) = (*this)(i, idx[k]);
  return b;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix b(spec_, idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t j = 0; j < cols_; ++j) b(k, j) = (*this)(idx[k], j);
  return b;
}

std::vector<RingElement> Matrix::column_entries(std::size_t j) const {
  std::vector<RingElement> v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void Matrix::add_row_multiple(std::size_t target, std::size_t source,
                              const RingElement& factor) {
  if (factor.is_zero()) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const RingElement& s = (*this)(source, j);
    if (!s.is_zero()) (*this)(target, j) += factor * s;
  }
}

void Matrix::add_col_multiple(std::size_t target, std::size_t source,
                              const RingElement& factor) {
  if (factor.is_zero()) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const RingElement& s = (*this)(i, source);
    if (!s.is_zero()) (*this)(i, target) += factor * s;
  }
}

void Matrix::scale_row(std::size_t r, const RingElement& factor) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) *= factor;
}

void Matrix::scale_col(std::size_t c, const RingElement& factor) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) *= factor;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error("matrix shape mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error("matrix shape mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_)
    throw Error("matrix shape mismatch in *: " + std::to_string(a.rows_) + "x" +
                std::to_string(a.cols_) + " by " + std::to_string(b.rows_) + "x" +
                std::to_string(b.cols_));
  Matrix c(a.spec_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const RingElement& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const RingElement& y = b(k, j);
        if (!y.is_zero()) c(i, j) += x * y;
      }
    }
  return c;
}

Matrix operator*(const RingElement& s, Matrix m) {
  for (auto& e : m.data_) e *= s;
  return m;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& e : m.data_) e = -e;
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << (*this)(i, j).to_string();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error("hstack: row mismatch");
  Matrix m(a.spec(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error("vstack: column mismatch");
  Matrix m(a.spec(), a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) m(a.rows() + i, j) = b(i, j);
  }
  return m;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m(a.spec(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix m(a.spec(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

RingElement determinant(const Matrix& m) {
  if (!m.is_square()) throw Error("determinant of a non-square matrix");
  const RingSpec& spec = m.spec();
  Matrix a = m;
  std::size_t n = a.rows();
  RingElement sign = spec.one();
  for (std::size_t c = 0; c < n; ++c) {
    // Euclid on column c below the diagonal until one nonzero entry remains.
    while (true) {
      std::size_t pivot = n;
      for (std::size_t r = c; r < n; ++r) {
        if (a(r, c).is_zero()) continue;
        if (pivot == n || a(r, c).euclid_norm() < a(pivot, c).euclid_norm()) pivot = r;
      }
      if (pivot == n) return spec.zero();
      if (pivot != c) {
        a.swap_rows(pivot, c);
        sign = -sign;
      }
      bool clean = true;
      for (std::size_t r = c + 1; r < n; ++r) {
        if (a(r, c).is_zero()) continue;
        auto q = divmod(a(r, c), a(c, c)).first;
        a.add_row_multiple(r, c, -q);
        if (!a(r, c).is_zero()) clean = false;
      }
      if (clean) break;
    }
  }
  RingElement det = sign;
  for (std::size_t i = 0; i < n; ++i) det *= a(i, i);
  return det;
}

}  // namespace weightkit
