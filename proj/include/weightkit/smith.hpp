// Smith normal form with unimodular transforms, and the linear algebra built
// on it (solving, kernels, images).
#pragma once

#include <optional>
#include <vector>

#include "weightkit/matrix.hpp"

namespace weightkit {

/// D = U * A * V with U, V unimodular. D is rectangular-diagonal with
/// normalized entries d_1 | d_2 | ... | d_r followed by zeros.
/// U_inv and V_inv are tracked alongside so no inversion is ever needed.
struct SmithDecomposition {
  Matrix U;
  Matrix D;
  Matrix V;
  Matrix U_inv;
  Matrix V_inv;
  std::vector<RingElement> invariant_factors;

  std::size_t rank() const { return invariant_factors.size(); }
};

/// Pivot rule: smallest Euclidean norm in the active submatrix, ties broken
/// by lowest (row, col).
SmithDecomposition smith_normal_form(const Matrix& a);

struct SolveResult {
  std::optional<Matrix> particular;  // x with A x = b (n x 1)
  Matrix kernel;                     // basis of {x : A x = 0} as columns
};

SolveResult linear_solve(const Matrix& a, const Matrix& b);

/// A fixed coefficient matrix with its Smith form cached, for repeated
/// solves against many right-hand sides.
class LinearSystem {
 public:
  explicit LinearSystem(const Matrix& a);

  /// X with A X = B (all columns at once), or nullopt if some column of B is
  /// outside the column span of A.
  std::optional<Matrix> solve(const Matrix& b) const;
  bool in_span(const Matrix& b) const { return solve(b).has_value(); }

  /// Basis of the kernel as columns.
  Matrix kernel() const;
  /// Basis of the column span as columns.
  Matrix image() const;

  std::size_t rank() const { return smith_.rank(); }
  const SmithDecomposition& smith() const { return smith_; }
  std::size_t rows() const { return smith_.D.rows(); }
  std::size_t cols() const { return smith_.D.cols(); }

 private:
  SmithDecomposition smith_;
};

inline Matrix kernel_basis(const Matrix& a) { return LinearSystem(a).kernel(); }
inline Matrix image_basis(const Matrix& a) { return LinearSystem(a).image(); }

}  // namespace weightkit
