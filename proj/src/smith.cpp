#include "weightkit/smith.hpp"

namespace weightkit {

namespace {

// Working state: every elementary operation is mirrored on the transforms.
struct SmithState {
  Matrix D, U, U_inv, V, V_inv;

  explicit SmithState(const Matrix& a)
      : D(a),
        U(Matrix::identity(a.spec(), a.rows())),
        U_inv(Matrix::identity(a.spec(), a.rows())),
        V(Matrix::identity(a.spec(), a.cols())),
        V_inv(Matrix::identity(a.spec(), a.cols())) {}

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    D.swap_rows(a, b);
    U.swap_rows(a, b);
    U_inv.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    D.swap_cols(a, b);
    V.swap_cols(a, b);
    V_inv.swap_rows(a, b);
  }
  // row t += f * row s
  void add_row(std::size_t t, std::size_t s, const RingElement& f) {
    D.add_row_multiple(t, s, f);
    U.add_row_multiple(t, s, f);
    U_inv.add_col_multiple(s, t, -f);
  }
  // col t += f * col s
  void add_col(std::size_t t, std::size_t s, const RingElement& f) {
    D.add_col_multiple(t, s, f);
    V.add_col_multiple(t, s, f);
    V_inv.add_row_multiple(s, t, -f);
  }
  void scale_row(std::size_t r, const RingElement& unit) {
    D.scale_row(r, unit);
    U.scale_row(r, unit);
    U_inv.scale_col(r, unit.inverse());
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const Matrix& a) {
  SmithState st(a);
  Matrix& D = st.D;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<RingElement> factors;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pi = m, pj = n;
    mpz_class best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (D(i, j).is_zero()) continue;
        mpz_class norm = D(i, j).euclid_norm();
        if (pi == m || norm < best) {
          best = norm;
          pi = i;
          pj = j;
        }
      }
    if (pi == m) break;
    st.swap_rows(t, pi);
    st.swap_cols(t, pj);

    while (true) {
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t).is_zero()) continue;
        st.add_row(i, t, -divmod(D(i, t), D(t, t)).first);
      }
      std::size_t smaller = m;
      for (std::size_t i = t + 1; i < m; ++i)
        if (!D(i, t).is_zero() &&
            (smaller == m || D(i, t).euclid_norm() < D(smaller, t).euclid_norm()))
          smaller = i;
      if (smaller != m) {
        st.swap_rows(t, smaller);
        continue;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j).is_zero()) continue;
        st.add_col(j, t, -divmod(D(t, j), D(t, t)).first);
      }
      smaller = n;
      for (std::size_t j = t + 1; j < n; ++j)
        if (!D(t, j).is_zero() &&
            (smaller == n || D(t, j).euclid_norm() < D(t, smaller).euclid_norm()))
          smaller = j;
      if (smaller != n) {
        st.swap_cols(t, smaller);
        continue;
      }
      // The pivot must divide the whole remaining block.
      std::size_t bad_row = m;
      if (!D(t, t).is_unit()) {
        for (std::size_t i = t + 1; i < m && bad_row == m; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!divides(D(t, t), D(i, j))) {
              bad_row = i;
              break;
            }
      }
      if (bad_row == m) break;
      st.add_row(t, bad_row, D.spec().one());
    }
    RingElement u = D(t, t).unit_part();
    if (!u.is_one()) st.scale_row(t, u.inverse());
    factors.push_back(D(t, t));
  }

  return SmithDecomposition{std::move(st.U), std::move(st.D), std::move(st.V),
                            std::move(st.U_inv), std::move(st.V_inv),
                            std::move(factors)};
}

SolveResult linear_solve(const Matrix& a, const Matrix& b) {
  LinearSystem sys(a);
  return SolveResult{sys.solve(b), sys.kernel()};
}

LinearSystem::LinearSystem(const Matrix& a) : smith_(smith_normal_form(a)) {}

std::optional<Matrix> LinearSystem::solve(const Matrix& b) const {
  const std::size_t m = smith_.D.rows();
  const std::size_t n = smith_.D.cols();
  if (b.rows() != m) throw Error("linear_solve: right-hand side has wrong length");
  const RingSpec& spec = smith_.D.spec();
  Matrix c = smith_.U * b;
  Matrix y(spec, n, b.cols());
  const std::size_t r = rank();
  for (std::size_t k = 0; k < b.cols(); ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      auto [q, rem] = divmod(c(i, k), smith_.invariant_factors[i]);
      if (!rem.is_zero()) return std::nullopt;
      y(i, k) = std::move(q);
    }
    for (std::size_t i = r; i < m; ++i)
      if (!c(i, k).is_zero()) return std::nullopt;
  }
  return smith_.V * y;
}

Matrix LinearSystem::kernel() const {
  const std::size_t n = smith_.D.cols();
  return smith_.V.columns(rank(), n - rank());
}

Matrix LinearSystem::image() const {
  Matrix basis = smith_.U_inv.columns(0, rank());
  for (std::size_t i = 0; i < rank(); ++i)
    basis.scale_col(i, smith_.invariant_factors[i]);
  return basis;
}

}  // namespace weightkit
