// Direct lim / lim^1 computation for the tower C <-s- C <-s- C <-s- ...
// built from an explicit presentation, without normal forms.
//
// Towers of finitely generated modules with all maps s:
//   * lim^1 = 0 iff the image chain s^m C stabilizes (Mittag-Leffler);
//   * lim = 0 iff the stable part of the image chain on the torsion
//     submodule is zero.
// Images are computed as explicit submodules s^m R^b + Rel of R^b, so the
// chain is a chain of matrices compared by solving.
#pragma once

#include "weightkit/smith.hpp"

namespace weightkit::oracle {

struct LimVerdict {
  bool lim_zero = true;
  bool lim1_zero = true;
  unsigned stabilized_at = 0;  // meaningful when lim1_zero
  bool contramodule() const { return lim_zero && lim1_zero; }
};

inline bool contains(const Matrix& big, const Matrix& small) {
  return small.cols() == 0 || LinearSystem(big).in_span(small);
}

// s^m R^b + Rel.
inline Matrix image_level(const Matrix& rel_cols, const RingElement& s, unsigned m) {
  const auto& spec = rel_cols.spec();
  Matrix id = s.pow(m) * Matrix::identity(spec, rel_cols.rows());
  return hstack(id, rel_cols);
}

/// rel_cols: b x r, columns are the relations. depth must exceed the length
/// of the longest strictly decreasing image chain of the torsion part (any
/// bound such as the total number of prime factors of its order works).
inline LimVerdict lim_oracle(const Matrix& rel_cols, const RingElement& s, unsigned depth) {
  LimVerdict v;
  // Image chain: the inclusion S_{m+1} <= S_m always holds; equality is
  // S_m <= S_{m+1}.
  v.lim1_zero = false;
  for (unsigned m = 0; m <= depth; ++m) {
    if (contains(image_level(rel_cols, s, m + 1), image_level(rel_cols, s, m))) {
      v.lim1_zero = true;
      v.stabilized_at = m;
      break;
    }
  }
  // Torsion submodule T = Z^b intersected with the rational span of Rel:
  // the common zeros of every functional vanishing on Rel.
  Matrix functionals = LinearSystem(rel_cols.transpose()).kernel();
  Matrix torsion = LinearSystem(functionals.transpose()).kernel();
  // lim != 0 iff s^depth T is not inside Rel.
  Matrix pushed = s.pow(depth) * torsion;
  v.lim_zero = contains(rel_cols, pushed);
  return v;
}

}  // namespace weightkit::oracle
