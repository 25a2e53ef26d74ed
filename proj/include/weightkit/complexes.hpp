// Bounded cochain complexes of finite-rank free modules.
//
// Conventions used throughout:
//   * differentials raise cohomological degree, d^i : M^i -> M^{i+1};
//   * shift: (M[k])^i = M^{i+k} with differential (-1)^k d;
//   * cone(f: X -> Y)^i = Y^i + X^{i+1}, d = [[d_Y, f], [0, -d_X]];
//   * weights: C_{w<=0} are complexes homotopy equivalent to ones living in
//     degrees >= 0, C_{w>=0} in degrees <= 0, so a minimal complex supported
//     on [a, b] has weight range [-b, -a];
//   * canonical t-structure: C_{t>=0} has no cohomology in positive degrees,
//     C_{t<=0} none in negative degrees.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weightkit/fpmod.hpp"
#include "weightkit/sampling.hpp"

namespace weightkit {

class ChainComplex {
 public:
  ChainComplex() : ChainComplex(RingSpec::integers(), 0, {}, {}) {}
  /// ranks[k] is the rank in degree lo + k; differentials[k] is the
  /// ranks[k+1] x ranks[k] matrix leaving degree lo + k. Throws Error with
  /// the offending degree if shapes are wrong or d o d != 0.
  ChainComplex(RingSpec spec, int lo, std::vector<std::size_t> ranks,
               std::vector<Matrix> differentials);

  static ChainComplex zero(RingSpec spec);
  static ChainComplex concentrated(RingSpec spec, int degree, std::size_t rank);
  /// [R^cols --d--> R^rows] with the source in `degree`.
  static ChainComplex two_term(const Matrix& d, int degree);

  const RingSpec& spec() const { return data_->spec; }
  int lo() const { return data_->lo; }
  /// Last degree of the stored range (lo - 1 when the range is empty).
  int hi() const { return data_->lo + static_cast<int>(data_->ranks.size()) - 1; }
  std::size_t rank(int degree) const;
  /// rank(i+1) x rank(i); a zero matrix outside the stored range.
  Matrix differential(int degree) const;

  bool is_zero() const;
  /// Smallest interval holding every nonzero term.
  std::optional<std::pair<int, int>> support() const;
  ChainComplex trimmed() const;
  ChainComplex shift(int k) const;

  std::string to_string() const;

  friend bool operator==(const ChainComplex& a, const ChainComplex& b);

 private:
  struct Data {
    RingSpec spec;
    int lo = 0;
    std::vector<std::size_t> ranks;
    std::vector<Matrix> differentials;
  };
  std::shared_ptr<const Data> data_;
};

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);

/// Random complex on [lo, lo + length - 1] with ranks <= max_rank. Each
/// differential is a random combination of the functionals vanishing on the
/// previous image, so d o d = 0 by construction.
ChainComplex random_complex(const RingSpec& spec, Rng& rng, int lo, int length,
                            std::size_t max_rank, long bound);

/// Degreewise matrices f^i : source^i -> target^i commuting with d.
class ChainMap {
 public:
  using Builder = std::function<Matrix(int degree)>;

  ChainMap() = default;
  /// Components are requested for every degree where both ends may be
  /// nonzero. Throws Error if a component has the wrong shape or the square
  /// at some degree fails to commute.
  ChainMap(ChainComplex source, ChainComplex target, const Builder& component);

  static ChainMap identity(const ChainComplex& m);
  static ChainMap zero(const ChainComplex& source, const ChainComplex& target);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  Matrix component(int degree) const;

 private:
  ChainComplex source_;
  ChainComplex target_;
  int lo_ = 0;
  std::vector<Matrix> components_;
};

/// g o f
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap subtract(const ChainMap& f, const ChainMap& g);

/// Degreewise h^i : source^i -> target^{i-1}.
class Homotopy {
 public:
  Homotopy() = default;
  Homotopy(ChainComplex source, ChainComplex target,
           const std::function<Matrix(int degree)>& component);
  static Homotopy zero(const ChainComplex& source, const ChainComplex& target);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  Matrix component(int degree) const;

  /// True iff f - g = d h + h d in every degree.
  bool relates(const ChainMap& f, const ChainMap& g) const;

 private:
  ChainComplex source_;
  ChainComplex target_;
  int lo_ = 0;
  std::vector<Matrix> components_;
};

Homotopy add(const Homotopy& a, const Homotopy& b);
/// g o h o f
Homotopy sandwich(const ChainMap& g, const Homotopy& h, const ChainMap& f);

/// forward : source -> target, backward : target -> source, with
///   id_source - backward o forward = d h + h d   (on_source)
///   id_target - forward o backward = d h + h d   (on_target)
struct HomotopyEquivalence {
  ChainMap forward;
  ChainMap backward;
  Homotopy on_source;
  Homotopy on_target;

  const ChainComplex& source() const { return forward.source(); }
  const ChainComplex& target() const { return forward.target(); }
  bool verify() const;
};

HomotopyEquivalence compose(const HomotopyEquivalence& second,
                            const HomotopyEquivalence& first);
HomotopyEquivalence invert(const HomotopyEquivalence& e);

/// L -> M -> R with L the subcomplex in degrees >= -n (so L is in
/// C_{w<=n}) and R the quotient in degrees <= -n-1 (in C_{w>=n+1}).
struct WeightDecomposition {
  ChainComplex lower;  // L
  ChainComplex upper;  // R
  ChainMap inclusion;
  ChainMap projection;
};
WeightDecomposition weight_truncate(const ChainComplex& m, int n);

/// Lt -> M -> Rt with Lt in C_{t>=n} (cohomology only in degrees <= -n) and
/// Rt carrying the cohomology in degrees >= -n+1. Lt keeps the terms below
/// the cut and the free cycle module at degree -n; Rt keeps the complement
/// of the cycles at -n and the terms above.
struct TDecomposition {
  ChainComplex lower;  // Lt
  ChainComplex upper;  // Rt
  ChainMap inclusion;
  ChainMap projection;
};
TDecomposition t_truncate(const ChainComplex& m, int n);

FpModule homology(const ChainComplex& m, int degree);
/// The cycle/boundary subquotient with its basis in M^degree coordinates.
Subquotient homology_with_basis(const ChainComplex& m, int degree);

ChainComplex cone(const ChainMap& f);

struct Minimization {
  ChainComplex minimal;
  HomotopyEquivalence equivalence;  // original -> minimal
};
/// Cancels every unit invariant factor of every differential. The result has
/// no contractible [R --unit--> R] summand and its range is trimmed.
Minimization minimize(const ChainComplex& m);

/// Decided by comparing cohomology in every degree (valid over the supported
/// hereditary rings).
bool homotopy_equivalent(const ChainComplex& m, const ChainComplex& n);

/// The normal form determined by cohomology: in each degree i it holds the
/// torsion generators of H^i, then the free generators of H^i, then one
/// generator per torsion summand of H^{i+1} mapping onto it by its
/// invariant factor.
ChainComplex canonical_complex(const ChainComplex& m);
/// Explicit equivalence m -> canonical_complex(m).
HomotopyEquivalence canonical_equivalence(const ChainComplex& m);
/// Explicit witness m -> n, present iff the canonical complexes agree.
std::optional<HomotopyEquivalence> homotopy_equivalence(const ChainComplex& m,
                                                        const ChainComplex& n);

/// Chain maps X -> Y modulo homotopy: H^0 of the total Hom complex.
FpModule hom_upto_homotopy(const ChainComplex& x, const ChainComplex& y);

/// (i, j) with M in C_{[i,j]} and no smaller interval; nullopt for M ~ 0.
std::optional<std::pair<int, int>> weight_range(const ChainComplex& m);

using WeightTruncator = std::function<WeightDecomposition(const ChainComplex&, int)>;

struct WeightAxiomReport {
  std::size_t checks = 0;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

/// For every sample and n in [n_lo, n_hi]: truncation pieces land in
/// C_{w<=n} / C_{w>=n+1}, cone(inclusion) ~ upper, Hom_K(lower, upper) = 0
/// (also across neighbouring samples), and Hom_K(P, Q[i]) = 0 for free P, Q
/// in degree 0 and i > 0.
WeightAxiomReport verify_weight_axioms(const std::vector<ChainComplex>& sample, int n_lo,
                                       int n_hi,
                                       const WeightTruncator& truncate = weight_truncate);

}  // namespace weightkit
