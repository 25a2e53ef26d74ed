// Localization data S_0 and the predicates that observe the localized
// category: heart membership (two independent characterizations), local
// complexes, the completion square and projectivity of completed frees.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weightkit/complexes.hpp"
#include "weightkit/contra.hpp"

namespace weightkit {

class LocalizationSpec {
 public:
  enum class Variant { MatrixFamily, Telescope };

  /// Square matrices with nonzero determinant; throws Error naming the
  /// offending matrix otherwise.
  static LocalizationSpec matrices(RingSpec ring, std::vector<Matrix> mats);
  /// Nonempty generator list (zero and unit generators allowed).
  static LocalizationSpec telescope(RingSpec ring, std::vector<RingElement> gens);

  Variant variant() const { return variant_; }
  const RingSpec& ring() const { return ring_; }
  const std::vector<Matrix>& mats() const { return mats_; }
  const std::vector<RingElement>& gens() const { return gens_; }
  std::string describe() const;

 private:
  Variant variant_ = Variant::Telescope;
  RingSpec ring_;
  std::vector<Matrix> mats_;
  std::vector<RingElement> gens_;
};

/// R[1/f] with fractions a/f^n kept with n minimal.
class LocalizedRing {
 public:
  struct Fraction {
    RingElement numerator;
    unsigned power = 0;
    friend bool operator==(const Fraction&, const Fraction&) = default;
  };

  LocalizedRing(RingSpec base, RingElement f);

  const RingSpec& base() const { return base_; }
  const RingElement& inverted() const { return f_; }

  Fraction fraction(const RingElement& a, unsigned power = 0) const;
  Fraction add(const Fraction& x, const Fraction& y) const;
  Fraction multiply(const Fraction& x, const Fraction& y) const;
  /// a/f^n is a unit iff a divides a power of f.
  bool is_unit(const Fraction& x) const;
  std::string to_string(const Fraction& x) const;
  std::string describe() const;

 private:
  RingSpec base_;
  RingElement f_;
};

/// Commutative base: inverting a square matrix family universally inverts
/// the product of the determinants.
LocalizedRing universal_localization(const LocalizationSpec& spec);

/// True iff multiplication by r is a bijection of n.
bool acts_invertibly(const FpModule& n, const RingElement& r);

struct HeartVerdict {
  bool member = true;
  LocalizationSpec::Variant variant = LocalizationSpec::Variant::MatrixFamily;
  /// Index of the first failing matrix or generator.
  std::optional<std::size_t> failing;
  /// MatrixFamily: bijectivity data of N^b -> N^a for the failing matrix.
  std::optional<BijectivityCertificate> map_witness;
  /// Telescope: the ideal-contramodule certificate.
  std::optional<IdealCertificate> contra;

  std::string describe() const;
};

/// MatrixFamily: for every sigma : R^a -> R^b the precomposition map
/// N^b -> N^a (sigma^T acting blockwise) is bijective. Telescope: N is an
/// I-contramodule for I = (gens).
HeartVerdict heart_membership(const FpModule& n, const LocalizationSpec& spec);

struct ConeVerdict {
  bool member = true;
  std::optional<std::size_t> failing;
  /// Which of Hom(H^0 U, N), Ext^1(H^0 U, N), Hom(H^-1 U, N) is nonzero.
  std::string reason;
};

/// MatrixFamily only: with U = cone(sigma) in degrees {-1, 0},
/// Hom(U, N) = 0 and Hom(U[-1], N) = 0, read off the cohomology of U:
/// Hom(H^0, N), Ext^1(H^0, N) and Hom(H^-1, N) must vanish.
ConeVerdict heart_membership_via_cone(const FpModule& n, const LocalizationSpec& spec);

/// The same test with the cone cohomology computed once per spec, for
/// checking many modules against one family.
class ConeTest {
 public:
  explicit ConeTest(const LocalizationSpec& spec);
  ConeVerdict operator()(const FpModule& n) const;

 private:
  std::vector<std::pair<FpModule, FpModule>> cohomology_;  // (H^0, H^-1) per matrix
};

struct LocalComplexVerdict {
  bool local = true;
  std::vector<std::pair<int, HeartVerdict>> per_degree;
};
LocalComplexVerdict is_local_complex(const ChainComplex& m, const LocalizationSpec& spec);

struct SquareEntry {
  std::string test;
  bool skipped = false;
  bool passed = true;
  std::vector<std::string> checks;
};

struct SquareReport {
  std::size_t rank = 0;
  unsigned max_level = 0;
  std::vector<SquareEntry> entries;
  bool passed() const;
};

/// Evaluates both paths of the completion square on P = R^k against each
/// test module N (non-members are skipped with a note).
SquareReport verify_square(std::size_t k, const LocalizationSpec& spec,
                           const std::vector<FpModule>& tests, unsigned max_level);

struct ShortExactSequence {
  ModuleHom inclusion;   // A -> B
  ModuleHom projection;  // B -> C
};

/// Empty string if 0 -> A -> B -> C -> 0 is exact, else the failing
/// position.
std::string exactness_failure(const ShortExactSequence& ses);

struct ProjectivityEntry {
  std::size_t sequence = 0;
  std::size_t rank = 0;
  RingElement generator;
  bool exact = false;
  std::string image;  // e.g. "Z/2 -> Z/4 -> Z/2"
};

struct ProjectivityReport {
  std::vector<ProjectivityEntry> entries;
  bool passed() const;
};

/// Telescope only. Throws Error if a sample is not short exact or has a term
/// outside the heart.
ProjectivityReport verify_heart_projectives(const LocalizationSpec& spec, std::size_t k_max,
                                            const std::vector<ShortExactSequence>& samples);

/// Random short exact sequences of heart members for a Telescope spec: B has
/// cyclic summands of order a product of generator powers, A is the image
/// of a random map into B and C the cokernel.
std::vector<ShortExactSequence> sample_heart_sequences(const LocalizationSpec& spec,
                                                       std::size_t count, Rng& rng);

}  // namespace weightkit
