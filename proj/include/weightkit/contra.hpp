// Element localizations R[1/s]: s-contramodule tests with checkable
// certificates, the completion functor, and flatness of R[1/s].
//
// R[1/s] is modelled by its telescope resolution
//   0 -> (+)_n R --(1 - s*shift)--> (+)_n R -> R[1/s] -> 0,   e_n -> 1/s^n,
// so Hom(R[1/s], C) = lim(C <-s- C <-s- ...) and Ext^1 is the matching lim^1.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weightkit/fpmod.hpp"

namespace weightkit {

/// 1 - s*shift on towers (m_0, m_1, ...) of elements of a module:
/// (T m)_n = m_n - s*m_{n+1}. Only finite truncations are ever built.
struct TelescopeOperator {
  RingElement s;

  /// The operator on length-L towers of elements of m, as an endomorphism of
  /// m^L (tower slot n occupies the n-th block of generators).
  ModuleHom truncation(const FpModule& m, std::size_t length) const;
  /// Applies the operator to a finite tower of column vectors.
  std::vector<Matrix> apply(const std::vector<Matrix>& tower) const;
};

/// C = R^k + (part where s is nilpotent) + (part where s is invertible).
struct SSplit {
  std::size_t free_rank = 0;
  FpModule nilpotent;
  FpModule invertible;
  /// Least N with s^N killing the nilpotent part.
  unsigned exponent = 0;
};

/// Splits every torsion summand R/d as R/g + R/(d/g) where g is the limit of
/// the chain gcd(d, s^n); the chain stops growing exactly when the image
/// chain s^n (R/d) does. Throws Error for s = 0.
SSplit split_by_s(const FpModule& c, const RingElement& s);

struct ContraCertificate {
  enum class Kind {
    Nilpotent,       // s^exponent kills C and C has no free part
    ZeroElement,     // s = 0, R[1/s] = 0
    HomWitness,      // c != 0 with s*u*c = c: a nonzero map R[1/s] -> C
    ExtObstruction,  // free generator g outside sC + torsion: lim^1 != 0
  };

  bool verdict = false;
  Kind kind = Kind::Nilpotent;
  RingElement s;
  unsigned exponent = 0;
  /// HomWitness: c; ExtObstruction: g. Coordinates in C's generators.
  std::optional<Matrix> element;
  /// HomWitness: u with s*u*c = c, so c_n = u^n c is a compatible sequence.
  std::optional<RingElement> multiplier;

  std::string describe() const;
};

std::string to_string(ContraCertificate::Kind kind);

/// s a unit: true iff C = 0. s = 0: always true. Otherwise true iff C has
/// no free part and s is nilpotent on C.
ContraCertificate is_s_contramodule(const FpModule& c, const RingElement& s);

/// Re-checks a certificate against C by substitution only.
bool verify_certificate(const FpModule& c, const ContraCertificate& cert);

struct IdealCertificate {
  bool verdict = true;
  /// Empty generator list: I = 0, true vacuously.
  bool vacuous = false;
  std::vector<ContraCertificate> per_generator;
  /// Index of the first failing generator.
  std::optional<std::size_t> failing;

  std::string describe() const;
};

/// I-contramodule test for I = (gens): the conjunction over the generators.
IdealCertificate is_ideal_contramodule(const FpModule& c, const std::vector<RingElement>& gens);

/// Symbolic completion: C^ = (R^_s)^k + finite, with the s-invertible part
/// recorded as killed.
struct CompletedModule {
  RingElement s;
  std::size_t completed_rank = 0;
  FpModule finite_part;
  FpModule killed_part;
  unsigned exponent = 0;  // s^exponent kills finite_part

  bool is_zero() const { return completed_rank == 0 && finite_part.is_zero(); }
  std::string describe() const;
};

CompletedModule delta_completion(const FpModule& c, const RingElement& s);

/// C^ / s^N C^ = (R/s^N)^k + finite / s^N finite.
FpModule reduce_completed(const CompletedModule& c, unsigned level);

/// Hom(C^, N) for an s-contramodule N; throws Error otherwise.
FpModule hom_from_completed(const CompletedModule& c, const FpModule& n);

struct FlatnessEntry {
  std::string module;
  bool tor1_zero = false;
  /// Tower lengths whose truncated operator was checked.
  std::vector<std::size_t> lengths;
  std::string proof;
};

struct FlatnessReport {
  RingElement s;
  std::vector<FlatnessEntry> entries;
  std::string multiplication;
  bool passed() const;
};

/// Tor_1(R[1/s], M) = ker(1 - s*shift on finite towers of M). For each
/// sample the truncated operators are shown to be unitriangular and their
/// kernels computed to vanish. Throws Error for s = 0.
FlatnessReport verify_flatness(const RingElement& s, const std::vector<FpModule>& samples,
                               std::size_t max_length = 4);

}  // namespace weightkit
