// Exact coefficient domains: Z, Q, F_p, F_p[x] and Q[x].
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace weightkit {

/// Raised for malformed input and violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RingKind : std::uint8_t {
  Integers,
  Rationals,
  PrimeField,
  PolyOverPrimeField,
  PolyOverRationals,
};

class RingElement;

/// The active Euclidean coefficient domain. Cheap to copy.
class RingSpec {
 public:
  RingSpec() = default;

  static RingSpec integers() { return RingSpec(RingKind::Integers, 0); }
  static RingSpec rationals() { return RingSpec(RingKind::Rationals, 0); }
  static RingSpec prime_field(std::uint64_t p);
  static RingSpec poly_over_prime_field(std::uint64_t p);
  static RingSpec poly_over_rationals() {
    return RingSpec(RingKind::PolyOverRationals, 0);
  }

  /// Accepts "Z", "Q", "GF(p)", "GF(p)[x]", "Q[x]".
  static RingSpec parse(std::string_view text);

  RingKind kind() const { return kind_; }
  /// p for the prime-field kinds, 0 otherwise.
  std::uint64_t characteristic() const { return p_; }
  bool is_field() const {
    return kind_ == RingKind::Rationals || kind_ == RingKind::PrimeField;
  }
  bool is_polynomial() const {
    return kind_ == RingKind::PolyOverPrimeField ||
           kind_ == RingKind::PolyOverRationals;
  }

  std::string to_string() const;

  RingElement zero() const;
  RingElement one() const;
  RingElement from_int(long value) const;
  RingElement from_mpz(const mpz_class& value) const;
  /// The polynomial variable x; throws for non-polynomial kinds.
  RingElement variable() const;
  /// Parses the canonical string form (and a few lenient variants).
  RingElement parse_element(std::string_view text) const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  RingSpec(RingKind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  RingKind kind_ = RingKind::Integers;
  std::uint64_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// Element of a RingSpec in canonical form; equality is representation
/// equality.
///
/// Payloads: Integers and PrimeField use mpz_class (residues in [0, p)),
/// Rationals use a canonicalized mpq_class, polynomial kinds use a
/// coefficient vector (lowest degree first, no trailing zeros) whose entries
/// are integers in [0, p) or canonical rationals.
class RingElement {
 public:
  using Coefficients = std::vector<mpq_class>;

  RingElement() = default;

  const RingSpec& spec() const { return spec_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;

  /// Euclidean size: |a| over Z, 0/1 over fields, deg + 1 for polynomials
  /// (0 for the zero element).
  mpz_class euclid_norm() const;

  /// Unit u with *this = u * normalized(); one() for zero.
  RingElement unit_part() const;
  /// Canonical associate: nonnegative over Z, monic for polynomials, 1 for
  /// nonzero field elements.
  RingElement normalized() const;
  /// Inverse of a unit; throws Error otherwise.
  RingElement inverse() const;

  RingElement pow(unsigned exponent) const;

  /// Integer payload (Integers, PrimeField).
  const mpz_class& integer() const;
  const mpq_class& rational() const;
  const Coefficients& coefficients() const;
  long degree() const;  // -1 for zero; polynomials only

  std::string to_string() const;

  RingElement operator-() const;
  RingElement& operator+=(const RingElement& rhs);
  RingElement& operator-=(const RingElement& rhs);
  RingElement& operator*=(const RingElement& rhs);

  friend RingElement operator+(RingElement a, const RingElement& b) {
    return a += b;
  }
  friend RingElement operator-(RingElement a, const RingElement& b) {
    return a -= b;
  }
  friend RingElement operator*(RingElement a, const RingElement& b) {
    return a *= b;
  }
  friend bool operator==(const RingElement& a, const RingElement& b);

 private:
  friend class RingSpec;
  friend std::pair<RingElement, RingElement> divmod(const RingElement&,
                                                    const RingElement&);

  using Payload = std::variant<mpz_class, mpq_class, Coefficients>;

  RingElement(RingSpec spec, Payload payload)
      : spec_(spec), payload_(std::move(payload)) {}

  void canonicalize();

  RingSpec spec_;
  Payload payload_{mpz_class(0)};
};

/// Euclidean division: a = q*b + r with r = 0 or norm(r) < norm(b).
std::pair<RingElement, RingElement> divmod(const RingElement& a,
                                           const RingElement& b);
/// True iff a divides b.
bool divides(const RingElement& a, const RingElement& b);
/// b / a for a dividing b; throws Error if not exact.
RingElement exact_div(const RingElement& b, const RingElement& a);
/// Normalized gcd (gcd(0, 0) = 0).
RingElement gcd(const RingElement& a, const RingElement& b);

struct ExtendedGcd {
  RingElement g;  // normalized
  RingElement s;
  RingElement t;  // g = s*a + t*b
};
ExtendedGcd extended_gcd(const RingElement& a, const RingElement& b);

}  // namespace weightkit
