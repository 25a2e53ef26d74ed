#include "weightkit/ring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace weightkit {

namespace {

// Arithmetic on polynomial coefficients: Q when p == 0, F_p otherwise.
struct CoefficientField {
  std::uint64_t p;

  void reduce(mpq_class& c) const {
    if (p == 0) {
      c.canonicalize();
      return;
    }
    mpz_class modulus(static_cast<unsigned long>(p));
    mpz_class n = c.get_num();
    mpz_class d = c.get_den();
    if (d != 1) {
      mpz_class inv;
      if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), modulus.get_mpz_t()) == 0)
        throw Error("denominator not invertible modulo " + std::to_string(p));
      n *= inv;
    }
    mpz_fdiv_r(n.get_mpz_t(), n.get_mpz_t(), modulus.get_mpz_t());
    c = mpq_class(n);
  }

  mpq_class inverse(const mpq_class& c) const {
    if (p == 0) return 1 / c;
    mpz_class modulus(static_cast<unsigned long>(p));
    mpz_class inv;
    mpz_class n = c.get_num();
    mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), modulus.get_mpz_t());
    return mpq_class(inv);
  }
};

void strip(RingElement::Coefficients& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

mpz_class modulus_of(const RingSpec& spec) {
  return mpz_class(static_cast<unsigned long>(spec.characteristic()));
}

[[noreturn]] void bad_element(std::string_view text, const RingSpec& spec) {
  throw Error("cannot parse \"" + std::string(text) + "\" as an element of " +
              spec.to_string());
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool parse_mpz(std::string_view text, mpz_class& out) {
  std::string t = trim(text);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty()) return false;
  std::size_t start = t[0] == '-' ? 1 : 0;
  if (start == t.size()) return false;
  for (std::size_t i = start; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  return out.set_str(t, 10) == 0;
}

bool parse_mpq(std::string_view text, mpq_class& out) {
  std::string t = trim(text);
  auto slash = t.find('/');
  mpz_class num;
  mpz_class den(1);
  if (slash == std::string::npos) {
    if (!parse_mpz(t, num)) return false;
  } else {
    if (!parse_mpz(std::string_view(t).substr(0, slash), num)) return false;
    std::string_view d = std::string_view(t).substr(slash + 1);
    if (!parse_mpz(d, den) || den == 0) return false;
  }
  out = mpq_class(num, den);
  out.canonicalize();
  return true;
}

// Sum of terms c, c*x, c*x^k, x, x^k with +/- separators.
bool parse_poly(std::string_view text, RingElement::Coefficients& out,
                const CoefficientField& field) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) return false;
  std::size_t i = 0;
  out.clear();
  while (i < s.size()) {
    bool negative = false;
    bool saw_sign = false;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') negative = !negative;
      saw_sign = true;
      ++i;
    }
    if (!saw_sign && !out.empty()) return false;
    std::size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) ||
                            s[j] == '/'))
      ++j;
    mpq_class coef(1);
    if (j > i) {
      if (!parse_mpq(std::string_view(s).substr(i, j - i), coef)) return false;
    }
    unsigned long degree = 0;
    bool has_coef = j > i;
    i = j;
    if (i < s.size() && (s[i] == '*' || s[i] == 'x')) {
      if (s[i] == '*') {
        if (!has_coef) return false;
        ++i;
      }
      if (i >= s.size() || s[i] != 'x') return false;
      ++i;
      degree = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t k = i;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])))
          ++k;
        if (k == i) return false;
        auto res = std::from_chars(s.data() + i, s.data() + k, degree);
        if (res.ec != std::errc()) return false;
        i = k;
      }
    } else if (!has_coef) {
      return false;
    }
    if (negative) coef = -coef;
    if (out.size() <= degree) out.resize(degree + 1, mpq_class(0));
    out[degree] += coef;
    if (i < s.size() && s[i] != '+' && s[i] != '-') return false;
  }
  for (auto& c : out) field.reduce(c);
  strip(out);
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

RingSpec RingSpec::prime_field(std::uint64_t p) {
  if (!is_prime(p)) throw Error("GF(" + std::to_string(p) + "): not a prime");
  return RingSpec(RingKind::PrimeField, p);
}

RingSpec RingSpec::poly_over_prime_field(std::uint64_t p) {
  if (!is_prime(p))
    throw Error("GF(" + std::to_string(p) + ")[x]: not a prime");
  return RingSpec(RingKind::PolyOverPrimeField, p);
}

RingSpec RingSpec::parse(std::string_view text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t == "Z" || t == "ZZ") return integers();
  if (t == "Q" || t == "QQ") return rationals();
  if (t == "Q[x]" || t == "QQ[x]") return poly_over_rationals();
  if (t.rfind("GF(", 0) == 0) {
    auto close = t.find(')');
    if (close == std::string::npos) throw Error("bad ring \"" + t + "\"");
    std::uint64_t p = 0;
    auto res = std::from_chars(t.data() + 3, t.data() + close, p);
    if (res.ec != std::errc() || res.ptr != t.data() + close)
      throw Error("bad ring \"" + t + "\"");
    std::string rest = t.substr(close + 1);
    if (rest.empty()) return prime_field(p);
    if (rest == "[x]") return poly_over_prime_field(p);
  }
  throw Error("unknown ring \"" + t + "\"");
}

std::string RingSpec::to_string() const {
  switch (kind_) {
    case RingKind::Integers:
      return "Z";
    case RingKind::Rationals:
      return "Q";
    case RingKind::PrimeField:
      return "GF(" + std::to_string(p_) + ")";
    case RingKind::PolyOverPrimeField:
      return "GF(" + std::to_string(p_) + ")[x]";
    case RingKind::PolyOverRationals:
      return "Q[x]";
  }
  return "?";
}

RingElement RingSpec::zero() const { return from_int(0); }
RingElement RingSpec::one() const { return from_int(1); }

RingElement RingSpec::from_int(long value) const {
  return from_mpz(mpz_class(value));
}

RingElement RingSpec::from_mpz(const mpz_class& value) const {
  switch (kind_) {
    case RingKind::Integers:
    case RingKind::PrimeField: {
      RingElement e(*this, value);
      e.canonicalize();
      return e;
    }
    case RingKind::Rationals:
      return RingElement(*this, mpq_class(value));
    case RingKind::PolyOverPrimeField:
    case RingKind::PolyOverRationals: {
      RingElement e(*this, RingElement::Coefficients{mpq_class(value)});
      e.canonicalize();
      return e;
    }
  }
  return {};
}

RingElement RingSpec::variable() const {
  if (!is_polynomial()) throw Error(to_string() + " has no variable");
  return RingElement(*this,
                     RingElement::Coefficients{mpq_class(0), mpq_class(1)});
}

RingElement RingSpec::parse_element(std::string_view text) const {
  switch (kind_) {
    case RingKind::Integers:
    case RingKind::PrimeField: {
      mpz_class v;
      if (!parse_mpz(text, v)) bad_element(text, *this);
      return from_mpz(v);
    }
    case RingKind::Rationals: {
      mpq_class v;
      if (!parse_mpq(text, v)) bad_element(text, *this);
      return RingElement(*this, v);
    }
    case RingKind::PolyOverPrimeField:
    case RingKind::PolyOverRationals: {
      RingElement::Coefficients c;
      try {
        if (!parse_poly(text, c, CoefficientField{p_})) bad_element(text, *this);
      } catch (const Error&) {
        bad_element(text, *this);
      }
      return RingElement(*this, std::move(c));
    }
  }
  bad_element(text, *this);
}

void RingElement::canonicalize() {
  switch (spec_.kind()) {
    case RingKind::Integers:
      break;
    case RingKind::Rationals:
      std::get<mpq_class>(payload_).canonicalize();
      break;
    case RingKind::PrimeField: {
      auto& v = std::get<mpz_class>(payload_);
      mpz_class m = modulus_of(spec_);
      mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
      break;
    }
    case RingKind::PolyOverPrimeField:
    case RingKind::PolyOverRationals: {
      auto& c = std::get<Coefficients>(payload_);
      CoefficientField f{spec_.characteristic()};
      for (auto& x : c) f.reduce(x);
      strip(c);
      break;
    }
  }
}

const mpz_class& RingElement::integer() const {
  return std::get<mpz_class>(payload_);
}
const mpq_class& RingElement::rational() const {
  return std::get<mpq_class>(payload_);
}
const RingElement::Coefficients& RingElement::coefficients() const {
  return std::get<Coefficients>(payload_);
}
long RingElement::degree() const {
  return static_cast<long>(coefficients().size()) - 1;
}

bool RingElement::is_zero() const {
  switch (spec_.kind()) {
    case RingKind::Integers:
    case RingKind::PrimeField:
      return integer() == 0;
    case RingKind::Rationals:
      return rational() == 0;
    default:
      return coefficients().empty();
  }
}

bool RingElement::is_one() const {
  switch (spec_.kind()) {
    case RingKind::Integers:
    case RingKind::PrimeField:
      return integer() == 1;
    case RingKind::Rationals:
      return rational() == 1;
    default:
      return coefficients().size() == 1 && coefficients()[0] == 1;
  }
}

bool RingElement::is_unit() const {
  switch (spec_.kind()) {
    case RingKind::Integers:
      return integer() == 1 || integer() == -1;
    case RingKind::Rationals:
    case RingKind::PrimeField:
      return !is_zero();
    default:
      return coefficients().size() == 1;
  }
}

mpz_class RingElement::euclid_norm() const {
  switch (spec_.kind()) {
    case RingKind::Integers:
      return abs(integer());
    case RingKind::Rationals:
    case RingKind::PrimeField:
      return is_zero() ? 0 : 1;
    default:
      return mpz_class(static_cast<unsigned long>(coefficients().size()));
  }
}

RingElement RingElement::unit_part() const {
  if (is_zero()) return spec_.one();
  switch (spec_.kind()) {
    case RingKind::Integers:
      return spec_.from_int(integer() < 0 ? -1 : 1);
    case RingKind::Rationals:
    case RingKind::PrimeField:
      return *this;
    default:
      return RingElement(spec_, Coefficients{coefficients().back()});
  }
}

RingElement RingElement::normalized() const {
  if (is_zero()) return *this;
  return *this * unit_part().inverse();
}

RingElement RingElement::inverse() const {
  if (!is_unit()) throw Error(to_string() + " is not a unit in " + spec_.to_string());
  switch (spec_.kind()) {
    case RingKind::Integers:
      return *this;
    case RingKind::Rationals:
      return RingElement(spec_, mpq_class(1 / rational()));
    case RingKind::PrimeField: {
      mpz_class inv;
      mpz_class m = modulus_of(spec_);
      mpz_invert(inv.get_mpz_t(), integer().get_mpz_t(), m.get_mpz_t());
      return RingElement(spec_, inv);
    }
    default: {
      CoefficientField f{spec_.characteristic()};
      return RingElement(spec_, Coefficients{f.inverse(coefficients()[0])});
    }
  }
}

RingElement RingElement::pow(unsigned exponent) const {
  RingElement result = spec_.one();
  RingElement base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

std::string RingElement::to_string() const {
  switch (spec_.kind()) {
    case RingKind::Integers:
    case RingKind::PrimeField:
      return integer().get_str();
    case RingKind::Rationals:
      return rational().get_str();
    default: {
      const auto& c = coefficients();
      if (c.empty()) return "0";
      std::string out;
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        if (!out.empty()) out += " + ";
        out += c[k].get_str();
        if (k == 1) out += "*x";
        if (k > 1) out += "*x^" + std::to_string(k);
      }
      return out;
    }
  }
  return "?";
}

RingElement RingElement::operator-() const {
  RingElement r = spec_.zero();
  r -= *this;
  return r;
}

RingElement& RingElement::operator+=(const RingElement& rhs) {
  switch (spec_.kind()) {
    case RingKind::Integers:
      std::get<mpz_class>(payload_) += rhs.integer();
      break;
    case RingKind::PrimeField:
      std::get<mpz_class>(payload_) += rhs.integer();
      canonicalize();
      break;
    case RingKind::Rationals:
      std::get<mpq_class>(payload_) += rhs.rational();
      break;
    default: {
      auto& c = std::get<Coefficients>(payload_);
      const auto& d = rhs.coefficients();
      if (c.size() < d.size()) c.resize(d.size(), mpq_class(0));
      for (std::size_t k = 0; k < d.size(); ++k) c[k] += d[k];
      canonicalize();
    }
  }
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& rhs) {
  switch (spec_.kind()) {
    case RingKind::Integers:
      std::get<mpz_class>(payload_) -= rhs.integer();
      break;
    case RingKind::PrimeField:
      std::get<mpz_class>(payload_) -= rhs.integer();
      canonicalize();
      break;
    case RingKind::Rationals:
      std::get<mpq_class>(payload_) -= rhs.rational();
      break;
    default: {
      auto& c = std::get<Coefficients>(payload_);
      const auto& d = rhs.coefficients();
      if (c.size() < d.size()) c.resize(d.size(), mpq_class(0));
      for (std::size_t k = 0; k < d.size(); ++k) c[k] -= d[k];
      canonicalize();
    }
  }
  return *this;
}

RingElement& RingElement::operator*=(const RingElement& rhs) {
  switch (spec_.kind()) {
    case RingKind::Integers:
      std::get<mpz_class>(payload_) *= rhs.integer();
      break;
    case RingKind::PrimeField:
      std::get<mpz_class>(payload_) *= rhs.integer();
      canonicalize();
      break;
    case RingKind::Rationals:
      std::get<mpq_class>(payload_) *= rhs.rational();
      break;
    default: {
      const auto& a = coefficients();
      const auto& b = rhs.coefficients();
      if (a.empty() || b.empty()) {
        payload_ = Coefficients{};
        break;
      }
      Coefficients c(a.size() + b.size() - 1, mpq_class(0));
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
      payload_ = std::move(c);
      canonicalize();
    }
  }
  return *this;
}

bool operator==(const RingElement& a, const RingElement& b) {
  return a.spec_ == b.spec_ && a.payload_ == b.payload_;
}

std::pair<RingElement, RingElement> divmod(const RingElement& a,
                                           const RingElement& b) {
  if (b.is_zero()) throw Error("division by zero");
  const RingSpec& spec = a.spec();
  switch (spec.kind()) {
    case RingKind::Integers: {
      // Remainder rounded to the nearest multiple, |r| <= |b|/2.
      mpz_class mag = abs(b.integer());
      mpz_class q;
      mpz_class r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.integer().get_mpz_t(),
                  mag.get_mpz_t());
      if (2 * r > mag) {
        r -= mag;
        q += 1;
      }
      if (b.integer() < 0) q = -q;
      return {RingElement(spec, q), RingElement(spec, r)};
    }
    case RingKind::Rationals:
    case RingKind::PrimeField:
      return {a * b.inverse(), spec.zero()};
    default: {
      CoefficientField f{spec.characteristic()};
      RingElement::Coefficients r = a.coefficients();
      const auto& d = b.coefficients();
      mpq_class lead_inv = f.inverse(d.back());
      RingElement::Coefficients q;
      if (r.size() >= d.size()) q.assign(r.size() - d.size() + 1, mpq_class(0));
      while (r.size() >= d.size() && !r.empty()) {
        std::size_t shift = r.size() - d.size();
        mpq_class factor = r.back() * lead_inv;
        f.reduce(factor);
        q[shift] = factor;
        for (std::size_t k = 0; k < d.size(); ++k) {
          r[shift + k] -= factor * d[k];
          f.reduce(r[shift + k]);
        }
        strip(r);
      }
      strip(q);
      return {RingElement(spec, std::move(q)), RingElement(spec, std::move(r))};
    }
  }
}

bool divides(const RingElement& a, const RingElement& b) {
  if (a.is_zero()) return b.is_zero();
  return divmod(b, a).second.is_zero();
}

RingElement exact_div(const RingElement& b, const RingElement& a) {
  auto [q, r] = divmod(b, a);
  if (!r.is_zero())
    throw Error(a.to_string() + " does not divide " + b.to_string());
  return q;
}

RingElement gcd(const RingElement& a, const RingElement& b) {
  RingElement x = a;
  RingElement y = b;
  while (!y.is_zero()) {
    RingElement r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.normalized();
}

ExtendedGcd extended_gcd(const RingElement& a, const RingElement& b) {
  const RingSpec& spec = a.spec();
  RingElement r0 = a, r1 = b;
  RingElement s0 = spec.one(), s1 = spec.zero();
  RingElement t0 = spec.zero(), t1 = spec.one();
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  RingElement u = r0.unit_part().inverse();
  return {r0 * u, s0 * u, t0 * u};
}

}  // namespace weightkit
