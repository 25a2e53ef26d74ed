#include "weightkit/contra.hpp"

#include <sstream>

namespace weightkit {

namespace {

Matrix basis_vector(const RingSpec& spec, std::size_t n, std::size_t i) {
  Matrix e(spec, n, 1);
  e(i, 0) = spec.one();
  return e;
}

std::string column_text(const Matrix& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.rows(); ++i) {
    if (i) out += ", ";
    out += v(i, 0).to_string();
  }
  return out + "]";
}

// Per torsion summand R/d: g = lim gcd(d, s^n) and the first n reaching it.
struct SPart {
  RingElement g;
  unsigned exponent = 0;
};

SPart s_part(const RingElement& d, const RingElement& s) {
  SPart part{d.spec().one(), 0};
  RingElement power = s;
  for (unsigned n = 1;; ++n) {
    RingElement next = gcd(d, power);
    if (next == part.g) return part;
    part = SPart{next, n};
    power *= s;
  }
}

}  // namespace

ModuleHom TelescopeOperator::truncation(const FpModule& m, std::size_t length) const {
  const RingSpec& spec = m.spec();
  const std::size_t b = m.generators();
  FpModule tower = power(m, length);
  Matrix t = Matrix::identity(spec, b * length);
  for (std::size_t n = 0; n + 1 < length; ++n)
    for (std::size_t i = 0; i < b; ++i) t(n * b + i, (n + 1) * b + i) = -s;
  return ModuleHom(tower, tower, std::move(t));
}

std::vector<Matrix> TelescopeOperator::apply(const std::vector<Matrix>& tower) const {
  std::vector<Matrix> out;
  for (std::size_t n = 0; n < tower.size(); ++n) {
    Matrix v = tower[n];
    if (n + 1 < tower.size()) v -= s * tower[n + 1];
    out.push_back(std::move(v));
  }
  return out;
}

SSplit split_by_s(const FpModule& c, const RingElement& s) {
  if (s.is_zero()) throw Error("split_by_s: s must be nonzero");
  const RingSpec& spec = c.spec();
  std::vector<RingElement> nil, inv;
  unsigned exponent = 0;
  for (const auto& d : c.invariant_factors()) {
    SPart part = s_part(d, s);
    nil.push_back(part.g);
    inv.push_back(exact_div(d, part.g));
    exponent = std::max(exponent, part.exponent);
  }
  return SSplit{c.free_rank(), FpModule::from_cyclics(spec, nil),
                FpModule::from_cyclics(spec, inv), exponent};
}

std::string to_string(ContraCertificate::Kind kind) {
  switch (kind) {
    case ContraCertificate::Kind::Nilpotent: return "nilpotent";
    case ContraCertificate::Kind::ZeroElement: return "zero-element";
    case ContraCertificate::Kind::HomWitness: return "hom-witness";
    case ContraCertificate::Kind::ExtObstruction: return "ext-obstruction";
  }
  return "unknown";
}

std::string ContraCertificate::describe() const {
  const std::string ss = s.to_string();
  switch (kind) {
    case Kind::Nilpotent:
      return ss + "-contramodule: " + ss + "^" + std::to_string(exponent) +
             " kills C and C has no free part";
    case Kind::ZeroElement:
      return "s = 0: R[1/s] = 0, every module is a contramodule";
    case Kind::HomWitness:
      return "not an " + ss + "-contramodule: c = " + column_text(*element) +
             " satisfies " + ss + "*(" + multiplier->to_string() +
             ")*c = c, so c_n = u^n c is a nonzero compatible sequence (Hom != 0)";
    case Kind::ExtObstruction:
      return "not an " + ss + "-contramodule: free generator g = " + column_text(*element) +
             " lies outside " + ss + "C + torsion; the tower (g, 0, 0, ...) has no preimage "
             "under 1 - " + ss + "*shift (Ext^1 != 0)";
  }
  return "";
}

ContraCertificate is_s_contramodule(const FpModule& c, const RingElement& s) {
  ContraCertificate cert;
  cert.s = s;
  if (s.is_zero()) {
    cert.verdict = true;
    cert.kind = ContraCertificate::Kind::ZeroElement;
    cert.exponent = 1;
    return cert;
  }
  if (c.is_zero()) {
    cert.verdict = true;
    cert.kind = ContraCertificate::Kind::Nilpotent;
    cert.exponent = 0;
    return cert;
  }
  const std::size_t t = c.invariant_factors().size();
  if (s.is_unit()) {
    cert.kind = ContraCertificate::Kind::HomWitness;
    cert.element = c.from_normal().column(0);
    cert.multiplier = s.inverse();
    return cert;
  }
  if (c.free_rank() > 0) {
    cert.kind = ContraCertificate::Kind::ExtObstruction;
    cert.element = c.from_normal().column(t);
    return cert;
  }
  unsigned exponent = 0;
  for (std::size_t j = 0; j < t; ++j) {
    const RingElement& d = c.invariant_factors()[j];
    SPart part = s_part(d, s);
    RingElement h = exact_div(d, part.g);
    if (!h.is_unit()) {
      // s is invertible modulo h; g*e_j generates the R/h piece.
      ExtendedGcd eg = extended_gcd(s, h);
      cert.kind = ContraCertificate::Kind::HomWitness;
      cert.element = part.g * c.from_normal().column(j);
      cert.multiplier = eg.s;
      return cert;
    }
    exponent = std::max(exponent, part.exponent);
  }
  cert.verdict = true;
  cert.kind = ContraCertificate::Kind::Nilpotent;
  cert.exponent = exponent;
  return cert;
}

bool verify_certificate(const FpModule& c, const ContraCertificate& cert) {
  const RingSpec& spec = c.spec();
  const RingElement& s = cert.s;
  const std::size_t b = c.generators();
  switch (cert.kind) {
    case ContraCertificate::Kind::Nilpotent: {
      if (!cert.verdict || s.is_zero()) return false;
      RingElement sn = s.pow(cert.exponent);
      for (std::size_t j = 0; j < b; ++j)
        if (!c.is_zero_element(sn * basis_vector(spec, b, j))) return false;
      return true;
    }
    case ContraCertificate::Kind::ZeroElement:
      return cert.verdict && s.is_zero();
    case ContraCertificate::Kind::HomWitness: {
      if (cert.verdict || !cert.element || !cert.multiplier) return false;
      const Matrix& x = *cert.element;
      if (x.rows() != b || c.is_zero_element(x)) return false;
      return c.is_zero_element(s * *cert.multiplier * x - x);
    }
    case ContraCertificate::Kind::ExtObstruction: {
      if (cert.verdict || !cert.element || s.is_zero() || s.is_unit()) return false;
      const Matrix& g = *cert.element;
      if (g.rows() != b) return false;
      const std::size_t t = c.invariant_factors().size();
      Matrix span = hstack(s * Matrix::identity(spec, b), c.relation_columns());
      span = hstack(span, c.from_normal().columns(0, t));
      return !LinearSystem(span).in_span(g);
    }
  }
  return false;
}

std::string IdealCertificate::describe() const {
  if (vacuous) return "empty generator list: I = 0, true vacuously";
  if (failing) return "fails at generator " + per_generator[*failing].s.to_string() + ": " +
                      per_generator[*failing].describe();
  std::string out = "contramodule for every generator:";
  for (const auto& c : per_generator)
    out += " " + c.s.to_string() + "^" + std::to_string(c.exponent);
  return out;
}

IdealCertificate is_ideal_contramodule(const FpModule& c, const std::vector<RingElement>& gens) {
  IdealCertificate cert;
  cert.vacuous = gens.empty();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    cert.per_generator.push_back(is_s_contramodule(c, gens[k]));
    if (!cert.per_generator.back().verdict && !cert.failing) {
      cert.failing = k;
      cert.verdict = false;
    }
  }
  return cert;
}

std::string CompletedModule::describe() const {
  std::ostringstream out;
  const std::string ring = s.spec().to_string() + "^_(" + s.to_string() + ")";
  bool any = false;
  if (completed_rank > 0) {
    out << ring;
    if (completed_rank > 1) out << "^" << completed_rank;
    any = true;
  }
  if (!finite_part.is_zero()) {
    if (any) out << " + ";
    out << finite_part.describe();
    any = true;
  }
  if (!any) out << "0";
  if (!killed_part.is_zero()) out << "  [killed: " << killed_part.describe() << "]";
  return out.str();
}

CompletedModule delta_completion(const FpModule& c, const RingElement& s) {
  const RingSpec& spec = c.spec();
  CompletedModule out;
  out.s = s;
  if (s.is_unit()) {
    out.finite_part = FpModule::zero(spec);
    out.killed_part = c.normalize();
    return out;
  }
  if (s.is_zero()) {
    out.completed_rank = c.free_rank();
    out.finite_part = FpModule::from_invariants(spec, 0, c.invariant_factors());
    out.killed_part = FpModule::zero(spec);
    out.exponent = 1;
    return out;
  }
  SSplit split = split_by_s(c, s);
  out.completed_rank = split.free_rank;
  out.finite_part = split.nilpotent;
  out.killed_part = split.invertible;
  out.exponent = split.exponent;
  return out;
}

FpModule reduce_completed(const CompletedModule& c, unsigned level) {
  const RingSpec& spec = c.s.spec();
  RingElement sn = c.s.pow(level);
  std::vector<RingElement> orders(c.completed_rank, sn);
  for (const auto& g : c.finite_part.invariant_factors()) orders.push_back(gcd(g, sn));
  return FpModule::from_cyclics(spec, orders);
}

FpModule hom_from_completed(const CompletedModule& c, const FpModule& n) {
  ContraCertificate cert = is_s_contramodule(n, c.s);
  if (!cert.verdict)
    throw Error("hom_from_completed: target is not an " + c.s.to_string() +
                "-contramodule (" + cert.describe() + ")");
  return hom_module(reduce_completed(c, std::max(cert.exponent, 1u)), n);
}

bool FlatnessReport::passed() const {
  for (const auto& e : entries)
    if (!e.tor1_zero) return false;
  return true;
}

FlatnessReport verify_flatness(const RingElement& s, const std::vector<FpModule>& samples,
                               std::size_t max_length) {
  if (s.is_zero()) throw Error("verify_flatness: s must be nonzero");
  const RingSpec& spec = s.spec();
  TelescopeOperator op{s};
  FlatnessReport report;
  report.s = s;
  for (const auto& m : samples) {
    FlatnessEntry entry;
    entry.module = m.describe();
    entry.tor1_zero = true;
    for (std::size_t len = 1; len <= max_length; ++len) {
      ModuleHom t = op.truncation(m, len);
      // Unipotent upper triangular: identity blocks on the diagonal and
      // nothing below it.
      bool triangular = true;
      const Matrix& a = t.matrix();
      for (std::size_t i = 0; i < a.rows() && triangular; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
          const RingElement expected = i == j ? spec.one() : spec.zero();
          if (!(a(i, j) == expected)) {
            triangular = false;
            break;
          }
        }
      const bool trivial_kernel = kernel(t).module.is_zero();
      if (!triangular || !trivial_kernel) entry.tor1_zero = false;
      entry.lengths.push_back(len);
    }
    entry.proof = entry.tor1_zero
                      ? "1 - " + s.to_string() +
                            "*shift on towers of length 1.." + std::to_string(max_length) +
                            " is unipotent upper triangular with zero kernel; back-substitution "
                            "from the top slot forces every entry of a finite-support kernel "
                            "tower to vanish, so Tor_1(R[1/s], M) = 0"
                      : "truncated operator failed the triangularity or kernel check";
    report.entries.push_back(std::move(entry));
  }
  report.multiplication = "R[1/s] (x) R[1/s] -> R[1/s] is bijective: (a/s^m) (x) (b/s^n) = "
                          "(ab/s^(m+n)) (x) 1 for every pure tensor";
  return report;
}

}  // namespace weightkit
