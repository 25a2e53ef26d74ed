#include "weightkit/hearts.hpp"

#include <algorithm>

namespace weightkit {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

FpModule free_quotient(const RingSpec& spec, std::size_t k, const RingElement& r) {
  return FpModule(spec, k, r * Matrix::identity(spec, k));
}

// Hom(R[1/f], N) for finitely generated N: the part of N on which f is
// invertible (compatible sequences live in the stable image of f).
FpModule hom_from_localization(const FpModule& n, const RingElement& f) {
  if (f.is_unit()) return n;
  if (f.is_zero()) return FpModule::zero(n.spec());
  return split_by_s(n, f).invertible;
}

std::string check(bool ok, const std::string& what) { return (ok ? "ok: " : "FAILED: ") + what; }

}  // namespace

// ---------------------------------------------------------------- specs

LocalizationSpec LocalizationSpec::matrices(RingSpec ring, std::vector<Matrix> mats) {
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const Matrix& m = mats[k];
    if (!m.is_square())
      throw Error("matrix " + std::to_string(k) + " is " + std::to_string(m.rows()) + "x" +
                  std::to_string(m.cols()) + "; localization matrices must be square");
    if (m.rows() > 0 && !(m.spec() == ring))
      throw Error("matrix " + std::to_string(k) + " lives in a different ring");
    if (determinant(m).is_zero())
      throw Error("matrix " + std::to_string(k) + " has zero determinant");
  }
  LocalizationSpec s;
  s.variant_ = Variant::MatrixFamily;
  s.ring_ = ring;
  s.mats_ = std::move(mats);
  return s;
}

LocalizationSpec LocalizationSpec::telescope(RingSpec ring, std::vector<RingElement> gens) {
  if (gens.empty()) throw Error("telescope localization needs at least one generator");
  for (const auto& g : gens)
    if (!(g.spec() == ring)) throw Error("generator " + g.to_string() + " lives in a different ring");
  LocalizationSpec s;
  s.variant_ = Variant::Telescope;
  s.ring_ = ring;
  s.gens_ = std::move(gens);
  return s;
}

std::string LocalizationSpec::describe() const {
  std::vector<std::string> parts;
  if (variant_ == Variant::MatrixFamily) {
    for (const auto& m : mats_) parts.push_back(m.to_string());
    return "matrices{" + join(parts, ", ") + "}";
  }
  for (const auto& g : gens_) parts.push_back(g.to_string());
  return "telescope{" + join(parts, ", ") + "}";
}

// ---------------------------------------------------------------- R[1/f]

LocalizedRing::LocalizedRing(RingSpec base, RingElement f)
    : base_(base), f_(f.normalized()) {
  if (f_.is_zero()) throw Error("cannot invert zero");
}

LocalizedRing::Fraction LocalizedRing::fraction(const RingElement& a, unsigned power) const {
  if (a.is_zero()) return Fraction{base_.zero(), 0};
  RingElement num = a;
  while (power > 0 && divides(f_, num)) {
    num = exact_div(num, f_);
    --power;
  }
  return Fraction{num, power};
}

LocalizedRing::Fraction LocalizedRing::add(const Fraction& x, const Fraction& y) const {
  return fraction(x.numerator * f_.pow(y.power) + y.numerator * f_.pow(x.power),
                  x.power + y.power);
}

LocalizedRing::Fraction LocalizedRing::multiply(const Fraction& x, const Fraction& y) const {
  return fraction(x.numerator * y.numerator, x.power + y.power);
}

bool LocalizedRing::is_unit(const Fraction& x) const {
  if (x.numerator.is_zero()) return false;
  // a | f^n for large n iff the gcd chain gcd(a, f^n) reaches a.
  RingElement target = x.numerator.normalized();
  RingElement g = base_.one();
  RingElement power = f_;
  while (true) {
    RingElement next = gcd(target, power);
    if (next == target) return true;
    if (next == g) return false;
    g = next;
    power *= f_;
  }
}

std::string LocalizedRing::to_string(const Fraction& x) const {
  if (x.power == 0) return x.numerator.to_string();
  std::string den = "(" + f_.to_string() + ")";
  if (x.power > 1) den += "^" + std::to_string(x.power);
  return "(" + x.numerator.to_string() + ")/" + den;
}

std::string LocalizedRing::describe() const {
  if (f_.is_one()) return base_.to_string();
  return base_.to_string() + "[1/" + f_.to_string() + "]";
}

LocalizedRing universal_localization(const LocalizationSpec& spec) {
  if (spec.variant() != LocalizationSpec::Variant::MatrixFamily)
    throw Error("universal_localization needs a matrix family");
  RingElement f = spec.ring().one();
  for (const auto& m : spec.mats()) f *= determinant(m);
  return LocalizedRing(spec.ring(), f);
}

bool acts_invertibly(const FpModule& n, const RingElement& r) {
  return hom_map_bijective(ModuleHom::scalar(n, r)).bijective;
}

// ---------------------------------------------------------------- membership

std::string HeartVerdict::describe() const {
  if (variant == LocalizationSpec::Variant::Telescope) return contra ? contra->describe() : "";
  if (member) return "precomposition with every matrix is bijective";
  std::string out = "precomposition with matrix " + std::to_string(*failing) + " is not bijective";
  if (map_witness && map_witness->kernel_element)
    out += "; kernel element " + map_witness->kernel_element->transpose().to_string();
  if (map_witness && map_witness->cokernel_representative)
    out += "; not hit: " + map_witness->cokernel_representative->transpose().to_string();
  return out;
}

HeartVerdict heart_membership(const FpModule& n, const LocalizationSpec& spec) {
  HeartVerdict v;
  v.variant = spec.variant();
  if (spec.variant() == LocalizationSpec::Variant::Telescope) {
    v.contra = is_ideal_contramodule(n, spec.gens());
    v.member = v.contra->verdict;
    v.failing = v.contra->failing;
    return v;
  }
  // N^b -> N^a splits along the cyclic normal summands of N; a witness on
  // one summand is carried back to the given generators blockwise.
  const RingSpec& ring = spec.ring();
  const std::vector<RingElement> orders = n.summand_orders();
  const std::size_t g = n.generators();
  for (std::size_t k = 0; k < spec.mats().size(); ++k) {
    const Matrix& sigma = spec.mats()[k];
    const std::size_t a = sigma.cols();
    const std::size_t b = sigma.rows();
    for (std::size_t j = 0; j < orders.size(); ++j) {
      // The map is between isomorphic modules (a = b), so surjectivity
      // already forces injectivity: (R/d)^a = <d e_i, rows of sigma> suffices.
      const Matrix span = vstack(orders[j] * Matrix::identity(ring, a), sigma);
      const auto& factors = smith_normal_form(span).invariant_factors;
      if (factors.size() == a &&
          std::all_of(factors.begin(), factors.end(), [](const auto& d) { return d.is_unit(); }))
        continue;
      BijectivityCertificate cert = hom_map_bijective(ModuleHom(
          free_quotient(ring, b, orders[j]), free_quotient(ring, a, orders[j]), sigma.transpose()));
      const Matrix gen = n.from_normal().column(j);
      auto lift = [&](const Matrix& x) {
        Matrix out(ring, g * x.rows(), 1);
        for (std::size_t t = 0; t < x.rows(); ++t)
          for (std::size_t i = 0; i < g; ++i) out(t * g + i, 0) = gen(i, 0) * x(t, 0);
        return out;
      };
      if (cert.kernel_element) cert.kernel_element = lift(*cert.kernel_element);
      if (cert.cokernel_representative)
        cert.cokernel_representative = lift(*cert.cokernel_representative);
      v.member = false;
      v.failing = k;
      v.map_witness = std::move(cert);
      return v;
    }
  }
  return v;
}

ConeTest::ConeTest(const LocalizationSpec& spec) {
  if (spec.variant() != LocalizationSpec::Variant::MatrixFamily)
    throw Error("the cone test needs a matrix family: telescope cones have infinite rank, use "
                "the contramodule certificates instead");
  const RingSpec& ring = spec.ring();
  for (const Matrix& sigma : spec.mats()) {
    ChainComplex src = ChainComplex::concentrated(ring, 0, sigma.cols());
    ChainComplex dst = ChainComplex::concentrated(ring, 0, sigma.rows());
    ChainComplex u = cone(ChainMap(src, dst, [&](int) { return sigma; }));
    cohomology_.emplace_back(homology(u, 0), homology(u, -1));
  }
}

ConeVerdict ConeTest::operator()(const FpModule& n) const {
  ConeVerdict v;
  for (std::size_t k = 0; k < cohomology_.size(); ++k) {
    const auto& [h0, hm1] = cohomology_[k];
    std::string reason;
    if (FpModule h = hom_module(h0, n); !h.is_zero())
      reason = "Hom(H^0, N) = " + h.describe();
    else if (FpModule e = ext1(h0, n); !e.is_zero())
      reason = "Ext^1(H^0, N) = " + e.describe();
    else if (FpModule h1 = hom_module(hm1, n); !h1.is_zero())
      reason = "Hom(H^-1, N) = " + h1.describe();
    if (!reason.empty()) {
      v.member = false;
      v.failing = k;
      v.reason = "cone of matrix " + std::to_string(k) + ": " + reason;
      return v;
    }
  }
  return v;
}

ConeVerdict heart_membership_via_cone(const FpModule& n, const LocalizationSpec& spec) {
  return ConeTest(spec)(n);
}

LocalComplexVerdict is_local_complex(const ChainComplex& m, const LocalizationSpec& spec) {
  LocalComplexVerdict v;
  for (int i = m.lo(); i <= m.hi(); ++i) {
    HeartVerdict h = heart_membership(homology(m, i), spec);
    if (!h.member) v.local = false;
    v.per_degree.emplace_back(i, std::move(h));
  }
  return v;
}

// ---------------------------------------------------------------- square

bool SquareReport::passed() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const SquareEntry& e) { return e.skipped || e.passed; });
}

SquareReport verify_square(std::size_t k, const LocalizationSpec& spec,
                           const std::vector<FpModule>& tests, unsigned max_level) {
  const RingSpec& ring = spec.ring();
  SquareReport report;
  report.rank = k;
  report.max_level = max_level;
  const FpModule p = FpModule::free(ring, k);
  for (const auto& n : tests) {
    SquareEntry e;
    e.test = n.describe();
    HeartVerdict member = heart_membership(n, spec);
    if (!member.member) {
      e.skipped = true;
      e.checks.push_back("skipped: not in the heart (" + member.describe() + ")");
      report.entries.push_back(std::move(e));
      continue;
    }
    auto record = [&](bool ok, const std::string& what) {
      e.checks.push_back(check(ok, what));
      if (!ok) e.passed = false;
    };
    const FpModule nk = power(n, k);
    const FpModule direct = hom_presented(p, n);
    record(is_isomorphic(direct, nk), "Hom(P, N) = " + direct.describe());
    if (spec.variant() == LocalizationSpec::Variant::MatrixFamily) {
      LocalizedRing u = universal_localization(spec);
      e.checks.push_back("U (x) P = U^" + std::to_string(k) + " over U = " + u.describe());
      FpModule via_u = power(hom_from_localization(n, u.inverted()), k);
      record(is_isomorphic(via_u, nk), "Hom(U^k, N) = " + via_u.describe() + " = N^k");
      record(is_isomorphic(via_u, direct), "Hom(U^k, N) = Hom(P, N)");
    } else {
      for (const auto& s : spec.gens()) {
        CompletedModule hat = delta_completion(p, s);
        FpModule via_hat = hom_from_completed(hat, n);
        const std::string tag = "[s = " + s.to_string() + "] ";
        record(is_isomorphic(via_hat, nk),
               tag + "Hom(Delta(P), N) = " + via_hat.describe() + " = N^k");
        record(is_isomorphic(via_hat, direct), tag + "Hom(Delta(P), N) = Hom(P, N)");
        for (unsigned level = 1; level <= max_level; ++level) {
          FpModule red = reduce_completed(hat, level);
          record(is_isomorphic(red, free_quotient(ring, k, s.pow(level))),
                 tag + "Delta(P)/s^" + std::to_string(level) + " = " + red.describe());
        }
      }
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

// ---------------------------------------------------------------- projectives

std::string exactness_failure(const ShortExactSequence& ses) {
  const ModuleHom& i = ses.inclusion;
  const ModuleHom& p = ses.projection;
  if (!(i.target().generators() == p.source().generators()) ||
      !(i.target().relations() == p.source().relations()))
    return "middle terms differ";
  if (!kernel(i).module.is_zero()) return "not injective at A";
  if (!cokernel(p).is_zero()) return "not surjective at C";
  if (!compose(p, i).is_zero()) return "projection o inclusion != 0 at B";
  Subquotient ker = kernel(p);
  Matrix span = hstack(i.matrix(), i.target().relation_columns());
  if (!LinearSystem(span).in_span(ker.basis)) return "kernel of projection exceeds image at B";
  return "";
}

bool ProjectivityReport::passed() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ProjectivityEntry& e) { return e.exact; });
}

ProjectivityReport verify_heart_projectives(const LocalizationSpec& spec, std::size_t k_max,
                                            const std::vector<ShortExactSequence>& samples) {
  if (spec.variant() != LocalizationSpec::Variant::Telescope)
    throw Error("verify_heart_projectives needs a telescope spec");
  const RingSpec& ring = spec.ring();
  ProjectivityReport report;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const ShortExactSequence& ses = samples[j];
    std::string bad = exactness_failure(ses);
    if (!bad.empty()) throw Error("sample " + std::to_string(j) + ": " + bad);
    const FpModule terms[3] = {ses.inclusion.source(), ses.inclusion.target(),
                               ses.projection.target()};
    const char* names[3] = {"A", "B", "C"};
    for (int t = 0; t < 3; ++t)
      if (!heart_membership(terms[t], spec).member)
        throw Error("sample " + std::to_string(j) + ": term " + names[t] + " = " +
                    terms[t].describe() + " is not in the heart");
    for (const auto& s : spec.gens()) {
      unsigned e = 1;
      for (const auto& t : terms) e = std::max(e, is_s_contramodule(t, s).exponent);
      for (std::size_t k = 0; k <= k_max; ++k) {
        CompletedModule hat = delta_completion(FpModule::free(ring, k), s);
        FpModule q = reduce_completed(hat, e);
        ModuleHom hi = hom_covariant(q, ses.inclusion);
        ModuleHom hp = hom_covariant(q, ses.projection);
        ProjectivityEntry entry;
        entry.sequence = j;
        entry.rank = k;
        entry.generator = s;
        entry.exact = exactness_failure(ShortExactSequence{hi, hp}).empty() &&
                      is_isomorphic(hi.source(), hom_from_completed(hat, terms[0])) &&
                      is_isomorphic(hi.target(), hom_from_completed(hat, terms[1])) &&
                      is_isomorphic(hp.target(), hom_from_completed(hat, terms[2]));
        entry.image = hi.source().describe() + " -> " + hi.target().describe() + " -> " +
                      hp.target().describe();
        report.entries.push_back(std::move(entry));
      }
    }
  }
  return report;
}

std::vector<ShortExactSequence> sample_heart_sequences(const LocalizationSpec& spec,
                                                       std::size_t count, Rng& rng) {
  if (spec.variant() != LocalizationSpec::Variant::Telescope)
    throw Error("sample_heart_sequences needs a telescope spec");
  const RingSpec& ring = spec.ring();
  // Members are killed by a power of g = gcd(gens); g = 0 admits everything.
  RingElement g = ring.zero();
  for (const auto& x : spec.gens()) g = gcd(g, x);
  const bool unit = g.is_unit();
  if (g.is_zero()) g = ring.from_int(2);
  std::uniform_int_distribution<int> summands(1, 3), expo(1, 3), gens(1, 3);
  std::vector<ShortExactSequence> out;
  while (out.size() < count) {
    std::vector<RingElement> orders;
    if (!unit) {
      const int t = summands(rng);
      for (int i = 0; i < t; ++i) orders.push_back(g.pow(static_cast<unsigned>(expo(rng))));
    }
    FpModule b = FpModule::from_cyclics(ring, orders);
    const std::size_t m = static_cast<std::size_t>(gens(rng));
    Matrix h = random_matrix(ring, b.generators(), m, rng, 3);
    Subquotient a = image(ModuleHom(FpModule::free(ring, m), b, h));
    ModuleHom incl(a.module, b, a.basis);
    FpModule c = cokernel(incl);
    ModuleHom proj(b, c, Matrix::identity(ring, b.generators()));
    out.push_back(ShortExactSequence{incl, proj});
  }
  return out;
}

}  // namespace weightkit
