#include "weightkit/battery.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "weightkit/contra.hpp"
#include "weightkit/group_samples.hpp"
#include "weightkit/hearts.hpp"
#include "weightkit/lim_oracle.hpp"
#include "weightkit/smith.hpp"

namespace weightkit {

namespace {

constexpr std::size_t kMaxNotes = 5;

const RingSpec Z = RingSpec::integers();

RingElement z(long v) { return Z.from_int(v); }

// Accumulates cases and the first few failure notes for one criterion.
struct Tally {
  CriterionResult& r;
  void check(bool ok, const std::function<std::string()>& note) {
    ++r.cases;
    if (ok) return;
    ++r.failures;
    if (r.notes.size() < kMaxNotes) r.notes.push_back(note());
  }
  void remark(std::string text) { r.notes.push_back(std::move(text)); }
};

FpModule zmod(long d) { return FpModule::cyclic(z(d)); }

std::vector<FpModule> scrambled_groups(long lo, long hi, std::size_t max_len,
                                       std::size_t max_free, Rng& rng) {
  std::vector<FpModule> out;
  for (const auto& g : samples::group_shapes(lo, hi, max_len, max_free))
    out.push_back(samples::scrambled_group(g, rng));
  return out;
}

// [R^r -> R^gens] on a basis of the relation submodule, so the map is
// injective and the complex resolves n placed in degree 0.
ChainComplex placed_resolution(const FpModule& n) {
  return ChainComplex::two_term(LinearSystem(n.relation_columns()).image(), -1);
}

std::vector<Matrix> exhaustive_square_matrices(long bound) {
  std::vector<Matrix> out;
  for (long a = -bound; a <= bound; ++a)
    if (a != 0) out.push_back(Matrix::from_ints(Z, {{a}}));
  for (long a = -bound; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b)
      for (long c = -bound; c <= bound; ++c)
        for (long d = -bound; d <= bound; ++d)
          if (a * d - b * c != 0) out.push_back(Matrix::from_ints(Z, {{a, b}, {c, d}}));
  return out;
}

// ---------------------------------------------------------------- 1

bool valid_smith(const Matrix& a, const SmithDecomposition& s) {
  const RingSpec& spec = a.spec();
  if (!(s.U * a * s.V == s.D)) return false;
  if (!(s.U * s.U_inv == Matrix::identity(spec, a.rows()))) return false;
  if (!(s.V * s.V_inv == Matrix::identity(spec, a.cols()))) return false;
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j) {
      const RingElement& e = s.D(i, j);
      if (i != j || i >= s.rank()) {
        if (!e.is_zero()) return false;
      } else if (!(e == s.invariant_factors[i]) || e.is_zero() || !(e == e.normalized())) {
        return false;
      }
    }
  for (std::size_t i = 1; i < s.rank(); ++i)
    if (!divides(s.invariant_factors[i - 1], s.invariant_factors[i])) return false;
  return true;
}

void smith_soundness(Tally& t, Rng& rng) {
  const std::vector<RingSpec> specs{RingSpec::integers(), RingSpec::rationals(),
                                    RingSpec::prime_field(7), RingSpec::poly_over_prime_field(3),
                                    RingSpec::poly_over_rationals()};
  std::uniform_int_distribution<int> dim(0, 5);
  for (const auto& spec : specs)
    for (int trial = 0; trial < 1000; ++trial) {
      Matrix a = random_matrix(spec, dim(rng), dim(rng), rng, spec.is_polynomial() ? 3 : 12);
      t.check(valid_smith(a, smith_normal_form(a)),
              [&] { return spec.to_string() + ": " + a.to_string(); });
    }
}

// ---------------------------------------------------------------- 2

void weight_axioms(Tally& t, Rng& rng) {
  std::vector<ChainComplex> sample = exhaustive_two_term(4, 2);
  std::uniform_int_distribution<int> lo(-3, 1), length(1, 4);
  for (int i = 0; i < 200; ++i) sample.push_back(random_complex(Z, rng, lo(rng), length(rng), 3, 4));
  // Supports lie in [-3, 4]; these cuts cover every position.
  WeightAxiomReport report = verify_weight_axioms(sample, -5, 4);
  t.r.cases = report.checks;
  t.r.failures = report.violations.size();
  for (std::size_t i = 0; i < std::min(kMaxNotes, report.violations.size()); ++i)
    t.r.notes.push_back(report.violations[i]);
}

// ---------------------------------------------------------------- 3

struct ConeKey {
  std::vector<std::string> factors;
  std::size_t coker_rank = 0;
  std::size_t ker_rank = 0;
  friend auto operator<=>(const ConeKey&, const ConeKey&) = default;
};

void cone_classification(Tally& t) {
  std::map<ConeKey, std::vector<ChainComplex>> classes;
  for (const ChainComplex& m : exhaustive_two_term(4, 2)) {
    const Matrix f = m.differential(-1);
    const ChainComplex a = ChainComplex::concentrated(Z, 0, f.cols());
    const ChainComplex b = ChainComplex::concentrated(Z, 0, f.rows());
    const ChainComplex c = cone(ChainMap(a, b, [&](int) { return f; }));
    ConeKey key;
    const auto snf = smith_normal_form(f);
    for (const auto& d : snf.invariant_factors)
      if (!d.is_unit()) key.factors.push_back(d.to_string());
    key.coker_rank = f.rows() - snf.rank();
    key.ker_rank = f.cols() - snf.rank();
    classes[key].push_back(c);
  }
  // Members against their class representative with an explicit witness,
  // representatives against each other: by transitivity this is the full
  // pairwise comparison.
  std::vector<const ChainComplex*> reps;
  for (const auto& [key, members] : classes) {
    const ChainComplex& rep = members.front();
    reps.push_back(&rep);
    for (const auto& m : members) {
      auto witness = homotopy_equivalence(m, rep);
      t.check(witness && witness->verify() && homotopy_equivalent(m, rep),
              [&] { return "same invariants, not equivalent: " + m.to_string(); });
    }
  }
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j)
      t.check(!homotopy_equivalent(*reps[i], *reps[j]) && !homotopy_equivalence(*reps[i], *reps[j]),
              [&] { return "different invariants, equivalent: " + reps[i]->to_string(); });
  t.remark(std::to_string(classes.size()) + " classes");
}

// ---------------------------------------------------------------- 4

void pd_weight(Tally& t, Rng& rng) {
  std::vector<FpModule> modules = scrambled_groups(2, 16, 3, 2, rng);
  modules.push_back(FpModule::zero(Z));
  for (int i = 0; i < 100; ++i) {
    std::uniform_int_distribution<int> dim(0, 3);
    const std::size_t g = dim(rng);
    modules.push_back(FpModule(Z, g, random_matrix(Z, dim(rng), g, rng, 6)));
  }
  for (const auto& n : modules) {
    const auto w = weight_range(placed_resolution(n));
    const ProjectiveDimension pd = projective_dimension(n);
    bool ok = false;
    if (pd == ProjectiveDimension::MinusInfinity) ok = !w.has_value();
    else ok = w && w->first == 0 && w->second == (pd == ProjectiveDimension::One ? 1 : 0);
    t.check(ok, [&] { return n.describe() + ": pd " + to_string(pd); });
  }
}

// ---------------------------------------------------------------- 5

void contra_oracle(Tally& t, Rng& rng) {
  for (const auto& shape : samples::group_shapes(2, 16, 3, 2)) {
    const FpModule c = samples::scrambled_group(shape, rng);
    for (long s : {2, 3, 4, 6}) {
      const ContraCertificate cert = is_s_contramodule(c, z(s));
      const auto lim = oracle::lim_oracle(c.relation_columns(), z(s),
                                          samples::prime_length(shape) + 2);
      t.check(cert.verdict == lim.contramodule() && verify_certificate(c, cert),
              [&] { return c.describe() + " s=" + std::to_string(s) + ": " + cert.describe(); });
    }
  }
}

// ---------------------------------------------------------------- 6

void predicate_equivalence(Tally& t, Rng& rng) {
  const std::vector<FpModule> modules = scrambled_groups(2, 16, 2, 1, rng);
  std::size_t members = 0;
  for (const auto& sigma : exhaustive_square_matrices(4)) {
    const LocalizationSpec spec = LocalizationSpec::matrices(Z, {sigma});
    const ConeTest via_cone(spec);
    for (const auto& n : modules) {
      const bool a = heart_membership(n, spec).member;
      members += a;
      t.check(a == via_cone(n).member,
              [&] { return sigma.to_string() + " on " + n.describe(); });
    }
  }
  t.remark(std::to_string(members) + " member pairs");
}

// ---------------------------------------------------------------- 7

// Oracle for membership of a module: element telescopes through lim/lim^1,
// single matrices through determinant action.
bool expected_member(const FpModule& n, const LocalizationSpec& spec) {
  if (spec.variant() == LocalizationSpec::Variant::Telescope) {
    for (const auto& s : spec.gens())
      if (!oracle::lim_oracle(n.relation_columns(), s, 16).contramodule()) return false;
    return true;
  }
  for (const auto& m : spec.mats())
    if (!acts_invertibly(n, determinant(m))) return false;
  return true;
}

void local_complexes(Tally& t, Rng& rng) {
  const std::vector<LocalizationSpec> specs = {
      LocalizationSpec::telescope(Z, {z(2)}), LocalizationSpec::telescope(Z, {z(3)}),
      LocalizationSpec::telescope(Z, {z(6)}), LocalizationSpec::matrices(Z, {Matrix::from_ints(Z, {{2}})}),
      LocalizationSpec::matrices(Z, {Matrix::from_ints(Z, {{1, 1}, {0, 3}})})};
  // Pieces biased towards groups that are members for some spec.
  std::vector<FpModule> pieces = scrambled_groups(2, 16, 2, 0, rng);
  for (long d : {4, 8, 9, 27, 5, 25}) pieces.push_back(zmod(d));
  std::uniform_int_distribution<std::size_t> pick_spec(0, specs.size() - 1),
      pick_piece(0, pieces.size() - 1);
  std::uniform_int_distribution<int> count(1, 3), degree(-2, 2), coin(0, 3);
  std::size_t positives = 0, negatives = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const LocalizationSpec& spec = specs[pick_spec(rng)];
    ChainComplex m = ChainComplex::zero(Z);
    bool expected = true;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
      FpModule n = pieces[pick_piece(rng)];
      // Steer half of the trials towards members.
      if (trial % 2 == 0) {
        for (int tries = 0; tries < 20 && !expected_member(n, spec); ++tries)
          n = pieces[pick_piece(rng)];
      }
      expected = expected && expected_member(n, spec);
      m = direct_sum(m, placed_resolution(n).shift(degree(rng)));
    }
    if (coin(rng) == 0) m = direct_sum(m, ChainComplex::two_term(Matrix::from_ints(Z, {{-1}}), degree(rng)));
    m = scramble(m, rng);
    (expected ? positives : negatives)++;
    t.check(is_local_complex(m, spec).local == expected,
            [&] { return spec.describe() + ": " + m.to_string(); });
  }
  t.remark(std::to_string(positives) + " positive, " + std::to_string(negatives) + " negative");
  t.check(positives > 0 && negatives > 0, [] { return "battery lacks one polarity"; });
}

// ---------------------------------------------------------------- 8

void square(Tally& t, unsigned max_level) {
  const std::vector<FpModule> tests = {zmod(2), zmod(4), zmod(8), zmod(9), zmod(25)};
  std::size_t evaluated = 0;
  auto run = [&](std::size_t k, const LocalizationSpec& spec, const std::vector<FpModule>& tests) {
    SquareReport r = verify_square(k, spec, tests, max_level);
    for (const auto& e : r.entries) {
      evaluated += !e.skipped;
      t.check(e.passed, [&] {
        return spec.describe() + " k=" + std::to_string(k) + " " + e.test + ": " +
               (e.checks.empty() ? "" : e.checks.back());
      });
    }
  };
  for (std::size_t k = 0; k <= 3; ++k) {
    for (long s : {2, 3, 5}) run(k, LocalizationSpec::telescope(Z, {z(s)}), tests);
    run(k, LocalizationSpec::matrices(Z, {Matrix::from_ints(Z, {{2}})}),
        {zmod(3), zmod(5), zmod(9), zmod(25), FpModule::from_cyclics(Z, {z(3), z(9)})});
    run(k, LocalizationSpec::matrices(Z, {Matrix::from_ints(Z, {{1, 1}, {0, 3}})}),
        {zmod(2), zmod(4), zmod(8), zmod(25)});
  }
  t.remark(std::to_string(evaluated) + " evaluated entries");
}

// ---------------------------------------------------------------- 9

void projectives(Tally& t, Rng& rng) {
  for (long s : {2, 3, 5, 6}) {
    const LocalizationSpec spec = LocalizationSpec::telescope(Z, {z(s)});
    const auto seqs = sample_heart_sequences(spec, 20, rng);
    const ProjectivityReport r = verify_heart_projectives(spec, 3, seqs);
    for (const auto& e : r.entries)
      t.check(e.exact, [&] {
        return spec.describe() + " sequence " + std::to_string(e.sequence) + " k=" +
               std::to_string(e.rank) + ": " + e.image;
      });
  }
}

// ---------------------------------------------------------------- 10

void flatness(Tally& t, Rng& rng) {
  std::vector<FpModule> samples;
  std::uniform_int_distribution<int> gens(1, 3), rels(0, 3);
  while (samples.size() < 50) {
    const std::size_t g = gens(rng);
    samples.push_back(FpModule(Z, g, random_matrix(Z, rels(rng), g, rng, 8)));
  }
  for (long s : {2, 3, 6}) {
    const FlatnessReport r = verify_flatness(z(s), samples);
    for (std::size_t i = 0; i < r.entries.size(); ++i)
      t.check(r.entries[i].tor1_zero,
              [&] { return "s=" + std::to_string(s) + " " + samples[i].describe(); });
    t.check(r.passed(), [&] { return "s=" + std::to_string(s) + ": " + r.multiplication; });
  }
}

// ---------------------------------------------------------------- 11

void cross_path(Tally& t, Rng& rng) {
  for (const auto& shape : samples::group_shapes(2, 16, 3, 2)) {
    const FpModule n = samples::scrambled_group(shape, rng);
    for (long s : {2, 3, 4, 5, 6}) {
      const bool hearts = heart_membership(n, LocalizationSpec::telescope(Z, {z(s)})).member;
      const bool contra = is_s_contramodule(n, z(s)).verdict;
      const bool lim = oracle::lim_oracle(n.relation_columns(), z(s),
                                          samples::prime_length(shape) + 2)
                           .contramodule();
      t.check(hearts == contra && contra == lim,
              [&] { return n.describe() + " s=" + std::to_string(s); });
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- public

const std::vector<std::pair<int, std::string>>& battery_criteria() {
  static const std::vector<std::pair<int, std::string>> list = {
      {1, "Smith normal form soundness"},
      {2, "weight axioms"},
      {3, "two-term cone classification"},
      {4, "projective dimension equals weight range"},
      {5, "contramodule oracle agreement"},
      {6, "heart predicate equivalence"},
      {7, "local complexes"},
      {8, "completion square"},
      {9, "projectivity of completed frees"},
      {10, "flatness of element localizations"},
      {11, "telescope cross-path consistency"},
  };
  return list;
}

CriterionResult run_criterion(int id, const BatteryOptions& options) {
  CriterionResult r;
  r.id = id;
  const auto& list = battery_criteria();
  auto it = std::find_if(list.begin(), list.end(), [&](const auto& c) { return c.first == id; });
  if (it == list.end()) throw Error("unknown criterion " + std::to_string(id));
  r.title = it->second;
  Rng rng(options.seed * 1000 + static_cast<std::uint64_t>(id));
  Tally t{r};
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: smith_soundness(t, rng); break;
      case 2: weight_axioms(t, rng); break;
      case 3: cone_classification(t); break;
      case 4: pd_weight(t, rng); break;
      case 5: contra_oracle(t, rng); break;
      case 6: predicate_equivalence(t, rng); break;
      case 7: local_complexes(t, rng); break;
      case 8: square(t, options.max_level); break;
      case 9: projectives(t, rng); break;
      case 10: flatness(t, rng); break;
      case 11: cross_path(t, rng); break;
    }
  } catch (const Error& e) {
    ++r.failures;
    r.notes.push_back(std::string("error: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.passed = r.failures == 0 && r.cases > 0;
  return r;
}

std::vector<CriterionResult> run_battery(
    const BatteryOptions& options, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (const auto& [id, title] : battery_criteria()) {
    out.push_back(run_criterion(id, options));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::vector<ChainComplex> exhaustive_two_term(long bound, std::size_t max_rank) {
  std::vector<ChainComplex> out;
  for (std::size_t a = 0; a <= max_rank; ++a)
    for (std::size_t b = 0; b <= max_rank; ++b) {
      const std::size_t cells = a * b;
      std::vector<long> digits(cells, -bound);
      while (true) {
        Matrix d(Z, b, a);
        for (std::size_t k = 0; k < cells; ++k) d(k / a, k % a) = z(digits[k]);
        out.push_back(ChainComplex(Z, -1, {a, b}, {d}));
        std::size_t k = 0;
        while (k < cells && digits[k] == bound) digits[k++] = -bound;
        if (k == cells) break;
        ++digits[k];
      }
    }
  return out;
}

std::pair<Matrix, Matrix> random_unimodular(const RingSpec& spec, std::size_t n, Rng& rng,
                                            int steps) {
  Matrix w = Matrix::identity(spec, n);
  Matrix inv = Matrix::identity(spec, n);
  if (n < 2) return {w, inv};
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  for (int s = 0; s < steps; ++s) {
    const std::size_t a = idx(rng), b = idx(rng);
    if (a == b) continue;
    const RingElement c = random_element(spec, rng, 2);
    // W <- E W and W^-1 <- W^-1 E^-1 with E = I + c e_ab.
    w.add_row_multiple(a, b, c);
    inv.add_col_multiple(b, a, -c);
  }
  return {w, inv};
}

ChainComplex scramble(const ChainComplex& m, Rng& rng) {
  if (m.hi() < m.lo()) return m;
  std::vector<std::pair<Matrix, Matrix>> bases;
  std::vector<std::size_t> ranks;
  for (int i = m.lo(); i <= m.hi(); ++i) {
    bases.push_back(random_unimodular(m.spec(), m.rank(i), rng));
    ranks.push_back(m.rank(i));
  }
  std::vector<Matrix> diffs;
  for (int i = m.lo(); i < m.hi(); ++i) {
    const std::size_t k = static_cast<std::size_t>(i - m.lo());
    diffs.push_back(bases[k + 1].first * m.differential(i) * bases[k].second);
  }
  return ChainComplex(m.spec(), m.lo(), ranks, diffs);
}

}  // namespace weightkit
