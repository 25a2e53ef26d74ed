#include <gtest/gtest.h>

#include "weightkit/complexes.hpp"

using namespace weightkit;

namespace {

const RingSpec Z = RingSpec::integers();

Matrix ints(std::initializer_list<std::initializer_list<long>> rows) {
  return Matrix::from_ints(Z, rows);
}

ChainComplex two_term(std::initializer_list<std::initializer_list<long>> d, int degree) {
  return ChainComplex::two_term(ints(d), degree);
}

std::string hdesc(const ChainComplex& m, int i) { return homology(m, i).describe(); }

// H^i of every degree the complexes could touch.
bool same_homology(const ChainComplex& a, const ChainComplex& b) {
  for (int i = std::min(a.lo(), b.lo()) - 1; i <= std::max(a.hi(), b.hi()) + 1; ++i)
    if (!is_isomorphic(homology(a, i), homology(b, i))) return false;
  return true;
}

// Scrambles M by random chain isomorphisms and a contractible summand.
ChainComplex disguise(const ChainComplex& m, Rng& rng) {
  if (m.is_zero()) return m;
  const int lo = m.lo();
  ChainComplex id_block = ChainComplex::two_term(Matrix::identity(Z, 1), lo);
  ChainComplex sum = direct_sum(m, id_block);
  std::vector<Matrix> g;
  for (int i = sum.lo(); i <= sum.hi(); ++i) {
    Matrix u = Matrix::identity(Z, sum.rank(i));
    std::uniform_int_distribution<long> f(-2, 2);
    for (std::size_t a = 0; a + 1 < sum.rank(i); ++a) u.add_row_multiple(a, a + 1, Z.from_int(f(rng)));
    g.push_back(u);
  }
  // Conjugate: d'^i = g^{i+1} d^i (g^i)^{-1}; unitriangular inverses via SNF transforms.
  std::vector<std::size_t> ranks;
  std::vector<Matrix> ds;
  for (int i = sum.lo(); i <= sum.hi(); ++i) ranks.push_back(sum.rank(i));
  for (int i = sum.lo(); i < sum.hi(); ++i) {
    const auto k = static_cast<std::size_t>(i - sum.lo());
    Matrix inv = LinearSystem(g[k]).solve(Matrix::identity(Z, sum.rank(i))).value();
    ds.push_back(g[k + 1] * sum.differential(i) * inv);
  }
  return ChainComplex(Z, sum.lo(), ranks, ds);
}

std::vector<ChainComplex> random_sample(std::uint64_t seed, int count, const RingSpec& spec) {
  Rng rng(seed);
  std::uniform_int_distribution<int> lo(-2, 1), len(1, 4);
  std::vector<ChainComplex> out;
  for (int k = 0; k < count; ++k) out.push_back(random_complex(spec, rng, lo(rng), len(rng), 3, 4));
  return out;
}

}  // namespace

TEST(Complex, RejectsNonComplex) {
  EXPECT_THROW(ChainComplex(Z, 0, {1, 1, 1}, {ints({{1}}), ints({{1}})}), Error);
  EXPECT_THROW(ChainComplex(Z, 0, {1, 2}, {ints({{1}})}), Error);
}

TEST(Complex, ShiftMovesDegrees) {
  ChainComplex m = two_term({{2}}, 0);
  ChainComplex s = m.shift(1);
  EXPECT_EQ(s.lo(), -1);
  EXPECT_EQ(s.differential(-1), ints({{-2}}));
  EXPECT_EQ(hdesc(s, 0), "Z/2");
}

TEST(WeightTruncate, AlreadyNonPositiveWeight) {
  ChainComplex m = two_term({{3}}, 0);
  auto dec = weight_truncate(m, 0);
  EXPECT_EQ(dec.lower, m);
  EXPECT_TRUE(dec.upper.is_zero());
}

TEST(WeightTruncate, SplitsTwoTermComplex) {
  ChainComplex m = two_term({{1}}, -1);
  auto dec = weight_truncate(m, 0);
  EXPECT_EQ(dec.lower, ChainComplex::concentrated(Z, 0, 1));
  EXPECT_EQ(dec.upper, ChainComplex::concentrated(Z, -1, 1));
  EXPECT_TRUE(homotopy_equivalent(cone(dec.inclusion), dec.upper));
}

TEST(WeightTruncate, ZeroComplex) {
  auto dec = weight_truncate(ChainComplex::zero(Z), 0);
  EXPECT_TRUE(dec.lower.is_zero());
  EXPECT_TRUE(dec.upper.is_zero());
}

TEST(Homology, Examples) {
  ChainComplex m = two_term({{2}}, 0);
  EXPECT_EQ(hdesc(m, 0), "0");
  EXPECT_EQ(hdesc(m, 1), "Z/2");
  EXPECT_EQ(hdesc(m, 5), "0");
  EXPECT_EQ(hdesc(ChainComplex::concentrated(Z, 0, 2), 0), "Z^2");
}

TEST(TTruncate, ConcentratedInDegreeZero) {
  ChainComplex m = ChainComplex::concentrated(Z, 0, 2);
  auto dec = t_truncate(m, 0);
  EXPECT_EQ(dec.lower, m);
  EXPECT_TRUE(dec.upper.is_zero());
}

TEST(TTruncate, CutBelowDegreeOne) {
  // Lt carries the cohomology in degrees <= 0, Rt the rest.
  ChainComplex m = two_term({{2}}, 0);
  auto dec = t_truncate(m, 0);
  for (int i = -1; i <= 2; ++i) EXPECT_EQ(hdesc(dec.lower, i), "0") << i;
  EXPECT_EQ(hdesc(dec.upper, 0), "0");
  EXPECT_EQ(hdesc(dec.upper, 1), "Z/2");
  EXPECT_TRUE(homotopy_equivalent(cone(dec.inclusion), dec.upper));
}

TEST(TTruncate, AcyclicStaysAcyclic) {
  ChainComplex m = two_term({{1, 0}, {0, -1}}, 3);
  for (int n = -5; n <= 0; ++n) {
    auto dec = t_truncate(m, n);
    for (int i = 1; i <= 6; ++i) {
      EXPECT_EQ(hdesc(dec.lower, i), "0");
      EXPECT_EQ(hdesc(dec.upper, i), "0");
    }
  }
}

TEST(TTruncate, MatchesTruncatedHomologyOnRandomComplexes) {
  for (const auto& m : random_sample(11, 150, Z)) {
    for (int n = -3; n <= 3; ++n) {
      auto dec = t_truncate(m, n);
      for (int i = m.lo() - 1; i <= m.hi() + 1; ++i) {
        FpModule h = homology(m, i);
        if (i <= -n) {
          EXPECT_TRUE(is_isomorphic(homology(dec.lower, i), h));
          EXPECT_TRUE(homology(dec.upper, i).is_zero());
        } else {
          EXPECT_TRUE(homology(dec.lower, i).is_zero());
          EXPECT_TRUE(is_isomorphic(homology(dec.upper, i), h));
        }
      }
      EXPECT_TRUE(homotopy_equivalent(cone(dec.inclusion), dec.upper));
    }
  }
}

TEST(TTruncate, AdjacentToWeights) {
  // C_{w>=0} = C_{t>=0}: a complex in degrees <= 0 has Lt = everything.
  for (const auto& m : random_sample(12, 100, Z)) {
    auto w = weight_range(m);
    auto dec = t_truncate(m, 0);
    const bool in_w_ge0 = !w || w->first >= 0;
    const bool in_t_ge0 = homotopy_equivalent(dec.lower, m);
    EXPECT_EQ(in_w_ge0, in_t_ge0) << m.to_string();
  }
}

TEST(Cone, IdentityIsContractible) {
  for (const auto& m : random_sample(3, 40, Z))
    EXPECT_TRUE(minimize(cone(ChainMap::identity(m))).minimal.is_zero());
}

TEST(Cone, OfMultiplicationByTwo) {
  ChainComplex a = ChainComplex::concentrated(Z, 0, 1);
  ChainMap f(a, a, [](int) { return ints({{2}}); });
  ChainComplex c = cone(f);
  EXPECT_EQ(c, two_term({{2}}, -1));
  EXPECT_EQ(hdesc(c, 0), "Z/2");
  EXPECT_EQ(hdesc(c, -1), "0");
}

TEST(Cone, OfZeroMap) {
  ChainComplex m = two_term({{3}}, 0);
  ChainComplex c = cone(ChainMap::zero(ChainComplex::zero(Z), m));
  EXPECT_EQ(c, m);
  ChainComplex x = two_term({{2}}, 1);
  ChainComplex c2 = cone(ChainMap::zero(x, m));
  EXPECT_EQ(c2, direct_sum(m, x.shift(1)));
}

TEST(Minimize, UnitDifferentialVanishes) {
  Minimization r = minimize(two_term({{1}}, 0));
  EXPECT_TRUE(r.minimal.is_zero());
  EXPECT_TRUE(r.equivalence.verify());
}

TEST(Minimize, SplitsOffUnitPivot) {
  Minimization r = minimize(two_term({{1, 0}, {0, 2}}, 0));
  EXPECT_EQ(r.minimal, two_term({{2}}, 0));
  EXPECT_TRUE(r.equivalence.verify());
}

TEST(Minimize, MinimalComplexUnchangedUpToBasis) {
  ChainComplex m = two_term({{2, 4}, {6, 8}}, 0);
  Minimization r = minimize(m);
  EXPECT_EQ(r.minimal.rank(0), 2u);
  EXPECT_EQ(r.minimal.rank(1), 2u);
  EXPECT_TRUE(r.equivalence.verify());
}

TEST(Minimize, PropertiesOnRandomComplexes) {
  for (const RingSpec& spec : {Z, RingSpec::prime_field(5), RingSpec::poly_over_prime_field(3)}) {
    for (const auto& m : random_sample(7, 80, spec)) {
      Minimization r = minimize(m);
      ASSERT_TRUE(r.equivalence.verify()) << m.to_string();
      for (int i = r.minimal.lo(); i < r.minimal.hi(); ++i)
        for (const auto& e : smith_normal_form(r.minimal.differential(i)).invariant_factors)
          EXPECT_FALSE(e.is_unit());
      EXPECT_TRUE(same_homology(m, r.minimal));
      EXPECT_EQ(weight_range(m), weight_range(r.minimal));
      EXPECT_EQ(minimize(r.minimal).minimal, r.minimal);
    }
  }
}

TEST(HomotopyEquivalent, Examples) {
  EXPECT_TRUE(homotopy_equivalent(two_term({{2}}, 0), two_term({{-2}}, 0)));
  EXPECT_FALSE(homotopy_equivalent(two_term({{2}}, 0), two_term({{4}}, 0)));
  ChainComplex m = two_term({{2, 1}, {0, 3}}, 0);
  EXPECT_TRUE(homotopy_equivalent(m, direct_sum(m, cone(ChainMap::identity(m)))));
}

TEST(HomotopyEquivalent, ExplicitWitnessForUnitSign) {
  auto w = homotopy_equivalence(two_term({{2}}, 0), two_term({{-2}}, 0));
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->verify());
}

TEST(HomotopyEquivalent, WitnessAgreesWithHomologyTest) {
  Rng rng(5);
  auto sample = random_sample(21, 60, Z);
  for (std::size_t k = 0; k < sample.size(); ++k) {
    const auto& m = sample[k];
    ChainComplex n = disguise(m, rng);
    auto w = homotopy_equivalence(m, n);
    ASSERT_TRUE(w.has_value()) << m.to_string();
    EXPECT_TRUE(w->verify());
    const auto& other = sample[(k + 1) % sample.size()];
    EXPECT_EQ(homotopy_equivalence(m, other).has_value(), homotopy_equivalent(m, other));
  }
}

TEST(HomotopyEquivalent, CanonicalEquivalenceVerifiesOverSeveralRings) {
  for (const RingSpec& spec :
       {Z, RingSpec::rationals(), RingSpec::prime_field(7), RingSpec::poly_over_prime_field(2),
        RingSpec::poly_over_rationals()}) {
    for (const auto& m : random_sample(9, 30, spec)) {
      HomotopyEquivalence e = canonical_equivalence(m);
      EXPECT_TRUE(e.verify()) << spec.to_string() << "\n" << m.to_string();
      EXPECT_EQ(e.target(), canonical_complex(m));
    }
  }
}

TEST(HomUpToHomotopy, Examples) {
  ChainComplex z0 = ChainComplex::concentrated(Z, 0, 1);
  EXPECT_EQ(hom_upto_homotopy(z0, z0).describe(), "Z");
  EXPECT_EQ(hom_upto_homotopy(z0, two_term({{2}}, 0)).describe(), "0");
}

TEST(HomUpToHomotopy, MatchesUniversalCoefficients) {
  // Hom_K(X, Y) = prod_i Hom(H^i X, H^i Y) + Ext^1(H^i X, H^{i-1} Y).
  auto xs = random_sample(31, 40, Z);
  auto ys = random_sample(32, 40, Z);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const auto& x = xs[k];
    const auto& y = ys[k];
    FpModule expected = FpModule::zero(Z);
    for (int i = std::min(x.lo(), y.lo()) - 1; i <= std::max(x.hi(), y.hi()) + 1; ++i) {
      expected = direct_sum(expected, hom_module(homology(x, i), homology(y, i)));
      expected = direct_sum(expected, ext1(homology(x, i), homology(y, i - 1)));
    }
    EXPECT_TRUE(is_isomorphic(hom_upto_homotopy(x, y), expected))
        << x.to_string() << "\n" << y.to_string();
  }
}

TEST(WeightRange, Examples) {
  EXPECT_EQ(weight_range(ChainComplex::concentrated(Z, 0, 1)), std::make_pair(0, 0));
  ChainComplex res = two_term({{4}}, -1);
  EXPECT_EQ(weight_range(res), std::make_pair(0, 1));
  EXPECT_EQ(weight_range(res.shift(1)), std::make_pair(1, 2));
  EXPECT_FALSE(weight_range(ChainComplex::zero(Z)).has_value());
  EXPECT_FALSE(weight_range(two_term({{-1}}, 4)).has_value());
}

TEST(WeightRange, ShiftAddsToBothEnds) {
  for (const auto& m : random_sample(41, 60, Z)) {
    auto w = weight_range(m);
    for (int k = -2; k <= 2; ++k) {
      auto ws = weight_range(m.shift(k));
      ASSERT_EQ(w.has_value(), ws.has_value());
      if (w) EXPECT_EQ(*ws, std::make_pair(w->first + k, w->second + k));
    }
  }
}

TEST(WeightAxioms, ZeroSampleIsVacuous) {
  auto report = verify_weight_axioms({ChainComplex::zero(Z)}, -1, 1);
  EXPECT_TRUE(report.passed());
}

TEST(WeightAxioms, RandomSamplePasses) {
  auto report = verify_weight_axioms(random_sample(51, 60, Z), -3, 3);
  EXPECT_TRUE(report.passed()) << (report.violations.empty() ? "" : report.violations[0]);
  EXPECT_GT(report.checks, 0u);
}

TEST(WeightAxioms, CorruptedTruncationIsReported) {
  // Cuts one degree too low, so the upper piece keeps degree -n.
  WeightTruncator bad = [](const ChainComplex& m, int n) { return weight_truncate(m, n - 1); };
  std::vector<ChainComplex> sample = {two_term({{2}}, -1), ChainComplex::concentrated(Z, 0, 1)};
  auto report = verify_weight_axioms(sample, 0, 0, bad);
  EXPECT_FALSE(report.passed());
}

TEST(Complexes, DifferentialsSquareToZeroAfterConstructions) {
  // The constructors throw on d o d != 0; exercising them is the check.
  for (const auto& m : random_sample(61, 60, Z)) {
    for (int n = -2; n <= 2; ++n) {
      auto w = weight_truncate(m, n);
      EXPECT_NO_THROW(cone(w.inclusion));
      EXPECT_NO_THROW(cone(w.projection));
      auto t = t_truncate(m, n);
      EXPECT_NO_THROW(cone(t.projection));
    }
  }
}
