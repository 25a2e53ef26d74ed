// The acceptance battery: eleven property sweeps over exhaustive and seeded
// random families, each reduced to one pass/fail line.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "weightkit/complexes.hpp"
#include "weightkit/sampling.hpp"

namespace weightkit {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = true;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;  // first few failures and coverage remarks
  double seconds = 0;
};

struct BatteryOptions {
  std::uint64_t seed = 1;
  unsigned max_level = 6;
};

/// (id, title) for every criterion, in order.
const std::vector<std::pair<int, std::string>>& battery_criteria();

/// Throws Error for an unknown id.
CriterionResult run_criterion(int id, const BatteryOptions& options);

std::vector<CriterionResult> run_battery(
    const BatteryOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// Every [R^a --d--> R^b] over Z in degrees -1, 0 with a, b <= max_rank and
/// |entries| <= bound.
std::vector<ChainComplex> exhaustive_two_term(long bound, std::size_t max_rank);

/// Random unimodular W together with W^-1.
std::pair<Matrix, Matrix> random_unimodular(const RingSpec& spec, std::size_t n, Rng& rng,
                                            int steps = 6);

/// The same complex on randomly changed bases in every degree.
ChainComplex scramble(const ChainComplex& m, Rng& rng);

}  // namespace weightkit
