// Runs the acceptance battery and prints one line per criterion.
#include <cstdio>
#include <cstdlib>

#include "weightkit/battery.hpp"

int main(int argc, char** argv) {
  weightkit::BatteryOptions options;
  if (argc > 1) options.seed = std::strtoull(argv[1], nullptr, 10);
  bool all = true;
  double total = 0;
  weightkit::run_battery(options, [&](const weightkit::CriterionResult& r) {
    std::printf("criterion %2d: %s  %s (%zu cases, %zu failures, %.1f s)\n", r.id,
                r.passed ? "PASS" : "FAIL", r.title.c_str(), r.cases, r.failures, r.seconds);
    for (const auto& note : r.notes) std::printf("    %s\n", note.c_str());
    std::fflush(stdout);
    all = all && r.passed;
    total += r.seconds;
  });
  std::printf("total %.1f s: %s\n", total, all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
