// Executes a parsed document and assembles the report.
//
// Report layout (keys in this order):
//   engine, conventions, command (echo), inputs (every named object the
//   command used, in full), result, checks [{name, passed}], passed, timing.
// Everything except timing is a function of the document and the options.
#pragma once

#include <cstdint>
#include <optional>

#include "weightkit/document.hpp"

namespace weightkit {

inline constexpr const char* kEngineName = "weightkit";
inline constexpr const char* kEngineVersion = "1.0.0";

struct RunOptions {
  std::optional<unsigned> level;       // N_max for reduce and square (default 6)
  std::optional<std::uint64_t> seed;   // sampling verbs and verify-all (default 1)
};

struct Report {
  io::Json body;
  bool passed = true;
};

io::Json conventions();

/// Operation precondition failures propagate as Error.
Report run(const InputDocument& doc, const RunOptions& options = {});

/// Re-verifies the certificates carried by a report produced by run() for
/// snf, solve, contra, ideal-contra, heart, heq or minimize, using only the
/// report's own inputs. Throws io::FormatError for other reports.
Report check_certificate(const io::Json& report);

}  // namespace weightkit
