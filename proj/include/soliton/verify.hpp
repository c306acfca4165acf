#pragma once

// Property suites behind `soliton verify`. Random draws come from one
// seeded generator and are made before any work is dispatched, so the
// report list depends only on (params, seed, tolerance).

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "soliton/core.hpp"

namespace soliton::verify {

enum class Suite { All, Wronskian, Darboux, States, Measures, Scattering };

/// Throws InvalidArgument on an unknown name.
Suite parse_suite(std::string_view name);
std::string_view suite_name(Suite suite);

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::optional<double> tolerance;  // replaces every per-check default
  bool timing = false;              // fill runtime_ms (breaks byte-identity)
};

std::vector<VerificationReport> run_suite(Suite suite, const SolitonParams& params,
                                          const SuiteOptions& options);

/// SOLITON_THREADS if set to a positive integer, else the hardware count.
unsigned worker_count();

}  // namespace soliton::verify
