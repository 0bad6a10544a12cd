#pragma once
// Orchestrates a scenario into on-disk artifacts. Every command writes into
// an output directory:
//   - one or more tabular artifacts (.csv or .json per the format setting),
//   - summary.json with the headline numbers,
//   - manifest.json recording tool version, input hash, tolerances, and any
//     convention warnings that apply to the command.
// Artifacts are deterministic: identical scenario + options produce
// byte-identical files (no timestamps, fixed float formatting, fixed key
// order, thread-count-independent results).

#include <optional>
#include <string>

#include "becgw/scenario.hpp"

namespace becgw {

struct RunOptions {
  std::string command;  // simulate | scan | plan | source | verify
  std::string scenario_path;
  std::string out_dir;
  std::optional<double> tolerance;   // overrides run.tolerance
  std::optional<int> threads;        // overrides run.threads
  std::optional<std::string> format; // overrides run.format ("csv" | "json")
};

// Executes the command; throws ValidationError for bad input/scenario and
// NumericalError when an algorithm cannot reach its accuracy target.
void run_command(const RunOptions& opt);

// FNV-1a 64-bit hash of a byte string, as a 16-hex-digit string. Used to
// fingerprint scenario inputs in manifests.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace becgw
