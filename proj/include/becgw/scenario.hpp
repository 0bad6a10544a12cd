#pragma once
// Scenario files describe a run declaratively. Two encodings are accepted,
// selected by file extension:
//
//   .toml — a TOML subset: one level of [table] headers, `key = value` pairs,
//           values being numbers, booleans, "strings", or flat arrays of
//           numbers; `#` starts a comment.
//   .json — the same content as a two-level JSON object {"table": {"key": v}}.
//
// Tables and keys:
//   [constants]  c, G, hbar                     (optional overrides, SI)
//   [condensate] cs0 | (n, a0, m_a), length, n_modes
//   [wave]       a_plus, omega | omega_over_omega1
//   [source]     mass_primary, mass_secondary, separation, distance   (SI)
//   [feshbach]   a_bg, b_res, width, b_op       (lengths m, fields gauss)
//   [run]        periods, tolerance, samples_per_period, threads,
//                omega_scan | omega_scan_rel, durations, format ("csv"|"json")
//   [chart]      rho0, tau0, n_tau, n_xi
//
// Unknown tables or keys are rejected so typos fail loudly.

#include <optional>
#include <string>
#include <vector>

#include "becgw/constants.hpp"
#include "becgw/control.hpp"
#include "becgw/dynamics.hpp"
#include "becgw/metric.hpp"
#include "becgw/sources.hpp"

namespace becgw {

struct Scenario {
  std::string source_path;  // where this scenario was loaded from
  std::string raw_text;     // exact bytes, for input hashing

  PhysicalConstants constants;  // defaults with any [constants] overrides

  // [condensate]
  std::optional<double> cs0;      // direct sound speed, m/s
  std::optional<double> density;  // n, 1/m^3   (alternative route:
  std::optional<double> a0;       //  scattering length, m
  std::optional<double> m_a;      //  atomic mass, kg)
  double length = 1.0;            // box length, m
  int n_modes = 4;

  // [wave]
  std::optional<double> wave_a_plus;
  std::optional<double> wave_omega;             // rad/s
  std::optional<double> wave_omega_over_omega1; // in units of the fundamental

  // [source]
  std::optional<BinarySource> source;

  // [feshbach]
  std::optional<FeshbachParams> feshbach;

  // [run]
  int periods = 10;
  double tolerance = 1e-10;
  int samples_per_period = 8;
  int threads = 1;
  std::vector<double> omega_scan;      // absolute rad/s
  std::vector<double> omega_scan_rel;  // multiples of omega_1
  std::vector<int> durations;          // periods at which growth is sampled
  std::string format = "csv";

  // [chart]
  double rho0 = 1.0;
  double tau0 = 1.0;
  int n_tau = 32;
  int n_xi = 32;

  // --- resolution helpers (throw ValidationError naming the missing field) ---
  double resolved_cs0() const;      // direct cs0, or derived from (n, a0, m_a)
  ModeBasis resolved_basis() const; // build_basis(n_modes, length, resolved_cs0())
  // a_plus and omega, resolving omega_over_omega1 against the basis.
  WaveParams resolved_wave() const;
  std::vector<double> resolved_scan_grid() const;  // merges abs and rel entries
};

// Parses the file at `path` (.toml or .json) into a validated Scenario.
Scenario load_scenario(const std::string& path);

// Parses scenario text directly; `kind` is "toml" or "json".
Scenario parse_scenario(const std::string& text, const std::string& kind);

}  // namespace becgw
