#include "becgw/runner.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "becgw/coordinates.hpp"
#include "becgw/errors.hpp"

namespace becgw {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string fnv1a64_hex(const std::string& bytes) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using Cell = std::variant<double, long long, bool, std::string>;

// Column-named table rendered to CSV (fixed %.17g floats) or to a JSON array
// of row objects, so both encodings carry identical information.
struct Table {
  std::string name;  // artifact stem, e.g. "spectrum"
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> cells) {
    if (cells.size() != columns.size())
      throw ValidationError("internal: table row width mismatch in " + name);
    rows.push_back(std::move(cells));
  }
};

std::string cell_csv(const Cell& c) {
  if (std::holds_alternative<double>(c)) return fmt(std::get<double>(c));
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "true" : "false";
  return std::get<std::string>(c);
}

ojson cell_json(const Cell& c) {
  if (std::holds_alternative<double>(c)) return std::get<double>(c);
  if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
  if (std::holds_alternative<bool>(c)) return std::get<bool>(c);
  return std::get<std::string>(c);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << content;
}

// Writes the table as <name>.csv or <name>.json; returns the file name.
std::string write_table(const fs::path& dir, const Table& t, const std::string& format) {
  if (format == "csv") {
    std::string out;
    for (size_t i = 0; i < t.columns.size(); ++i)
      out += (i ? "," : "") + t.columns[i];
    out += "\n";
    for (const auto& row : t.rows) {
      for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_csv(row[i]);
      out += "\n";
    }
    write_file(dir / (t.name + ".csv"), out);
    return t.name + ".csv";
  }
  ojson arr = ojson::array();
  for (const auto& row : t.rows) {
    ojson obj = ojson::object();
    for (size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    arr.push_back(obj);
  }
  write_file(dir / (t.name + ".json"), arr.dump(2) + "\n");
  return t.name + ".json";
}

struct Warning {
  std::string key;
  std::string message;
};

struct RunContext {
  const RunOptions& opt;
  Scenario sc;
  fs::path dir;
  std::string format;
  double tolerance;
  int threads;
  std::vector<Warning> warnings;
  std::vector<std::string> outputs;

  void warn(const std::string& key, const std::string& message) {
    warnings.push_back({key, message});
  }
  void emit(const Table& t) { outputs.push_back(write_table(dir, t, format)); }
  void emit_summary(const ojson& summary) {
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    outputs.push_back("summary.json");
  }
};

void write_manifest(RunContext& ctx) {
  ojson m = ojson::object();
  m["tool"] = "becgw";
  m["tool_version"] = "0.1.0";
  m["command"] = ctx.opt.command;
  m["scenario_file"] = ctx.opt.scenario_path;
  m["scenario_hash_fnv1a64"] = fnv1a64_hex(ctx.sc.raw_text);
  m["format"] = ctx.format;
  ojson tol = ojson::object();
  tol["integrator"] = ctx.tolerance;
  tol["metric_symmetry"] = 1e-12;
  tol["flow_normalization_rel"] = 1e-9;
  m["tolerances"] = tol;
  ojson consts = ojson::object();
  consts["c_mps"] = ctx.sc.constants.c;
  consts["G_si"] = ctx.sc.constants.G;
  consts["hbar_si"] = ctx.sc.constants.hbar;
  m["constants"] = consts;
  ojson warns = ojson::array();
  for (const auto& w : ctx.warnings) {
    ojson obj = ojson::object();
    obj["key"] = w.key;
    obj["message"] = w.message;
    warns.push_back(obj);
  }
  m["warnings"] = warns;
  ojson outs = ojson::array();
  for (const auto& o : ctx.outputs) outs.push_back(o);
  outs.push_back("manifest.json");
  m["outputs"] = outs;
  write_file(ctx.dir / "manifest.json", m.dump(2) + "\n");
}

// --- simulate ---------------------------------------------------------------

void cmd_simulate(RunContext& ctx) {
  const ModeBasis basis = ctx.sc.resolved_basis();
  const WaveParams wave = ctx.sc.resolved_wave();
  const DriveSchedule drive = DriveSchedule::sinusoid(wave.a_plus, wave.omega);
  const ModeEnsemble ens =
      evolve(basis, drive, ctx.sc.periods, ctx.tolerance, ctx.sc.samples_per_period);

  Table evo{"evolution",
            {"t_s", "mode", "re_q", "im_q", "re_qdot", "im_qdot", "wronskian"},
            {}};
  for (size_t j = 0; j < ens.times.size(); ++j)
    for (int m = 0; m < basis.n_modes; ++m)
      evo.add_row({ens.times[j], static_cast<long long>(m + 1),
                   ens.tracks[m].q[j].real(), ens.tracks[m].q[j].imag(),
                   ens.tracks[m].qdot[j].real(), ens.tracks[m].qdot[j].imag(),
                   ens.wronskian(m, j)});
  ctx.emit(evo);

  Table spec{"spectrum",
             {"t_s", "periods", "mode", "abs_alpha", "abs_beta", "number",
              "bogoliubov_identity"},
             {}};
  double worst_identity = 0.0;
  for (int p = 1; p <= ctx.sc.periods; ++p) {
    const int j = ens.checkpoint_index(p);
    const BogoliubovMatrices bm = bogoliubov_extract(ens, j);
    const std::vector<double> num = particle_number(bm);
    worst_identity = std::max(worst_identity, bm.identity_residual());
    for (int m = 0; m < basis.n_modes; ++m) {
      const double id =
          std::norm(bm.a(m, m)) - std::norm(bm.b(m, m));
      spec.add_row({ens.times[j], static_cast<long long>(p),
                    static_cast<long long>(m + 1), std::abs(bm.a(m, m)),
                    std::abs(bm.b(m, m)), num[m], id});
    }
  }
  ctx.emit(spec);

  const BogoliubovMatrices fin = bogoliubov_extract(ens);
  const std::vector<double> num = particle_number(fin);
  ojson summary = ojson::object();
  summary["command"] = "simulate";
  summary["n_modes"] = basis.n_modes;
  summary["length_m"] = basis.length;
  summary["cs0_mps"] = basis.cs0;
  summary["a_plus"] = wave.a_plus;
  summary["omega_rad_s"] = wave.omega;
  summary["periods"] = ctx.sc.periods;
  ojson modes = ojson::array();
  for (int m = 0; m < basis.n_modes; ++m) {
    ojson obj = ojson::object();
    obj["mode"] = m + 1;
    obj["omega_mode_rad_s"] = basis.omega(m + 1);
    obj["abs_beta_final"] = std::abs(fin.b(m, m));
    obj["number_final"] = num[m];
    obj["wronskian_drift"] = ens.wronskian_drift[m];
    obj["error_estimate"] = ens.error_estimate(m);
    obj["steps_accepted"] = ens.steps_accepted[m];
    obj["steps_rejected"] = ens.steps_rejected[m];
    modes.push_back(obj);
  }
  summary["modes"] = modes;
  summary["bogoliubov_identity_residual_worst"] = worst_identity;
  ctx.emit_summary(summary);

  ctx.warn("mode-pair-offdiagonal",
           "a spatially uniform strain drives each standing-wave mode against "
           "itself, so the mixing matrices stay diagonal; counter-propagating "
           "pair structure requires a spatially varying drive and is not "
           "produced by this reduction");
}

// --- scan -------------------------------------------------------------------

void cmd_scan(RunContext& ctx) {
  const ModeBasis basis = ctx.sc.resolved_basis();
  if (!ctx.sc.wave_a_plus)
    throw ValidationError("scenario: 'wave.a_plus' is required for scan");
  const double a_plus = *ctx.sc.wave_a_plus;
  const std::vector<double> grid = ctx.sc.resolved_scan_grid();
  std::vector<int> durations = ctx.sc.durations;
  if (durations.empty()) durations = {10, 20, 30, 40, 50, 60};

  const ScanResult res =
      resonance_scan(basis, a_plus, grid, durations, ctx.tolerance, ctx.threads);

  Table tab{"scan",
            {"omega_rad_s", "mode", "beta_slope", "beta_amplitude", "beta_final",
             "number_slope", "fit_ok"},
            {}};
  for (const auto& cell : res.cells)
    tab.add_row({cell.omega, static_cast<long long>(cell.mode), cell.slope,
                 cell.amplitude, cell.beta_final, cell.number_slope, cell.fit_ok});
  ctx.emit(tab);

  ojson summary = ojson::object();
  summary["command"] = "scan";
  summary["a_plus"] = a_plus;
  summary["n_omegas"] = grid.size();
  ojson durs = ojson::array();
  for (int d : durations) durs.push_back(d);
  summary["durations_periods"] = durs;
  ojson peaks = ojson::array();
  for (int m = 0; m < basis.n_modes; ++m) {
    ojson obj = ojson::object();
    obj["mode"] = m + 1;
    obj["omega_mode_rad_s"] = basis.omega(m + 1);
    obj["peak_omega_rad_s"] = res.peak_omega[m];
    obj["peak_over_omega_mode"] =
        res.peak_omega[m] > 0.0 ? res.peak_omega[m] / basis.omega(m + 1) : 0.0;
    peaks.push_back(obj);
  }
  summary["peaks"] = peaks;
  ctx.emit_summary(summary);

  ctx.warn("mode-pair-offdiagonal",
           "a spatially uniform strain drives each standing-wave mode against "
           "itself, so the mixing matrices stay diagonal; counter-propagating "
           "pair structure requires a spatially varying drive and is not "
           "produced by this reduction");
  ctx.warn("beta-vs-number-growth-exponent",
           "with diagonal mixing the occupation is the squared conversion "
           "amplitude, so on resonance the fitted occupation growth exponent is "
           "twice the amplitude exponent (2 vs 1); quoted growth laws must say "
           "which quantity they fit");
}

// --- plan -------------------------------------------------------------------

void cmd_plan(RunContext& ctx) {
  if (!ctx.sc.feshbach)
    throw ValidationError("scenario: a [feshbach] table is required for plan");
  if (!ctx.sc.wave_a_plus)
    throw ValidationError("scenario: 'wave.a_plus' (target amplitude) is required for plan");
  double omega = 0.0;
  if (ctx.sc.wave_omega)
    omega = *ctx.sc.wave_omega;
  else if (ctx.sc.wave_omega_over_omega1)
    omega = *ctx.sc.wave_omega_over_omega1 * ctx.sc.resolved_basis().omega(1);
  else
    throw ValidationError(
        "scenario: 'wave.omega' or 'wave.omega_over_omega1' is required for plan");

  const FieldSchedule s = plan_field_schedule(*ctx.sc.feshbach, *ctx.sc.wave_a_plus, omega);

  const double a0 = scattering_length(s.params, s.params.b_op);
  Table tab{"schedule",
            {"t_s", "B_gauss", "a_over_a0", "cs_over_cs0", "h_realized", "h_target"},
            {}};
  const int samples = 128;
  const double period = 2.0 * M_PI / omega;
  for (int i = 0; i <= samples; ++i) {
    const double t = period * i / samples;
    const double phase = std::sin(2.0 * M_PI * i / samples);
    const double b_t = s.params.b_op * (1.0 + s.delta_b * phase);
    const double a_ratio = scattering_length(s.params, b_t) / a0;
    tab.add_row({t, b_t, a_ratio, std::sqrt(a_ratio), 1.0 / a_ratio - 1.0,
                 -s.a_plus * phase});
  }
  ctx.emit(tab);

  ojson summary = ojson::object();
  summary["command"] = "plan";
  summary["a_plus_target"] = s.a_plus;
  summary["omega_rad_s"] = s.omega;
  summary["b_op_gauss"] = s.params.b_op;
  summary["b_res_gauss"] = s.params.b_res;
  summary["width_gauss"] = s.params.width;
  summary["a_bg_m"] = s.params.a_bg;
  summary["amplitude_prefactor"] = amplitude_prefactor(s.params);
  summary["delta_b_fractional"] = s.delta_b;
  summary["excursion_gauss"] = s.excursion_gauss;
  summary["excursion_tesla"] = gauss_to_tesla(s.excursion_gauss);
  summary["safety_margin"] = s.safety_margin;
  summary["validation_deviation"] = s.validation_deviation;
  summary["phase_note"] = s.phase_note;
  ctx.emit_summary(summary);

  ctx.warn("feshbach-sign-convention",
           "the returned excursion uses the amplitude relation literally "
           "(a_plus = prefactor * delta_b, sign included); the realized metric "
           "strain is h(t) = -a_plus*sin(omega t), i.e. the schedule carries a "
           "half-period phase offset relative to the sound-speed modulation");
}

// --- source -----------------------------------------------------------------

void cmd_source(RunContext& ctx) {
  if (!ctx.sc.source)
    throw ValidationError("scenario: a [source] table is required for source");
  const BinaryWave w = binary_wave_params(*ctx.sc.source, ctx.sc.constants);

  Table tab{"wave",
            {"a_plus", "omega_rad_s", "f_hz", "wavelength_m", "far_field_ok"},
            {}};
  tab.add_row({w.a_plus, w.omega, w.omega / (2.0 * M_PI), w.wavelength, w.far_field_ok});
  ctx.emit(tab);

  ojson summary = ojson::object();
  summary["command"] = "source";
  summary["mass_primary_kg"] = ctx.sc.source->mass_primary;
  summary["mass_secondary_kg"] = ctx.sc.source->mass_secondary;
  summary["separation_m"] = ctx.sc.source->separation;
  summary["distance_m"] = ctx.sc.source->distance;
  summary["a_plus"] = w.a_plus;
  summary["omega_rad_s"] = w.omega;
  summary["f_hz"] = w.omega / (2.0 * M_PI);
  summary["wavelength_m"] = w.wavelength;
  summary["far_field_ok"] = w.far_field_ok;

  const bool have_basis = ctx.sc.cs0 || (ctx.sc.density && ctx.sc.a0 && ctx.sc.m_a);
  if (have_basis) {
    const ModeBasis basis = ctx.sc.resolved_basis();
    const ResonanceMatch m = resonance_match(w, basis);
    ojson match = ojson::object();
    match["mode"] = m.mode;
    match["omega_mode_rad_s"] = m.omega_mode;
    match["mismatch_rel"] = m.mismatch;
    match["matched_length_m"] = m.matched_length;
    summary["resonance_match"] = match;
  }
  ctx.emit_summary(summary);

  const double f = w.omega / (2.0 * M_PI);
  if (f < 1e2 || f > 1e5)
    ctx.warn("binary-omega-band",
             "derived wave frequency " + fmt(f) +
                 " Hz falls outside the kHz acoustic band quoted for tabletop "
                 "resonance; close binaries at laboratory-scale separations "
                 "radiate far above it, so treat band statements as "
                 "order-of-magnitude");
  if (!w.far_field_ok)
    ctx.warn("binary-omega-band",
             "observer distance is inside ten wavelengths; the quadrupole "
             "far-field amplitude formula is unreliable there");
}

// --- verify -----------------------------------------------------------------

void cmd_verify(RunContext& ctx) {
  ChartParams p;
  p.c = ctx.sc.constants.c;
  p.cs0 = ctx.sc.resolved_cs0();
  p.rho0 = ctx.sc.rho0;
  p.tau0 = ctx.sc.tau0;
  p.wave = ctx.sc.resolved_wave();
  check_chart(p);

  PullbackGrid grid;
  grid.n_tau = ctx.sc.n_tau;
  grid.n_xi = ctx.sc.n_xi;
  const PullbackReport rep = verify_pullback(p, grid);

  Table tab{"pullback", {"tau_s", "xi_m", "res_tt", "res_tx", "res_xx"}, {}};
  for (const auto& s : rep.samples)
    tab.add_row({s.tau, s.xi, s.res_tt, s.res_tx, s.res_xx});
  ctx.emit(tab);

  ojson summary = ojson::object();
  summary["command"] = "verify";
  summary["a_plus"] = p.wave.a_plus;
  summary["omega_rad_s"] = p.wave.omega;
  summary["cs0_mps"] = p.cs0;
  summary["tau0_s"] = p.tau0;
  summary["grid_n_tau"] = grid.n_tau;
  summary["grid_n_xi"] = grid.n_xi;
  summary["max_abs_residual"] = rep.max_abs_residual;
  summary["max_offdiag_residual"] = rep.max_offdiag_residual;
  summary["fd_floor"] = rep.fd_floor;
  ctx.emit_summary(summary);

  ctx.warn("density-scalar-convention",
           "the conformal prefactor uses an opaque normalized density scalar; "
           "its absolute scale cancels from the residuals checked here but "
           "matters if artifacts are compared against microscopically "
           "normalized metrics");
  ctx.warn("tau-origin-convention",
           "comoving time is measured from the hyperbola-crossing event, so "
           "the chart covers tau > 0 only and samples start strictly after "
           "the origin");
}

}  // namespace

void run_command(const RunOptions& opt) {
  RunContext ctx{opt, load_scenario(opt.scenario_path), fs::path(opt.out_dir),
                 "", 0.0, 1, {}, {}};
  ctx.format = opt.format.value_or(ctx.sc.format);
  if (ctx.format != "csv" && ctx.format != "json")
    throw ValidationError("format must be \"csv\" or \"json\"");
  ctx.tolerance = opt.tolerance.value_or(ctx.sc.tolerance);
  if (!(ctx.tolerance > 0.0)) throw ValidationError("tolerance must be > 0");
  ctx.threads = opt.threads.value_or(ctx.sc.threads);
  if (ctx.threads < 1) throw ValidationError("threads must be >= 1");
  if (opt.out_dir.empty()) throw ValidationError("an output directory is required");

  std::error_code ec;
  fs::create_directories(ctx.dir, ec);
  if (ec) throw ValidationError("cannot create output directory '" + opt.out_dir + "'");

  if (opt.command == "simulate")
    cmd_simulate(ctx);
  else if (opt.command == "scan")
    cmd_scan(ctx);
  else if (opt.command == "plan")
    cmd_plan(ctx);
  else if (opt.command == "source")
    cmd_source(ctx);
  else if (opt.command == "verify")
    cmd_verify(ctx);
  else
    throw ValidationError("unknown command '" + opt.command +
                          "' (use simulate|scan|plan|source|verify)");

  write_manifest(ctx);
}

}  // namespace becgw
