#include "becgw/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include <nlohmann/json.hpp>

#include "becgw/errors.hpp"

namespace becgw {

namespace {

using Value = std::variant<double, bool, std::string, std::vector<double>>;

struct Document {
  std::map<std::string, Value> kv;  // "table.key" -> value
};

[[noreturn]] void fail(const std::string& msg) { throw ValidationError("scenario: " + msg); }

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Removes a trailing comment, respecting double-quoted strings.
std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (ch == '"' && (i == 0 || line[i - 1] != '\\')) in_str = !in_str;
    if (ch == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

double parse_number(const std::string& tok, const std::string& where) {
  try {
    size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) fail(where + ": malformed number '" + tok + "'");
    if (!std::isfinite(v)) fail(where + ": number must be finite");
    return v;
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    fail(where + ": malformed number '" + tok + "'");
  }
}

Value parse_toml_value(const std::string& raw, const std::string& where) {
  const std::string v = trim(raw);
  if (v.empty()) fail(where + ": missing value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') fail(where + ": unterminated string");
    std::string out;
    for (size_t i = 1; i + 1 < v.size(); ++i) {
      if (v[i] == '\\' && i + 2 < v.size() && (v[i + 1] == '"' || v[i + 1] == '\\'))
        out += v[++i];
      else
        out += v[i];
    }
    return out;
  }
  if (v == "true") return true;
  if (v == "false") return false;
  if (v.front() == '[') {
    if (v.back() != ']') fail(where + ": unterminated array");
    std::vector<double> arr;
    std::string inner = v.substr(1, v.size() - 2);
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) {
        if (ss.eof() && !arr.empty()) break;  // tolerate trailing comma
        fail(where + ": empty array element");
      }
      arr.push_back(parse_number(item, where));
    }
    return arr;
  }
  return parse_number(v, where);
}

Document parse_toml(const std::string& text) {
  Document doc;
  std::string table;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("line " + std::to_string(lineno) + ": malformed table header");
      table = trim(line.substr(1, line.size() - 2));
      if (table.empty() || table.find('.') != std::string::npos)
        fail("line " + std::to_string(lineno) + ": only one level of tables is supported");
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) fail("line " + std::to_string(lineno) + ": empty key");
    if (table.empty()) fail("line " + std::to_string(lineno) + ": key outside any [table]");
    const std::string path = table + "." + key;
    if (doc.kv.count(path)) fail("duplicate key '" + path + "'");
    doc.kv[path] = parse_toml_value(line.substr(eq + 1), path);
  }
  return doc;
}

Document parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object()) fail("top level must be an object of tables");
  Document doc;
  for (const auto& [table, body] : j.items()) {
    if (!body.is_object()) fail("table '" + table + "' must be an object");
    for (const auto& [key, val] : body.items()) {
      const std::string path = table + "." + key;
      if (val.is_number())
        doc.kv[path] = val.get<double>();
      else if (val.is_boolean())
        doc.kv[path] = val.get<bool>();
      else if (val.is_string())
        doc.kv[path] = val.get<std::string>();
      else if (val.is_array()) {
        std::vector<double> arr;
        for (const auto& item : val) {
          if (!item.is_number()) fail(path + ": arrays must hold numbers only");
          arr.push_back(item.get<double>());
        }
        doc.kv[path] = arr;
      } else {
        fail(path + ": unsupported value type");
      }
    }
  }
  return doc;
}

// Typed pulls; every successful pull marks the key consumed so leftovers can
// be reported as unknown keys.
struct Extractor {
  const Document& doc;
  std::set<std::string> used;

  bool has(const std::string& path) const { return doc.kv.count(path) > 0; }

  template <typename T>
  const T* pull(const std::string& path) {
    auto it = doc.kv.find(path);
    if (it == doc.kv.end()) return nullptr;
    used.insert(path);
    const T* v = std::get_if<T>(&it->second);
    if (!v) fail("'" + path + "' has the wrong type");
    return v;
  }

  std::optional<double> number(const std::string& path) {
    const double* v = pull<double>(path);
    return v ? std::optional<double>(*v) : std::nullopt;
  }

  std::optional<int> integer(const std::string& path) {
    const double* v = pull<double>(path);
    if (!v) return std::nullopt;
    if (*v != std::floor(*v) || std::abs(*v) > 1e9)
      fail("'" + path + "' must be an integer");
    return static_cast<int>(*v);
  }

  std::optional<std::string> string(const std::string& path) {
    const std::string* v = pull<std::string>(path);
    return v ? std::optional<std::string>(*v) : std::nullopt;
  }

  std::optional<std::vector<double>> array(const std::string& path) {
    const std::vector<double>* v = pull<std::vector<double>>(path);
    return v ? std::optional<std::vector<double>>(*v) : std::nullopt;
  }

  void finish() const {
    for (const auto& [path, _] : doc.kv)
      if (!used.count(path)) fail("unknown key '" + path + "'");
  }
};

Scenario build(const Document& doc) {
  Extractor ex{doc, {}};
  Scenario sc;

  if (auto v = ex.number("constants.c")) sc.constants.c = *v;
  if (auto v = ex.number("constants.G")) sc.constants.G = *v;
  if (auto v = ex.number("constants.hbar")) sc.constants.hbar = *v;

  sc.cs0 = ex.number("condensate.cs0");
  sc.density = ex.number("condensate.n");
  sc.a0 = ex.number("condensate.a0");
  sc.m_a = ex.number("condensate.m_a");
  if (auto v = ex.number("condensate.length")) sc.length = *v;
  if (auto v = ex.integer("condensate.n_modes")) sc.n_modes = *v;
  const bool derived_any = sc.density || sc.a0 || sc.m_a;
  const bool derived_all = sc.density && sc.a0 && sc.m_a;
  if (sc.cs0 && derived_any)
    fail("condensate: give either cs0 or the full (n, a0, m_a) triple, not both");
  if (derived_any && !derived_all)
    fail("condensate: the derived route needs all of n, a0, and m_a");
  if (!(sc.length > 0.0)) fail("'condensate.length' must be > 0");
  if (sc.n_modes < 1) fail("'condensate.n_modes' must be >= 1");

  sc.wave_a_plus = ex.number("wave.a_plus");
  sc.wave_omega = ex.number("wave.omega");
  sc.wave_omega_over_omega1 = ex.number("wave.omega_over_omega1");
  if (sc.wave_omega && sc.wave_omega_over_omega1)
    fail("wave: give either omega or omega_over_omega1, not both");
  if ((sc.wave_omega || sc.wave_omega_over_omega1) && !sc.wave_a_plus)
    fail("'wave.a_plus' is required when a wave frequency is given");

  if (ex.has("source.mass_primary") || ex.has("source.mass_secondary") ||
      ex.has("source.separation") || ex.has("source.distance")) {
    BinarySource src;
    auto need = [&](const char* key) {
      auto v = ex.number(std::string("source.") + key);
      if (!v) fail(std::string("'source.") + key + "' is required");
      return *v;
    };
    src.mass_primary = need("mass_primary");
    src.mass_secondary = need("mass_secondary");
    src.separation = need("separation");
    src.distance = need("distance");
    sc.source = src;
  }
  if (sc.source && sc.wave_a_plus)
    fail("give either a [wave] or a [source], not both");

  if (ex.has("feshbach.a_bg") || ex.has("feshbach.b_res") || ex.has("feshbach.width") ||
      ex.has("feshbach.b_op")) {
    FeshbachParams fp;
    auto need = [&](const char* key) {
      auto v = ex.number(std::string("feshbach.") + key);
      if (!v) fail(std::string("'feshbach.") + key + "' is required");
      return *v;
    };
    fp.a_bg = need("a_bg");
    fp.b_res = need("b_res");
    fp.width = need("width");
    fp.b_op = need("b_op");
    sc.feshbach = fp;
  }

  if (auto v = ex.integer("run.periods")) sc.periods = *v;
  if (auto v = ex.number("run.tolerance")) sc.tolerance = *v;
  if (auto v = ex.integer("run.samples_per_period")) sc.samples_per_period = *v;
  if (auto v = ex.integer("run.threads")) sc.threads = *v;
  if (auto v = ex.array("run.omega_scan")) sc.omega_scan = *v;
  if (auto v = ex.array("run.omega_scan_rel")) sc.omega_scan_rel = *v;
  if (auto v = ex.array("run.durations")) {
    for (double d : *v) {
      if (d != std::floor(d) || d < 1) fail("'run.durations' entries must be integers >= 1");
      sc.durations.push_back(static_cast<int>(d));
    }
  }
  if (auto v = ex.string("run.format")) {
    if (*v != "csv" && *v != "json") fail("'run.format' must be \"csv\" or \"json\"");
    sc.format = *v;
  }
  if (sc.periods < 1) fail("'run.periods' must be >= 1");
  if (!(sc.tolerance > 0.0)) fail("'run.tolerance' must be > 0");
  if (sc.samples_per_period < 1) fail("'run.samples_per_period' must be >= 1");
  if (sc.threads < 1) fail("'run.threads' must be >= 1");

  if (auto v = ex.number("chart.rho0")) sc.rho0 = *v;
  if (auto v = ex.number("chart.tau0")) sc.tau0 = *v;
  if (auto v = ex.integer("chart.n_tau")) sc.n_tau = *v;
  if (auto v = ex.integer("chart.n_xi")) sc.n_xi = *v;
  if (!(sc.rho0 > 0.0)) fail("'chart.rho0' must be > 0");
  if (!(sc.tau0 > 0.0)) fail("'chart.tau0' must be > 0");
  if (sc.n_tau < 2 || sc.n_xi < 2) fail("'chart.n_tau'/'chart.n_xi' must be >= 2");

  ex.finish();
  return sc;
}

}  // namespace

double Scenario::resolved_cs0() const {
  if (cs0) {
    if (!(*cs0 > 0.0)) throw ValidationError("scenario: 'condensate.cs0' must be > 0");
    return *cs0;
  }
  if (density && a0 && m_a) {
    CondensateParams p = condensate_from_density(*density, *a0, *m_a, constants);
    return p.cs;
  }
  throw ValidationError(
      "scenario: [condensate] needs cs0 or the (n, a0, m_a) triple for this command");
}

ModeBasis Scenario::resolved_basis() const {
  return build_basis(n_modes, length, resolved_cs0());
}

WaveParams Scenario::resolved_wave() const {
  if (!wave_a_plus)
    throw ValidationError("scenario: 'wave.a_plus' is required for this command");
  WaveParams w;
  w.a_plus = *wave_a_plus;
  if (wave_omega)
    w.omega = *wave_omega;
  else if (wave_omega_over_omega1)
    w.omega = *wave_omega_over_omega1 * resolved_basis().omega(1);
  else
    throw ValidationError(
        "scenario: 'wave.omega' or 'wave.omega_over_omega1' is required for this command");
  check_wave(w);
  return w;
}

std::vector<double> Scenario::resolved_scan_grid() const {
  std::vector<double> grid = omega_scan;
  if (!omega_scan_rel.empty()) {
    const double w1 = resolved_basis().omega(1);
    for (double r : omega_scan_rel) grid.push_back(r * w1);
  }
  if (grid.empty())
    throw ValidationError(
        "scenario: 'run.omega_scan' or 'run.omega_scan_rel' is required for this command");
  for (double w : grid)
    if (!(w > 0.0)) throw ValidationError("scenario: scan frequencies must be > 0");
  return grid;
}

Scenario parse_scenario(const std::string& text, const std::string& kind) {
  Document doc;
  if (kind == "toml")
    doc = parse_toml(text);
  else if (kind == "json")
    doc = parse_json(text);
  else
    fail("unsupported scenario kind '" + kind + "' (use toml or json)");
  Scenario sc = build(doc);
  sc.raw_text = text;
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("scenario: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string kind;
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml")
    kind = "toml";
  else if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    kind = "json";
  else
    fail("cannot infer format of '" + path + "' (expected .toml or .json)");
  Scenario sc = parse_scenario(buf.str(), kind);
  sc.source_path = path;
  return sc;
}

}  // namespace becgw
