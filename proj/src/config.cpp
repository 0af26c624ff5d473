#include "terascope/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace terascope {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("config line " + std::to_string(line) + ": " + what);
}

double parse_double(std::size_t line, const std::string& key,
                    std::string_view text) {
  double out = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(line, "key '" + key + "' needs a number, got '" + std::string(text) + "'");
  }
  return out;
}

std::uint64_t parse_count(std::size_t line, const std::string& key,
                          std::string_view text) {
  std::uint64_t out = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(line, "key '" + key + "' needs a nonnegative integer, got '" +
                   std::string(text) + "'");
  }
  return out;
}

bool parse_bool(std::size_t line, const std::string& key,
                std::string_view text) {
  if (text == "true") return true;
  if (text == "false") return false;
  fail(line, "key '" + key + "' needs true or false, got '" +
                 std::string(text) + "'");
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

SweepVariable parse_sweep(std::size_t line, std::string_view text) {
  if (text == "x0") return SweepVariable::x0;
  if (text == "tau_dB") return SweepVariable::tau_dB;
  if (text == "lambda_A") return SweepVariable::lambda_A;
  if (text == "lambda_B") return SweepVariable::lambda_B;
  if (text == "G_A_dBi") return SweepVariable::G_A_dBi;
  if (text == "G_U_dBi") return SweepVariable::G_U_dBi;
  fail(line, "unknown sweep variable '" + std::string(text) + "'");
}

RunMode parse_mode(std::size_t line, std::string_view text) {
  if (text == "analytic") return RunMode::analytic;
  if (text == "mc-full") return RunMode::mc_full;
  if (text == "mc-interference-only") return RunMode::mc_interference_only;
  if (text == "mc-blockage-only") return RunMode::mc_blockage_only;
  if (text == "mc-dominant-only") return RunMode::mc_dominant_only;
  fail(line, "unknown mode '" + std::string(text) + "'");
}

// Applies one key=value to the spec under construction. Returns false when
// the key is not recognized.
bool apply_key(ExperimentSpec& spec, const std::string& key,
               std::string_view value, std::size_t line) {
  ConfigParams& p = spec.params;
  if (key == "h_A") p.h_A = parse_double(line, key, value);
  else if (key == "h_U") p.h_U = parse_double(line, key, value);
  else if (key == "h_B") p.h_B = parse_double(line, key, value);
  else if (key == "r_B") p.r_B = parse_double(line, key, value);
  else if (key == "f") p.f = parse_double(line, key, value);
  else if (key == "K") p.K = parse_double(line, key, value);
  else if (key == "P_T_dBm") p.P_T_dBm = parse_double(line, key, value);
  else if (key == "sigma2_dBm") p.sigma2_dBm = parse_double(line, key, value);
  else if (key == "G_A_dBi") p.G_A_dBi = parse_double(line, key, value);
  else if (key == "G_U_dBi") p.G_U_dBi = parse_double(line, key, value);
  else if (key == "lambda_A") p.lambda_A = parse_double(line, key, value);
  else if (key == "lambda_B") p.lambda_B = parse_double(line, key, value);
  else if (key == "tau_dB") p.tau_dB = parse_double(line, key, value);
  else if (key == "B_GHz") p.B_GHz = parse_double(line, key, value);
  else if (key == "x0") spec.x0 = parse_double(line, key, value);
  else if (key == "trials") spec.n_trials = parse_count(line, key, value);
  else if (key == "seed") {
    spec.base_seed = parse_count(line, key, value);
    spec.seed_explicit = true;
  } else if (key == "los_conditioned") {
    spec.los_conditioned = parse_bool(line, key, value);
  } else if (key == "version") {
    spec.version = std::string(value);
  } else if (key == "sweep") {
    spec.sweep = parse_sweep(line, value);
  } else if (key == "values") {
    spec.values.clear();
    for (std::string_view part : split(value, ',')) {
      spec.values.push_back(parse_double(line, key, trim(part)));
    }
  } else if (key == "modes") {
    spec.modes.clear();
    for (std::string_view part : split(value, ',')) {
      spec.modes.push_back(parse_mode(line, trim(part)));
    }
  } else {
    return false;
  }
  return true;
}

void finalize(const ExperimentSpec& spec) {
  if (spec.values.empty()) {
    throw std::runtime_error("experiment '" + spec.name +
                             "': no sweep values given");
  }
  for (std::size_t i = 1; i < spec.values.size(); ++i) {
    const bool up = spec.values[1] > spec.values[0];
    if (up ? spec.values[i] <= spec.values[i - 1]
           : spec.values[i] >= spec.values[i - 1]) {
      throw std::runtime_error("experiment '" + spec.name +
                               "': sweep values must be strictly monotone");
    }
  }
  if (spec.modes.empty()) {
    throw std::runtime_error("experiment '" + spec.name + "': no modes given");
  }
  const bool any_mc = std::any_of(spec.modes.begin(), spec.modes.end(), is_mc);
  if (any_mc && spec.n_trials < 1000) {
    throw std::runtime_error(
        "experiment '" + spec.name +
        "': Monte Carlo modes need at least 1000 trials");
  }
  // Surface parameter-invariant violations (height ordering and friends) at
  // parse time, using the un-swept parameter set.
  try {
    (void)spec.params.to_system_params();
  } catch (const std::exception& e) {
    throw std::runtime_error("experiment '" + spec.name + "': " + e.what());
  }
}

}  // namespace

SystemParams ConfigParams::to_system_params() const {
  SystemParams p;
  p.h_A = h_A;
  p.h_U = h_U;
  p.h_B = h_B;
  p.r_B = r_B;
  p.f = f;
  p.K = K;
  p.P_T = 1e-3 * db_to_linear(P_T_dBm);
  p.sigma2 = 1e-3 * db_to_linear(sigma2_dBm);
  p.ap_pattern = pattern_from_gain(db_to_linear(G_A_dBi));
  p.ue_pattern = pattern_from_gain(db_to_linear(G_U_dBi));
  p.lambda_A = lambda_A;
  p.lambda_B = lambda_B;
  p.tau = db_to_linear(tau_dB);
  validate(p);
  return p;
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::x0: return "x0";
    case SweepVariable::tau_dB: return "tau_dB";
    case SweepVariable::lambda_A: return "lambda_A";
    case SweepVariable::lambda_B: return "lambda_B";
    case SweepVariable::G_A_dBi: return "G_A_dBi";
    case SweepVariable::G_U_dBi: return "G_U_dBi";
  }
  return "unknown";
}

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::analytic: return "analytic";
    case RunMode::mc_full: return "mc-full";
    case RunMode::mc_interference_only: return "mc-interference-only";
    case RunMode::mc_blockage_only: return "mc-blockage-only";
    case RunMode::mc_dominant_only: return "mc-dominant-only";
  }
  return "unknown";
}

bool is_mc(RunMode m) { return m != RunMode::analytic; }

bool operator==(const ExperimentSpec& a, const ExperimentSpec& b) {
  return a.name == b.name && a.params == b.params && a.sweep == b.sweep &&
         a.values == b.values && a.modes == b.modes &&
         a.n_trials == b.n_trials && a.base_seed == b.base_seed &&
         a.los_conditioned == b.los_conditioned && a.x0 == b.x0 &&
         a.version == b.version;
}

ParsedConfig parse_config(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }
  // A document that is entirely `#`-prefixed is an emitted CSV preamble:
  // strip the prefix and parse what is underneath.
  const bool all_hash = !lines.empty() &&
      std::all_of(lines.begin(), lines.end(), [](const std::string& l) {
        const std::string_view t = trim(l);
        return t.empty() || t.front() == '#';
      });

  ParsedConfig out;
  ExperimentSpec defaults;  // carries inherited keys before the first section
  ExperimentSpec* current = nullptr;
  bool finished_defaults = false;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = trim(lines[i]);
    const std::size_t lineno = i + 1;
    if (all_hash && !line.empty()) {
      line.remove_prefix(1);
      if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      line = trim(line);
    }
    if (line.empty()) continue;
    if (line.front() == '#') continue;  // comment
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      std::string_view inner = trim(line.substr(1, line.size() - 2));
      constexpr std::string_view kPrefix = "experiment ";
      if (inner.substr(0, kPrefix.size()) != kPrefix) {
        fail(lineno, "section must be [experiment NAME]");
      }
      std::string_view name = trim(inner.substr(kPrefix.size()));
      if (name.empty()) fail(lineno, "experiment needs a name");
      if (!finished_defaults) {
        out.defaults = defaults.params;
        finished_defaults = true;
      }
      ExperimentSpec spec = defaults;
      spec.name = std::string(name);
      out.experiments.push_back(spec);
      current = &out.experiments.back();
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(lineno, "expected key=value, got '" + std::string(line) + "'");
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view value = trim(line.substr(eq + 1));
    ExperimentSpec& target = current ? *current : defaults;
    if (!apply_key(target, key, value, lineno)) {
      fail(lineno, "unknown key '" + key + "'");
    }
  }
  if (!finished_defaults) out.defaults = defaults.params;
  for (const ExperimentSpec& spec : out.experiments) finalize(spec);
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string serialize_spec(const ExperimentSpec& spec) {
  std::ostringstream out;
  const ConfigParams& p = spec.params;
  out << "[experiment " << spec.name << "]\n";
  out << "version=" << spec.version << '\n';
  out << "h_A=" << format_double(p.h_A) << '\n';
  out << "h_U=" << format_double(p.h_U) << '\n';
  out << "h_B=" << format_double(p.h_B) << '\n';
  out << "r_B=" << format_double(p.r_B) << '\n';
  out << "f=" << format_double(p.f) << '\n';
  out << "K=" << format_double(p.K) << '\n';
  out << "P_T_dBm=" << format_double(p.P_T_dBm) << '\n';
  out << "sigma2_dBm=" << format_double(p.sigma2_dBm) << '\n';
  out << "G_A_dBi=" << format_double(p.G_A_dBi) << '\n';
  out << "G_U_dBi=" << format_double(p.G_U_dBi) << '\n';
  out << "lambda_A=" << format_double(p.lambda_A) << '\n';
  out << "lambda_B=" << format_double(p.lambda_B) << '\n';
  out << "tau_dB=" << format_double(p.tau_dB) << '\n';
  out << "B_GHz=" << format_double(p.B_GHz) << '\n';
  out << "x0=" << format_double(spec.x0) << '\n';
  out << "sweep=" << to_string(spec.sweep) << '\n';
  out << "values=";
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    if (i) out << ',';
    out << format_double(spec.values[i]);
  }
  out << '\n';
  out << "modes=";
  for (std::size_t i = 0; i < spec.modes.size(); ++i) {
    if (i) out << ',';
    out << to_string(spec.modes[i]);
  }
  out << '\n';
  out << "trials=" << spec.n_trials << '\n';
  out << "seed=" << spec.base_seed << '\n';
  out << "los_conditioned=" << (spec.los_conditioned ? "true" : "false")
      << '\n';
  return out.str();
}

}  // namespace terascope
