#include "dop/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dop {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw BadValueType("key '" + key + "' expects a number, got '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw BadValueType("key '" + key + "' expects an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw BadValueType("key '" + key + "' expects true/false, got '" + value + "'");
}

// "x,y; x,y; ..." -> points
std::vector<Point> parse_probes(const std::string& key, const std::string& value) {
  std::vector<Point> pts;
  std::stringstream ss(value);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    pair = trim(pair);
    if (pair.empty()) continue;
    const std::size_t comma = pair.find(',');
    if (comma == std::string::npos) {
      throw BadValueType("key '" + key + "' expects 'x,y; x,y; ...'");
    }
    pts.push_back({parse_double(key, trim(pair.substr(0, comma))),
                   parse_double(key, trim(pair.substr(comma + 1)))});
  }
  if (pts.empty()) {
    throw BadValueType("key '" + key + "' expects at least one probe point");
  }
  return pts;
}

void apply(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "dataset") config.dataset = value;
  else if (key == "psi1") config.psi1_expr = value;
  else if (key == "psi2") config.psi2_expr = value;
  else if (key == "f") config.f_expr = value;
  else if (key == "p") config.p = parse_double(key, value);
  else if (key == "h") { config.h = parse_double(key, value); config.h_explicit = true; }
  else if (key == "a") config.a = parse_double(key, value);
  else if (key == "collar") { config.collar = parse_double(key, value); config.collar_explicit = true; }
  else if (key == "radius_in_mesh_units")
    config.radius_units = static_cast<int>(parse_long(key, value));
  else if (key == "tolerance") config.tolerance = parse_double(key, value);
  else if (key == "max_iterations") config.max_iterations = parse_long(key, value);
  else if (key == "seed")
    config.seed = static_cast<std::uint64_t>(parse_long(key, value));
  else if (key == "runs") config.runs = parse_long(key, value);
  else if (key == "probes") config.probes = parse_probes(key, value);
  else if (key == "eta_stop") config.eta_stop = parse_double(key, value);
  else if (key == "max_steps") config.max_steps = parse_long(key, value);
  else if (key == "bench_quick") config.bench_quick = parse_bool(key, value);
  else if (key == "threads") config.threads = static_cast<int>(parse_long(key, value));
  else if (key == "out") config.out_dir = value;
  else throw UnknownKey("unknown config key '" + key + "'");
}

void apply_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw BadValueType("config line " + std::to_string(lineno) +
                         " is not 'key = value': '" + line + "'");
    }
    apply(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

}  // namespace

RunConfig parse_config(const std::string& command,
                       const std::optional<std::string>& file_path,
                       const std::vector<std::string>& overrides) {
  if (command != "solve" && command != "simulate" && command != "validate" &&
      command != "bench") {
    throw MissingRequired("command must be solve, simulate, validate or bench");
  }
  RunConfig config;
  config.command = command;
  if (const char* env = std::getenv("DPP_THREADS")) {
    config.threads = static_cast<int>(parse_long("DPP_THREADS", env));
  }
  if (file_path) apply_file(config, *file_path);
  for (const std::string& kv : overrides) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      throw BadValueType("--set expects key=value, got '" + kv + "'");
    }
    apply(config, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }

  if (!(config.tolerance > 0.0)) throw BadValueType("tolerance must be positive");
  if (config.max_iterations < 1) throw BadValueType("max_iterations must be >= 1");
  if (config.runs < 1) throw BadValueType("runs must be >= 1");
  if (config.max_steps < 1) throw BadValueType("max_steps must be >= 1");
  if (config.eta_stop < 0.0) throw BadValueType("eta_stop must be >= 0");
  if (config.threads < 0) throw BadValueType("threads must be >= 0");

  const bool has_inline = !config.psi1_expr.empty() || !config.psi2_expr.empty() ||
                          !config.f_expr.empty();
  if (config.dataset.empty() && !has_inline && command != "bench") {
    throw MissingRequired("a problem source is required: dataset=... or inline psi1/psi2/f");
  }
  if (config.dataset.empty() && has_inline) {
    if (config.psi1_expr.empty() || config.psi2_expr.empty() || config.f_expr.empty()) {
      throw MissingRequired("inline problems need all of psi1, psi2 and f");
    }
    if (!config.p) {
      throw MissingRequired("inline problems need an explicit p");
    }
  }
  return config;
}

ProblemSpec problem_from(const RunConfig& config) {
  ProblemSpec spec;
  if (!config.dataset.empty()) {
    spec = builtin_dataset(config.dataset);
  } else {
    spec.psi1 = ScalarField::parse("psi1", config.psi1_expr);
    spec.psi2 = ScalarField::parse("psi2", config.psi2_expr);
    spec.f = ScalarField::parse("f", config.f_expr);
    spec.dataset = "";
  }
  if (config.p) spec.p = *config.p;
  return spec;
}

double effective_eta_stop(const RunConfig& config) {
  return config.eta_stop > 0.0 ? config.eta_stop : config.tolerance;
}

}  // namespace dop
