#include "qbm/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace qbm {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw config_error("config: bad numeric value for '" + key + "': '" + value + "'");
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(key, item));
  }
  return out;
}

void check_positive(const char* what, double v) {
  if (!(v > 0.0)) throw config_error(std::string("config: ") + what + " must be positive");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw config_error("config: malformed section at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section != "bath" && section != "oscillator" && section != "grid" && section != "scenario")
        throw config_error("config: unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config: expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw config_error("config: key '" + key + "' outside any section");

    if (section == "bath") {
      if (key == "eta") cfg.bath.eta = parse_double(key, value);
      else if (key == "lambda") cfg.bath.cutoff_lambda = parse_double(key, value);
      else if (key == "temperature") cfg.bath.temperature = parse_double(key, value);
      else throw config_error("config: unknown key '" + key + "' in [bath]");
    } else if (section == "oscillator") {
      if (key == "k") cfg.osc.spring_k = parse_double(key, value);
      else throw config_error("config: unknown key '" + key + "' in [oscillator]");
    } else if (section == "grid") {
      if (key == "dt") cfg.grid.dt = parse_double(key, value);
      else if (key == "t_max") cfg.grid.t_max = parse_double(key, value);
      else if (key == "quad_tolerance") cfg.grid.quad_tolerance = parse_double(key, value);
      else throw config_error("config: unknown key '" + key + "' in [grid]");
    } else {
      if (key == "kind") {
        if (value == "correlated_prep") cfg.scenario.kind = ScenarioKind::correlated_prep;
        else if (value == "factorized") cfg.scenario.kind = ScenarioKind::factorized;
        else if (value == "quench") cfg.scenario.kind = ScenarioKind::quench;
        else throw config_error("config: unknown scenario kind '" + value + "'");
      } else if (key == "x0") cfg.scenario.x0 = parse_double(key, value);
      else if (key == "squeeze") cfg.scenario.squeeze = parse_double(key, value);
      else if (key == "k_old") cfg.scenario.k_old = parse_double(key, value);
      else if (key == "k_new") cfg.scenario.k_new = parse_double(key, value);
      else if (key == "taus") cfg.scenario.taus = parse_list(key, value);
      else throw config_error("config: unknown key '" + key + "' in [scenario]");
    }
  }

  if (!(cfg.bath.eta >= 0.0)) throw config_error("config: eta must be >= 0");
  check_positive("lambda", cfg.bath.cutoff_lambda);
  if (!(cfg.bath.temperature >= 0.0)) throw config_error("config: temperature must be >= 0");
  check_positive("k", cfg.osc.spring_k);
  check_positive("dt", cfg.grid.dt);
  check_positive("t_max", cfg.grid.t_max);
  check_positive("quad_tolerance", cfg.grid.quad_tolerance);
  check_positive("squeeze", cfg.scenario.squeeze);
  check_positive("k_old", cfg.scenario.k_old);
  check_positive("k_new", cfg.scenario.k_new);
  for (double tau : cfg.scenario.taus) check_positive("taus entries", tau);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_overrides(RunConfig& cfg, const ConfigOverrides& o) {
  if (o.dt) cfg.grid.dt = *o.dt;
  if (o.t_max) cfg.grid.t_max = *o.t_max;
  if (o.eta) cfg.bath.eta = *o.eta;
  if (o.k) cfg.osc.spring_k = *o.k;
  if (o.lambda_cutoff) cfg.bath.cutoff_lambda = *o.lambda_cutoff;
  if (o.temperature) cfg.bath.temperature = *o.temperature;
  if (!(cfg.bath.eta >= 0.0)) throw config_error("config: eta must be >= 0");
  if (!(cfg.bath.cutoff_lambda > 0.0)) throw config_error("config: lambda must be positive");
  if (!(cfg.bath.temperature >= 0.0)) throw config_error("config: temperature must be >= 0");
  if (!(cfg.osc.spring_k > 0.0)) throw config_error("config: k must be positive");
  if (!(cfg.grid.dt > 0.0)) throw config_error("config: dt must be positive");
  if (!(cfg.grid.t_max > 0.0)) throw config_error("config: t_max must be positive");
}

}  // namespace qbm
