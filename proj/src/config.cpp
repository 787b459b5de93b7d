#include "irrlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace irrlab {

double TomlValue::as_double() const {
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  if (std::holds_alternative<std::int64_t>(v)) return static_cast<double>(std::get<std::int64_t>(v));
  throw std::invalid_argument("config value is not a number");
}

std::int64_t TomlValue::as_int() const {
  if (std::holds_alternative<std::int64_t>(v)) return std::get<std::int64_t>(v);
  throw std::invalid_argument("config value is not an integer");
}

bool TomlValue::as_bool() const {
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
  throw std::invalid_argument("config value is not a boolean");
}

const std::string& TomlValue::as_string() const {
  if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
  throw std::invalid_argument("config value is not a string");
}

const std::vector<double>& TomlValue::as_array() const {
  if (std::holds_alternative<std::vector<double>>(v)) return std::get<std::vector<double>>(v);
  throw std::invalid_argument("config value is not an array");
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

TomlValue parse_value(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  if (s.empty()) throw std::invalid_argument("config: empty value for key '" + key + "'");
  TomlValue out;
  if (s == "true") {
    out.v = true;
    return out;
  }
  if (s == "false") {
    out.v = false;
    return out;
  }
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"')
      throw std::invalid_argument("config: unterminated string for key '" + key + "'");
    out.v = s.substr(1, s.size() - 2);
    return out;
  }
  if (s.front() == '[') {
    if (s.back() != ']') throw std::invalid_argument("config: unterminated array for key '" + key + "'");
    std::vector<double> arr;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const std::string c = trim(cell);
      if (c.empty()) continue;
      std::size_t pos = 0;
      const double d = std::stod(c, &pos);
      if (pos != c.size()) throw std::invalid_argument("config: bad array element for key '" + key + "'");
      arr.push_back(d);
    }
    out.v = std::move(arr);
    return out;
  }
  // integer or float
  const bool floaty = s.find_first_of(".eEinfa") != std::string::npos;
  try {
    std::size_t pos = 0;
    if (!floaty) {
      const long long i = std::stoll(s, &pos);
      if (pos == s.size()) {
        out.v = static_cast<std::int64_t>(i);
        return out;
      }
    }
    pos = 0;
    const double d = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing junk");
    out.v = d;
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: cannot parse value for key '" + key + "'");
  }
}

}  // namespace

TomlTable parse_toml(const std::string& text) {
  TomlTable table;
  std::stringstream ss(text);
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument("config: bad section at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value at line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("config: empty key at line " + std::to_string(lineno));
    if (!section.empty()) key = section + "." + key;
    if (table.count(key)) throw std::invalid_argument("config: duplicate key '" + key + "'");
    table[key] = parse_value(line.substr(eq + 1), key);
  }
  return table;
}

TomlTable parse_toml_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("config: cannot open " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_toml(ss.str());
}

std::vector<double> ExperimentConfig::gamma_grid() const {
  std::vector<double> grid;
  for (double g = gamma_min; g <= gamma_max + 1e-12; g += gamma_step) grid.push_back(g);
  return grid;
}

namespace {

ExperimentKind parse_kind(const std::string& s) {
  if (s == "simulate") return ExperimentKind::simulate;
  if (s == "phi") return ExperimentKind::phi;
  if (s == "irregularity") return ExperimentKind::irregularity;
  if (s == "average") return ExperimentKind::average;
  if (s == "ode") return ExperimentKind::ode;
  if (s == "geometry") return ExperimentKind::geometry;
  if (s == "prevalence") return ExperimentKind::prevalence;
  if (s == "moments") return ExperimentKind::moments;
  throw std::invalid_argument("config: unknown kind '" + s + "'");
}

}  // namespace

ExperimentConfig load_config(const TomlTable& table) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  auto take = [&](const std::string& key) -> const TomlValue* {
    auto it = table.find(key);
    if (it == table.end()) return nullptr;
    seen.insert(key);
    return &it->second;
  };

  const TomlValue* schema = take("schema");
  if (!schema) throw std::invalid_argument("config: missing required key 'schema'");
  if (schema->as_int() != 1) throw std::invalid_argument("config: unsupported schema version");
  if (const auto* v = take("kind")) cfg.kind = parse_kind(v->as_string());

  if (const auto* v = take("model.type")) cfg.model_type = v->as_string();
  if (const auto* v = take("model.dim")) {
    cfg.gaussian.dim = static_cast<int>(v->as_int());
    cfg.stable.dim = cfg.gaussian.dim;
  }
  if (const auto* v = take("model.hurst")) cfg.gaussian.hurst = v->as_double();
  if (const auto* v = take("model.path_file")) cfg.model_path_file = v->as_string();
  if (const auto* v = take("model.order")) cfg.gaussian.integration_order = static_cast<int>(v->as_int());
  if (const auto* v = take("model.beta")) {
    cfg.gaussian.ma_beta = v->as_double();
    cfg.gaussian.logbm_beta = v->as_double();
  }
  if (const auto* v = take("model.alpha")) cfg.stable.alpha = v->as_double();
  if (const auto* v = take("model.isotropic")) cfg.stable.axes = !v->as_bool();
  if (const auto* v = take("model.alphas")) {
    cfg.stable.alpha_per_axis = v->as_array();
  }
  if (const auto* v = take("model.fbm_sum_h")) {
    const auto& hs = v->as_array();
    const TomlValue* lv = take("model.fbm_sum_lambda");
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const double lam = lv ? lv->as_array().at(i) : 1.0 / static_cast<double>((i + 1) * (i + 1));
      cfg.gaussian.fbm_sum_terms.emplace_back(hs[i], lam);
    }
  } else {
    take("model.fbm_sum_lambda");
  }
  if (const auto* v = take("model.sigma")) cfg.gaussian.ou_sigma = v->as_double();
  if (const auto* v = take("model.ou_a")) {
    const auto& a = v->as_array();
    const int d = cfg.gaussian.dim;
    if (a.size() != static_cast<std::size_t>(d) * d)
      throw std::invalid_argument("config: model.ou_a must have dim*dim entries");
    cfg.gaussian.ou_a = Mat(d, d);
    for (int i = 0; i < d * d; ++i) cfg.gaussian.ou_a.a[i] = a[i];
  }
  if (const auto* v = take("model.ou_x0")) cfg.gaussian.ou_x0 = v->as_array();

  {
    const std::string& t = cfg.model_type;
    if (t == "brownian")
      cfg.gaussian.kind = GaussianKind::brownian;
    else if (t == "fbm")
      cfg.gaussian.kind = GaussianKind::fbm;
    else if (t == "integrated_fbm")
      cfg.gaussian.kind = GaussianKind::integrated_fbm;
    else if (t == "ornstein_uhlenbeck")
      cfg.gaussian.kind = GaussianKind::ornstein_uhlenbeck;
    else if (t == "moving_average")
      cfg.gaussian.kind = GaussianKind::moving_average;
    else if (t == "log_bm")
      cfg.gaussian.kind = GaussianKind::log_bm;
    else if (t == "fbm_sum")
      cfg.gaussian.kind = GaussianKind::fbm_sum;
    else if (t == "stable")
      cfg.model_is_stable = true;
    else if (t == "path_file") {
      if (cfg.model_path_file.empty())
        throw std::invalid_argument("config: model.type = \"path_file\" requires model.path_file");
    } else
      throw std::invalid_argument("config: unknown model.type '" + t + "'");
  }

  if (const auto* v = take("grid.n")) cfg.n = static_cast<std::size_t>(v->as_int());
  if (const auto* v = take("grid.horizon")) cfg.horizon = v->as_double();
  if (const auto* v = take("grid.levels")) cfg.levels = static_cast<int>(v->as_int());
  if (const auto* v = take("grid.j_max")) cfg.j_max = static_cast<int>(v->as_int());
  if (const auto* v = take("grid.q_min")) cfg.q_min = v->as_double();
  if (const auto* v = take("grid.random_directions")) cfg.random_directions = static_cast<int>(v->as_int());
  if (const auto* v = take("grid.bins")) cfg.bins = static_cast<int>(v->as_int());

  if (const auto* v = take("estimator.gamma_min")) cfg.gamma_min = v->as_double();
  if (const auto* v = take("estimator.gamma_max")) cfg.gamma_max = v->as_double();
  if (const auto* v = take("estimator.gamma_step")) cfg.gamma_step = v->as_double();
  if (const auto* v = take("estimator.q_fit_min")) cfg.q_fit_min = v->as_double();
  if (const auto* v = take("estimator.q_fit_max")) cfg.q_fit_max = v->as_double();
  if (const auto* v = take("estimator.moment_order")) cfg.moment_order = static_cast<int>(v->as_int());
  if (const auto* v = take("estimator.margin")) cfg.margin = v->as_double();

  if (const auto* v = take("mc.samples")) cfg.mc_samples = static_cast<std::size_t>(v->as_int());
  if (const auto* v = take("mc.seed")) cfg.seed = static_cast<std::uint64_t>(v->as_int());

  if (const auto* v = take("ode.level")) cfg.ode_level = static_cast<int>(v->as_int());
  if (const auto* v = take("ode.modes")) cfg.ode_modes = static_cast<int>(v->as_int());
  if (const auto* v = take("ode.alpha")) cfg.ode_alpha = v->as_double();
  if (const auto* v = take("ode.x0")) cfg.ode_x0 = v->as_double();
  if (const auto* v = take("ode.eps")) cfg.ode_eps = v->as_array();

  if (const auto* v = take("prevalence.shift")) cfg.shift = v->as_string();
  if (const auto* v = take("prevalence.shift_file")) cfg.shift_file = v->as_string();

  if (const auto* v = take("output.dir")) cfg.out_dir = v->as_string();
  if (const auto* v = take("output.format")) cfg.format = v->as_string();
  if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "both")
    throw std::invalid_argument("config: output.format must be csv, json or both");

  for (const auto& [key, value] : table)
    if (!seen.count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
  return cfg;
}

ExperimentConfig load_config_file(const std::string& file) { return load_config(parse_toml_file(file)); }

std::string canonical_config_text(const TomlTable& table) {
  std::string out;
  for (const auto& [key, value] : table) {
    out += key;
    out += '=';
    if (std::holds_alternative<std::int64_t>(value.v))
      out += std::to_string(std::get<std::int64_t>(value.v));
    else if (std::holds_alternative<double>(value.v)) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(value.v));
      out += buf;
    } else if (std::holds_alternative<bool>(value.v))
      out += std::get<bool>(value.v) ? "true" : "false";
    else if (std::holds_alternative<std::string>(value.v))
      out += std::get<std::string>(value.v);
    else {
      for (double d : std::get<std::vector<double>>(value.v)) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g,", d);
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace irrlab
