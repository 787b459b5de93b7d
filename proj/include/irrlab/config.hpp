#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "irrlab/simulate.hpp"

namespace irrlab {

/// Flat TOML-style document: `key = value` lines grouped under [section]
/// headers. Values: integers, floats, booleans, quoted strings, and arrays of
/// numbers. Comments start with '#'. Unknown keys are rejected by the
/// consumer, not the parser.
struct TomlValue {
  std::variant<std::int64_t, double, bool, std::string, std::vector<double>> v;

  bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
  bool is_number() const { return is_int() || std::holds_alternative<double>(v); }
  double as_double() const;
  std::int64_t as_int() const;
  bool as_bool() const;
  const std::string& as_string() const;
  const std::vector<double>& as_array() const;
};

using TomlTable = std::map<std::string, TomlValue>;  // key "section.key"

TomlTable parse_toml(const std::string& text);
TomlTable parse_toml_file(const std::string& file);

enum class ExperimentKind { simulate, phi, irregularity, average, ode, geometry, prevalence, moments };

/// Experiment configuration with documented defaults (see README). Strict:
/// any key not consumed by the experiment kind is an error naming the key.
struct ExperimentConfig {
  int schema = 1;                   // required, literal 1
  ExperimentKind kind = ExperimentKind::simulate;

  // [model]  (defaults: fbm, hurst 0.5, dim 1)
  std::string model_type = "fbm";
  GaussianModel gaussian;
  StableModel stable;
  bool model_is_stable = false;
  std::string model_path_file;  // model.type = "path_file": load instead of simulating

  // [grid]   (defaults: n 16384, horizon 1.0, levels 8, j_max 18, q_min 1.0,
  //           random_directions 0, bins 256)
  std::size_t n = 16384;
  double horizon = 1.0;
  int levels = 8;
  int j_max = 18;
  double q_min = 1.0;
  int random_directions = 0;
  int bins = 256;

  // [estimator] (defaults: gamma grid 0.50..0.95 step 0.05, fit range [8,512],
  //              moment_order 1, margin 0.25)
  double gamma_min = 0.50;
  double gamma_max = 0.95;
  double gamma_step = 0.05;
  double q_fit_min = 8.0;
  double q_fit_max = 512.0;
  int moment_order = 1;
  double margin = 0.25;

  // [mc]     (defaults: samples 1, seed 0)
  std::size_t mc_samples = 1;
  std::uint64_t seed = 0;

  // [ode]    (defaults: level 10, modes 24, alpha -0.5, x0 0.0, eps {1e-6,1e-8})
  int ode_level = 10;
  int ode_modes = 24;
  double ode_alpha = -0.5;
  double ode_x0 = 0.0;
  std::vector<double> ode_eps = {1e-6, 1e-8};

  // [prevalence] (defaults: shift "zero", shift_file "")
  std::string shift = "zero";
  std::string shift_file;

  // [output] (defaults: dir "out", format "both")
  std::string out_dir = "out";
  std::string format = "both";  // csv | json | both

  std::vector<double> gamma_grid() const;
};

/// Parses and validates; throws std::invalid_argument naming any unknown or
/// malformed key.
ExperimentConfig load_config(const TomlTable& table);
ExperimentConfig load_config_file(const std::string& file);

/// Canonical one-line-per-key rendering used for the config hash.
std::string canonical_config_text(const TomlTable& table);

}  // namespace irrlab
