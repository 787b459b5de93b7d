#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irrlab/config.hpp"
#include "irrlab/simulate.hpp"

namespace irrlab {

struct ManifestFile {
  std::string path;
  std::uint64_t bytes = 0;
  std::string fnv64;
};

struct RunManifest {
  std::string config_hash;
  std::string code_version;
  std::uint64_t seed = 0;
  std::string started;
  std::string finished;
  std::vector<ManifestFile> files;
  std::vector<std::string> stages;    // per-stage status lines
  std::vector<std::string> warnings;
  bool ok = true;
};

/// Executes the configured experiment, writes artifacts plus manifest.json
/// into the output directory, and returns the manifest. Identical config and
/// seed reproduce identical artifact checksums.
RunManifest run_experiment(const TomlTable& raw_config);
RunManifest run_experiment_file(const std::string& config_file);

struct PrevalenceReport {
  std::size_t samples = 0;
  std::size_t passed = 0;
  std::size_t inconclusive = 0;
  double pass_rate = 0.0;  // over conclusive runs
  double target_rho = 0.0;
  double margin = 0.0;
  std::vector<double> rho_hats;
};

/// Finite-sample proxy for the shifted-noise irregularity statement: for M
/// noise samples W^(i), the fraction of rho_hat(shift + W^(i)) exceeding
/// (2H)^{-1} - margin. Tests a FIXED shift; the quantifier over all shifts is
/// not testable.
PrevalenceReport prevalence_harness(const SampledPath& shift, const GaussianModel& noise, std::size_t n,
                                    double horizon, std::size_t mc_samples, double margin,
                                    std::uint64_t seed, int levels = 8, double q_lo = 8.0, double q_hi = 512.0);

/// Deterministic shift library for the harness: zero, polynomial,
/// trigonometric, weierstrass.
SampledPath make_shift(const std::string& name, std::size_t n, double horizon, int dim);

std::string code_version();

}  // namespace irrlab
