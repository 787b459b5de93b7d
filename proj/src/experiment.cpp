#include "irrlab/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "irrlab/averaging.hpp"
#include "irrlab/emit.hpp"
#include "irrlab/geometry.hpp"
#include "irrlab/irregularity.hpp"
#include "irrlab/parallel.hpp"
#include "irrlab/rng.hpp"
#include "irrlab/spectral.hpp"
#include "irrlab/young.hpp"

namespace irrlab {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string code_version() { return "irrlab 0.1.0"; }

namespace {

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t fnv1a64_string(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct Emitter {
  const ExperimentConfig& cfg;
  RunManifest& man;

  std::string path(const std::string& name) const { return (fs::path(cfg.out_dir) / name).string(); }

  void record(const std::string& file) {
    ManifestFile mf;
    mf.path = file;
    mf.bytes = fs::file_size(file);
    mf.fnv64 = hex64(fnv1a64_file(file));
    man.files.push_back(mf);
  }
  bool csv() const { return cfg.format == "csv" || cfg.format == "both"; }
  bool jsn() const { return cfg.format == "json" || cfg.format == "both"; }
};

SampledPath config_path(const ExperimentConfig& cfg, std::uint64_t sample_index,
                        std::vector<std::string>* warnings) {
  if (!cfg.model_path_file.empty()) return read_path_binary(cfg.model_path_file);
  Seed seed{cfg.seed, sample_index};
  if (cfg.model_is_stable) return simulate_stable(cfg.stable, cfg.n, cfg.horizon, seed);
  return simulate_gaussian(cfg.gaussian, cfg.n, cfg.horizon, seed, warnings);
}

SpectralField rough_band_field(int modes, double alpha, std::uint64_t seed, int dim) {
  // Hermitian pairs with |c_j| = <xi_j>^{-alpha-0.51} on integer frequencies
  SpectralField b;
  b.dim = dim;
  b.hermitian = true;
  Rng rng(seed, 0x0DEu);
  for (int j = 1; j <= modes / 2; ++j) {
    std::vector<double> xi(dim, 0.0);
    xi[0] = 4.0 * j;
    double xi2 = 0.0;
    for (double v : xi) xi2 += v * v;
    const double mag = std::pow(1.0 + xi2, -0.5 * (alpha + 0.51));
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    const std::complex<double> c(mag * std::cos(phase), mag * std::sin(phase));
    std::vector<double> neg(xi);
    for (double& v : neg) v = -v;
    b.freqs.push_back(xi);
    b.coeffs.push_back(c);
    b.freqs.push_back(neg);
    b.coeffs.push_back(std::conj(c));
  }
  return b;
}

void run_simulate(const ExperimentConfig& cfg, Emitter& em) {
  for (std::size_t i = 0; i < cfg.mc_samples; ++i) {
    std::vector<std::string> warnings;
    const SampledPath p = config_path(cfg, i, &warnings);
    for (auto& w : warnings) em.man.warnings.push_back(w);
    char name[64];
    std::snprintf(name, sizeof(name), "path_%04zu", i);
    const std::string bin = em.path(std::string(name) + ".bin");
    write_path_binary(p, bin);
    em.record(bin);
    if (em.csv()) {
      const std::string csv = em.path(std::string(name) + ".csv");
      write_path_csv(p, csv);
      em.record(csv);
    }
  }
  em.man.stages.push_back("simulate: ok");
}

void run_phi(const ExperimentConfig& cfg, Emitter& em) {
  std::vector<std::string> warnings;
  const SampledPath p = config_path(cfg, 0, &warnings);
  const FrequencySet freqs = FrequencySet::make(p.dim, cfg.q_min, cfg.j_max, cfg.random_directions, cfg.seed);
  const PhiTable table = phi_table(p, freqs, cfg.levels);
  if (em.csv()) {
    const std::string f = em.path("phi_table.csv");
    emit_phi_table_csv(table, f);
    em.record(f);
  }
  em.man.stages.push_back("phi: ok");
}

void run_irregularity(const ExperimentConfig& cfg, Emitter& em) {
  std::vector<std::string> warnings;
  const SampledPath p = config_path(cfg, 0, &warnings);
  const FrequencySet freqs = FrequencySet::make(p.dim, cfg.q_min, cfg.j_max, cfg.random_directions, cfg.seed);
  const PhiTable table = phi_table(p, freqs, cfg.levels);
  const IrregularityReport rep = analyze_irregularity(table, cfg.gamma_grid(), cfg.q_fit_min, cfg.q_fit_max);
  if (em.jsn()) {
    const std::string f = em.path("irregularity.json");
    emit_irregularity_json(rep, f);
    em.record(f);
  }
  if (em.csv()) {
    const std::string f = em.path("envelopes.csv");
    emit_envelope_csv(rep.envelopes, f);
    em.record(f);
    const std::string dat = em.path("envelope_gamma0.dat");
    emit_xy_dat(rep.envelopes.front().q, rep.envelopes.front().value, dat);
    em.record(dat);
  }
  em.man.stages.push_back("irregularity: ok");
}

void run_average(const ExperimentConfig& cfg, Emitter& em) {
  std::vector<std::string> warnings;
  const SampledPath p = config_path(cfg, 0, &warnings);
  const FrequencySet freqs = FrequencySet::make(p.dim, cfg.q_min, cfg.j_max, cfg.random_directions, cfg.seed);
  const PhiTable table = phi_table(p, freqs, cfg.levels);
  const SpectralField b = rough_band_field(cfg.ode_modes, cfg.ode_alpha, cfg.seed, p.dim);
  const AveragedField av = average_spectral(p, b, 0, p.steps(), &table);
  if (em.jsn()) {
    const std::string f = em.path("averaged_field.json");
    emit_averaged_field_json(av, f);
    em.record(f);
  }
  const GainReport gain =
      regularity_gain(p, table, std::max(0.0, -cfg.ode_alpha), 2.0, 4, 0.55, 0.8, cfg.seed);
  if (em.jsn()) {
    const std::string f = em.path("gain.json");
    emit_gain_json(gain, f);
    em.record(f);
  }
  em.man.stages.push_back("average: ok");
}

void run_ode(const ExperimentConfig& cfg, Emitter& em) {
  std::vector<std::string> warnings;
  OdeProblem prob;
  prob.w = config_path(cfg, 0, &warnings);
  prob.x0.assign(prob.w.dim, cfg.ode_x0);
  prob.level = cfg.ode_level;
  for (int c = 0; c < prob.w.dim; ++c)
    prob.drift.push_back(rough_band_field(cfg.ode_modes, cfg.ode_alpha, cfg.seed + c, prob.w.dim));
  const OdeSolution sol = solve_ode(prob);
  if (em.csv()) {
    const std::string f = em.path("solution.csv");
    write_path_csv(sol.x, f);
    em.record(f);
  }
  const FlowDiagnostic diag = flow_diagnostic(prob, cfg.ode_eps);
  if (em.jsn()) {
    const std::string f = em.path("flow.json");
    emit_flow_json(diag, f);
    em.record(f);
  }
  em.man.stages.push_back(sol.blowup ? "ode: blowup flagged" : "ode: ok");
}

void run_geometry(const ExperimentConfig& cfg, Emitter& em) {
  std::vector<std::string> warnings;
  const SampledPath p = config_path(cfg, 0, &warnings);
  const std::size_t n = p.steps();
  const double dt = p.dt();

  std::vector<double> eps_list;
  for (int j = 4; j <= 9; ++j) {
    const double e = p.horizon / static_cast<double>(1 << j);
    if (e >= 4.0 * dt) eps_list.push_back(e);
  }
  const DensityCurve curve = holder_density(p, n / 2, 0.75, 1.0, eps_list);
  if (em.csv()) {
    const std::string f = em.path("density_curve.csv");
    emit_density_curve_csv(curve, f);
    em.record(f);
    const std::string dat = em.path("density_curve.dat");
    emit_xy_dat(curve.eps, curve.fraction, dat);
    em.record(dat);
  }
  const OccupationDensity occ = occupation_density(p, 0, n, std::nullopt, std::nullopt, cfg.bins);
  if (em.csv()) {
    const std::string f = em.path("occupation_density.csv");
    emit_density_csv(occ, f);
    em.record(f);
  }
  if (em.jsn()) {
    const std::string f = em.path("occupation_density.json");
    emit_density_meta_json(occ, f);
    em.record(f);
  }
  const FrequencySet dirset = FrequencySet::make(p.dim, 1.0, 0);
  const RoughnessModulus rm = roughness_modulus(p, 0.75, eps_list, dirset.directions, std::max<std::size_t>(1, n / 512));
  if (em.csv()) {
    const std::string f = em.path("roughness.csv");
    emit_roughness_csv(rm, f);
    em.record(f);
  }
  std::vector<PVariationResult> pv;
  for (double pp : {1.5, 2.0, 3.0}) pv.push_back(p_variation(p, pp));
  if (em.csv()) {
    const std::string f = em.path("p_variation.csv");
    emit_pvariation_csv(pv, f);
    em.record(f);
  }
  const DimensionEstimate de = fourier_dimension(p, 0, n);
  const BoxCount bc = box_dimension(p, 0, n);
  if (em.jsn()) {
    const std::string f = em.path("dimensions.json");
    emit_dimension_json(de, bc, f);
    em.record(f);
  }
  std::vector<double> rs;
  for (int j = 3; j <= 7; ++j) rs.push_back(std::pow(2.0, -j));
  const OccupationWindow ow = occupation_window(p, rs);
  if (em.csv()) {
    const std::string f = em.path("occupation_window.csv");
    emit_occupation_window_csv(ow, f);
    em.record(f);
    const std::string dat = em.path("occupation_window.dat");
    emit_xy_dat(ow.r, ow.w_over_2r, dat);
    em.record(dat);
  }
  em.man.stages.push_back("geometry: ok");
}

void run_moments(const ExperimentConfig& cfg, Emitter& em) {
  ProcessModel model;
  if (cfg.model_is_stable) {
    model.kind = ProcessModel::Kind::stable;
    model.stable = cfg.stable;
  } else {
    model.gaussian = cfg.gaussian;
  }
  const int dim = cfg.model_is_stable ? cfg.stable.dim : cfg.gaussian.dim;
  const FrequencySet freqs = FrequencySet::make(dim, cfg.q_min, cfg.j_max, cfg.random_directions, cfg.seed);
  const MomentDiagnostic diag = moment_decay(model, cfg.mc_samples, cfg.moment_order, 0.0, cfg.horizon,
                                             freqs, cfg.n, cfg.seed, cfg.q_fit_min, cfg.q_fit_max);
  if (em.csv()) {
    const std::string f = em.path("moments.csv");
    emit_moments_csv(diag, f);
    em.record(f);
    const std::string dat = em.path("moments.dat");
    emit_xy_dat(diag.q, diag.mean, dat);
    em.record(dat);
  }
  if (em.jsn()) {
    const std::string f = em.path("moments.json");
    emit_moments_json(diag, f);
    em.record(f);
  }
  em.man.stages.push_back(diag.inconclusive ? "moments: inconclusive" : "moments: ok");
}

void run_prevalence(const ExperimentConfig& cfg, Emitter& em) {
  const int dim = cfg.gaussian.dim;
  SampledPath shift;
  if (cfg.shift == "file") {
    shift = read_path_binary(cfg.shift_file);
  } else {
    shift = make_shift(cfg.shift, cfg.n, cfg.horizon, dim);
  }
  const PrevalenceReport rep = prevalence_harness(shift, cfg.gaussian, cfg.n, cfg.horizon, cfg.mc_samples,
                                                  cfg.margin, cfg.seed, cfg.levels, cfg.q_fit_min, cfg.q_fit_max);
  json j;
  j["samples"] = rep.samples;
  j["passed"] = rep.passed;
  j["inconclusive"] = rep.inconclusive;
  j["pass_rate"] = rep.pass_rate;
  j["target_rho"] = rep.target_rho;
  j["margin"] = rep.margin;
  j["rho_hats"] = rep.rho_hats;
  const std::string f = em.path("prevalence.json");
  std::ofstream out(f);
  out << j.dump(2) << "\n";
  out.close();
  em.record(f);
  em.man.stages.push_back("prevalence: ok");
}

}  // namespace

SampledPath make_shift(const std::string& name, std::size_t n, double horizon, int dim) {
  if (name == "zero") return SampledPath::zeros(dim, n, horizon);
  if (name == "polynomial")
    return SampledPath::from_function(dim, n, horizon, [](double t, double* out) {
      out[0] = t * (1.0 - t) * (2.0 + t);
    });
  if (name == "trigonometric")
    return SampledPath::from_function(dim, n, horizon, [](double t, double* out) {
      out[0] = std::sin(2.0 * std::numbers::pi * t) + 0.5 * std::cos(6.0 * std::numbers::pi * t);
    });
  if (name == "weierstrass")
    // 12-mode C^{1/2-} sum; amplitude keeps its Holder constant comparable to
    // a unit fBm's so finite-frequency probes are not swamped by the shift
    return SampledPath::from_function(dim, n, horizon, [](double t, double* out) {
      double acc = 0.0;
      for (int k = 0; k < 12; ++k)
        acc += 0.2 * std::pow(2.0, -0.5 * k) * std::cos(std::pow(2.0, k) * std::numbers::pi * t + 0.7 * k);
      out[0] = acc;
    });
  throw std::invalid_argument("make_shift: unknown shift '" + name + "'");
}

PrevalenceReport prevalence_harness(const SampledPath& shift, const GaussianModel& noise, std::size_t n,
                                    double horizon, std::size_t mc_samples, double margin, std::uint64_t seed,
                                    int levels, double q_lo, double q_hi) {
  if (shift.steps() != n || std::abs(shift.horizon - horizon) > 1e-12 * horizon)
    throw std::invalid_argument("prevalence_harness: shift grid mismatch");
  PrevalenceReport rep;
  rep.samples = mc_samples;
  rep.margin = margin;
  const double h = noise.kind == GaussianKind::brownian ? 0.5 : noise.hurst;
  rep.target_rho = 1.0 / (2.0 * h);
  if (mc_samples == 0) return rep;

  std::vector<double> rho_hats(mc_samples, 0.0);
  std::vector<int> flags(mc_samples, 0);
  parallel_for(0, mc_samples, [&](std::size_t i) {
    const SampledPath w = simulate_gaussian(noise, n, horizon, Seed{seed, i});
    SampledPath sum = w;
    for (std::size_t j = 0; j < sum.values.size(); ++j) sum.values[j] += shift.values[j];
    const FrequencySet freqs = FrequencySet::make(sum.dim, 1.0, 18);
    const PhiTable table = phi_table(sum, freqs, levels);
    const IrregularityReport irr = analyze_irregularity(table, {}, q_lo, q_hi);
    rho_hats[i] = irr.best_rho;
    const PowerFit* best = nullptr;
    for (std::size_t g = 0; g < irr.gamma_grid.size(); ++g)
      if (irr.gamma_grid[g] == irr.best_gamma) best = &irr.fits[g];
    if (best && best->r2 < 0.5)
      flags[i] = 2;  // inconclusive fit
    else
      flags[i] = rho_hats[i] >= rep.target_rho - margin ? 1 : 0;
  });
  for (std::size_t i = 0; i < mc_samples; ++i) {
    rep.rho_hats.push_back(rho_hats[i]);
    if (flags[i] == 2)
      ++rep.inconclusive;
    else if (flags[i] == 1)
      ++rep.passed;
  }
  const std::size_t conclusive = mc_samples - rep.inconclusive;
  rep.pass_rate = conclusive > 0 ? static_cast<double>(rep.passed) / static_cast<double>(conclusive) : 0.0;
  return rep;
}

RunManifest run_experiment(const TomlTable& raw_config) {
  const ExperimentConfig cfg = load_config(raw_config);
  RunManifest man;
  man.config_hash = hex64(fnv1a64_string(canonical_config_text(raw_config)));
  man.code_version = code_version();
  man.seed = cfg.seed;
  man.started = iso_now();

  fs::create_directories(cfg.out_dir);
  Emitter em{cfg, man};
  try {
    switch (cfg.kind) {
      case ExperimentKind::simulate: run_simulate(cfg, em); break;
      case ExperimentKind::phi: run_phi(cfg, em); break;
      case ExperimentKind::irregularity: run_irregularity(cfg, em); break;
      case ExperimentKind::average: run_average(cfg, em); break;
      case ExperimentKind::ode: run_ode(cfg, em); break;
      case ExperimentKind::geometry: run_geometry(cfg, em); break;
      case ExperimentKind::prevalence: run_prevalence(cfg, em); break;
      case ExperimentKind::moments: run_moments(cfg, em); break;
    }
  } catch (const std::exception& e) {
    man.stages.push_back(std::string("failed: ") + e.what());
    man.ok = false;
  }
  man.finished = iso_now();

  json j;
  j["config_hash"] = man.config_hash;
  j["code_version"] = man.code_version;
  j["seed"] = man.seed;
  j["started"] = man.started;
  j["finished"] = man.finished;
  j["ok"] = man.ok;
  j["stages"] = man.stages;
  j["warnings"] = man.warnings;
  json files = json::array();
  for (const auto& f : man.files) {
    json mf;
    mf["path"] = f.path;
    mf["bytes"] = f.bytes;
    mf["fnv64"] = f.fnv64;
    files.push_back(mf);
  }
  j["files"] = files;
  std::ofstream out((fs::path(cfg.out_dir) / "manifest.json").string());
  out << j.dump(2) << "\n";
  return man;
}

RunManifest run_experiment_file(const std::string& config_file) {
  return run_experiment(parse_toml_file(config_file));
}

}  // namespace irrlab
