#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "irrlab/simulate.hpp"
#include "irrlab/spectral.hpp"

namespace irrlab {

/// Per-shell envelope E_gamma(q_j) = max over dyadic intervals (all levels)
/// and directions of |Phi_{s,t}(xi)| |t-s|^{-gamma} at |xi| = q_j.
struct ShellEnvelope {
  double gamma = 0.5;
  std::vector<double> q;
  std::vector<double> value;
};

ShellEnvelope envelope(const PhiTable& table, double gamma);

struct PowerFit {
  double rho = 0.0;  // -slope of log E vs log q
  double c = 0.0;    // exp(intercept)
  double r2 = 0.0;
  double q_lo = 0.0, q_hi = 0.0;
  std::size_t shells = 0;
};

/// Least-squares fit of log E against log q over shells in [q_lo, q_hi];
/// requires at least 6 shells in range.
PowerFit fit_rho(const ShellEnvelope& env, double q_lo = 8.0, double q_hi = 512.0);

/// Exponential-decay alternative: fit of log E against q (not log q). The
/// exponential model is selected when its R^2 beats the power fit's.
struct DecayFit {
  bool exponential_selected = false;
  double c1 = 0.0, c2 = 0.0;  // E ~ c1 exp(-c2 q)
  double r2_exp = 0.0;
  PowerFit power;
};

DecayFit fit_exponential(const ShellEnvelope& env, double q_lo = 8.0, double q_hi = 512.0);

/// Discrete check of the interpolation inequality: the sup-norm at
/// (1 - theta + theta gamma, theta rho) is bounded by N^theta (1 + 1e-9)
/// where N is the sup-norm at (gamma, rho). Exact interval-by-interval.
struct InterpolationCheck {
  double theta = 0.0, gamma = 0.0, rho = 0.0;
  double gamma_theta = 0.0, rho_theta = 0.0;
  double base_norm = 0.0;      // N
  double interp_norm = 0.0;    // sup at (gamma^theta, theta rho)
  double bound = 0.0;          // N^theta (1 + 1e-9)
  bool holds = false;
};

InterpolationCheck interpolation_check(const PhiTable& table, double gamma, double rho, double theta);

/// Discrete sup of |Phi| |xi|^rho / |t-s|^gamma over the table.
double sup_norm(const PhiTable& table, double gamma, double rho);

struct IrregularityReport {
  std::vector<double> gamma_grid;
  std::vector<ShellEnvelope> envelopes;  // per gamma
  std::vector<PowerFit> fits;            // per gamma
  double q_lo = 8.0, q_hi = 512.0;
  double best_rho = 0.0;        // max over grid of rho(gamma)
  double best_gamma = 0.0;
  double norm_at_best = 0.0;    // sup-norm at (best_gamma, best_rho)
  double delta_star = 0.0;      // min over grid of (1-gamma)/rho(gamma), rho > 0
};

/// Full gamma-grid profile; the default grid is 0.50 .. 0.95 step 0.05.
IrregularityReport analyze_irregularity(const PhiTable& table, std::vector<double> gamma_grid = {},
                                        double q_lo = 8.0, double q_hi = 512.0);

/// Strong irregularity probe: sup over intervals and xi of
/// |int_s^t e^{i xi.w + i g_eta(r)} dr| F(xi) / phi(|t-s|) per polynomial
/// coefficient vector eta, g_eta(r) = sum_k eta_k r^k, F(xi) = |xi|^rho /
/// sqrt(log |xi|). Segment quadrature linearizes the polynomial phase at the
/// midpoint and subdivides until the curvature error is below 1e-3.
struct StrongEnvelopeRow {
  std::vector<double> eta;
  double eta_norm = 0.0;
  double raw_sup = 0.0;     // sup of |I| F / phi(|t-s|)
  double normalized = 0.0;  // raw / sqrt(log(1 + |eta|)); equals raw at eta = 0
};

std::vector<StrongEnvelopeRow> strong_envelope(const SampledPath& path, int degree,
                                               const std::vector<std::vector<double>>& etas,
                                               const FrequencySet& freqs, int levels, double rho);

/// Lattice {0, +-2^k}^degree, k = 0..k_max.
std::vector<std::vector<double>> eta_lattice(int degree, int k_max);

/// sqrt(x |log x|) modulus-of-continuity normalizer.
double phi_modulus(double x);

struct ProcessModel {
  enum class Kind { gaussian, stable } kind = Kind::gaussian;
  GaussianModel gaussian;
  StableModel stable;
};

/// Monte-Carlo moment diagnostic: per-shell mean of |Phi_{s,t}(xi)|^{2 n_m}
/// with batch-split error bars and the fitted log-log slope, compared to the
/// model's target -n_m / beta (Gaussian) or -alpha (stable, n_m = 1). For
/// stable models the empirical characteristic function at the probe shells is
/// recorded alongside exp(-(t-s) G(xi)).
struct MomentDiagnostic {
  int moment_order = 1;  // n_m
  std::vector<double> q;
  std::vector<double> mean;    // E |Phi|^{2 n_m}
  std::vector<double> stderr_; // batch-split standard error
  double slope = 0.0;
  double slope_stderr = 0.0;
  double target_slope = 0.0;
  bool inconclusive = false;   // slope CI wider than 0.5
  std::vector<double> cf_real;      // stable only: Re E e^{i xi (X_t - X_s)}
  std::vector<double> cf_target;    // exp(-(t-s) G(xi))
  std::vector<double> cf_stderr;
};

MomentDiagnostic moment_decay(const ProcessModel& model, std::size_t mc_samples, int moment_order,
                              double s, double t, const FrequencySet& freqs, std::size_t n_steps,
                              std::uint64_t seed, double q_lo = 8.0, double q_hi = 512.0);

/// Anisotropic frequency size |||xi|||_alpha = sqrt(sum |xi_i|^{alpha_i}).
double anisotropic_norm(const std::vector<double>& xi, const std::vector<double>& alphas);

}  // namespace irrlab
