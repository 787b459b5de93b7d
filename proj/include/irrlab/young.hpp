#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "irrlab/path.hpp"
#include "irrlab/spectral.hpp"

namespace irrlab {

/// Two-parameter germ on [0, horizon]; Gamma(t,t) = 0 is assumed. The sewing
/// construction needs the defect delta Gamma to vanish at declared order
/// beta > 1.
struct Germ {
  int value_dim = 1;
  double alpha_declared = 0.5;
  double beta_declared = 1.5;
  std::function<void(double s, double t, double* out)> eval;
};

struct SewResult {
  int value_dim = 1;
  int level = 0;
  double horizon = 1.0;
  std::vector<double> values;       // (2^level + 1) x value_dim, starts at 0
  std::vector<double> level_diffs;  // sup |I^(l)| - |I^(l-1)| over shared nodes
  double order = 0.0;               // fitted convergence order, ~ beta - 1
  bool diverged = false;

  double value(std::size_t node, int c) const { return values[node * value_dim + c]; }
};

/// Riemann-germ sums over the level-L dyadic partition, with a refinement
/// diagnostic over `diagnostic_levels` coarser partitions.
SewResult sew(const Germ& germ, double horizon, int level, int diagnostic_levels = 3);

struct YoungResult {
  SampledPath integral;   // rows-dimensional path on the input grid
  double order = 0.0;     // refinement order across dyadic coarsenings
  bool diverged = false;
  bool regularity_warning = false;  // measured alpha + beta <= 1
  double measured_alpha = 0.0;      // integrand A
  double measured_beta = 0.0;       // integrator phi
};

/// Young integral int_0^. A_s d phi_s via the germ A_s phi_{s,t}. A is a
/// matrix path stored flattened row-major with dim = rows * phi.dim.
YoungResult young_integral(const SampledPath& a, const SampledPath& phi_path);

/// Dyadic-lag estimate of a Holder exponent from sup increments.
double estimate_holder_exponent(const SampledPath& path);

/// Perturbed ODE x_t = x0 + int_0^t b(s, x_s) ds + w_t, integrated in the
/// shifted variable theta = x - w by Euler steps on the exactly averaged
/// field: theta_{k+1} = theta_k + (T^w_{t_k,t_{k+1}} b)(theta_k).
struct OdeProblem {
  std::vector<SpectralField> drift;               // one scalar field per component
  std::optional<TimeDependentDrift> drift_time;   // alternative: time-dependent terms (d = 1)
  SampledPath w;
  std::vector<double> x0;
  int level = 10;  // scheme level L_s; 2^L_s steps
};

struct OdeSolution {
  SampledPath x;
  SampledPath theta;
  bool blowup = false;
  std::size_t blowup_step = 0;
  double max_imag = 0.0;  // Hermitian-symmetry residual of field evaluations
};

OdeSolution solve_ode(const OdeProblem& problem);

struct FlowDiagnostic {
  std::vector<double> eps;
  std::vector<double> sup_ratio;  // sup_t |x^eps - x| / eps
  std::vector<bool> blowup;
  double ratio_spread = 0.0;  // max/min over non-blowup runs
};

FlowDiagnostic flow_diagnostic(const OdeProblem& problem, const std::vector<double>& eps_list);

/// w~_r = w(tau^{-1}(r)) sampled on the uniform grid of [0, tau(T)];
/// tau must be strictly increasing with tau(0) = 0.
SampledPath reparametrize(const SampledPath& path, const std::function<double(double)>& tau);

}  // namespace irrlab
