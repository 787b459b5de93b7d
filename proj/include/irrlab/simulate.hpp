#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "irrlab/linalg.hpp"
#include "irrlab/path.hpp"
#include "irrlab/rng.hpp"

namespace irrlab {

enum class GaussianKind {
  brownian,
  fbm,
  integrated_fbm,
  ornstein_uhlenbeck,
  moving_average,
  log_bm,
  fbm_sum,
};

/// Seed-deterministic Gaussian model specification. Fields are read per kind;
/// validate() enforces the per-kind constraints.
struct GaussianModel {
  GaussianKind kind = GaussianKind::fbm;
  int dim = 1;

  double hurst = 0.5;        // fbm / integrated_fbm, H in (0,1)
  int integration_order = 1; // integrated_fbm, m >= 1

  Mat ou_a;                                        // d x d
  double ou_sigma = 1.0;                           // > 0
  std::vector<double> ou_x0;                       // length d
  std::vector<std::vector<double>> ou_drift;       // poly coeffs f(t) = sum_j c_j t^j, each c_j length d

  double ma_beta = 0.75;                           // power kernel K(u) = u^{beta - 1/2}
  std::function<double(double)> ma_kernel;         // optional tabulated kernel override

  double logbm_beta = 1.0;                         // > 0; requires horizon <= 0.45

  std::vector<std::pair<double, double>> fbm_sum_terms;  // (H_k, lambda_k), H_k strictly decreasing

  void validate(double horizon) const;
  /// SLND/eSLND exponent used as a slope target: H for fbm, 1/2 for brownian,
  /// m+H for integrated fbm, beta for moving averages.
  double slnd_exponent() const;
};

struct StableModel {
  double alpha = 1.5;                 // (0,2)
  bool axes = true;                   // axes spectral measure; false = isotropic
  std::vector<double> alpha_per_axis; // optional anisotropic exponents (axes only)
  int dim = 1;

  void validate() const;
  double axis_alpha(int i) const { return alpha_per_axis.empty() ? alpha : alpha_per_axis[i]; }
};

/// Stream-addressed seed: (root, path_index) picks the sample stream; the
/// per-coordinate substream is derived inside the generators.
struct Seed {
  std::uint64_t root = 0;
  std::uint64_t path_index = 0;
};

/// Exact-in-distribution sampling. fBm uses circulant embedding of fractional
/// Gaussian noise per coordinate; a non-positive embedding eigenvalue falls
/// back to the Cholesky route (n <= 2048) and appends to `warnings`.
SampledPath simulate_gaussian(const GaussianModel& model, std::size_t n, double horizon, Seed seed,
                              std::vector<std::string>* warnings = nullptr);

SampledPath simulate_stable(const StableModel& model, std::size_t n, double horizon, Seed seed);

/// Cholesky-factor sampler for fGn; reference oracle for the circulant route.
SampledPath simulate_fbm_cholesky(double hurst, int dim, std::size_t n, double horizon, Seed seed);

/// Analytic Var(X_t | F_s) for the closed-form models. integrated_fbm returns
/// the local form c_{m,H} |t-s|^{2(m+H)} with c_{m,H} = Gamma(H+m+1/2)^{-2} / (2(m+H)).
Mat conditional_variance(const GaussianModel& model, double s, double t);

struct ConditionalVarianceEstimate {
  Mat covariance;
  bool regularized = false;
  std::size_t samples = 0;
  std::size_t regressors = 0;
};

/// Residual covariance of X_t after least-squares projection on the history
/// values (all coordinates at the given nodes), mean-centred and corrected by
/// M/(M - p - 1). Gaussian conditional-variance estimator.
ConditionalVarianceEstimate empirical_conditional_variance(const std::vector<SampledPath>& samples,
                                                           std::size_t t_node,
                                                           const std::vector<std::size_t>& history_nodes);

enum class ComposeKind { add, multiply, young_integral };

struct ComposeSpec {
  ComposeKind kind = ComposeKind::add;
  SampledPath factor;  // f (add/multiply, dim matching) or A (young, row-major dim*dim path)
};

struct ComposeResult {
  SampledPath path;
  std::vector<std::string> warnings;
};

ComposeResult controlled_compose(const SampledPath& w, const ComposeSpec& spec);

// internal reuse: cumulative trapezoid of a path
SampledPath cumulative_trapezoid(const SampledPath& p);

}  // namespace irrlab
