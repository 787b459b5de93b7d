#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "irrlab/linalg.hpp"

namespace irrlab {

/// Uniform-grid samples of a path w : [0,T] -> R^d. Node k sits at k*T/n;
/// no time array is stored. Immutable by convention: operations return copies.
struct SampledPath {
  int dim = 1;                 // 1 <= d <= 3
  double horizon = 1.0;        // T, time units
  std::vector<double> values;  // (n+1) x dim, row-major, state units

  std::size_t steps() const { return values.size() / static_cast<std::size_t>(dim) - 1; }
  double dt() const { return horizon / static_cast<double>(steps()); }
  double time_at(std::size_t k) const { return horizon * static_cast<double>(k) / static_cast<double>(steps()); }
  const double* node(std::size_t k) const { return values.data() + k * static_cast<std::size_t>(dim); }
  double value(std::size_t k, int c = 0) const { return values[k * static_cast<std::size_t>(dim) + c]; }
  double& value(std::size_t k, int c = 0) { return values[k * static_cast<std::size_t>(dim) + c]; }

  /// Linear interpolation at an arbitrary time in [0,T].
  std::vector<double> at_time(double t) const;

  static SampledPath zeros(int dim, std::size_t n, double horizon);
  /// Tabulate closed-form coordinate functions on the grid.
  static SampledPath from_function(int dim, std::size_t n, double horizon,
                                   const std::function<void(double, double*)>& f);

  /// Throws std::invalid_argument on non-finite values, n < 2 or bad dim.
  void validate() const;
};

struct HolderEstimate {
  double exponent = 0.0;
  double seminorm = 0.0;
  double max_lag = 0.0;
  std::size_t arg_i = 0;  // attaining pair of grid nodes
  std::size_t arg_j = 0;
};

/// sup over grid pairs with 0 < t-s <= max_lag of |w_{s,t}| / (t-s)^delta.
HolderEstimate holder_seminorm(const SampledPath& path, double delta, double max_lag);

/// Scaling map of the oscillatory-norm calculus: w^l(t) = l^{-(1-gamma)/rho} w(l t).
/// Requires lambda*n integral; the result has lambda*n steps on horizon T so
/// every output node reads an input node exactly (no interpolation).
SampledPath rescale(const SampledPath& path, double lambda, double gamma, double rho);

/// Node-wise affine map A w_t + shift (covers reflection, translation, rotation).
SampledPath transform(const SampledPath& path, const Mat& a, const std::vector<double>& shift);

/// Sub-path on [t_j0, t_j1], re-indexed from time zero.
SampledPath restrict_nodes(const SampledPath& path, std::size_t j0, std::size_t j1);

// --- file formats ---

/// Binary layout: 16-byte magic "IRRLABPATHv1\0\0\0\0", little-endian u32 dim,
/// u64 n, f64 horizon, then (n+1)*dim f64 values row-major.
void write_path_binary(const SampledPath& path, const std::string& file);
SampledPath read_path_binary(const std::string& file);

/// CSV with header "t,x1[,x2[,x3]]", 17 significant digits.
void write_path_csv(const SampledPath& path, const std::string& file);
SampledPath read_path_csv(const std::string& file);

}  // namespace irrlab
