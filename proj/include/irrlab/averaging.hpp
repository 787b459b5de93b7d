#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irrlab/path.hpp"
#include "irrlab/spectral.hpp"

namespace irrlab {

/// T^w_{s,t} b in exact spectral form: term-wise c_j^out = c_j Phi_{s,t}(xi_j).
struct AveragedField {
  double s = 0.0, t = 0.0;
  SpectralField field;
};

/// Exact averaging of a finite Fourier-sum drift. If a table is supplied,
/// matching frequencies reuse its prefixes; anything else falls back to phi().
AveragedField average_spectral(const SampledPath& w, const SpectralField& b, std::size_t s_node,
                               std::size_t t_node, const PhiTable* table = nullptr);

/// Real scalar field on a uniform cell-centred grid (same layout as
/// OccupationDensity values).
struct GriddedField {
  int dim = 1;
  int bins = 0;
  std::vector<double> lo, hi;
  std::vector<double> values;

  double h(int axis) const { return (hi[axis] - lo[axis]) / static_cast<double>(bins); }
  /// Multilinear interpolation; zero outside the box.
  double evaluate(const std::vector<double>& x) const;
  static GriddedField tabulate(const SpectralField& f, const std::vector<double>& lo,
                               const std::vector<double>& hi, int bins);
};

/// T^w b = mu~ * b by zero-padded DFT correlation. The result lives on the
/// natural correlation grid, centred cells y_u = (u - (m-1)) h.
GriddedField average_grid(const OccupationDensity& density, const GriddedField& b);

struct GainProbe {
  double ratio = 0.0;  // ||T^w b||_{alpha+rho',p} / (|t-s|^gamma ||b||_{alpha,p})
  int level = 0;
  std::size_t interval = 0;
  std::size_t drift = 0;
};

struct GainReport {
  double alpha = 0.0, p = 2.0, gamma = 0.5, rho_gain = 0.0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  std::vector<GainProbe> probes;
};

/// Empirical operator-norm lower estimate for the averaging gain: random
/// drifts with |c_j| = <xi_j>^{-alpha-0.51} on the table lattice, ratios over
/// all dyadic intervals. A probe max, not a certified norm.
GainReport regularity_gain(const SampledPath& w, const PhiTable& table, double alpha, double p,
                           std::size_t n_drifts, double gamma, double rho_gain, std::uint64_t seed);

struct TimeAverageResult {
  AveragedField field;
  std::vector<std::string> warnings;
};

/// T^w_{s,t} b for time-dependent coefficients: per term the Young integral
/// int_s^t c_j(r) dPhi_r(xi_j) with germ c_j(u) Phi_{u,v}(xi_j), summed over
/// the path nodes in [s,t]. Emits a warning when beta + gamma <= 1.
TimeAverageResult average_time_dependent(const SampledPath& w, const TimeDependentDrift& b, double gamma,
                                         std::size_t s_node, std::size_t t_node);

}  // namespace irrlab
