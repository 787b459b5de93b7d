#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "irrlab/path.hpp"
#include "irrlab/spectral.hpp"

namespace irrlab {

/// Fraction of grid nodes t in B(s, eps) with |w_t - w_s| <= M |t-s|^delta,
/// per scale eps. The centre node always satisfies the closed condition.
struct DensityCurve {
  std::size_t center = 0;
  double delta = 0.0;
  double m_const = 1.0;
  std::vector<double> eps;
  std::vector<double> fraction;
};

DensityCurve holder_density(const SampledPath& path, std::size_t s_node, double delta, double m_const,
                            std::vector<double> eps_list);

/// L_theta(eps) = min over grid s and directions v of
/// max over t with |t-s| < eps of |v . w_{s,t}| / eps^theta.
struct RoughnessModulus {
  double theta = 0.0;
  std::vector<double> eps;
  std::vector<double> modulus;
  std::vector<std::size_t> witness_s;
  std::vector<std::size_t> witness_dir;
};

RoughnessModulus roughness_modulus(const SampledPath& path, double theta, std::vector<double> eps_list,
                                   const std::vector<std::vector<double>>& directions, std::size_t s_stride = 1);

/// Exact max of sum |w_{t_i,t_{i+1}}|^p over partitions of the (uniformly
/// subsampled) grid, by O(k^2) dynamic programming.
struct PVariationResult {
  double p = 1.0;
  double value = 0.0;        // sup of the p-sum (not the 1/p root)
  std::size_t nodes_used = 0;
  std::size_t subsample_stride = 1;
};

PVariationResult p_variation(const SampledPath& path, double p, std::size_t max_nodes = 4096);

/// Two-track dimension estimate of the image w([s,t]): per-shell sups of
/// |Phi| fitted on log-log axes (estimate min(d, 2 e_hat)) plus the largest
/// alpha with a refinement-stable energy integral.
struct DimensionEstimate {
  double fourier = 0.0;       // min(d, 2 e_hat)
  double decay_exponent = 0.0;
  double fit_r2 = 0.0;
  bool inconclusive = false;  // fit R^2 < 0.7
  double energy_alpha = 0.0;  // largest stable alpha
  bool tracks_disagree = false;  // |fourier - energy_alpha| > 0.5
};

DimensionEstimate fourier_dimension(const SampledPath& path, std::size_t s_node, std::size_t t_node,
                                    double q_lo = 8.0, double q_hi = 256.0);

struct BoxCount {
  std::vector<double> mesh;
  std::vector<std::size_t> boxes;
  double dimension = 0.0;
  bool inconclusive = false;
};

BoxCount box_dimension(const SampledPath& path, std::size_t s_node, std::size_t t_node, int scale_levels = 6);

/// W(r,T) = max over grid t of sum_s dt 1{|w_t - w_s| < r}, with the
/// flatness of W/(2r) as the linearity diagnostic.
struct OccupationWindow {
  std::vector<double> r;
  std::vector<double> w;
  std::vector<double> w_over_2r;
  double flatness = 0.0;  // max/min of W/(2r); large values flag no linear bound
  bool linear_bound = false;
};

OccupationWindow occupation_window(const SampledPath& path, std::vector<double> r_list);

}  // namespace irrlab
