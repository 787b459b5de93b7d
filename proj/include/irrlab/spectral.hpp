#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "irrlab/path.hpp"

namespace irrlab {

/// Half-octave frequency ladder q_j = q_min * 2^{j/2} crossed with a fixed
/// direction set: {+1} in d=1, 16 equi-angular unit vectors in d=2, 32
/// Fibonacci-lattice points in d=3. Extra random directions can be appended
/// for isotropy audits.
struct FrequencySet {
  int dim = 1;
  std::vector<double> magnitudes;
  std::vector<std::vector<double>> directions;

  static FrequencySet make(int dim, double q_min = 1.0, int j_max = 18, int random_directions = 0,
                           std::uint64_t direction_seed = 0);

  std::size_t count() const { return magnitudes.size() * directions.size(); }
  std::size_t mag_index(std::size_t flat) const { return flat / directions.size(); }
  std::size_t dir_index(std::size_t flat) const { return flat % directions.size(); }
  std::vector<double> frequency(std::size_t flat) const;
  void validate() const;
};

/// Dyadic intervals [k 2^-l T, (k+1) 2^-l T], levels 0..L, endpoints on grid
/// nodes (n divisible by 2^L).
struct IntervalFamily {
  int levels = 8;
  double horizon = 1.0;
  std::size_t path_steps = 0;

  static IntervalFamily make(const SampledPath& path, int levels = 8);
  std::size_t node_of_endpoint(int level, std::size_t k) const;
  std::size_t interval_count() const;  // sum over levels of 2^l
};

struct PhiValue {
  std::complex<double> value;
  double error_estimate = 0.0;  // |xi| * segment oscillation * dt, summed
};

/// Phi^w_{s,t}(xi) = int_s^t exp(i xi . w_r) dr for the piecewise-linear
/// interpolant, by exact per-segment quadrature. Computed as a prefix
/// difference P(t) - P(s) with a fixed left-to-right accumulation order, so
/// table-derived values coincide bit-for-bit with direct calls.
PhiValue phi(const SampledPath& path, std::size_t s_node, std::size_t t_node, const std::vector<double>& xi);

/// Base values Phi_{0,t} at all level-L endpoints for every frequency.
struct PhiTable {
  FrequencySet freqs;
  int levels = 8;
  double horizon = 1.0;
  std::size_t endpoints = 0;                 // 2^L + 1
  std::vector<std::complex<double>> prefix;  // [freq][endpoint]

  std::complex<double> prefix_at(std::size_t flat_freq, std::size_t endpoint) const {
    return prefix[flat_freq * endpoints + endpoint];
  }
  /// Derived interval value Phi_{s,t} = Phi_{0,t} - Phi_{0,s}; never recomputed.
  std::complex<double> value(std::size_t flat_freq, int level, std::size_t k) const;
  double interval_length(int level) const { return horizon / static_cast<double>(1ull << level); }
};

/// Single pass per frequency; parallel over frequencies. Throws a resource
/// error before allocating more than `max_bytes`.
PhiTable phi_table(const SampledPath& path, const FrequencySet& freqs, int levels = 8,
                   std::size_t max_bytes = std::size_t(1) << 31);

/// Gridded local time with mass bookkeeping: cloud-in-cell deposit of node
/// samples, each with weight dt, divided by the cell volume.
struct OccupationDensity {
  int dim = 1;
  int bins = 0;                 // per axis
  std::vector<double> lo, hi;   // box
  std::vector<double> values;   // bins^dim, row-major, time / state-volume
  double t_lo = 0.0, t_hi = 0.0;

  double h(int axis) const { return (hi[axis] - lo[axis]) / static_cast<double>(bins); }
  double cell_volume() const;
  double mass() const;  // sum * h^d, equals t_hi - t_lo up to 1e-9 T
  std::size_t cell_count() const { return values.size(); }
  std::vector<double> cell_center(std::size_t flat) const;
};

OccupationDensity occupation_density(const SampledPath& path, std::size_t s_node, std::size_t t_node,
                                     std::optional<std::vector<double>> box_lo, std::optional<std::vector<double>> box_hi,
                                     int bins);

/// DFT of the density grid at lattice frequencies 2 pi k / (hi - lo);
/// row-major over the fftshifted index cube [-m/2, m/2)^d.
struct DensitySpectrum {
  int dim = 1;
  int bins = 0;
  std::vector<double> dxi;                    // lattice spacing per axis
  std::vector<std::complex<double>> values;   // mu_hat(xi) = h^d sum rho(x) e^{-i xi.x}
  std::vector<double> frequency(std::size_t flat) const;
};

DensitySpectrum density_spectrum(const OccupationDensity& d);

/// CIC transfer function: prod_axis sinc^2(xi_a h_a / 2).
double cic_transfer(const std::vector<double>& xi, const std::vector<double>& h);

/// Drift as a finite Hermitian-symmetric Fourier sum b(x) = sum c_j e^{i xi_j . x}.
struct SpectralField {
  int dim = 1;
  bool hermitian = true;
  std::vector<std::vector<double>> freqs;
  std::vector<std::complex<double>> coeffs;

  std::complex<double> evaluate(const std::vector<double>& x) const;
  double evaluate_real(const std::vector<double>& x) const;
  /// Append (-xi, conj(c)) partners for every term that lacks one.
  void enforce_hermitian();
  void validate() const;
  std::size_t terms() const { return coeffs.size(); }
};

/// Coefficient-wise product over matched frequencies (torus convolution of
/// the finite sums). Frequencies present in only one field are dropped.
SpectralField convolve_fields(const SpectralField& f, const SpectralField& g);

/// Drift with time-dependent coefficients b(t,x) = sum_j c_j(t) e^{i xi_j . x};
/// the coefficient paths are sampled on the carrier path's grid.
struct TimeDependentDrift {
  int dim = 1;
  double beta_declared = 1.0;  // Holder-in-time exponent of the c_j
  std::vector<std::vector<double>> freqs;
  std::vector<std::vector<std::complex<double>>> coeff_paths;  // per term, n+1 samples

  void validate(std::size_t path_steps) const;
};

/// Prefix values Phi_{0, k*stride} for a list of frequencies, one fixed
/// left-to-right pass per frequency (the same accumulation the table uses).
std::vector<std::vector<std::complex<double>>> phi_prefixes(const SampledPath& path,
                                                            const std::vector<std::vector<double>>& xis,
                                                            std::size_t record_stride);

/// Discrete Fourier-Lebesgue norm of the density spectrum: quadrature of
/// ( int <xi>^{a p} |mu_hat|^p dxi )^{1/p}, p = inf -> max. Aliasing caveat:
/// this is the continuum norm restricted to the box lattice.
double fl_norm(const OccupationDensity& density, double alpha, double p);
/// Exact finite sum over the field's terms (counting measure).
double fl_norm(const SpectralField& field, double alpha, double p);

/// Zero-padded cell-centre transform |A(xi)|^2 of a density, precomputed for
/// energy-integral scans over several alpha values.
struct EnergySpectrum {
  int dim = 1;
  std::size_t padded = 0;
  std::vector<double> h;     // deposit cell widths
  std::vector<double> mod2;  // |A(xi_k)|^2 over the padded lattice, row-major
};

EnergySpectrum energy_spectrum(const OccupationDensity& density);

/// Energy integral I^alpha(mu) in frequency space. For alpha < d the Riesz
/// constant 2^-alpha pi^{-d/2} Gamma((d-alpha)/2)/Gamma(alpha/2) makes it
/// match the double-sum definition (cell-integrated kernel weights plus
/// Brillouin replicas of the piecewise-constant transform); for alpha >= d,
/// where the kernel form diverges for any density, the constant is 1 and the
/// single-zone sum serves as a homogeneous-Sobolev stability diagnostic.
double energy_integral(const EnergySpectrum& spectrum, double alpha);
double energy_integral(const OccupationDensity& density, double alpha);

}  // namespace irrlab
