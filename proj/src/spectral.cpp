#include "irrlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "irrlab/fft.hpp"
#include "irrlab/parallel.hpp"
#include "irrlab/rng.hpp"

namespace irrlab {

FrequencySet FrequencySet::make(int dim, double q_min, int j_max, int random_directions,
                                std::uint64_t direction_seed) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("FrequencySet: dim must be in [1,3]");
  if (!(q_min > 0.0)) throw std::invalid_argument("FrequencySet: q_min must be positive");
  if (j_max < 0) throw std::invalid_argument("FrequencySet: j_max must be >= 0");
  FrequencySet fs;
  fs.dim = dim;
  fs.magnitudes.resize(static_cast<std::size_t>(j_max) + 1);
  for (int j = 0; j <= j_max; ++j) fs.magnitudes[j] = q_min * std::pow(2.0, 0.5 * j);

  if (dim == 1) {
    fs.directions.push_back({1.0});
  } else if (dim == 2) {
    for (int k = 0; k < 16; ++k) {
      const double a = std::numbers::pi * static_cast<double>(k) / 16.0;
      fs.directions.push_back({std::cos(a), std::sin(a)});
    }
  } else {
    // Fibonacci lattice on the sphere
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int k = 0; k < 32; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / 32.0;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / golden;
      fs.directions.push_back({r * std::cos(a), r * std::sin(a), z});
    }
  }
  if (random_directions > 0) {
    Rng rng(direction_seed, 0x4449u);
    for (int k = 0; k < random_directions; ++k) {
      std::vector<double> v(dim);
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (int c = 0; c < dim; ++c) {
          v[c] = rng.normal();
          norm2 += v[c] * v[c];
        }
      } while (norm2 < 1e-12);
      const double inv = 1.0 / std::sqrt(norm2);
      for (double& x : v) x *= inv;
      fs.directions.push_back(v);
    }
  }
  fs.validate();
  return fs;
}

std::vector<double> FrequencySet::frequency(std::size_t flat) const {
  const double q = magnitudes[mag_index(flat)];
  const std::vector<double>& dir = directions[dir_index(flat)];
  std::vector<double> xi(dim);
  for (int c = 0; c < dim; ++c) xi[c] = q * dir[c];
  return xi;
}

void FrequencySet::validate() const {
  for (std::size_t j = 1; j < magnitudes.size(); ++j)
    if (!(magnitudes[j] > magnitudes[j - 1])) throw std::invalid_argument("FrequencySet: magnitudes must increase");
  for (const auto& d : directions) {
    double n2 = 0.0;
    for (double v : d) n2 += v * v;
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12) throw std::invalid_argument("FrequencySet: directions must be unit");
  }
}

IntervalFamily IntervalFamily::make(const SampledPath& path, int levels) {
  if (levels < 0) throw std::invalid_argument("IntervalFamily: levels must be >= 0");
  IntervalFamily f;
  f.levels = levels;
  f.horizon = path.horizon;
  f.path_steps = path.steps();
  if (f.path_steps % (std::size_t(1) << levels) != 0)
    throw std::invalid_argument("IntervalFamily: n must be divisible by 2^levels");
  return f;
}

std::size_t IntervalFamily::node_of_endpoint(int level, std::size_t k) const {
  return k * (path_steps >> level);
}

std::size_t IntervalFamily::interval_count() const {
  return (std::size_t(1) << (levels + 1)) - 1;
}

namespace {

// contribution of one linear-phase segment: e^{ia} (e^{ib dt} - 1) / (ib),
// with the |b dt| < 1e-8 branch dt e^{ia} (1 + i b dt / 2)
inline std::complex<double> segment_integral(double a, double b_dt, double dt) {
  const double ca = std::cos(a), sa = std::sin(a);
  if (std::abs(b_dt) < 1e-8) {
    const double re = 1.0;
    const double im = 0.5 * b_dt;
    return {dt * (ca * re - sa * im), dt * (sa * re + ca * im)};
  }
  const double c = std::cos(b_dt) - 1.0;
  const double s = std::sin(b_dt);
  // (c + i s)/(i b) = (s - i c)/b, then times dt/(b_dt) since b = b_dt/dt
  const double re = s / b_dt * dt;
  const double im = -c / b_dt * dt;
  return {ca * re - sa * im, sa * re + ca * im};
}

}  // namespace

PhiValue phi(const SampledPath& path, std::size_t s_node, std::size_t t_node, const std::vector<double>& xi) {
  path.validate();
  if (xi.size() != static_cast<std::size_t>(path.dim)) throw std::invalid_argument("phi: frequency dim mismatch");
  for (double v : xi)
    if (!std::isfinite(v)) throw std::invalid_argument("phi: non-finite frequency");
  const std::size_t n = path.steps();
  if (s_node >= t_node || t_node > n) throw std::invalid_argument("phi: need s < t grid nodes");

  const double dt = path.dt();
  double xi_norm = 0.0;
  for (double v : xi) xi_norm += v * v;
  xi_norm = std::sqrt(xi_norm);

  std::complex<double> acc(0.0, 0.0);
  std::complex<double> at_s(0.0, 0.0);
  double err = 0.0;
  double dot_k = 0.0;
  for (int c = 0; c < path.dim; ++c) dot_k += xi[c] * path.value(0, c);
  for (std::size_t k = 0; k < t_node; ++k) {
    double dot_k1 = 0.0;
    for (int c = 0; c < path.dim; ++c) dot_k1 += xi[c] * path.value(k + 1, c);
    acc += segment_integral(dot_k, dot_k1 - dot_k, dt);
    if (k >= s_node) {
      double osc2 = 0.0;
      for (int c = 0; c < path.dim; ++c) {
        const double d = path.value(k + 1, c) - path.value(k, c);
        osc2 += d * d;
      }
      err += dt * std::min(2.0, xi_norm * std::sqrt(osc2));
    }
    dot_k = dot_k1;
    if (k + 1 == s_node) at_s = acc;
  }
  PhiValue out;
  out.value = acc - at_s;
  out.error_estimate = err;
  return out;
}

std::complex<double> PhiTable::value(std::size_t flat_freq, int level, std::size_t k) const {
  const std::size_t stride = (endpoints - 1) >> level;
  return prefix_at(flat_freq, (k + 1) * stride) - prefix_at(flat_freq, k * stride);
}

PhiTable phi_table(const SampledPath& path, const FrequencySet& freqs, int levels, std::size_t max_bytes) {
  path.validate();
  freqs.validate();
  if (freqs.dim != path.dim) throw std::invalid_argument("phi_table: frequency dim mismatch");
  const std::size_t n = path.steps();
  if (n % (std::size_t(1) << levels) != 0) throw std::invalid_argument("phi_table: n must be divisible by 2^levels");

  PhiTable table;
  table.freqs = freqs;
  table.levels = levels;
  table.horizon = path.horizon;
  table.endpoints = (std::size_t(1) << levels) + 1;
  const std::size_t need = freqs.count() * table.endpoints * sizeof(std::complex<double>);
  if (need > max_bytes) throw std::runtime_error("phi_table: memory estimate exceeds cap");
  table.prefix.assign(freqs.count() * table.endpoints, std::complex<double>(0.0, 0.0));

  const double dt = path.dt();
  const std::size_t record_stride = n >> levels;

  parallel_for(0, freqs.count(), [&](std::size_t f) {
    const std::vector<double> xi = table.freqs.frequency(f);
    std::complex<double>* out = table.prefix.data() + f * table.endpoints;
    std::complex<double> acc(0.0, 0.0);
    out[0] = acc;
    double dot_k = 0.0;
    for (int c = 0; c < path.dim; ++c) dot_k += xi[c] * path.value(0, c);
    std::size_t next_record = record_stride;
    std::size_t rec = 1;
    for (std::size_t k = 0; k < n; ++k) {
      double dot_k1 = 0.0;
      for (int c = 0; c < path.dim; ++c) dot_k1 += xi[c] * path.value(k + 1, c);
      acc += segment_integral(dot_k, dot_k1 - dot_k, dt);
      dot_k = dot_k1;
      if (k + 1 == next_record) {
        out[rec++] = acc;
        next_record += record_stride;
      }
    }
  });
  return table;
}

double OccupationDensity::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= h(a);
  return v;
}

double OccupationDensity::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * cell_volume();
}

std::vector<double> OccupationDensity::cell_center(std::size_t flat) const {
  std::vector<double> x(dim);
  std::size_t rem = flat;
  for (int a = dim - 1; a >= 0; --a) {
    const std::size_t idx = rem % static_cast<std::size_t>(bins);
    rem /= static_cast<std::size_t>(bins);
    x[a] = lo[a] + (static_cast<double>(idx) + 0.5) * h(a);
  }
  return x;
}

OccupationDensity occupation_density(const SampledPath& path, std::size_t s_node, std::size_t t_node,
                                     std::optional<std::vector<double>> box_lo,
                                     std::optional<std::vector<double>> box_hi, int bins) {
  path.validate();
  if (path.dim > 3) throw std::invalid_argument("occupation_density: dim must be <= 3");
  if (bins < 8 || bins > 4096) throw std::invalid_argument("occupation_density: bins per axis must be in [8, 4096]");
  if (s_node >= t_node || t_node > path.steps()) throw std::invalid_argument("occupation_density: bad interval");
  const int d = path.dim;
  std::size_t cells = 1;
  for (int a = 0; a < d; ++a) {
    cells *= static_cast<std::size_t>(bins);
    if (cells > (std::size_t(1) << 26)) throw std::runtime_error("occupation_density: grid too large");
  }

  // one sample per segment at its midpoint, weight dt; midpoint sampling
  // keeps the time-quadrature error second order, which the spectral duality
  // checks rely on
  auto sample = [&](std::size_t k, int c) { return 0.5 * (path.value(k, c) + path.value(k + 1, c)); };
  std::vector<double> mn(d, 1e300), mx(d, -1e300);
  for (std::size_t k = s_node; k < t_node; ++k)
    for (int c = 0; c < d; ++c) {
      const double v = sample(k, c);
      mn[c] = std::min(mn[c], v);
      mx[c] = std::max(mx[c], v);
    }

  OccupationDensity dens;
  dens.dim = d;
  dens.bins = bins;
  dens.t_lo = path.time_at(s_node);
  dens.t_hi = path.time_at(t_node);
  bool expand = !box_lo.has_value() || !box_hi.has_value();
  if (!expand) {
    // the deposit needs one cell of clearance; auto-expand otherwise
    for (int c = 0; c < d && !expand; ++c) {
      const double h = ((*box_hi)[c] - (*box_lo)[c]) / bins;
      if (mn[c] < (*box_lo)[c] + h || mx[c] > (*box_hi)[c] - h) expand = true;
    }
  }
  if (expand) {
    dens.lo.resize(d);
    dens.hi.resize(d);
    for (int c = 0; c < d; ++c) {
      double width = mx[c] - mn[c];
      if (width <= 0.0) width = 1.0;
      const double h = width / static_cast<double>(bins - 4);
      dens.lo[c] = mn[c] - 2.0 * h;
      dens.hi[c] = mx[c] + 2.0 * h;
    }
  } else {
    dens.lo = *box_lo;
    dens.hi = *box_hi;
  }

  dens.values.assign(cells, 0.0);
  const double dt = path.dt();
  std::vector<double> hh(d);
  for (int c = 0; c < d; ++c) hh[c] = dens.h(c);

  std::vector<int> base(d);
  std::vector<double> frac(d);
  for (std::size_t k = s_node; k < t_node; ++k) {
    for (int c = 0; c < d; ++c) {
      const double u = (sample(k, c) - dens.lo[c]) / hh[c] - 0.5;
      double fl = std::floor(u);
      int b = static_cast<int>(fl);
      double fr = u - fl;
      if (b < 0) {  // clamp keeps the mass ledger exact
        b = 0;
        fr = 0.0;
      }
      if (b >= bins - 1) {
        b = bins - 2;
        fr = 1.0;
      }
      base[c] = b;
      frac[c] = fr;
    }
    const int corners = 1 << d;
    for (int corner = 0; corner < corners; ++corner) {
      double w = dt;
      std::size_t flat = 0;
      for (int c = 0; c < d; ++c) {
        const int bit = (corner >> c) & 1;
        w *= bit ? frac[c] : (1.0 - frac[c]);
        flat = flat * static_cast<std::size_t>(bins) + static_cast<std::size_t>(base[c] + bit);
      }
      dens.values[flat] += w;
    }
  }
  const double inv_vol = 1.0 / dens.cell_volume();
  for (double& v : dens.values) v *= inv_vol;
  return dens;
}

DensitySpectrum density_spectrum(const OccupationDensity& d) {
  DensitySpectrum sp;
  sp.dim = d.dim;
  sp.bins = d.bins;
  sp.dxi.resize(d.dim);
  for (int a = 0; a < d.dim; ++a) sp.dxi[a] = 2.0 * std::numbers::pi / (d.hi[a] - d.lo[a]);

  std::vector<cplx> grid(d.values.begin(), d.values.end());
  std::vector<std::size_t> dims(d.dim, static_cast<std::size_t>(d.bins));
  grid = dft_nd(std::move(grid), dims, false);

  // fftshift and attach the continuum phase/scale: mu_hat(xi_k) =
  // h^d e^{-i xi.x_center(0)} DFT_k with x(j) = lo + (j+1/2) h
  const std::size_t cells = grid.size();
  sp.values.assign(cells, cplx(0, 0));
  const int m = d.bins;
  std::vector<int> idx(d.dim);
  const double vol = d.cell_volume();
  for (std::size_t flat = 0; flat < cells; ++flat) {
    std::size_t rem = flat;
    for (int a = d.dim - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % static_cast<std::size_t>(m));
      rem /= static_cast<std::size_t>(m);
    }
    // shifted index: k in [-m/2, m/2)
    std::size_t src = 0;
    double phase = 0.0;
    for (int a = 0; a < d.dim; ++a) {
      const int k = idx[a] - m / 2;
      const int wrapped = (k % m + m) % m;
      src = src * static_cast<std::size_t>(m) + static_cast<std::size_t>(wrapped);
      const double xi_a = sp.dxi[a] * static_cast<double>(k);
      phase -= xi_a * (d.lo[a] + 0.5 * d.h(a));
    }
    sp.values[flat] = vol * grid[src] * cplx(std::cos(phase), std::sin(phase));
  }
  return sp;
}

std::vector<double> DensitySpectrum::frequency(std::size_t flat) const {
  std::vector<double> xi(dim);
  std::size_t rem = flat;
  for (int a = dim - 1; a >= 0; --a) {
    const int idx = static_cast<int>(rem % static_cast<std::size_t>(bins));
    rem /= static_cast<std::size_t>(bins);
    xi[a] = dxi[a] * static_cast<double>(idx - bins / 2);
  }
  return xi;
}

double cic_transfer(const std::vector<double>& xi, const std::vector<double>& h) {
  double t = 1.0;
  for (std::size_t a = 0; a < xi.size(); ++a) {
    const double u = 0.5 * xi[a] * h[a];
    const double s = std::abs(u) < 1e-12 ? 1.0 : std::sin(u) / u;
    t *= s * s;
  }
  return t;
}

std::complex<double> SpectralField::evaluate(const std::vector<double>& x) const {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    double dot = 0.0;
    for (int c = 0; c < dim; ++c) dot += freqs[j][c] * x[c];
    acc += coeffs[j] * std::complex<double>(std::cos(dot), std::sin(dot));
  }
  return acc;
}

double SpectralField::evaluate_real(const std::vector<double>& x) const { return evaluate(x).real(); }

void SpectralField::enforce_hermitian() {
  std::vector<std::vector<double>> nf = freqs;
  std::vector<std::complex<double>> nc = coeffs;
  for (std::size_t j = 0; j < freqs.size(); ++j) {
    bool has_partner = false;
    for (std::size_t k = 0; k < freqs.size() && !has_partner; ++k) {
      bool neg = true;
      for (int c = 0; c < dim; ++c)
        if (freqs[k][c] != -freqs[j][c]) {
          neg = false;
          break;
        }
      if (neg && std::abs(coeffs[k] - std::conj(coeffs[j])) < 1e-15 * (1.0 + std::abs(coeffs[j]))) has_partner = true;
    }
    if (!has_partner) {
      std::vector<double> m(freqs[j]);
      for (double& v : m) v = -v;
      nf.push_back(std::move(m));
      nc.push_back(std::conj(coeffs[j]));
    }
  }
  freqs = std::move(nf);
  coeffs = std::move(nc);
  hermitian = true;
}

void SpectralField::validate() const {
  if (freqs.size() != coeffs.size()) throw std::invalid_argument("SpectralField: ragged term list");
  for (const auto& f : freqs) {
    if (f.size() != static_cast<std::size_t>(dim)) throw std::invalid_argument("SpectralField: frequency dim mismatch");
    for (double v : f)
      if (!std::isfinite(v)) throw std::invalid_argument("SpectralField: non-finite frequency");
  }
}

SpectralField convolve_fields(const SpectralField& f, const SpectralField& g) {
  if (f.dim != g.dim) throw std::invalid_argument("convolve_fields: dim mismatch");
  SpectralField out;
  out.dim = f.dim;
  out.hermitian = f.hermitian && g.hermitian;
  for (std::size_t j = 0; j < f.freqs.size(); ++j) {
    for (std::size_t k = 0; k < g.freqs.size(); ++k) {
      bool same = true;
      for (int c = 0; c < f.dim; ++c)
        if (f.freqs[j][c] != g.freqs[k][c]) {
          same = false;
          break;
        }
      if (same) {
        out.freqs.push_back(f.freqs[j]);
        out.coeffs.push_back(f.coeffs[j] * g.coeffs[k]);
      }
    }
  }
  return out;
}

void TimeDependentDrift::validate(std::size_t path_steps) const {
  if (freqs.size() != coeff_paths.size()) throw std::invalid_argument("TimeDependentDrift: ragged term list");
  for (const auto& f : freqs)
    if (f.size() != static_cast<std::size_t>(dim)) throw std::invalid_argument("TimeDependentDrift: frequency dim mismatch");
  for (const auto& c : coeff_paths) {
    if (c.size() != path_steps + 1) throw std::invalid_argument("TimeDependentDrift: coefficient path grid mismatch");
    for (const auto& v : c)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument("TimeDependentDrift: non-finite coefficient");
  }
}

std::vector<std::vector<std::complex<double>>> phi_prefixes(const SampledPath& path,
                                                            const std::vector<std::vector<double>>& xis,
                                                            std::size_t record_stride) {
  path.validate();
  const std::size_t n = path.steps();
  if (record_stride == 0 || n % record_stride != 0)
    throw std::invalid_argument("phi_prefixes: record stride must divide n");
  const std::size_t records = n / record_stride + 1;
  std::vector<std::vector<std::complex<double>>> out(xis.size());
  const double dt = path.dt();
  parallel_for(0, xis.size(), [&](std::size_t f) {
    const std::vector<double>& xi = xis[f];
    std::vector<std::complex<double>>& pre = out[f];
    pre.assign(records, std::complex<double>(0.0, 0.0));
    std::complex<double> acc(0.0, 0.0);
    double dot_k = 0.0;
    for (int c = 0; c < path.dim; ++c) dot_k += xi[c] * path.value(0, c);
    std::size_t rec = 1;
    for (std::size_t k = 0; k < n; ++k) {
      double dot_k1 = 0.0;
      for (int c = 0; c < path.dim; ++c) dot_k1 += xi[c] * path.value(k + 1, c);
      acc += segment_integral(dot_k, dot_k1 - dot_k, dt);
      dot_k = dot_k1;
      if ((k + 1) % record_stride == 0) pre[rec++] = acc;
    }
  });
  return out;
}

namespace {

double bracket(double xi2) { return std::sqrt(1.0 + xi2); }

}  // namespace

double fl_norm(const OccupationDensity& density, double alpha, double p) {
  if (p < 1.0) throw std::invalid_argument("fl_norm: p must be >= 1");
  const DensitySpectrum sp = density_spectrum(density);
  double dvol = 1.0;
  for (double v : sp.dxi) dvol *= v;
  if (p == std::numeric_limits<double>::infinity()) {
    double best = 0.0;
    for (std::size_t k = 0; k < sp.values.size(); ++k) {
      const std::vector<double> xi = sp.frequency(k);
      double xi2 = 0.0;
      for (double v : xi) xi2 += v * v;
      best = std::max(best, std::pow(bracket(xi2), alpha) * std::abs(sp.values[k]));
    }
    return best;
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < sp.values.size(); ++k) {
    const std::vector<double> xi = sp.frequency(k);
    double xi2 = 0.0;
    for (double v : xi) xi2 += v * v;
    acc += std::pow(std::pow(bracket(xi2), alpha) * std::abs(sp.values[k]), p) * dvol;
  }
  return std::pow(acc, 1.0 / p);
}

double fl_norm(const SpectralField& field, double alpha, double p) {
  if (p < 1.0) throw std::invalid_argument("fl_norm: p must be >= 1");
  field.validate();
  if (p == std::numeric_limits<double>::infinity()) {
    double best = 0.0;
    for (std::size_t j = 0; j < field.terms(); ++j) {
      double xi2 = 0.0;
      for (double v : field.freqs[j]) xi2 += v * v;
      best = std::max(best, std::pow(bracket(xi2), alpha) * std::abs(field.coeffs[j]));
    }
    return best;
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < field.terms(); ++j) {
    double xi2 = 0.0;
    for (double v : field.freqs[j]) xi2 += v * v;
    acc += std::pow(std::pow(bracket(xi2), alpha) * std::abs(field.coeffs[j]), p);
  }
  return std::pow(acc, 1.0 / p);
}

EnergySpectrum energy_spectrum(const OccupationDensity& density) {
  const int d = density.dim;
  const int m = density.bins;
  const int pad = d == 1 ? 8 : 2;
  EnergySpectrum sp;
  sp.dim = d;
  sp.padded = next_pow2(static_cast<std::size_t>(m) * pad);
  sp.h.resize(d);
  double cell_vol = 1.0;
  for (int a = 0; a < d; ++a) {
    sp.h[a] = density.h(a);
    cell_vol *= sp.h[a];
  }
  std::size_t cells = 1;
  for (int a = 0; a < d; ++a) cells *= sp.padded;
  std::vector<cplx> grid(cells, cplx(0, 0));
  std::vector<int> idx(d);
  for (std::size_t flat = 0; flat < density.values.size(); ++flat) {
    std::size_t rem = flat;
    std::size_t big = 0;
    for (int a = d - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % static_cast<std::size_t>(m));
      rem /= static_cast<std::size_t>(m);
    }
    for (int a = 0; a < d; ++a) big = big * sp.padded + static_cast<std::size_t>(idx[a]);
    grid[big] = density.values[flat];
  }
  grid = dft_nd(std::move(grid), std::vector<std::size_t>(d, sp.padded), false);
  sp.mod2.resize(cells);
  for (std::size_t k = 0; k < cells; ++k) sp.mod2[k] = std::norm(grid[k]) * cell_vol * cell_vol;
  return sp;
}

double energy_integral(const EnergySpectrum& spectrum, double alpha) {
  const int d = spectrum.dim;
  if (!(alpha > 0.0) || alpha >= static_cast<double>(d) + 2.0)
    throw std::invalid_argument("energy_integral: need 0 < alpha < d + 2");
  double c_ad = 1.0;
  if (alpha < static_cast<double>(d)) {
    c_ad = std::pow(2.0, -alpha) * std::pow(std::numbers::pi, -0.5 * d) *
           std::tgamma(0.5 * (d - alpha)) / std::tgamma(0.5 * alpha);
  }

  // Quadrature of c int |xi|^{alpha-d} |rho_hat|^2 for the piecewise-constant
  // density: zero padding resolves the singular kernel near xi = 0 (the zero
  // cell carries the whole mass^2 contribution as alpha -> 0), the kernel
  // factor is integrated over each lattice cell (exact in d = 1), and for
  // alpha < d Brillouin replicas of the centre sum times the per-axis top-hat
  // factor extend the transform past the Nyquist cut. For alpha >= d the
  // kernel-side energy diverges for any density; the single-zone sum is then
  // a homogeneous-Sobolev diagnostic and replicas would chase the divergence.
  const std::size_t padded = spectrum.padded;
  const int replicas = alpha < static_cast<double>(d) ? (d == 1 ? 16 : (d == 2 ? 2 : 1)) : 0;

  std::vector<double> dxi(d);
  double dvol = 1.0;
  for (int a = 0; a < d; ++a) {
    dxi[a] = 2.0 * std::numbers::pi / (spectrum.h[a] * static_cast<double>(padded));
    dvol *= dxi[a];
  }
  const double surface = 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);

  const int reps_total = 2 * replicas + 1;
  std::size_t rep_cells = 1;
  for (int a = 0; a < d; ++a) rep_cells *= static_cast<std::size_t>(reps_total);

  double acc = 0.0;
  std::vector<double> xi(d);
  std::vector<int> kidx(d);
  const std::size_t cells = spectrum.mod2.size();
  for (std::size_t flat = 0; flat < cells; ++flat) {
    const double mod2_atomic = spectrum.mod2[flat];
    if (mod2_atomic == 0.0) continue;
    std::size_t rem = flat;
    for (int a = d - 1; a >= 0; --a) {
      int k = static_cast<int>(rem % padded);
      rem /= padded;
      if (k >= static_cast<int>(padded / 2)) k -= static_cast<int>(padded);
      kidx[a] = k;
    }
    for (std::size_t r = 0; r < rep_cells; ++r) {
      std::size_t rr = r;
      double tophat = 1.0;
      double xi2 = 0.0;
      for (int a = 0; a < d; ++a) {
        const int shift = static_cast<int>(rr % reps_total) - replicas;
        rr /= reps_total;
        xi[a] = dxi[a] * kidx[a] + 2.0 * std::numbers::pi / spectrum.h[a] * shift;
        const double u = 0.5 * xi[a] * spectrum.h[a];
        tophat *= std::abs(u) < 1e-12 ? 1.0 : std::sin(u) / u;
        xi2 += xi[a] * xi[a];
      }
      double weight;  // integral of |xi|^{alpha-d} over the lattice cell
      if (xi2 == 0.0) {
        const double rad = 0.5 * dxi[0];
        weight = surface * std::pow(rad, alpha) / alpha;
      } else if (d == 1) {
        const double c = std::abs(xi[0]);
        weight = (std::pow(c + 0.5 * dxi[0], alpha) - std::pow(std::max(c - 0.5 * dxi[0], 0.0), alpha)) / alpha;
      } else {
        weight = std::pow(xi2, 0.5 * (alpha - d)) * dvol;
      }
      acc += weight * mod2_atomic * tophat * tophat;
    }
  }
  return c_ad * acc;
}

double energy_integral(const OccupationDensity& density, double alpha) {
  return energy_integral(energy_spectrum(density), alpha);
}

}  // namespace irrlab
