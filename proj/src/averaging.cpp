#include "irrlab/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "irrlab/fft.hpp"
#include "irrlab/linalg.hpp"
#include "irrlab/rng.hpp"

namespace irrlab {

AveragedField average_spectral(const SampledPath& w, const SpectralField& b, std::size_t s_node,
                               std::size_t t_node, const PhiTable* table) {
  w.validate();
  b.validate();
  if (b.dim != w.dim) throw std::invalid_argument("average_spectral: drift dim mismatch");
  AveragedField out;
  out.s = w.time_at(s_node);
  out.t = w.time_at(t_node);
  out.field.dim = b.dim;
  out.field.hermitian = b.hermitian;
  out.field.freqs = b.freqs;
  out.field.coeffs.resize(b.terms());

  // table lookup wants an exact (magnitude, direction) match on a level pair
  auto table_value = [&](const std::vector<double>& xi) -> std::optional<std::complex<double>> {
    if (!table) return std::nullopt;
    const std::size_t n = w.steps();
    const std::size_t per_level = n >> table->levels;
    if (s_node % per_level != 0 || t_node % per_level != 0) return std::nullopt;
    double q = 0.0;
    for (double v : xi) q += v * v;
    q = std::sqrt(q);
    for (std::size_t mi = 0; mi < table->freqs.magnitudes.size(); ++mi) {
      if (std::abs(table->freqs.magnitudes[mi] - q) > 1e-12 * std::max(q, 1.0)) continue;
      for (std::size_t di = 0; di < table->freqs.directions.size(); ++di) {
        bool same = true;
        for (int c = 0; c < w.dim; ++c)
          if (std::abs(table->freqs.directions[di][c] * q - xi[c]) > 1e-12 * std::max(q, 1.0)) {
            same = false;
            break;
          }
        if (same) {
          const std::size_t f = mi * table->freqs.directions.size() + di;
          return table->prefix_at(f, t_node / per_level) - table->prefix_at(f, s_node / per_level);
        }
      }
    }
    return std::nullopt;
  };

  for (std::size_t j = 0; j < b.terms(); ++j) {
    std::complex<double> phi_val;
    if (auto tv = table_value(b.freqs[j]))
      phi_val = *tv;
    else
      phi_val = phi(w, s_node, t_node, b.freqs[j]).value;
    out.field.coeffs[j] = b.coeffs[j] * phi_val;
  }
  return out;
}

double GriddedField::evaluate(const std::vector<double>& x) const {
  std::vector<int> base(dim);
  std::vector<double> frac(dim);
  for (int c = 0; c < dim; ++c) {
    const double u = (x[c] - lo[c]) / h(c) - 0.5;
    const double fl = std::floor(u);
    int b = static_cast<int>(fl);
    double fr = u - fl;
    if (b < -1 || b > bins - 1) return 0.0;
    base[c] = b;
    frac[c] = fr;
  }
  double acc = 0.0;
  const int corners = 1 << dim;
  for (int corner = 0; corner < corners; ++corner) {
    double wgt = 1.0;
    std::size_t flat = 0;
    bool inside = true;
    for (int c = 0; c < dim; ++c) {
      const int bit = (corner >> c) & 1;
      const int idx = base[c] + bit;
      wgt *= bit ? frac[c] : (1.0 - frac[c]);
      if (idx < 0 || idx >= bins) {
        inside = false;
        break;
      }
      flat = flat * static_cast<std::size_t>(bins) + static_cast<std::size_t>(idx);
    }
    if (inside) acc += wgt * values[flat];
  }
  return acc;
}

GriddedField GriddedField::tabulate(const SpectralField& f, const std::vector<double>& lo,
                                    const std::vector<double>& hi, int bins) {
  GriddedField g;
  g.dim = f.dim;
  g.bins = bins;
  g.lo = lo;
  g.hi = hi;
  std::size_t cells = 1;
  for (int c = 0; c < f.dim; ++c) cells *= static_cast<std::size_t>(bins);
  g.values.resize(cells);
  std::vector<double> x(f.dim);
  for (std::size_t flat = 0; flat < cells; ++flat) {
    std::size_t rem = flat;
    for (int c = f.dim - 1; c >= 0; --c) {
      const std::size_t idx = rem % static_cast<std::size_t>(bins);
      rem /= static_cast<std::size_t>(bins);
      x[c] = lo[c] + (static_cast<double>(idx) + 0.5) * g.h(c);
    }
    g.values[flat] = f.evaluate_real(x);
  }
  return g;
}

GriddedField average_grid(const OccupationDensity& density, const GriddedField& b) {
  if (density.dim != b.dim) throw std::invalid_argument("average_grid: dim mismatch");
  if (density.bins != b.bins) throw std::invalid_argument("average_grid: grid mismatch");
  for (int c = 0; c < b.dim; ++c)
    if (std::abs(density.h(c) - b.h(c)) > 1e-12 * b.h(c))
      throw std::invalid_argument("average_grid: cell size mismatch");
  const int d = density.dim;
  const int m = density.bins;

  // out(y_u) = h^d sum_j rho_j b_{j + u - (m-1)}: a correlation, evaluated by
  // zero-padded DFT per axis
  const std::size_t pad = next_pow2(static_cast<std::size_t>(2 * m));
  std::vector<std::size_t> dims(d, pad);
  std::size_t cells = 1;
  for (int c = 0; c < d; ++c) cells *= pad;
  std::vector<cplx> fa(cells, cplx(0, 0)), fb(cells, cplx(0, 0));

  std::vector<int> idx(d);
  auto embed = [&](const std::vector<double>& src, std::vector<cplx>& dst) {
    const std::size_t src_cells = src.size();
    for (std::size_t flat = 0; flat < src_cells; ++flat) {
      std::size_t rem = flat;
      std::size_t big = 0;
      for (int c = d - 1; c >= 0; --c) {
        idx[c] = static_cast<int>(rem % static_cast<std::size_t>(m));
        rem /= static_cast<std::size_t>(m);
      }
      for (int c = 0; c < d; ++c) big = big * pad + static_cast<std::size_t>(idx[c]);
      dst[big] = src[flat];
    }
  };
  embed(density.values, fa);
  embed(b.values, fb);
  fa = dft_nd(std::move(fa), dims, false);
  fb = dft_nd(std::move(fb), dims, false);
  for (std::size_t i = 0; i < cells; ++i) fa[i] = std::conj(fa[i]) * fb[i];
  fa = dft_nd(std::move(fa), dims, true);

  GriddedField out;
  out.dim = d;
  out.bins = 2 * m - 1;
  out.lo.resize(d);
  out.hi.resize(d);
  double vol = 1.0;
  for (int c = 0; c < d; ++c) {
    const double h = density.h(c);
    vol *= h;
    out.lo[c] = -(static_cast<double>(m) - 0.5) * h;
    out.hi[c] = (static_cast<double>(m) - 0.5) * h;
  }
  std::size_t out_cells = 1;
  for (int c = 0; c < d; ++c) out_cells *= static_cast<std::size_t>(out.bins);
  out.values.resize(out_cells);
  for (std::size_t flat = 0; flat < out_cells; ++flat) {
    std::size_t rem = flat;
    std::size_t big = 0;
    for (int c = d - 1; c >= 0; --c) {
      idx[c] = static_cast<int>(rem % static_cast<std::size_t>(out.bins));
      rem /= static_cast<std::size_t>(out.bins);
    }
    for (int c = 0; c < d; ++c) {
      // correlation lag k = u - (m-1) lives at padded index (k mod pad)
      const int lag = idx[c] - (m - 1);
      const std::size_t wrapped = static_cast<std::size_t>((lag % static_cast<int>(pad) + static_cast<int>(pad)) %
                                                           static_cast<int>(pad));
      big = big * pad + wrapped;
    }
    out.values[flat] = vol * fa[big].real();
  }
  return out;
}

GainReport regularity_gain(const SampledPath& w, const PhiTable& table, double alpha, double p,
                           std::size_t n_drifts, double gamma, double rho_gain, std::uint64_t seed) {
  GainReport rep;
  rep.alpha = alpha;
  rep.p = p;
  rep.gamma = gamma;
  rep.rho_gain = rho_gain;
  constexpr double kappa = 0.51;  // summability padding for the FL^{alpha,1} lattice norm

  const std::size_t n = w.steps();
  std::vector<double> ratios;
  for (std::size_t di = 0; di < n_drifts; ++di) {
    Rng rng(seed, 0x6A1Bu, di);
    SpectralField b;
    b.dim = w.dim;
    b.hermitian = true;
    for (std::size_t mi = 0; mi < table.freqs.magnitudes.size(); ++mi) {
      for (std::size_t dd = 0; dd < table.freqs.directions.size(); ++dd) {
        const std::vector<double> xi = table.freqs.frequency(mi * table.freqs.directions.size() + dd);
        double xi2 = 0.0;
        for (double v : xi) xi2 += v * v;
        const double mag = std::pow(1.0 + xi2, -0.5 * (alpha + kappa));
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        std::vector<double> neg(xi);
        for (double& v : neg) v = -v;
        const std::complex<double> c(mag * std::cos(phase), mag * std::sin(phase));
        b.freqs.push_back(xi);
        b.coeffs.push_back(c);
        b.freqs.push_back(std::move(neg));
        b.coeffs.push_back(std::conj(c));
      }
    }
    const double b_norm = fl_norm(b, alpha, p);
    for (int level = 0; level <= table.levels; ++level) {
      const std::size_t count = std::size_t(1) << level;
      const std::size_t stride = n >> level;
      for (std::size_t k = 0; k < count; ++k) {
        const std::size_t s_node = k * stride;
        const std::size_t t_node = (k + 1) * stride;
        const AveragedField av = average_spectral(w, b, s_node, t_node, &table);
        const double len = table.interval_length(level);
        const double ratio = fl_norm(av.field, alpha + rho_gain, p) / (std::pow(len, gamma) * b_norm);
        ratios.push_back(ratio);
        GainProbe probe;
        probe.ratio = ratio;
        probe.level = level;
        probe.interval = k;
        probe.drift = di;
        rep.probes.push_back(probe);
      }
    }
  }
  if (!ratios.empty()) {
    rep.max_ratio = *std::max_element(ratios.begin(), ratios.end());
    rep.median_ratio = median_of(ratios);
  }
  return rep;
}

TimeAverageResult average_time_dependent(const SampledPath& w, const TimeDependentDrift& b, double gamma,
                                         std::size_t s_node, std::size_t t_node) {
  w.validate();
  b.validate(w.steps());
  if (b.dim != w.dim) throw std::invalid_argument("average_time_dependent: drift dim mismatch");
  if (s_node >= t_node || t_node > w.steps()) throw std::invalid_argument("average_time_dependent: bad interval");

  TimeAverageResult res;
  if (b.beta_declared + gamma <= 1.0)
    res.warnings.push_back("beta + gamma <= 1: Young sums may not converge; check refinement diagnostic");

  res.field.s = w.time_at(s_node);
  res.field.t = w.time_at(t_node);
  res.field.field.dim = b.dim;
  res.field.field.freqs = b.freqs;
  res.field.field.coeffs.resize(b.freqs.size());

  const auto prefixes = phi_prefixes(w, b.freqs, 1);
  for (std::size_t j = 0; j < b.freqs.size(); ++j) {
    std::complex<double> young(0.0, 0.0);
    for (std::size_t u = s_node; u < t_node; ++u)
      young += b.coeff_paths[j][u] * (prefixes[j][u + 1] - prefixes[j][u]);
    res.field.field.coeffs[j] = young;
  }
  return res;
}

}  // namespace irrlab
