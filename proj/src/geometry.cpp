#include "irrlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "irrlab/linalg.hpp"
#include "irrlab/parallel.hpp"

namespace irrlab {

DensityCurve holder_density(const SampledPath& path, std::size_t s_node, double delta, double m_const,
                            std::vector<double> eps_list) {
  path.validate();
  const std::size_t n = path.steps();
  if (s_node > n) throw std::invalid_argument("holder_density: centre out of range");
  const double dt = path.dt();
  for (double e : eps_list)
    if (e < 4.0 * dt) throw std::invalid_argument("holder_density: eps must be >= 4 dt");
  std::sort(eps_list.begin(), eps_list.end(), std::greater<double>());

  DensityCurve curve;
  curve.center = s_node;
  curve.delta = delta;
  curve.m_const = m_const;
  for (double eps : eps_list) {
    const std::size_t radius = static_cast<std::size_t>(std::floor(eps / dt));
    const std::size_t lo = s_node > radius ? s_node - radius : 0;
    const std::size_t hi = std::min(n, s_node + radius);
    std::size_t total = 0, inside = 0;
    for (std::size_t t = lo; t <= hi; ++t) {
      ++total;
      double inc2 = 0.0;
      for (int c = 0; c < path.dim; ++c) {
        const double d = path.value(t, c) - path.value(s_node, c);
        inc2 += d * d;
      }
      const double lag = std::abs(static_cast<double>(t) - static_cast<double>(s_node)) * dt;
      if (std::sqrt(inc2) <= m_const * std::pow(lag, delta)) ++inside;
    }
    curve.eps.push_back(eps);
    curve.fraction.push_back(static_cast<double>(inside) / static_cast<double>(total));
  }
  return curve;
}

RoughnessModulus roughness_modulus(const SampledPath& path, double theta, std::vector<double> eps_list,
                                   const std::vector<std::vector<double>>& directions, std::size_t s_stride) {
  path.validate();
  if (directions.empty()) throw std::invalid_argument("roughness_modulus: need directions");
  if (s_stride == 0) s_stride = 1;
  const std::size_t n = path.steps();
  const double dt = path.dt();

  RoughnessModulus rm;
  rm.theta = theta;
  for (double eps : eps_list) {
    const std::size_t radius = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(eps / dt)));
    double min_over_s = std::numeric_limits<double>::infinity();
    std::size_t wit_s = 0, wit_d = 0;
    for (std::size_t di = 0; di < directions.size(); ++di) {
      const std::vector<double>& v = directions[di];
      for (std::size_t s = 0; s <= n; s += s_stride) {
        const std::size_t lo = s > radius ? s - radius : 0;
        const std::size_t hi = std::min(n, s + radius);
        double best = 0.0;
        for (std::size_t t = lo; t <= hi; ++t) {
          double dot = 0.0;
          for (int c = 0; c < path.dim; ++c) dot += v[c] * (path.value(t, c) - path.value(s, c));
          best = std::max(best, std::abs(dot));
        }
        if (best < min_over_s) {
          min_over_s = best;
          wit_s = s;
          wit_d = di;
        }
      }
    }
    rm.eps.push_back(eps);
    rm.modulus.push_back(min_over_s / std::pow(eps, theta));
    rm.witness_s.push_back(wit_s);
    rm.witness_dir.push_back(wit_d);
  }
  return rm;
}

PVariationResult p_variation(const SampledPath& path, double p, std::size_t max_nodes) {
  path.validate();
  if (!(p >= 1.0)) throw std::invalid_argument("p_variation: p must be >= 1");
  const std::size_t n = path.steps();
  std::size_t stride = 1;
  while ((n / stride) + 1 > max_nodes) stride *= 2;
  const std::size_t k = n / stride;

  // gather subsampled nodes
  std::vector<std::vector<double>> pts(k + 1, std::vector<double>(path.dim));
  for (std::size_t i = 0; i <= k; ++i)
    for (int c = 0; c < path.dim; ++c) pts[i][c] = path.value(i * stride, c);

  std::vector<double> best(k + 1, 0.0);
  for (std::size_t j = 1; j <= k; ++j) {
    double b = -1.0;
    for (std::size_t i = 0; i < j; ++i) {
      double inc2 = 0.0;
      for (int c = 0; c < path.dim; ++c) {
        const double d = pts[j][c] - pts[i][c];
        inc2 += d * d;
      }
      const double cand = best[i] + std::pow(inc2, 0.5 * p);
      if (cand > b) b = cand;
    }
    best[j] = b;
  }
  PVariationResult res;
  res.p = p;
  res.value = best[k];
  res.nodes_used = k + 1;
  res.subsample_stride = stride;
  return res;
}

DimensionEstimate fourier_dimension(const SampledPath& path, std::size_t s_node, std::size_t t_node,
                                    double q_lo, double q_hi) {
  path.validate();
  const SampledPath sub = restrict_nodes(path, s_node, t_node);

  // per-shell sup over directions of |Phi_{s,t}| for the whole sub-interval
  FrequencySet freqs = FrequencySet::make(path.dim, 1.0, 18);
  std::vector<std::vector<double>> xis(freqs.count());
  for (std::size_t f = 0; f < freqs.count(); ++f) xis[f] = freqs.frequency(f);
  const auto prefixes = phi_prefixes(sub, xis, sub.steps());

  std::vector<double> xs, ys;
  for (std::size_t mi = 0; mi < freqs.magnitudes.size(); ++mi) {
    const double q = freqs.magnitudes[mi];
    if (q < q_lo * (1 - 1e-12) || q > q_hi * (1 + 1e-12)) continue;
    double sup = 0.0;
    for (std::size_t di = 0; di < freqs.directions.size(); ++di)
      sup = std::max(sup, std::abs(prefixes[mi * freqs.directions.size() + di][1]));
    if (sup <= 0.0) continue;
    xs.push_back(std::log(q));
    ys.push_back(std::log(sup));
  }

  DimensionEstimate est;
  if (xs.size() >= 4) {
    const LineFit lf = fit_line(xs, ys);
    est.decay_exponent = -lf.slope;
    est.fit_r2 = lf.r2;
    est.fourier = std::min(static_cast<double>(path.dim), 2.0 * std::max(0.0, est.decay_exponent));
    est.inconclusive = lf.r2 < 0.7;
  } else {
    est.inconclusive = true;
  }

  // energy track: largest alpha below d with refinement-stable finite energy
  const int m_coarse = path.dim == 1 ? 256 : 128;
  const int m_fine = 2 * m_coarse;
  const EnergySpectrum s1 =
      energy_spectrum(occupation_density(sub, 0, sub.steps(), std::nullopt, std::nullopt, m_coarse));
  const EnergySpectrum s2 =
      energy_spectrum(occupation_density(sub, 0, sub.steps(), std::nullopt, std::nullopt, m_fine));
  double alpha_max = 0.0;
  for (double alpha = 0.1; alpha < path.dim - 0.05; alpha += 0.1) {
    const double e1 = energy_integral(s1, alpha);
    const double e2 = energy_integral(s2, alpha);
    if (!std::isfinite(e1) || !std::isfinite(e2) || e1 <= 0.0 || e2 <= 0.0) break;
    if (std::abs(e2 - e1) > 0.25 * std::max(e1, e2)) break;
    alpha_max = alpha;
  }
  est.energy_alpha = alpha_max;
  est.tracks_disagree = std::abs(est.fourier - est.energy_alpha) > 0.5;
  return est;
}

BoxCount box_dimension(const SampledPath& path, std::size_t s_node, std::size_t t_node, int scale_levels) {
  path.validate();
  if (scale_levels < 4) throw std::invalid_argument("box_dimension: need >= 4 scale levels");
  if (s_node >= t_node || t_node > path.steps()) throw std::invalid_argument("box_dimension: bad interval");
  const int d = path.dim;

  double range = 0.0;
  std::vector<double> mn(d, 1e300);
  for (int c = 0; c < d; ++c) {
    double lo = 1e300, hi = -1e300;
    for (std::size_t k = s_node; k <= t_node; ++k) {
      lo = std::min(lo, path.value(k, c));
      hi = std::max(hi, path.value(k, c));
    }
    mn[c] = lo;
    range = std::max(range, hi - lo);
  }
  BoxCount bc;
  if (range <= 0.0) {
    bc.mesh.assign(scale_levels, 0.0);
    bc.boxes.assign(scale_levels, 1);
    bc.inconclusive = true;  // single box at every scale
    return bc;
  }

  std::vector<double> xs, ys;
  for (int l = 1; l <= scale_levels; ++l) {
    const double mesh = range / static_cast<double>(1 << l);
    std::set<std::vector<long>> cells;
    std::vector<long> cell(d);
    for (std::size_t k = s_node; k <= t_node; ++k) {
      for (int c = 0; c < d; ++c)
        cell[c] = static_cast<long>(std::floor((path.value(k, c) - mn[c]) / mesh));
      cells.insert(cell);
    }
    bc.mesh.push_back(mesh);
    bc.boxes.push_back(cells.size());
    xs.push_back(std::log(1.0 / mesh));
    ys.push_back(std::log(static_cast<double>(cells.size())));
  }
  bc.dimension = fit_line(xs, ys).slope;
  return bc;
}

OccupationWindow occupation_window(const SampledPath& path, std::vector<double> r_list) {
  path.validate();
  const std::size_t n = path.steps();
  const double dt = path.dt();
  std::sort(r_list.begin(), r_list.end());

  OccupationWindow ow;
  const bool d1 = path.dim == 1;
  std::vector<double> sorted;
  if (d1) {
    sorted.assign(path.values.begin(), path.values.end());
    std::sort(sorted.begin(), sorted.end());
  }
  for (double r : r_list) {
    double best = 0.0;
    if (d1) {
      for (std::size_t t = 0; t <= n; ++t) {
        const double v = path.value(t, 0);
        const auto lo = std::lower_bound(sorted.begin(), sorted.end(), v - r);
        const auto hi = std::upper_bound(sorted.begin(), sorted.end(), v + r);
        // strict inequality: drop endpoints equal to exactly r away
        std::size_t count = static_cast<std::size_t>(hi - lo);
        best = std::max(best, static_cast<double>(count));
      }
      best *= dt;
      best = std::min(best, path.horizon);
    } else {
      for (std::size_t t = 0; t <= n; ++t) {
        double acc = 0.0;
        for (std::size_t s = 0; s <= n; ++s) {
          double inc2 = 0.0;
          for (int c = 0; c < path.dim; ++c) {
            const double d = path.value(t, c) - path.value(s, c);
            inc2 += d * d;
          }
          if (inc2 < r * r) acc += dt;
        }
        best = std::max(best, std::min(acc, path.horizon));
      }
    }
    ow.r.push_back(r);
    ow.w.push_back(best);
    ow.w_over_2r.push_back(best / (2.0 * r));
  }
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double v : ow.w_over_2r) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  ow.flatness = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  ow.linear_bound = ow.flatness < 4.0;
  return ow;
}

}  // namespace irrlab
