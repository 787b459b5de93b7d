#include "irrlab/irregularity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "irrlab/linalg.hpp"
#include "irrlab/parallel.hpp"

namespace irrlab {

ShellEnvelope envelope(const PhiTable& table, double gamma) {
  if (table.levels < 4) throw std::invalid_argument("envelope: table needs at least 4 levels");
  ShellEnvelope env;
  env.gamma = gamma;
  env.q = table.freqs.magnitudes;
  env.value.assign(env.q.size(), 0.0);
  const std::size_t ndir = table.freqs.directions.size();
  for (std::size_t mi = 0; mi < env.q.size(); ++mi) {
    double best = 0.0;
    for (std::size_t di = 0; di < ndir; ++di) {
      const std::size_t f = mi * ndir + di;
      for (int level = 0; level <= table.levels; ++level) {
        const double len = table.interval_length(level);
        const double wgt = std::pow(len, -gamma);
        const std::size_t count = std::size_t(1) << level;
        for (std::size_t k = 0; k < count; ++k) best = std::max(best, std::abs(table.value(f, level, k)) * wgt);
      }
    }
    env.value[mi] = best;
  }
  return env;
}

namespace {

std::vector<std::size_t> shells_in_range(const ShellEnvelope& env, double q_lo, double q_hi) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < env.q.size(); ++i)
    if (env.q[i] >= q_lo * (1.0 - 1e-12) && env.q[i] <= q_hi * (1.0 + 1e-12)) idx.push_back(i);
  return idx;
}

}  // namespace

PowerFit fit_rho(const ShellEnvelope& env, double q_lo, double q_hi) {
  const auto idx = shells_in_range(env, q_lo, q_hi);
  if (idx.size() < 6) throw std::invalid_argument("fit_rho: need at least 6 shells in range");
  std::vector<double> xs, ys;
  for (std::size_t i : idx) {
    if (env.value[i] <= 0.0) continue;
    xs.push_back(std::log(env.q[i]));
    ys.push_back(std::log(env.value[i]));
  }
  PowerFit fit;
  fit.q_lo = q_lo;
  fit.q_hi = q_hi;
  fit.shells = xs.size();
  if (xs.size() < 2) return fit;  // degenerate all-zero envelope
  const LineFit lf = fit_line(xs, ys);
  fit.rho = -lf.slope;
  fit.c = std::exp(lf.intercept);
  fit.r2 = lf.r2;
  return fit;
}

DecayFit fit_exponential(const ShellEnvelope& env, double q_lo, double q_hi) {
  const auto idx = shells_in_range(env, q_lo, q_hi);
  if (idx.size() < 6) throw std::invalid_argument("fit_exponential: need at least 6 shells in range");
  DecayFit fit;
  fit.power = fit_rho(env, q_lo, q_hi);
  std::vector<double> xs, ys;
  for (std::size_t i : idx) {
    if (env.value[i] <= 0.0) continue;
    xs.push_back(env.q[i]);
    ys.push_back(std::log(env.value[i]));
  }
  if (xs.size() < 2) return fit;
  const LineFit lf = fit_line(xs, ys);
  fit.c1 = std::exp(lf.intercept);
  fit.c2 = -lf.slope;
  fit.r2_exp = lf.r2;
  // same parameter count, so plain R^2 comparison selects the model
  fit.exponential_selected = fit.c2 > 0.0 && fit.r2_exp > fit.power.r2;
  return fit;
}

double sup_norm(const PhiTable& table, double gamma, double rho) {
  double best = 0.0;
  const std::size_t ndir = table.freqs.directions.size();
  for (std::size_t mi = 0; mi < table.freqs.magnitudes.size(); ++mi) {
    const double qr = std::pow(table.freqs.magnitudes[mi], rho);
    for (std::size_t di = 0; di < ndir; ++di) {
      const std::size_t f = mi * ndir + di;
      for (int level = 0; level <= table.levels; ++level) {
        const double wgt = qr * std::pow(table.interval_length(level), -gamma);
        const std::size_t count = std::size_t(1) << level;
        for (std::size_t k = 0; k < count; ++k) best = std::max(best, std::abs(table.value(f, level, k)) * wgt);
      }
    }
  }
  return best;
}

InterpolationCheck interpolation_check(const PhiTable& table, double gamma, double rho, double theta) {
  if (!(theta > 0.0) || theta > 1.0) throw std::invalid_argument("interpolation_check: theta must be in (0,1]");
  InterpolationCheck chk;
  chk.theta = theta;
  chk.gamma = gamma;
  chk.rho = rho;
  chk.gamma_theta = 1.0 - theta + theta * gamma;
  chk.rho_theta = theta * rho;
  chk.base_norm = sup_norm(table, gamma, rho);
  chk.interp_norm = sup_norm(table, chk.gamma_theta, chk.rho_theta);
  chk.bound = std::pow(chk.base_norm, theta) * (1.0 + 1e-9);
  chk.holds = chk.interp_norm <= chk.bound;
  return chk;
}

IrregularityReport analyze_irregularity(const PhiTable& table, std::vector<double> gamma_grid, double q_lo,
                                        double q_hi) {
  IrregularityReport rep;
  if (gamma_grid.empty())
    for (int i = 0; i < 10; ++i) gamma_grid.push_back(0.50 + 0.05 * i);
  rep.gamma_grid = gamma_grid;
  rep.q_lo = q_lo;
  rep.q_hi = q_hi;
  rep.delta_star = std::numeric_limits<double>::infinity();
  for (double g : gamma_grid) {
    rep.envelopes.push_back(envelope(table, g));
    rep.fits.push_back(fit_rho(rep.envelopes.back(), q_lo, q_hi));
    const PowerFit& f = rep.fits.back();
    if (f.rho > rep.best_rho) {
      rep.best_rho = f.rho;
      rep.best_gamma = g;
    }
    if (f.rho > 0.0) rep.delta_star = std::min(rep.delta_star, (1.0 - g) / f.rho);
  }
  if (rep.best_rho > 0.0) rep.norm_at_best = sup_norm(table, rep.best_gamma, rep.best_rho);
  return rep;
}

double phi_modulus(double x) { return std::sqrt(x * std::abs(std::log(x))); }

std::vector<std::vector<double>> eta_lattice(int degree, int k_max) {
  if (degree < 1 || degree > 3) throw std::invalid_argument("eta_lattice: degree must be in [1,3]");
  if (k_max < 0 || k_max > 8) throw std::invalid_argument("eta_lattice: k_max must be in [0,8]");
  std::vector<double> axis{0.0};
  for (int k = 0; k <= k_max; ++k) {
    axis.push_back(std::pow(2.0, k));
    axis.push_back(-std::pow(2.0, k));
  }
  std::vector<std::vector<double>> out;
  std::vector<double> cur(degree, 0.0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == degree) {
      out.push_back(cur);
      return;
    }
    for (double v : axis) {
      cur[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

namespace {

// integral of exp(i(a + b u + c u^2 + e u^3)) over [0, len] by midpoint
// linearization with curvature-controlled subdivision
std::complex<double> poly_segment(double a, double b, double c, double e, double len) {
  const double curv = std::abs(c) * len * len + std::abs(e) * len * len * len;
  int pieces = 1;
  if (curv > 1e-3) pieces = static_cast<int>(std::ceil(std::sqrt(curv / 1e-3)));
  pieces = std::min(pieces, 1 << 12);
  const double sub = len / pieces;
  std::complex<double> acc(0.0, 0.0);
  for (int p = 0; p < pieces; ++p) {
    const double u0 = p * sub;
    const double um = u0 + 0.5 * sub;
    // linearize at the midpoint: phase ~ f(um) + f'(um)(u - um)
    const double f = a + um * (b + um * (c + um * e));
    const double fp = b + um * (2.0 * c + 3.0 * e * um);
    const double half = 0.5 * sub * fp;
    // int_{-sub/2}^{sub/2} e^{i(f + fp v)} dv = sub e^{if} sinc(fp sub / 2)
    const double s = std::abs(half) < 1e-12 ? 1.0 : std::sin(half) / half;
    acc += std::complex<double>(std::cos(f), std::sin(f)) * (sub * s);
  }
  return acc;
}

}  // namespace

std::vector<StrongEnvelopeRow> strong_envelope(const SampledPath& path, int degree,
                                               const std::vector<std::vector<double>>& etas,
                                               const FrequencySet& freqs, int levels, double rho) {
  path.validate();
  if (degree < 1 || degree > 3) throw std::invalid_argument("strong_envelope: degree must be in [1,3]");
  for (const auto& e : etas)
    if (e.size() != static_cast<std::size_t>(degree))
      throw std::invalid_argument("strong_envelope: eta length must equal degree");
  if (freqs.magnitudes.front() <= 1.0)
    throw std::invalid_argument("strong_envelope: needs magnitudes > 1 (F divides by sqrt(log q))");
  const std::size_t n = path.steps();
  if (n % (std::size_t(1) << levels) != 0)
    throw std::invalid_argument("strong_envelope: n must be divisible by 2^levels");

  const double dt = path.dt();
  const std::size_t endpoints = (std::size_t(1) << levels) + 1;
  const std::size_t stride = n >> levels;

  std::vector<StrongEnvelopeRow> rows(etas.size());
  parallel_for(0, etas.size(), [&](std::size_t ei) {
    const std::vector<double>& eta = etas[ei];
    double eta_norm2 = 0.0;
    for (double v : eta) eta_norm2 += v * v;
    StrongEnvelopeRow row;
    row.eta = eta;
    row.eta_norm = std::sqrt(eta_norm2);

    const double b1 = eta[0];
    const double b2 = degree >= 2 ? eta[1] : 0.0;
    const double b3 = degree >= 3 ? eta[2] : 0.0;

    double sup = 0.0;
    std::vector<std::complex<double>> prefix(endpoints);
    for (std::size_t mi = 0; mi < freqs.magnitudes.size(); ++mi) {
      const double q = freqs.magnitudes[mi];
      const double f_of_q = std::pow(q, rho) / std::sqrt(std::log(q));
      for (std::size_t di = 0; di < freqs.directions.size(); ++di) {
        const std::vector<double> xi = freqs.frequency(mi * freqs.directions.size() + di);
        // one pass, recording prefix values at the level endpoints
        std::complex<double> acc(0.0, 0.0);
        prefix[0] = acc;
        std::size_t rec = 1;
        double dot_k = 0.0;
        for (int c = 0; c < path.dim; ++c) dot_k += xi[c] * path.value(0, c);
        for (std::size_t k = 0; k < n; ++k) {
          double dot_k1 = 0.0;
          for (int c = 0; c < path.dim; ++c) dot_k1 += xi[c] * path.value(k + 1, c);
          const double t0 = static_cast<double>(k) * dt;
          // combined phase on the segment: linear path part plus polynomial in r
          // written in the local variable u = r - t0
          const double slope = (dot_k1 - dot_k) / dt;
          const double a = dot_k + t0 * (b1 + t0 * (b2 + t0 * b3));
          const double b = slope + b1 + t0 * (2.0 * b2 + 3.0 * b3 * t0);
          const double c2 = b2 + 3.0 * b3 * t0;
          acc += poly_segment(a, b, c2, b3, dt);
          dot_k = dot_k1;
          if ((k + 1) % stride == 0) prefix[rec++] = acc;
        }
        for (int level = 0; level <= levels; ++level) {
          const double len = path.horizon / static_cast<double>(std::size_t(1) << level);
          const double modulus = phi_modulus(len);
          if (!(modulus > 1e-12)) continue;  // |log len| ~ 0: the modulus is a small-scale object
          const double norm = f_of_q / modulus;
          const std::size_t count = std::size_t(1) << level;
          const std::size_t estride = (endpoints - 1) >> level;
          for (std::size_t k = 0; k < count; ++k) {
            const std::complex<double> v = prefix[(k + 1) * estride] - prefix[k * estride];
            sup = std::max(sup, std::abs(v) * norm);
          }
        }
      }
    }
    row.raw_sup = sup;
    row.normalized = row.eta_norm > 0.0 ? sup / std::sqrt(std::log(1.0 + row.eta_norm)) : sup;
    rows[ei] = row;
  });
  return rows;
}

MomentDiagnostic moment_decay(const ProcessModel& model, std::size_t mc_samples, int moment_order, double s,
                              double t, const FrequencySet& freqs, std::size_t n_steps, std::uint64_t seed,
                              double q_lo, double q_hi) {
  if (mc_samples < 200) throw std::invalid_argument("moment_decay: need at least 200 samples");
  if (moment_order < 1) throw std::invalid_argument("moment_decay: moment order must be >= 1");
  const std::size_t nf = freqs.count();
  const std::size_t nmag = freqs.magnitudes.size();
  constexpr std::size_t kBatches = 8;

  MomentDiagnostic diag;
  diag.moment_order = moment_order;
  diag.q = freqs.magnitudes;

  // per-sample accumulation, reduced in fixed sample order
  std::vector<std::vector<double>> sample_pow(mc_samples);
  std::vector<std::vector<std::complex<double>>> sample_cf(mc_samples);
  const bool stable = model.kind == ProcessModel::Kind::stable;

  parallel_for(0, mc_samples, [&](std::size_t i) {
    Seed sd{seed, i};
    SampledPath path;
    if (stable)
      path = simulate_stable(model.stable, n_steps, t, sd);
    else
      path = simulate_gaussian(model.gaussian, n_steps, t, sd);
    const std::size_t n = path.steps();
    const std::size_t s_node = static_cast<std::size_t>(std::llround(s / path.dt()));
    std::vector<std::vector<double>> xis(nf);
    for (std::size_t f = 0; f < nf; ++f) xis[f] = freqs.frequency(f);

    std::vector<double> pw(nmag, 0.0);
    std::vector<std::complex<double>> cf(nmag, std::complex<double>(0, 0));
    const double dt = path.dt();
    for (std::size_t f = 0; f < nf; ++f) {
      const std::vector<double>& xi = xis[f];
      std::complex<double> acc(0.0, 0.0), at_s(0.0, 0.0);
      double dot_k = 0.0;
      for (int c = 0; c < path.dim; ++c) dot_k += xi[c] * path.value(0, c);
      for (std::size_t k = 0; k < n; ++k) {
        double dot_k1 = 0.0;
        for (int c = 0; c < path.dim; ++c) dot_k1 += xi[c] * path.value(k + 1, c);
        const double half = 0.5 * (dot_k1 - dot_k);
        const double sfac = std::abs(half) < 1e-12 ? 1.0 : std::sin(half) / half;
        const double mid = 0.5 * (dot_k + dot_k1);
        acc += std::complex<double>(std::cos(mid), std::sin(mid)) * (dt * sfac);
        dot_k = dot_k1;
        if (k + 1 == s_node) at_s = acc;
      }
      const std::complex<double> val = acc - at_s;
      const std::size_t mi = freqs.mag_index(f);
      double p = std::norm(val);
      for (int m = 1; m < moment_order; ++m) p *= std::norm(val);
      pw[mi] += p;  // summed over directions, averaged below
      // characteristic-function probe at the increment over [s, t]
      double dot_inc = 0.0;
      for (int c = 0; c < path.dim; ++c)
        dot_inc += xi[c] * (path.value(n, c) - path.value(s_node, c));
      cf[mi] += std::complex<double>(std::cos(dot_inc), std::sin(dot_inc));
    }
    const double inv_dirs = 1.0 / static_cast<double>(freqs.directions.size());
    for (double& v : pw) v *= inv_dirs;
    for (auto& v : cf) v *= inv_dirs;
    sample_pow[i] = std::move(pw);
    sample_cf[i] = std::move(cf);
  });

  // batch means in fixed order
  std::vector<std::vector<double>> batch_mean(kBatches, std::vector<double>(nmag, 0.0));
  std::vector<std::vector<double>> batch_cf(kBatches, std::vector<double>(nmag, 0.0));
  std::vector<std::size_t> batch_count(kBatches, 0);
  for (std::size_t i = 0; i < mc_samples; ++i) {
    const std::size_t b = i % kBatches;
    ++batch_count[b];
    for (std::size_t m = 0; m < nmag; ++m) {
      batch_mean[b][m] += sample_pow[i][m];
      batch_cf[b][m] += sample_cf[i][m].real();
    }
  }
  diag.mean.assign(nmag, 0.0);
  diag.stderr_.assign(nmag, 0.0);
  diag.cf_real.assign(nmag, 0.0);
  diag.cf_stderr.assign(nmag, 0.0);
  for (std::size_t m = 0; m < nmag; ++m) {
    std::vector<double> bm(kBatches), bc(kBatches);
    for (std::size_t b = 0; b < kBatches; ++b) {
      bm[b] = batch_mean[b][m] / static_cast<double>(batch_count[b]);
      bc[b] = batch_cf[b][m] / static_cast<double>(batch_count[b]);
    }
    diag.mean[m] = mean_of(bm);
    diag.cf_real[m] = mean_of(bc);
    double v = 0.0, vc = 0.0;
    for (std::size_t b = 0; b < kBatches; ++b) {
      v += (bm[b] - diag.mean[m]) * (bm[b] - diag.mean[m]);
      vc += (bc[b] - diag.cf_real[m]) * (bc[b] - diag.cf_real[m]);
    }
    diag.stderr_[m] = std::sqrt(v / (kBatches * (kBatches - 1.0)));
    diag.cf_stderr[m] = std::sqrt(vc / (kBatches * (kBatches - 1.0)));
  }

  // fitted slope over shells in [q_lo, q_hi], CI via per-batch slopes
  std::vector<double> xs, ys;
  std::vector<std::vector<double>> batch_ys(kBatches);
  for (std::size_t m = 0; m < nmag; ++m) {
    if (diag.q[m] < q_lo * (1 - 1e-12) || diag.q[m] > q_hi * (1 + 1e-12)) continue;
    if (diag.mean[m] <= 0.0) continue;
    xs.push_back(std::log(diag.q[m]));
    ys.push_back(std::log(diag.mean[m]));
    for (std::size_t b = 0; b < kBatches; ++b)
      batch_ys[b].push_back(std::log(std::max(batch_mean[b][m] / batch_count[b], 1e-300)));
  }
  if (xs.size() >= 2) {
    diag.slope = fit_line(xs, ys).slope;
    std::vector<double> slopes(kBatches);
    for (std::size_t b = 0; b < kBatches; ++b) slopes[b] = fit_line(xs, batch_ys[b]).slope;
    const double msl = mean_of(slopes);
    double v = 0.0;
    for (double sl : slopes) v += (sl - msl) * (sl - msl);
    diag.slope_stderr = std::sqrt(v / (kBatches * (kBatches - 1.0)));
    diag.inconclusive = 2.0 * 1.96 * diag.slope_stderr > 0.5;
  }

  if (stable) {
    diag.target_slope = -model.stable.alpha * moment_order;
    diag.cf_target.assign(nmag, 0.0);
    for (std::size_t m = 0; m < nmag; ++m) {
      // axes measure: G(xi) averaged over the direction set
      double g = 0.0;
      for (const auto& dir : freqs.directions) {
        double gd = 0.0;
        if (model.stable.axes) {
          for (int c = 0; c < model.stable.dim; ++c)
            gd += std::pow(std::abs(diag.q[m] * dir[c]), model.stable.axis_alpha(c));
        } else {
          gd = std::pow(diag.q[m], model.stable.alpha);
        }
        g += std::exp(-(t - s) * gd);
      }
      diag.cf_target[m] = g / static_cast<double>(freqs.directions.size());
    }
  } else {
    diag.target_slope = -static_cast<double>(moment_order) / model.gaussian.slnd_exponent();
  }
  return diag;
}

double anisotropic_norm(const std::vector<double>& xi, const std::vector<double>& alphas) {
  if (xi.size() != alphas.size()) throw std::invalid_argument("anisotropic_norm: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) s += std::pow(std::abs(xi[i]), alphas[i]);
  return std::sqrt(s);
}

}  // namespace irrlab
