#include "irrlab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "irrlab/fft.hpp"
#include "irrlab/young.hpp"

namespace irrlab {

namespace {

Rng coord_stream(Seed seed, int coord, std::uint64_t purpose = 0) {
  return Rng(seed.root, seed.path_index, (purpose << 8) | static_cast<std::uint64_t>(coord));
}

// autocovariance of fractional Gaussian noise increments on step dt
double fgn_gamma(double h, double dt, std::size_t k) {
  const double kk = static_cast<double>(k);
  const double two_h = 2.0 * h;
  const double v = 0.5 * (std::pow(std::abs(kk + 1.0), two_h) - 2.0 * std::pow(kk, two_h) +
                          std::pow(std::abs(kk - 1.0), two_h));
  return v * std::pow(dt, two_h);
}

std::vector<double> fgn_circulant(double h, std::size_t n, double dt, Rng& rng, bool* fell_back) {
  const std::size_t m = next_pow2(2 * n);
  std::vector<cplx> c(m, cplx(0, 0));
  for (std::size_t j = 0; j <= m / 2; ++j) {
    const double g = fgn_gamma(h, dt, j);
    c[j] = g;
    if (j != 0 && j != m / 2) c[m - j] = g;
  }
  fft(c, false);
  double min_eig = 0.0, max_eig = 0.0;
  for (const cplx& e : c) {
    min_eig = std::min(min_eig, e.real());
    max_eig = std::max(max_eig, e.real());
  }
  if (min_eig < -1e-9 * std::max(max_eig, 1e-300)) {
    *fell_back = true;
    return {};
  }
  *fell_back = false;
  std::vector<cplx> z(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double lam = std::max(c[j].real(), 0.0);
    const double s = std::sqrt(lam / static_cast<double>(m));
    z[j] = cplx(s * rng.normal(), s * rng.normal());
  }
  fft(z, false);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = z[j].real();
  return out;
}

std::vector<double> fgn_cholesky(double h, std::size_t n, double dt, Rng& rng) {
  if (n > 2048) throw std::runtime_error("fgn_cholesky: n too large for dense factorization");
  Mat cov(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double g = fgn_gamma(h, dt, i - j);
      cov(i, j) = g;
      cov(j, i) = g;
    }
  const Mat l = cholesky(cov);
  std::vector<double> z(n);
  for (double& v : z) v = rng.normal();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j <= i; ++j) s += l(i, j) * z[j];
    out[i] = s;
  }
  return out;
}

void fill_coordinate(SampledPath& p, int c, const std::vector<double>& increments) {
  double acc = 0.0;
  p.value(0, c) = 0.0;
  for (std::size_t k = 0; k < increments.size(); ++k) {
    acc += increments[k];
    p.value(k + 1, c) = acc;
  }
}

SampledPath simulate_fbm(double h, int dim, std::size_t n, double horizon, Seed seed,
                         std::vector<std::string>* warnings, std::uint64_t purpose = 0) {
  SampledPath p = SampledPath::zeros(dim, n, horizon);
  const double dt = horizon / static_cast<double>(n);
  for (int c = 0; c < dim; ++c) {
    Rng rng = coord_stream(seed, c, purpose);
    std::vector<double> inc;
    if (std::abs(h - 0.5) < 1e-14) {
      inc.resize(n);
      const double s = std::sqrt(dt);
      for (double& v : inc) v = s * rng.normal();
    } else {
      bool fell_back = false;
      inc = fgn_circulant(h, n, dt, rng, &fell_back);
      if (fell_back) {
        if (warnings) warnings->push_back("circulant embedding not nonnegative; Cholesky fallback");
        Rng rng2 = coord_stream(seed, c, purpose + 7);
        inc = fgn_cholesky(h, n, dt, rng2);
      }
    }
    fill_coordinate(p, c, inc);
  }
  return p;
}

// G_m = int_0^dt exp(-A (dt - s)) s^m ds, all m <= degree, via the block
// matrix exponential of [[-A, B],[0, N]].
std::vector<Mat> drift_integral_blocks(const Mat& a, double dt, int degree) {
  const std::size_t d = a.rows;
  const std::size_t p1 = static_cast<std::size_t>(degree) + 1;
  std::vector<Mat> out(p1, Mat(d, d));
  for (std::size_t m = 0; m < p1; ++m) {
    double mfact = 1.0;
    for (std::size_t j = 2; j <= m; ++j) mfact *= static_cast<double>(j);
    for (std::size_t col = 0; col < d; ++col) {
      Mat big(d + p1, d + p1);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) big(i, j) = -dt * a(i, j);
      big(col, d + m) = dt * mfact;
      for (std::size_t k = 0; k + 1 < p1; ++k) big(d + k + 1, d + k) = dt;
      const Mat e = expm(big);
      for (std::size_t i = 0; i < d; ++i) out[m](i, col) = e(i, d);
    }
  }
  return out;
}

Mat ou_step_covariance(const Mat& a, double sigma, double dt) {
  const std::size_t d = a.rows;
  Mat big(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      big(i, j) = dt * a(i, j);
      big(d + i, d + j) = -dt * a(j, i);
    }
  for (std::size_t i = 0; i < d; ++i) big(i, d + i) = dt * sigma * sigma;
  const Mat e = expm(big);
  Mat f2t(d, d), g1(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      f2t(i, j) = e(d + j, d + i);
      g1(i, j) = e(i, d + j);
    }
  Mat q = f2t * g1;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const double s = 0.5 * (q(i, j) + q(j, i));
      q(i, j) = s;
      q(j, i) = s;
    }
  return q;
}

SampledPath simulate_ou(const GaussianModel& model, std::size_t n, double horizon, Seed seed) {
  const int d = model.dim;
  const double dt = horizon / static_cast<double>(n);
  const Mat f = expm(-dt * model.ou_a);
  const Mat q = ou_step_covariance(model.ou_a, model.ou_sigma, dt);
  const Mat lq = cholesky(q);
  const int degree = model.ou_drift.empty() ? -1 : static_cast<int>(model.ou_drift.size()) - 1;
  std::vector<Mat> g;
  if (degree >= 0) g = drift_integral_blocks(model.ou_a, dt, degree);

  SampledPath p = SampledPath::zeros(d, n, horizon);
  std::vector<double> x = model.ou_x0;
  if (x.empty()) x.assign(d, 0.0);
  for (int c = 0; c < d; ++c) p.value(0, c) = x[c];

  std::vector<Rng> rngs;
  for (int c = 0; c < d; ++c) rngs.push_back(coord_stream(seed, c));

  std::vector<double> z(d), noise(d);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> next = matvec(f, x);
    if (degree >= 0) {
      const double tk = static_cast<double>(k) * dt;
      // shift global-time polynomial coefficients to local time u = t - t_k:
      // c~_m = sum_{j>=m} binom(j,m) t_k^{j-m} c_j
      for (int m = 0; m <= degree; ++m) {
        std::vector<double> shifted(d, 0.0);
        for (int j = m; j <= degree; ++j) {
          double choose = 1.0;
          for (int r = 0; r < m; ++r) choose = choose * static_cast<double>(j - r) / static_cast<double>(r + 1);
          const double w = choose * std::pow(tk, static_cast<double>(j - m));
          for (int c = 0; c < d; ++c) shifted[c] += w * model.ou_drift[j][c];
        }
        const std::vector<double> contrib = matvec(g[m], shifted);
        for (int c = 0; c < d; ++c) next[c] += contrib[c];
      }
    }
    for (int c = 0; c < d; ++c) z[c] = rngs[c].normal();
    for (int i = 0; i < d; ++i) {
      double s = 0.0;
      for (int j = 0; j <= i; ++j) s += lq(i, j) * z[j];
      noise[i] = s;
    }
    for (int c = 0; c < d; ++c) x[c] = next[c] + noise[c];
    for (int c = 0; c < d; ++c) p.value(k + 1, c) = x[c];
  }
  return p;
}

SampledPath simulate_moving_average(const GaussianModel& model, std::size_t n, double horizon, Seed seed) {
  const double dt = horizon / static_cast<double>(n);
  std::vector<double> kernel(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double u = (static_cast<double>(m) + 0.5) * dt;  // midpoint, keeps r -> 0 finite
    if (model.kind == GaussianKind::log_bm) {
      kernel[m] = std::pow(u, -0.5) * std::pow(std::abs(std::log(u)), -0.5 * model.logbm_beta - 0.5);
    } else if (model.ma_kernel) {
      kernel[m] = model.ma_kernel(u);
    } else {
      kernel[m] = std::pow(u, model.ma_beta - 0.5);
    }
  }
  SampledPath p = SampledPath::zeros(model.dim, n, horizon);
  const double sdt = std::sqrt(dt);
  for (int c = 0; c < model.dim; ++c) {
    Rng rng = coord_stream(seed, c);
    std::vector<double> z(n);
    for (double& v : z) v = sdt * rng.normal();
    const std::vector<double> conv = convolve(kernel, z);
    for (std::size_t k = 1; k <= n; ++k) p.value(k, c) = conv[k - 1];
  }
  return p;
}

}  // namespace

void GaussianModel::validate(double horizon) const {
  if (dim < 1 || dim > 3) throw std::invalid_argument("GaussianModel: dim must be in [1,3]");
  switch (kind) {
    case GaussianKind::brownian:
      break;
    case GaussianKind::fbm:
    case GaussianKind::integrated_fbm:
      if (!(hurst > 0.0) || !(hurst < 1.0)) throw std::invalid_argument("GaussianModel: H must be in (0,1)");
      if (kind == GaussianKind::integrated_fbm && integration_order < 1)
        throw std::invalid_argument("GaussianModel: integration order must be >= 1");
      break;
    case GaussianKind::ornstein_uhlenbeck:
      if (ou_a.rows != static_cast<std::size_t>(dim) || ou_a.cols != static_cast<std::size_t>(dim))
        throw std::invalid_argument("GaussianModel: OU matrix must be d x d");
      if (!(ou_sigma > 0.0)) throw std::invalid_argument("GaussianModel: OU sigma must be positive");
      if (!ou_x0.empty() && ou_x0.size() != static_cast<std::size_t>(dim))
        throw std::invalid_argument("GaussianModel: OU x0 must have length d");
      for (const auto& c : ou_drift)
        if (c.size() != static_cast<std::size_t>(dim))
          throw std::invalid_argument("GaussianModel: OU drift coefficients must have length d");
      break;
    case GaussianKind::moving_average:
      if (!ma_kernel && !(ma_beta > 0.0)) throw std::invalid_argument("GaussianModel: kernel exponent must be positive");
      break;
    case GaussianKind::log_bm:
      if (!(logbm_beta > 0.0)) throw std::invalid_argument("GaussianModel: log_bm beta must be positive");
      if (horizon > 0.45) throw std::invalid_argument("GaussianModel: log_bm requires horizon <= 0.45");
      break;
    case GaussianKind::fbm_sum: {
      if (fbm_sum_terms.empty()) throw std::invalid_argument("GaussianModel: fbm_sum needs terms");
      double prev = 1.0;
      for (const auto& [h, lam] : fbm_sum_terms) {
        if (!(h > 0.0) || !(h < 1.0) || h >= prev)
          throw std::invalid_argument("GaussianModel: fbm_sum H_k must be strictly decreasing in (0,1)");
        if (!(lam > 0.0)) throw std::invalid_argument("GaussianModel: fbm_sum weights must be positive");
        prev = h;
      }
      break;
    }
  }
}

double GaussianModel::slnd_exponent() const {
  switch (kind) {
    case GaussianKind::brownian:
    case GaussianKind::ornstein_uhlenbeck:
      return 0.5;
    case GaussianKind::fbm:
      return hurst;
    case GaussianKind::integrated_fbm:
      return hurst + static_cast<double>(integration_order);
    case GaussianKind::moving_average:
      return ma_beta;
    case GaussianKind::log_bm:
      return 0.5;  // no power-law exponent; callers should use the log form
    case GaussianKind::fbm_sum:
      return fbm_sum_terms.back().first;
  }
  return 0.5;
}

void StableModel::validate() const {
  if (dim < 1 || dim > 3) throw std::invalid_argument("StableModel: dim must be in [1,3]");
  if (!alpha_per_axis.empty()) {
    if (!axes) throw std::invalid_argument("StableModel: per-axis alphas require the axes spectral measure");
    if (alpha_per_axis.size() != static_cast<std::size_t>(dim))
      throw std::invalid_argument("StableModel: need one alpha per axis");
    for (double a : alpha_per_axis)
      if (!(a > 0.0) || !(a < 2.0)) throw std::invalid_argument("StableModel: alpha must be in (0,2)");
  } else if (!(alpha > 0.0) || !(alpha < 2.0)) {
    throw std::invalid_argument("StableModel: alpha must be in (0,2)");
  }
}

SampledPath simulate_gaussian(const GaussianModel& model, std::size_t n, double horizon, Seed seed,
                              std::vector<std::string>* warnings) {
  if (n < 8) throw std::invalid_argument("simulate_gaussian: need n >= 8");
  model.validate(horizon);
  switch (model.kind) {
    case GaussianKind::brownian:
      return simulate_fbm(0.5, model.dim, n, horizon, seed, warnings);
    case GaussianKind::fbm:
      return simulate_fbm(model.hurst, model.dim, n, horizon, seed, warnings);
    case GaussianKind::integrated_fbm: {
      SampledPath p = simulate_fbm(model.hurst, model.dim, n, horizon, seed, warnings);
      for (int m = 0; m < model.integration_order; ++m) p = cumulative_trapezoid(p);
      return p;
    }
    case GaussianKind::ornstein_uhlenbeck:
      return simulate_ou(model, n, horizon, seed);
    case GaussianKind::moving_average:
    case GaussianKind::log_bm:
      return simulate_moving_average(model, n, horizon, seed);
    case GaussianKind::fbm_sum: {
      SampledPath p = SampledPath::zeros(model.dim, n, horizon);
      for (std::size_t k = 0; k < model.fbm_sum_terms.size(); ++k) {
        const auto [h, lam] = model.fbm_sum_terms[k];
        const SampledPath term = simulate_fbm(h, model.dim, n, horizon, seed, warnings, k + 1);
        for (std::size_t i = 0; i < p.values.size(); ++i) p.values[i] += lam * term.values[i];
      }
      return p;
    }
  }
  throw std::invalid_argument("simulate_gaussian: unknown kind");
}

SampledPath simulate_fbm_cholesky(double hurst, int dim, std::size_t n, double horizon, Seed seed) {
  SampledPath p = SampledPath::zeros(dim, n, horizon);
  const double dt = horizon / static_cast<double>(n);
  for (int c = 0; c < dim; ++c) {
    Rng rng = coord_stream(seed, c, 7);
    fill_coordinate(p, c, fgn_cholesky(hurst, n, dt, rng));
  }
  return p;
}

SampledPath simulate_stable(const StableModel& model, std::size_t n, double horizon, Seed seed) {
  model.validate();
  SampledPath p = SampledPath::zeros(model.dim, n, horizon);
  const double dt = horizon / static_cast<double>(n);
  if (model.axes) {
    for (int c = 0; c < model.dim; ++c) {
      const double a = model.axis_alpha(c);
      const double scale = std::pow(dt, 1.0 / a);
      Rng rng = coord_stream(seed, c);
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        acc += scale * rng.stable_symmetric(a);
        p.value(k + 1, c) = acc;
      }
    }
  } else {
    // subordinated Brownian motion: X_inc = sqrt(2 S) Z with S an (alpha/2)-
    // subordinator increment, so E exp(i<xi,X_inc>) = exp(-dt |xi|^alpha)
    Rng rng = coord_stream(seed, 0);
    const double ah = model.alpha / 2.0;
    const double sub_scale = std::pow(dt, 1.0 / ah);
    std::vector<double> x(model.dim, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const double s = sub_scale * rng.stable_subordinator(ah);
      const double amp = std::sqrt(2.0 * s);
      for (int c = 0; c < model.dim; ++c) {
        x[c] += amp * rng.normal();
        p.value(k + 1, c) = x[c];
      }
    }
  }
  return p;
}

Mat conditional_variance(const GaussianModel& model, double s, double t) {
  if (!(s >= 0.0) || !(s < t)) throw std::invalid_argument("conditional_variance: need 0 <= s < t");
  const double delta = t - s;
  const std::size_t d = static_cast<std::size_t>(model.dim);
  Mat out(d, d);
  auto scaled_identity = [&](double v) {
    for (std::size_t i = 0; i < d; ++i) out(i, i) = v;
    return out;
  };
  switch (model.kind) {
    case GaussianKind::brownian:
      return scaled_identity(delta);
    case GaussianKind::fbm: {
      const double h = model.hurst;
      const double c = std::tgamma(1.5 - h) / (std::tgamma(h + 0.5) * std::tgamma(2.0 - 2.0 * h));
      return scaled_identity(c * std::pow(delta, 2.0 * h));
    }
    case GaussianKind::integrated_fbm: {
      // local innovation form: the kernel of the m-fold integrated motion is
      // (t-u)^{(m+H)-1/2} / Gamma(H+m+1/2), hence variance
      // Gamma(H+m+1/2)^{-2} delta^{2(m+H)} / (2(m+H)).
      const double h = model.hurst + static_cast<double>(model.integration_order);
      const double g = std::tgamma(h + 0.5);
      return scaled_identity(std::pow(delta, 2.0 * h) / (g * g * 2.0 * h));
    }
    case GaussianKind::moving_average: {
      if (model.ma_kernel)
        throw std::runtime_error("conditional_variance: tabulated moving-average kernel unsupported");
      const double b = model.ma_beta;
      return scaled_identity(std::pow(delta, 2.0 * b) / (2.0 * b));
    }
    case GaussianKind::log_bm: {
      if (!(delta < 1.0)) throw std::invalid_argument("conditional_variance: log_bm needs t - s < 1");
      const double b = model.logbm_beta;
      return scaled_identity(std::pow(std::abs(std::log(delta)), -b) / b);
    }
    case GaussianKind::ornstein_uhlenbeck:
      return ou_step_covariance(model.ou_a, model.ou_sigma, delta);
    case GaussianKind::fbm_sum: {
      double v = 0.0;
      for (const auto& [h, lam] : model.fbm_sum_terms) {
        const double c = std::tgamma(1.5 - h) / (std::tgamma(h + 0.5) * std::tgamma(2.0 - 2.0 * h));
        v += lam * lam * c * std::pow(delta, 2.0 * h);
      }
      return scaled_identity(v);
    }
  }
  throw std::runtime_error("conditional_variance: unsupported model");
}

ConditionalVarianceEstimate empirical_conditional_variance(const std::vector<SampledPath>& samples,
                                                           std::size_t t_node,
                                                           const std::vector<std::size_t>& history_nodes) {
  if (samples.size() < 200) throw std::invalid_argument("empirical_conditional_variance: need >= 200 samples");
  const SampledPath& first = samples.front();
  const int d = first.dim;
  const std::size_t n = first.steps();
  if (t_node > n) throw std::invalid_argument("empirical_conditional_variance: t_node out of range");
  for (std::size_t h : history_nodes)
    if (h >= t_node) throw std::invalid_argument("empirical_conditional_variance: history nodes must precede t");

  const std::size_t m = samples.size();
  const std::size_t p = history_nodes.size() * static_cast<std::size_t>(d);
  if (m <= p + 1) throw std::invalid_argument("empirical_conditional_variance: more regressors than samples");

  // centred design
  std::vector<double> zmean(p, 0.0), ymean(d, 0.0);
  for (const SampledPath& sp : samples) {
    std::size_t col = 0;
    for (std::size_t hn : history_nodes)
      for (int c = 0; c < d; ++c) zmean[col++] += sp.value(hn, c);
    for (int c = 0; c < d; ++c) ymean[c] += sp.value(t_node, c);
  }
  for (double& v : zmean) v /= static_cast<double>(m);
  for (double& v : ymean) v /= static_cast<double>(m);

  Mat gram(p, p);
  Mat cross(p, d);
  Mat ycov(d, d);
  std::vector<double> z(p), y(d);
  for (const SampledPath& sp : samples) {
    std::size_t col = 0;
    for (std::size_t hn : history_nodes)
      for (int c = 0; c < d; ++c) {
        z[col] = sp.value(hn, c) - zmean[col];
        ++col;
      }
    for (int c = 0; c < d; ++c) y[c] = sp.value(t_node, c) - ymean[c];
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j <= i; ++j) gram(i, j) += z[i] * z[j];
      for (int c = 0; c < d; ++c) cross(i, c) += z[i] * y[c];
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) ycov(i, j) += y[i] * y[j];
  }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) gram(i, j) = gram(j, i);

  ConditionalVarianceEstimate est;
  est.samples = m;
  est.regressors = p;
  if (p == 0) {
    est.covariance = (1.0 / static_cast<double>(m - 1)) * ycov;
    return est;
  }
  bool reg = false;
  const Mat l = cholesky(gram, &reg);
  est.regularized = reg;
  // residual covariance = (Y'Y - B' Z'Y) / (m - p - 1), B = gram^{-1} cross
  Mat resid = ycov;
  for (int c = 0; c < d; ++c) {
    std::vector<double> rhs(p);
    for (std::size_t i = 0; i < p; ++i) rhs[i] = cross(i, c);
    const std::vector<double> beta = cholesky_solve(l, rhs);
    for (int c2 = 0; c2 < d; ++c2) {
      double s = 0.0;
      for (std::size_t i = 0; i < p; ++i) s += beta[i] * cross(i, c2);
      resid(c, c2) -= s;
    }
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double s = 0.5 * (resid(i, j) + resid(j, i));
      resid(i, j) = s;
      resid(j, i) = s;
    }
  est.covariance = (1.0 / static_cast<double>(m - p - 1)) * resid;
  return est;
}

SampledPath cumulative_trapezoid(const SampledPath& p) {
  SampledPath out = SampledPath::zeros(p.dim, p.steps(), p.horizon);
  const double dt = p.dt();
  for (int c = 0; c < p.dim; ++c) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= p.steps(); ++k) {
      acc += 0.5 * dt * (p.value(k - 1, c) + p.value(k, c));
      out.value(k, c) = acc;
    }
  }
  return out;
}

ComposeResult controlled_compose(const SampledPath& w, const ComposeSpec& spec) {
  w.validate();
  ComposeResult res;
  switch (spec.kind) {
    case ComposeKind::add: {
      const SampledPath& f = spec.factor;
      if (f.dim != w.dim || f.steps() != w.steps() || std::abs(f.horizon - w.horizon) > 1e-12 * w.horizon)
        throw std::invalid_argument("controlled_compose: grid mismatch for add");
      res.path = w;
      for (std::size_t i = 0; i < w.values.size(); ++i) res.path.values[i] += f.values[i];
      return res;
    }
    case ComposeKind::multiply: {
      const SampledPath& f = spec.factor;
      if (w.dim != 1 || f.dim != 1) throw std::invalid_argument("controlled_compose: multiply needs d = 1");
      if (f.steps() != w.steps() || std::abs(f.horizon - w.horizon) > 1e-12 * w.horizon)
        throw std::invalid_argument("controlled_compose: grid mismatch for multiply");
      double inf_abs = std::abs(f.values[0]);
      for (double v : f.values) inf_abs = std::min(inf_abs, std::abs(v));
      if (!(inf_abs > 0.0)) throw std::invalid_argument("controlled_compose: multiplier must stay away from 0");
      res.path = w;
      for (std::size_t i = 0; i < w.values.size(); ++i) res.path.values[i] *= f.values[i];
      return res;
    }
    case ComposeKind::young_integral: {
      YoungResult yr = young_integral(spec.factor, w);
      res.path = std::move(yr.integral);
      if (yr.regularity_warning)
        res.warnings.push_back("measured Holder exponents violate alpha + gamma > 1; Young sums may diverge");
      if (yr.diverged) res.warnings.push_back("refinement diagnostic flags divergence");
      return res;
    }
  }
  throw std::invalid_argument("controlled_compose: unknown kind");
}

}  // namespace irrlab
