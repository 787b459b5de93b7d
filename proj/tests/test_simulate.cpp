#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "irrlab/linalg.hpp"
#include "irrlab/simulate.hpp"

using namespace irrlab;

namespace {

double ks_p_value(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t n = a.size(), m = b.size();
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < n && j < m) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double ne = std::sqrt(static_cast<double>(n) * m / static_cast<double>(n + m));
  const double lambda = (ne + 0.12 + 0.11 / ne) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) p += 2.0 * ((k % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(p, 0.0, 1.0);
}

double fbm_cov(double h, double t, double s) {
  return 0.5 * (std::pow(t, 2 * h) + std::pow(s, 2 * h) - std::pow(std::abs(t - s), 2 * h));
}

}  // namespace

TEST_CASE("fbm H=1/2 has iid Gaussian increments") {
  GaussianModel m;
  m.kind = GaussianKind::fbm;
  m.hurst = 0.5;
  const std::size_t n = 1 << 14;
  const SampledPath w = simulate_gaussian(m, n, 1.0, Seed{1, 0});
  const double dt = w.dt();
  double s2 = 0, lag1 = 0;
  std::vector<double> inc(n);
  for (std::size_t k = 0; k < n; ++k) inc[k] = w.value(k + 1) - w.value(k);
  for (std::size_t k = 0; k < n; ++k) s2 += inc[k] * inc[k];
  for (std::size_t k = 0; k + 1 < n; ++k) lag1 += inc[k] * inc[k + 1];
  // chi^2: sum inc^2 / dt ~ chi^2_n, within 4 sigma
  const double chi2 = s2 / dt;
  CHECK(std::abs(chi2 - n) < 4.0 * std::sqrt(2.0 * n));
  // lag-1 autocorrelation within 4 sigma of 0
  const double rho1 = lag1 / s2;
  CHECK(std::abs(rho1) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("fbm empirical covariance matches the closed form on a probe set") {
  GaussianModel m;
  m.kind = GaussianKind::fbm;
  m.hurst = 0.7;
  const std::size_t n = 256;
  const std::size_t mc = 2000;
  std::vector<SampledPath> ws;
  ws.reserve(mc);
  for (std::size_t i = 0; i < mc; ++i) ws.push_back(simulate_gaussian(m, n, 1.0, Seed{2, i}));

  const std::vector<std::pair<std::size_t, std::size_t>> probes{
      {32, 64}, {64, 128}, {128, 192}, {40, 200}, {16, 240}, {64, 64}, {128, 128}, {200, 256}, {8, 72}, {96, 160}};
  for (const auto& [a, b] : probes) {
    double acc = 0, acc2 = 0;
    for (const SampledPath& w : ws) {
      const double v = w.value(a) * w.value(b);
      acc += v;
      acc2 += v * v;
    }
    const double mean = acc / mc;
    const double stderr_mc = std::sqrt((acc2 / mc - mean * mean) / mc);
    const double target = fbm_cov(0.7, a / 256.0, b / 256.0);
    CHECK(std::abs(mean - target) < 3.0 * stderr_mc + 1e-12);
  }
}

TEST_CASE("circulant embedding agrees with the Cholesky oracle (KS on W_T)") {
  const double h = 0.3;
  const std::size_t n = 256;
  const std::size_t mc = 2500;
  std::vector<double> circ(mc), chol(mc);
  for (std::size_t i = 0; i < mc; ++i) {
    GaussianModel m;
    m.kind = GaussianKind::fbm;
    m.hurst = h;
    circ[i] = simulate_gaussian(m, n, 1.0, Seed{3, i}).value(n);
    chol[i] = simulate_fbm_cholesky(h, 1, n, 1.0, Seed{1003, i}).value(n);
  }
  CHECK(ks_p_value(circ, chol) > 0.01);
}

TEST_CASE("fbm self-similarity in distribution") {
  const double h = 0.6;
  const std::size_t n = 512, mc = 2500;
  std::vector<double> half(mc), scaled(mc);
  for (std::size_t i = 0; i < mc; ++i) {
    GaussianModel m;
    m.kind = GaussianKind::fbm;
    m.hurst = h;
    const SampledPath w = simulate_gaussian(m, n, 1.0, Seed{5, i});
    half[i] = w.value(n / 2);
    scaled[i] = std::pow(2.0, -h) * simulate_gaussian(m, n, 1.0, Seed{7777, i}).value(n);
  }
  CHECK(ks_p_value(half, scaled) > 0.01);
}

TEST_CASE("stationary increments across four anchors") {
  const double h = 0.4;
  const std::size_t n = 512, mc = 2000;
  std::vector<std::vector<double>> groups(4, std::vector<double>(mc));
  const std::size_t delta = 64;
  const std::size_t anchors[4] = {0, 96, 192, 320};
  for (std::size_t i = 0; i < mc; ++i) {
    GaussianModel m;
    m.kind = GaussianKind::fbm;
    m.hurst = h;
    const SampledPath w = simulate_gaussian(m, n, 1.0, Seed{60, i});
    for (int g = 0; g < 4; ++g) groups[g][i] = w.value(anchors[g] + delta) - w.value(anchors[g]);
  }
  for (int g = 1; g < 4; ++g) CHECK(ks_p_value(groups[0], groups[g]) > 0.01);
}

TEST_CASE("conditional_variance closed forms") {
  GaussianModel bm;
  bm.kind = GaussianKind::brownian;
  CHECK(conditional_variance(bm, 0.25, 0.75)(0, 0) == doctest::Approx(0.5));

  GaussianModel fbm;
  fbm.kind = GaussianKind::fbm;
  fbm.hurst = 0.7;
  const double c = std::tgamma(1.5 - 0.7) / (std::tgamma(0.7 + 0.5) * std::tgamma(2.0 - 1.4));
  CHECK(conditional_variance(fbm, 0.0, 0.25)(0, 0) == doctest::Approx(c * std::pow(0.25, 1.4)));
  // H = 1/2 reduces to the Brownian value
  fbm.hurst = 0.5;
  CHECK(conditional_variance(fbm, 0.0, 0.3)(0, 0) == doctest::Approx(0.3).epsilon(1e-12));

  GaussianModel ma;
  ma.kind = GaussianKind::moving_average;
  ma.ma_beta = 0.75;
  CHECK(conditional_variance(ma, 0.1, 0.35)(0, 0) == doctest::Approx(std::pow(0.25, 1.5) / 1.5));
}

TEST_CASE("log_bm conditional variance matches a quadrature oracle") {
  // oracle: integral of r^{-1} |log r|^{-beta-1} over (0, delta), via the
  // substitution u = -log r and composite Gauss panels on [u0, 1e12]
  const double beta = 1.3;
  const double delta = 0.2;
  const double u0 = -std::log(delta);
  // 16-point Gauss-Legendre nodes/weights on [-1, 1]
  static const double gx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
                               0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
  static const double gw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
                               0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
  double oracle = 0.0;
  double lo = u0;
  for (int panel = 0; panel < 220; ++panel) {
    const double hi = lo * 1.15;
    const double mid = 0.5 * (lo + hi), rad = 0.5 * (hi - lo);
    for (int i = 0; i < 8; ++i) {
      for (double sgn : {-1.0, 1.0}) {
        const double u = mid + sgn * rad * gx[i];
        oracle += gw[i] * rad * std::pow(u, -beta - 1.0);
      }
    }
    lo = hi;
    if (lo > 1e12) break;
  }

  GaussianModel lb;
  lb.kind = GaussianKind::log_bm;
  lb.logbm_beta = beta;
  const double closed = conditional_variance(lb, 0.0, delta)(0, 0);
  CHECK(closed == doctest::Approx(std::pow(std::abs(std::log(delta)), -beta) / beta));
  CHECK(closed == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("integrated fbm returns the documented local form") {
  GaussianModel m;
  m.kind = GaussianKind::integrated_fbm;
  m.hurst = 0.5;
  m.integration_order = 1;
  const double hh = 1.5;
  const double g = std::tgamma(hh + 0.5);
  CHECK(conditional_variance(m, 0.0, 0.5)(0, 0) == doctest::Approx(std::pow(0.5, 3.0) / (g * g * 3.0)));
}

TEST_CASE("OU conditional variance solves the Lyapunov integral") {
  GaussianModel ou;
  ou.kind = GaussianKind::ornstein_uhlenbeck;
  ou.dim = 2;
  ou.ou_a = Mat(2, 2);
  ou.ou_a(0, 0) = 1.0;
  ou.ou_a(0, 1) = 0.3;
  ou.ou_a(1, 1) = 0.5;
  ou.ou_sigma = 0.8;
  const double delta = 0.4;
  const Mat q = conditional_variance(ou, 0.0, delta);
  // oracle: direct quadrature of sigma^2 e^{-uA} e^{-uA^T}
  Mat acc(2, 2);
  const int steps = 20000;
  for (int i = 0; i < steps; ++i) {
    const double u = (i + 0.5) * delta / steps;
    const Mat e = expm(-u * ou.ou_a);
    acc = acc + (delta / steps) * (e * e.transposed());
  }
  acc = (0.8 * 0.8) * acc;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(q(i, j) == doctest::Approx(acc(i, j)).epsilon(1e-6));
}

TEST_CASE("OU exact transition matches statistics") {
  GaussianModel ou;
  ou.kind = GaussianKind::ornstein_uhlenbeck;
  ou.dim = 1;
  ou.ou_a = Mat(1, 1);
  ou.ou_a(0, 0) = 2.0;
  ou.ou_sigma = 1.0;
  ou.ou_x0 = {1.5};
  ou.ou_drift = {{0.4}, {1.0}};  // f(t) = 0.4 + t
  const std::size_t n = 64, mc = 4000;
  const double t_probe = 0.5;
  double acc = 0.0, acc2 = 0.0;
  for (std::size_t i = 0; i < mc; ++i) {
    const SampledPath p = simulate_gaussian(ou, n, 1.0, Seed{8, i});
    const double v = p.value(32);
    acc += v;
    acc2 += v * v;
  }
  const double mean = acc / mc;
  const double var = acc2 / mc - mean * mean;
  // closed form: m(t) = e^{-at} x0 + int_0^t e^{-a(t-s)} (0.4 + s) ds
  const double a = 2.0;
  const double m_exact = std::exp(-a * t_probe) * 1.5 +
                         0.4 * (1 - std::exp(-a * t_probe)) / a +
                         (t_probe / a - (1 - std::exp(-a * t_probe)) / (a * a));
  const double v_exact = (1 - std::exp(-2 * a * t_probe)) / (2 * a);
  CHECK(mean == doctest::Approx(m_exact).epsilon(0.03));
  CHECK(var == doctest::Approx(v_exact).epsilon(0.08));
}

TEST_CASE("empirical conditional variance: Brownian and fbm targets") {
  const std::size_t n = 256, mc = 2000;
  std::vector<SampledPath> bm_samples, fbm_samples, shifted;
  GaussianModel bm;
  bm.kind = GaussianKind::brownian;
  GaussianModel fm;
  fm.kind = GaussianKind::fbm;
  fm.hurst = 0.7;
  for (std::size_t i = 0; i < mc; ++i) {
    bm_samples.push_back(simulate_gaussian(bm, n, 1.0, Seed{9, i}));
    fbm_samples.push_back(simulate_gaussian(fm, n, 1.0, Seed{10, i}));
  }
  const std::size_t s_node = 128;
  const std::size_t t_node = 132;  // |t-s| = 2^{-6}
  std::vector<std::size_t> hist{128, 127, 126, 124, 120, 112, 96, 64};

  const auto bm_est = empirical_conditional_variance(bm_samples, t_node, hist);
  CHECK(bm_est.covariance(0, 0) == doctest::Approx(4.0 / 256.0).epsilon(0.15));

  const auto fbm_est = empirical_conditional_variance(fbm_samples, t_node, hist);
  const double target = conditional_variance(fm, 0.5, 0.5 + 4.0 / 256.0)(0, 0);
  CHECK(std::abs(fbm_est.covariance(0, 0) - target) / target < 0.15);

  // mean-invariance: adding a deterministic function leaves the estimate alone
  shifted = fbm_samples;
  for (auto& p : shifted)
    for (std::size_t k = 0; k <= n; ++k) p.value(k) += std::sin(3.0 * p.time_at(k)) + 2.0;
  const auto shifted_est = empirical_conditional_variance(shifted, t_node, hist);
  CHECK(shifted_est.covariance(0, 0) == doctest::Approx(fbm_est.covariance(0, 0)).epsilon(1e-6));
}

TEST_CASE("empirical conditional variance input guards") {
  std::vector<SampledPath> few(10, SampledPath::zeros(1, 16, 1.0));
  CHECK_THROWS_AS(empirical_conditional_variance(few, 8, {1, 2}), std::invalid_argument);
}

TEST_CASE("fbm_sum superposes weighted components") {
  GaussianModel m;
  m.kind = GaussianKind::fbm_sum;
  m.fbm_sum_terms = {{0.8, 1.0}, {0.4, 0.25}};
  const SampledPath w = simulate_gaussian(m, 128, 1.0, Seed{11, 0});
  CHECK(w.steps() == 128);
  const Mat v = conditional_variance(m, 0.0, 0.25);
  const auto c = [](double h) { return std::tgamma(1.5 - h) / (std::tgamma(h + 0.5) * std::tgamma(2 - 2 * h)); };
  CHECK(v(0, 0) == doctest::Approx(1.0 * c(0.8) * std::pow(0.25, 1.6) + 0.0625 * c(0.4) * std::pow(0.25, 0.8)));
  // strictly decreasing H enforced
  GaussianModel bad = m;
  bad.fbm_sum_terms = {{0.4, 1.0}, {0.8, 1.0}};
  CHECK_THROWS_AS(bad.validate(1.0), std::invalid_argument);
}

TEST_CASE("stable axes alpha=2 limit scales like Brownian") {
  StableModel m;
  m.alpha = 1.95;
  const std::size_t n = 1 << 12;
  const SampledPath w = simulate_stable(m, n, 1.0, Seed{12, 0});
  // median |increment| scales ~ dt^{1/alpha}
  std::vector<double> incs(n);
  for (std::size_t k = 0; k < n; ++k) incs[k] = std::abs(w.value(k + 1) - w.value(k));
  std::sort(incs.begin(), incs.end());
  const double med = incs[n / 2];
  const double dt_scale = std::pow(1.0 / n, 1.0 / 1.95);
  CHECK(med / dt_scale > 0.3);
  CHECK(med / dt_scale < 3.0);
}

TEST_CASE("stable cauchy increments: empirical cf matches exp(-dt |xi|)") {
  StableModel m;
  m.alpha = 1.0;
  const std::size_t n = 4, mc = 100000;
  const double dt = 0.25;
  std::vector<double> incs(mc);
  for (std::size_t i = 0; i < mc; ++i) {
    const SampledPath w = simulate_stable(m, n, 1.0, Seed{13, i});
    incs[i] = w.value(1) - w.value(0);
  }
  for (double xi : {1.0, 2.0, 4.0}) {
    double re = 0;
    for (double x : incs) re += std::cos(xi * x);
    re /= mc;
    CHECK(re == doctest::Approx(std::exp(-dt * xi)).epsilon(0.05));
  }
}

TEST_CASE("isotropic stable: fitted c consistent across directions") {
  StableModel m;
  m.alpha = 1.5;
  m.axes = false;
  m.dim = 2;
  const std::size_t mc = 60000;
  const double dt = 1.0 / 8.0;
  std::vector<std::vector<double>> incs(mc, std::vector<double>(2));
  for (std::size_t i = 0; i < mc; ++i) {
    const SampledPath w = simulate_stable(m, 8, 1.0, Seed{14, i});
    incs[i][0] = w.value(1, 0) - w.value(0, 0);
    incs[i][1] = w.value(1, 1) - w.value(0, 1);
  }
  const double q = 1.5;
  std::vector<double> cs;
  for (int k = 0; k < 6; ++k) {
    const double ang = 3.14159265358979 * k / 6.0;
    const double ex = q * std::cos(ang), ey = q * std::sin(ang);
    double re = 0;
    for (const auto& v : incs) re += std::cos(ex * v[0] + ey * v[1]);
    re /= mc;
    // E cos = exp(-dt c q^1.5): recover c
    cs.push_back(-std::log(re) / (dt * std::pow(q, 1.5)));
  }
  for (double c : cs) CHECK(c == doctest::Approx(cs[0]).epsilon(0.05));
  CHECK(cs[0] == doctest::Approx(1.0).epsilon(0.1));  // normalized subordination
}

TEST_CASE("controlled_compose identities") {
  GaussianModel fm;
  fm.kind = GaussianKind::fbm;
  fm.hurst = 0.5;
  const SampledPath w = simulate_gaussian(fm, 64, 1.0, Seed{15, 0});

  ComposeSpec add0;
  add0.kind = ComposeKind::add;
  add0.factor = SampledPath::zeros(1, 64, 1.0);
  const auto sum = controlled_compose(w, add0);
  for (std::size_t i = 0; i < w.values.size(); ++i) CHECK(sum.path.values[i] == w.values[i]);

  ComposeSpec mul1;
  mul1.kind = ComposeKind::multiply;
  mul1.factor = SampledPath::from_function(1, 64, 1.0, [](double, double* o) { o[0] = 1.0; });
  const auto prod = controlled_compose(w, mul1);
  for (std::size_t i = 0; i < w.values.size(); ++i) CHECK(prod.path.values[i] == w.values[i]);

  ComposeSpec mul_bad;
  mul_bad.kind = ComposeKind::multiply;
  mul_bad.factor = SampledPath::from_function(1, 64, 1.0, [](double t, double* o) { o[0] = t - 0.5; });
  CHECK_THROWS_AS(controlled_compose(w, mul_bad), std::invalid_argument);

  // Young route with constant A: integral = A (w_t - w_0)
  ComposeSpec young;
  young.kind = ComposeKind::young_integral;
  young.factor = SampledPath::from_function(1, 64, 1.0, [](double, double* o) { o[0] = 2.5; });
  const auto yi = controlled_compose(w, young);
  for (std::size_t k = 0; k <= 64; ++k)
    CHECK(yi.path.value(k) == doctest::Approx(2.5 * (w.value(k) - w.value(0))).epsilon(1e-12));
}

TEST_CASE("circulant fallback warning plumbing stays silent for fbm") {
  GaussianModel m;
  m.kind = GaussianKind::fbm;
  m.hurst = 0.25;
  std::vector<std::string> warnings;
  (void)simulate_gaussian(m, 1 << 10, 1.0, Seed{16, 0}, &warnings);
  CHECK(warnings.empty());  // fGn embedding is nonnegative for H in (0,1)
}
