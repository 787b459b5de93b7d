#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "irrlab/rng.hpp"
#include "irrlab/simulate.hpp"
#include "irrlab/spectral.hpp"

using namespace irrlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// midpoint Riemann sum on a refined grid, evaluating the piecewise-linear
// interpolant; the oracle for phi()
std::complex<double> riemann_phi(const SampledPath& p, std::size_t s_node, std::size_t t_node,
                                 const std::vector<double>& xi, int refine) {
  const double dt = p.dt() / refine;
  std::complex<double> acc(0, 0);
  for (std::size_t k = s_node; k < t_node; ++k) {
    for (int r = 0; r < refine; ++r) {
      const double t = p.time_at(k) + (r + 0.5) * dt;
      const std::vector<double> x = p.at_time(t);
      double dot = 0;
      for (int c = 0; c < p.dim; ++c) dot += xi[c] * x[c];
      acc += std::complex<double>(std::cos(dot), std::sin(dot)) * dt;
    }
  }
  return acc;
}

SampledPath fbm_path(double h, int dim, std::size_t n, std::uint64_t seed) {
  GaussianModel m;
  m.kind = GaussianKind::fbm;
  m.hurst = h;
  m.dim = dim;
  return simulate_gaussian(m, n, 1.0, Seed{seed, 0});
}

}  // namespace

TEST_CASE("phi of the zero path is t - s") {
  const SampledPath z = SampledPath::zeros(1, 64, 1.0);
  const auto v = phi(z, 0, 64, {7.0});
  CHECK(v.value.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v.value.imag() == doctest::Approx(0.0).scale(1).epsilon(1e-15));
}

TEST_CASE("phi closed form for the linear path") {
  const SampledPath lin = SampledPath::from_function(1, 256, 1.0, [](double t, double* o) { o[0] = t; });
  // |Phi_{s,t}(xi)| = |2 sin(xi (t-s)/2) / xi|
  for (double xi : {1.0, 3.0, 10.0}) {
    const auto v = phi(lin, 64, 192, {xi});
    const double target = std::abs(2.0 * std::sin(xi * 0.25) / xi);
    CHECK(std::abs(v.value) == doctest::Approx(target).epsilon(1e-10));
  }
  // xi = 2 pi over [0,1] integrates to zero
  const auto zero = phi(lin, 0, 256, {2.0 * std::numbers::pi});
  CHECK(std::abs(zero.value) < 1e-10);
}

TEST_CASE("phi matches the refined midpoint oracle within its error estimate") {
  const SampledPath w = fbm_path(0.5, 2, 1 << 10, 21);
  const std::vector<double> xi{5.0, -2.0};
  const std::size_t s = (1 << 10) / 4, t = 3 * (1 << 10) / 4;
  const auto v = phi(w, s, t, xi);
  const auto oracle = riemann_phi(w, s, t, xi, 64);
  CHECK(std::abs(v.value - oracle) <= v.error_estimate + 1e-12);
  // and much closer than the estimate in practice: both integrate the same interpolant
  CHECK(std::abs(v.value - oracle) < 1e-6);
}

TEST_CASE("phi conjugation symmetry is exact") {
  const SampledPath w = fbm_path(0.4, 1, 512, 23);
  const auto a = phi(w, 100, 400, {37.5});
  const auto b = phi(w, 100, 400, {-37.5});
  CHECK(a.value.real() == b.value.real());
  CHECK(a.value.imag() == -b.value.imag());
}

TEST_CASE("phi table: derived entries equal direct calls exactly") {
  const SampledPath w = fbm_path(0.5, 1, 1 << 12, 29);
  const FrequencySet freqs = FrequencySet::make(1, 1.0, 10);
  const PhiTable table = phi_table(w, freqs, 6);
  for (std::size_t f = 0; f < freqs.count(); f += 3) {
    for (int level : {0, 3, 6}) {
      const std::size_t count = std::size_t(1) << level;
      for (std::size_t k = 0; k < count; k += std::max<std::size_t>(1, count / 4)) {
        const std::size_t s = k * ((std::size_t(1) << 12) >> level);
        const std::size_t t = (k + 1) * ((std::size_t(1) << 12) >> level);
        const auto direct = phi(w, s, t, freqs.frequency(f));
        const auto derived = table.value(f, level, k);
        CHECK(derived.real() == direct.value.real());
        CHECK(derived.imag() == direct.value.imag());
      }
    }
  }
}

TEST_CASE("phi table invariants: trivial bound and telescoping") {
  const SampledPath w = fbm_path(0.3, 1, 1 << 10, 31);
  const FrequencySet freqs = FrequencySet::make(1, 1.0, 8);
  const PhiTable table = phi_table(w, freqs, 5);
  for (std::size_t f = 0; f < freqs.count(); ++f) {
    std::complex<double> sum(0, 0);
    for (std::size_t k = 0; k < 32; ++k) {
      const auto v = table.value(f, 5, k);
      CHECK(std::abs(v) <= table.interval_length(5) + 1e-12);
      sum += v;
    }
    const auto whole = table.value(f, 0, 0);
    CHECK(sum.real() == doctest::Approx(whole.real()).epsilon(1e-12));
    CHECK(sum.imag() == doctest::Approx(whole.imag()).scale(1).epsilon(1e-12));
  }
}

TEST_CASE("zero-path table is flat in frequency") {
  const SampledPath z = SampledPath::zeros(1, 256, 1.0);
  const FrequencySet freqs = FrequencySet::make(1, 1.0, 6);
  const PhiTable table = phi_table(z, freqs, 4);
  for (std::size_t f = 0; f < freqs.count(); ++f)
    for (std::size_t k = 0; k < 16; ++k) {
      CHECK(table.value(f, 4, k).real() == doctest::Approx(1.0 / 16).epsilon(1e-14));
      CHECK(std::abs(table.value(f, 4, k).imag()) < 1e-14);
    }
}

TEST_CASE("phi_table memory cap triggers before allocation") {
  const SampledPath w = fbm_path(0.5, 1, 1 << 10, 33);
  const FrequencySet freqs = FrequencySet::make(1, 1.0, 18);
  CHECK_THROWS_AS(phi_table(w, freqs, 10, 1024), std::runtime_error);
}

TEST_CASE("occupation density conserves mass") {
  const SampledPath w = fbm_path(0.5, 1, 1 << 12, 35);
  const OccupationDensity d = occupation_density(w, 0, 1 << 12, std::nullopt, std::nullopt, 128);
  CHECK(std::abs(d.mass() - 1.0) < 1e-9);
  const OccupationDensity part = occupation_density(w, 512, 2048, std::nullopt, std::nullopt, 64);
  CHECK(std::abs(part.mass() - (2048 - 512) / 4096.0) < 1e-9);
  for (double v : d.values) CHECK(v >= 0.0);
}

TEST_CASE("uniform occupation of the linear path") {
  const SampledPath lin = SampledPath::from_function(1, 1 << 12, 1.0, [](double t, double* o) { o[0] = t; });
  const OccupationDensity d = occupation_density(lin, 0, 1 << 12, std::nullopt, std::nullopt, 64);
  // interior bins of the auto-expanded box see density ~ 1
  for (int i = 0; i < 64; ++i) {
    const double x = d.lo[0] + (i + 0.5) * d.h(0);
    if (x > 0.05 && x < 0.95) CHECK(d.values[i] == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_CASE("constant path deposits a point mass") {
  const SampledPath c = SampledPath::from_function(1, 256, 1.0, [](double, double* o) { o[0] = 0.4; });
  const OccupationDensity d = occupation_density(c, 0, 256, std::nullopt, std::nullopt, 32);
  double carried = 0.0;
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    const double x = d.cell_center(i)[0];
    if (std::abs(x - 0.4) <= d.h(0)) carried += d.values[i] * d.h(0);
  }
  CHECK(carried == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("density spectrum equals conj(phi) after CIC correction") {
  const SampledPath w = fbm_path(0.5, 1, 1 << 14, 37);
  const std::size_t n = 1 << 14;
  const OccupationDensity d = occupation_density(w, 0, n, std::nullopt, std::nullopt, 256);
  const DensitySpectrum sp = density_spectrum(d);
  const std::vector<double> h{d.h(0)};
  const double cut = std::numbers::pi / (4.0 * h[0]);
  for (std::size_t k = 0; k < sp.values.size(); ++k) {
    const std::vector<double> xi = sp.frequency(k);
    if (xi[0] == 0.0 || std::abs(xi[0]) > cut) continue;
    const auto direct = phi(w, 0, n, xi);
    const std::complex<double> corrected = sp.values[k] / cic_transfer(xi, h);
    CHECK(std::abs(corrected - std::conj(direct.value)) < 1e-3 * (d.t_hi - d.t_lo));
  }
}

TEST_CASE("fl_norm of spectral fields") {
  SpectralField dc;
  dc.dim = 1;
  dc.freqs = {{0.0}};
  dc.coeffs = {{1.0, 0.0}};
  for (double alpha : {-1.0, 0.0, 2.0})
    for (double p : {1.0, 2.0, kInf}) CHECK(fl_norm(dc, alpha, p) == doctest::Approx(1.0));
  CHECK_THROWS_AS(fl_norm(dc, 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("FL convolution inequality on random fields") {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    SpectralField f, g;
    f.dim = g.dim = 1;
    // common lattice so the torus convolution is a coefficient product
    for (int j = -8; j <= 8; ++j) {
      f.freqs.push_back({static_cast<double>(j)});
      g.freqs.push_back({static_cast<double>(j)});
      f.coeffs.emplace_back(rng.normal(), rng.normal());
      g.coeffs.emplace_back(rng.normal(), rng.normal());
    }
    const SpectralField fg = convolve_fields(f, g);
    const double alpha = 0.7, beta = -0.3;
    const double p = 2.0, q = 2.0, r = 1.0;  // 1/r = 1/p + 1/q
    CHECK(fl_norm(fg, alpha + beta, r) <= fl_norm(f, alpha, p) * fl_norm(g, beta, q) * (1 + 1e-12));
  }
}

TEST_CASE("FL embedding inequality with the lattice constant") {
  Rng rng(103);
  const double alpha = 0.5, p = kInf, q = 2.0;
  const double eps = 0.25;
  // C = (sum over lattice <xi>^{-s q})^{1/q} for p = inf, s = d(1/q) + eps
  double c_sum = 0.0;
  for (int j = -64; j <= 64; ++j) {
    const double b2 = 1.0 + static_cast<double>(j) * j;
    c_sum += std::pow(b2, -0.5 * (0.5 + eps) * q);
  }
  const double c = std::pow(c_sum, 1.0 / q);
  for (int trial = 0; trial < 20; ++trial) {
    SpectralField f;
    f.dim = 1;
    for (int j = -64; j <= 64; ++j) {
      f.freqs.push_back({static_cast<double>(j)});
      f.coeffs.emplace_back(rng.normal(), rng.normal());
    }
    CHECK(fl_norm(f, alpha - 0.5 - eps, q) <= c * fl_norm(f, alpha, p) * (1 + 1e-12));
  }
}

TEST_CASE("hermitian closure and real evaluation") {
  SpectralField f;
  f.dim = 1;
  f.freqs = {{3.0}};
  f.coeffs = {{0.4, -0.9}};
  f.enforce_hermitian();
  REQUIRE(f.terms() == 2);
  for (double x : {-0.7, 0.0, 1.3}) {
    CHECK(std::abs(f.evaluate({x}).imag()) < 1e-12);
  }
}

TEST_CASE("energy integral: uniform density against the double-sum oracle") {
  const SampledPath lin = SampledPath::from_function(1, 1 << 12, 1.0, [](double t, double* o) { o[0] = t; });
  const int m = 256;
  const OccupationDensity d = occupation_density(lin, 0, 1 << 12, std::nullopt, std::nullopt, m);
  const double alpha = 0.5;
  // direct double sum with the bin-averaged diagonal kernel
  const double h = d.h(0);
  double oracle = 0.0;
  const double diag_kernel = 2.0 * std::pow(h, -alpha) / ((1.0 - alpha) * (2.0 - alpha));
  for (int i = 0; i < m; ++i) {
    if (d.values[i] == 0.0) continue;
    for (int j = 0; j < m; ++j) {
      if (d.values[j] == 0.0) continue;
      const double mi = d.values[i] * h, mj = d.values[j] * h;
      if (i == j)
        oracle += mi * mj * diag_kernel;
      else
        oracle += mi * mj * std::pow(h * std::abs(i - j), -alpha);
    }
  }
  const double freq_side = energy_integral(d, alpha);
  CHECK(freq_side == doctest::Approx(oracle).epsilon(0.02));
}

TEST_CASE("energy integral approaches mass^2 as alpha -> 0") {
  const SampledPath lin = SampledPath::from_function(1, 1 << 10, 1.0, [](double t, double* o) { o[0] = t; });
  const OccupationDensity d = occupation_density(lin, 0, 1 << 10, std::nullopt, std::nullopt, 128);
  CHECK(energy_integral(d, 0.01) == doctest::Approx(1.0).epsilon(0.05));
  CHECK_THROWS_AS(energy_integral(d, 3.5), std::invalid_argument);
}

TEST_CASE("energy integral stable under grid refinement for fbm occupation") {
  // alpha = 1.5 >= d probes the Sobolev diagnostic; the deposit resolution
  // must stay below the path's information scale, hence the long path
  const SampledPath w = fbm_path(0.5, 1, 1 << 17, 39);
  const OccupationDensity d1 = occupation_density(w, 0, 1 << 17, std::nullopt, std::nullopt, 256);
  const OccupationDensity d2 = occupation_density(w, 0, 1 << 17, std::nullopt, std::nullopt, 512);
  const double e1 = energy_integral(d1, 1.5);
  const double e2 = energy_integral(d2, 1.5);
  CHECK(std::isfinite(e1));
  CHECK(std::abs(e2 - e1) / e1 < 0.05);
}

TEST_CASE("frequency set shapes") {
  const FrequencySet f1 = FrequencySet::make(1);
  CHECK(f1.directions.size() == 1);
  CHECK(f1.magnitudes.size() == 19);
  CHECK(f1.magnitudes.back() == doctest::Approx(512.0));
  const FrequencySet f2 = FrequencySet::make(2);
  CHECK(f2.directions.size() == 16);
  const FrequencySet f3 = FrequencySet::make(3);
  CHECK(f3.directions.size() == 32);
  for (const auto& d : f3.directions) {
    double n2 = 0;
    for (double v : d) n2 += v * v;
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));
  }
  const FrequencySet fr = FrequencySet::make(2, 1.0, 18, 8, 5);
  CHECK(fr.directions.size() == 24);
}

TEST_CASE("phi_prefixes agrees with direct calls") {
  const SampledPath w = fbm_path(0.6, 1, 1 << 10, 41);
  const std::vector<std::vector<double>> xis{{3.0}, {17.0}};
  const auto pre = phi_prefixes(w, xis, 1 << 7);
  for (std::size_t f = 0; f < xis.size(); ++f)
    for (std::size_t r = 1; r < pre[f].size(); ++r) {
      const auto direct = phi(w, 0, r << 7, xis[f]);
      CHECK(pre[f][r].real() == direct.value.real());
      CHECK(pre[f][r].imag() == direct.value.imag());
    }
}
