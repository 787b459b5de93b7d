#include "irrlab/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "irrlab/linalg.hpp"

namespace irrlab {

namespace {

std::vector<double> germ_prefix(const Germ& germ, double horizon, std::size_t steps) {
  const int vd = germ.value_dim;
  std::vector<double> out((steps + 1) * vd, 0.0);
  std::vector<double> g(vd);
  for (std::size_t k = 0; k < steps; ++k) {
    const double s = horizon * static_cast<double>(k) / static_cast<double>(steps);
    const double t = horizon * static_cast<double>(k + 1) / static_cast<double>(steps);
    germ.eval(s, t, g.data());
    for (int c = 0; c < vd; ++c) out[(k + 1) * vd + c] = out[k * vd + c] + g[c];
  }
  return out;
}

}  // namespace

SewResult sew(const Germ& germ, double horizon, int level, int diagnostic_levels) {
  if (!(germ.beta_declared > 1.0)) throw std::invalid_argument("sew: declared beta must exceed 1");
  if (level < 1) throw std::invalid_argument("sew: level must be >= 1");
  if (!germ.eval) throw std::invalid_argument("sew: missing germ evaluator");
  const int vd = germ.value_dim;

  SewResult res;
  res.value_dim = vd;
  res.level = level;
  res.horizon = horizon;

  const int lo_level = std::max(1, level - std::max(0, diagnostic_levels));
  std::vector<double> prev;
  for (int l = lo_level; l <= level; ++l) {
    const std::size_t steps = std::size_t(1) << l;
    std::vector<double> cur = germ_prefix(germ, horizon, steps);
    if (!prev.empty()) {
      // sup over the coarse nodes shared by both partitions
      double diff = 0.0;
      const std::size_t coarse_steps = steps / 2;
      for (std::size_t k = 0; k <= coarse_steps; ++k)
        for (int c = 0; c < vd; ++c)
          diff = std::max(diff, std::abs(cur[(2 * k) * vd + c] - prev[k * vd + c]));
      res.level_diffs.push_back(diff);
    }
    prev = std::move(cur);
  }
  res.values = std::move(prev);

  if (res.level_diffs.size() >= 2) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < res.level_diffs.size(); ++i) {
      if (res.level_diffs[i] <= 0.0) continue;  // already converged exactly
      xs.push_back(static_cast<double>(i));
      ys.push_back(std::log2(res.level_diffs[i]));
    }
    if (xs.size() >= 2) {
      res.order = -fit_line(xs, ys).slope;
      res.diverged = res.order <= 0.0;
    } else {
      res.order = std::numeric_limits<double>::infinity();  // exact at every level
    }
  }
  return res;
}

double estimate_holder_exponent(const SampledPath& path) {
  const std::size_t n = path.steps();
  std::vector<double> xs, ys;
  for (std::size_t lag = 1; lag <= n / 4; lag *= 2) {
    double sup = 0.0;
    for (std::size_t k = 0; k + lag <= n; ++k) {
      double inc2 = 0.0;
      for (int c = 0; c < path.dim; ++c) {
        const double d = path.value(k + lag, c) - path.value(k, c);
        inc2 += d * d;
      }
      sup = std::max(sup, inc2);
    }
    if (sup <= 0.0) continue;
    xs.push_back(std::log(static_cast<double>(lag) * path.dt()));
    ys.push_back(0.5 * std::log(sup));
    if (xs.size() >= 8) break;
  }
  if (xs.size() < 2) return 1.0;  // constant path: treat as smooth
  return fit_line(xs, ys).slope;
}

YoungResult young_integral(const SampledPath& a, const SampledPath& phi_path) {
  a.validate();
  phi_path.validate();
  const std::size_t n = phi_path.steps();
  if (a.steps() != n || std::abs(a.horizon - phi_path.horizon) > 1e-12 * phi_path.horizon)
    throw std::invalid_argument("young_integral: same grid required");
  const int cols = phi_path.dim;
  if (a.dim % cols != 0) throw std::invalid_argument("young_integral: A dim must be rows * phi.dim");
  const int rows = a.dim / cols;

  YoungResult res;
  res.measured_alpha = estimate_holder_exponent(a);
  res.measured_beta = estimate_holder_exponent(phi_path);
  res.regularity_warning = (res.measured_alpha + res.measured_beta <= 1.0);

  // prefix sums of the germ A_s phi_{s,t} on the full grid and three coarsenings
  std::vector<std::vector<double>> levels;
  std::vector<std::size_t> strides;
  for (std::size_t stride : {8u, 4u, 2u, 1u}) {
    if (n % stride != 0) continue;
    const std::size_t m = n / stride;
    std::vector<double> pre((m + 1) * rows, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t s_node = k * stride;
      const std::size_t t_node = (k + 1) * stride;
      for (int r = 0; r < rows; ++r) {
        double g = 0.0;
        for (int c = 0; c < cols; ++c)
          g += a.value(s_node, r * cols + c) * (phi_path.value(t_node, c) - phi_path.value(s_node, c));
        pre[(k + 1) * rows + r] = pre[k * rows + r] + g;
      }
    }
    levels.push_back(std::move(pre));
    strides.push_back(stride);
  }

  std::vector<double> diffs;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const std::size_t coarse_m = n / strides[i];
    double diff = 0.0;
    for (std::size_t k = 0; k <= coarse_m; ++k)
      for (int r = 0; r < rows; ++r)
        diff = std::max(diff, std::abs(levels[i + 1][(2 * k) * rows + r] - levels[i][k * rows + r]));
    diffs.push_back(diff);
  }
  if (diffs.size() >= 2) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < diffs.size(); ++i)
      if (diffs[i] > 0.0) {
        xs.push_back(static_cast<double>(i));
        ys.push_back(std::log2(diffs[i]));
      }
    if (xs.size() >= 2) {
      res.order = -fit_line(xs, ys).slope;
      res.diverged = res.order <= 0.0;
    } else {
      res.order = std::numeric_limits<double>::infinity();
    }
  }

  res.integral.dim = rows;
  res.integral.horizon = phi_path.horizon;
  res.integral.values = std::move(levels.back());
  return res;
}

OdeSolution solve_ode(const OdeProblem& problem) {
  const SampledPath& w = problem.w;
  w.validate();
  const int d = w.dim;
  if (problem.x0.size() != static_cast<std::size_t>(d)) throw std::invalid_argument("solve_ode: x0 dim mismatch");
  const std::size_t m = std::size_t(1) << problem.level;
  if (w.steps() % m != 0) throw std::invalid_argument("solve_ode: path steps must be divisible by 2^level");
  const std::size_t stride = w.steps() / m;

  const bool time_dep = problem.drift_time.has_value();
  if (!time_dep && problem.drift.size() != static_cast<std::size_t>(d))
    throw std::invalid_argument("solve_ode: need one drift field per component");
  if (time_dep && d != problem.drift_time->dim)
    throw std::invalid_argument("solve_ode: time-dependent drift dim mismatch");

  // collect the union of frequencies, then per-step Phi increments
  std::vector<std::vector<double>> xis;
  std::vector<std::vector<std::size_t>> term_of;  // per component, index into xis
  double coeff_scale = 0.0;
  if (!time_dep) {
    term_of.resize(d);
    for (int c = 0; c < d; ++c) {
      const SpectralField& f = problem.drift[c];
      f.validate();
      if (f.dim != d) throw std::invalid_argument("solve_ode: drift field dim mismatch");
      for (std::size_t j = 0; j < f.terms(); ++j) {
        xis.push_back(f.freqs[j]);
        term_of[c].push_back(xis.size() - 1);
        coeff_scale += std::abs(f.coeffs[j]);
      }
    }
  } else {
    const TimeDependentDrift& td = *problem.drift_time;
    td.validate(w.steps());
    for (std::size_t j = 0; j < td.freqs.size(); ++j) {
      xis.push_back(td.freqs[j]);
      for (const auto& v : td.coeff_paths[j]) coeff_scale = std::max(coeff_scale, std::abs(v));
    }
  }
  // time-dependent drifts need Phi at every path node for the in-step Young
  // sums; autonomous drifts only need the step endpoints
  const auto prefixes = phi_prefixes(w, xis, time_dep ? 1 : stride);

  OdeSolution sol;
  sol.theta = SampledPath::zeros(d, m, w.horizon);
  sol.x = SampledPath::zeros(d, m, w.horizon);
  std::vector<double> theta = problem.x0;
  double x0_norm = 0.0;
  for (double v : problem.x0) x0_norm = std::max(x0_norm, std::abs(v));
  const double blowup_threshold = x0_norm + 10.0 * (1.0 + coeff_scale * w.horizon);

  for (int c = 0; c < d; ++c) {
    sol.theta.value(0, c) = theta[c];
    sol.x.value(0, c) = theta[c];
  }

  for (std::size_t k = 0; k < m; ++k) {
    if (!sol.blowup) {
      std::vector<double> step(d, 0.0);
      if (!time_dep) {
        for (int c = 0; c < d; ++c) {
          std::complex<double> acc(0.0, 0.0);
          const SpectralField& f = problem.drift[c];
          for (std::size_t jj = 0; jj < term_of[c].size(); ++jj) {
            const std::size_t fi = term_of[c][jj];
            const std::complex<double> phi_inc = prefixes[fi][k + 1] - prefixes[fi][k];
            double dot = 0.0;
            for (int cc = 0; cc < d; ++cc) dot += f.freqs[jj][cc] * theta[cc];
            acc += f.coeffs[jj] * phi_inc * std::complex<double>(std::cos(dot), std::sin(dot));
          }
          step[c] = acc.real();
          sol.max_imag = std::max(sol.max_imag, std::abs(acc.imag()));
        }
      } else {
        const TimeDependentDrift& td = *problem.drift_time;
        // per term: Young sum of c_j(u) dPhi(xi_j) across the path nodes of the step
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t j = 0; j < td.freqs.size(); ++j) {
          std::complex<double> young(0.0, 0.0);
          for (std::size_t u = k * stride; u < (k + 1) * stride; ++u) {
            const std::complex<double> inc = prefixes[j][u + 1] - prefixes[j][u];
            young += td.coeff_paths[j][u] * inc;
          }
          double dot = 0.0;
          for (int cc = 0; cc < d; ++cc) dot += td.freqs[j][cc] * theta[cc];
          acc += young * std::complex<double>(std::cos(dot), std::sin(dot));
        }
        step[0] = acc.real();
        sol.max_imag = std::max(sol.max_imag, std::abs(acc.imag()));
      }
      for (int c = 0; c < d; ++c) theta[c] += step[c];
      double tnorm = 0.0;
      for (double v : theta) tnorm = std::max(tnorm, std::abs(v));
      if (!std::isfinite(tnorm) || tnorm > blowup_threshold) {
        sol.blowup = true;
        sol.blowup_step = k;
        for (double& v : theta)
          if (!std::isfinite(v)) v = 0.0;
      }
    }
    const std::size_t node = (k + 1) * stride;
    for (int c = 0; c < d; ++c) {
      sol.theta.value(k + 1, c) = theta[c];
      sol.x.value(k + 1, c) = theta[c] + w.value(node, c) - w.value(0, c);
    }
  }
  return sol;
}

FlowDiagnostic flow_diagnostic(const OdeProblem& problem, const std::vector<double>& eps_list) {
  if (eps_list.size() < 2) throw std::invalid_argument("flow_diagnostic: need >= 2 perturbation sizes");
  const OdeSolution base = solve_ode(problem);
  FlowDiagnostic diag;
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (double eps : eps_list) {
    OdeProblem p = problem;
    p.x0[0] += eps;
    const OdeSolution pert = solve_ode(p);
    double sup = 0.0;
    for (std::size_t k = 0; k <= base.x.steps(); ++k)
      for (int c = 0; c < base.x.dim; ++c) sup = std::max(sup, std::abs(pert.x.value(k, c) - base.x.value(k, c)));
    diag.eps.push_back(eps);
    diag.sup_ratio.push_back(sup / eps);
    diag.blowup.push_back(base.blowup || pert.blowup);
    if (!(base.blowup || pert.blowup)) {
      rmin = std::min(rmin, sup / eps);
      rmax = std::max(rmax, sup / eps);
    }
  }
  diag.ratio_spread = (rmin > 0.0 && std::isfinite(rmin)) ? rmax / rmin : std::numeric_limits<double>::infinity();
  return diag;
}

SampledPath reparametrize(const SampledPath& path, const std::function<double(double)>& tau) {
  path.validate();
  const std::size_t n = path.steps();
  if (std::abs(tau(0.0)) > 1e-12 * path.horizon) throw std::invalid_argument("reparametrize: tau(0) must be 0");
  double prev = tau(0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    const double v = tau(path.time_at(k));
    if (!(v > prev)) throw std::invalid_argument("reparametrize: tau must be strictly increasing");
    prev = v;
  }
  const double new_horizon = tau(path.horizon);

  SampledPath out = SampledPath::zeros(path.dim, n, new_horizon);
  for (std::size_t k = 0; k <= n; ++k) {
    const double r = new_horizon * static_cast<double>(k) / static_cast<double>(n);
    // monotone bisection for tau^{-1}(r)
    double lo = 0.0, hi = path.horizon;
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * path.horizon; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (tau(mid) < r)
        lo = mid;
      else
        hi = mid;
    }
    const std::vector<double> v = path.at_time(0.5 * (lo + hi));
    for (int c = 0; c < path.dim; ++c) out.value(k, c) = v[c];
  }
  return out;
}

}  // namespace irrlab
