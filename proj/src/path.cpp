#include "irrlab/path.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace irrlab {

std::vector<double> SampledPath::at_time(double t) const {
  const std::size_t n = steps();
  double u = t / dt();
  if (u < 0.0) u = 0.0;
  if (u > static_cast<double>(n)) u = static_cast<double>(n);
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(u), n - 1);
  const double frac = u - static_cast<double>(k);
  std::vector<double> out(dim);
  for (int c = 0; c < dim; ++c) out[c] = (1.0 - frac) * value(k, c) + frac * value(k + 1, c);
  return out;
}

SampledPath SampledPath::zeros(int dim, std::size_t n, double horizon) {
  SampledPath p;
  p.dim = dim;
  p.horizon = horizon;
  p.values.assign((n + 1) * static_cast<std::size_t>(dim), 0.0);
  p.validate();
  return p;
}

SampledPath SampledPath::from_function(int dim, std::size_t n, double horizon,
                                       const std::function<void(double, double*)>& f) {
  SampledPath p = zeros(dim, n, horizon);
  for (std::size_t k = 0; k <= n; ++k) f(p.time_at(k), &p.values[k * static_cast<std::size_t>(dim)]);
  p.validate();
  return p;
}

void SampledPath::validate() const {
  if (dim < 1 || dim > 3) throw std::invalid_argument("SampledPath: dim must be in [1,3]");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("SampledPath: horizon must be positive");
  if (values.size() % static_cast<std::size_t>(dim) != 0) throw std::invalid_argument("SampledPath: ragged value array");
  if (values.size() / static_cast<std::size_t>(dim) < 3) throw std::invalid_argument("SampledPath: need n >= 2");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("SampledPath: non-finite value");
}

HolderEstimate holder_seminorm(const SampledPath& path, double delta, double max_lag) {
  path.validate();
  if (!(delta > 0.0)) throw std::invalid_argument("holder_seminorm: delta must be positive");
  if (!(max_lag > 0.0) || max_lag > path.horizon + 1e-12 * path.horizon)
    throw std::invalid_argument("holder_seminorm: max_lag must be in (0, T]");

  const std::size_t n = path.steps();
  const double dt = path.dt();
  const std::size_t lag_steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(max_lag / dt + 1e-9)));

  HolderEstimate est;
  est.exponent = delta;
  est.max_lag = max_lag;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j_end = std::min(n, i + lag_steps);
    for (std::size_t j = i + 1; j <= j_end; ++j) {
      double inc2 = 0.0;
      for (int c = 0; c < path.dim; ++c) {
        const double d = path.value(j, c) - path.value(i, c);
        inc2 += d * d;
      }
      const double lag = static_cast<double>(j - i) * dt;
      const double ratio = std::sqrt(inc2) / std::pow(lag, delta);
      if (ratio > est.seminorm) {
        est.seminorm = ratio;
        est.arg_i = i;
        est.arg_j = j;
      }
    }
  }
  return est;
}

SampledPath rescale(const SampledPath& path, double lambda, double gamma, double rho) {
  path.validate();
  if (!(lambda > 0.0) || lambda > 1.0) throw std::invalid_argument("rescale: lambda must be in (0,1]");
  if (!(rho > 0.0)) throw std::invalid_argument("rescale: rho must be positive");
  const std::size_t n = path.steps();
  const double m_real = lambda * static_cast<double>(n);
  const std::size_t m = static_cast<std::size_t>(std::llround(m_real));
  if (std::abs(m_real - static_cast<double>(m)) > 1e-9 || m < 2)
    throw std::invalid_argument("rescale: lambda*n must be an integer >= 2 (no interpolation)");

  // Output node k sits at k*T/m; lambda * (k*T/m) = k*T/n, so node k reads
  // input node k scaled by lambda^{-(1-gamma)/rho}. Output segments map onto
  // single input segments, which keeps the scaling identity exact for the
  // piecewise-linear evaluator.
  const double factor = std::pow(lambda, -(1.0 - gamma) / rho);
  SampledPath out;
  out.dim = path.dim;
  out.horizon = path.horizon;
  out.values.resize((m + 1) * static_cast<std::size_t>(path.dim));
  for (std::size_t k = 0; k <= m; ++k)
    for (int c = 0; c < path.dim; ++c) out.values[k * path.dim + c] = factor * path.value(k, c);
  out.validate();
  return out;
}

SampledPath transform(const SampledPath& path, const Mat& a, const std::vector<double>& shift) {
  path.validate();
  const std::size_t d = static_cast<std::size_t>(path.dim);
  if (a.rows != d || a.cols != d) throw std::invalid_argument("transform: matrix must be d x d");
  if (shift.size() != d) throw std::invalid_argument("transform: shift must have length d");
  if (!a.finite()) throw std::invalid_argument("transform: non-finite matrix");

  SampledPath out = path;
  const std::size_t n = path.steps();
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      double s = shift[i];
      for (std::size_t j = 0; j < d; ++j) s += a(i, j) * path.value(k, static_cast<int>(j));
      out.value(k, static_cast<int>(i)) = s;
    }
  }
  return out;
}

SampledPath restrict_nodes(const SampledPath& path, std::size_t j0, std::size_t j1) {
  path.validate();
  const std::size_t n = path.steps();
  if (j0 >= j1 || j1 > n) throw std::invalid_argument("restrict_nodes: need 0 <= j0 < j1 <= n");
  if (j1 - j0 < 2) throw std::invalid_argument("restrict_nodes: sub-path needs at least 2 steps");
  SampledPath out;
  out.dim = path.dim;
  out.horizon = static_cast<double>(j1 - j0) * path.horizon / static_cast<double>(n);
  out.values.assign(path.values.begin() + static_cast<std::ptrdiff_t>(j0 * path.dim),
                    path.values.begin() + static_cast<std::ptrdiff_t>((j1 + 1) * path.dim));
  out.validate();
  return out;
}

namespace {
constexpr char kMagic[16] = {'I', 'R', 'R', 'L', 'A', 'B', 'P', 'A', 'T', 'H', 'v', '1', 0, 0, 0, 0};
}

void write_path_binary(const SampledPath& path, const std::string& file) {
  path.validate();
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("write_path_binary: cannot open " + file);
  out.write(kMagic, 16);
  const std::uint32_t d = static_cast<std::uint32_t>(path.dim);
  const std::uint64_t n = path.steps();
  out.write(reinterpret_cast<const char*>(&d), 4);
  out.write(reinterpret_cast<const char*>(&n), 8);
  out.write(reinterpret_cast<const char*>(&path.horizon), 8);
  out.write(reinterpret_cast<const char*>(path.values.data()),
            static_cast<std::streamsize>(path.values.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write_path_binary: write failed for " + file);
}

SampledPath read_path_binary(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("read_path_binary: cannot open " + file);
  char magic[16];
  in.read(magic, 16);
  if (!in || std::memcmp(magic, kMagic, 16) != 0) throw std::runtime_error("read_path_binary: bad magic in " + file);
  std::uint32_t d = 0;
  std::uint64_t n = 0;
  SampledPath p;
  in.read(reinterpret_cast<char*>(&d), 4);
  in.read(reinterpret_cast<char*>(&n), 8);
  in.read(reinterpret_cast<char*>(&p.horizon), 8);
  if (!in || d < 1 || d > 3) throw std::runtime_error("read_path_binary: bad header in " + file);
  p.dim = static_cast<int>(d);
  p.values.resize((n + 1) * d);
  in.read(reinterpret_cast<char*>(p.values.data()), static_cast<std::streamsize>(p.values.size() * sizeof(double)));
  if (!in) throw std::runtime_error("read_path_binary: truncated file " + file);
  p.validate();
  return p;
}

void write_path_csv(const SampledPath& path, const std::string& file) {
  path.validate();
  std::ofstream out(file);
  if (!out) throw std::runtime_error("write_path_csv: cannot open " + file);
  out << "t";
  for (int c = 0; c < path.dim; ++c) out << ",x" << (c + 1);
  out << "\n";
  char buf[40];
  const std::size_t n = path.steps();
  for (std::size_t k = 0; k <= n; ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g", path.time_at(k));
    out << buf;
    for (int c = 0; c < path.dim; ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", path.value(k, c));
      out << ',' << buf;
    }
    out << "\n";
  }
}

SampledPath read_path_csv(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("read_path_csv: cannot open " + file);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_path_csv: empty file " + file);
  int dim = 0;
  for (char ch : line)
    if (ch == ',') ++dim;
  if (dim < 1 || dim > 3) throw std::runtime_error("read_path_csv: bad header in " + file);

  std::vector<double> times;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    if (!std::getline(ss, cell, ',')) break;
    times.push_back(std::stod(cell));
    for (int c = 0; c < dim; ++c) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("read_path_csv: short row in " + file);
      values.push_back(std::stod(cell));
    }
  }
  if (times.size() < 3) throw std::runtime_error("read_path_csv: need at least 3 rows in " + file);
  SampledPath p;
  p.dim = dim;
  p.horizon = times.back();
  p.values = std::move(values);
  p.validate();
  return p;
}

}  // namespace irrlab
