#include "irrlab/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irrlab {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_pow2(n)) throw std::invalid_argument("fft: power-of-two size required");
  if (n <= 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const cplx wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (cplx& x : a) x *= inv;
  }
}

namespace {

std::vector<cplx> bluestein(const std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  const double sign = inverse ? 1.0 : -1.0;
  const std::size_t m = next_pow2(2 * n + 1);
  std::vector<cplx> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    // chirp phase k^2 mod 2n keeps the argument bounded
    const std::size_t k2 = (static_cast<unsigned long long>(k) * k) % (2 * n);
    const double ang = sign * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
    w[k] = cplx(std::cos(ang), std::sin(ang));
  }
  std::vector<cplx> x(m, cplx(0, 0)), y(m, cplx(0, 0));
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * w[k];
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = std::conj(w[k]);
    if (k != 0) y[m - k] = std::conj(w[k]);
  }
  fft(x, false);
  fft(y, false);
  for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
  fft(x, true);
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = x[k] * w[k];
  if (inverse) {
    const double invn = 1.0 / static_cast<double>(n);
    for (cplx& v : out) v *= invn;
  }
  return out;
}

}  // namespace

std::vector<cplx> dft(const std::vector<cplx>& a, bool inverse) {
  if (a.size() <= 1) return a;
  if (is_pow2(a.size())) {
    std::vector<cplx> out = a;
    fft(out, inverse);
    return out;
  }
  return bluestein(a, inverse);
}

std::vector<cplx> dft_nd(std::vector<cplx> data, const std::vector<std::size_t>& dims, bool inverse) {
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  if (data.size() != total) throw std::invalid_argument("dft_nd: size mismatch");

  std::size_t stride = 1;
  for (std::size_t axis_i = dims.size(); axis_i-- > 0;) {
    const std::size_t len = dims[axis_i];
    const std::size_t groups = total / len;
    std::vector<cplx> line(len);
    for (std::size_t g = 0; g < groups; ++g) {
      // base index of this line: decompose g into (outer, inner) around the axis
      const std::size_t inner = g % stride;
      const std::size_t outer = g / stride;
      const std::size_t base = outer * stride * len + inner;
      for (std::size_t k = 0; k < len; ++k) line[k] = data[base + k * stride];
      line = dft(line, inverse);
      for (std::size_t k = 0; k < len; ++k) data[base + k * stride] = line[k];
    }
    stride *= len;
  }
  return data;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_n = a.size() + b.size() - 1;
  const std::size_t m = next_pow2(out_n);
  std::vector<cplx> fa(m, cplx(0, 0)), fb(m, cplx(0, 0));
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  fft(fa, false);
  fft(fb, false);
  for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
  fft(fa, true);
  std::vector<double> out(out_n);
  for (std::size_t i = 0; i < out_n; ++i) out[i] = fa[i].real();
  return out;
}

}  // namespace irrlab
