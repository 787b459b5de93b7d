#include "irrlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace irrlab {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

Rng::Rng(std::uint64_t root, std::uint64_t label_a, std::uint64_t label_b) {
  std::uint64_t k = mix64(root + kGolden);
  k = mix64(k ^ (label_a + kGolden));
  k = mix64(k ^ (label_b + kGolden));
  key_ = k;
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t c = counter_++;
  return mix64(key_ + c * kGolden);
}

double Rng::uniform() {
  // 53 random bits into (0,1); +0.5 keeps both endpoints out
  const std::uint64_t bits = next_u64() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::stable_symmetric(double alpha) {
  // Chambers-Mallows-Stuck, symmetric case
  const double v = std::numbers::pi * (uniform() - 0.5);
  if (alpha == 1.0) return std::tan(v);
  const double w = exponential();
  const double s = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha);
  const double t = std::pow(std::cos(v - alpha * v) / w, (1.0 - alpha) / alpha);
  return s * t;
}

double Rng::stable_subordinator(double alpha) {
  // one-sided (beta = 1) stable; this normalization has E exp(-l S) = exp(-l^alpha)
  const double v = std::numbers::pi * (uniform() - 0.5);
  const double w = exponential();
  const double v0 = std::numbers::pi / 2.0;
  const double s = std::sin(alpha * (v + v0)) / std::pow(std::cos(v), 1.0 / alpha);
  const double t = std::pow(std::cos(v - alpha * (v + v0)) / w, (1.0 - alpha) / alpha);
  return s * t;
}

}  // namespace irrlab
