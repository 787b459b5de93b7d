#pragma once

#include <cstdint>

namespace irrlab {

/// Counter-based stream RNG. A stream is addressed by (root, label_a, label_b);
/// the k-th draw of a stream is a pure function of (key, k), so parallel
/// workers can consume disjoint streams in any order and still produce the
/// same numbers as a single-threaded run.
class Rng {
 public:
  explicit Rng(std::uint64_t root, std::uint64_t label_a = 0, std::uint64_t label_b = 0);

  std::uint64_t next_u64();
  /// Uniform on (0,1), never returns the endpoints.
  double uniform();
  /// Standard normal (Box-Muller; the spare is cached).
  double normal();
  double exponential();
  /// Symmetric alpha-stable with characteristic function exp(-|t|^alpha).
  double stable_symmetric(double alpha);
  /// One-sided alpha-stable, alpha in (0,1), Laplace transform exp(-l^alpha).
  double stable_subordinator(double alpha);

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace irrlab
