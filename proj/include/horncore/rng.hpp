#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "horncore/tensor.hpp"

namespace horncore {

/// Deterministic random source. The uniform/normal mappings are written out
/// explicitly so that a given seed reproduces the same stream on any
/// standard-library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    while (u == 0.0) u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 6.283185307179586476925286766559 * v;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  Index uniform_index(Index n) { return static_cast<Index>(engine_() % static_cast<std::uint64_t>(n)); }

  template <typename S>
  void fill_uniform(Tensor<S>& t, double lo, double hi) {
    for (Index i = 0; i < t.size(); ++i) t[i] = static_cast<S>(uniform(lo, hi));
  }

  template <typename S>
  void fill_normal(Tensor<S>& t, double mean, double stddev) {
    for (Index i = 0; i < t.size(); ++i) t[i] = static_cast<S>(mean + stddev * normal());
  }

  template <typename S>
  Tensor<S> uniform_tensor(std::vector<Index> shape, double lo, double hi) {
    Tensor<S> t(std::move(shape));
    fill_uniform(t, lo, hi);
    return t;
  }

  template <typename S>
  Tensor<S> normal_tensor(std::vector<Index> shape, double mean, double stddev) {
    Tensor<S> t(std::move(shape));
    fill_normal(t, mean, stddev);
    return t;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace horncore
