#pragma once
// Deterministic randomness. std::mt19937_64 has a standard-mandated sequence,
// but the std distributions do not, so sampling is done with our own
// rejection sampler to keep byte-identical runs across platforms.

#include <cstdint>
#include <random>
#include <vector>

#include "cogsyn/error.hpp"
#include "cogsyn/rational.hpp"

namespace cogsyn {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, n) without modulo bias.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw Error(Errc::bad_input, "below(0)");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }

  // Index sampled with probability weights[i] / sum(weights). Weights must be
  // nonnegative rationals with a positive sum.
  std::size_t weighted(const std::vector<Rational>& weights) {
    BigInt lcm_den = 1;
    for (const auto& w : weights) {
      if (w < 0) throw Error(Errc::bad_input, "negative weight");
      lcm_den = boost::multiprecision::lcm(lcm_den, denominator(w));
    }
    std::vector<BigInt> scaled(weights.size());
    BigInt total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      scaled[i] = numerator(weights[i]) * (lcm_den / denominator(weights[i]));
      total += scaled[i];
    }
    if (total <= 0) throw Error(Errc::bad_input, "weights sum to zero");
    // Desk-scale weights fit in 64 bits once normalized; rescale if not.
    while (total > UINT64_MAX) {
      total = 0;
      for (auto& s : scaled) {
        s >>= 16;
        total += s;
      }
      if (total == 0) throw Error(Errc::bad_input, "weights underflow");
    }
    std::uint64_t r = below(total.convert_to<std::uint64_t>());
    BigInt acc = 0;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
      acc += scaled[i];
      if (BigInt(r) < acc) return i;
    }
    return scaled.size() - 1;
  }

  // Uniform double in [0,1) built from the top 53 bits; deterministic.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace cogsyn
