#ifndef RCNS_TEST_UTIL_HPP
#define RCNS_TEST_UTIL_HPP

#include <cstdint>

namespace rcns_test {

// small deterministic generator for property-style sampling
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0x9E3779B97F4A7C15ull) : state_(seed) {}

  double uniform(double lo, double hi) {
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    const std::uint64_t x = (state_ >> 11) | 1;
    return lo + (hi - lo) * (static_cast<double>(x) / 9007199254740992.0);
  }

 private:
  std::uint64_t state_;
};

}  // namespace rcns_test

#endif
