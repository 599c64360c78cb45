#pragma once
// Deterministic, portable random streams. std::<random> distributions are
// implementation-defined, so everything here is hand-rolled: splitmix64 for
// seed derivation, xoshiro256++ for the stream, 53-bit uniforms, Box-Muller
// normals. Identical seeds give bit-identical sequences on any platform.

#include <cmath>
#include <cstdint>

namespace flipin {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent substream seed for (master, index, tag). Tags keep the phase,
// noise and insider streams of one run decoupled.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                 std::uint64_t tag = 0) {
  std::uint64_t h = mix64(master ^ 0x8f462907d54c89a3ULL);
  h = mix64(h ^ (index + 0x632be59bd9b4e019ULL));
  h = mix64(h ^ (tag + 0xd1b54a32d192ed03ULL));
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = mix64(s ^= 0x9e3779b97f4a7c15ULL);
  }

  static Rng substream(std::uint64_t master, std::uint64_t index,
                       std::uint64_t tag = 0) {
    return Rng(derive_seed(master, index, tag));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // uniform in [0, 1), 53-bit resolution
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // uniform strictly inside (0, hi)
  double uniform_open(double hi) {
    double u;
    do {
      u = uniform01();
    } while (u == 0.0);
    return u * hi;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1;
    do {
      u1 = uniform01();
    } while (u1 == 0.0);
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4]{};
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace flipin
