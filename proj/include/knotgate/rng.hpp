#pragma once

#include <cstdint>

namespace knotgate {

struct Quaternion;

/// xoshiro256** seeded through splitmix64. Fixed algorithm so that seeded
/// results are identical across platforms and standard-library versions
/// (std::uniform_real_distribution and friends make no such promise).
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// uniform in [0,1) with 53 random bits
    double uniform01();

    double uniform(double lo, double hi);

    /// standard normal via Box-Muller (two uniforms per call, cosine branch)
    double gaussian();

    /// Haar-uniform unit quaternion: 4 gaussians, normalized
    Quaternion haar_quaternion();

  private:
    std::uint64_t s_[4];
};

} // namespace knotgate
