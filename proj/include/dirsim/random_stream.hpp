#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace dirsim {

/// Deterministic source of uniform and Gaussian draws.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard, and
/// converts raw words itself so that draws are identical across standard
/// library implementations (std::*_distribution is not).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_open_low() { return 1.0 - uniform(); }

  // Circularly-symmetric complex Gaussian with E|z|^2 = 1 (Box-Muller).
  std::complex<double> complex_normal();

 private:
  std::mt19937_64 engine_;
};

/// Substream keyed by (master seed, trial, purpose). Identical keys give
/// identical streams; the key is hashed with SplitMix64 so neighbouring
/// trials and different tags start far apart in the generator state.
RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t trial_index,
                           std::string_view purpose_tag);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);

}  // namespace dirsim
