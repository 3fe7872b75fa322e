#include "dirsim/random_stream.hpp"

#include <cmath>
#include <numbers>

namespace dirsim {

std::complex<double> RandomStream::complex_normal() {
  const double u1 = uniform_open_low();
  const double u2 = uniform();
  const double r = std::sqrt(-std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(angle), r * std::sin(angle)};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t trial_index,
                           std::string_view purpose_tag) {
  std::uint64_t key = splitmix64(master_seed);
  key = splitmix64(key ^ trial_index);
  key = splitmix64(key ^ fnv1a64(purpose_tag));
  return RandomStream(key);
}

}  // namespace dirsim
