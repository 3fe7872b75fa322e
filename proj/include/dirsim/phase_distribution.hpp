#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace dirsim {

class RandomStream;

/// Discrete distribution of DIRS reflection coefficients. Entry i reflects
/// with amplitude amplitudes[i] and phase phases_rad[i]; the amplitude is
/// tied to the phase index because element amplitude follows its phase state.
struct PhaseDistribution {
  std::vector<double> phases_rad;
  std::vector<double> amplitudes;
  std::vector<double> probabilities;

  void validate() const;

  std::size_t size() const { return phases_rad.size(); }
  std::complex<double> coefficient(std::size_t index) const;

  // E[phi] and E|phi|^2 over the distribution.
  std::complex<double> mean() const;
  double second_moment() const;

  // Inverse-CDF draw of a phase index from one uniform on [0, 1).
  std::size_t index_for(double u) const;
  std::complex<double> sample(RandomStream& stream) const;

  // One-bit surface with phases {pi/9, 7pi/6} paired to amplitudes {0.8, 1}.
  // p_first is the probability of pi/9.
  static PhaseDistribution one_bit(double p_first);
  static PhaseDistribution case1() { return one_bit(0.25); }
  static PhaseDistribution case2() { return one_bit(0.5); }
  static PhaseDistribution single_point(double phase_rad, double amplitude);

  bool operator==(const PhaseDistribution&) const = default;
};

}  // namespace dirsim
