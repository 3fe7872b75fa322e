#pragma once

#include <span>

namespace dirsim {

struct MeanCi {
  double mean = 0.0;
  double ci95 = 0.0;  // half-width
};

/// Sample mean and Student-t 95% half-width. Values are summed in index
/// order so the result does not depend on how they were produced.
MeanCi mean_ci95(std::span<const double> values);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // population (1/n)
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

Moments sample_moments(std::span<const double> values);

}  // namespace dirsim
