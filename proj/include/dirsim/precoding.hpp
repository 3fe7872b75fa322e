#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace dirsim {

/// PT-phase channel knowledge: column k is the estimate of h_PT,k.
struct ChannelEstimate {
  Eigen::MatrixXcd h_pt;  // N_A x K

  int n_antennas() const { return static_cast<int>(h_pt.rows()); }
  int n_users() const { return static_cast<int>(h_pt.cols()); }

  // Co-user channels of LU k: every column except k, in order.
  Eigen::MatrixXcd others(int k) const;
};

/// Per-antenna variance of the DIRS-induced perturbation of each LU channel.
struct DeltaEstimates {
  std::vector<double> delta_sq;
  int rounds = 0;  // feedback rounds averaged into delta_sq

  static DeltaEstimates zeros(int k_users) {
    return {std::vector<double>(static_cast<std::size_t>(k_users), 0.0), 0};
  }
  double sum() const;
};

/// Column k is the beamformer w_k of LU k.
struct Precoder {
  Eigen::MatrixXcd w;  // N_A x K
  std::string label;

  double total_power() const { return w.squaredNorm(); }
};

// Above this the stacked channel is treated as rank deficient.
inline constexpr double kMaxZfConditionNumber = 1e10;

/// Zero forcing from the right pseudo-inverse of the stacked h^H matrix,
/// equal power P_0 / K per user.
Precoder zf_precoder(const ChannelEstimate& est, double p0);

/// argmax over unit w of (w^H A w) / (w^H B w) for Hermitian A >= 0, B > 0.
///
/// B is whitened with its own eigendecomposition, B^{-1/2} A B^{-1/2} is
/// diagonalized and the top vector is mapped back. If the top eigenvalue is
/// within 1e-10 (relative) of the next one, the answer is the normalized
/// projection of the first standard basis vector that is not orthogonal to
/// the top eigenspace. The result is rotated so its largest-modulus entry is
/// real and positive.
Eigen::VectorXcd max_generalized_eigenvector(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Statistical anti-jamming precoder. For LU k
///
///   A_k = h_k h_k^H + delta_k^2 I
///   B_k = H~_k H~_k^H + (noise K / P_0 + sum_{u != k} delta_u^2) I
///
/// and w_k is the maximizer of the generalized Rayleigh quotient, scaled to
/// P_0 / K. H~_k stacks the other users' PT channels.
Precoder ajp_precoder(const ChannelEstimate& est, const DeltaEstimates& deltas, double noise_var,
                      double p0);

/// Common rescaling to total power p0.
Precoder normalize_power(Precoder pre, double p0);

/// Multiply by the unit phasor that makes the largest-modulus entry real
/// positive (first index wins among equal moduli).
Eigen::VectorXcd fix_global_phase(const Eigen::VectorXcd& v);

}  // namespace dirsim
