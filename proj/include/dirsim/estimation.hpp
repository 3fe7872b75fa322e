#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "dirsim/precoding.hpp"
#include "dirsim/random_stream.hpp"

namespace dirsim {

/// Joint PT training observation: received = H * pilot_matrix + noise, where
/// column k of H (N_A x K) is the PT composite channel of LU k.
struct PilotBlock {
  Eigen::MatrixXcd pilot_matrix;  // K x T_P, orthogonal rows
  Eigen::MatrixXcd received;      // N_A x T_P
};

/// Rows of a T_P-point DFT scaled to per-symbol power p0 / K.
Eigen::MatrixXcd dft_pilots(int k_users, int t_p, double p0);

PilotBlock observe_pilots(const Eigen::MatrixXcd& h_pt, const Eigen::MatrixXcd& pilots,
                          double noise_var, RandomStream& stream);

/// H_hat = received X^H (X X^H)^{-1}.
ChannelEstimate ls_estimate(const PilotBlock& pb);

/// Scalar received-power reports of one feedback round.
struct PowerFeedback {
  int round = 1;  // 1-based
  std::vector<double> p;
};

/// Empirical mean over n_symbols of |sum_u h_k^H w_u s_u + n_k|^2 with
/// i.i.d. CN(0,1) symbols shared by all LUs and CN(0, noise_var) noise.
/// Column k of h_true is the channel LU k experiences during the measurement.
PowerFeedback measure_received_power(const Eigen::MatrixXcd& h_true, const Precoder& pre,
                                     double noise_var, RandomStream& stream, int n_symbols,
                                     int round = 1);

/// Moment estimator of delta_k^2 from one feedback round:
///
///   raw_k = max(0, p_k - sum_u |h_hat_k^H w_u|^2 - noise_var) / p0
///
/// `pre` must be the precoder that was active while p was measured. With a
/// prior, the result is the running mean of raw estimates over rounds
/// 1..fb.round.
DeltaEstimates estimate_delta(const PowerFeedback& fb, const ChannelEstimate& est,
                              const Precoder& pre, double noise_var, double p0,
                              const std::optional<DeltaEstimates>& prior);

/// True iff the SJNR dropped by strictly more than threshold_db.
bool detect_jamming(double sjnr_pt, double sjnr_dt, double threshold_db);

}  // namespace dirsim
