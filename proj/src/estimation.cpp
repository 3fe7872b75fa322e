#include "dirsim/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dirsim/errors.hpp"

namespace dirsim {

Eigen::MatrixXcd dft_pilots(int k_users, int t_p, double p0) {
  if (k_users < 1 || t_p < k_users)
    throw ConfigError("dft_pilots: need 1 <= K <= T_P (K = " + std::to_string(k_users) +
                      ", T_P = " + std::to_string(t_p) + ")");
  const double amp = std::sqrt(p0 / k_users);
  Eigen::MatrixXcd x(k_users, t_p);
  for (int k = 0; k < k_users; ++k) {
    for (int t = 0; t < t_p; ++t) {
      // Reduce k*t mod T_P first so the angle stays small and exact.
      const double frac = static_cast<double>((k * t) % t_p) / t_p;
      x(k, t) = std::polar(amp, -2.0 * std::numbers::pi * frac);
    }
  }
  return x;
}

PilotBlock observe_pilots(const Eigen::MatrixXcd& h_pt, const Eigen::MatrixXcd& pilots,
                          double noise_var, RandomStream& stream) {
  if (h_pt.cols() != pilots.rows())
    throw ContractViolation("observe_pilots: channel has " + std::to_string(h_pt.cols()) +
                            " users but pilots have " + std::to_string(pilots.rows()) + " rows");
  Eigen::MatrixXcd y = h_pt * pilots;
  if (noise_var > 0.0) {
    const double sigma = std::sqrt(noise_var);
    for (Eigen::Index t = 0; t < y.cols(); ++t) {
      for (Eigen::Index a = 0; a < y.rows(); ++a) y(a, t) += sigma * stream.complex_normal();
    }
  }
  return {pilots, std::move(y)};
}

ChannelEstimate ls_estimate(const PilotBlock& pb) {
  const auto& x = pb.pilot_matrix;
  const Eigen::Index k_users = x.rows();
  if (k_users < 1 || x.cols() < k_users)
    throw ConfigError("ls_estimate: pilot length T_P must be >= K");
  if (pb.received.cols() != x.cols())
    throw ContractViolation("ls_estimate: received block length differs from pilot length");

  const Eigen::MatrixXcd gram = x * x.adjoint();
  const double diag_min = gram.diagonal().real().minCoeff();
  Eigen::MatrixXcd off = gram;
  off.diagonal().setZero();
  if (!(diag_min > 0.0) || off.cwiseAbs().maxCoeff() > 1e-9 * gram.diagonal().real().maxCoeff())
    throw ConfigError("ls_estimate: pilot rows are not orthogonal (rank-deficient pilot matrix)");

  return {pb.received * x.adjoint() * gram.inverse()};
}

PowerFeedback measure_received_power(const Eigen::MatrixXcd& h_true, const Precoder& pre,
                                     double noise_var, RandomStream& stream, int n_symbols,
                                     int round) {
  if (n_symbols < 1) throw ContractViolation("measure_received_power: n_symbols must be >= 1");
  if (h_true.rows() != pre.w.rows() || h_true.cols() != pre.w.cols())
    throw ContractViolation("measure_received_power: channel and precoder dimensions differ");
  const Eigen::Index k_users = h_true.cols();

  // gains(k, u) = h_k^H w_u
  const Eigen::MatrixXcd gains = h_true.adjoint() * pre.w;
  const double sigma = std::sqrt(std::max(0.0, noise_var));

  Eigen::MatrixXcd symbols(k_users, n_symbols);
  for (Eigen::Index t = 0; t < n_symbols; ++t) {
    for (Eigen::Index u = 0; u < k_users; ++u) symbols(u, t) = stream.complex_normal();
  }
  Eigen::MatrixXcd received = gains * symbols;
  for (Eigen::Index t = 0; t < n_symbols; ++t) {
    for (Eigen::Index k = 0; k < k_users; ++k) received(k, t) += sigma * stream.complex_normal();
  }

  PowerFeedback fb{round, std::vector<double>(static_cast<std::size_t>(k_users))};
  for (Eigen::Index k = 0; k < k_users; ++k)
    fb.p[static_cast<std::size_t>(k)] = received.row(k).squaredNorm() / n_symbols;
  return fb;
}

DeltaEstimates estimate_delta(const PowerFeedback& fb, const ChannelEstimate& est,
                              const Precoder& pre, double noise_var, double p0,
                              const std::optional<DeltaEstimates>& prior) {
  const int k_users = est.n_users();
  if (static_cast<int>(fb.p.size()) != k_users || pre.w.cols() != k_users)
    throw ContractViolation("estimate_delta: feedback, estimate and precoder disagree on K");
  if (!(p0 > 0.0)) throw ContractViolation("estimate_delta: p0 must be positive");
  if (fb.round < 1) throw ContractViolation("estimate_delta: feedback round is 1-based");

  const Eigen::MatrixXcd predicted = est.h_pt.adjoint() * pre.w;
  DeltaEstimates out{std::vector<double>(static_cast<std::size_t>(k_users)), fb.round};
  for (int k = 0; k < k_users; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const double expected = predicted.row(k).squaredNorm() + noise_var;
    const double raw = std::max(0.0, fb.p[idx] - expected) / p0;
    if (prior && fb.round > 1) {
      const double n = static_cast<double>(fb.round);
      out.delta_sq[idx] = (prior->delta_sq.at(idx) * (n - 1.0) + raw) / n;
    } else {
      out.delta_sq[idx] = raw;
    }
  }
  return out;
}

bool detect_jamming(double sjnr_pt, double sjnr_dt, double threshold_db) {
  return 10.0 * std::log10(sjnr_pt / sjnr_dt) > threshold_db;
}

}  // namespace dirsim
