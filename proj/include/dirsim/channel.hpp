#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "dirsim/dirs.hpp"
#include "dirsim/random_stream.hpp"
#include "dirsim/scenario.hpp"

namespace dirsim {

// Below the 1 m reference distance the log-distance law is not defined.
inline constexpr double kMinLinkDistance = 1.0;

/// Linear large-scale power attenuation.
struct LinkGain {
  double gain = 1.0;
};

LinkGain path_loss_gain(double d, double exponent, const PathLossParams& params);

/// i.i.d. CN(0, gain) entries.
Eigen::MatrixXcd sample_fading(int rows, int cols, LinkGain gain, RandomStream& stream);

/// Small- and large-scale fading of one trial.
///
/// Conjugation convention: every channel is a column vector and a receiver
/// sees h^H x for a transmit vector x. The composite downlink channel of LU k
/// under reflection phi is
///
///   h_k^H = h_direct_k^H + dirs_lu_k^H diag(phi) ap_dirs.
struct ChannelSet {
  Eigen::MatrixXcd h_direct;  // N_A x K, column k = AP -> LU k
  Eigen::MatrixXcd ap_dirs;   // N_D x N_A
  Eigen::MatrixXcd dirs_lu;   // N_D x K, column k = DIRS -> LU k
  Eigen::VectorXcd aj_lu;     // K, AJ -> LU k

  // Large-scale gains, kept for analytic variances.
  LinkGain ap_dirs_gain;
  std::vector<LinkGain> dirs_lu_gain;

  int n_antennas() const { return static_cast<int>(h_direct.rows()); }
  int n_users() const { return static_cast<int>(h_direct.cols()); }
  int n_dirs() const { return static_cast<int>(ap_dirs.rows()); }
};

/// Draws every block of a trial from the (seed, trial) substreams tagged
/// "direct", "ap_dirs", "dirs_lu" and "aj". Unit-variance draws are scaled
/// by the link gain afterwards, so geometry changes reuse the same fading.
ChannelSet draw_channel_set(const ScenarioConfig& cfg, std::span<const Position3D> users,
                            std::uint64_t trial);

struct CompositeChannel {
  Eigen::VectorXcd h;
  int slot_index = 0;
};

CompositeChannel assemble_composite(const ChannelSet& cs, int user_k, const ReflectState& phi,
                                    int slot_index = 0);

/// All users at once: column k equals assemble_composite(cs, k, phi).h.
Eigen::MatrixXcd assemble_composite_all(const ChannelSet& cs, const ReflectState& phi);

/// Per-antenna variance of h_k(t_q) - h_k(t_0) for i.i.d. reflection draws:
/// n_dirs * g_ap_dirs * g_dirs_lu * E|phi - phi'|^2.
double cascaded_variance(LinkGain ap_dirs, LinkGain dirs_lu, const PhaseDistribution& dist,
                         int n_dirs);

}  // namespace dirsim
