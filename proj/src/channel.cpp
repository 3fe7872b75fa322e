#include "dirsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dirsim/errors.hpp"

namespace dirsim {

LinkGain path_loss_gain(double d, double exponent, const PathLossParams& params) {
  if (!(d >= kMinLinkDistance))
    throw DomainError("path_loss_gain: distance " + std::to_string(d) +
                      " m is below the 1 m near-field clamp");
  const double loss_db = params.ref_loss_db + 10.0 * exponent * std::log10(d);
  return {std::pow(10.0, -loss_db / 10.0)};
}

Eigen::MatrixXcd sample_fading(int rows, int cols, LinkGain gain, RandomStream& stream) {
  if (rows < 1 || cols < 1) throw ContractViolation("sample_fading: rows and cols must be >= 1");
  if (!(gain.gain >= 0.0)) throw ContractViolation("sample_fading: gain must be >= 0");
  const double scale = std::sqrt(gain.gain);
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = scale * stream.complex_normal();
  }
  return m;
}

ChannelSet draw_channel_set(const ScenarioConfig& cfg, std::span<const Position3D> users,
                            std::uint64_t trial) {
  const int n_a = cfg.n_ap_antennas;
  const int n_d = cfg.n_dirs_elements;
  const int k_users = static_cast<int>(users.size());
  if (k_users != cfg.n_users) throw ContractViolation("draw_channel_set: user count mismatch");
  const auto& pl = cfg.path_loss;

  auto s_direct = derive_stream(cfg.master_seed, trial, "direct");
  auto s_ap_dirs = derive_stream(cfg.master_seed, trial, "ap_dirs");
  auto s_dirs_lu = derive_stream(cfg.master_seed, trial, "dirs_lu");
  auto s_aj = derive_stream(cfg.master_seed, trial, "aj");

  ChannelSet cs;
  cs.h_direct = sample_fading(n_a, k_users, {1.0}, s_direct);
  cs.dirs_lu = sample_fading(n_d, k_users, {1.0}, s_dirs_lu);
  cs.aj_lu = sample_fading(k_users, 1, {1.0}, s_aj).col(0);

  cs.ap_dirs_gain = path_loss_gain(distance(cfg.ap_pos, cfg.dirs_pos), pl.exp_ap_dirs, pl);
  cs.ap_dirs = sample_fading(n_d, n_a, cs.ap_dirs_gain, s_ap_dirs);

  cs.dirs_lu_gain.reserve(users.size());
  for (int k = 0; k < k_users; ++k) {
    const auto& u = users[static_cast<std::size_t>(k)];
    const double g_direct = path_loss_gain(distance(cfg.ap_pos, u), pl.exp_direct, pl).gain;
    const LinkGain g_dl = path_loss_gain(distance(cfg.dirs_pos, u), pl.exp_dirs_lu, pl);
    const double g_aj = path_loss_gain(distance(cfg.aj_pos, u), pl.exp_aj_lu, pl).gain;
    cs.h_direct.col(k) *= std::sqrt(g_direct);
    cs.dirs_lu.col(k) *= std::sqrt(g_dl.gain);
    cs.aj_lu[k] *= std::sqrt(g_aj);
    cs.dirs_lu_gain.push_back(g_dl);
  }
  return cs;
}

Eigen::MatrixXcd assemble_composite_all(const ChannelSet& cs, const ReflectState& phi) {
  if (phi.coeffs.size() != cs.n_dirs() || cs.ap_dirs.cols() != cs.n_antennas() ||
      cs.dirs_lu.cols() != cs.n_users())
    throw ContractViolation("assemble_composite: dimension mismatch between channels and state");
  if (phi.all_zero()) return cs.h_direct;
  // (K x N_D) * (N_D x N_A) gives the reflected part of h^H for every user.
  Eigen::MatrixXcd scaled = cs.dirs_lu.adjoint();
  scaled.array().rowwise() *= phi.coeffs.transpose().array();
  Eigen::MatrixXcd h_adj = scaled * cs.ap_dirs;
  return cs.h_direct + h_adj.adjoint();
}

CompositeChannel assemble_composite(const ChannelSet& cs, int user_k, const ReflectState& phi,
                                    int slot_index) {
  if (user_k < 0 || user_k >= cs.n_users())
    throw ContractViolation("assemble_composite: user index out of range");
  if (phi.coeffs.size() != cs.n_dirs() || cs.ap_dirs.cols() != cs.n_antennas())
    throw ContractViolation("assemble_composite: dimension mismatch between channels and state");
  if (phi.all_zero()) return {cs.h_direct.col(user_k), slot_index};
  Eigen::RowVectorXcd row = cs.dirs_lu.col(user_k).adjoint();
  row.array() *= phi.coeffs.transpose().array();
  Eigen::RowVectorXcd reflected = row * cs.ap_dirs;
  return {cs.h_direct.col(user_k) + reflected.adjoint(), slot_index};
}

double cascaded_variance(LinkGain ap_dirs, LinkGain dirs_lu, const PhaseDistribution& dist,
                         int n_dirs) {
  if (n_dirs < 1) throw ContractViolation("cascaded_variance: n_dirs must be >= 1");
  // E|phi - phi'|^2 over independent copies, summed pairwise so that a
  // single-point distribution gives exactly zero.
  double diff_moment = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    for (std::size_t j = i + 1; j < dist.size(); ++j)
      diff_moment += 2.0 * dist.probabilities[i] * dist.probabilities[j] *
                     std::norm(dist.coefficient(i) - dist.coefficient(j));
  }
  return static_cast<double>(n_dirs) * ap_dirs.gain * dirs_lu.gain * diff_moment;
}

}  // namespace dirsim
