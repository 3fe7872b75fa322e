#include "dirsim/scenario.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dirsim/errors.hpp"

namespace dirsim {

double distance(const Position3D& a, const Position3D& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

void PathLossParams::validate() const {
  if (!(ref_loss_db > 0.0) || !std::isfinite(ref_loss_db))
    throw ConfigError("path_loss.ref_loss_db must be positive and finite");
  for (double e : {exp_direct, exp_ap_dirs, exp_dirs_lu, exp_aj_lu}) {
    if (!(e >= 2.0) || !std::isfinite(e))
      throw ConfigError("path_loss exponents must be finite and >= 2.0, got " +
                        std::to_string(e));
  }
}

void FrameSchedule::validate(bool jamming) const {
  if (t_p_slots < 1) throw ConfigError("frame.t_p_slots must be >= 1");
  if (c_ratio < 1) throw ConfigError("frame.c_ratio must be >= 1");
  if (jamming && q_changes < 1)
    throw ConfigError("frame.q_changes must be >= 1 when the DIRS is jamming");
  if (q_changes > t_d_slots())
    throw ConfigError("frame.q_changes (" + std::to_string(q_changes) +
                      ") exceeds the number of data slots (" + std::to_string(t_d_slots()) + ")");
  if (m_feedbacks < 1 || (q_changes >= 1 && m_feedbacks > q_changes))
    throw ConfigError("frame.m_feedbacks must satisfy 1 <= m <= q_changes");
}

std::string_view to_string(DirsMode mode) {
  switch (mode) {
    case DirsMode::persistent: return "persistent";
    case DirsMode::temporal: return "temporal";
    case DirsMode::single_change: return "single_change";
    case DirsMode::off: return "off";
  }
  return "?";
}

DirsMode parse_dirs_mode(std::string_view text) {
  if (text == "persistent") return DirsMode::persistent;
  if (text == "temporal") return DirsMode::temporal;
  if (text == "single_change") return DirsMode::single_change;
  if (text == "off") return DirsMode::off;
  throw ConfigError("unknown dirs_mode '" + std::string(text) + "'");
}

std::string_view to_string(CsiMode mode) {
  return mode == CsiMode::perfect ? "perfect" : "ls";
}

CsiMode parse_csi_mode(std::string_view text) {
  if (text == "perfect") return CsiMode::perfect;
  if (text == "ls") return CsiMode::least_squares;
  throw ConfigError("unknown csi_mode '" + std::string(text) + "'");
}

double ScenarioConfig::per_user_power_dbm() const {
  return total_power_dbm - 10.0 * std::log10(static_cast<double>(n_users));
}

void ScenarioConfig::validate() const {
  if (n_users < 1) throw ConfigError("n_users must be >= 1");
  if (n_ap_antennas < n_users)
    throw ConfigError("n_ap_antennas (" + std::to_string(n_ap_antennas) +
                      ") must be >= n_users (" + std::to_string(n_users) + ") for zero forcing");
  if (n_dirs_elements < 1) throw ConfigError("n_dirs_elements must be >= 1");
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  if (!(lu_region_radius > 0.0) || !std::isfinite(lu_region_radius))
    throw ConfigError("lu_region_radius must be positive");
  if (!std::isfinite(total_power_dbm) || !std::isfinite(noise_power_dbm))
    throw ConfigError("power fields must be finite");
  if (aj_power_dbm && !std::isfinite(*aj_power_dbm))
    throw ConfigError("aj_power_dbm must be finite when set");
  if (!std::isfinite(detect_threshold_db))
    throw ConfigError("detect_threshold_db must be finite");
  for (const Position3D* p : {&ap_pos, &dirs_pos, &aj_pos, &lu_region_center}) {
    if (!std::isfinite(p->x) || !std::isfinite(p->y) || !std::isfinite(p->z))
      throw ConfigError("positions must be finite");
  }
  frame.validate(is_jamming(dirs_mode));
  phase_dist.validate();
  path_loss.validate();
}

std::vector<Position3D> place_users(const ScenarioConfig& cfg, RandomStream& stream) {
  std::vector<Position3D> users;
  users.reserve(static_cast<std::size_t>(cfg.n_users));
  for (int k = 0; k < cfg.n_users; ++k) {
    // sqrt of a uniform radius fraction gives uniform area density.
    const double r = cfg.lu_region_radius * std::sqrt(stream.uniform());
    const double angle = 2.0 * std::numbers::pi * stream.uniform();
    users.push_back({cfg.lu_region_center.x + r * std::cos(angle),
                     cfg.lu_region_center.y + r * std::sin(angle), cfg.lu_region_center.z});
  }
  return users;
}

}  // namespace dirsim
