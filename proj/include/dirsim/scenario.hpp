#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dirsim/phase_distribution.hpp"
#include "dirsim/random_stream.hpp"

namespace dirsim {

struct Position3D {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Position3D&) const = default;
};

double distance(const Position3D& a, const Position3D& b);

// 10^((dBm - 30)/10) watts.
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Log-distance law: loss_dB(d) = ref_loss_db + 10 * exponent * log10(d / 1 m).
struct PathLossParams {
  double ref_loss_db = 30.0;
  double exp_direct = 3.5;
  double exp_ap_dirs = 2.2;
  double exp_dirs_lu = 4.0;
  double exp_aj_lu = 3.5;

  void validate() const;
  bool operator==(const PathLossParams&) const = default;
};

/// One coherence interval: T_P pilot slots followed by T_D = C * T_P data
/// slots. The DIRS changes its reflection Q times during data transmission
/// and LUs may feed back received power m times.
struct FrameSchedule {
  int t_p_slots = 12;
  int c_ratio = 9;
  int q_changes = 9;
  int m_feedbacks = 2;

  int t_d_slots() const { return c_ratio * t_p_slots; }
  int t_c_slots() const { return t_p_slots + t_d_slots(); }

  void validate(bool jamming) const;
  bool operator==(const FrameSchedule&) const = default;
};

enum class DirsMode { persistent, temporal, single_change, off };
enum class CsiMode { perfect, least_squares };

std::string_view to_string(DirsMode mode);
DirsMode parse_dirs_mode(std::string_view text);
std::string_view to_string(CsiMode mode);
CsiMode parse_csi_mode(std::string_view text);

inline bool is_jamming(DirsMode mode) { return mode != DirsMode::off; }

/// Full experiment description. Defaults reproduce the 16-antenna, 12-user,
/// 2048-element case-study geometry at -2 dBm per user.
struct ScenarioConfig {
  int n_ap_antennas = 16;
  int n_dirs_elements = 2048;
  int n_users = 12;

  Position3D ap_pos{0.0, 0.0, 5.0};
  Position3D dirs_pos{-2.0, 0.0, 5.0};
  Position3D aj_pos{-2.0, 0.0, 5.0};
  Position3D lu_region_center{0.0, 180.0, 0.0};
  double lu_region_radius = 20.0;

  double total_power_dbm = -2.0 + 10.79181246047625;  // -2 dBm per LU, K = 12
  double noise_power_dbm = -115.0;
  std::optional<double> aj_power_dbm = -4.0;

  FrameSchedule frame{};
  PhaseDistribution phase_dist = PhaseDistribution::case1();
  DirsMode dirs_mode = DirsMode::persistent;
  PathLossParams path_loss{};

  int n_trials = 1000;
  std::uint64_t master_seed = 20240601;

  // Beyond the core fields: PT acquisition model and feedback trigger.
  CsiMode csi_mode = CsiMode::perfect;
  double detect_threshold_db = 3.0;

  double total_power_watts() const { return dbm_to_watts(total_power_dbm); }
  double noise_watts() const { return dbm_to_watts(noise_power_dbm); }
  double per_user_power_dbm() const;

  void validate() const;
  bool operator==(const ScenarioConfig&) const = default;
};

/// K user positions drawn uniformly on the LU disk (z = centre z).
std::vector<Position3D> place_users(const ScenarioConfig& cfg, RandomStream& stream);

}  // namespace dirsim
