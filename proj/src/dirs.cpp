#include "dirsim/dirs.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "dirsim/errors.hpp"

namespace dirsim {

void PhaseDistribution::validate() const {
  const std::size_t n = phases_rad.size();
  if (n == 0) throw ConfigError("phase_dist must contain at least one phase");
  if (amplitudes.size() != n || probabilities.size() != n)
    throw ConfigError("phase_dist arrays must share one length");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(phases_rad[i])) throw ConfigError("phase_dist phases must be finite");
    if (!(amplitudes[i] > 0.0 && amplitudes[i] <= 1.0))
      throw ConfigError("phase_dist amplitudes must lie in (0, 1]");
    if (!(probabilities[i] >= 0.0)) throw ConfigError("phase_dist probabilities must be >= 0");
  }
  const double total = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12)
    throw ConfigError("phase_dist probabilities must sum to 1 (got " + std::to_string(total) + ")");
}

std::complex<double> PhaseDistribution::coefficient(std::size_t index) const {
  return std::polar(amplitudes.at(index), phases_rad.at(index));
}

std::complex<double> PhaseDistribution::mean() const {
  std::complex<double> m{};
  for (std::size_t i = 0; i < size(); ++i) m += probabilities[i] * coefficient(i);
  return m;
}

double PhaseDistribution::second_moment() const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s += probabilities[i] * amplitudes[i] * amplitudes[i];
  return s;
}

std::size_t PhaseDistribution::index_for(double u) const {
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 1 < size(); ++i) {
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  return size() - 1;
}

std::complex<double> PhaseDistribution::sample(RandomStream& stream) const {
  return coefficient(index_for(stream.uniform()));
}

PhaseDistribution PhaseDistribution::one_bit(double p_first) {
  return {{std::numbers::pi / 9.0, 7.0 * std::numbers::pi / 6.0},
          {0.8, 1.0},
          {p_first, 1.0 - p_first}};
}

PhaseDistribution PhaseDistribution::single_point(double phase_rad, double amplitude) {
  return {{phase_rad}, {amplitude}, {1.0}};
}

ReflectState ReflectState::zero(int n_dirs, int block) {
  return {Eigen::VectorXcd::Zero(n_dirs), block};
}

bool ReflectState::all_zero() const { return (coeffs.array() == std::complex<double>{}).all(); }

std::vector<SlotRange> dt_blocks(const FrameSchedule& frame, int q) {
  const int t_d = frame.t_d_slots();
  if (q < 1 || q > t_d)
    throw ContractViolation("dt_blocks: need 1 <= q <= T_D, got q = " + std::to_string(q));
  const int base = t_d / q;
  std::vector<SlotRange> blocks;
  blocks.reserve(static_cast<std::size_t>(q));
  int first = frame.t_p_slots;
  for (int b = 0; b < q; ++b) {
    const int len = (b + 1 == q) ? (frame.t_c_slots() - first) : base;
    blocks.push_back({first, first + len});
    first += len;
  }
  return blocks;
}

int effective_changes(const ScenarioConfig& cfg) {
  switch (cfg.dirs_mode) {
    case DirsMode::single_change: return 1;
    case DirsMode::off: return cfg.frame.q_changes >= 1 ? cfg.frame.q_changes : 1;
    default: return cfg.frame.q_changes;
  }
}

ReflectState sample_reflect_state(const PhaseDistribution& dist, int n_dirs,
                                  RandomStream& stream) {
  if (n_dirs < 1) throw ContractViolation("sample_reflect_state: n_dirs must be >= 1");
  std::vector<std::complex<double>> table(dist.size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = dist.coefficient(i);
  ReflectState state{Eigen::VectorXcd(n_dirs), ReflectState::kPilotBlock};
  for (int i = 0; i < n_dirs; ++i) state.coeffs[i] = table[dist.index_for(stream.uniform())];
  return state;
}

DirsSchedule build_schedule(const ScenarioConfig& cfg, RandomStream& stream) {
  const bool jamming = is_jamming(cfg.dirs_mode);
  if (jamming && cfg.frame.q_changes < 1)
    throw ConfigError("build_schedule: q_changes must be >= 1 in mode " +
                      std::string(to_string(cfg.dirs_mode)));
  cfg.frame.validate(jamming);
  const int n = cfg.n_dirs_elements;
  const int q = effective_changes(cfg);

  DirsSchedule sched;
  sched.pt_state = sample_reflect_state(cfg.phase_dist, n, stream);
  if (cfg.dirs_mode == DirsMode::temporal || cfg.dirs_mode == DirsMode::off)
    sched.pt_state = ReflectState::zero(n);

  sched.dt_states.reserve(static_cast<std::size_t>(q));
  for (int b = 0; b < q; ++b) {
    ReflectState s = sample_reflect_state(cfg.phase_dist, n, stream);
    if (!jamming) s = ReflectState::zero(n);
    s.block = b;
    sched.dt_states.push_back(std::move(s));
  }

  sched.slot_map.assign(static_cast<std::size_t>(cfg.frame.t_c_slots()), ReflectState::kPilotBlock);
  const auto blocks = dt_blocks(cfg.frame, q);
  for (int b = 0; b < q; ++b) {
    for (int slot = blocks[b].first; slot < blocks[b].last; ++slot) sched.slot_map[slot] = b;
  }
  return sched;
}

const ReflectState& state_for_slot(const DirsSchedule& sched, int slot) {
  if (slot < 0 || slot >= sched.t_c_slots())
    throw ContractViolation("state_for_slot: slot " + std::to_string(slot) +
                            " outside [0, " + std::to_string(sched.t_c_slots()) + ")");
  const int idx = sched.slot_map[static_cast<std::size_t>(slot)];
  return idx == ReflectState::kPilotBlock ? sched.pt_state : sched.dt_states[idx];
}

}  // namespace dirsim
