#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dirsim/phase_distribution.hpp"
#include "dirsim/random_stream.hpp"
#include "dirsim/scenario.hpp"

namespace dirsim {

/// Diagonal of the DIRS reflection matrix for one configuration.
struct ReflectState {
  static constexpr int kPilotBlock = -1;

  Eigen::VectorXcd coeffs;
  // kPilotBlock for the PT configuration, otherwise the DT block index.
  int block = kPilotBlock;

  static ReflectState zero(int n_dirs, int block = kPilotBlock);
  bool all_zero() const;
};

/// Reflection states over one coherence interval.
struct DirsSchedule {
  ReflectState pt_state;
  std::vector<ReflectState> dt_states;
  // slot -> -1 (pt_state) or index into dt_states, for all T_C slots.
  std::vector<int> slot_map;

  int t_c_slots() const { return static_cast<int>(slot_map.size()); }
};

/// Half-open slot range [first, last) of one DT block.
struct SlotRange {
  int first = 0;
  int last = 0;
  int length() const { return last - first; }
};

/// T_D data slots split into q contiguous equal blocks; the remainder goes to
/// the last block. Slot indices are absolute (the first DT slot is T_P).
std::vector<SlotRange> dt_blocks(const FrameSchedule& frame, int q);

/// Number of DIRS changes actually used by the schedule for a mode.
int effective_changes(const ScenarioConfig& cfg);

ReflectState sample_reflect_state(const PhaseDistribution& dist, int n_dirs,
                                  RandomStream& stream);

/// One PT state then the DT states, always drawn in that order from `stream`
/// so that modes sharing a stream see the same DT realizations.
DirsSchedule build_schedule(const ScenarioConfig& cfg, RandomStream& stream);

const ReflectState& state_for_slot(const DirsSchedule& sched, int slot);

}  // namespace dirsim
