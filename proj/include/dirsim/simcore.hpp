#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dirsim/channel.hpp"
#include "dirsim/precoding.hpp"
#include "dirsim/scenario.hpp"

namespace dirsim {

enum class BenchmarkTag { no_jamming_zf, fpj_zf, fpj_ajp, aj_zf };
enum class PhaseCase { case1, case2 };
enum class DeltaSource { estimated, oracle };

/// One curve of an experiment.
///
/// Labels have the form `<tag>[_c1|_c2][_oracle][@<dirs_mode>]`, e.g.
/// `fpj_ajp_c2` or `fpj_zf@temporal`. `_c1`/`_c2` replace the configured
/// phase probabilities by (0.25, 0.75) / (0.5, 0.5); `_oracle` feeds the AJP
/// the analytic delta instead of running the feedback rounds.
struct Benchmark {
  BenchmarkTag tag = BenchmarkTag::no_jamming_zf;
  std::optional<DirsMode> dirs_mode;
  std::optional<PhaseCase> phase_case;
  DeltaSource delta_source = DeltaSource::estimated;

  std::string label() const;
  static Benchmark parse(std::string_view label);
  bool operator==(const Benchmark&) const = default;
};

std::string_view to_string(BenchmarkTag tag);

/// Scenario as seen by a benchmark: DIRS forced off for no_jamming_zf and
/// aj_zf, mode and phase-probability overrides applied for fpj_*.
ScenarioConfig apply_benchmark(const ScenarioConfig& cfg, const Benchmark& bench);

/// |h^H w_k|^2 / (sum_{u != k} |h^H w_u|^2 + aj_term + noise_var)
double sjnr(const Eigen::VectorXcd& h, const Precoder& pre, int k, double noise_var,
            double aj_term);

/// |g|^2 p_j: constant single-antenna jammer sending unit-power noise.
double aj_interference(std::complex<double> g, double p_j);

/// delta_k^2 the AJP would use with perfect statistics: the cascaded
/// difference variance for persistent/single_change, c E|phi|^2 when the PT
/// reflection is off (temporal), zero when the DIRS is off.
DeltaEstimates analytic_deltas(const ScenarioConfig& cfg, const ChannelSet& cs);

struct TraceRow {
  std::uint64_t trial = 0;
  std::string kind;  // "sjnr", "feedback_power", "delta"
  int index = 0;     // DT block for sjnr, feedback round otherwise
  int first_slot = 0;
  int last_slot = 0;  // exclusive
  int lu = 0;
  double value = 0.0;
};

struct TrialOptions {
  bool trace = false;
  // Test hook: every DT slot reuses the PT reflection (no aging).
  bool force_dt_equal_pt = false;
};

struct TrialResult {
  std::vector<double> per_lu_rate;  // bit/s/Hz, mean over DT slots
  std::vector<TraceRow> trace;
  int feedback_rounds = 0;
  std::optional<DeltaEstimates> final_delta;
};

/// Users, fading and the DIRS schedule come from the (seed, trial) substreams,
/// so all benchmarks of a grid point see the same draws.
TrialResult run_trial(const ScenarioConfig& cfg, const Benchmark& bench, std::uint64_t trial,
                      const TrialOptions& options = {});

struct RunOptions {
  int threads = 0;  // 0: hardware concurrency
  bool trace = false;
};

struct RateSummary {
  double mean_rate = 0.0;
  double ci95 = 0.0;
  int n_trials = 0;
  std::vector<double> per_trial;  // mean over LUs, indexed by trial
  std::vector<TraceRow> trace;
};

/// Mean per-LU rate over cfg.n_trials trials (trial value = mean over LUs)
/// with a Student-t 95% interval from the trial-level spread.
RateSummary ergodic_rates(const ScenarioConfig& cfg, const Benchmark& bench,
                          const RunOptions& options = {});

}  // namespace dirsim
