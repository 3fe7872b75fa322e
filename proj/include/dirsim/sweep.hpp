#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "dirsim/scenario.hpp"
#include "dirsim/simcore.hpp"

namespace dirsim {

enum class SweepAxis { power_dbm_per_lu, ap_dirs_distance_m };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view text);

struct SweepSpec {
  SweepAxis axis = SweepAxis::power_dbm_per_lu;
  std::vector<double> values;  // strictly increasing
  std::vector<Benchmark> benchmarks;

  void validate() const;
  bool operator==(const SweepSpec&) const = default;
};

/// Scenario at one grid point. Power sets the per-LU power (total =
/// p + 10 log10 K); distance moves only the DIRS to (-d, 0, 5).
ScenarioConfig apply_axis(const ScenarioConfig& cfg, SweepAxis axis, double value);

struct SweepRow {
  SweepAxis axis = SweepAxis::power_dbm_per_lu;
  double axis_value = 0.0;
  std::string benchmark;
  double mean_rate = 0.0;
  double ci95 = 0.0;
  int n_trials = 0;
  std::uint64_t seed = 0;
  bool operator==(const SweepRow&) const = default;
};

struct SweepFailure {
  double axis_value = 0.0;
  std::string benchmark;
  std::string message;
};

struct SweepTraceRow {
  double axis_value = 0.0;
  std::string benchmark;
  TraceRow row;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ordered by (axis_value, benchmark list order)
  std::vector<SweepFailure> failures;
  std::vector<SweepTraceRow> trace;
};

struct SweepOptions {
  RunOptions run;
  // Called after every finished grid cell, in output order.
  std::function<void(const SweepRow&)> on_row;
};

/// Every grid override is checked before any trial runs. A failing
/// (point, benchmark) cell is recorded in `failures` and the sweep goes on.
SweepResult run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec,
                      const SweepOptions& options = {});

inline constexpr std::string_view kCsvHeader = "axis,axis_value,benchmark,mean_rate,ci95,n_trials,seed";

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

std::string to_csv(const SweepResult& res);
std::vector<SweepRow> parse_csv(std::string_view text);
void emit_csv(const SweepResult& res, const std::filesystem::path& path);

std::string trace_to_csv(const SweepResult& res);
void emit_trace_csv(const SweepResult& res, const std::filesystem::path& path);

struct Experiment {
  ScenarioConfig scenario;
  SweepSpec sweep;
};

/// Built-in experiments: "fig4" (rate vs per-LU power, -10..4 dBm) and
/// "fig6" (rate vs AP-DIRS distance, 2..20 m at -2 dBm).
Experiment preset(std::string_view name);

}  // namespace dirsim
