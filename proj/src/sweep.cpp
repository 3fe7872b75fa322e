#include "dirsim/sweep.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "dirsim/errors.hpp"

namespace dirsim {

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::power_dbm_per_lu: return "power_dbm_per_lu";
    case SweepAxis::ap_dirs_distance_m: return "ap_dirs_distance_m";
  }
  return "?";
}

SweepAxis parse_sweep_axis(std::string_view text) {
  if (text == "power_dbm_per_lu") return SweepAxis::power_dbm_per_lu;
  if (text == "ap_dirs_distance_m") return SweepAxis::ap_dirs_distance_m;
  throw ConfigError("unknown sweep axis '" + std::string(text) + "'");
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep: values must be non-empty");
  if (benchmarks.empty()) throw ConfigError("sweep: benchmarks must be non-empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw ConfigError("sweep: values must be finite");
    if (i > 0 && !(values[i] > values[i - 1]))
      throw ConfigError("sweep: values must be strictly increasing (at " +
                        format_double(values[i]) + ")");
  }
}

ScenarioConfig apply_axis(const ScenarioConfig& cfg, SweepAxis axis, double value) {
  ScenarioConfig out = cfg;
  switch (axis) {
    case SweepAxis::power_dbm_per_lu:
      out.total_power_dbm = value + 10.0 * std::log10(static_cast<double>(cfg.n_users));
      break;
    case SweepAxis::ap_dirs_distance_m:
      out.dirs_pos = {-value, 0.0, 5.0};
      if (!(distance(out.ap_pos, out.dirs_pos) >= kMinLinkDistance))
        throw ConfigError("grid point " + std::string(to_string(axis)) + "=" +
                          format_double(value) + ": AP-DIRS distance below " +
                          format_double(kMinLinkDistance) + " m");
      break;
  }
  try {
    out.validate();
  } catch (const ConfigError& e) {
    throw ConfigError("grid point " + std::string(to_string(axis)) + "=" + format_double(value) +
                      ": " + e.what());
  }
  return out;
}

SweepResult run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec,
                      const SweepOptions& options) {
  spec.validate();
  std::vector<ScenarioConfig> points;
  points.reserve(spec.values.size());
  for (double v : spec.values) points.push_back(apply_axis(cfg, spec.axis, v));

  SweepResult res;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double v = spec.values[i];
    for (const Benchmark& b : spec.benchmarks) {
      const std::string label = b.label();
      try {
        RateSummary s = ergodic_rates(points[i], b, options.run);
        SweepRow row{spec.axis, v, label, s.mean_rate, s.ci95, s.n_trials, points[i].master_seed};
        for (TraceRow& t : s.trace) res.trace.push_back({v, label, std::move(t)});
        res.rows.push_back(row);
        if (options.on_row) options.on_row(row);
      } catch (const std::exception& e) {
        res.failures.push_back({v, label, e.what()});
      }
    }
  }
  return res;
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view s, std::size_t line_no) {
  T v{};
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
    throw ConfigError("csv line " + std::to_string(line_no) + ": bad number '" + std::string(s) +
                      "'");
  return v;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::string to_csv(const SweepResult& res) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const SweepRow& r : res.rows) {
    out += to_string(r.axis);
    out += ',' + format_double(r.axis_value);
    out += ',' + r.benchmark;
    out += ',' + format_double(r.mean_rate);
    out += ',' + format_double(r.ci95);
    out += ',' + std::to_string(r.n_trials);
    out += ',' + std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> parse_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = (nl == std::string_view::npos) ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != kCsvHeader) throw ConfigError("csv line 1: unexpected header");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 7)
      throw ConfigError("csv line " + std::to_string(line_no) + ": expected 7 fields");
    SweepRow r;
    r.axis = parse_sweep_axis(f[0]);
    r.axis_value = parse_number<double>(f[1], line_no);
    r.benchmark = std::string(f[2]);
    r.mean_rate = parse_number<double>(f[3], line_no);
    r.ci95 = parse_number<double>(f[4], line_no);
    r.n_trials = parse_number<int>(f[5], line_no);
    r.seed = parse_number<std::uint64_t>(f[6], line_no);
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw ConfigError("csv: missing header");
  return rows;
}

void emit_csv(const SweepResult& res, const std::filesystem::path& path) {
  write_file(path, to_csv(res));
}

std::string trace_to_csv(const SweepResult& res) {
  std::string out = "axis_value,benchmark,trial,kind,index,first_slot,last_slot,lu,value\n";
  for (const SweepTraceRow& t : res.trace) {
    out += format_double(t.axis_value) + ',' + t.benchmark + ',' + std::to_string(t.row.trial) +
           ',' + t.row.kind + ',' + std::to_string(t.row.index) + ',' +
           std::to_string(t.row.first_slot) + ',' + std::to_string(t.row.last_slot) + ',' +
           std::to_string(t.row.lu) + ',' + format_double(t.row.value) + '\n';
  }
  return out;
}

void emit_trace_csv(const SweepResult& res, const std::filesystem::path& path) {
  write_file(path, trace_to_csv(res));
}

Experiment preset(std::string_view name) {
  Experiment e;
  for (const char* label : {"no_jamming_zf", "fpj_zf_c1", "fpj_zf_c2", "fpj_ajp_c1", "fpj_ajp_c2",
                            "aj_zf"})
    e.sweep.benchmarks.push_back(Benchmark::parse(label));

  if (name == "fig4") {
    e.sweep.axis = SweepAxis::power_dbm_per_lu;
    for (int p = -10; p <= 4; p += 2) e.sweep.values.push_back(p);
  } else if (name == "fig6") {
    e.sweep.axis = SweepAxis::ap_dirs_distance_m;
    for (int d = 2; d <= 20; d += 2) e.sweep.values.push_back(d);
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig4 or fig6)");
  }
  return e;
}

}  // namespace dirsim
