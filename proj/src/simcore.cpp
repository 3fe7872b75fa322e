#include "dirsim/simcore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "dirsim/dirs.hpp"
#include "dirsim/errors.hpp"
#include "dirsim/estimation.hpp"
#include "dirsim/stats.hpp"

namespace dirsim {

std::string_view to_string(BenchmarkTag tag) {
  switch (tag) {
    case BenchmarkTag::no_jamming_zf: return "no_jamming_zf";
    case BenchmarkTag::fpj_zf: return "fpj_zf";
    case BenchmarkTag::fpj_ajp: return "fpj_ajp";
    case BenchmarkTag::aj_zf: return "aj_zf";
  }
  return "?";
}

std::string Benchmark::label() const {
  std::string out(to_string(tag));
  if (phase_case) out += (*phase_case == PhaseCase::case1) ? "_c1" : "_c2";
  if (delta_source == DeltaSource::oracle) out += "_oracle";
  if (dirs_mode) {
    out += '@';
    out += to_string(*dirs_mode);
  }
  return out;
}

Benchmark Benchmark::parse(std::string_view label) {
  Benchmark b;
  std::string_view rest = label;
  if (const auto at = rest.find('@'); at != std::string_view::npos) {
    b.dirs_mode = parse_dirs_mode(rest.substr(at + 1));
    rest = rest.substr(0, at);
  }

  constexpr BenchmarkTag tags[] = {BenchmarkTag::no_jamming_zf, BenchmarkTag::fpj_zf,
                                   BenchmarkTag::fpj_ajp, BenchmarkTag::aj_zf};
  bool matched = false;
  for (BenchmarkTag t : tags) {
    const std::string_view name = to_string(t);
    if (rest.starts_with(name) && (rest.size() == name.size() || rest[name.size()] == '_')) {
      b.tag = t;
      rest.remove_prefix(name.size());
      matched = true;
      break;
    }
  }
  if (!matched) throw ConfigError("unknown benchmark '" + std::string(label) + "'");

  while (!rest.empty()) {
    rest.remove_prefix(1);  // '_'
    const auto next = rest.find('_');
    const std::string_view token = rest.substr(0, next);
    if (token == "c1" && !b.phase_case) {
      b.phase_case = PhaseCase::case1;
    } else if (token == "c2" && !b.phase_case) {
      b.phase_case = PhaseCase::case2;
    } else if (token == "oracle" && b.delta_source == DeltaSource::estimated) {
      b.delta_source = DeltaSource::oracle;
    } else {
      throw ConfigError("unknown benchmark modifier '" + std::string(token) + "' in '" +
                        std::string(label) + "'");
    }
    rest = (next == std::string_view::npos) ? std::string_view{} : rest.substr(next);
  }

  if (b.delta_source == DeltaSource::oracle && b.tag != BenchmarkTag::fpj_ajp)
    throw ConfigError("'_oracle' only applies to fpj_ajp: '" + std::string(label) + "'");
  const bool no_dirs = b.tag == BenchmarkTag::no_jamming_zf || b.tag == BenchmarkTag::aj_zf;
  if (no_dirs && (b.dirs_mode || b.phase_case))
    throw ConfigError("benchmark '" + std::string(label) + "' has no DIRS to override");
  return b;
}

ScenarioConfig apply_benchmark(const ScenarioConfig& cfg, const Benchmark& bench) {
  ScenarioConfig eff = cfg;
  switch (bench.tag) {
    case BenchmarkTag::no_jamming_zf:
      eff.dirs_mode = DirsMode::off;
      break;
    case BenchmarkTag::aj_zf:
      if (!cfg.aj_power_dbm) throw ConfigError("aj_zf requires aj_power_dbm");
      eff.dirs_mode = DirsMode::off;
      break;
    case BenchmarkTag::fpj_zf:
    case BenchmarkTag::fpj_ajp:
      if (bench.dirs_mode) eff.dirs_mode = *bench.dirs_mode;
      break;
  }
  if (bench.phase_case) {
    if (eff.phase_dist.size() != 2)
      throw ConfigError("phase case overrides need a two-point phase_dist");
    eff.phase_dist.probabilities =
        (*bench.phase_case == PhaseCase::case1) ? std::vector{0.25, 0.75} : std::vector{0.5, 0.5};
  }
  return eff;
}

double sjnr(const Eigen::VectorXcd& h, const Precoder& pre, int k, double noise_var,
            double aj_term) {
  if (h.size() != pre.w.rows() || k < 0 || k >= pre.w.cols())
    throw ContractViolation("sjnr: dimension mismatch");
  const Eigen::RowVectorXcd g = h.adjoint() * pre.w;
  const double signal = std::norm(g[k]);
  const double leak = g.squaredNorm() - signal;
  return signal / (std::max(0.0, leak) + aj_term + noise_var);
}

double aj_interference(std::complex<double> g, double p_j) {
  if (!(p_j >= 0.0)) throw ContractViolation("aj_interference: p_j must be >= 0");
  return std::norm(g) * p_j;
}

DeltaEstimates analytic_deltas(const ScenarioConfig& cfg, const ChannelSet& cs) {
  DeltaEstimates d = DeltaEstimates::zeros(cs.n_users());
  for (int k = 0; k < cs.n_users(); ++k) {
    const auto idx = static_cast<std::size_t>(k);
    switch (cfg.dirs_mode) {
      case DirsMode::persistent:
      case DirsMode::single_change:
        d.delta_sq[idx] =
            cascaded_variance(cs.ap_dirs_gain, cs.dirs_lu_gain[idx], cfg.phase_dist, cs.n_dirs());
        break;
      case DirsMode::temporal:
        d.delta_sq[idx] = cs.n_dirs() * cs.ap_dirs_gain.gain * cs.dirs_lu_gain[idx].gain *
                          cfg.phase_dist.second_moment();
        break;
      case DirsMode::off:
        break;
    }
  }
  return d;
}

namespace {

// SJNR of every LU for channels h (column k = LU k).
Eigen::VectorXd sjnr_all(const Eigen::MatrixXcd& h, const Precoder& pre, double noise_var,
                         const Eigen::VectorXd& aj_terms) {
  const Eigen::MatrixXcd g = h.adjoint() * pre.w;
  Eigen::VectorXd out(g.rows());
  for (Eigen::Index k = 0; k < g.rows(); ++k) {
    const double signal = std::norm(g(k, k));
    const double leak = g.row(k).squaredNorm() - signal;
    out[k] = signal / (std::max(0.0, leak) + aj_terms[k] + noise_var);
  }
  return out;
}

TrialResult run_trial_impl(const ScenarioConfig& cfg, const Benchmark& bench, std::uint64_t trial,
                           const TrialOptions& options) {
  const ScenarioConfig eff = apply_benchmark(cfg, bench);
  eff.validate();
  const int k_users = eff.n_users;
  const double p0 = eff.total_power_watts();
  const double noise = eff.noise_watts();

  auto s_users = derive_stream(eff.master_seed, trial, "users");
  const auto users = place_users(eff, s_users);
  const ChannelSet cs = draw_channel_set(eff, users, trial);
  auto s_dirs = derive_stream(eff.master_seed, trial, "dirs");
  const DirsSchedule sched = build_schedule(eff, s_dirs);

  // PT phase
  const Eigen::MatrixXcd h_pt = assemble_composite_all(cs, sched.pt_state);
  ChannelEstimate est;
  if (eff.csi_mode == CsiMode::perfect) {
    est.h_pt = h_pt;
  } else {
    auto s_pilot = derive_stream(eff.master_seed, trial, "pilot");
    const auto pilots = dft_pilots(k_users, eff.frame.t_p_slots, p0);
    est = ls_estimate(observe_pilots(h_pt, pilots, noise, s_pilot));
  }

  Eigen::VectorXd aj_terms = Eigen::VectorXd::Zero(k_users);
  if (bench.tag == BenchmarkTag::aj_zf) {
    const double p_j = dbm_to_watts(*eff.aj_power_dbm);
    for (int k = 0; k < k_users; ++k) aj_terms[k] = aj_interference(cs.aj_lu[k], p_j);
  }

  TrialResult result;
  Precoder pre;
  std::optional<DeltaEstimates> delta;
  const bool ajp = bench.tag == BenchmarkTag::fpj_ajp;
  const bool adaptive = ajp && bench.delta_source == DeltaSource::estimated;
  if (!ajp) {
    pre = zf_precoder(est, p0);
  } else {
    delta = adaptive ? DeltaEstimates::zeros(k_users) : analytic_deltas(eff, cs);
    pre = ajp_precoder(est, *delta, noise, p0);
  }

  // DT phase, one constant channel per DIRS block.
  const int q = static_cast<int>(sched.dt_states.size());
  const auto blocks = dt_blocks(eff.frame, q);
  const int max_rounds = adaptive ? std::min(eff.frame.m_feedbacks, q) : 0;
  auto s_feedback = derive_stream(eff.master_seed, trial, "feedback");

  Eigen::VectorXd rate_slots = Eigen::VectorXd::Zero(k_users);
  for (int b = 0; b < q; ++b) {
    const ReflectState& phi = options.force_dt_equal_pt ? sched.pt_state : sched.dt_states[b];
    const Eigen::MatrixXcd h = assemble_composite_all(cs, phi);
    const Eigen::VectorXd s_dt = sjnr_all(h, pre, noise, aj_terms);
    const int len = blocks[b].length();
    for (int k = 0; k < k_users; ++k) {
      rate_slots[k] += len * std::log2(1.0 + s_dt[k]);
      if (options.trace)
        result.trace.push_back({trial, "sjnr", b, blocks[b].first, blocks[b].last, k, s_dt[k]});
    }

    if (b >= max_rounds) continue;
    // LUs compare the SJNR promised by the PT channel with what they see.
    const Eigen::VectorXd s_pt = sjnr_all(est.h_pt, pre, noise, aj_terms);
    bool jammed = false;
    for (int k = 0; k < k_users && !jammed; ++k)
      jammed = detect_jamming(s_pt[k], s_dt[k], eff.detect_threshold_db);
    if (!jammed) continue;

    const int round = result.feedback_rounds + 1;
    const PowerFeedback fb = measure_received_power(h, pre, noise, s_feedback, len, round);
    delta = estimate_delta(fb, est, pre, noise, p0,
                           result.feedback_rounds > 0 ? delta : std::nullopt);
    result.feedback_rounds = round;
    pre = ajp_precoder(est, *delta, noise, p0);
    if (options.trace) {
      for (int k = 0; k < k_users; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        result.trace.push_back(
            {trial, "feedback_power", round, blocks[b].first, blocks[b].last, k, fb.p[idx]});
        result.trace.push_back(
            {trial, "delta", round, blocks[b].first, blocks[b].last, k, delta->delta_sq[idx]});
      }
    }
  }

  const double t_d = eff.frame.t_d_slots();
  result.per_lu_rate.resize(static_cast<std::size_t>(k_users));
  for (int k = 0; k < k_users; ++k) result.per_lu_rate[static_cast<std::size_t>(k)] = rate_slots[k] / t_d;
  result.final_delta = std::move(delta);
  return result;
}

}  // namespace

TrialResult run_trial(const ScenarioConfig& cfg, const Benchmark& bench, std::uint64_t trial,
                      const TrialOptions& options) {
  try {
    return run_trial_impl(cfg, bench, trial, options);
  } catch (const TrialError&) {
    throw;
  } catch (const std::exception& e) {
    throw TrialError(trial, e.what());
  }
}

RateSummary ergodic_rates(const ScenarioConfig& cfg, const Benchmark& bench,
                          const RunOptions& options) {
  cfg.validate();
  if (cfg.n_trials < 2) throw ConfigError("ergodic_rates: n_trials must be >= 2");
  const auto n = static_cast<std::size_t>(cfg.n_trials);

  std::vector<double> per_trial(n, 0.0);
  std::vector<std::vector<TraceRow>> traces(options.trace ? n : 0);
  std::vector<std::exception_ptr> errors(n);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < n; t = next++) {
      try {
        TrialResult r = run_trial(cfg, bench, t, {options.trace, false});
        double sum = 0.0;
        for (double v : r.per_lu_rate) sum += v;
        per_trial[t] = sum / static_cast<double>(r.per_lu_rate.size());
        if (options.trace) traces[t] = std::move(r.trace);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };

  int threads = options.threads > 0 ? options.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, static_cast<int>(n));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const MeanCi mc = mean_ci95(per_trial);
  RateSummary summary{mc.mean, mc.ci95, cfg.n_trials, std::move(per_trial), {}};
  for (auto& tr : traces) {
    summary.trace.insert(summary.trace.end(), std::make_move_iterator(tr.begin()),
                         std::make_move_iterator(tr.end()));
  }
  return summary;
}

}  // namespace dirsim
