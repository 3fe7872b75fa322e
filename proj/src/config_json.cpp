#include "dirsim/config_json.hpp"

#include <fstream>
#include <initializer_list>
#include <iterator>
#include <json.hpp>

#include "dirsim/errors.hpp"

namespace dirsim {

using nlohmann::json;

namespace {

json position_json(const Position3D& p) { return {{"x", p.x}, {"y", p.y}, {"z", p.z}}; }

json scenario_json(const ScenarioConfig& c) {
  json j;
  j["n_ap_antennas"] = c.n_ap_antennas;
  j["n_dirs_elements"] = c.n_dirs_elements;
  j["n_users"] = c.n_users;
  j["ap_pos"] = position_json(c.ap_pos);
  j["dirs_pos"] = position_json(c.dirs_pos);
  j["aj_pos"] = position_json(c.aj_pos);
  j["lu_region_center"] = position_json(c.lu_region_center);
  j["lu_region_radius"] = c.lu_region_radius;
  j["total_power_dbm"] = c.total_power_dbm;
  j["noise_power_dbm"] = c.noise_power_dbm;
  j["aj_power_dbm"] = c.aj_power_dbm ? json(*c.aj_power_dbm) : json(nullptr);
  j["frame"] = {{"t_p_slots", c.frame.t_p_slots},
                {"c_ratio", c.frame.c_ratio},
                {"q_changes", c.frame.q_changes},
                {"m_feedbacks", c.frame.m_feedbacks}};
  j["phase_dist"] = {{"phases_rad", c.phase_dist.phases_rad},
                     {"amplitudes", c.phase_dist.amplitudes},
                     {"probabilities", c.phase_dist.probabilities}};
  j["dirs_mode"] = std::string(to_string(c.dirs_mode));
  j["path_loss"] = {{"ref_loss_db", c.path_loss.ref_loss_db},
                    {"exp_direct", c.path_loss.exp_direct},
                    {"exp_ap_dirs", c.path_loss.exp_ap_dirs},
                    {"exp_dirs_lu", c.path_loss.exp_dirs_lu},
                    {"exp_aj_lu", c.path_loss.exp_aj_lu}};
  j["n_trials"] = c.n_trials;
  j["master_seed"] = c.master_seed;
  j["csi_mode"] = std::string(to_string(c.csi_mode));
  j["detect_threshold_db"] = c.detect_threshold_db;
  return j;
}

json sweep_json(const SweepSpec& s) {
  json bench = json::array();
  for (const Benchmark& b : s.benchmarks) bench.push_back(b.label());
  return {{"axis", std::string(to_string(s.axis))}, {"values", s.values}, {"benchmarks", bench}};
}

void require_object(const json& j, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (std::string_view a : allowed) known = known || it.key() == a;
    if (!known) throw ConfigError("unknown key '" + where + "." + it.key() + "'");
  }
}

template <class T>
void read(const json& j, const char* key, const std::string& where, T& out) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->template get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("key '" + where + "." + key + "': " + e.what());
  }
}

void read_position(const json& j, const char* key, const std::string& where, Position3D& p) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  const std::string sub = where + "." + key;
  require_object(*it, sub, {"x", "y", "z"});
  read(*it, "x", sub, p.x);
  read(*it, "y", sub, p.y);
  read(*it, "z", sub, p.z);
}

void overlay_scenario(const json& j, ScenarioConfig& c) {
  const std::string w = "config";
  read(j, "n_ap_antennas", w, c.n_ap_antennas);
  read(j, "n_dirs_elements", w, c.n_dirs_elements);
  read(j, "n_users", w, c.n_users);
  read_position(j, "ap_pos", w, c.ap_pos);
  read_position(j, "dirs_pos", w, c.dirs_pos);
  read_position(j, "aj_pos", w, c.aj_pos);
  read_position(j, "lu_region_center", w, c.lu_region_center);
  read(j, "lu_region_radius", w, c.lu_region_radius);
  read(j, "total_power_dbm", w, c.total_power_dbm);
  read(j, "noise_power_dbm", w, c.noise_power_dbm);
  if (const auto it = j.find("aj_power_dbm"); it != j.end()) {
    if (it->is_null()) {
      c.aj_power_dbm.reset();
    } else {
      double v = 0.0;
      read(j, "aj_power_dbm", w, v);
      c.aj_power_dbm = v;
    }
  }
  if (const auto it = j.find("frame"); it != j.end()) {
    const std::string sub = w + ".frame";
    require_object(*it, sub, {"t_p_slots", "c_ratio", "q_changes", "m_feedbacks"});
    read(*it, "t_p_slots", sub, c.frame.t_p_slots);
    read(*it, "c_ratio", sub, c.frame.c_ratio);
    read(*it, "q_changes", sub, c.frame.q_changes);
    read(*it, "m_feedbacks", sub, c.frame.m_feedbacks);
  }
  if (const auto it = j.find("phase_dist"); it != j.end()) {
    const std::string sub = w + ".phase_dist";
    require_object(*it, sub, {"phases_rad", "amplitudes", "probabilities"});
    read(*it, "phases_rad", sub, c.phase_dist.phases_rad);
    read(*it, "amplitudes", sub, c.phase_dist.amplitudes);
    read(*it, "probabilities", sub, c.phase_dist.probabilities);
  }
  if (j.contains("dirs_mode")) {
    std::string s;
    read(j, "dirs_mode", w, s);
    c.dirs_mode = parse_dirs_mode(s);
  }
  if (const auto it = j.find("path_loss"); it != j.end()) {
    const std::string sub = w + ".path_loss";
    require_object(*it, sub,
                   {"ref_loss_db", "exp_direct", "exp_ap_dirs", "exp_dirs_lu", "exp_aj_lu"});
    read(*it, "ref_loss_db", sub, c.path_loss.ref_loss_db);
    read(*it, "exp_direct", sub, c.path_loss.exp_direct);
    read(*it, "exp_ap_dirs", sub, c.path_loss.exp_ap_dirs);
    read(*it, "exp_dirs_lu", sub, c.path_loss.exp_dirs_lu);
    read(*it, "exp_aj_lu", sub, c.path_loss.exp_aj_lu);
  }
  read(j, "n_trials", w, c.n_trials);
  read(j, "master_seed", w, c.master_seed);
  if (j.contains("csi_mode")) {
    std::string s;
    read(j, "csi_mode", w, s);
    c.csi_mode = parse_csi_mode(s);
  }
  read(j, "detect_threshold_db", w, c.detect_threshold_db);
}

void overlay_sweep(const json& j, SweepSpec& s) {
  const std::string w = "config.sweep";
  require_object(j, w, {"axis", "values", "benchmarks"});
  if (j.contains("axis")) {
    std::string a;
    read(j, "axis", w, a);
    s.axis = parse_sweep_axis(a);
  }
  read(j, "values", w, s.values);
  if (j.contains("benchmarks")) {
    std::vector<std::string> labels;
    read(j, "benchmarks", w, labels);
    s.benchmarks.clear();
    for (const auto& l : labels) s.benchmarks.push_back(Benchmark::parse(l));
  }
}

}  // namespace

std::string scenario_to_json(const ScenarioConfig& cfg, int indent) {
  return scenario_json(cfg).dump(indent);
}

std::string experiment_to_json(const Experiment& exp, int indent) {
  json j = scenario_json(exp.scenario);
  j["sweep"] = sweep_json(exp.sweep);
  return j.dump(indent);
}

Experiment overlay_experiment(const Experiment& base, std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_object(j, "config",
                 {"n_ap_antennas", "n_dirs_elements", "n_users", "ap_pos", "dirs_pos", "aj_pos",
                  "lu_region_center", "lu_region_radius", "total_power_dbm", "noise_power_dbm",
                  "aj_power_dbm", "frame", "phase_dist", "dirs_mode", "path_loss", "n_trials",
                  "master_seed", "csi_mode", "detect_threshold_db", "sweep"});
  Experiment out = base;
  overlay_scenario(j, out.scenario);
  if (const auto it = j.find("sweep"); it != j.end()) overlay_sweep(*it, out.sweep);
  out.scenario.validate();
  out.sweep.validate();
  return out;
}

Experiment load_experiment(const Experiment& base, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return overlay_experiment(base, text);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace dirsim
