// Copyright 2026 the geqdot authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geqdot/cli/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "geqdot/circuit/ansatz.hpp"
#include "geqdot/circuit/circuit.hpp"
#include "geqdot/circuit/noisy_cz.hpp"
#include "geqdot/circuit/topology.hpp"
#include "geqdot/cli/config.hpp"
#include "geqdot/dqd/config.hpp"
#include "geqdot/dqd/coulomb.hpp"
#include "geqdot/dqd/potential.hpp"
#include "geqdot/dqd/solve1d.hpp"
#include "geqdot/dqd/tunnel.hpp"
#include "geqdot/gate/cz.hpp"
#include "geqdot/gate/hamiltonian6.hpp"
#include "geqdot/gate/variability.hpp"
#include "geqdot/gate/wkb.hpp"
#include "geqdot/io/csv.hpp"
#include "geqdot/kp/material.hpp"
#include "geqdot/kp/profile.hpp"
#include "geqdot/kp/solve.hpp"
#include "geqdot/qtm/noise.hpp"
#include "geqdot/qtm/oscillation.hpp"
#include "geqdot/units.hpp"

namespace geqdot::cli {

using nlohmann::json;

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string lower_copy(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(c));
  return s;
}

// Every recognized (section, key) pair, stored lowercase to match the
// parser's case-insensitive keys.  Keys outside this catalog are rejected
// even when the selected experiment does not read them, so a typo in any
// section fails fast instead of being ignored.
const std::map<std::string, std::set<std::string>>& catalog() {
  static const std::map<std::string, std::set<std::string>> c = [] {
    const std::map<std::string, std::set<std::string>> mixed = {
      {"run", {"experiment", "seed", "out", "threads"}},
      {"device",
       {"material", "well_nm", "barrier_nm", "dz_nm", "band_offset_eV",
        "strained"}},
      {"bands", {"theta_deg", "k_max_invnm", "n_k", "n_states"}},
      {"mass", {"theta_list_deg", "k_window_invnm"}},
      {"dqd",
       {"mass_over_m0", "well_width_nm", "well_depth_meV", "margin_nm",
        "edge_rise_halfwidth_nm", "smooth_nm", "dx_nm", "barrier_height0_meV",
        "lever_arm_meV_per_mV", "saddle_transmission", "l_s_list_nm",
        "v_bg_list_mV", "profile_l_s_nm", "profile_v_bg_mV"}},
      {"coulomb",
       {"enabled", "eps_r", "n_cells", "lateral_size_nm",
        "lateral_depth_meV"}},
      {"wkb", {"window_lo_ueV", "window_hi_ueV"}},
      {"exchange", {"l_s_nm", "v_list_mV", "slope_v_lo_mV", "slope_v_hi_mV"}},
      {"gatetime", {"l_s_list_nm", "v_bg_mV", "target_t_ns"}},
      {"variability",
       {"sigma_ls_nm", "n_samples", "histogram_bins", "l_s0_nm", "v_bg_mV"}},
      {"gate",
       {"t_c_ueV", "u1_meV", "u2_meV", "detuning_ueV", "e_z_meV",
        "d_e_z_meV"}},
      {"noise", {"a_n_ueV", "tau_ns"}},
      {"oscillation", {"t_max_ns", "n_out", "n_traj"}},
      {"ansatz", {"rows", "cols", "stage_list", "n_traj"}},
    };
    std::map<std::string, std::set<std::string>> out;
    for (const auto& [section, keys] : mixed)
      for (const std::string& key : keys)
        out[section].insert(lower_copy(key));
    return out;
  }();
  return c;
}

// Accepts leftovers that belong to other experiments; anything not in the
// catalog is an error.
void reject_unknown_keys(const ConfigFile& cf) {
  for (const std::string& name : cf.unconsumed_keys()) {
    const auto dot = name.find('.');
    const std::string section = name.substr(0, dot);
    const std::string key = name.substr(dot + 1);
    const auto it = catalog().find(section);
    if (it == catalog().end())
      throw ConfigError("unknown section [" + section + "]");
    if (!it->second.count(key))
      throw ConfigError("unknown key '" + key + "' in section [" + section +
                        "]");
  }
}

template <typename Validated>
void validate_as_config(const Validated& v) {
  try {
    v.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

struct DeviceSettings {
  std::string material;
  double well_nm = 20.0;
  double barrier_nm = 30.0;
  double dz_nm = 0.25;
  double band_offset_eV = 0.3;
  bool strained = true;

  kp::Material well_material() const {
    return material == "si" ? kp::material_si() : kp::material_ge();
  }
  kp::Material barrier_material() const { return kp::material_sige(); }
  kp::GridProfile grid() const {
    return kp::discretize(kp::default_stack(well_material(),
                                            barrier_material(), well_nm,
                                            barrier_nm, band_offset_eV,
                                            strained, dz_nm));
  }
};

DeviceSettings resolve_device(ConfigFile& cf, json& echo) {
  DeviceSettings d;
  d.material = cf.get_string("device", "material", "ge");
  if (d.material != "ge" && d.material != "si")
    throw ConfigError("device.material must be 'ge' or 'si'");
  d.well_nm = cf.get_double("device", "well_nm", d.well_nm);
  d.barrier_nm = cf.get_double("device", "barrier_nm", d.barrier_nm);
  d.dz_nm = cf.get_double("device", "dz_nm", d.dz_nm);
  d.band_offset_eV = cf.get_double("device", "band_offset_eV",
                                   d.band_offset_eV);
  d.strained = cf.get_bool("device", "strained", d.strained);
  if (!(d.well_nm > 0.0) || !(d.barrier_nm > 0.0))
    throw ConfigError("device layer thicknesses must be positive");
  if (!(d.dz_nm > 0.0) || d.dz_nm > 0.5)
    throw ConfigError("device.dz_nm must be in (0, 0.5]");
  echo["device"]["material"] = d.material;
  echo["device"]["well_nm"] = d.well_nm;
  echo["device"]["barrier_nm"] = d.barrier_nm;
  echo["device"]["dz_nm"] = d.dz_nm;
  echo["device"]["band_offset_eV"] = d.band_offset_eV;
  echo["device"]["strained"] = d.strained;
  return d;
}

struct BandsSettings {
  double theta_deg = 0.0;
  double k_max_invnm = 0.3;
  int n_k = 31;
  int n_states = 4;
};

BandsSettings resolve_bands(ConfigFile& cf, json& echo) {
  BandsSettings b;
  b.theta_deg = cf.get_double("bands", "theta_deg", b.theta_deg);
  b.k_max_invnm = cf.get_double("bands", "k_max_invnm", b.k_max_invnm);
  b.n_k = cf.get_int("bands", "n_k", b.n_k);
  b.n_states = cf.get_int("bands", "n_states", b.n_states);
  if (!(b.k_max_invnm > 0.0)) throw ConfigError("bands.k_max_invnm must be positive");
  if (b.n_k < 8) throw ConfigError("bands.n_k must be at least 8");
  if (b.n_states < 1 || b.n_states > 12)
    throw ConfigError("bands.n_states must be in [1, 12]");
  echo["bands"]["theta_deg"] = b.theta_deg;
  echo["bands"]["k_max_invnm"] = b.k_max_invnm;
  echo["bands"]["n_k"] = b.n_k;
  echo["bands"]["n_states"] = b.n_states;
  return b;
}

struct MassSettings {
  std::vector<double> theta_list_deg = {0, 15, 30, 45, 60, 75, 90};
  double k_window_invnm = 0.15;
};

MassSettings resolve_mass(ConfigFile& cf, json& echo) {
  MassSettings m;
  m.theta_list_deg = cf.get_list("mass", "theta_list_deg", m.theta_list_deg);
  m.k_window_invnm = cf.get_double("mass", "k_window_invnm",
                                   m.k_window_invnm);
  if (m.theta_list_deg.empty())
    throw ConfigError("mass.theta_list_deg must not be empty");
  if (!(m.k_window_invnm > 0.0))
    throw ConfigError("mass.k_window_invnm must be positive");
  echo["mass"]["theta_list_deg"] = m.theta_list_deg;
  echo["mass"]["k_window_invnm"] = m.k_window_invnm;
  return m;
}

struct DqdSettings {
  dqd::DqdConfig base;
  std::vector<double> l_s_list_nm = {26, 30, 34, 38, 42, 46};
  std::vector<double> v_bg_list_mV = {0, 20, 40};
  double profile_l_s_nm = 35.0;
  double profile_v_bg_mV = 40.0;
};

DqdSettings resolve_dqd(ConfigFile& cf, const std::string& material,
                        json& echo) {
  DqdSettings s;
  s.base.mass_over_m0 = material == "si" ? 0.24 : 0.058;
  auto& b = s.base;
  b.mass_over_m0 = cf.get_double("dqd", "mass_over_m0", b.mass_over_m0);
  b.well_width_nm = cf.get_double("dqd", "well_width_nm", b.well_width_nm);
  b.well_depth_meV = cf.get_double("dqd", "well_depth_meV", b.well_depth_meV);
  b.margin_nm = cf.get_double("dqd", "margin_nm", b.margin_nm);
  b.edge_rise_halfwidth_nm =
      cf.get_double("dqd", "edge_rise_halfwidth_nm", b.edge_rise_halfwidth_nm);
  b.smooth_nm = cf.get_double("dqd", "smooth_nm", b.smooth_nm);
  b.dx_nm = cf.get_double("dqd", "dx_nm", b.dx_nm);
  b.barrier_height0_meV =
      cf.get_double("dqd", "barrier_height0_meV", b.barrier_height0_meV);
  b.lever_arm_meV_per_mV =
      cf.get_double("dqd", "lever_arm_meV_per_mV", b.lever_arm_meV_per_mV);
  b.saddle_transmission =
      cf.get_double("dqd", "saddle_transmission", b.saddle_transmission);
  s.l_s_list_nm = cf.get_list("dqd", "l_s_list_nm", s.l_s_list_nm);
  s.v_bg_list_mV = cf.get_list("dqd", "v_bg_list_mV", s.v_bg_list_mV);
  s.profile_l_s_nm = cf.get_double("dqd", "profile_l_s_nm", s.profile_l_s_nm);
  s.profile_v_bg_mV =
      cf.get_double("dqd", "profile_v_bg_mV", s.profile_v_bg_mV);
  if (s.l_s_list_nm.empty() || s.v_bg_list_mV.empty())
    throw ConfigError("dqd sweep lists must not be empty");
  validate_as_config(b);
  echo["dqd"]["mass_over_m0"] = b.mass_over_m0;
  echo["dqd"]["well_width_nm"] = b.well_width_nm;
  echo["dqd"]["well_depth_meV"] = b.well_depth_meV;
  echo["dqd"]["margin_nm"] = b.margin_nm;
  echo["dqd"]["edge_rise_halfwidth_nm"] = b.edge_rise_halfwidth_nm;
  echo["dqd"]["smooth_nm"] = b.smooth_nm;
  echo["dqd"]["dx_nm"] = b.dx_nm;
  echo["dqd"]["barrier_height0_meV"] = b.barrier_height0_meV;
  echo["dqd"]["lever_arm_meV_per_mV"] = b.lever_arm_meV_per_mV;
  echo["dqd"]["saddle_transmission"] = b.saddle_transmission;
  echo["dqd"]["l_s_list_nm"] = s.l_s_list_nm;
  echo["dqd"]["v_bg_list_mV"] = s.v_bg_list_mV;
  echo["dqd"]["profile_l_s_nm"] = s.profile_l_s_nm;
  echo["dqd"]["profile_v_bg_mV"] = s.profile_v_bg_mV;
  return s;
}

struct CoulombSettings {
  bool enabled = true;
  double eps_r = 16.0;
  int n_cells = 32;
  double lateral_size_nm = 20.0;
  double lateral_depth_meV = 80.0;
};

CoulombSettings resolve_coulomb(ConfigFile& cf, const std::string& material,
                                json& echo) {
  CoulombSettings c;
  c.eps_r = material == "si" ? 11.7 : 16.0;
  c.enabled = cf.get_bool("coulomb", "enabled", c.enabled);
  c.eps_r = cf.get_double("coulomb", "eps_r", c.eps_r);
  c.n_cells = cf.get_int("coulomb", "n_cells", c.n_cells);
  c.lateral_size_nm =
      cf.get_double("coulomb", "lateral_size_nm", c.lateral_size_nm);
  c.lateral_depth_meV =
      cf.get_double("coulomb", "lateral_depth_meV", c.lateral_depth_meV);
  if (!(c.eps_r > 0.0)) throw ConfigError("coulomb.eps_r must be positive");
  if (c.n_cells < 4 || c.n_cells > 256)
    throw ConfigError("coulomb.n_cells must be in [4, 256]");
  echo["coulomb"]["enabled"] = c.enabled;
  echo["coulomb"]["eps_r"] = c.eps_r;
  echo["coulomb"]["n_cells"] = c.n_cells;
  echo["coulomb"]["lateral_size_nm"] = c.lateral_size_nm;
  echo["coulomb"]["lateral_depth_meV"] = c.lateral_depth_meV;
  return c;
}

struct WkbWindow {
  double lo_ueV = 1.0;
  double hi_ueV = 100.0;
};

WkbWindow resolve_wkb_window(ConfigFile& cf, json& echo) {
  WkbWindow w;
  w.lo_ueV = cf.get_double("wkb", "window_lo_ueV", w.lo_ueV);
  w.hi_ueV = cf.get_double("wkb", "window_hi_ueV", w.hi_ueV);
  if (!(w.lo_ueV > 0.0) || !(w.hi_ueV > w.lo_ueV))
    throw ConfigError("wkb window must satisfy 0 < lo < hi");
  echo["wkb"]["window_lo_ueV"] = w.lo_ueV;
  echo["wkb"]["window_hi_ueV"] = w.hi_ueV;
  return w;
}

struct ExchangeSettings {
  double l_s_nm = 30.0;
  std::vector<double> v_list_mV;
  double slope_v_lo_mV = 0.0;
  double slope_v_hi_mV = 40.0;
};

ExchangeSettings resolve_exchange(ConfigFile& cf, json& echo) {
  ExchangeSettings e;
  for (int v = 0; v <= 40; v += 2) e.v_list_mV.push_back(v);
  e.l_s_nm = cf.get_double("exchange", "l_s_nm", e.l_s_nm);
  e.v_list_mV = cf.get_list("exchange", "v_list_mV", e.v_list_mV);
  e.slope_v_lo_mV = cf.get_double("exchange", "slope_v_lo_mV",
                                  e.slope_v_lo_mV);
  e.slope_v_hi_mV = cf.get_double("exchange", "slope_v_hi_mV",
                                  e.slope_v_hi_mV);
  if (e.v_list_mV.size() < 2)
    throw ConfigError("exchange.v_list_mV needs at least two voltages");
  if (!(e.slope_v_hi_mV > e.slope_v_lo_mV))
    throw ConfigError("exchange slope window must have v_hi > v_lo");
  echo["exchange"]["l_s_nm"] = e.l_s_nm;
  echo["exchange"]["v_list_mV"] = e.v_list_mV;
  echo["exchange"]["slope_v_lo_mV"] = e.slope_v_lo_mV;
  echo["exchange"]["slope_v_hi_mV"] = e.slope_v_hi_mV;
  return e;
}

struct GateTimeSettings {
  std::vector<double> l_s_list_nm;
  double v_bg_mV = 40.0;
  double target_t_ns = 10.0;
};

GateTimeSettings resolve_gatetime(ConfigFile& cf, json& echo) {
  GateTimeSettings g;
  for (int l = 26; l <= 46; l += 2) g.l_s_list_nm.push_back(l);
  g.l_s_list_nm = cf.get_list("gatetime", "l_s_list_nm", g.l_s_list_nm);
  g.v_bg_mV = cf.get_double("gatetime", "v_bg_mV", g.v_bg_mV);
  g.target_t_ns = cf.get_double("gatetime", "target_t_ns", g.target_t_ns);
  if (g.l_s_list_nm.empty())
    throw ConfigError("gatetime.l_s_list_nm must not be empty");
  if (!(g.target_t_ns > 0.0))
    throw ConfigError("gatetime.target_t_ns must be positive");
  echo["gatetime"]["l_s_list_nm"] = g.l_s_list_nm;
  echo["gatetime"]["v_bg_mV"] = g.v_bg_mV;
  echo["gatetime"]["target_t_ns"] = g.target_t_ns;
  return g;
}

struct VariabilitySettings {
  gate::VariabilitySpec spec;
  double l_s0_nm = 35.0;
  double v_bg_mV = 40.0;
};

VariabilitySettings resolve_variability(ConfigFile& cf,
                                        const std::string& material,
                                        json& echo) {
  VariabilitySettings v;
  v.l_s0_nm = material == "si" ? 12.5 : 35.0;
  v.spec.sigma_ls_nm =
      cf.get_double("variability", "sigma_ls_nm", v.spec.sigma_ls_nm);
  v.spec.n_samples = cf.get_int("variability", "n_samples",
                                v.spec.n_samples);
  v.spec.histogram_bins =
      cf.get_int("variability", "histogram_bins", v.spec.histogram_bins);
  v.l_s0_nm = cf.get_double("variability", "l_s0_nm", v.l_s0_nm);
  v.v_bg_mV = cf.get_double("variability", "v_bg_mV", v.v_bg_mV);
  if (!(v.spec.sigma_ls_nm >= 0.0))
    throw ConfigError("variability.sigma_ls_nm must be non-negative");
  if (v.spec.n_samples < 2)
    throw ConfigError("variability.n_samples must be at least 2");
  if (v.spec.histogram_bins < 1)
    throw ConfigError("variability.histogram_bins must be positive");
  echo["variability"]["sigma_ls_nm"] = v.spec.sigma_ls_nm;
  echo["variability"]["n_samples"] = v.spec.n_samples;
  echo["variability"]["histogram_bins"] = v.spec.histogram_bins;
  echo["variability"]["l_s0_nm"] = v.l_s0_nm;
  echo["variability"]["v_bg_mV"] = v.v_bg_mV;
  return v;
}

gate::GateParams resolve_gate(ConfigFile& cf, json& echo) {
  gate::GateParams p;
  p.t_c_ueV = cf.get_double("gate", "t_c_ueV", p.t_c_ueV);
  p.u1_meV = cf.get_double("gate", "u1_meV", p.u1_meV);
  p.u2_meV = cf.get_double("gate", "u2_meV", p.u2_meV);
  p.detuning_ueV = cf.get_double("gate", "detuning_ueV", p.detuning_ueV);
  p.e_z_meV = cf.get_double("gate", "e_z_meV", p.e_z_meV);
  p.d_e_z_meV = cf.get_double("gate", "d_e_z_meV", p.d_e_z_meV);
  validate_as_config(p);
  echo["gate"]["t_c_ueV"] = p.t_c_ueV;
  echo["gate"]["u1_meV"] = p.u1_meV;
  echo["gate"]["u2_meV"] = p.u2_meV;
  echo["gate"]["detuning_ueV"] = p.detuning_ueV;
  echo["gate"]["e_z_meV"] = p.e_z_meV;
  echo["gate"]["d_e_z_meV"] = p.d_e_z_meV;
  return p;
}

qtm::NoiseModel resolve_noise(ConfigFile& cf, json& echo) {
  qtm::NoiseModel n;
  n.a_n_ueV = cf.get_double("noise", "a_n_ueV", n.a_n_ueV);
  n.tau_ns = cf.get_double("noise", "tau_ns", n.tau_ns);
  validate_as_config(n);
  echo["noise"]["a_n_ueV"] = n.a_n_ueV;
  echo["noise"]["tau_ns"] = n.tau_ns;
  return n;
}

qtm::OscillationConfig resolve_oscillation(ConfigFile& cf, uint64_t seed,
                                           json& echo) {
  qtm::OscillationConfig o;
  o.t_max_ns = cf.get_double("oscillation", "t_max_ns", o.t_max_ns);
  o.n_out = cf.get_int("oscillation", "n_out", o.n_out);
  o.n_traj = cf.get_int("oscillation", "n_traj", o.n_traj);
  o.seed = seed;
  if (!(o.t_max_ns > 0.0))
    throw ConfigError("oscillation.t_max_ns must be positive");
  if (o.n_out < 2) throw ConfigError("oscillation.n_out must be at least 2");
  if (o.n_traj < 1)
    throw ConfigError("oscillation.n_traj must be at least 1");
  echo["oscillation"]["t_max_ns"] = o.t_max_ns;
  echo["oscillation"]["n_out"] = o.n_out;
  echo["oscillation"]["n_traj"] = o.n_traj;
  return o;
}

struct AnsatzSettings {
  int rows = 2;
  int cols = 3;
  std::vector<double> stage_list = {1, 2, 3, 4, 5, 6};
  int n_traj = 1000;
};

AnsatzSettings resolve_ansatz(ConfigFile& cf, json& echo) {
  AnsatzSettings a;
  a.rows = cf.get_int("ansatz", "rows", a.rows);
  a.cols = cf.get_int("ansatz", "cols", a.cols);
  a.stage_list = cf.get_list("ansatz", "stage_list", a.stage_list);
  a.n_traj = cf.get_int("ansatz", "n_traj", a.n_traj);
  if (a.rows < 1 || a.cols < 1 || a.rows * a.cols > 20)
    throw ConfigError("ansatz array must have between 1 and 20 sites");
  if (a.stage_list.empty())
    throw ConfigError("ansatz.stage_list must not be empty");
  for (double s : a.stage_list)
    if (s < 1.0 || s != std::floor(s))
      throw ConfigError("ansatz.stage_list entries must be positive integers");
  if (a.n_traj < 2) throw ConfigError("ansatz.n_traj must be at least 2");
  echo["ansatz"]["rows"] = a.rows;
  echo["ansatz"]["cols"] = a.cols;
  echo["ansatz"]["stage_list"] = a.stage_list;
  echo["ansatz"]["n_traj"] = a.n_traj;
  return a;
}

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const char* character_name(kp::SubbandCharacter c) {
  return c == kp::SubbandCharacter::kHeavyHole ? "HH" : "LH";
}

// Linear interpolation of the separation where ln T crosses ln target.
double interpolate_crossing(const std::vector<double>& l_nm,
                            const std::vector<double>& t_ns, double target) {
  for (size_t i = 0; i + 1 < l_nm.size(); ++i) {
    const double a = t_ns[i];
    const double b = t_ns[i + 1];
    if (std::isnan(a) || std::isnan(b) || a <= 0.0 || b <= 0.0) continue;
    if ((a - target) * (b - target) > 0.0) continue;
    const double f = (std::log(target) - std::log(a)) /
                     (std::log(b) - std::log(a));
    return l_nm[i] + f * (l_nm[i + 1] - l_nm[i]);
  }
  return kNan;
}

struct RunContext {
  std::string out_dir;
  uint64_t seed = 0;
  json echo;
  json results;
};

std::string path_in(const RunContext& ctx, const std::string& name) {
  return (std::filesystem::path(ctx.out_dir) / name).string();
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

void run_bands(ConfigFile& cf, RunContext& ctx) {
  const DeviceSettings dev = resolve_device(cf, ctx.echo);
  const BandsSettings b = resolve_bands(cf, ctx.echo);
  reject_unknown_keys(cf);

  const kp::GridProfile grid = dev.grid();
  const auto disp = kp::dispersion_sweep(grid, b.theta_deg * units::kPi / 180.0,
                                         b.k_max_invnm, b.n_k, b.n_states);

  std::string header = "k_invnm";
  for (int s = 0; s < b.n_states; ++s)
    header += ",E_eV_band" + std::to_string(s);
  io::CsvWriter csv(path_in(ctx, "bands.csv"), header);
  for (const auto& pt : disp) {
    std::vector<double> row;
    row.push_back(pt.k_invnm);
    row.insert(row.end(), pt.energies_eV.begin(), pt.energies_eV.end());
    csv.row(row);
  }

  const auto& zone_center = disp.front();
  ctx.results["e_top_eV"] = zone_center.energies_eV.front();
  ctx.results["top_character"] = character_name(zone_center.characters.front());
  if (zone_center.energies_eV.size() >= 3) {
    // Zone-center splitting between the topmost doublet and the next one.
    ctx.results["k0_splitting_meV"] =
        (zone_center.energies_eV[0] - zone_center.energies_eV[2]) * 1e3;
  }
}

void run_mass_vs_angle(ConfigFile& cf, RunContext& ctx) {
  const DeviceSettings dev = resolve_device(cf, ctx.echo);
  const MassSettings m = resolve_mass(cf, ctx.echo);
  reject_unknown_keys(cf);

  const kp::GridProfile grid = dev.grid();
  const auto masses = kp::mass_vs_angle(grid, m.theta_list_deg,
                                        m.k_window_invnm);

  io::CsvWriter csv(path_in(ctx, "mass.csv"), "theta_deg,mstar_over_m0");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  double sum = 0.0;
  for (const auto& am : masses) {
    csv.row({am.theta_deg, am.mass_over_m0});
    lo = std::min(lo, am.mass_over_m0);
    hi = std::max(hi, am.mass_over_m0);
    sum += am.mass_over_m0;
  }

  const kp::MassFit fit0 = kp::extract_effective_mass(
      grid, m.theta_list_deg.front() * units::kPi / 180.0, m.k_window_invnm);
  const double mean = sum / static_cast<double>(masses.size());
  ctx.results["mass_mean"] = mean;
  ctx.results["mass_min"] = lo;
  ctx.results["mass_max"] = hi;
  ctx.results["anisotropy"] = (hi - lo) / mean;
  ctx.results["fit_rel_residual"] = fit0.rel_residual;
  ctx.results["fit_window_ok"] = fit0.parabolic_window_ok;
  if (!fit0.warning.empty()) ctx.results["fit_warning"] = fit0.warning;
}

void write_sweep_csv(const RunContext& ctx,
                     const std::vector<dqd::SweepPoint>& sweep) {
  io::CsvWriter csv(path_in(ctx, "sweep.csv"), "L_s_nm,V_bg_mV,t_c_ueV");
  for (const auto& pt : sweep)
    csv.row({pt.l_s_nm, pt.v_bg_mV, pt.valid ? pt.t_c_ueV : kNan});
}

int count_collapsed(const std::vector<dqd::SweepPoint>& sweep) {
  int n = 0;
  for (const auto& pt : sweep) n += pt.valid ? 0 : 1;
  return n;
}

void run_dqd_sweep(ConfigFile& cf, RunContext& ctx) {
  const DeviceSettings dev = resolve_device(cf, ctx.echo);
  const DqdSettings s = resolve_dqd(cf, dev.material, ctx.echo);
  const CoulombSettings cb = resolve_coulomb(cf, dev.material, ctx.echo);
  reject_unknown_keys(cf);

  const auto sweep = dqd::tc_sweep(s.base, s.l_s_list_nm, s.v_bg_list_mV);
  write_sweep_csv(ctx, sweep);

  dqd::DqdConfig at = s.base;
  at.barrier_length_nm = s.profile_l_s_nm;
  at.v_bg_mV = s.profile_v_bg_mV;
  const dqd::PotentialProfile profile = dqd::build_dqd_potential(at);
  const dqd::BoundStatePair pair = dqd::solve_doublet(profile,
                                                      at.mass_over_m0);
  io::CsvWriter pcsv(path_in(ctx, "profile.csv"), "x_nm,V_meV,psiB,psiAB");
  for (size_t i = 0; i < profile.x_nm.size(); ++i)
    pcsv.row({profile.x_nm[i], profile.v_meV[i], pair.bonding.psi[i],
              pair.antibonding.psi[i]});

  ctx.results["n_points"] = static_cast<int>(sweep.size());
  ctx.results["n_collapsed"] = count_collapsed(sweep);
  ctx.results["t_c_profile_ueV"] = at.saddle_transmission *
                                   dqd::tunnel_splitting_ueV(pair);

  if (cb.enabled) {
    const dqd::Density1d lateral = dqd::plunger_ground_density(
        cb.lateral_size_nm, cb.lateral_depth_meV, s.base.mass_over_m0,
        s.base.dx_nm, s.base.margin_nm, s.base.smooth_nm);
    const dqd::Density1d vertical = dqd::vertical_hh_density(
        dev.well_material(), dev.barrier_material(), dev.well_nm,
        dev.barrier_nm, dev.dz_nm, dev.strained);
    ctx.results["charging_energy_meV"] = dqd::charging_energy_meV(
        lateral, lateral, vertical, cb.eps_r, cb.n_cells);
    ctx.results["eps_r"] = cb.eps_r;
  }
}

void run_wkb_fit(ConfigFile& cf, RunContext& ctx) {
  const DeviceSettings dev = resolve_device(cf, ctx.echo);
  const DqdSettings s = resolve_dqd(cf, dev.material, ctx.echo);
  const WkbWindow w = resolve_wkb_window(cf, ctx.echo);
  reject_unknown_keys(cf);

  const auto sweep = dqd::tc_sweep(s.base, s.l_s_list_nm, s.v_bg_list_mV);
  write_sweep_csv(ctx, sweep);

  const gate::WkbFit fit = gate::fit_wkb(sweep, s.base.mass_over_m0,
                                         w.lo_ueV, w.hi_ueV);
  const gate::WkbModel preset =
      dev.material == "si" ? gate::wkb_si() : gate::wkb_ge();

  ctx.results["n_collapsed"] = count_collapsed(sweep);
  ctx.results["fit"]["t0_meV"] = fit.model.t0_meV;
  ctx.results["fit"]["e_b0_meV"] = fit.model.e_b0_meV;
  ctx.results["fit"]["beta_meV_per_mV"] = fit.model.beta_meV_per_mV;
  ctx.results["fit"]["r2_min"] = fit.r2_min;
  ctx.results["fit"]["max_log_dev"] = fit.max_log_dev;
  ctx.results["fit"]["n_used"] = fit.n_used;
  ctx.results["preset"]["t0_meV"] = preset.t0_meV;
  ctx.results["preset"]["e_b0_meV"] = preset.e_b0_meV;
  ctx.results["preset"]["beta_meV_per_mV"] = preset.beta_meV_per_mV;
  ctx.results["beta_rel_dev"] =
      fit.model.beta_meV_per_mV / preset.beta_meV_per_mV - 1.0;
  ctx.results["e_b0_rel_dev"] = fit.model.e_b0_meV / preset.e_b0_meV - 1.0;
}

void run_exchange_vs_vbg(ConfigFile& cf, RunContext& ctx) {
  const DeviceSettings dev = resolve_device(cf, ctx.echo);
  const DqdSettings s = resolve_dqd(cf, dev.material, ctx.echo);
  const ExchangeSettings ex = resolve_exchange(cf, ctx.echo);
  gate::GateParams p = resolve_gate(cf, ctx.echo);
  reject_unknown_keys(cf);

  dqd::DqdConfig cfg = s.base;
  cfg.barrier_length_nm = ex.l_s_nm;
  const auto sweep = dqd::tc_sweep(cfg, {ex.l_s_nm}, ex.v_list_mV);

  io::CsvWriter csv(path_in(ctx, "exchange.csv"), "V_bg_mV,J_ueV");
  std::vector<double> v_valid;
  std::vector<double> j_valid;
  for (const auto& pt : sweep) {
    double j = kNan;
    if (pt.valid) {
      p.t_c_ueV = pt.t_c_ueV;
      j = gate::exchange_ueV(p);
      v_valid.push_back(pt.v_bg_mV);
      j_valid.push_back(j);
    }
    csv.row({pt.v_bg_mV, j});
  }

  ctx.results["n_collapsed"] = count_collapsed(sweep);
  double slope_numeric = kNan;
  double j_lo = kNan, j_hi = kNan;
  // First and last valid voltages inside the slope window.
  int ilo = -1, ihi = -1;
  for (size_t i = 0; i < v_valid.size(); ++i) {
    if (v_valid[i] < ex.slope_v_lo_mV - 1e-12 ||
        v_valid[i] > ex.slope_v_hi_mV + 1e-12)
      continue;
    if (ilo < 0) ilo = static_cast<int>(i);
    ihi = static_cast<int>(i);
  }
  if (ilo >= 0 && ihi > ilo && j_valid[ilo] > 0.0 && j_valid[ihi] > 0.0) {
    j_lo = j_valid[ilo];
    j_hi = j_valid[ihi];
    slope_numeric = (v_valid[ihi] - v_valid[ilo]) /
                    (std::log10(j_hi) - std::log10(j_lo));
  }
  const gate::WkbModel preset =
      dev.material == "si" ? gate::wkb_si() : gate::wkb_ge();
  const double slope_model = gate::exchange_slope_mV_per_decade(
      preset, ex.l_s_nm, ex.slope_v_lo_mV, ex.slope_v_hi_mV);

  ctx.results["j_lo_ueV"] = j_lo;
  ctx.results["j_hi_ueV"] = j_hi;
  ctx.results["slope_numeric_mV_per_decade"] = slope_numeric;
  ctx.results["slope_model_mV_per_decade"] = slope_model;
  if (!std::isnan(slope_numeric))
    ctx.results["slope_rel_dev"] = slope_numeric / slope_model - 1.0;
}

void run_gate_time(ConfigFile& cf, RunContext& ctx) {
  const DeviceSettings dev = resolve_device(cf, ctx.echo);
  const DqdSettings s = resolve_dqd(cf, dev.material, ctx.echo);
  const GateTimeSettings gt = resolve_gatetime(cf, ctx.echo);
  gate::GateParams p = resolve_gate(cf, ctx.echo);
  reject_unknown_keys(cf);

  dqd::DqdConfig cfg = s.base;
  cfg.v_bg_mV = gt.v_bg_mV;
  const auto sweep = dqd::tc_sweep(cfg, gt.l_s_list_nm, {gt.v_bg_mV});

  io::CsvWriter csv(path_in(ctx, "gatetime.csv"), "L_s_nm,T_cz_ns");
  std::vector<double> l_nm;
  std::vector<double> t_ns;
  for (const auto& pt : sweep) {
    double t = kNan;
    if (pt.valid && pt.t_c_ueV > 0.0) {
      p.t_c_ueV = pt.t_c_ueV;
      t = gate::cz_time_ns(gate::exchange_ueV(p));
    }
    csv.row({pt.l_s_nm, t});
    l_nm.push_back(pt.l_s_nm);
    t_ns.push_back(t);
  }

  const gate::WkbModel preset =
      dev.material == "si" ? gate::wkb_si() : gate::wkb_ge();
  const double u_meV = 0.5 * (p.u1_meV + p.u2_meV);
  ctx.results["n_collapsed"] = count_collapsed(sweep);
  ctx.results["target_t_ns"] = gt.target_t_ns;
  ctx.results["l_target_numeric_nm"] =
      interpolate_crossing(l_nm, t_ns, gt.target_t_ns);
  ctx.results["l_target_model_nm"] = gate::separation_for_gate_time(
      preset, gt.v_bg_mV, u_meV, gt.target_t_ns);
}

void run_variability(ConfigFile& cf, RunContext& ctx) {
  const DeviceSettings dev = resolve_device(cf, ctx.echo);
  VariabilitySettings v = resolve_variability(cf, dev.material, ctx.echo);
  const gate::GateParams p = resolve_gate(cf, ctx.echo);
  reject_unknown_keys(cf);
  v.spec.seed = ctx.seed;

  const gate::WkbModel preset =
      dev.material == "si" ? gate::wkb_si() : gate::wkb_ge();
  const gate::VariabilityResult res =
      gate::variability_mc(preset, p, v.l_s0_nm, v.v_bg_mV, v.spec);

  io::CsvWriter csv(path_in(ctx, "histogram.csv"), "T_norm,count");
  for (size_t i = 0; i < res.bin_center.size(); ++i)
    csv.row({res.bin_center[i], static_cast<double>(res.bin_count[i])});

  ctx.results["sensitivity"] = res.sensitivity;
  ctx.results["lntc_spread"] = res.lntc_spread;
  ctx.results["lnt_spread"] = res.lnt_spread;
  ctx.results["t_norm_spread"] = res.t_norm_spread;
  ctx.results["t_median_ns"] = res.t_median_ns;
  ctx.results["n_collapsed"] = res.n_collapsed;
  // Closed-form cross-material comparison at the same disorder level.
  const double sens_ge =
      gate::lntc_sensitivity(gate::wkb_ge(), v.v_bg_mV, v.spec.sigma_ls_nm);
  const double sens_si =
      gate::lntc_sensitivity(gate::wkb_si(), v.v_bg_mV, v.spec.sigma_ls_nm);
  ctx.results["sensitivity_ge"] = sens_ge;
  ctx.results["sensitivity_si"] = sens_si;
  ctx.results["sensitivity_si_over_ge"] = sens_si / sens_ge;
}

void run_oscillation(ConfigFile& cf, RunContext& ctx) {
  const gate::GateParams p = resolve_gate(cf, ctx.echo);
  const qtm::NoiseModel noise = resolve_noise(cf, ctx.echo);
  const qtm::OscillationConfig cfg = resolve_oscillation(cf, ctx.seed,
                                                         ctx.echo);
  reject_unknown_keys(cf);

  const qtm::OscillationResult res = qtm::exchange_oscillation(p, noise, cfg);

  io::CsvWriter csv(path_in(ctx, "oscillation.csv"),
                    "t_ns,p_up,envelope_fit");
  for (size_t i = 0; i < res.t_ns.size(); ++i)
    csv.row({res.t_ns[i], res.p_up[i], res.envelope_fit[i]});
  io::CsvWriter ecsv(path_in(ctx, "envelope.csv"), "t_ns,envelope");
  for (size_t i = 0; i < res.t_ns.size(); ++i)
    ecsv.row({res.t_ns[i], res.envelope[i]});

  ctx.results["j_ueV"] = gate::exchange_ueV(p);
  ctx.results["sigma_j_ueV"] = res.sigma_j_ueV;
  ctx.results["tau_qs_ns"] = res.tau_qs_ns;
  ctx.results["tau_fit_ns"] = res.tau_fit_ns;
  ctx.results["gamma_fit"] = res.gamma_fit;
  ctx.results["decayed"] = res.decayed;
  ctx.results["n_traj"] = cfg.n_traj;
}

void run_ansatz_fidelity(ConfigFile& cf, RunContext& ctx) {
  const gate::GateParams p = resolve_gate(cf, ctx.echo);
  const qtm::NoiseModel noise = resolve_noise(cf, ctx.echo);
  const AnsatzSettings a = resolve_ansatz(cf, ctx.echo);
  reject_unknown_keys(cf);

  const circuit::QdArrayTopology topo =
      circuit::QdArrayTopology::grid(a.rows, a.cols);
  const circuit::CzGateModel g = circuit::make_cz_gate(p, noise);

  std::vector<int> stages;
  for (double s : a.stage_list) stages.push_back(static_cast<int>(s));
  const auto points = circuit::ansatz_fidelity_vs_depth(topo, g, stages,
                                                        a.n_traj, ctx.seed);

  io::CsvWriter csv(path_in(ctx, "fidelity.csv"), "N,F,stderr");
  json jpoints = json::array();
  for (const auto& pt : points) {
    csv.row({static_cast<double>(pt.n_stages), pt.fidelity, pt.std_err});
    jpoints.push_back({{"n_stages", pt.n_stages},
                       {"fidelity", pt.fidelity},
                       {"std_err", pt.std_err},
                       {"n_traj", pt.n_traj}});
    const circuit::Circuit c = circuit::build_vqe_ansatz(
        topo, pt.n_stages,
        circuit::ansatz_angles(topo, pt.n_stages, ctx.seed));
    std::ofstream txt(
        path_in(ctx, "ansatz_" + std::to_string(pt.n_stages) + ".txt"));
    if (!txt) throw std::runtime_error("cannot write circuit file");
    txt << circuit::to_text(c);
  }

  json results;
  results["n_qubits"] = topo.n_qubits();
  results["n_edges"] = static_cast<int>(topo.edges.size());
  results["j_exact_ueV"] = g.j_exact_ueV;
  results["t_cz_ns"] = g.t_cz_ns;
  results["points"] = jpoints;
  std::ofstream rj(path_in(ctx, "results.json"));
  if (!rj) throw std::runtime_error("cannot write results.json");
  rj << results.dump(2) << '\n';

  ctx.results = results;
}

using ExperimentFn = void (*)(ConfigFile&, RunContext&);

const std::vector<std::pair<std::string, ExperimentFn>>& experiment_table() {
  static const std::vector<std::pair<std::string, ExperimentFn>> t = {
      {"bands", run_bands},
      {"mass-vs-angle", run_mass_vs_angle},
      {"dqd-sweep", run_dqd_sweep},
      {"wkb-fit", run_wkb_fit},
      {"exchange-vs-vbg", run_exchange_vs_vbg},
      {"gate-time", run_gate_time},
      {"variability", run_variability},
      {"oscillation", run_oscillation},
      {"ansatz-fidelity", run_ansatz_fidelity},
  };
  return t;
}

void run_impl(const RunOptions& opts, std::ostream& err) {
  ConfigFile cf = opts.config_path.empty()
                      ? ConfigFile::parse_string("")
                      : ConfigFile::parse_file(opts.config_path);

  std::string experiment = opts.experiment;
  const std::string cfg_experiment =
      cf.get_string("run", "experiment", "");
  if (experiment.empty()) experiment = cfg_experiment;
  if (experiment.empty())
    throw ConfigError(
        "no experiment selected; use --experiment or run.experiment");

  ExperimentFn fn = nullptr;
  for (const auto& [name, f] : experiment_table())
    if (name == experiment) fn = f;
  if (!fn) {
    std::string names;
    for (const auto& [name, f] : experiment_table()) {
      (void)f;
      if (!names.empty()) names += ", ";
      names += name;
    }
    throw ConfigError("unknown experiment '" + experiment + "' (one of " +
                      names + ")");
  }

  RunContext ctx;
  ctx.seed = cf.get_u64("run", "seed", 12345);
  if (opts.seed_overridden) ctx.seed = opts.seed;
  ctx.out_dir = cf.get_string("run", "out", "out");
  if (opts.out_overridden || ctx.out_dir.empty()) ctx.out_dir = opts.out_dir;
  int threads = cf.get_int("run", "threads", 1);
  if (opts.threads_overridden) threads = opts.threads;
  if (threads < 1) throw ConfigError("run.threads must be positive");

  std::filesystem::create_directories(ctx.out_dir);

  fn(cf, ctx);

  json manifest;
  manifest["tool_version"] = kToolVersion;
  manifest["experiment"] = experiment;
  manifest["seed"] = ctx.seed;
  manifest["threads"] = threads;
  manifest["timestamp_utc"] = timestamp_utc();
  manifest["config"] = ctx.echo;
  manifest["results"] = ctx.results;
  std::ofstream mf(path_in(ctx, "manifest.json"));
  if (!mf) throw std::runtime_error("cannot write manifest.json");
  mf << manifest.dump(2) << '\n';

  err << experiment << ": wrote " << ctx.out_dir << "/manifest.json\n";
}

// ---------------------------------------------------------------------------
// Preset catalog
// ---------------------------------------------------------------------------

// Resolves every section against an empty config, which yields the built-in
// defaults for the given material.
json resolved_defaults(const std::string& material) {
  ConfigFile cf = ConfigFile::parse_string("[device]\nmaterial = " +
                                           material + "\n");
  json echo;
  const DeviceSettings dev = resolve_device(cf, echo);
  resolve_bands(cf, echo);
  resolve_mass(cf, echo);
  resolve_dqd(cf, dev.material, echo);
  resolve_coulomb(cf, dev.material, echo);
  resolve_wkb_window(cf, echo);
  resolve_exchange(cf, echo);
  resolve_gatetime(cf, echo);
  resolve_variability(cf, dev.material, echo);
  resolve_gate(cf, echo);
  resolve_noise(cf, echo);
  resolve_oscillation(cf, 12345, echo);
  resolve_ansatz(cf, echo);
  return echo;
}

std::string ini_value(const json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!out.empty()) out += ",";
      out += io::format_number(e.get<double>());
    }
    return out;
  }
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return io::format_number(v.get<double>());
}

}  // namespace

std::vector<std::string> experiment_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : experiment_table()) {
    (void)fn;
    names.push_back(name);
  }
  return names;
}

int run_experiment(const RunOptions& opts, std::ostream& err) {
  try {
    run_impl(opts, err);
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

std::string preset_config_text() {
  const json echo = resolved_defaults("ge");
  static const char* kOrder[] = {"device", "bands", "mass", "dqd", "coulomb",
                                 "wkb", "exchange", "gatetime", "variability",
                                 "gate", "noise", "oscillation", "ansatz"};
  std::ostringstream out;
  out << "# Built-in defaults for the 'ge' material preset.  Any key can be\n"
         "# overridden in a config file; units are part of the key names.\n";
  bool first = true;
  for (const char* section : kOrder) {
    if (!first) out << '\n';
    first = false;
    out << '[' << section << "]\n";
    for (const auto& [key, value] : echo.at(section).items())
      out << key << " = " << ini_value(value) << '\n';
  }
  return out.str();
}

void print_presets(std::ostream& out) {
  out << "geqdot " << kToolVersion << " built-in presets\n\n";
  out << "Materials (Luttinger gamma1/gamma2/gamma3, relative permittivity):\n";
  for (const kp::Material& m :
       {kp::material_ge(), kp::material_si(), kp::material_sige()}) {
    out << "  " << m.name << ": " << m.gamma1 << " / " << m.gamma2 << " / "
        << m.gamma3 << ", eps_r " << m.dielectric_constant << '\n';
  }
  out << "  gate oxide eps_r " << kp::al2o3_dielectric_constant() << '\n';
  const kp::StrainState strain;
  out << "Compressive biaxial strain in the well: eps_xx = eps_yy = "
      << strain.eps_xx << ", eps_zz = " << strain.eps_zz
      << " (a_v = " << strain.a_v_eV << " eV, b_v = " << strain.b_v_eV
      << " eV)\n";
  using Preset = std::pair<const char*, gate::WkbModel>;
  for (const auto& [tag, w] :
       {Preset{"ge", gate::wkb_ge()}, Preset{"si", gate::wkb_si()}}) {
    out << "Barrier model '" << tag << "': t0 = " << w.t0_meV
        << " meV, E_b0 = " << w.e_b0_meV << " meV, beta = "
        << w.beta_meV_per_mV << " meV/mV, m*/m0 = " << w.mass_over_m0 << '\n';
  }
  out << "\nExperiments:";
  for (const std::string& name : experiment_names()) out << ' ' << name;
  out << "\n\nDefault configuration (parseable):\n\n";
  out << preset_config_text();
}

}  // namespace geqdot::cli
