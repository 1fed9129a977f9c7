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

#pragma once

#include <vector>

#include "geqdot/dqd/tunnel.hpp"

namespace geqdot::gate {

// Exponential barrier model t_c(L_S, V_BG) = t0 exp(-kappa(V_BG) L_S) with
// kappa = sqrt(m* E_b / C0) and E_b = E_b0 - beta V_BG.
struct WkbModel {
  double t0_meV = 12.0;
  double e_b0_meV = 40.0;
  double beta_meV_per_mV = 0.5;
  double mass_over_m0 = 0.058;
};

WkbModel wkb_ge();
WkbModel wkb_si();

double wkb_barrier_meV(const WkbModel& m, double v_bg_mV);
double wkb_kappa_invnm(const WkbModel& m, double v_bg_mV);
// Coupling in ueV; throws when the barrier has collapsed (E_b <= 2 meV).
double wkb_tc_ueV(const WkbModel& m, double l_s_nm, double v_bg_mV);

struct WkbFit {
  WkbModel model;
  double r2_min = 0.0;        // worst per-voltage linearity of ln t_c vs L_S
  double max_log_dev = 0.0;   // worst |ln t_c_model - ln t_c_data|
  int n_used = 0;
};

// Fit the barrier model to a numerical sweep, using only points with
// t_c inside [window_lo, window_hi] ueV.  Per-voltage slopes of ln t_c vs
// L_S give E_b(V); a second line through E_b(V) gives E_b0 and beta; the
// prefactor t0 is anchored at the highest fitted voltage, so max_log_dev
// absorbs any prefactor drift toward lower voltages.
// Throws when the in-window data are not monotonic in L_S and V_BG.
WkbFit fit_wkb(const std::vector<dqd::SweepPoint>& sweep,
               double mass_over_m0, double window_lo_ueV = 1.0,
               double window_hi_ueV = 100.0);

// Separation length at which the controlled-phase time reaches
// `t_cz_ns`, from the barrier model at fixed V_BG and charging energy.
double separation_for_gate_time(const WkbModel& m, double v_bg_mV,
                                double u_meV, double t_cz_ns);

// Barrier-gate voltage per decade of exchange, averaged over
// [v_lo, v_hi] at fixed separation.
double exchange_slope_mV_per_decade(const WkbModel& m, double l_s_nm,
                                    double v_lo_mV, double v_hi_mV);

// Quasi-static sensitivity of ln t_c to separation fluctuations:
// kappa(V_BG) * sigma_LS.
double lntc_sensitivity(const WkbModel& m, double v_bg_mV,
                        double sigma_ls_nm);

}  // namespace geqdot::gate
