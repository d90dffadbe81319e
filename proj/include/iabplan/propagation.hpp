// Copyright 2026 The iabplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// 60 GHz link budget for access and backhaul links.
//
// All quantities stay in dB / dBm. The only conversion to the linear domain
// happens in link_capacity_mbps().

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "iabplan/geometry.hpp"

namespace iabplan::propagation {

struct RadioParams {
  double tx_power_dbm = 30.0;
  double backhaul_gain_tx_dbi = 25.0;
  double backhaul_gain_rx_dbi = 25.0;
  // Combined base-station + UE gain on access links.
  double access_gain_dbi = 10.0;
  double hpbw_deg = 10.0;
  double frequency_ghz = 60.0;
  double bandwidth_mhz = 400.0;
  double noise_figure_db = 7.0;
  double snr_threshold_db = 10.0;
  double atm_db_per_km = 15.0;
  double rain_db_per_km = 0.0;
  // 2.0 is free space.
  double path_loss_exponent = 2.0;

  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

enum class LinkKind { kAccess, kBackhaul };

struct LinkBudget {
  double distance_m = 0.0;
  double path_loss_db = 0.0;
  double atm_loss_db = 0.0;
  double rain_loss_db = 0.0;
  double total_loss_db = 0.0;
  double rx_power_dbm = 0.0;
  double noise_dbm = 0.0;
  double snr_db = 0.0;
  bool feasible = false;
  double capacity_mbps = 0.0;
};

// Throws std::invalid_argument describing the first broken field.
inline void validate(const RadioParams& p) {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("radio." + what);
  };
  if (!std::isfinite(p.tx_power_dbm)) fail("tx_power_dbm must be finite");
  if (!(p.bandwidth_mhz > 0.0) || !std::isfinite(p.bandwidth_mhz))
    fail("bandwidth_mhz must be > 0");
  if (!(p.hpbw_deg > 0.0 && p.hpbw_deg <= 360.0))
    fail("hpbw_deg must lie in (0, 360]");
  if (!std::isfinite(p.snr_threshold_db)) fail("snr_threshold_db must be finite");
  if (!(p.frequency_ghz > 0.0)) fail("frequency_ghz must be > 0");
  if (!std::isfinite(p.noise_figure_db)) fail("noise_figure_db must be finite");
  if (!std::isfinite(p.backhaul_gain_tx_dbi) ||
      !std::isfinite(p.backhaul_gain_rx_dbi) ||
      !std::isfinite(p.access_gain_dbi))
    fail("antenna gains must be finite");
  if (!(p.atm_db_per_km >= 0.0) || !(p.rain_db_per_km >= 0.0))
    fail("attenuation coefficients must be >= 0");
  if (!(p.path_loss_exponent > 0.0)) fail("path_loss_exponent must be > 0");
}

// Log-distance loss referenced to 1 km; exponent 2 gives the free-space form
// 32.44 + 20 log10(f_MHz) + 20 log10(d_km).
inline double path_loss_db(double distance_m, double frequency_ghz,
                           double exponent = 2.0) {
  if (!(distance_m > 0.0))
    throw std::domain_error("path_loss_db: distance must be positive");
  if (!(frequency_ghz > 0.0))
    throw std::domain_error("path_loss_db: frequency must be positive");
  const double f_mhz = frequency_ghz * 1000.0;
  const double d_km = distance_m / 1000.0;
  return 32.44 + 20.0 * std::log10(f_mhz) + 10.0 * exponent * std::log10(d_km);
}

inline double atm_loss_db(double distance_m, const RadioParams& p) {
  return p.atm_db_per_km * distance_m / 1000.0;
}

inline double rain_loss_db(double distance_m, const RadioParams& p) {
  return p.rain_db_per_km * distance_m / 1000.0;
}

inline double total_loss_db(double distance_m, const RadioParams& p) {
  return path_loss_db(distance_m, p.frequency_ghz, p.path_loss_exponent) +
         atm_loss_db(distance_m, p) + rain_loss_db(distance_m, p);
}

// Sector antenna pair: full gain inside the half-power beam, 0 dB outside.
inline double backhaul_gain_db(double angle_deviation_deg, const RadioParams& p) {
  if (std::abs(angle_deviation_deg) <= p.hpbw_deg / 2.0)
    return p.backhaul_gain_tx_dbi + p.backhaul_gain_rx_dbi;
  return 0.0;
}

inline double access_gain_db(const RadioParams& p) { return p.access_gain_dbi; }

// Thermal noise over the bandwidth plus receiver noise figure.
inline double noise_power_dbm(double bandwidth_mhz, double noise_figure_db) {
  if (!(bandwidth_mhz > 0.0))
    throw std::domain_error("noise_power_dbm: bandwidth must be positive");
  return -174.0 + 10.0 * std::log10(bandwidth_mhz * 1e6) + noise_figure_db;
}

// Shannon rate in Mbps. Callers pass feasible = false to get the 0 floor.
inline double link_capacity_mbps(double snr_db, double bandwidth_mhz,
                                 bool feasible = true) {
  if (!feasible) return 0.0;
  return bandwidth_mhz * std::log2(1.0 + std::pow(10.0, snr_db / 10.0));
}

// Backhaul links are assumed steered (zero misalignment).
inline LinkBudget evaluate_distance(double distance_m, LinkKind kind,
                                    const RadioParams& p) {
  if (!(distance_m > 0.0))
    throw std::domain_error("evaluate_link: zero-length link");
  LinkBudget b;
  b.distance_m = distance_m;
  b.path_loss_db = path_loss_db(distance_m, p.frequency_ghz, p.path_loss_exponent);
  b.atm_loss_db = atm_loss_db(distance_m, p);
  b.rain_loss_db = rain_loss_db(distance_m, p);
  b.total_loss_db = b.path_loss_db + b.atm_loss_db + b.rain_loss_db;
  const double gain = kind == LinkKind::kBackhaul ? backhaul_gain_db(0.0, p)
                                                  : access_gain_db(p);
  b.rx_power_dbm = p.tx_power_dbm + gain - b.total_loss_db;
  b.noise_dbm = noise_power_dbm(p.bandwidth_mhz, p.noise_figure_db);
  b.snr_db = b.rx_power_dbm - b.noise_dbm;
  b.feasible = b.snr_db >= p.snr_threshold_db;
  b.capacity_mbps = link_capacity_mbps(b.snr_db, p.bandwidth_mhz, b.feasible);
  return b;
}

inline LinkBudget evaluate_link(const Position& src, const Position& dst,
                                LinkKind kind, const RadioParams& p) {
  return evaluate_distance(distance_m(src, dst), kind, p);
}

}  // namespace iabplan::propagation
