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

// Scenario file format (JSON, versioned by `format_version`).
//
//   {
//     "format_version": 1,
//     "layout": "five_dice",
//     "area": {"width_m": 1000, "height_m": 1000},
//     "grid_spacing_m": 50,
//     "backhaul_degree_cap": 8,
//     "radio":  {...RadioParams fields...},
//     "policy": {"theta_cov": 0.98, "m": 2, "beta": 0.2, "overhead": 1.2},
//     "donors":     [{"id", "x", "y", "demand_mbps", "fiber_mbps"}, ...],
//     "candidates": [{"id", "x", "y", "demand_mbps"}, ...],
//     "cells":      [{"id", "x", "y"}, ...]
//   }

#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "iabplan/scenario.hpp"

namespace iabplan {

inline constexpr int kScenarioFormatVersion = 1;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace json_detail {

using nlohmann::json;

inline std::string qualify(const std::string& where, const char* key) {
  return where.empty() ? std::string(key) : where + "." + key;
}

inline const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing field '" + qualify(where, key) + "'");
  return *it;
}

inline double number(const json& j, const char* key, const std::string& where) {
  const auto& v = require(j, key, where);
  if (!v.is_number()) throw ParseError("field '" + qualify(where, key) + "' must be a number");
  return v.get<double>();
}

inline std::int64_t integer(const json& j, const char* key, const std::string& where) {
  const auto& v = require(j, key, where);
  if (!v.is_number_integer()) throw ParseError("field '" + qualify(where, key) + "' must be an integer");
  return v.get<std::int64_t>();
}

inline std::size_t index(const json& j, const char* key, const std::string& where) {
  const auto v = integer(j, key, where);
  if (v < 0) throw ParseError("field '" + qualify(where, key) + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

inline const json& array(const json& j, const char* key, const std::string& where) {
  const auto& v = require(j, key, where);
  if (!v.is_array()) throw ParseError("field '" + qualify(where, key) + "' must be an array");
  return v;
}

}  // namespace json_detail

inline nlohmann::json to_json(const propagation::RadioParams& r) {
  return {{"tx_power_dbm", r.tx_power_dbm},
          {"backhaul_gain_tx_dbi", r.backhaul_gain_tx_dbi},
          {"backhaul_gain_rx_dbi", r.backhaul_gain_rx_dbi},
          {"access_gain_dbi", r.access_gain_dbi},
          {"hpbw_deg", r.hpbw_deg},
          {"frequency_ghz", r.frequency_ghz},
          {"bandwidth_mhz", r.bandwidth_mhz},
          {"noise_figure_db", r.noise_figure_db},
          {"snr_threshold_db", r.snr_threshold_db},
          {"atm_db_per_km", r.atm_db_per_km},
          {"rain_db_per_km", r.rain_db_per_km},
          {"path_loss_exponent", r.path_loss_exponent}};
}

inline nlohmann::json to_json(const Scenario& s) {
  nlohmann::json j;
  j["format_version"] = kScenarioFormatVersion;
  j["layout"] = std::string(layout_name(s.layout));
  j["area"] = {{"width_m", s.width_m}, {"height_m", s.height_m}};
  j["grid_spacing_m"] = s.grid_spacing_m;
  j["backhaul_degree_cap"] = s.backhaul_degree_cap;
  j["radio"] = to_json(s.radio);
  j["policy"] = {{"theta_cov", s.policy.theta_cov},
                 {"m", s.policy.m},
                 {"beta", s.policy.beta},
                 {"overhead", s.policy.overhead}};
  auto& donors = j["donors"] = nlohmann::json::array();
  for (const auto& d : s.donors)
    donors.push_back({{"id", d.id}, {"x", d.position.x}, {"y", d.position.y},
                      {"demand_mbps", d.demand_mbps}, {"fiber_mbps", d.fiber_mbps}});
  auto& cands = j["candidates"] = nlohmann::json::array();
  for (const auto& c : s.candidates)
    cands.push_back({{"id", c.id}, {"x", c.position.x}, {"y", c.position.y},
                     {"demand_mbps", c.demand_mbps}});
  auto& cells = j["cells"] = nlohmann::json::array();
  for (const auto& c : s.cells)
    cells.push_back({{"id", c.id}, {"x", c.center.x}, {"y", c.center.y}});
  return j;
}

inline propagation::RadioParams radio_from_json(const nlohmann::json& j) {
  using namespace json_detail;
  const std::string w = "radio";
  propagation::RadioParams r;
  r.tx_power_dbm = number(j, "tx_power_dbm", w);
  r.backhaul_gain_tx_dbi = number(j, "backhaul_gain_tx_dbi", w);
  r.backhaul_gain_rx_dbi = number(j, "backhaul_gain_rx_dbi", w);
  r.access_gain_dbi = number(j, "access_gain_dbi", w);
  r.hpbw_deg = number(j, "hpbw_deg", w);
  r.frequency_ghz = number(j, "frequency_ghz", w);
  r.bandwidth_mhz = number(j, "bandwidth_mhz", w);
  r.noise_figure_db = number(j, "noise_figure_db", w);
  r.snr_threshold_db = number(j, "snr_threshold_db", w);
  r.atm_db_per_km = number(j, "atm_db_per_km", w);
  r.rain_db_per_km = number(j, "rain_db_per_km", w);
  r.path_loss_exponent = number(j, "path_loss_exponent", w);
  return r;
}

// Throws ParseError for schema problems and std::invalid_argument when the
// parsed scenario breaks an invariant.
inline Scenario scenario_from_json(const nlohmann::json& j) {
  using namespace json_detail;
  if (!j.is_object()) throw ParseError("scenario document must be an object");
  const auto version = integer(j, "format_version", "");
  if (version != kScenarioFormatVersion)
    throw ParseError("unsupported format_version " + std::to_string(version) + " (expected " +
                     std::to_string(kScenarioFormatVersion) + ")");
  Scenario s;
  const auto& layout = require(j, "layout", "");
  if (!layout.is_string()) throw ParseError("field 'layout' must be a string");
  try {
    s.layout = parse_layout(layout.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("field 'layout': ") + e.what());
  }
  const auto& area = require(j, "area", "");
  s.width_m = number(area, "width_m", "area");
  s.height_m = number(area, "height_m", "area");
  s.grid_spacing_m = number(j, "grid_spacing_m", "");
  s.backhaul_degree_cap = index(j, "backhaul_degree_cap", "");
  s.radio = radio_from_json(require(j, "radio", ""));
  const auto& pol = require(j, "policy", "");
  s.policy.theta_cov = number(pol, "theta_cov", "policy");
  s.policy.m = static_cast<int>(integer(pol, "m", "policy"));
  s.policy.beta = number(pol, "beta", "policy");
  s.policy.overhead = number(pol, "overhead", "policy");
  for (const auto& d : array(j, "donors", "")) {
    Donor dn;
    dn.id = index(d, "id", "donors[]");
    dn.position = {number(d, "x", "donors[]"), number(d, "y", "donors[]")};
    dn.demand_mbps = number(d, "demand_mbps", "donors[]");
    dn.fiber_mbps = number(d, "fiber_mbps", "donors[]");
    s.donors.push_back(dn);
  }
  for (const auto& c : array(j, "candidates", "")) {
    Site site;
    site.id = index(c, "id", "candidates[]");
    site.position = {number(c, "x", "candidates[]"), number(c, "y", "candidates[]")};
    site.demand_mbps = number(c, "demand_mbps", "candidates[]");
    s.candidates.push_back(site);
  }
  for (const auto& c : array(j, "cells", "")) {
    Cell cell;
    cell.id = index(c, "id", "cells[]");
    cell.center = {number(c, "x", "cells[]"), number(c, "y", "cells[]")};
    s.cells.push_back(cell);
  }
  validate(s);
  return s;
}

inline std::string serialize_scenario(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

inline Scenario parse_scenario(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return scenario_from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline void save_scenario(const Scenario& s, const std::string& path) {
  write_file(path, serialize_scenario(s));
}

inline Scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

// FNV-1a over the canonical serialization; identifies the scenario a
// deployment was planned against.
inline std::uint64_t scenario_digest(const Scenario& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize_scenario(s)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace iabplan
