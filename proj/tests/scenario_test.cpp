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

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "iabplan/scenario.hpp"
#include "iabplan/scenario_io.hpp"

namespace {

using namespace iabplan;

TEST(GridScenario, FiveDiceDefaultCounts) {
  const auto s = build_grid_scenario(Layout::kFiveDice);
  EXPECT_EQ(s.donors.size(), 5u);
  EXPECT_EQ(s.candidates.size(), 395u);
  EXPECT_EQ(s.cells.size(), 400u);
  EXPECT_NO_THROW(validate(s));
}

TEST(GridScenario, FiveDiceDonorCoordinates) {
  const auto s = build_grid_scenario(Layout::kFiveDice);
  const std::vector<Position> want{{250, 250}, {750, 250}, {500, 500}, {250, 750}, {750, 750}};
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(s.donors[i].position, want[i]);
}

TEST(GridScenario, VerticalDonorsShareX) {
  const auto s = build_grid_scenario(Layout::kVertical);
  ASSERT_EQ(s.donors.size(), 5u);
  for (const auto& d : s.donors) EXPECT_EQ(d.position.x, 500.0);
  std::set<double> ys;
  for (const auto& d : s.donors) ys.insert(d.position.y);
  EXPECT_EQ(ys, (std::set<double>{100, 300, 500, 700, 900}));
}

TEST(GridScenario, PentagonDonorsEquidistantWithinOneSnap) {
  const auto s = build_grid_scenario(Layout::kPentagon);
  ASSERT_EQ(s.donors.size(), 5u);
  const double snap = 50.0 * std::sqrt(2.0) / 2.0;
  for (const auto& d : s.donors) {
    const double r = distance_m(d.position, {500.0, 500.0});
    EXPECT_NEAR(r, 300.0, snap);
  }
  // One vertex due north.
  EXPECT_EQ(s.donors[0].position, (Position{500.0, 800.0}));
}

TEST(GridScenario, DonorsDisplaceTheirGridPoint) {
  for (auto layout : {Layout::kPentagon, Layout::kFiveDice, Layout::kVertical}) {
    const auto s = build_grid_scenario(layout);
    std::set<std::pair<double, double>> sites;
    for (const auto& d : s.donors) sites.insert({d.position.x, d.position.y});
    for (const auto& c : s.candidates) sites.insert({c.position.x, c.position.y});
    EXPECT_EQ(sites.size(), 400u) << layout_name(layout);
  }
}

TEST(GridScenario, SpacingMustDivideArea) {
  ScenarioOptions opt;
  opt.grid_spacing_m = 70.0;
  EXPECT_THROW(build_grid_scenario(Layout::kFiveDice, opt), std::invalid_argument);
}

TEST(GridScenario, UnknownLayoutName) {
  EXPECT_THROW(parse_layout("hexagon"), std::invalid_argument);
  EXPECT_EQ(parse_layout("five_dice"), Layout::kFiveDice);
  EXPECT_EQ(parse_layout("pentagon"), Layout::kPentagon);
  EXPECT_EQ(parse_layout("vertical"), Layout::kVertical);
}

TEST(GridScenario, CandidateCountFollowsGrid) {
  ScenarioOptions opt;
  opt.grid_spacing_m = 100.0;
  const auto s = build_grid_scenario(Layout::kFiveDice, opt);
  EXPECT_EQ(s.node_count(), 100u);
  EXPECT_EQ(s.candidates.size(), 95u);
}

TEST(CoverageCells, DefaultArea) { EXPECT_EQ(coverage_cells(1000, 1000, 50).size(), 400u); }

TEST(CoverageCells, HalfKilometreArea) { EXPECT_EQ(coverage_cells(500, 500, 50).size(), 100u); }

TEST(CoverageCells, CentresDistinctAndInside) {
  const auto cells = coverage_cells(1000, 1000, 50);
  std::set<std::pair<double, double>> seen;
  for (const auto& c : cells) {
    EXPECT_GT(c.center.x, 0.0);
    EXPECT_LT(c.center.x, 1000.0);
    EXPECT_GT(c.center.y, 0.0);
    EXPECT_LT(c.center.y, 1000.0);
    seen.insert({c.center.x, c.center.y});
  }
  EXPECT_EQ(seen.size(), cells.size());
  EXPECT_EQ(cells.front().center, (Position{25.0, 25.0}));
}

TEST(ScenarioIo, RoundTripIsIdentity) {
  fixtures::TempDir dir;
  for (auto layout : {Layout::kPentagon, Layout::kFiveDice, Layout::kVertical}) {
    const auto s = build_grid_scenario(layout);
    save_scenario(s, dir.file("s.json"));
    EXPECT_EQ(load_scenario(dir.file("s.json")), s);
  }
}

TEST(ScenarioIo, NonDefaultFieldsRoundTrip) {
  ScenarioOptions opt;
  opt.policy = {0.9, 3, 0.15, 1.1};
  opt.radio.rain_db_per_km = 4.25;
  opt.radio.snr_threshold_db = 7.0 / 3.0;
  opt.backhaul_degree_cap = 5;
  const auto s = build_grid_scenario(Layout::kPentagon, opt);
  EXPECT_EQ(parse_scenario(serialize_scenario(s)), s);
}

TEST(ScenarioIo, MissingRadioSectionNamesField) {
  auto j = to_json(build_grid_scenario(Layout::kFiveDice));
  j.erase("radio");
  try {
    scenario_from_json(j);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("radio"), std::string::npos);
  }
}

TEST(ScenarioIo, MissingNestedFieldIsQualified) {
  auto j = to_json(build_grid_scenario(Layout::kFiveDice));
  j["radio"].erase("bandwidth_mhz");
  try {
    scenario_from_json(j);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("radio.bandwidth_mhz"), std::string::npos);
  }
}

TEST(ScenarioIo, ThetaOutOfRangeFailsValidation) {
  auto j = to_json(build_grid_scenario(Layout::kFiveDice));
  j["policy"]["theta_cov"] = 1.5;
  EXPECT_THROW(scenario_from_json(j), std::invalid_argument);
}

TEST(ScenarioIo, VersionMismatch) {
  auto j = to_json(build_grid_scenario(Layout::kFiveDice));
  j["format_version"] = 99;
  EXPECT_THROW(scenario_from_json(j), ParseError);
}

TEST(ScenarioIo, NotJson) { EXPECT_THROW(parse_scenario("radio = {"), ParseError); }

TEST(ScenarioIo, MissingFileIsIoError) {
  EXPECT_THROW(load_scenario("/nonexistent/dir/s.json"), IoError);
}

TEST(ScenarioIo, GenerationIsByteDeterministic) {
  for (auto layout : {Layout::kPentagon, Layout::kFiveDice, Layout::kVertical})
    EXPECT_EQ(serialize_scenario(build_grid_scenario(layout)),
              serialize_scenario(build_grid_scenario(layout)));
}

TEST(ScenarioValidation, PolicyRanges) {
  auto s = build_grid_scenario(Layout::kFiveDice);
  auto broken = s;
  broken.policy.m = 0;
  EXPECT_THROW(validate(broken), std::invalid_argument);
  broken = s;
  broken.policy.beta = 1.0;
  EXPECT_THROW(validate(broken), std::invalid_argument);
  broken = s;
  broken.policy.overhead = 1.0;
  EXPECT_THROW(validate(broken), std::invalid_argument);
  broken = s;
  broken.candidates[3].position.x = 2000.0;
  EXPECT_THROW(validate(broken), std::invalid_argument);
  broken = s;
  broken.candidates[3].id = 0;
  EXPECT_THROW(validate(broken), std::invalid_argument);
}

TEST(ScenarioValidation, SiteLookup) {
  const auto s = build_grid_scenario(Layout::kFiveDice);
  EXPECT_TRUE(s.is_donor(4));
  EXPECT_TRUE(s.is_candidate(5));
  EXPECT_EQ(s.position(2), (Position{500.0, 500.0}));
  EXPECT_THROW(s.site(400), std::out_of_range);
  EXPECT_EQ(s.max_demand_mbps(), 100.0);
}

}  // namespace
