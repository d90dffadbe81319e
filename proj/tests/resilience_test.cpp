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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles/disjoint_paths.hpp"

namespace {

using namespace iabplan;

const Instance& five_dice() {
  static const Instance inst(build_grid_scenario(Layout::kFiveDice));
  return inst;
}

const NetworkState& greedy_state() {
  static const NetworkState st = greedy_plan(five_dice()).state;
  return st;
}

// Chain with 40 physical links: donor 0 and candidates 1..40, 200 m apart.
NetworkState chain_state(const Instance& inst) {
  auto st = inst.initial_state();
  for (NodeId v = 1; v < inst.scenario().node_count(); ++v) {
    st.deployed[v] = true;
    st.active_links.insert({v - 1, v});
  }
  return st;
}

Instance chain_instance() {
  ScenarioOptions opt;
  opt.width_m = 8000.0;
  opt.height_m = 50.0;
  std::vector<Position> cands;
  for (int i = 1; i <= 40; ++i) cands.push_back({200.0 * i, 0.0});
  return Instance(make_scenario(opt, {{0.0, 0.0}}, cands));
}

TEST(InjectFailures, ZeroFractionIsEmpty) {
  EXPECT_TRUE(inject_failures(greedy_state(), 0.0, 1).empty());
}

TEST(InjectFailures, FullFractionIsEverything) {
  EXPECT_EQ(inject_failures(greedy_state(), 1.0, 1), greedy_state().active_links);
}

TEST(InjectFailures, FloorOfFractionReproducible) {
  const auto inst = chain_instance();
  const auto st = chain_state(inst);
  ASSERT_EQ(physical_links(st).size(), 40u);
  const auto a = inject_failures(st, 0.3, 99);
  EXPECT_EQ(a.size(), 12u);
  EXPECT_EQ(inject_failures(st, 0.3, 99), a);
  EXPECT_NE(inject_failures(st, 0.3, 100), a);
  for (const auto& l : a) EXPECT_TRUE(st.active_links.contains(l));
}

TEST(InjectFailures, BothDirectionsFailTogether) {
  const auto& st = greedy_state();
  const auto failed = inject_failures(st, 0.5, 3);
  for (const auto& l : failed) {
    if (st.active_links.contains({l.dst, l.src})) {
      EXPECT_TRUE(failed.contains({l.dst, l.src}));
    }
  }
}

TEST(InjectFailures, RejectsBadFraction) {
  EXPECT_THROW(inject_failures(greedy_state(), 1.5, 0), std::invalid_argument);
  EXPECT_THROW(inject_failures(greedy_state(), -0.1, 0), std::invalid_argument);
}

TEST(Retention, NoFailuresIsOne) {
  EXPECT_DOUBLE_EQ(post_failure_retention(five_dice(), greedy_state(), {}), 1.0);
}

TEST(Retention, LeafLossIsExclusiveContribution) {
  const auto inst = chain_instance();
  const auto st = chain_state(inst);
  const NodeId leaf = 40;
  std::vector<bool> all(st.deployed.begin(), st.deployed.end());
  auto without = all;
  without[leaf] = false;
  const double base = static_cast<double>(covered_by(inst, all));
  const double expect = static_cast<double>(covered_by(inst, without)) / base;
  EXPECT_DOUBLE_EQ(post_failure_retention(inst, st, {{leaf - 1, leaf}}), expect);
  EXPECT_LT(expect, 1.0);
}

TEST(Retention, RedundantNodeSurvivesPathLoss) {
  ScenarioOptions opt;
  opt.width_m = 300.0;
  opt.height_m = 50.0;
  const Instance inst(make_scenario(opt, {{0.0, 0.0}, {300.0, 0.0}}, {{150.0, 0.0}}));
  auto st = inst.initial_state();
  st.deployed[2] = true;
  st.active_links = {{0, 2}, {1, 2}};
  EXPECT_EQ(oracle::disjoint_donor_paths(3, 2, st.active_links, 2), 2u);
  EXPECT_TRUE(surviving_nodes(inst, st, {{0, 2}})[2]);
  EXPECT_FALSE(surviving_nodes(inst, st, {{0, 2}, {1, 2}})[2]);
  EXPECT_TRUE(surviving_nodes(inst, st, {{0, 2}, {1, 2}})[0]);
}

TEST(Retention, MonotoneInFailedSet) {
  const auto& st = greedy_state();
  auto links = std::vector<Link>(st.active_links.begin(), st.active_links.end());
  std::mt19937_64 gen(12);
  rng::shuffle(links, gen);
  std::set<Link> failed;
  double prev = 1.0;
  for (const auto& l : links) {
    failed.insert(l);
    const double r = post_failure_retention(five_dice(), st, failed);
    EXPECT_LE(r, prev + 1e-15);
    EXPECT_GE(r, 0.0);
    prev = r;
  }
}

TEST(RunTrials, DecreasingMeanOnGreedy) {
  const auto stats = run_trials(five_dice(), greedy_state(), {0.1, 0.2, 0.3}, 100, 42);
  ASSERT_EQ(stats.size(), 3u);
  for (const auto& s : stats) {
    EXPECT_EQ(s.trials, 100u);
    EXPECT_EQ(s.retentions.size(), 100u);
    for (double r : s.retentions) {
      EXPECT_GE(r, 0.0);
      EXPECT_LE(r, 1.0);
    }
  }
  EXPECT_GT(stats[0].retention_mean, stats[1].retention_mean);
  EXPECT_GT(stats[1].retention_mean, stats[2].retention_mean);
}

TEST(RunTrials, SingleTrialAtZero) {
  const auto stats = run_trials(five_dice(), greedy_state(), {0.0}, 1, 5);
  ASSERT_EQ(stats.size(), 1u);
  EXPECT_EQ(stats[0].retention_mean, 1.0);
  EXPECT_EQ(stats[0].retention_std, 0.0);
  EXPECT_EQ(stats[0].retention_min, 1.0);
}

TEST(RunTrials, ReproduciblePerSeed) {
  const auto a = run_trials(five_dice(), greedy_state(), {0.2}, 20, 8);
  const auto b = run_trials(five_dice(), greedy_state(), {0.2}, 20, 8);
  const auto c = run_trials(five_dice(), greedy_state(), {0.2}, 20, 9);
  EXPECT_EQ(a[0].retentions, b[0].retentions);
  EXPECT_NE(a[0].retentions, c[0].retentions);
}

TEST(RunTrials, StatsMatchPerTrialValues) {
  const auto s = run_trials(five_dice(), greedy_state(), {0.3}, 50, 1)[0];
  double mean = 0.0;
  for (double r : s.retentions) mean += r / 50.0;
  double var = 0.0;
  for (double r : s.retentions) var += (r - mean) * (r - mean) / 50.0;
  EXPECT_NEAR(s.retention_mean, mean, 1e-12);
  EXPECT_NEAR(s.retention_std, std::sqrt(var), 1e-12);
  EXPECT_EQ(s.retention_min, *std::min_element(s.retentions.begin(), s.retentions.end()));
}

TEST(RunTrials, RejectsZeroTrials) {
  EXPECT_THROW(run_trials(five_dice(), greedy_state(), {0.1}, 0, 1), std::invalid_argument);
}

TEST(RunTrials, MeshBeatsTreeAtThirtyPercent) {
  const auto& mesh = greedy_state();
  const auto tree = fixtures::routing_tree(five_dice(), mesh);
  EXPECT_EQ(deployed_candidates(five_dice().scenario(), tree),
            deployed_candidates(five_dice().scenario(), mesh));
  const double m = run_trials(five_dice(), mesh, {0.3}, 100, 42)[0].retention_mean;
  const double t = run_trials(five_dice(), tree, {0.3}, 100, 42)[0].retention_mean;
  EXPECT_GT(m, t);
}

}  // namespace
