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

// Sequential deployment episodes.
//
// Actions: 0 stops the episode; j >= 1 deploys candidate node j. Each step
// is rewarded with
//
//   r = k1 * dU - k2 * deployed - k3 * vulnerable
//
// where dU is the coverage gain in percentage points, `deployed` is 1 for a
// deployment action and `vulnerable` counts deployed nodes below m inbound
// links after the action.

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include "iabplan/constraints.hpp"
#include "iabplan/instance.hpp"
#include "iabplan/netgraph.hpp"
#include "iabplan/planners.hpp"

namespace iabplan {

struct RewardWeights {
  double coverage = 4.0;
  double deploy = 0.2;
  double vulnerable = 0.5;
};

struct EnvConfig {
  RewardWeights weights;
  std::size_t step_limit = 0;  // 0 means |candidates|
};

struct RewardTerms {
  double coverage = 0.0;    // k1 * dU
  double deploy = 0.0;      // k2 * deployed
  double vulnerable = 0.0;  // k3 * vulnerable

  double total() const { return coverage - deploy - vulnerable; }
};

struct StepInfo {
  double coverage_fraction = 0.0;
  std::size_t nodes_deployed = 0;
  std::size_t vulnerable_count = 0;
  RewardTerms terms;
};

struct StepResult {
  AttributedGraph observation;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

class EnvError : public std::runtime_error {
 public:
  EnvError(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class Environment {
 public:
  Environment(std::shared_ptr<const Instance> inst, EnvConfig cfg = {})
      : inst_(std::move(inst)), cfg_(cfg) {
    if (!inst_) throw std::invalid_argument("Environment: null instance");
    if (cfg_.step_limit == 0) cfg_.step_limit = inst_->scenario().candidates.size();
  }

  // The environment is deterministic; the seed is recorded for the session.
  AttributedGraph reset(std::uint64_t seed) {
    seed_ = seed;
    state_ = inst_->initial_state();
    covered_ = coverage_indicators(*inst_, state_).covered_count;
    initial_covered_ = covered_;
    steps_ = 0;
    active_ = true;
    done_ = false;
    return observe();
  }

  StepResult step(std::size_t action) {
    if (!active_) throw EnvError("no_episode", "step before reset");
    if (done_) throw EnvError("episode_done", "episode has terminated; reset first");
    if (!is_legal(action))
      throw EnvError("illegal_action", "action " + std::to_string(action) + " is masked");

    const auto& s = inst_->scenario();
    const double cells = static_cast<double>(s.cells.size());
    StepResult out;
    if (action == 0) {
      done_ = true;
    } else {
      const double before = static_cast<double>(covered_) / cells;
      deploy(*inst_, state_, action);
      covered_ = coverage_indicators(*inst_, state_).covered_count;
      const double after = static_cast<double>(covered_) / cells;
      const auto vulnerable = resilience_check(*inst_, state_).size();
      out.info.terms.coverage = cfg_.weights.coverage * (after - before) * 100.0;
      out.info.terms.deploy = cfg_.weights.deploy;
      out.info.terms.vulnerable = cfg_.weights.vulnerable * static_cast<double>(vulnerable);
    }
    ++steps_;
    if (covered_ >= inst_->coverage_target_cells() || steps_ >= cfg_.step_limit) done_ = true;

    out.reward = out.info.terms.total();
    out.done = done_;
    out.info.coverage_fraction = static_cast<double>(covered_) / cells;
    out.info.nodes_deployed = deployed_candidates(s, state_).size();
    out.info.vulnerable_count = resilience_check(*inst_, state_).size();
    out.observation = observe();
    return out;
  }

  bool is_legal(std::size_t action) const {
    if (action == 0) return true;
    const auto& s = inst_->scenario();
    return s.is_candidate(action) && !state_.deployed[action];
  }

  AttributedGraph observe() const { return build_graph(*inst_, state_); }

  bool has_episode() const { return active_; }
  bool done() const { return done_; }
  std::size_t steps() const { return steps_; }
  std::uint64_t seed() const { return seed_; }
  const NetworkState& state() const { return state_; }
  const Instance& instance() const { return *inst_; }
  double initial_coverage_fraction() const {
    return static_cast<double>(initial_covered_) / static_cast<double>(inst_->scenario().cells.size());
  }

 private:
  std::shared_ptr<const Instance> inst_;
  EnvConfig cfg_;
  NetworkState state_;
  std::size_t covered_ = 0;
  std::size_t initial_covered_ = 0;
  std::size_t steps_ = 0;
  std::uint64_t seed_ = 0;
  bool active_ = false;
  bool done_ = false;
};

}  // namespace iabplan
