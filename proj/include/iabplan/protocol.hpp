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

// Newline-delimited JSON protocol between the environment and an external
// agent. docs/env_protocol.md is the schema reference; field names and
// order here must match it.

#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "iabplan/environment.hpp"

namespace iabplan::protocol {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

inline Json mask_to_json(const AttributedGraph& g) {
  Json mask = Json::array();
  for (auto b : g.action_mask) mask.push_back(b != 0);
  return mask;
}

inline Json graph_to_json(const AttributedGraph& g) {
  Json obs = Json::object();
  Json nodes = Json::array();
  for (std::size_t v = 0; v < g.node_features.size(); ++v) {
    const auto& f = g.node_features[v];
    Json n = Json::object();
    n["id"] = v;
    n["alpha"] = f[0];
    n["demand"] = f[1];
    n["resil_ratio"] = f[2];
    n["is_donor"] = f[3];
    nodes.push_back(std::move(n));
  }
  Json edges = Json::array();
  for (const auto& e : g.edges) {
    Json x = Json::object();
    x["src"] = e.link.src;
    x["dst"] = e.link.dst;
    x["cap"] = e.features[0];
    x["util"] = e.features[1];
    x["feas"] = e.features[2];
    edges.push_back(std::move(x));
  }
  obs["nodes"] = std::move(nodes);
  obs["edges"] = std::move(edges);
  obs["global"] = g.global_features;
  obs["mask"] = mask_to_json(g);
  return obs;
}

// Canonical text of an observation; byte-identical for identical graphs.
inline std::string serialize_graph(const AttributedGraph& g) { return graph_to_json(g).dump(); }

inline Json error_reply(std::string_view code, std::string_view detail) {
  Json j = Json::object();
  j["error"] = code;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

inline Json hello(const Instance& inst) {
  Json j = Json::object();
  j["hello"] = "iabplan-env";
  j["schema_version"] = kSchemaVersion;
  j["num_nodes"] = inst.scenario().node_count();
  j["num_donors"] = inst.scenario().donors.size();
  j["num_cells"] = inst.scenario().cells.size();
  return j;
}

// One agent session: parses a request line, drives its own Environment and
// returns the reply line (without the trailing newline).
class Session {
 public:
  Session(std::shared_ptr<const Instance> inst, EnvConfig cfg = {}) : env_(std::move(inst), cfg) {}

  std::string handle(std::string_view line) { return dispatch(line).dump(); }

  bool closed() const { return closed_; }

 private:
  Json dispatch(std::string_view line) {
    Json req;
    try {
      req = Json::parse(line);
    } catch (const Json::parse_error& e) {
      return error_reply("malformed", e.what());
    }
    if (!req.is_object() || !req.contains("cmd") || !req["cmd"].is_string())
      return error_reply("malformed", "request must be an object with a string 'cmd'");
    const auto cmd = req["cmd"].get<std::string>();

    if (cmd == "reset") {
      std::uint64_t seed = 0;
      if (req.contains("seed")) {
        if (!req["seed"].is_number_unsigned())
          return error_reply("malformed", "'seed' must be a non-negative integer");
        seed = req["seed"].get<std::uint64_t>();
      }
      const auto g = env_.reset(seed);
      Json reply = Json::object();
      reply["obs"] = graph_to_json(g);
      reply["mask"] = mask_to_json(g);
      return reply;
    }
    if (cmd == "step") {
      if (!env_.has_episode()) return error_reply("no_episode", "");
      if (!req.contains("action") || !req["action"].is_number_unsigned())
        return error_reply("malformed", "'action' must be a non-negative integer");
      const auto action = req["action"].get<std::uint64_t>();
      try {
        const auto r = env_.step(static_cast<std::size_t>(action));
        Json reply = Json::object();
        reply["obs"] = graph_to_json(r.observation);
        reply["reward"] = r.reward;
        reply["done"] = r.done;
        Json info = Json::object();
        info["coverage_fraction"] = r.info.coverage_fraction;
        info["nodes_deployed"] = r.info.nodes_deployed;
        info["vulnerable_count"] = r.info.vulnerable_count;
        Json terms = Json::object();
        terms["coverage"] = r.info.terms.coverage;
        terms["deploy"] = r.info.terms.deploy;
        terms["vulnerable"] = r.info.terms.vulnerable;
        info["reward_components"] = std::move(terms);
        reply["info"] = std::move(info);
        return reply;
      } catch (const EnvError& e) {
        auto reply = error_reply(e.code(), e.what());
        if (e.code() == "illegal_action") reply["mask"] = mask_to_json(env_.observe());
        return reply;
      }
    }
    if (cmd == "close") {
      closed_ = true;
      Json reply = Json::object();
      reply["closed"] = true;
      return reply;
    }
    return error_reply("unknown_cmd", cmd);
  }

  Environment env_;
  bool closed_ = false;
};

// Serves one session over a pair of streams: hello line first, then one
// reply per request line until `close` or end of input.
inline void serve_stream(std::shared_ptr<const Instance> inst, std::istream& in, std::ostream& out,
                         EnvConfig cfg = {}) {
  out << hello(*inst).dump() << "\n" << std::flush;
  Session session(std::move(inst), cfg);
  std::string line;
  while (!session.closed() && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out << session.handle(line) << "\n" << std::flush;
  }
}

}  // namespace iabplan::protocol
