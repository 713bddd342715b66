// Copyright 2026 The nsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nsp/json_io.h"

#include <unordered_map>

#include "nsp/errors.h"
#include "nsp/measures.h"

namespace nsp {

using nlohmann::json;

json to_json(const DatasetStats& stats) {
  return json{{"record_count", stats.record_count},
              {"distinct_s", stats.distinct_s},
              {"distinct_x", stats.distinct_x},
              {"distinct_pairs", stats.distinct_pairs},
              {"singleton_pairs", stats.singleton_pairs}};
}

json quantization_to_json(const JointRange& jr, const Quantization& q) {
  json clusters = json::array();
  for (std::size_t i = 0; i < q.size(); ++i) {
    json members = json::array();
    for (XIndex x : q.members(i)) members.push_back(jr.x_alphabet()[x].id);
    const auto cw = q.codeword(i);
    clusters.push_back(json{{"id", jr.x_alphabet()[q.id(i).min_member].id},
                            {"members", std::move(members)},
                            {"codeword", cw ? json(*cw) : json(nullptr)}});
  }
  return json{{"policy", to_string(q.policy())},
              {"clusters", std::move(clusters)}};
}

Quantization quantization_from_json(const JointRange& jr, const json& j,
                                    CodewordPolicy fallback) {
  const json& body = j.contains("quantization") ? j.at("quantization") : j;
  if (!body.is_object() || !body.contains("clusters") ||
      !body.at("clusters").is_array()) {
    throw ConfigError("quantization JSON lacks a \"clusters\" array");
  }
  CodewordPolicy policy = fallback;
  if (body.contains("policy")) {
    policy = parse_codeword_policy(body.at("policy").get<std::string>());
  }
  std::unordered_map<std::string, XIndex> index;
  for (XIndex x = 0; x < jr.x_size(); ++x) index[jr.x_alphabet()[x].id] = x;

  std::vector<std::vector<XIndex>> clusters;
  for (const json& c : body.at("clusters")) {
    if (!c.contains("members") || !c.at("members").is_array()) {
      throw ConfigError("quantization cluster lacks a \"members\" array");
    }
    std::vector<XIndex> members;
    for (const json& m : c.at("members")) {
      const std::string id = m.is_string() ? m.get<std::string>() : m.dump();
      auto it = index.find(id);
      if (it == index.end()) {
        throw ConfigError("quantization names unknown X-symbol '" + id + "'");
      }
      members.push_back(it->second);
    }
    clusters.push_back(std::move(members));
  }
  try {
    return Quantization::from_clusters(jr, std::move(clusters), policy);
  } catch (const ContractViolation& e) {
    throw ConfigError(std::string("invalid quantization: ") + e.what());
  }
}

json measures_to_json(const JointRange& jr, const Quantization& q,
                      const Distance& distance) {
  const std::size_t comps = component_count(jr, q);
  json out{{"h0_s", h0(jr.s_size())},
           {"h0_x", h0(jr.x_size())},
           {"l0", l0(jr, q)},
           {"b0", b0(jr, q)},
           {"i0_forward", i0_forward(jr, q)},
           {"istar", maximin_information(jr, q)},
           {"components", comps},
           {"u1", utility(jr, q, UtilityChoice{UtilityKind::kResolution,
                                               distance})}};
  if (jr.x_numeric()) {
    out["u2"] =
        utility(jr, q, UtilityChoice{UtilityKind::kMaxDistortion, distance});
  } else {
    out["u2"] = nullptr;
  }
  return out;
}

json trace_to_json(const JointRange& jr, const std::vector<TraceEntry>& trace) {
  json out = json::array();
  for (const TraceEntry& e : trace) {
    json merged = json::array();
    for (const auto& [a, b] : e.merged) {
      merged.push_back(json::array({jr.x_alphabet()[a.min_member].id,
                                    jr.x_alphabet()[b.min_member].id}));
    }
    out.push_back(json{{"t", e.t},
                       {"lagrangian", e.lagrangian},
                       {"delta_l", e.delta_l ? json(*e.delta_l) : json(nullptr)},
                       {"accepted", e.accepted},
                       {"merged", std::move(merged)},
                       {"component_count", e.component_count},
                       {"l0", e.l0},
                       {"istar", e.istar},
                       {"utility", e.utility},
                       {"quantization", quantization_to_json(jr, e.snapshot)}});
  }
  return out;
}

json x_blocks_to_json(const JointRange& jr, const Decomposition& dec) {
  json out = json::array();
  for (const auto& block : dec.blocks) {
    json ids = json::array();
    for (std::size_t x : block) ids.push_back(jr.x_alphabet()[x].id);
    out.push_back(std::move(ids));
  }
  return out;
}

json frontier_to_json(const JointRange& jr, const Frontier& frontier) {
  json points = json::array();
  for (const ParetoPoint& p : frontier.points) {
    points.push_back(json{{"lambda", p.lambda},
                          {"leakage_raw", p.leakage_raw},
                          {"leakage_norm", p.leakage_norm},
                          {"utility_raw", p.utility_raw},
                          {"loss_norm", p.loss_norm},
                          {"quantization",
                           quantization_to_json(jr, p.quantization)}});
  }
  return json{{"algorithm", to_string(frontier.algorithm)},
              {"utility", to_string(frontier.utility)},
              {"dataset", frontier.dataset_id},
              {"degenerate", frontier.degenerate},
              {"leakage_reference", frontier.leakage_reference},
              {"utility_reference", frontier.utility_reference},
              {"points", std::move(points)}};
}

}  // namespace nsp
