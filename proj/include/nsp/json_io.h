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

// JSON encodings of library values. Field layouts are documented in
// docs/schemas.md.

#ifndef NSP_JSON_IO_H_
#define NSP_JSON_IO_H_

#include <vector>

#include "json.hpp"
#include "nsp/confusability_graph.h"
#include "nsp/exact_oracle.h"
#include "nsp/greedy.h"
#include "nsp/ingest.h"
#include "nsp/joint_range.h"
#include "nsp/pareto.h"
#include "nsp/quantization.h"

namespace nsp {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const DatasetStats& stats);

// {"policy", "clusters": [{"id", "members", "codeword"}]}, symbols by text id.
nlohmann::json quantization_to_json(const JointRange& jr, const Quantization& q);

// Reads the "clusters" member of `j` (or `j["quantization"]` when present).
// The codeword policy comes from "policy" when present, else `fallback`.
// Throws ConfigError on unknown ids or a non-partition.
Quantization quantization_from_json(const JointRange& jr,
                                    const nlohmann::json& j,
                                    CodewordPolicy fallback);

// L0, B0, I0, I*, component count and U1 (plus U2 when X is numeric).
nlohmann::json measures_to_json(const JointRange& jr, const Quantization& q,
                                const Distance& distance = absolute_distance);

nlohmann::json trace_to_json(const JointRange& jr,
                             const std::vector<TraceEntry>& trace);

// Blocks of x indices rendered as lists of X ids.
nlohmann::json x_blocks_to_json(const JointRange& jr, const Decomposition& dec);

nlohmann::json frontier_to_json(const JointRange& jr, const Frontier& frontier);

}  // namespace nsp

#endif  // NSP_JSON_IO_H_
