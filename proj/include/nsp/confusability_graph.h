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

// Confusability graph of a quantization and its finest decomposition.
//
// Nodes are the clusters of a quantization; two clusters are adjacent when
// their conditional S-ranges intersect. The number of connected components
// determines the maximin information.

#ifndef NSP_CONFUSABILITY_GRAPH_H_
#define NSP_CONFUSABILITY_GRAPH_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "nsp/joint_range.h"
#include "nsp/quantization.h"

namespace nsp {

class ConfusabilityGraph {
 public:
  // Nodes follow the cluster order of the quantization the graph was built
  // from.
  explicit ConfusabilityGraph(std::vector<ClusterId> nodes,
                              std::vector<std::vector<std::size_t>> adjacency);

  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<ClusterId>& nodes() const { return nodes_; }
  const std::vector<std::size_t>& neighbors(std::size_t u) const;
  bool adjacent(std::size_t u, std::size_t v) const;
  // Edges as (u, v) with u < v, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  std::vector<ClusterId> nodes_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

// Partition of some index set into blocks. Blocks are sorted internally and
// ordered by their smallest element.
struct Decomposition {
  std::vector<std::vector<std::size_t>> blocks;

  std::size_t size() const { return blocks.size(); }
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

ConfusabilityGraph build_graph(const JointRange& jr, const Quantization& q);

// Connected components by breadth-first search. Blocks hold node indices.
Decomposition finest_decomposition(const ConfusabilityGraph& g);

// Number of connected components of build_graph(jr, q).
std::size_t component_count(const JointRange& jr, const Quantization& q);

// log2 of component_count(jr, q).
double maximin_information(const JointRange& jr, const Quantization& q);

// Finest overlap partition of [[S]] computed directly by union-find: all
// s-values in a cluster's conditional range end up in the same block. Blocks
// hold s indices.
Decomposition overlap_partition_oracle(const JointRange& jr,
                                       const Quantization& q);

// Rewrites a decomposition over cluster nodes of q as blocks of x indices.
Decomposition expand_to_x(const Decomposition& node_dec, const Quantization& q);

// Starting from the finest decomposition of the singleton graph (blocks of x
// indices), fuses every block that meets a common cluster of q. The result,
// in x indices, equals expand_to_x(finest_decomposition(build_graph(jr, q))).
// Throws ContractViolation when `dec` does not partition q's X-alphabet.
Decomposition merge_update(const Decomposition& dec, const Quantization& q);

}  // namespace nsp

#endif  // NSP_CONFUSABILITY_GRAPH_H_
