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

#include "nsp/confusability_graph.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "nsp/errors.h"

namespace nsp {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Groups 0..n-1 by root; blocks come out ordered by smallest element.
Decomposition blocks_from(UnionFind& uf, std::size_t n) {
  std::vector<std::size_t> block_of(n, n);
  Decomposition dec;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = uf.find(i);
    if (block_of[r] == n) {
      block_of[r] = dec.blocks.size();
      dec.blocks.emplace_back();
    }
    dec.blocks[block_of[r]].push_back(i);
  }
  return dec;
}

}  // namespace

ConfusabilityGraph::ConfusabilityGraph(
    std::vector<ClusterId> nodes,
    std::vector<std::vector<std::size_t>> adjacency)
    : nodes_(std::move(nodes)), adjacency_(std::move(adjacency)) {
  if (adjacency_.size() != nodes_.size()) {
    throw ContractViolation("adjacency does not match node count");
  }
}

const std::vector<std::size_t>& ConfusabilityGraph::neighbors(
    std::size_t u) const {
  if (u >= adjacency_.size()) throw IndexError("graph node out of range");
  return adjacency_[u];
}

bool ConfusabilityGraph::adjacent(std::size_t u, std::size_t v) const {
  const auto& n = neighbors(u);
  return std::binary_search(n.begin(), n.end(), v);
}

std::vector<std::pair<std::size_t, std::size_t>> ConfusabilityGraph::edges()
    const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    for (std::size_t v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

ConfusabilityGraph build_graph(const JointRange& jr, const Quantization& q) {
  if (q.x_size() != jr.x_size()) {
    throw ContractViolation("quantization does not match the joint range");
  }
  const std::size_t n = q.size();
  std::vector<ConditionalRange> ranges;
  std::vector<ClusterId> nodes;
  ranges.reserve(n);
  nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ranges.push_back(cond_range_cluster(jr, q.members(i)));
    nodes.push_back(q.id(i));
  }
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (ranges[u].intersects(ranges[v])) {
        adjacency[u].push_back(v);
        adjacency[v].push_back(u);
      }
    }
  }
  for (auto& a : adjacency) std::sort(a.begin(), a.end());
  return ConfusabilityGraph(std::move(nodes), std::move(adjacency));
}

Decomposition finest_decomposition(const ConfusabilityGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> visited(n, false);
  Decomposition dec;
  for (std::size_t start = 0; start < n; ++start) {
    if (visited[start]) continue;
    std::vector<std::size_t> block;
    std::queue<std::size_t> frontier;
    frontier.push(start);
    visited[start] = true;
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      block.push_back(u);
      for (std::size_t v : g.neighbors(u)) {
        if (!visited[v]) {
          visited[v] = true;
          frontier.push(v);
        }
      }
    }
    std::sort(block.begin(), block.end());
    dec.blocks.push_back(std::move(block));
  }
  return dec;
}

std::size_t component_count(const JointRange& jr, const Quantization& q) {
  return finest_decomposition(build_graph(jr, q)).size();
}

double maximin_information(const JointRange& jr, const Quantization& q) {
  return std::log2(static_cast<double>(component_count(jr, q)));
}

Decomposition overlap_partition_oracle(const JointRange& jr,
                                       const Quantization& q) {
  UnionFind uf(jr.s_size());
  for (const auto& c : q.clusters()) {
    const auto members = cond_range_cluster(jr, c).to_vector();
    for (std::size_t i = 1; i < members.size(); ++i) {
      uf.unite(members[0], members[i]);
    }
  }
  return blocks_from(uf, jr.s_size());
}

Decomposition expand_to_x(const Decomposition& node_dec,
                          const Quantization& q) {
  Decomposition out;
  for (const auto& block : node_dec.blocks) {
    std::vector<std::size_t> xs;
    for (std::size_t node : block) {
      const auto& m = q.members(node);
      xs.insert(xs.end(), m.begin(), m.end());
    }
    std::sort(xs.begin(), xs.end());
    out.blocks.push_back(std::move(xs));
  }
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return out;
}

Decomposition merge_update(const Decomposition& dec, const Quantization& q) {
  const std::size_t n = q.x_size();
  std::vector<std::size_t> block_of(n, n);
  for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
    for (std::size_t x : dec.blocks[b]) {
      if (x >= n || block_of[x] != n) {
        throw ContractViolation(
            "decomposition does not partition the quantized alphabet");
      }
      block_of[x] = b;
    }
  }
  if (std::find(block_of.begin(), block_of.end(), n) != block_of.end()) {
    throw ContractViolation(
        "decomposition does not partition the quantized alphabet");
  }

  UnionFind uf(dec.blocks.size());
  for (const auto& c : q.clusters()) {
    for (std::size_t i = 1; i < c.size(); ++i) {
      uf.unite(block_of[c[0]], block_of[c[i]]);
    }
  }
  const Decomposition fused = blocks_from(uf, dec.blocks.size());
  Decomposition out;
  for (const auto& group : fused.blocks) {
    std::vector<std::size_t> xs;
    for (std::size_t b : group) {
      xs.insert(xs.end(), dec.blocks[b].begin(), dec.blocks[b].end());
    }
    std::sort(xs.begin(), xs.end());
    out.blocks.push_back(std::move(xs));
  }
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return out;
}

}  // namespace nsp
