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

#include "nsp/greedy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "nsp/errors.h"
#include "nsp/measures.h"

namespace nsp {
namespace {

// Lagrangian changes within this band count as zero, so float noise on an
// exact tie never passes for a strict descent.
constexpr double kDescentEps = 1e-12;
// Tolerance for ties between candidate scores.
constexpr double kTieEps = 1e-9;

// Positions of the (up to) three largest entries of `v`, largest first; ties
// go to the lower position.
template <typename T, typename Better>
std::vector<std::size_t> top3(const std::vector<T>& v, Better better) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto it = out.begin();
    while (it != out.end() && !better(v[i], v[*it])) ++it;
    out.insert(it, i);
    if (out.size() > 3) out.pop_back();
  }
  return out;
}

template <typename T>
std::optional<T> first_excluding(const std::vector<std::size_t>& top,
                                 const std::vector<T>& v, std::size_t i,
                                 std::size_t j) {
  for (std::size_t p : top) {
    if (p != i && p != j) return v[p];
  }
  return std::nullopt;
}

// Working copy of a quantization with per-cluster caches. Evaluates the
// measures of the quantization that would result from merging two clusters
// exactly, without materializing it.
class State {
 public:
  State(const JointRange& jr, const LagrangianConfig& cfg)
      : jr_(jr), cfg_(cfg), q_(Quantization::singletons(jr, cfg.policy)) {
    for (XIndex x = 0; x < jr.x_size(); ++x) {
      ranges_.push_back(jr.cond_range(x));
      range_size_.push_back(ranges_.back().count());
      size_.push_back(1);
      dbar_.push_back(0.0);
    }
    refresh();
  }

  const Quantization& q() const { return q_; }
  std::size_t size() const { return q_.size(); }
  const ConditionalRange& range(std::size_t i) const { return ranges_[i]; }
  std::size_t range_size(std::size_t i) const { return range_size_[i]; }
  std::size_t cluster_size(std::size_t i) const { return size_[i]; }

  double utility() const { return utility_from(max_size(), max_dbar()); }
  double b0() const { return std::log2(static_cast<double>(min_range())); }

  struct Candidate {
    std::size_t merged_size;
    double merged_dbar;
    std::size_t merged_range;
    double utility;
    double b0;
  };

  Candidate evaluate(std::size_t i, std::size_t j) const {
    Candidate c{};
    c.merged_size = size_[i] + size_[j];
    c.merged_dbar = distortion_of_union(i, j);
    ConditionalRange r = ranges_[i];
    r |= ranges_[j];
    c.merged_range = r.count();

    std::size_t ms = c.merged_size;
    if (auto o = first_excluding(top_size_, size_, i, j)) ms = std::max(ms, *o);
    double md = c.merged_dbar;
    if (auto o = first_excluding(top_dbar_, dbar_, i, j)) md = std::max(md, *o);
    std::size_t mr = c.merged_range;
    if (auto o = first_excluding(bottom_range_, range_size_, i, j)) {
      mr = std::min(mr, *o);
    }
    c.utility = utility_from(ms, md);
    c.b0 = std::log2(static_cast<double>(mr));
    return c;
  }

  double distortion_of_union(std::size_t i, std::size_t j) const {
    if (cfg_.utility.kind != UtilityKind::kMaxDistortion) return 0.0;
    std::vector<XIndex> u;
    const auto& a = q_.members(i);
    const auto& b = q_.members(j);
    u.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return members_distortion(u, q_.values(), cfg_.policy,
                              cfg_.utility.distance);
  }

  // Fuses positions i and j; the result sits at min(i, j).
  void merge(std::size_t i, std::size_t j) {
    if (j < i) std::swap(i, j);
    q_.merge_positions(i, j);
    ranges_[i] |= ranges_[j];
    range_size_[i] = ranges_[i].count();
    size_[i] += size_[j];
    erase_at(ranges_, j);
    erase_at(range_size_, j);
    erase_at(size_, j);
    erase_at(dbar_, j);
    if (cfg_.utility.kind == UtilityKind::kMaxDistortion) {
      dbar_[i] = members_distortion(q_.members(i), q_.values(), cfg_.policy,
                                    cfg_.utility.distance);
    }
    refresh();
  }

 private:
  template <typename T>
  static void erase_at(std::vector<T>& v, std::size_t j) {
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(j));
  }

  void refresh() {
    top_size_ = top3(size_, [](std::size_t a, std::size_t b) { return a > b; });
    top_dbar_ = top3(dbar_, [](double a, double b) { return a > b; });
    bottom_range_ =
        top3(range_size_, [](std::size_t a, std::size_t b) { return a < b; });
  }

  std::size_t max_size() const { return size_[top_size_[0]]; }
  double max_dbar() const { return dbar_[top_dbar_[0]]; }
  std::size_t min_range() const { return range_size_[bottom_range_[0]]; }

  double utility_from(std::size_t max_size, double max_dbar) const {
    if (cfg_.utility.kind == UtilityKind::kResolution) {
      return std::log2(static_cast<double>(jr_.x_size())) -
             std::log2(static_cast<double>(max_size));
    }
    return max_dbar == 0.0 ? 0.0 : -max_dbar;
  }

  const JointRange& jr_;
  const LagrangianConfig& cfg_;
  Quantization q_;
  std::vector<ConditionalRange> ranges_;
  std::vector<std::size_t> range_size_;
  std::vector<std::size_t> size_;
  std::vector<double> dbar_;
  std::vector<std::size_t> top_size_;
  std::vector<std::size_t> top_dbar_;
  std::vector<std::size_t> bottom_range_;
};

TraceEntry make_entry(const JointRange& jr, const LagrangianConfig& cfg,
                      std::size_t t, const Quantization& q, double lagrangian,
                      std::optional<double> delta_l, bool accepted,
                      std::vector<std::pair<ClusterId, ClusterId>> merged) {
  const std::size_t components = component_count(jr, q);
  return TraceEntry{t,
                    q,
                    lagrangian,
                    delta_l,
                    accepted,
                    std::move(merged),
                    components,
                    l0(jr, q),
                    std::log2(static_cast<double>(components)),
                    utility(jr, q, cfg.utility)};
}

GreedyResult finish(const JointRange& jr, Quantization q,
                    std::vector<TraceEntry> trace, TerminationReason reason) {
  Decomposition dec = expand_to_x(finest_decomposition(build_graph(jr, q)), q);
  return GreedyResult{std::move(q), std::move(trace), std::move(dec), reason};
}

// Component bookkeeping shared by the two component-joining algorithms.
// comp_[i] labels the component of cluster position i.
class Components {
 public:
  explicit Components(const JointRange& jr) {
    const Quantization s = Quantization::singletons(jr, CodewordPolicy::kCentroid);
    const Decomposition dec = finest_decomposition(build_graph(jr, s));
    comp_.assign(jr.x_size(), 0);
    for (std::size_t b = 0; b < dec.size(); ++b) {
      for (std::size_t x : dec.blocks[b]) comp_[x] = b;
      comp_size_.push_back(dec.blocks[b].size());
    }
    count_ = dec.size();
  }

  std::size_t count() const { return count_; }
  std::size_t of(std::size_t pos) const { return comp_[pos]; }
  std::size_t size_of(std::size_t pos) const { return comp_size_[comp_[pos]]; }

  // Mirrors State::merge(i, j) for positions i and j in different components.
  void merge(std::size_t i, std::size_t j) {
    if (j < i) std::swap(i, j);
    const std::size_t keep = comp_[i];
    const std::size_t drop = comp_[j];
    if (keep != drop) {
      comp_size_[keep] += comp_size_[drop];
      comp_size_[drop] = 0;
      for (auto& c : comp_) {
        if (c == drop) c = keep;
      }
      --count_;
    }
    comp_.erase(comp_.begin() + static_cast<std::ptrdiff_t>(j));
  }

 private:
  std::vector<std::size_t> comp_;
  std::vector<std::size_t> comp_size_;
  std::size_t count_ = 0;
};

// Orders a pair of component sizes as (larger, smaller).
std::pair<std::size_t, std::size_t> size_pair(std::size_t a, std::size_t b) {
  return {std::max(a, b), std::min(a, b)};
}

// -1 when a is better than b, +1 when worse, 0 within tolerance.
int compare_lower(double a, double b) {
  if (a < b - kTieEps) return -1;
  if (a > b + kTieEps) return 1;
  return 0;
}

}  // namespace

void validate_config(const JointRange& jr, const LagrangianConfig& cfg) {
  if (!std::isfinite(cfg.lambda) || cfg.lambda < 0.0) {
    throw ConfigError("lambda must be a finite non-negative number");
  }
  check_utility_available(jr, cfg.utility);
}

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kMinL0:
      return "l0";
    case Algorithm::kMinIStar:
      return "istar";
    case Algorithm::kMinL0ZeroIStar:
      return "l0-zero-istar";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& text) {
  if (text == "l0") return Algorithm::kMinL0;
  if (text == "istar") return Algorithm::kMinIStar;
  if (text == "l0-zero-istar") return Algorithm::kMinL0ZeroIStar;
  throw ConfigError("unknown algorithm '" + text + "'");
}

const char* to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::kDeltaLNonNegative:
      return "delta_l_non_negative";
    case TerminationReason::kFullyMerged:
      return "fully_merged";
    case TerminationReason::kSingleComponent:
      return "single_component";
    case TerminationReason::kNoEligibleMerge:
      return "no_eligible_merge";
  }
  return "unknown";
}

double lagrangian_l0(const JointRange& jr, const Quantization& q,
                     const LagrangianConfig& cfg) {
  return l0(jr, q) - cfg.lambda * utility(jr, q, cfg.utility);
}

double lagrangian_istar(const JointRange& jr, const Quantization& q,
                        const LagrangianConfig& cfg) {
  return maximin_information(jr, q) - cfg.lambda * utility(jr, q, cfg.utility);
}

GreedyResult algorithm1_min_l0(const JointRange& jr,
                               const LagrangianConfig& cfg) {
  validate_config(jr, cfg);
  State st(jr, cfg);
  const double hs = h0(jr.s_size());
  auto lagrangian = [&] { return hs - st.b0() - cfg.lambda * st.utility(); };

  std::vector<TraceEntry> trace;
  double l_prev = lagrangian();
  trace.push_back(make_entry(jr, cfg, 0, st.q(), l_prev, std::nullopt, true, {}));
  if (st.size() == 1) {
    return finish(jr, st.q(), std::move(trace), TerminationReason::kFullyMerged);
  }

  for (std::size_t t = 1;; ++t) {
    const Quantization previous = st.q();

    std::size_t min_range = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < st.size(); ++i) {
      min_range = std::min(min_range, st.range_size(i));
    }
    // Every member of Pi has the minimum range size, so canonical order is
    // ascending cluster id.
    std::set<ClusterId> pi;
    for (std::size_t i = 0; i < st.size(); ++i) {
      if (st.range_size(i) == min_range) pi.insert(st.q().id(i));
    }

    std::vector<std::pair<ClusterId, ClusterId>> merged;
    while (!pi.empty()) {
      const ClusterId x = *pi.begin();
      pi.erase(pi.begin());
      const std::size_t i = st.q().position(x);

      std::optional<std::size_t> best;
      State::Candidate best_c{};
      for (std::size_t j = 0; j < st.size(); ++j) {
        if (j == i || st.range(j) == st.range(i)) continue;
        const State::Candidate c = st.evaluate(i, j);
        if (!best) {
          best = j;
          best_c = c;
          continue;
        }
        // Higher utility first, then smaller merged cluster, then smaller id
        // (j ascends with id, so keeping the incumbent handles the last key).
        const int cmp = compare_lower(-c.utility, -best_c.utility);
        if (cmp < 0 || (cmp == 0 && c.merged_size < best_c.merged_size)) {
          best = j;
          best_c = c;
        }
      }
      if (!best) continue;
      const ClusterId partner = st.q().id(*best);
      pi.erase(partner);
      merged.emplace_back(x, partner);
      st.merge(i, *best);
    }

    if (merged.empty()) {
      return finish(jr, previous, std::move(trace),
                    TerminationReason::kNoEligibleMerge);
    }
    const double l_now = lagrangian();
    const double delta = l_now - l_prev;
    if (delta >= -kDescentEps) {
      trace.push_back(make_entry(jr, cfg, t, st.q(), l_now, delta, false,
                                 std::move(merged)));
      return finish(jr, previous, std::move(trace),
                    TerminationReason::kDeltaLNonNegative);
    }
    trace.push_back(
        make_entry(jr, cfg, t, st.q(), l_now, delta, true, std::move(merged)));
    l_prev = l_now;
    if (st.size() == 1) {
      return finish(jr, st.q(), std::move(trace),
                    TerminationReason::kFullyMerged);
    }
  }
}

namespace {

enum class PairRule { kMaxUtility, kMinLagrangianChange };

struct PairChoice {
  std::size_t i;
  std::size_t j;
  State::Candidate c;
  double delta;
};

// Best pair of clusters lying in different components. Returns nullopt when
// only one component is left.
std::optional<PairChoice> choose_pair(const State& st, const Components& comps,
                                      const LagrangianConfig& cfg,
                                      PairRule rule) {
  const double u_old = st.utility();
  const double b0_old = st.b0();
  std::optional<PairChoice> best;
  std::vector<double> keys_best;

  for (std::size_t i = 0; i < st.size(); ++i) {
    for (std::size_t j = i + 1; j < st.size(); ++j) {
      if (comps.of(i) == comps.of(j)) continue;
      const State::Candidate c = st.evaluate(i, j);
      double primary;
      double secondary = 0.0;
      double delta;
      if (rule == PairRule::kMaxUtility) {
        primary = cfg.utility.kind == UtilityKind::kResolution
                      ? static_cast<double>(c.merged_size)
                      : c.merged_dbar;
        delta = 0.0;
      } else {
        delta = -(c.b0 - b0_old) + cfg.lambda * (u_old - c.utility);
        primary = delta;
        secondary = static_cast<double>(st.range_size(i) + st.range_size(j));
      }
      const auto sizes = size_pair(comps.size_of(i), comps.size_of(j));
      // Larger components win, hence the negation.
      const std::vector<double> keys = {primary, secondary,
                                        -static_cast<double>(sizes.first),
                                        -static_cast<double>(sizes.second)};
      bool better = !best;
      if (!better) {
        for (std::size_t k = 0; k < keys.size(); ++k) {
          const int cmp = compare_lower(keys[k], keys_best[k]);
          if (cmp != 0) {
            better = cmp < 0;
            break;
          }
        }
      }
      if (better) {
        best = PairChoice{i, j, c, delta};
        keys_best = keys;
      }
    }
  }
  return best;
}

GreedyResult run_component_joining(const JointRange& jr,
                                   const LagrangianConfig& cfg,
                                   PairRule rule) {
  validate_config(jr, cfg);
  State st(jr, cfg);
  Components comps(jr);
  const double hs = h0(jr.s_size());

  auto lagrangian = [&] {
    if (rule == PairRule::kMaxUtility) {
      return std::log2(static_cast<double>(comps.count())) -
             cfg.lambda * st.utility();
    }
    return hs - st.b0() - cfg.lambda * st.utility();
  };

  std::vector<TraceEntry> trace;
  double l_prev = lagrangian();
  trace.push_back(make_entry(jr, cfg, 0, st.q(), l_prev, std::nullopt, true, {}));

  for (std::size_t t = 1;; ++t) {
    const std::optional<PairChoice> choice =
        choose_pair(st, comps, cfg, rule);
    if (!choice) {
      return finish(jr, st.q(), std::move(trace),
                    TerminationReason::kSingleComponent);
    }
    const std::vector<std::pair<ClusterId, ClusterId>> merged = {
        {st.q().id(choice->i), st.q().id(choice->j)}};

    if (rule == PairRule::kMaxUtility) {
      const double p = static_cast<double>(comps.count());
      const double delta = std::log2((p - 1.0) / p) -
              cfg.lambda * (choice->c.utility - st.utility());
      if (delta >= -kDescentEps) {
        const Quantization rejected =
            st.q().merged(merged[0].first, merged[0].second);
        trace.push_back(make_entry(jr, cfg, t, rejected, l_prev + delta, delta,
                                   false, merged));
        return finish(jr, st.q(), std::move(trace),
                      TerminationReason::kDeltaLNonNegative);
      }
    }

    comps.merge(choice->i, choice->j);
    st.merge(choice->i, choice->j);
    const double l_now = lagrangian();
    trace.push_back(make_entry(jr, cfg, t, st.q(), l_now, l_now - l_prev, true,
                               merged));
    l_prev = l_now;
  }
}

}  // namespace

GreedyResult algorithm2_min_istar(const JointRange& jr,
                                  const LagrangianConfig& cfg) {
  return run_component_joining(jr, cfg, PairRule::kMaxUtility);
}

GreedyResult algorithm3_l0_zero_istar(const JointRange& jr,
                                      const LagrangianConfig& cfg) {
  return run_component_joining(jr, cfg, PairRule::kMinLagrangianChange);
}

GreedyResult run_greedy(Algorithm algorithm, const JointRange& jr,
                        const LagrangianConfig& cfg) {
  switch (algorithm) {
    case Algorithm::kMinL0:
      return algorithm1_min_l0(jr, cfg);
    case Algorithm::kMinIStar:
      return algorithm2_min_istar(jr, cfg);
    case Algorithm::kMinL0ZeroIStar:
      return algorithm3_l0_zero_istar(jr, cfg);
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace nsp
