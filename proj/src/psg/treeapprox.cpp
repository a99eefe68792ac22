// Copyright 2026 The psgrowth Authors
//
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


#include "psg/treeapprox.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace psg {

namespace {
constexpr size_t kMaxSamples = 20000;
}

uint32_t ApproximationTree::sample_on_leg(uint32_t leg, int64_t depth_edges) const {
  if (leg >= targets_.size()) fail(ErrorCode::kInvalidArgument, "leg out of range");
  uint32_t first = leg_start_[leg];
  uint32_t end = leg + 1 < leg_start_.size() ? leg_start_[leg + 1] : static_cast<uint32_t>(samples_.size());
  if (depth_edges < 0 || first + depth_edges >= end) fail(ErrorCode::kInvalidArgument, "depth beyond the leg");
  return first + static_cast<uint32_t>(depth_edges);
}

uint32_t ApproximationTree::ancestor_at(uint32_t sample, Length depth) const {
  uint32_t n = samples_.at(sample).node;
  if (depth > nodes_[n].depth || depth < Length()) fail(ErrorCode::kInvalidArgument, "depth beyond the sample");
  while (nodes_[n].depth > depth) n = static_cast<uint32_t>(nodes_[n].parent);
  return n;
}

Length ApproximationTree::tree_dist(uint32_t a, uint32_t b) const {
  uint32_t x = samples_.at(a).node;
  uint32_t y = samples_.at(b).node;
  Length total;
  while (x != y) {
    if (nodes_[x].depth >= nodes_[y].depth) {
      uint32_t p = static_cast<uint32_t>(nodes_[x].parent);
      total += nodes_[x].depth - nodes_[p].depth;
      x = p;
    } else {
      uint32_t p = static_cast<uint32_t>(nodes_[y].parent);
      total += nodes_[y].depth - nodes_[p].depth;
      y = p;
    }
  }
  return total;
}

std::vector<Length> ApproximationTree::tree_row(uint32_t a) const {
  // Bottleneck of the spanning tree from a gives the branch depth.
  std::vector<Length> branch(samples_.size(), Length::infinity());
  std::vector<uint32_t> stack{a};
  branch[a] = samples_[a].depth;
  std::vector<bool> seen(samples_.size(), false);
  seen[a] = true;
  while (!stack.empty()) {
    uint32_t v = stack.back();
    stack.pop_back();
    for (auto [w, weight] : span_[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      branch[w] = std::min(branch[v], weight);
      stack.push_back(w);
    }
  }
  std::vector<Length> out(samples_.size());
  for (size_t b = 0; b < samples_.size(); ++b) {
    out[b] = samples_[a].depth + samples_[b].depth - branch[b] * 2;
  }
  return out;
}

ApproximationTree approximate_tree(SpacePtr space, const Point& x0, const std::vector<Point>& targets) {
  if (targets.empty()) fail(ErrorCode::kInvalidArgument, "tree approximation needs at least one target");
  space->validate(x0);
  ApproximationTree t;
  t.space_ = space;
  t.x0_ = x0;
  t.targets_ = targets;
  for (uint32_t leg = 0; leg < targets.size(); ++leg) {
    space->validate(targets[leg]);
    t.leg_start_.push_back(static_cast<uint32_t>(t.samples_.size()));
    std::vector<Point> path = space->geodesic(x0, targets[leg]);
    for (size_t s = 0; s < path.size(); ++s) {
      t.samples_.push_back({path[s], leg, Length::edges(static_cast<int64_t>(s)), 0, 0, Length()});
    }
    if (t.samples_.size() > kMaxSamples) fail(ErrorCode::kBudgetExceeded, "too many geodesic vertices");
  }
  const size_t m = t.samples_.size();
  auto gp = [&](size_t p, size_t q) {
    const TreeSample& a = t.samples_[p];
    const TreeSample& b = t.samples_[q];
    return Length::halves((a.depth + b.depth - space->dist(a.point, b.point)).half_units() / 2);
  };

  // Prim's algorithm for a maximum spanning tree under (p, q)_{x0}.
  std::vector<Length> key(m, Length::halves(-1));
  std::vector<uint32_t> from(m, 0);
  std::vector<bool> done(m, false);
  t.span_.assign(m, {});
  t.nodes_.push_back({-1, Length()});
  t.samples_[0].node = 0;
  done[0] = true;
  for (size_t q = 1; q < m; ++q) key[q] = gp(0, q);
  for (size_t step = 1; step < m; ++step) {
    size_t p = m;
    for (size_t q = 0; q < m; ++q) {
      if (!done[q] && (p == m || key[q] > key[p])) p = q;
    }
    done[p] = true;
    uint32_t q = from[p];
    Length w = key[p];
    t.span_[p].push_back({q, w});
    t.span_[q].push_back({static_cast<uint32_t>(p), w});
    TreeSample& s = t.samples_[p];
    s.attach = q;
    s.glue = w;
    uint32_t n = t.ancestor_at(q, w);
    for (Length d = w + Length::halves(1); d <= s.depth; d += Length::halves(1)) {
      t.nodes_.push_back({static_cast<int64_t>(n), d});
      n = static_cast<uint32_t>(t.nodes_.size() - 1);
    }
    s.node = n;
    for (size_t r = 0; r < m; ++r) {
      if (done[r]) continue;
      Length g = gp(p, r);
      if (g > key[r]) {
        key[r] = g;
        from[r] = static_cast<uint32_t>(p);
      }
    }
  }
  return t;
}

std::string ApproximationTree::to_json() const {
  const size_t n = nodes_.size();
  std::vector<int> children(n, 0);
  std::vector<bool> keep(n, false);
  keep[0] = true;
  for (size_t v = 1; v < n; ++v) ++children[static_cast<size_t>(nodes_[v].parent)];
  for (const TreeSample& s : samples_) keep[s.node] = true;
  for (size_t v = 0; v < n; ++v) {
    if (children[v] != 1) keep[v] = true;
  }
  std::vector<int64_t> id(n, -1);
  nlohmann::json vertices = nlohmann::json::array();
  nlohmann::json parent = nlohmann::json::array();
  nlohmann::json edge = nlohmann::json::array();
  const Rational& unit = space_->constants().edge_length;
  for (size_t v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    id[v] = static_cast<int64_t>(vertices.size());
    size_t p = v;
    while (p != 0 && (p == v || !keep[p])) p = static_cast<size_t>(nodes_[p].parent);
    vertices.push_back({{"id", id[v]}, {"depth", to_string(nodes_[v].depth.scaled(unit))}});
    if (v == 0) {
      parent.push_back(nullptr);
      edge.push_back("0");
    } else {
      parent.push_back(id[p]);
      edge.push_back(to_string((nodes_[v].depth - nodes_[p].depth).scaled(unit)));
    }
  }
  nlohmann::json images = nlohmann::json::array();
  for (const TreeSample& s : samples_) {
    images.push_back({{"leg", s.leg},
                      {"point", space_->format_point(s.point)},
                      {"depth", to_string(s.depth.scaled(unit))},
                      {"vertex", id[s.node]}});
  }
  nlohmann::json j;
  j["vertices"] = vertices;
  j["parent"] = parent;
  j["edge_length"] = edge;
  j["f_images"] = images;
  return j.dump();
}

namespace {

bool within_bound(Length shrink, Length delta, uint64_t n) {
  if (shrink <= Length()) return true;
  if (delta <= Length()) return false;
  Rational exponent = Rational(shrink.half_units(), 2 * delta.half_units()) - 1;
  return pow2_leq(exponent, n);
}

}  // namespace

DistortionReport distortion_report(const ApproximationTree& approx) {
  const ActionSpace& space = *approx.space();
  const auto& samples = approx.samples();
  DistortionReport r;
  r.delta_used = space.constants().delta;
  for (uint32_t a = 0; a < samples.size(); ++a) {
    std::vector<Length> row = approx.tree_row(a);
    for (uint32_t b = a + 1; b < samples.size(); ++b) {
      Length d = space.dist(samples[a].point, samples[b].point);
      r.max_shrink = std::max(r.max_shrink, d - row[b]);
      r.max_expansion = std::max(r.max_expansion, row[b] - d);
      ++r.pairs;
    }
  }
  const uint64_t n = approx.targets().size();
  r.ok = r.max_expansion <= Length() && within_bound(r.max_shrink, r.delta_used, n);
  if (!r.ok && space.constants().delta_sampled) {
    r.delta_rechecked = true;
    r.delta_used = estimate_delta(space, {});
    r.ok = r.max_expansion <= Length() && within_bound(r.max_shrink, r.delta_used, n);
  }
  double delta_abs = to_double(r.delta_used.scaled(space.constants().edge_length));
  r.bound = 2 * delta_abs * (std::log2(static_cast<double>(n)) + 1);
  return r;
}

}  // namespace psg
