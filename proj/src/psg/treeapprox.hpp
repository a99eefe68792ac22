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


// Tree approximation of a star of geodesics [x0, x_i].

#ifndef PSG_TREEAPPROX_HPP_
#define PSG_TREEAPPROX_HPP_

#include <string>
#include <vector>

#include "psg/spaces.hpp"

namespace psg {

struct TreeSample {
  Point point;
  uint32_t leg = 0;
  Length depth;        // dist(x0, point)
  uint32_t node = 0;   // index into ApproximationTree::nodes
  uint32_t attach = 0; // sample it was glued to (itself for x0)
  Length glue;         // depth of the branch point
};

struct TreeNode {
  int64_t parent = -1;
  Length depth;  // always a multiple of half an edge
};

class ApproximationTree {
 public:
  const Point& x0() const { return x0_; }
  const std::vector<Point>& targets() const { return targets_; }
  const std::vector<TreeSample>& samples() const { return samples_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const SpacePtr& space() const { return space_; }

  // Index of the first sample of leg i at depth d.
  uint32_t sample_on_leg(uint32_t leg, int64_t depth_edges) const;
  // Tree node at depth d on [f(x0), f(sample)]; d <= depth of the sample.
  uint32_t ancestor_at(uint32_t sample, Length depth) const;
  Length tree_dist(uint32_t a, uint32_t b) const;
  // Tree distance from sample a to every sample.
  std::vector<Length> tree_row(uint32_t a) const;

  std::string to_json() const;

 private:
  friend ApproximationTree approximate_tree(SpacePtr space, const Point& x0, const std::vector<Point>& targets);

  SpacePtr space_;
  Point x0_;
  std::vector<Point> targets_;
  std::vector<TreeSample> samples_;
  std::vector<TreeNode> nodes_;
  std::vector<uint32_t> leg_start_;
  // Spanning-tree adjacency over samples with bottleneck weights.
  std::vector<std::vector<std::pair<uint32_t, Length>>> span_;
};

// Samples are all vertices on geodesic(x0, t) for every target t.
ApproximationTree approximate_tree(SpacePtr space, const Point& x0, const std::vector<Point>& targets);

struct DistortionReport {
  Length max_shrink;
  Length max_expansion;
  double bound = 0;        // 2 delta (log2 n + 1), for display only
  bool ok = false;         // exact comparison against the bound
  bool delta_rechecked = false;
  Length delta_used;
  uint64_t pairs = 0;
};

DistortionReport distortion_report(const ApproximationTree& approx);

}  // namespace psg

#endif  // PSG_TREEAPPROX_HPP_
