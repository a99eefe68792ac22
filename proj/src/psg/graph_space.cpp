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

#include <algorithm>
#include <charconv>
#include <deque>
#include <random>

#include "psg/spaces.hpp"

namespace psg {
namespace {

constexpr uint32_t kMaxVertices = 4096;
constexpr uint16_t kUnreached = 0xffff;

class FiniteHypGraph final : public ActionSpace {
 public:
  FiniteHypGraph(const GraphSpec& spec, const SpaceOptions& opts, const DeltaOptions& dopts)
      : ActionSpace(Presentation::free_group(std::max<size_t>(1, spec.generators.size())), {}),
        n_(spec.vertices) {
    if (n_ == 0) fail(ErrorCode::kInvalidArgument, "graph needs at least one vertex");
    if (n_ > kMaxVertices) fail(ErrorCode::kUnsupported, "graph larger than 4096 vertices");
    adj_.resize(n_);
    for (auto [a, b] : spec.edges) {
      if (a >= n_ || b >= n_) fail(ErrorCode::kInvalidArgument, "edge endpoint out of range");
      if (a == b) fail(ErrorCode::kInvalidArgument, "self-loops are not allowed");
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
    for (auto& l : adj_) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    load_generators(spec);
    compute_distances();
    constants_.edge_length = 1;
    constants_.n0 = opts.n0;
    if (constants_.n0 < 1) fail(ErrorCode::kInvalidArgument, "N0 must be positive");
    constants_.delta = estimate_delta(*this, dopts);
    constants_.delta_sampled = dopts.sampled;
    Rational delta = constants_.delta_abs();
    if (opts.rho0) {
      constants_.rho0 = *opts.rho0;
    } else if (delta > 0) {
      constants_.rho0 = delta / constants_.n0;
    } else {
      fail(ErrorCode::kConfig, "graph with delta = 0 needs an explicit rho0");
    }
    if (constants_.rho0 <= 0) fail(ErrorCode::kInvalidArgument, "rho0 must be positive");
    Rational user = opts.kappa0.value_or(constants_.rho0);
    constants_.kappa0 = std::max(delta, user);
  }

  Backend backend() const override { return Backend::kFiniteHypGraph; }
  Point base_point() const override { return vertex(0); }

  void validate(const Point& x) const override {
    if (x.tag >= n_ || !x.word.is_identity()) fail(ErrorCode::kInvalidArgument, "not a vertex of this graph");
  }

  Length dist(const Point& x, const Point& y) const override {
    return Length::edges(d(x.tag, y.tag));
  }

  Point act(const Element& g, const Point& x) const override {
    check_group(g);
    uint32_t v = x.tag;
    const auto& s = g.syllables();
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
      const auto& perm = it->exp > 0 ? perms_[it->gen] : inv_perms_[it->gen];
      for (int32_t i = 0; i < std::abs(it->exp); ++i) v = perm[v];
    }
    return vertex(v);
  }

  std::vector<Point> geodesic(const Point& x, const Point& y) const override {
    std::vector<Point> path{x};
    uint32_t cur = x.tag;
    while (cur != y.tag) {
      uint16_t want = static_cast<uint16_t>(d(cur, y.tag) - 1);
      for (uint32_t nb : adj_[cur]) {
        if (d(nb, y.tag) == want) {
          cur = nb;
          break;
        }
      }
      path.push_back(vertex(cur));
    }
    return path;
  }

  std::vector<Point> neighbors(const Point& x) const override {
    std::vector<Point> out;
    for (uint32_t nb : adj_[x.tag]) out.push_back(vertex(nb));
    return out;
  }

  std::vector<Point> sphere(const Point& c, Length r, std::span<const Point>) const override {
    validate(c);
    std::vector<Point> out;
    for (uint32_t v = 0; v < n_; ++v) {
      if (Length::edges(d(c.tag, v)) == r) out.push_back(vertex(v));
    }
    return out;
  }

  std::optional<uint64_t> ball_size(const Point& c, Length r) const override {
    uint64_t count = 0;
    for (uint32_t v = 0; v < n_; ++v) {
      if (Length::edges(d(c.tag, v)) <= r) ++count;
    }
    return count;
  }

  std::vector<Point> all_points() const override {
    std::vector<Point> out;
    out.reserve(n_);
    for (uint32_t v = 0; v < n_; ++v) out.push_back(vertex(v));
    return out;
  }

  std::string format_point(const Point& x) const override { return "v" + std::to_string(x.tag); }

  Point parse_point(std::string_view text) const override {
    if (text.size() < 2 || text[0] != 'v') fail(ErrorCode::kParse, "graph vertex must look like 'v12'");
    uint32_t id = 0;
    auto [p, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), id);
    if (ec != std::errc() || p != text.data() + text.size() || id >= n_) {
      fail(ErrorCode::kParse, "bad graph vertex '" + std::string(text) + "'");
    }
    return vertex(id);
  }

  uint32_t size() const { return n_; }
  uint16_t d(uint32_t a, uint32_t b) const { return dist_[static_cast<size_t>(a) * n_ + b]; }

 private:
  Point vertex(uint32_t v) const { return {identity(*group_), v}; }

  void load_generators(const GraphSpec& spec) {
    for (const auto& perm : spec.generators) {
      if (perm.size() != n_) fail(ErrorCode::kInvalidArgument, "generator is not a permutation of the vertices");
      std::vector<uint32_t> inv(n_, n_);
      for (uint32_t v = 0; v < n_; ++v) {
        if (perm[v] >= n_ || inv[perm[v]] != n_) {
          fail(ErrorCode::kInvalidArgument, "generator is not a permutation of the vertices");
        }
        inv[perm[v]] = v;
      }
      for (uint32_t v = 0; v < n_; ++v) {
        for (uint32_t w : adj_[v]) {
          if (!std::binary_search(adj_[perm[v]].begin(), adj_[perm[v]].end(), perm[w])) {
            fail(ErrorCode::kInvalidArgument, "generator does not preserve adjacency");
          }
        }
      }
      perms_.push_back(perm);
      inv_perms_.push_back(std::move(inv));
    }
    if (perms_.empty()) {
      std::vector<uint32_t> id(n_);
      for (uint32_t v = 0; v < n_; ++v) id[v] = v;
      perms_.push_back(id);
      inv_perms_.push_back(id);
    }
  }

  void compute_distances() {
    dist_.assign(static_cast<size_t>(n_) * n_, kUnreached);
    std::deque<uint32_t> queue;
    for (uint32_t s = 0; s < n_; ++s) {
      uint16_t* row = &dist_[static_cast<size_t>(s) * n_];
      row[s] = 0;
      queue.assign(1, s);
      while (!queue.empty()) {
        uint32_t v = queue.front();
        queue.pop_front();
        for (uint32_t w : adj_[v]) {
          if (row[w] == kUnreached) {
            row[w] = static_cast<uint16_t>(row[v] + 1);
            queue.push_back(w);
          }
        }
      }
      for (uint32_t v = 0; v < n_; ++v) {
        if (row[v] == kUnreached) fail(ErrorCode::kInvalidArgument, "graph is disconnected");
      }
    }
  }

  uint32_t n_;
  std::vector<std::vector<uint32_t>> adj_;
  std::vector<std::vector<uint32_t>> perms_;
  std::vector<std::vector<uint32_t>> inv_perms_;
  std::vector<uint16_t> dist_;
};

}  // namespace

SpacePtr make_hyp_graph(const GraphSpec& spec, const SpaceOptions& opts, const DeltaOptions& delta) {
  return std::make_shared<FiniteHypGraph>(spec, opts, delta);
}

Length estimate_delta(const ActionSpace& space, const DeltaOptions& opts) {
  const auto* g = dynamic_cast<const FiniteHypGraph*>(&space);
  if (g == nullptr) {
    if (space.is_tree()) return Length();
    fail(ErrorCode::kUnsupported, "estimate_delta needs a finite graph");
  }
  const uint32_t n = g->size();
  // Gromov products in half edges: (p,q)_x = (d(p,x) + d(q,x) - d(p,q)) / 2,
  // so twice the product is an integer.
  auto gp2 = [&](uint32_t p, uint32_t q, uint32_t x) {
    return static_cast<int64_t>(g->d(p, x)) + g->d(q, x) - g->d(p, q);
  };
  int64_t worst2 = 0;
  if (opts.sampled) {
    std::mt19937_64 rng(opts.seed);
    for (uint64_t i = 0; i < opts.samples; ++i) {
      uint32_t x = static_cast<uint32_t>(rng() % n);
      uint32_t p = static_cast<uint32_t>(rng() % n);
      uint32_t q = static_cast<uint32_t>(rng() % n);
      uint32_t r = static_cast<uint32_t>(rng() % n);
      worst2 = std::max(worst2, std::min(gp2(p, q, x), gp2(q, r, x)) - gp2(p, r, x));
    }
  } else {
    std::vector<int64_t> table(static_cast<size_t>(n) * n);
    for (uint32_t x = 0; x < n; ++x) {
      for (uint32_t p = 0; p < n; ++p) {
        for (uint32_t q = 0; q < n; ++q) table[static_cast<size_t>(p) * n + q] = gp2(p, q, x);
      }
      for (uint32_t p = 0; p < n; ++p) {
        const int64_t* rp = &table[static_cast<size_t>(p) * n];
        for (uint32_t q = 0; q < n; ++q) {
          const int64_t a = rp[q];
          if (a <= worst2) continue;
          const int64_t* rq = &table[static_cast<size_t>(q) * n];
          for (uint32_t r = 0; r < n; ++r) {
            int64_t v = std::min(a, rq[r]) - rp[r];
            if (v > worst2) worst2 = v;
          }
        }
      }
    }
  }
  // worst2 is twice the defect, i.e. the defect in half edges.
  return Length::halves(worst2);
}

}  // namespace psg
