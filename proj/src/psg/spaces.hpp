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

#ifndef PSG_SPACES_HPP_
#define PSG_SPACES_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "psg/numeric.hpp"
#include "psg/words.hpp"

namespace psg {

enum class Backend { kFreeGroupTree, kFreeProductTree, kFiniteHypGraph };
std::string to_string(Backend b);

// Tree vertices carry a word (reduced word, or coset representative with the
// factor index in `tag`); graph vertices carry their id in `tag`.
struct Point {
  Element word;
  uint32_t tag = 0;

  bool operator==(const Point& o) const { return tag == o.tag && word == o.word; }
  std::strong_ordering operator<=>(const Point& o) const {
    if (auto c = word <=> o.word; c != 0) return c;
    return tag <=> o.tag;
  }
};

struct PointHash {
  size_t operator()(const Point& p) const { return p.word.hash() * 31 + p.tag; }
};

struct SpaceConstants {
  Rational edge_length = 1;  // trees: rho0; graphs: 1
  Length delta;
  bool delta_sampled = false;
  Rational rho0 = 1;
  Rational kappa0 = 1;
  uint64_t n0 = 1;

  Rational delta_abs() const { return delta.scaled(edge_length); }
  Rational abs(Length l) const { return l.scaled(edge_length); }
};

struct SpaceOptions {
  std::optional<Rational> rho0;
  std::optional<Rational> kappa0;
  uint64_t n0 = 1;
};

class ActionSpace {
 public:
  virtual ~ActionSpace() = default;

  virtual Backend backend() const = 0;
  bool is_tree() const { return backend() != Backend::kFiniteHypGraph; }
  const Presentation& group() const { return *group_; }
  const std::shared_ptr<const Presentation>& group_ptr() const { return group_; }
  const SpaceConstants& constants() const { return constants_; }

  virtual Point base_point() const = 0;
  // Throws kInvalidArgument for points that are not canonical vertices.
  virtual void validate(const Point& x) const = 0;
  virtual Length dist(const Point& x, const Point& y) const = 0;
  virtual Point act(const Element& g, const Point& x) const = 0;
  virtual std::vector<Point> geodesic(const Point& x, const Point& y) const = 0;
  // The point at distance k (whole edges) from x on geodesic(x, y).
  virtual Point step_toward(const Point& x, const Point& y, int64_t k) const;
  // Throws kUnsupported at vertices of infinite degree.
  virtual std::vector<Point> neighbors(const Point& x) const = 0;
  // Points at distance exactly r from c. On infinite trees with a nonempty
  // scope, only points on geodesics from c to scope points are returned; an
  // empty scope asks for the full sphere, which needs finite degree.
  virtual std::vector<Point> sphere(const Point& c, Length r, std::span<const Point> scope) const;
  // |B(c, r)| when finite.
  virtual std::optional<uint64_t> ball_size(const Point& c, Length r) const = 0;
  // Every vertex, finite graphs only.
  virtual std::vector<Point> all_points() const;

  virtual std::string format_point(const Point& x) const = 0;
  virtual Point parse_point(std::string_view text) const = 0;

  Length gromov_product(const Point& p, const Point& q, const Point& x) const {
    return Length::halves((dist(p, x) + dist(q, x) - dist(p, q)).half_units() / 2);
  }

 protected:
  ActionSpace(std::shared_ptr<const Presentation> group, SpaceConstants constants)
      : group_(std::move(group)), constants_(std::move(constants)) {}
  void check_group(const Element& g) const;

  std::shared_ptr<const Presentation> group_;
  SpaceConstants constants_;
};

using SpacePtr = std::shared_ptr<const ActionSpace>;

SpacePtr make_free_group_tree(unsigned rank, const SpaceOptions& opts = {});
// Bass-Serre tree of A*B with trivial edge group; exactly two factors.
SpacePtr make_free_product_tree(std::vector<uint32_t> orders, const SpaceOptions& opts = {});

struct GraphSpec {
  uint32_t vertices = 0;
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  std::vector<std::vector<uint32_t>> generators;  // permutations of the vertex set
};
// {"vertices": n, "edges": [[i,j],...], "generators": [[...],...]}
GraphSpec parse_graph_spec(std::string_view json_text);
std::string graph_spec_to_json(const GraphSpec& spec);

struct DeltaOptions {
  bool sampled = false;
  uint64_t samples = 0;
  uint64_t seed = 0;
};

// The group is the free group on the permutation generators acting through
// them. Without generators a rank-one free group acting trivially is used.
SpacePtr make_hyp_graph(const GraphSpec& spec, const SpaceOptions& opts = {},
                        const DeltaOptions& delta = {});

// Four-point constant of a finite graph: the least delta with
// (p,r)_x >= min{(p,q)_x, (q,r)_x} - delta over all (or sampled) quadruples.
Length estimate_delta(const ActionSpace& graph, const DeltaOptions& opts = {});

}  // namespace psg

#endif  // PSG_SPACES_HPP_
