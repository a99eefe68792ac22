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
#include <cstdlib>

#include "psg/spaces.hpp"

namespace psg {
namespace {

SpaceConstants tree_constants(const SpaceOptions& opts) {
  SpaceConstants c;
  c.rho0 = opts.rho0.value_or(Rational(1));
  if (c.rho0 <= 0) fail(ErrorCode::kInvalidArgument, "rho0 must be positive");
  c.edge_length = c.rho0;
  c.kappa0 = opts.kappa0.value_or(c.rho0);
  if (c.kappa0 < c.rho0) fail(ErrorCode::kInvalidArgument, "kappa0 must be >= rho0 on trees");
  c.n0 = opts.n0;
  if (c.n0 < 1) fail(ErrorCode::kInvalidArgument, "N0 must be positive");
  return c;
}

// Vertices are reduced words; dist(u, v) = |u^-1 v|.
class FreeGroupTree final : public ActionSpace {
 public:
  FreeGroupTree(unsigned rank, const SpaceOptions& opts)
      : ActionSpace(Presentation::free_group(rank), tree_constants(opts)) {}

  Backend backend() const override { return Backend::kFreeGroupTree; }
  Point base_point() const override { return {identity(*group_), 0}; }

  void validate(const Point& x) const override {
    if (x.word.context() != group_.get() || x.tag != 0) {
      fail(ErrorCode::kInvalidArgument, "not a vertex of this tree");
    }
  }

  Length dist(const Point& x, const Point& y) const override {
    const auto& a = x.word.syllables();
    const auto& b = y.word.syllables();
    uint64_t common = 0;
    size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) {
      common += static_cast<uint64_t>(std::abs(a[i].exp));
      ++i;
    }
    if (i < a.size() && i < b.size() && a[i].gen == b[i].gen && (a[i].exp > 0) == (b[i].exp > 0)) {
      common += static_cast<uint64_t>(std::min(std::abs(a[i].exp), std::abs(b[i].exp)));
    }
    return Length::edges(static_cast<int64_t>(x.word.word_length() + y.word.word_length() - 2 * common));
  }

  Point act(const Element& g, const Point& x) const override {
    check_group(g);
    return {multiply(g, x.word), 0};
  }

  std::vector<Point> geodesic(const Point& x, const Point& y) const override {
    Element h = multiply(inverse(x.word), y.word);
    std::vector<Point> path{x};
    Element cur = x.word;
    for (const Syllable& s : h.syllables()) {
      int32_t unit = s.exp > 0 ? 1 : -1;
      for (int32_t i = 0; i < std::abs(s.exp); ++i) {
        cur.push(s.gen, unit);
        path.push_back({cur, 0});
      }
    }
    return path;
  }

  Point step_toward(const Point& x, const Point& y, int64_t k) const override {
    Element h = multiply(inverse(x.word), y.word);
    if (k < 0 || static_cast<uint64_t>(k) > h.word_length()) {
      fail(ErrorCode::kInvalidArgument, "step beyond the end of the geodesic");
    }
    Element cur = x.word;
    for (const Syllable& s : h.syllables()) {
      int64_t take = std::min<int64_t>(k, std::abs(s.exp));
      if (take == 0) break;
      cur.push(s.gen, s.exp > 0 ? take : -take);
      k -= take;
    }
    return {cur, 0};
  }

  std::vector<Point> neighbors(const Point& x) const override {
    std::vector<Point> out;
    for (unsigned g = 0; g < group_->rank(); ++g) {
      for (int e : {1, -1}) {
        Element w = x.word;
        w.push(g, e);
        out.push_back({w, 0});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<uint64_t> ball_size(const Point&, Length r) const override {
    uint64_t k = group_->rank();
    uint64_t total = 1;
    uint64_t layer = 2 * k;
    for (int64_t j = 1; j <= r.whole_edges(); ++j) {
      total += layer;
      layer *= (2 * k - 1);
      if (total > (uint64_t{1} << 62)) return std::nullopt;
    }
    return total;
  }

  std::string format_point(const Point& x) const override { return to_string(x.word); }
  Point parse_point(std::string_view text) const override { return {parse_element(*group_, text), 0}; }
};

// Bass-Serre tree of A*B: vertices are cosets wA, wB, encoded by a
// representative w that does not end in a syllable of the coset's factor.
// Edges join wA and wB for every w.
class FreeProductTree final : public ActionSpace {
 public:
  FreeProductTree(std::vector<uint32_t> orders, const SpaceOptions& opts)
      : ActionSpace(make_group(std::move(orders)), tree_constants(opts)) {}

  Backend backend() const override { return Backend::kFreeProductTree; }
  Point base_point() const override { return {identity(*group_), 0}; }

  void validate(const Point& x) const override {
    if (x.word.context() != group_.get() || x.tag > 1) {
      fail(ErrorCode::kInvalidArgument, "not a vertex of this tree");
    }
    const auto& s = x.word.syllables();
    if (!s.empty() && s.back().gen == x.tag) {
      fail(ErrorCode::kInvalidArgument, "coset representative not canonical");
    }
  }

  Point canonical(Element w, uint32_t factor) const {
    const auto& s = w.syllables();
    if (!s.empty() && s.back().gen == factor) {
      std::vector<Syllable> t(s.begin(), s.end() - 1);
      w = Element(group_.get(), t);
    }
    return {std::move(w), factor};
  }

  Length dist(const Point& x, const Point& y) const override {
    Point rel = canonical(multiply(inverse(x.word), y.word), y.tag);
    const auto& s = rel.word.syllables();
    if (s.empty()) return Length::edges(x.tag == y.tag ? 0 : 1);
    return Length::edges(static_cast<int64_t>(s.size()) + (s.front().gen != x.tag ? 1 : 0));
  }

  Point act(const Element& g, const Point& x) const override {
    check_group(g);
    return canonical(multiply(g, x.word), x.tag);
  }

  std::vector<Point> geodesic(const Point& x, const Point& y) const override {
    Point rel = canonical(multiply(inverse(x.word), y.word), y.tag);
    const auto& s = rel.word.syllables();
    std::vector<Point> path{x};
    auto emit = [&](const Element& prefix, uint32_t factor) {
      path.push_back(canonical(multiply(x.word, prefix), factor));
    };
    Element prefix = identity(*group_);
    if (s.empty()) {
      if (x.tag != y.tag) path.push_back(y);
      return path;
    }
    if (s.front().gen != x.tag) emit(prefix, s.front().gen);
    for (size_t j = 0; j + 1 < s.size(); ++j) {
      prefix.push(s[j].gen, s[j].exp);
      emit(prefix, s[j + 1].gen);
    }
    path.push_back(y);
    return path;
  }

  std::vector<Point> neighbors(const Point& x) const override {
    uint32_t m = group_->order(x.tag);
    if (m == kInfiniteOrder) fail(ErrorCode::kUnsupported, "vertex of infinite degree");
    std::vector<Point> out;
    for (uint32_t k = 0; k < m; ++k) {
      Element w = x.word;
      w.push(x.tag, k);
      out.push_back(canonical(std::move(w), 1 - x.tag));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<uint64_t> ball_size(const Point& c, Length r) const override {
    uint32_t here = c.tag;
    uint64_t total = 1;
    uint64_t layer = 1;
    for (int64_t j = 1; j <= r.whole_edges(); ++j) {
      uint32_t m = group_->order(here);
      if (m == kInfiniteOrder) return std::nullopt;
      layer *= (j == 1 ? m : m - 1);
      total += layer;
      here = 1 - here;
      if (total > (uint64_t{1} << 62)) return std::nullopt;
    }
    return total;
  }

  std::string format_point(const Point& x) const override {
    return to_string(x.word) + "<" + std::string(1, static_cast<char>('a' + x.tag)) + ">";
  }

  Point parse_point(std::string_view text) const override {
    size_t lt = text.find('<');
    if (lt == std::string_view::npos || text.size() != lt + 3 || text.back() != '>') {
      fail(ErrorCode::kParse, "coset vertex must look like 'w<a>'");
    }
    char f = text[lt + 1];
    if (f != 'a' && f != 'b') fail(ErrorCode::kParse, "coset factor must be a or b");
    return canonical(parse_element(*group_, text.substr(0, lt)), static_cast<uint32_t>(f - 'a'));
  }

 private:
  static std::shared_ptr<const Presentation> make_group(std::vector<uint32_t> orders) {
    if (orders.size() != 2) fail(ErrorCode::kUnsupported, "free product tree needs exactly two factors");
    return Presentation::free_product(std::move(orders));
  }
};

}  // namespace

SpacePtr make_free_group_tree(unsigned rank, const SpaceOptions& opts) {
  return std::make_shared<FreeGroupTree>(rank, opts);
}

SpacePtr make_free_product_tree(std::vector<uint32_t> orders, const SpaceOptions& opts) {
  return std::make_shared<FreeProductTree>(std::move(orders), opts);
}

}  // namespace psg
