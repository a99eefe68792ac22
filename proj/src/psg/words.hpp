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

#ifndef PSG_WORDS_HPP_
#define PSG_WORDS_HPP_

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psg/numeric.hpp"

namespace psg {

inline constexpr uint32_t kInfiniteOrder = 0;

// A free group of given rank, or a free product of cyclic factors. A free
// group of rank k is the free product of k infinite cyclic factors, which
// lets both share the syllable arithmetic below.
class Presentation {
 public:
  enum class Kind { kFreeGroup, kFreeProduct };

  static std::shared_ptr<const Presentation> free_group(unsigned rank);
  // Orders are >= 2, or kInfiniteOrder.
  static std::shared_ptr<const Presentation> free_product(std::vector<uint32_t> orders);

  Kind kind() const { return kind_; }
  unsigned rank() const { return static_cast<unsigned>(orders_.size()); }
  uint32_t order(unsigned gen) const { return orders_[gen]; }
  bool finite(unsigned gen) const { return orders_[gen] != kInfiniteOrder; }
  const std::vector<uint32_t>& orders() const { return orders_; }
  // "F2" or "Z/5*Z/7".
  std::string describe() const;

  // Reduces an exponent into canonical range: nonzero integer for infinite
  // factors, 1..order-1 for finite ones; 0 means the syllable vanishes.
  int32_t normalize(unsigned gen, int64_t exp) const;

 private:
  Presentation(Kind kind, std::vector<uint32_t> orders)
      : kind_(kind), orders_(std::move(orders)) {}
  Kind kind_;
  std::vector<uint32_t> orders_;
};

struct Syllable {
  uint32_t gen = 0;
  int32_t exp = 0;
  auto operator<=>(const Syllable&) const = default;
};

// Canonical normal form. The presentation must outlive the element.
class Element {
 public:
  Element() = default;
  explicit Element(const Presentation* ctx) : ctx_(ctx) {}
  // Normalizes an arbitrary syllable list.
  Element(const Presentation* ctx, const std::vector<Syllable>& syllables);

  const Presentation* context() const { return ctx_; }
  const std::vector<Syllable>& syllables() const { return syl_; }
  bool is_identity() const { return syl_.empty(); }
  // Length over generators and their inverses.
  uint64_t word_length() const;

  // Appends one syllable with cancellation against the tail.
  void push(unsigned gen, int64_t exp);
  void append(const Element& other);

  bool operator==(const Element& o) const { return syl_ == o.syl_; }
  // Shortlex: word length, then syllables lexicographically.
  std::strong_ordering operator<=>(const Element& o) const;
  size_t hash() const;

 private:
  const Presentation* ctx_ = nullptr;
  std::vector<Syllable> syl_;
};

struct ElementHash {
  size_t operator()(const Element& e) const { return e.hash(); }
};

Element identity(const Presentation& ctx);
Element generator(const Presentation& ctx, unsigned gen, int64_t exp = 1);
Element multiply(const Element& a, const Element& b);
Element inverse(const Element& a);
Element power(const Element& a, int64_t k);
Element conjugate(const Element& h, const Element& g);  // h g h^-1

// Letters a..z are generators, A..Z inverses; "1" or "" is the identity.
Element parse_element(const Presentation& ctx, std::string_view text);
std::string to_string(const Element& e);

struct CyclicReduction {
  Element core;
  Element conjugator;  // input = conjugator * core * conjugator^-1
};
CyclicReduction cyclic_reduce(const Element& a);

struct PrimitiveRoot {
  Element root;
  int64_t power = 1;
};
PrimitiveRoot primitive_root(const Element& a);

// True when a and b generate the same cyclic subgroup through their roots,
// i.e. root(a) = root(b)^{+-1}.
bool same_root(const Element& a, const Element& b);
// If g is a power r^k of the primitive root r of `root`, returns k.
std::optional<int64_t> power_of(const Element& g, const Element& root);

// Sorted (shortlex), duplicate-free.
class ElementSet {
 public:
  ElementSet() = default;
  ElementSet(const Presentation* ctx, std::vector<Element> members);

  const Presentation* context() const { return ctx_; }
  const std::vector<Element>& members() const { return members_; }
  size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const Element& e) const;
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  const Element& operator[](size_t i) const { return members_[i]; }

 private:
  const Presentation* ctx_ = nullptr;
  std::vector<Element> members_;
};

ElementSet parse_element_set(const Presentation& ctx, const std::vector<std::string>& words);
std::vector<std::string> to_strings(const ElementSet& set);

struct ProductOptions {
  uint64_t budget = 10'000'000;  // max distinct canonical forms held
  unsigned threads = 0;          // 0: hardware concurrency
};

// {ab : a in A, b in B}.
ElementSet multiply_sets(const ElementSet& a, const ElementSet& b,
                         const ProductOptions& opts = {});
ElementSet product_set(const ElementSet& u, unsigned n, const ProductOptions& opts = {});

// Sizes |U^k| for k = 1..n_max; stops early instead of throwing when the
// budget is hit.
struct ProductSizes {
  std::vector<uint64_t> sizes;  // sizes[k-1] = |U^k|
  bool truncated = false;
  ElementSet last;
};
ProductSizes product_sizes(const ElementSet& u, unsigned n_max, const ProductOptions& opts = {});

struct SafinFamily {
  ElementSet set;             // {g^-N..g^N, h}
  uint64_t power_block = 0;   // 2N+1
  uint64_t with_h = 0;        // 2N+2
};
SafinFamily safin_family(const Presentation& ctx, unsigned n);

// count distinct elements drawn uniformly from normal forms of word length
// 1..max_length (std::mt19937_64 seeded with seed).
ElementSet random_element_set(const Presentation& ctx, uint64_t seed, unsigned count, unsigned max_length);

}  // namespace psg

#endif  // PSG_WORDS_HPP_
