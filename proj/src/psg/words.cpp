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

#include "psg/words.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <thread>
#include <unordered_set>

namespace psg {

std::shared_ptr<const Presentation> Presentation::free_group(unsigned rank) {
  if (rank < 1 || rank > 26) {
    fail(ErrorCode::kInvalidArgument, "free group rank must be in 1..26");
  }
  return std::shared_ptr<const Presentation>(
      new Presentation(Kind::kFreeGroup, std::vector<uint32_t>(rank, kInfiniteOrder)));
}

std::shared_ptr<const Presentation> Presentation::free_product(std::vector<uint32_t> orders) {
  if (orders.empty() || orders.size() > 26) {
    fail(ErrorCode::kInvalidArgument, "free product needs 1..26 factors");
  }
  for (uint32_t o : orders) {
    if (o == 1) fail(ErrorCode::kInvalidArgument, "factor order must be >= 2 or infinite");
  }
  return std::shared_ptr<const Presentation>(new Presentation(Kind::kFreeProduct, std::move(orders)));
}

std::string Presentation::describe() const {
  if (kind_ == Kind::kFreeGroup) return "F" + std::to_string(rank());
  std::string out;
  for (size_t i = 0; i < orders_.size(); ++i) {
    if (i) out += "*";
    out += orders_[i] == kInfiniteOrder ? "Z" : "Z/" + std::to_string(orders_[i]);
  }
  return out;
}

int32_t Presentation::normalize(unsigned gen, int64_t exp) const {
  uint32_t m = orders_[gen];
  if (m == kInfiniteOrder) {
    if (exp > INT32_MAX || exp < -INT32_MAX) fail(ErrorCode::kInvalidArgument, "exponent overflow");
    return static_cast<int32_t>(exp);
  }
  int64_t r = exp % static_cast<int64_t>(m);
  if (r < 0) r += m;
  return static_cast<int32_t>(r);
}

Element::Element(const Presentation* ctx, const std::vector<Syllable>& syllables) : ctx_(ctx) {
  for (const Syllable& s : syllables) push(s.gen, s.exp);
}

uint64_t Element::word_length() const {
  uint64_t n = 0;
  for (const Syllable& s : syl_) {
    uint32_t m = ctx_->order(s.gen);
    if (m == kInfiniteOrder) {
      n += static_cast<uint64_t>(std::abs(static_cast<int64_t>(s.exp)));
    } else {
      n += std::min<uint64_t>(s.exp, m - s.exp);
    }
  }
  return n;
}

void Element::push(unsigned gen, int64_t exp) {
  if (ctx_ == nullptr) fail(ErrorCode::kInvalidArgument, "element without context");
  if (gen >= ctx_->rank()) fail(ErrorCode::kInvalidArgument, "generator out of range");
  if (!syl_.empty() && syl_.back().gen == gen) {
    int32_t e = ctx_->normalize(gen, static_cast<int64_t>(syl_.back().exp) + exp);
    if (e == 0) {
      syl_.pop_back();
    } else {
      syl_.back().exp = e;
    }
    return;
  }
  int32_t e = ctx_->normalize(gen, exp);
  if (e != 0) syl_.push_back({gen, e});
}

void Element::append(const Element& other) {
  if (other.ctx_ != ctx_) fail(ErrorCode::kContextMismatch, "elements from different groups");
  for (const Syllable& s : other.syl_) push(s.gen, s.exp);
}

std::strong_ordering Element::operator<=>(const Element& o) const {
  if (auto c = word_length() <=> o.word_length(); c != 0) return c;
  // Same length: compare the printed letter strings run by run.
  auto run = [](const Element& e, size_t i) {
    const Syllable& s = e.syl_[i];
    int64_t exp = s.exp;
    uint32_t m = e.ctx_->order(s.gen);
    if (m != kInfiniteOrder && 2 * exp > static_cast<int64_t>(m)) exp -= m;
    return std::pair<char, int64_t>(static_cast<char>(exp > 0 ? 'a' + s.gen : 'A' + s.gen), std::abs(exp));
  };
  size_t n = std::min(syl_.size(), o.syl_.size());
  for (size_t i = 0; i < n; ++i) {
    auto [c1, k1] = run(*this, i);
    auto [c2, k2] = run(o, i);
    if (c1 != c2) return c1 <=> c2;
    if (k1 == k2) continue;
    // The shorter run is followed by a different letter.
    if (k1 < k2) return run(*this, i + 1).first <=> c2;
    return c1 <=> run(o, i + 1).first;
  }
  return syl_.size() <=> o.syl_.size();
}

size_t Element::hash() const {
  uint64_t h = 1469598103934665603ull;
  for (const Syllable& s : syl_) {
    uint64_t v = (static_cast<uint64_t>(s.gen) << 32) ^ static_cast<uint32_t>(s.exp);
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

Element identity(const Presentation& ctx) { return Element(&ctx); }

Element generator(const Presentation& ctx, unsigned gen, int64_t exp) {
  Element e(&ctx);
  e.push(gen, exp);
  return e;
}

Element multiply(const Element& a, const Element& b) {
  if (a.context() != b.context()) fail(ErrorCode::kContextMismatch, "elements from different groups");
  Element r = a;
  r.append(b);
  return r;
}

Element inverse(const Element& a) {
  Element r(a.context());
  const auto& s = a.syllables();
  for (auto it = s.rbegin(); it != s.rend(); ++it) r.push(it->gen, -static_cast<int64_t>(it->exp));
  return r;
}

Element power(const Element& a, int64_t k) {
  Element base = k >= 0 ? a : inverse(a);
  Element r(a.context());
  for (int64_t i = 0; i < std::abs(k); ++i) r.append(base);
  return r;
}

Element conjugate(const Element& h, const Element& g) {
  return multiply(multiply(h, g), inverse(h));
}

Element parse_element(const Presentation& ctx, std::string_view text) {
  Element e(&ctx);
  if (text == "1" || text.empty()) return e;
  for (char c : text) {
    unsigned gen;
    int64_t exp;
    if (c >= 'a' && c <= 'z') {
      gen = static_cast<unsigned>(c - 'a');
      exp = 1;
    } else if (c >= 'A' && c <= 'Z') {
      gen = static_cast<unsigned>(c - 'A');
      exp = -1;
    } else {
      fail(ErrorCode::kParse, "unexpected character in word '" + std::string(text) + "'");
    }
    if (gen >= ctx.rank()) {
      fail(ErrorCode::kParse, "generator '" + std::string(1, c) + "' not in " + ctx.describe());
    }
    e.push(gen, exp);
  }
  return e;
}

std::string to_string(const Element& e) {
  if (e.is_identity()) return "1";
  std::string out;
  for (const Syllable& s : e.syllables()) {
    int64_t exp = s.exp;
    uint32_t m = e.context()->order(s.gen);
    if (m != kInfiniteOrder && 2 * exp > static_cast<int64_t>(m)) exp -= m;
    char c = static_cast<char>(exp > 0 ? 'a' + s.gen : 'A' + s.gen);
    out.append(static_cast<size_t>(std::abs(exp)), c);
  }
  return out;
}

CyclicReduction cyclic_reduce(const Element& a) {
  const Presentation& ctx = *a.context();
  std::vector<Syllable> core = a.syllables();
  Element conj(&ctx);
  size_t lo = 0;
  size_t hi = core.size();  // core[lo, hi)
  while (hi - lo >= 2 && core[lo].gen == core[hi - 1].gen) {
    Syllable& f = core[lo];
    Syllable& b = core[hi - 1];
    if (!ctx.finite(f.gen)) {
      if ((f.exp > 0) == (b.exp > 0)) break;
      int64_t k = std::min(std::abs(static_cast<int64_t>(f.exp)), std::abs(static_cast<int64_t>(b.exp)));
      int64_t s = f.exp > 0 ? 1 : -1;
      conj.push(f.gen, s * k);
      f.exp = static_cast<int32_t>(f.exp - s * k);
      b.exp = static_cast<int32_t>(b.exp + s * k);
      if (b.exp == 0) --hi;
      if (f.exp == 0) ++lo;
    } else {
      // w = g^p M g^q = g^-q (g^(p+q) M) g^q
      conj.push(f.gen, -static_cast<int64_t>(b.exp));
      f.exp = ctx.normalize(f.gen, static_cast<int64_t>(f.exp) + b.exp);
      --hi;
      if (f.exp == 0) ++lo;
    }
  }
  std::vector<Syllable> rest(core.begin() + static_cast<std::ptrdiff_t>(lo),
                             core.begin() + static_cast<std::ptrdiff_t>(hi));
  return {Element(&ctx, rest), conj};
}

namespace {

// Letters for infinite factors, whole syllables for finite ones.
std::vector<Syllable> atoms(const Element& e) {
  std::vector<Syllable> out;
  for (const Syllable& s : e.syllables()) {
    if (e.context()->finite(s.gen)) {
      out.push_back(s);
    } else {
      int32_t unit = s.exp > 0 ? 1 : -1;
      for (int32_t i = 0; i < std::abs(s.exp); ++i) out.push_back({s.gen, unit});
    }
  }
  return out;
}

}  // namespace

PrimitiveRoot primitive_root(const Element& a) {
  if (a.is_identity()) fail(ErrorCode::kInvalidArgument, "primitive root of the identity");
  CyclicReduction cr = cyclic_reduce(a);
  std::vector<Syllable> at = atoms(cr.core);
  size_t n = at.size();
  for (size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (size_t i = d; i < n && periodic; ++i) periodic = at[i] == at[i - d];
    if (!periodic) continue;
    Element r(a.context(), std::vector<Syllable>(at.begin(), at.begin() + static_cast<std::ptrdiff_t>(d)));
    return {conjugate(cr.conjugator, r), static_cast<int64_t>(n / d)};
  }
  fail(ErrorCode::kInternal, "primitive root scan failed");
}

bool same_root(const Element& a, const Element& b) {
  if (a.is_identity() || b.is_identity()) return false;
  Element ra = primitive_root(a).root;
  Element rb = primitive_root(b).root;
  return ra == rb || ra == inverse(rb);
}

std::optional<int64_t> power_of(const Element& g, const Element& root) {
  if (g.is_identity()) return 0;
  if (root.is_identity()) return std::nullopt;
  PrimitiveRoot pr = primitive_root(g);
  PrimitiveRoot rr = primitive_root(root);
  if (pr.root == rr.root) return pr.power;
  if (pr.root == inverse(rr.root)) return -pr.power;
  return std::nullopt;
}

ElementSet::ElementSet(const Presentation* ctx, std::vector<Element> members)
    : ctx_(ctx), members_(std::move(members)) {
  for (const Element& e : members_) {
    if (e.context() != ctx_) fail(ErrorCode::kContextMismatch, "set member from another group");
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool ElementSet::contains(const Element& e) const {
  return std::binary_search(members_.begin(), members_.end(), e);
}

ElementSet parse_element_set(const Presentation& ctx, const std::vector<std::string>& words) {
  std::vector<Element> out;
  out.reserve(words.size());
  for (const std::string& w : words) out.push_back(parse_element(ctx, w));
  return ElementSet(&ctx, std::move(out));
}

std::vector<std::string> to_strings(const ElementSet& set) {
  std::vector<std::string> out;
  out.reserve(set.size());
  for (const Element& e : set) out.push_back(to_string(e));
  return out;
}

namespace {

unsigned worker_count(const ProductOptions& opts, size_t work) {
  unsigned t = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<size_t>(t, std::max<size_t>(1, work / 4096)));
}

[[noreturn]] void over_budget(uint64_t budget) {
  fail(ErrorCode::kBudgetExceeded,
       "product set exceeds budget of " + std::to_string(budget) + " canonical forms");
}

}  // namespace

ElementSet multiply_sets(const ElementSet& a, const ElementSet& b, const ProductOptions& opts) {
  if (a.context() != b.context()) fail(ErrorCode::kContextMismatch, "sets from different groups");
  if (a.empty() || b.empty()) fail(ErrorCode::kInvalidArgument, "empty set in product");
  using Bucket = std::unordered_set<Element, ElementHash>;
  unsigned workers = worker_count(opts, a.size() * b.size());
  std::vector<Bucket> local(workers);
  std::atomic<bool> exceeded{false};
  auto run = [&](unsigned w) {
    Bucket& out = local[w];
    for (size_t i = w; i < a.size() && !exceeded.load(std::memory_order_relaxed); i += workers) {
      for (const Element& y : b) {
        out.insert(multiply(a[i], y));
      }
      if (out.size() > opts.budget) exceeded.store(true);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  if (exceeded) over_budget(opts.budget);
  Bucket& merged = local[0];
  for (unsigned w = 1; w < workers; ++w) {
    merged.merge(local[w]);
    local[w] = Bucket();
    if (merged.size() > opts.budget) over_budget(opts.budget);
  }
  std::vector<Element> out;
  out.reserve(merged.size());
  for (auto it = merged.begin(); it != merged.end();) {
    out.push_back(std::move(merged.extract(it++).value()));
  }
  return ElementSet(a.context(), std::move(out));
}

ElementSet product_set(const ElementSet& u, unsigned n, const ProductOptions& opts) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, "product_set needs n >= 1");
  if (u.empty()) fail(ErrorCode::kInvalidArgument, "product_set of an empty set");
  ElementSet cur = u;
  for (unsigned k = 1; k < n; ++k) cur = multiply_sets(cur, u, opts);
  return cur;
}

ProductSizes product_sizes(const ElementSet& u, unsigned n_max, const ProductOptions& opts) {
  if (u.empty()) fail(ErrorCode::kInvalidArgument, "product_sizes of an empty set");
  ProductSizes out;
  out.last = u;
  out.sizes.push_back(u.size());
  for (unsigned k = 2; k <= n_max; ++k) {
    try {
      out.last = multiply_sets(out.last, u, opts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBudgetExceeded) throw;
      out.truncated = true;
      break;
    }
    out.sizes.push_back(out.last.size());
  }
  return out;
}

SafinFamily safin_family(const Presentation& ctx, unsigned n) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, "safin_family needs N >= 1");
  if (ctx.rank() < 2) fail(ErrorCode::kInvalidArgument, "safin_family needs rank >= 2");
  std::vector<Element> members;
  for (int64_t k = -static_cast<int64_t>(n); k <= static_cast<int64_t>(n); ++k) {
    members.push_back(generator(ctx, 0, k));
  }
  members.push_back(generator(ctx, 1));
  SafinFamily f;
  f.set = ElementSet(&ctx, std::move(members));
  f.power_block = 2ull * n + 1;
  f.with_h = 2ull * n + 2;
  return f;
}

ElementSet random_element_set(const Presentation& ctx, uint64_t seed, unsigned count, unsigned max_length) {
  if (count == 0 || max_length == 0) fail(ErrorCode::kInvalidArgument, "random set needs count and max_length >= 1");
  const unsigned rank = ctx.rank();
  // Syllables of factor g with e letters, counted as in word_length: +-e,
  // except that e = order/2 is a single element and longer ones do not exist.
  auto mult = [&](unsigned g, unsigned e) -> double {
    if (!ctx.finite(g) || 2 * e < ctx.order(g)) return 2;
    return 2 * e == ctx.order(g) ? 1 : 0;
  };
  // ending[l][g]: normal forms of length l whose last syllable is in factor g.
  // prefix(l, g): forms of length l that may be followed by a syllable of g.
  std::vector<std::vector<double>> ending(max_length + 1, std::vector<double>(rank, 0));
  auto prefix = [&](unsigned l, unsigned g) {
    double p = l == 0 ? 1 : 0;
    for (unsigned h = 0; h < rank; ++h) {
      if (h != g) p += ending[l][h];
    }
    return p;
  };
  for (unsigned l = 1; l <= max_length; ++l) {
    for (unsigned g = 0; g < rank; ++g) {
      for (unsigned e = 1; e <= l; ++e) ending[l][g] += mult(g, e) * prefix(l - e, g);
    }
  }
  std::vector<double> by_length(max_length + 1, 0);
  for (unsigned l = 1; l <= max_length; ++l) {
    for (unsigned g = 0; g < rank; ++g) by_length[l] += ending[l][g];
  }
  std::mt19937_64 rng(seed);
  std::discrete_distribution<unsigned> pick_length(by_length.begin(), by_length.end());

  auto sample = [&]() {
    unsigned l = pick_length(rng);
    std::vector<Syllable> rev;
    std::optional<unsigned> next;  // factor of the syllable to the right
    while (l > 0) {
      std::vector<double> w;
      std::vector<std::pair<unsigned, unsigned>> choice;
      for (unsigned g = 0; g < rank; ++g) {
        if (next && *next == g) continue;
        for (unsigned e = 1; e <= l; ++e) {
          double m = mult(g, e) * prefix(l - e, g);
          if (m <= 0) continue;
          w.push_back(m);
          choice.emplace_back(g, e);
        }
      }
      std::discrete_distribution<size_t> pick(w.begin(), w.end());
      auto [g, e] = choice[pick(rng)];
      int32_t exp = static_cast<int32_t>(e);
      if (mult(g, e) == 2 && (rng() & 1)) exp = -exp;
      rev.push_back({g, exp});
      next = g;
      l -= e;
    }
    std::reverse(rev.begin(), rev.end());
    return Element(&ctx, rev);
  };

  std::set<Element> out;
  uint64_t attempts = 0;
  const uint64_t cap = 1000ull * count + 10000;
  while (out.size() < count) {
    if (++attempts > cap) fail(ErrorCode::kInvalidArgument, "not enough distinct words of the requested length");
    out.insert(sample());
  }
  return ElementSet(&ctx, std::vector<Element>(out.begin(), out.end()));
}

}  // namespace psg
