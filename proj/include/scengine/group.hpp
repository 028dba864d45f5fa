#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scengine/errors.hpp"
#include "scengine/number_theory.hpp"

namespace scengine {

using Perm = std::vector<std::uint32_t>;

inline constexpr std::size_t kDefaultOrderBound = 20000;

/// Group-order bound, overridable through SCENGINE_ORDER_BOUND.
inline std::size_t default_order_bound() {
  if (const char* env = std::getenv("SCENGINE_ORDER_BOUND"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != nullptr && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultOrderBound;
}

namespace detail {

inline std::uint64_t hash_points(std::span<const std::uint32_t> p) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint32_t x : p) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ULL;
  }
  return h ^ (h >> 31);
}

}  // namespace detail

/// A finite group realized as permutations of {0, ..., degree-1}.
///
/// Elements are indexed in breadth-first closure order from the generators
/// (index 0 is the identity). Products compose as functions:
/// (a * b)(x) = a(b(x)).
class FiniteGroup {
 public:
  static FiniteGroup from_generators(std::size_t degree, const std::vector<Perm>& generators,
                                     std::size_t order_bound = default_order_bound(), std::string label = {}) {
    FiniteGroup g;
    if (degree == 0) throw PreconditionError("permutation degree must be positive");
    g.degree_ = degree;
    g.label_ = std::move(label);
    for (const auto& p : generators) {
      if (p.size() != degree) throw PreconditionError("generator degree mismatch");
      std::vector<char> hit(degree, 0);
      for (auto x : p) {
        if (x >= degree || hit[x] != 0) throw PreconditionError("generator is not a permutation");
        hit[x] = 1;
      }
    }
    Perm id(degree);
    std::iota(id.begin(), id.end(), 0U);
    g.insert(id);
    Perm buffer(degree);
    for (std::size_t head = 0; head < g.order(); ++head) {
      for (const auto& gen : generators) {
        const auto e = g.element(head);
        for (std::size_t x = 0; x < degree; ++x) buffer[x] = e[gen[x]];
        if (!g.find(buffer)) {
          if (g.order() >= order_bound) {
            throw BoundError("group order exceeds bound " + std::to_string(order_bound));
          }
          g.insert(buffer);
        }
      }
    }
    for (const auto& gen : generators) g.generators_.push_back(*g.find(gen));
    g.finish();
    return g;
  }

  std::size_t order() const noexcept { return points_.size() / degree_; }
  std::size_t degree() const noexcept { return degree_; }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }

  std::span<const std::uint32_t> element(std::size_t i) const {
    return {points_.data() + i * degree_, degree_};
  }

  std::optional<std::size_t> find(std::span<const std::uint32_t> perm) const {
    if (slots_.empty()) return std::nullopt;
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t s = detail::hash_points(perm) & mask;; s = (s + 1) & mask) {
      const std::uint32_t v = slots_[s];
      if (v == 0) return std::nullopt;
      const auto e = element(v - 1);
      if (std::equal(e.begin(), e.end(), perm.begin(), perm.end())) return v - 1;
    }
  }

  std::size_t index_of(std::span<const std::uint32_t> perm) const {
    if (auto i = find(perm)) return *i;
    throw PreconditionError("permutation is not an element of the group");
  }

  std::size_t mul(std::size_t a, std::size_t b) const {
    if (!table_.empty()) return table_[a * order() + b];
    thread_local Perm buffer;
    buffer.resize(degree_);
    const auto x = element(a);
    const auto y = element(b);
    for (std::size_t i = 0; i < degree_; ++i) buffer[i] = x[y[i]];
    return index_of(buffer);
  }

  std::size_t inverse(std::size_t a) const { return inverse_[a]; }

  /// a^{-1} b a
  std::size_t conjugate(std::size_t b, std::size_t a) const { return mul(inverse_[a], mul(b, a)); }

  std::size_t power(std::size_t a, long long k) const {
    std::size_t base = k < 0 ? inverse_[a] : a;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    std::size_t r = 0;
    while (e > 0) {
      if (e & 1ULL) r = mul(r, base);
      base = mul(base, base);
      e >>= 1ULL;
    }
    return r;
  }

  std::size_t element_order(std::size_t a) const { return element_orders_[a]; }

  std::size_t exponent() const {
    std::size_t e = 1;
    for (auto o : element_orders_) e = std::lcm(e, o);
    return e;
  }

  bool is_abelian() const {
    for (auto a : generators_) {
      for (auto b : generators_) {
        if (mul(a, b) != mul(b, a)) return false;
      }
    }
    return true;
  }

 private:
  std::size_t insert(std::span<const std::uint32_t> perm) {
    const std::size_t idx = order();
    points_.insert(points_.end(), perm.begin(), perm.end());
    if ((idx + 1) * 2 > slots_.size()) {
      rehash(std::max<std::size_t>(16, slots_.size() * 2));
    } else {
      place(idx);
    }
    return idx;
  }

  void place(std::size_t idx) {
    const std::size_t mask = slots_.size() - 1;
    std::size_t s = detail::hash_points(element(idx)) & mask;
    while (slots_[s] != 0) s = (s + 1) & mask;
    slots_[s] = static_cast<std::uint32_t>(idx + 1);
  }

  void rehash(std::size_t size) {
    slots_.assign(size, 0);
    for (std::size_t i = 0; i < order(); ++i) place(i);
  }

  void finish() {
    const std::size_t n = order();
    inverse_.resize(n);
    Perm buffer(degree_);
    for (std::size_t i = 0; i < n; ++i) {
      const auto e = element(i);
      for (std::size_t x = 0; x < degree_; ++x) buffer[e[x]] = static_cast<std::uint32_t>(x);
      inverse_[i] = index_of(buffer);
    }
    if (n <= kTableLimit) {
      std::vector<std::size_t> table(n * n);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) table[a * n + b] = mul(a, b);
      }
      table_ = std::move(table);
    }
    element_orders_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (element_orders_[i] != 0) continue;
      std::size_t o = 1;
      for (std::size_t x = i; x != 0; x = mul(x, i)) ++o;
      element_orders_[i] = o;
    }
  }

  static constexpr std::size_t kTableLimit = 1024;

  std::size_t degree_ = 1;
  std::string label_;
  std::vector<std::uint32_t> points_;
  std::vector<std::uint32_t> slots_;
  std::vector<std::size_t> generators_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> element_orders_;
};

/// Subgroup generated by the given elements, as a membership mask plus the
/// element list in discovery order.
struct SubgroupElements {
  std::vector<std::size_t> elements;
  std::vector<char> member;

  std::size_t order() const noexcept { return elements.size(); }
  bool contains(std::size_t g) const { return member[g] != 0; }
};

/// Extend `h` (already a subgroup) by the generator `g`.
inline void extend_subgroup(const FiniteGroup& group, SubgroupElements& h, std::vector<std::size_t>& gens,
                            std::size_t g) {
  if (h.contains(g)) return;
  gens.push_back(g);
  // Closure of H ∪ {g}: multiply every element by every generator until stable.
  for (std::size_t head = 0; head < h.elements.size(); ++head) {
    for (auto s : gens) {
      const std::size_t x = group.mul(h.elements[head], s);
      if (h.member[x] == 0) {
        h.member[x] = 1;
        h.elements.push_back(x);
      }
    }
  }
}

inline SubgroupElements generate_subgroup(const FiniteGroup& group, std::span<const std::size_t> generators) {
  SubgroupElements h;
  h.member.assign(group.order(), 0);
  h.member[0] = 1;
  h.elements.push_back(0);
  std::vector<std::size_t> gens;
  for (auto g : generators) extend_subgroup(group, h, gens, g);
  return h;
}

/// The subgroup with the given elements realized as its own FiniteGroup on
/// the same points. `parent_index[i]` maps the new indexing back to `group`.
struct EmbeddedSubgroup {
  FiniteGroup group;
  std::vector<std::size_t> parent_index;
};

inline EmbeddedSubgroup realize_subgroup(const FiniteGroup& group, std::span<const std::size_t> generators,
                                         std::string label = {}) {
  std::vector<Perm> perms;
  for (auto g : generators) {
    const auto e = group.element(g);
    perms.emplace_back(e.begin(), e.end());
  }
  EmbeddedSubgroup out{FiniteGroup::from_generators(group.degree(), perms, group.order(), std::move(label)), {}};
  out.parent_index.resize(out.group.order());
  for (std::size_t i = 0; i < out.group.order(); ++i) out.parent_index[i] = group.index_of(out.group.element(i));
  return out;
}

/// A small generating set for an element set known to be a subgroup.
inline std::vector<std::size_t> generating_set(const FiniteGroup& group, std::span<const std::size_t> elements) {
  SubgroupElements h;
  h.member.assign(group.order(), 0);
  h.member[0] = 1;
  h.elements.push_back(0);
  std::vector<std::size_t> gens;
  for (auto g : elements) extend_subgroup(group, h, gens, g);
  return gens;
}

/// G/N acting on the left cosets of the normal subgroup N.
inline FiniteGroup quotient_group(const FiniteGroup& group, const SubgroupElements& normal, std::string label = {}) {
  const std::size_t n = group.order();
  std::vector<std::size_t> coset(n, SIZE_MAX);
  std::size_t count = 0;
  for (std::size_t x = 0; x < n; ++x) {
    if (coset[x] != SIZE_MAX) continue;
    for (auto m : normal.elements) coset[group.mul(x, m)] = count;
    ++count;
  }
  std::vector<std::size_t> coset_rep(count);
  for (std::size_t x = n; x-- > 0;) coset_rep[coset[x]] = x;
  std::vector<Perm> perms;
  for (auto g : group.generators()) {
    Perm p(count);
    for (std::size_t c = 0; c < count; ++c) p[c] = static_cast<std::uint32_t>(coset[group.mul(g, coset_rep[c])]);
    perms.push_back(std::move(p));
  }
  if (count == 1) perms.clear();
  return FiniteGroup::from_generators(std::max<std::size_t>(count, 1), perms, n, std::move(label));
}

}  // namespace scengine
