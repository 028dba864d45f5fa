#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "scengine/group.hpp"
#include "scengine/number_theory.hpp"

namespace scengine {

/// Conjugacy classes of a realized group, ordered by size and then by the
/// smallest element index in the class.
struct ConjugacyData {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> representatives;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> centralizer_orders;
  std::vector<std::size_t> element_orders;
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> inverse_map;
  /// prime r -> (class i -> class of g_i^r), for every r dividing exp(G).
  std::map<std::uint64_t, std::vector<std::size_t>> power_maps;
  std::size_t group_order = 1;

  std::size_t size() const noexcept { return classes.size(); }

  /// Class of g_i^k for any integer k.
  std::size_t power_class(const FiniteGroup& g, std::size_t cls, long long k) const {
    return class_of[g.power(representatives[cls], k)];
  }
};

inline ConjugacyData conjugacy_data(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> label(n, SIZE_MAX);
  std::vector<std::vector<std::size_t>> raw;
  const auto& gens = g.generators();
  for (std::size_t x = 0; x < n; ++x) {
    if (label[x] != SIZE_MAX) continue;
    const std::size_t id = raw.size();
    std::vector<std::size_t> cls{x};
    label[x] = id;
    for (std::size_t head = 0; head < cls.size(); ++head) {
      for (auto s : gens) {
        const std::size_t y = g.conjugate(cls[head], s);
        if (label[y] == SIZE_MAX) {
          label[y] = id;
          cls.push_back(y);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    raw.push_back(std::move(cls));
  }
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (raw[a].size() != raw[b].size()) return raw[a].size() < raw[b].size();
    return raw[a].front() < raw[b].front();
  });

  ConjugacyData cd;
  cd.group_order = n;
  cd.class_of.assign(n, 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto& cls = raw[order[i]];
    for (auto x : cls) cd.class_of[x] = i;
    cd.representatives.push_back(cls.front());
    cd.sizes.push_back(cls.size());
    cd.centralizer_orders.push_back(n / cls.size());
    cd.element_orders.push_back(g.element_order(cls.front()));
    cd.classes.push_back(std::move(cls));
  }
  cd.inverse_map.resize(cd.size());
  for (std::size_t i = 0; i < cd.size(); ++i) cd.inverse_map[i] = cd.class_of[g.inverse(cd.representatives[i])];
  for (auto r : prime_divisors(g.exponent())) {
    std::vector<std::size_t> map(cd.size());
    for (std::size_t i = 0; i < cd.size(); ++i) map[i] = cd.class_of[g.power(cd.representatives[i], static_cast<long long>(r))];
    cd.power_maps.emplace(r, std::move(map));
  }
  return cd;
}

/// Classes whose elements have order coprime to p (always includes class 0).
inline std::vector<std::size_t> p_regular_classes(const ConjugacyData& cd, std::uint64_t p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cd.size(); ++i) {
    if (std::gcd<std::uint64_t>(cd.element_orders[i], p) == 1) out.push_back(i);
  }
  return out;
}

/// Class of the p'-part of g_i.
inline std::size_t p_prime_part_class(const FiniteGroup& g, const ConjugacyData& cd, std::size_t cls, std::uint64_t p) {
  const std::uint64_t o = cd.element_orders[cls];
  const std::uint64_t pp = p_part(o, p);
  const std::uint64_t m = o / pp;
  // x = g^(a * pp) with a * pp = 1 mod m.
  if (m == 1) return 0;
  const std::uint64_t a = invmod_general(pp % m, m);
  return cd.class_of[g.power(cd.representatives[cls], static_cast<long long>(a * pp))];
}

}  // namespace scengine
