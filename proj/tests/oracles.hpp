#pragma once

// Independent reference computations used only by the test suite.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "scengine/character_table.hpp"
#include "scengine/cyclotomic.hpp"
#include "scengine/group.hpp"
#include "scengine/super_brauer.hpp"

namespace oracle {

using Partition = std::vector<std::vector<std::size_t>>;

/// Every set partition of {0..n-1}, blocks ordered by first element.
inline std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  std::vector<std::size_t> a(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t m) {
    if (i == n) {
      Partition p(m);
      for (std::size_t x = 0; x < n; ++x) p[a[x]].push_back(x);
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t b = 0; b <= m; ++b) {
      a[i] = b;
      rec(i + 1, std::max(m, b + 1));
    }
  };
  if (n == 0) return {{}};
  a[0] = 0;
  rec(1, 1);
  return out;
}

/// Naive search over all (character partition, class partition) pairs with
/// equal block counts, {1} a superclass, and every sum_{chi in X} chi(1) chi
/// constant on every superclass. Returns (class partition, char partition).
inline std::set<std::pair<Partition, Partition>> brute_force_theories(const scengine::CharacterTable& t) {
  const std::size_t r = t.class_count();
  std::set<std::pair<Partition, Partition>> out;
  const auto class_parts = all_partitions(r);
  const auto char_parts = all_partitions(t.size());
  for (const auto& cls : class_parts) {
    if (cls.front() != std::vector<std::size_t>{0}) continue;
    for (const auto& chars : char_parts) {
      if (chars.size() != cls.size()) continue;
      bool ok = true;
      for (const auto& x : chars) {
        for (const auto& k : cls) {
          scengine::Cyclotomic first;
          for (std::size_t i = 0; i < k.size() && ok; ++i) {
            scengine::Cyclotomic v;
            for (auto chi : x) v += t.rows[chi][0] * t.rows[chi][k[i]];
            if (i == 0) first = v;
            else if (v != first) ok = false;
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
      if (ok) out.insert({cls, chars});
    }
  }
  return out;
}

/// Conjugacy classes straight from the definition: the set {h^-1 x h : h in G}.
inline std::set<std::set<std::size_t>> brute_classes(const scengine::FiniteGroup& g) {
  std::set<std::set<std::size_t>> out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    std::set<std::size_t> c;
    for (std::size_t h = 0; h < g.order(); ++h) c.insert(g.mul(g.mul(g.inverse(h), x), h));
    out.insert(c);
  }
  return out;
}

/// O_p(G) as the intersection of all conjugates of one Sylow p-subgroup.
inline std::set<std::size_t> o_p_by_intersection(const scengine::FiniteGroup& g, const std::vector<std::size_t>& sylow) {
  std::set<std::size_t> core(sylow.begin(), sylow.end());
  for (std::size_t h = 0; h < g.order(); ++h) {
    std::set<std::size_t> conj;
    for (auto s : sylow) conj.insert(g.mul(g.mul(g.inverse(h), s), h));
    std::set<std::size_t> next;
    std::set_intersection(core.begin(), core.end(), conj.begin(), conj.end(), std::inserter(next, next.begin()));
    core = std::move(next);
  }
  return core;
}

/// Every (class partition, IBr partition) pair of the p-regular section whose
/// weighted witnesses sum w(phi) phi are constant on every block.
inline std::set<std::pair<Partition, Partition>> brute_force_super_brauer(const scengine::IBrFamily& fam) {
  std::set<std::pair<Partition, Partition>> out;
  const std::size_t r = fam.regular_classes.size();
  for (const auto& cls : all_partitions(r)) {
    if (cls.front() != std::vector<std::size_t>{0}) continue;
    for (const auto& ibr : all_partitions(fam.size())) {
      if (ibr.size() != cls.size()) continue;
      bool ok = true;
      for (const auto& x : ibr) {
        for (const auto& k : cls) {
          scengine::Cyclotomic first;
          for (std::size_t i = 0; i < k.size() && ok; ++i) {
            scengine::Cyclotomic v;
            for (auto phi : x) v += fam.values[phi][k[i]].scaled(fam.weights[phi]);
            if (i == 0) first = v;
            else if (v != first) ok = false;
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
      if (ok) out.insert({cls, ibr});
    }
  }
  return out;
}

}  // namespace oracle
