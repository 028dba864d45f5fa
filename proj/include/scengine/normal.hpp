#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "scengine/conjugacy.hpp"
#include "scengine/errors.hpp"
#include "scengine/group.hpp"
#include "scengine/number_theory.hpp"

namespace scengine {

/// Smallest normal subgroup containing the given elements.
inline SubgroupElements normal_closure(const FiniteGroup& g, std::span<const std::size_t> elements) {
  SubgroupElements h;
  h.member.assign(g.order(), 0);
  h.member[0] = 1;
  h.elements.push_back(0);
  std::vector<std::size_t> gens;
  for (auto x : elements) extend_subgroup(g, h, gens, x);
  for (std::size_t head = 0; head < h.elements.size(); ++head) {
    for (auto s : g.generators()) {
      const std::size_t y = g.conjugate(h.elements[head], s);
      if (!h.contains(y)) extend_subgroup(g, h, gens, y);
    }
  }
  return h;
}

/// Class indices (sorted) making up a normal subset.
inline std::vector<std::size_t> classes_in(const ConjugacyData& cd, const SubgroupElements& h) {
  std::set<std::size_t> out;
  for (auto x : h.elements) out.insert(cd.class_of[x]);
  return {out.begin(), out.end()};
}

inline std::vector<std::size_t> elements_of(const ConjugacyData& cd, std::span<const std::size_t> classes) {
  std::vector<std::size_t> out;
  for (auto c : classes) out.insert(out.end(), cd.classes[c].begin(), cd.classes[c].end());
  std::sort(out.begin(), out.end());
  return out;
}

inline SubgroupElements subgroup_from_elements(const FiniteGroup& g, std::span<const std::size_t> elements) {
  SubgroupElements h;
  h.member.assign(g.order(), 0);
  for (auto x : elements) {
    h.member[x] = 1;
    h.elements.push_back(x);
  }
  return h;
}

/// A Sylow p-subgroup grown greedily from p-elements in element-index order
/// (or reversed order). Passes repeat until no single p-element extends it.
inline SubgroupElements sylow_subgroup(const FiniteGroup& g, std::uint64_t p, bool reversed = false) {
  SubgroupElements h;
  h.member.assign(g.order(), 0);
  h.member[0] = 1;
  h.elements.push_back(0);
  std::vector<std::size_t> gens;
  const std::size_t target = p_part(g.order(), p);
  const std::size_t n = g.order();
  bool grew = true;
  while (grew && h.order() < target) {
    grew = false;
    for (std::size_t k = 0; k < n && h.order() < target; ++k) {
      const std::size_t x = reversed ? n - 1 - k : k;
      if (h.contains(x) || !is_power_of(g.element_order(x), p)) continue;
      SubgroupElements trial = h;
      auto trial_gens = gens;
      extend_subgroup(g, trial, trial_gens, x);
      if (is_power_of(trial.order(), p)) {
        h = std::move(trial);
        gens = std::move(trial_gens);
        grew = true;
      }
    }
  }
  if (h.order() != target) throw VerificationError("Sylow search did not reach the full p-part");
  return h;
}

/// Largest normal p-subgroup: the union of the classes lying inside a Sylow p-subgroup.
inline std::vector<std::size_t> o_p_classes(const FiniteGroup& g, const ConjugacyData& cd, std::uint64_t p) {
  const auto sylow = sylow_subgroup(g, p);
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cd.size(); ++c) {
    if (std::all_of(cd.classes[c].begin(), cd.classes[c].end(), [&](std::size_t x) { return sylow.contains(x); })) {
      out.push_back(c);
    }
  }
  return out;
}

/// The normal p-complement, if any: it must consist of all p-regular elements.
inline std::optional<std::vector<std::size_t>> normal_p_complement_classes(const FiniteGroup& g, const ConjugacyData& cd,
                                                                           std::uint64_t p) {
  const auto reg = p_regular_classes(cd, p);
  std::size_t count = 0;
  for (auto c : reg) count += cd.sizes[c];
  if (count != g.order() / p_part(g.order(), p)) return std::nullopt;
  std::vector<char> in(g.order(), 0);
  for (auto c : reg) {
    for (auto x : cd.classes[c]) in[x] = 1;
  }
  for (std::size_t a = 0; a < g.order(); ++a) {
    if (in[a] == 0) continue;
    for (std::size_t b = 0; b < g.order(); ++b) {
      if (in[b] != 0 && in[g.mul(a, b)] == 0) return std::nullopt;
    }
  }
  return reg;
}

struct NormalSubgroupInfo {
  std::vector<std::size_t> classes;
  std::size_t order = 1;

  friend bool operator==(const NormalSubgroupInfo&, const NormalSubgroupInfo&) = default;
};

inline NormalSubgroupInfo normal_info(const ConjugacyData& cd, std::vector<std::size_t> classes) {
  NormalSubgroupInfo info;
  info.order = 0;
  for (auto c : classes) info.order += cd.sizes[c];
  info.classes = std::move(classes);
  return info;
}

/// Normal closures of the nonidentity classes, indexed by class.
inline std::vector<NormalSubgroupInfo> class_normal_closures(const FiniteGroup& g, const ConjugacyData& cd) {
  std::vector<NormalSubgroupInfo> out(cd.size());
  out[0] = normal_info(cd, {0});
  for (std::size_t c = 1; c < cd.size(); ++c) {
    const std::size_t rep = cd.representatives[c];
    out[c] = normal_info(cd, classes_in(cd, normal_closure(g, std::span<const std::size_t>(&rep, 1))));
  }
  return out;
}

inline bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Minimal normal subgroups: the minimal members among normal closures of single classes.
inline std::vector<NormalSubgroupInfo> minimal_normal_subgroups(const FiniteGroup& g, const ConjugacyData& cd) {
  const auto closures = class_normal_closures(g, cd);
  std::vector<NormalSubgroupInfo> out;
  for (std::size_t c = 1; c < cd.size(); ++c) {
    bool minimal = true;
    for (std::size_t d = 1; d < cd.size() && minimal; ++d) {
      if (closures[d].order < closures[c].order && is_subset(closures[d].classes, closures[c].classes)) minimal = false;
    }
    if (minimal && std::find(out.begin(), out.end(), closures[c]) == out.end()) out.push_back(closures[c]);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.order != b.order ? a.order < b.order : a.classes < b.classes;
  });
  return out;
}

/// All normal subgroups as joins of class normal closures, up to `cap` of them.
inline std::vector<NormalSubgroupInfo> normal_subgroups(const FiniteGroup& g, const ConjugacyData& cd,
                                                        std::size_t cap = 4096) {
  const auto closures = class_normal_closures(g, cd);
  std::set<std::vector<std::size_t>> seen;
  std::vector<NormalSubgroupInfo> all;
  const auto add = [&](const NormalSubgroupInfo& n) {
    if (seen.insert(n.classes).second) {
      if (all.size() >= cap) throw BoundError("more than " + std::to_string(cap) + " normal subgroups");
      all.push_back(n);
    }
  };
  for (const auto& c : closures) add(c);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t c = 1; c < cd.size(); ++c) {
      if (is_subset(closures[c].classes, all[i].classes)) continue;
      auto elems = elements_of(cd, all[i].classes);
      const std::size_t rep = cd.representatives[c];
      elems.push_back(rep);
      add(normal_info(cd, classes_in(cd, normal_closure(g, elems))));
    }
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.order != b.order ? a.order < b.order : a.classes < b.classes;
  });
  return all;
}

inline bool is_minimal_normal(const FiniteGroup& g, const ConjugacyData& cd, const std::vector<std::size_t>& classes) {
  if (classes.size() <= 1) return false;
  for (auto c : classes) {
    if (c == 0) continue;
    const std::size_t rep = cd.representatives[c];
    if (classes_in(cd, normal_closure(g, std::span<const std::size_t>(&rep, 1))) != classes) return false;
  }
  return true;
}

/// Commutator subgroup.
inline SubgroupElements derived_subgroup(const FiniteGroup& g) {
  std::vector<std::size_t> comms;
  const auto& gens = g.generators();
  for (auto a : gens) {
    for (auto b : gens) comms.push_back(g.mul(g.mul(g.inverse(a), g.inverse(b)), g.mul(a, b)));
  }
  return normal_closure(g, comms);
}

inline bool is_solvable(const FiniteGroup& g) {
  FiniteGroup current = g;
  while (current.order() > 1) {
    auto d = derived_subgroup(current);
    if (d.order() == current.order()) return false;
    if (d.order() == 1) return true;
    current = realize_subgroup(current, generating_set(current, d.elements)).group;
  }
  return true;
}

/// p-solvable: peel off O_{p'} and O_p alternately until the group is trivial.
inline bool is_p_solvable(const FiniteGroup& g, std::uint64_t p) {
  if (is_solvable(g)) return true;
  FiniteGroup current = g;
  while (current.order() > 1) {
    const auto cd = conjugacy_data(current);
    const auto normals = normal_subgroups(current, cd);
    const NormalSubgroupInfo* best = nullptr;
    for (const auto& n : normals) {
      if (n.order > 1 && (std::gcd<std::uint64_t>(n.order, p) == 1 || is_power_of(n.order, p))) {
        if (best == nullptr || n.order > best->order) best = &n;
      }
    }
    if (best == nullptr) return false;
    const auto elems = elements_of(cd, best->classes);
    current = quotient_group(current, subgroup_from_elements(current, elems));
  }
  return true;
}

struct NormalStructure {
  std::uint64_t p = 2;
  NormalSubgroupInfo o_p;
  std::vector<NormalSubgroupInfo> minimal_normal;
  std::optional<NormalSubgroupInfo> p_complement;
  /// Every normal subgroup, when their number stays within the cap.
  std::optional<std::vector<NormalSubgroupInfo>> all;
};

inline NormalStructure normal_structure(const FiniteGroup& g, const ConjugacyData& cd, std::uint64_t p,
                                        std::size_t cap = 4096) {
  NormalStructure ns;
  ns.p = p;
  ns.o_p = normal_info(cd, o_p_classes(g, cd, p));
  ns.minimal_normal = minimal_normal_subgroups(g, cd);
  if (auto c = normal_p_complement_classes(g, cd, p)) ns.p_complement = normal_info(cd, *c);
  try {
    ns.all = normal_subgroups(g, cd, cap);
  } catch (const BoundError&) {
    ns.all.reset();
  }
  return ns;
}

}  // namespace scengine
