#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include <json.hpp>

#include "scengine/character_table.hpp"
#include "scengine/conjugacy.hpp"
#include "scengine/cyclotomic.hpp"
#include "scengine/errors.hpp"
#include "scengine/ff_matrix.hpp"
#include "scengine/group.hpp"

namespace scengine {

using Partition = std::vector<std::vector<std::size_t>>;

/// Blocks sorted internally and ordered by their smallest member.
inline Partition canonical_partition(Partition p) {
  for (auto& b : p) std::sort(b.begin(), b.end());
  std::erase_if(p, [](const auto& b) { return b.empty(); });
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return p;
}

/// Block label of each point (points numbered 0..n-1), or throws if `p` is
/// not a partition of {0..n-1}.
inline std::vector<std::size_t> block_labels(const Partition& p, std::size_t n) {
  std::vector<std::size_t> label(n, SIZE_MAX);
  for (std::size_t b = 0; b < p.size(); ++b) {
    if (p[b].empty()) throw PreconditionError("partition has an empty block");
    for (auto x : p[b]) {
      if (x >= n || label[x] != SIZE_MAX) throw PreconditionError("blocks overlap or fall outside the index range");
      label[x] = b;
    }
  }
  if (std::find(label.begin(), label.end(), SIZE_MAX) != label.end()) throw PreconditionError("partition is not exhaustive");
  return label;
}

/// Restricted growth string of a canonical partition.
inline std::vector<std::size_t> rgs(const Partition& p, std::size_t n) { return block_labels(canonical_partition(p), n); }

/// A compatible pair of partitions together with its supercharacter values
/// values[X][K] = sigma_X(K), sigma_X = sum over chi in X of chi(1) chi.
struct SuperTheory {
  Partition class_blocks;
  Partition char_blocks;
  std::vector<std::vector<Cyclotomic>> values;

  std::size_t size() const noexcept { return class_blocks.size(); }

  friend bool operator==(const SuperTheory& a, const SuperTheory& b) {
    return a.class_blocks == b.class_blocks && a.char_blocks == b.char_blocks;
  }
};

using TheorySet = std::vector<SuperTheory>;

inline void sort_theories(TheorySet& set, std::size_t class_count) {
  std::sort(set.begin(), set.end(), [&](const SuperTheory& a, const SuperTheory& b) {
    return rgs(a.class_blocks, class_count) < rgs(b.class_blocks, class_count);
  });
}

/// sigma_X evaluated on class k.
inline Cyclotomic sigma_value(const CharacterTable& t, const std::vector<std::size_t>& block, std::size_t k) {
  Cyclotomic s;
  for (auto chi : block) s += t.rows[chi][k] * t.rows[chi][0];
  return s;
}

/// Supercharacter value matrix, or nullopt when some sigma_X is not constant on a block.
inline std::optional<std::vector<std::vector<Cyclotomic>>> supercharacter_values(const CharacterTable& t,
                                                                                 const Partition& char_blocks,
                                                                                 const Partition& class_blocks) {
  std::vector<std::vector<Cyclotomic>> values;
  for (const auto& x : char_blocks) {
    std::vector<Cyclotomic> row;
    for (const auto& k : class_blocks) {
      const Cyclotomic v = sigma_value(t, x, k.front());
      for (std::size_t i = 1; i < k.size(); ++i) {
        if (sigma_value(t, x, k[i]) != v) return std::nullopt;
      }
      row.push_back(v);
    }
    values.push_back(std::move(row));
  }
  return values;
}

/// Supercharacter-theory axioms with the Diaconis–Isaacs witness.
inline bool verify_sct(const CharacterTable& t, const Partition& char_blocks, const Partition& class_blocks) {
  block_labels(char_blocks, t.size());
  block_labels(class_blocks, t.class_count());
  if (char_blocks.size() != class_blocks.size()) return false;
  const bool identity_block = std::any_of(class_blocks.begin(), class_blocks.end(), [](const auto& b) {
    return b.size() == 1 && b.front() == 0;
  });
  if (!identity_block) return false;
  return supercharacter_values(t, char_blocks, class_blocks).has_value();
}

inline SuperTheory make_theory(const CharacterTable& t, Partition char_blocks, Partition class_blocks) {
  SuperTheory s;
  s.class_blocks = canonical_partition(std::move(class_blocks));
  s.char_blocks = canonical_partition(std::move(char_blocks));
  if (!verify_sct(t, s.char_blocks, s.class_blocks)) throw VerificationError("partition pair is not a supercharacter theory");
  s.values = *supercharacter_values(t, s.char_blocks, s.class_blocks);
  return s;
}

/// Characters grouped by their normalized block sums sum_{k in K} |K_k| chi(g_k) / chi(1).
inline Partition char_partition_from_class_partition(const CharacterTable& t, const Partition& class_blocks) {
  std::map<std::vector<std::vector<Rational>>, std::size_t> key_to_block;
  Partition blocks;
  for (std::size_t chi = 0; chi < t.size(); ++chi) {
    const Rational inv_degree = 1 / t.rows[chi][0].to_rational();
    std::vector<std::vector<Rational>> key;
    for (const auto& k : class_blocks) {
      Cyclotomic s;
      for (auto c : k) s += t.rows[chi][c].scaled(Rational(static_cast<unsigned long>(t.class_sizes[c])));
      key.push_back(s.scaled(inv_degree).lifted(std::lcm(t.conductor, s.conductor())).coeffs());
    }
    auto [it, inserted] = key_to_block.emplace(std::move(key), blocks.size());
    if (inserted) blocks.emplace_back();
    blocks[it->second].push_back(chi);
  }
  if (blocks.size() != class_blocks.size() || !verify_sct(t, blocks, class_blocks)) {
    throw VerificationError("class partition does not span a closed subalgebra");
  }
  return blocks;
}

inline SuperTheory finest_theory(const CharacterTable& t) {
  Partition cls, chars;
  for (std::size_t k = 0; k < t.class_count(); ++k) cls.push_back({k});
  for (std::size_t c = 0; c < t.size(); ++c) chars.push_back({c});
  return make_theory(t, chars, cls);
}

inline SuperTheory coarsest_theory(const CharacterTable& t) {
  Partition cls{{0}}, chars{{0}};
  if (t.class_count() > 1) {
    std::vector<std::size_t> rest(t.class_count() - 1), rest_chars(t.size() - 1);
    std::iota(rest.begin(), rest.end(), 1);
    std::iota(rest_chars.begin(), rest_chars.end(), 1);
    cls.push_back(rest);
    chars.push_back(rest_chars);
  }
  return make_theory(t, chars, cls);
}

/// The class algebra restricted to a set of atoms (unions of classes, or of
/// vectors for an elementary abelian group). lambda(a, b, c) counts pairs
/// (x, y) in A_a x A_b with xy equal to a fixed element of A_c.
struct ClassAlgebra {
  std::size_t group_order = 1;
  std::vector<std::vector<std::size_t>> atom_members;  // class (or vector code) indices
  std::vector<std::size_t> atom_sizes;
  std::vector<std::size_t> atom_inverse;
  std::vector<std::uint32_t> lambda_table;

  std::size_t atoms() const noexcept { return atom_sizes.size(); }
  std::uint32_t lambda(std::size_t a, std::size_t b, std::size_t c) const {
    const std::size_t r = atoms();
    return lambda_table[(a * r + b) * r + c];
  }
};

namespace detail {

inline void fill_atom_inverse(ClassAlgebra& alg, const std::vector<std::size_t>& member_inverse) {
  std::vector<std::size_t> atom_of(member_inverse.size(), SIZE_MAX);
  for (std::size_t a = 0; a < alg.atoms(); ++a) {
    for (auto m : alg.atom_members[a]) atom_of[m] = a;
  }
  alg.atom_inverse.resize(alg.atoms());
  for (std::size_t a = 0; a < alg.atoms(); ++a) {
    alg.atom_inverse[a] = atom_of[member_inverse[alg.atom_members[a].front()]];
    for (auto m : alg.atom_members[a]) {
      if (atom_of[member_inverse[m]] != alg.atom_inverse[a]) throw PreconditionError("atoms are not closed under inversion");
    }
  }
}

}  // namespace detail

/// Atoms are unions of conjugacy classes; atom 0 must be the identity class.
inline ClassAlgebra class_algebra(const FiniteGroup& g, const ConjugacyData& cd, Partition atoms) {
  atoms = canonical_partition(std::move(atoms));
  block_labels(atoms, cd.size());
  if (atoms.front() != std::vector<std::size_t>{0}) throw PreconditionError("the identity class must be its own atom");
  const auto c = class_structure_constants(g, cd);
  ClassAlgebra alg;
  alg.group_order = g.order();
  alg.atom_members = atoms;
  const std::size_t r = atoms.size();
  for (const auto& a : atoms) {
    std::size_t s = 0;
    for (auto k : a) s += cd.sizes[k];
    alg.atom_sizes.push_back(s);
  }
  alg.lambda_table.assign(r * r * r, 0);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      for (std::size_t t = 0; t < r; ++t) {
        std::uint32_t sum = 0;
        const std::size_t k = atoms[t].front();
        for (auto i : atoms[a]) {
          for (auto j : atoms[b]) sum += c[i][j][k];
        }
        alg.lambda_table[(a * r + b) * r + t] = sum;
      }
    }
  }
  detail::fill_atom_inverse(alg, cd.inverse_map);
  return alg;
}

inline ClassAlgebra class_algebra(const FiniteGroup& g, const ConjugacyData& cd) {
  Partition atoms;
  for (std::size_t k = 0; k < cd.size(); ++k) atoms.push_back({k});
  return class_algebra(g, cd, std::move(atoms));
}

/// Atoms are sets of vector codes of GF(q)^n; atom 0 must be {0}.
inline ClassAlgebra vector_space_algebra(std::uint32_t q, std::size_t n, Partition atoms) {
  atoms = canonical_partition(std::move(atoms));
  const std::size_t size = ipow(q, static_cast<unsigned>(n));
  const auto label = block_labels(atoms, size);
  if (atoms.front() != std::vector<std::size_t>{0}) throw PreconditionError("the zero vector must be its own atom");
  std::vector<std::vector<std::uint32_t>> vecs(size);
  for (std::uint32_t v = 0; v < size; ++v) vecs[v] = decode_vector(v, n, q);
  const auto code_sub = [&](std::size_t z, std::size_t x) {
    std::vector<std::uint32_t> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = (vecs[z][i] + q - vecs[x][i]) % q;
    return encode_vector(w, q);
  };
  ClassAlgebra alg;
  alg.group_order = size;
  alg.atom_members = atoms;
  const std::size_t r = atoms.size();
  for (const auto& a : atoms) alg.atom_sizes.push_back(a.size());
  alg.lambda_table.assign(r * r * r, 0);
  for (std::size_t t = 0; t < r; ++t) {
    const std::size_t z = atoms[t].front();
    for (std::size_t a = 0; a < r; ++a) {
      for (auto x : atoms[a]) ++alg.lambda_table[(a * r + label[code_sub(z, x)]) * r + t];
    }
  }
  std::vector<std::size_t> neg(size);
  for (std::uint32_t v = 0; v < size; ++v) neg[v] = code_sub(0, v);
  detail::fill_atom_inverse(alg, neg);
  return alg;
}

struct EnumerateOptions {
  std::size_t max_atoms = 14;
  bool require_inverse_closure = true;
};

/// All partitions of the atoms (atom 0 a singleton block) whose block sums
/// span a subalgebra: depth-first, one block at a time, with incremental
/// inverse and product-closure pruning. Partitions are returned in
/// restricted-growth-string order.
inline std::vector<Partition> enumerate_closed_partitions(const ClassAlgebra& alg, const EnumerateOptions& opt = {}) {
  const std::size_t r = alg.atoms();
  if (r > opt.max_atoms) {
    throw BoundError("enumeration limited to " + std::to_string(opt.max_atoms) + " atoms, got " + std::to_string(r));
  }
  std::vector<Partition> out;
  std::vector<std::size_t> block_of(r, SIZE_MAX);
  Partition blocks{{0}};
  block_of[0] = 0;
  // sums[x][y] = sum over a in X, b in Y of lambda(a, b, .)
  std::vector<std::vector<std::vector<std::uint64_t>>> sums;

  const auto pair_sum = [&](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    std::vector<std::uint64_t> s(r, 0);
    for (auto a : x) {
      for (auto b : y) {
        for (std::size_t c = 0; c < r; ++c) s[c] += alg.lambda(a, b, c);
      }
    }
    return s;
  };
  const auto constant_on = [&](const std::vector<std::uint64_t>& s, const std::vector<std::size_t>& block) {
    for (std::size_t i = 1; i < block.size(); ++i) {
      if (s[block[i]] != s[block[0]]) return false;
    }
    return true;
  };
  sums.push_back({pair_sum(blocks[0], blocks[0])});

  // Add a block; false (and no change) when closure fails against completed blocks.
  const auto push_block = [&](const std::vector<std::size_t>& b) {
    const std::size_t id = blocks.size();
    std::vector<std::vector<std::uint64_t>> row;
    for (std::size_t y = 0; y < id; ++y) row.push_back(pair_sum(b, blocks[y]));
    row.push_back(pair_sum(b, b));
    for (const auto& s : row) {
      for (const auto& z : blocks) {
        if (!constant_on(s, z)) return false;
      }
      if (!constant_on(s, b)) return false;
    }
    for (std::size_t x = 0; x < id; ++x) {
      for (std::size_t y = 0; y <= x; ++y) {
        if (!constant_on(sums[x][y], b)) return false;
      }
    }
    blocks.push_back(b);
    sums.push_back(std::move(row));
    for (auto a : b) block_of[a] = id;
    return true;
  };
  const auto pop_block = [&]() {
    for (auto a : blocks.back()) block_of[a] = SIZE_MAX;
    blocks.pop_back();
    sums.pop_back();
  };

  std::function<void()> recurse = [&]() {
    std::size_t first = 1;
    while (first < r && block_of[first] != SIZE_MAX) ++first;
    if (first == r) {
      out.push_back(canonical_partition(blocks));
      return;
    }
    std::vector<std::size_t> free;
    for (std::size_t a = first + 1; a < r; ++a) {
      if (block_of[a] == SIZE_MAX) free.push_back(a);
    }
    const std::size_t m = free.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      std::vector<std::size_t> b{first};
      for (std::size_t i = 0; i < m; ++i) {
        if ((mask >> i) & 1U) b.push_back(free[i]);
      }
      std::vector<std::size_t> inv;
      bool self_inverse = false, disjoint = true, usable = true;
      if (opt.require_inverse_closure) {
        for (auto a : b) inv.push_back(alg.atom_inverse[a]);
        std::sort(inv.begin(), inv.end());
        self_inverse = inv == b;
        for (auto a : inv) {
          if (std::binary_search(b.begin(), b.end(), a)) disjoint = false;
          if (block_of[a] != SIZE_MAX) usable = false;
        }
        if (!self_inverse && (!disjoint || !usable)) continue;
      }
      if (!push_block(b)) continue;
      if (opt.require_inverse_closure && !self_inverse) {
        if (push_block(inv)) {
          recurse();
          pop_block();
        }
      } else {
        recurse();
      }
      pop_block();
    }
  };
  recurse();
  std::sort(out.begin(), out.end(), [&](const Partition& a, const Partition& b) { return rgs(a, r) < rgs(b, r); });
  return out;
}

/// Expand a partition of atoms into a partition of the atoms' members.
inline Partition expand_atoms(const ClassAlgebra& alg, const Partition& p) {
  Partition out;
  for (const auto& b : p) {
    std::vector<std::size_t> members;
    for (auto a : b) members.insert(members.end(), alg.atom_members[a].begin(), alg.atom_members[a].end());
    out.push_back(std::move(members));
  }
  return canonical_partition(std::move(out));
}

/// Supercharacter theories whose superclasses are unions of the algebra's
/// atoms; `t` must be indexed compatibly with the atom members.
inline TheorySet theories_from_algebra(const CharacterTable& t, const ClassAlgebra& alg, const EnumerateOptions& opt = {}) {
  TheorySet set;
  for (const auto& p : enumerate_closed_partitions(alg, opt)) {
    const Partition cls = expand_atoms(alg, p);
    set.push_back(make_theory(t, char_partition_from_class_partition(t, cls), cls));
  }
  sort_theories(set, t.class_count());
  return set;
}

inline TheorySet enumerate_scts(const FiniteGroup& g, const ConjugacyData& cd, const CharacterTable& t,
                                const EnumerateOptions& opt = {}) {
  return theories_from_algebra(t, class_algebra(g, cd), opt);
}

/// The orbit theory of an action, given orbits on classes and on characters.
inline SuperTheory orbit_theory(const CharacterTable& t, const Partition& char_orbits, const Partition& class_orbits) {
  return make_theory(t, char_orbits, class_orbits);
}

inline bool is_union_of(const Partition& blocks, const Partition& orbits, std::size_t n) {
  const auto label = block_labels(blocks, n);
  return std::all_of(orbits.begin(), orbits.end(), [&](const auto& o) {
    return std::all_of(o.begin(), o.end(), [&](std::size_t x) { return label[x] == label[o.front()]; });
  });
}

inline bool is_invariant(const SuperTheory& s, const Partition& class_orbits, const Partition& char_orbits) {
  const std::size_t classes = [&] {
    std::size_t n = 0;
    for (const auto& b : s.class_blocks) n += b.size();
    return n;
  }();
  std::size_t chars = 0;
  for (const auto& b : s.char_blocks) chars += b.size();
  return is_union_of(s.class_blocks, class_orbits, classes) && is_union_of(s.char_blocks, char_orbits, chars);
}

/// Row index of the complex conjugate of each character.
inline std::vector<std::size_t> conjugate_rows(const CharacterTable& t) {
  std::map<std::vector<std::vector<Rational>>, std::size_t> index;
  const auto key = [&](const std::vector<Cyclotomic>& row) {
    std::vector<std::vector<Rational>> k;
    for (const auto& v : row) k.push_back(v.lifted(std::lcm(t.conductor, v.conductor())).coeffs());
    return k;
  };
  for (std::size_t i = 0; i < t.size(); ++i) index.emplace(key(t.rows[i]), i);
  std::vector<std::size_t> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::vector<Cyclotomic> c;
    for (const auto& v : t.rows[i]) c.push_back(v.conj());
    const auto it = index.find(key(c));
    if (it == index.end()) throw VerificationError("conjugate character missing from table");
    out[i] = it->second;
  }
  return out;
}

/// Theory of an abelian group with blocks {g, g^-1} and {chi, conj(chi)}.
inline SuperTheory conj_theory(const CharacterTable& t) {
  if (std::any_of(t.class_sizes.begin(), t.class_sizes.end(), [](std::size_t s) { return s != 1; })) {
    throw PreconditionError("conjugation theory is only defined here for abelian groups");
  }
  const auto conj = conjugate_rows(t);
  Partition cls, chars;
  std::vector<char> seen(t.class_count(), 0);
  for (std::size_t k = 0; k < t.class_count(); ++k) {
    if (seen[k] != 0) continue;
    const std::size_t j = t.class_inverse[k];
    seen[k] = seen[j] = 1;
    cls.push_back(j == k ? std::vector<std::size_t>{k} : std::vector<std::size_t>{k, j});
  }
  std::vector<char> seen_chars(t.size(), 0);
  for (std::size_t c = 0; c < t.size(); ++c) {
    if (seen_chars[c] != 0) continue;
    seen_chars[c] = seen_chars[conj[c]] = 1;
    chars.push_back(conj[c] == c ? std::vector<std::size_t>{c} : std::vector<std::size_t>{c, conj[c]});
  }
  return make_theory(t, chars, cls);
}

inline Partition join_partitions(const Partition& a, const Partition& b, std::size_t n) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto* p : {&a, &b}) {
    for (const auto& blk : *p) {
      for (auto x : blk) parent[find(x)] = find(blk.front());
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t x = 0; x < n; ++x) groups[find(x)].push_back(x);
  Partition out;
  for (auto& [_, g] : groups) out.push_back(std::move(g));
  return canonical_partition(std::move(out));
}

/// Partition join of both sides; throws when the joined pair is not a theory.
inline SuperTheory join_theories(const CharacterTable& t, const SuperTheory& s1, const SuperTheory& s2) {
  Partition cls = join_partitions(s1.class_blocks, s2.class_blocks, t.class_count());
  Partition chars = join_partitions(s1.char_blocks, s2.char_blocks, t.size());
  if (!verify_sct(t, chars, cls)) throw VerificationError("joined partitions do not form a supercharacter theory");
  return make_theory(t, std::move(chars), std::move(cls));
}

inline nlohmann::json to_json(const SuperTheory& s) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& row : s.values) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    values.push_back(r);
  }
  return {{"class_blocks", s.class_blocks}, {"char_blocks", s.char_blocks}, {"values", values}};
}

}  // namespace scengine
