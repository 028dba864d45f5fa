#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scengine/character_table.hpp"
#include "scengine/conjugacy.hpp"
#include "scengine/errors.hpp"
#include "scengine/group.hpp"
#include "scengine/normal.hpp"
#include "scengine/sct.hpp"

namespace scengine {

enum class BrauerMode { PGroup, NormalPComplement, Unsupported };

inline std::string to_string(BrauerMode m) {
  switch (m) {
    case BrauerMode::PGroup: return "p_group";
    case BrauerMode::NormalPComplement: return "normal_p_complement";
    case BrauerMode::Unsupported: return "unsupported";
  }
  return {};
}

struct BrauerContext {
  const FiniteGroup* group = nullptr;
  ConjugacyData cd;
  std::uint64_t p = 2;
  std::vector<std::size_t> regular_classes;
  BrauerMode mode = BrauerMode::Unsupported;
  std::optional<std::vector<std::size_t>> complement_classes;

  std::size_t regular_count() const noexcept { return regular_classes.size(); }
};

/// `g` must outlive the context.
inline BrauerContext brauer_context(const FiniteGroup& g, std::uint64_t p) {
  if (!is_prime(p)) throw PreconditionError("p must be prime");
  BrauerContext ctx;
  ctx.group = &g;
  ctx.cd = conjugacy_data(g);
  ctx.p = p;
  ctx.regular_classes = p_regular_classes(ctx.cd, p);
  if (is_power_of(g.order(), p)) {
    ctx.mode = BrauerMode::PGroup;
  } else if (auto c = normal_p_complement_classes(g, ctx.cd, p)) {
    ctx.mode = BrauerMode::NormalPComplement;
    ctx.complement_classes = std::move(c);
  }
  return ctx;
}

/// Brauer characters on the p-regular classes. In normal-complement mode each
/// Brauer character phi corresponds to a P-orbit O(phi) on Irr(N) and
/// phi restricted to N is the orbit sum.
struct IBrFamily {
  std::vector<std::size_t> regular_classes;     // G-class indices (columns)
  std::vector<std::vector<Cyclotomic>> values;  // values[phi][column]
  /// Witness weight of phi: the degree of an irreducible constituent of phi restricted to N.
  std::vector<Rational> weights;
  std::size_t sylow_order = 1;

  // Normal-complement data (empty in p-group mode).
  std::optional<EmbeddedSubgroup> complement;
  ConjugacyData complement_cd;
  CharacterTable complement_table;
  Partition char_orbits;          // P-orbits on Irr(N); IBr index = orbit index
  Partition class_orbits;         // P-orbits on N-classes
  std::vector<std::size_t> column_of_class_orbit;

  std::size_t size() const noexcept { return values.size(); }
  Cyclotomic degree(std::size_t phi) const { return values[phi][0]; }
};

namespace detail {

inline std::vector<std::vector<Rational>> row_key(const std::vector<Cyclotomic>& row, int conductor) {
  std::vector<std::vector<Rational>> key;
  for (const auto& v : row) key.push_back(v.lifted(std::lcm(conductor, v.conductor())).coeffs());
  return key;
}

inline Partition orbits_from_maps(const std::vector<std::vector<std::size_t>>& maps, std::size_t n) {
  std::vector<std::size_t> orbit(n, SIZE_MAX);
  Partition out;
  for (std::size_t x = 0; x < n; ++x) {
    if (orbit[x] != SIZE_MAX) continue;
    std::vector<std::size_t> o{x};
    orbit[x] = out.size();
    for (std::size_t head = 0; head < o.size(); ++head) {
      for (const auto& m : maps) {
        if (orbit[m[o[head]]] == SIZE_MAX) {
          orbit[m[o[head]]] = out.size();
          o.push_back(m[o[head]]);
        }
      }
    }
    std::sort(o.begin(), o.end());
    out.push_back(std::move(o));
  }
  return out;
}

inline bool is_elementary_abelian(const FiniteGroup& g) {
  const auto primes = prime_divisors(g.order());
  return primes.size() == 1 && g.is_abelian() && g.exponent() == primes[0];
}

}  // namespace detail

/// Irr(N) for the complement: the explicit dual when N is elementary abelian,
/// the Dixon table otherwise.
inline CharacterTable complement_irr(const FiniteGroup& n, const ConjugacyData& cd) {
  if (n.order() > 1 && detail::is_elementary_abelian(n)) return abelian_dual(n, cd);
  return character_table(n, cd);
}

/// Green correspondence data; `reversed_sylow` selects the Sylow subgroup
/// grown from the last elements instead of the first.
inline IBrFamily green_ibr(const BrauerContext& ctx, bool reversed_sylow = false) {
  IBrFamily fam;
  fam.regular_classes = ctx.regular_classes;
  const FiniteGroup& g = *ctx.group;
  if (ctx.mode == BrauerMode::PGroup) {
    fam.values = {{Cyclotomic(1)}};
    fam.weights = {Rational(1)};
    fam.sylow_order = g.order();
    return fam;
  }
  if (ctx.mode != BrauerMode::NormalPComplement) throw PreconditionError("Green correspondence needs a normal p-complement");

  const auto n_elements = elements_of(ctx.cd, *ctx.complement_classes);
  fam.complement = realize_subgroup(g, generating_set(g, n_elements), "complement");
  const FiniteGroup& n = fam.complement->group;
  std::vector<std::size_t> to_n(g.order(), SIZE_MAX);
  for (std::size_t i = 0; i < n.order(); ++i) to_n[fam.complement->parent_index[i]] = i;
  fam.complement_cd = conjugacy_data(n);
  fam.complement_table = complement_irr(n, fam.complement_cd);
  const auto& ncd = fam.complement_cd;
  const auto& nt = fam.complement_table;

  const auto sylow = sylow_subgroup(g, ctx.p, reversed_sylow);
  fam.sylow_order = sylow.order();
  const auto p_gens = generating_set(g, sylow.elements);

  // x acts on N-classes by n -> x n x^-1 and on Irr(N) by theta -> theta(x^-1 . x).
  std::vector<std::vector<std::size_t>> class_maps, row_maps;
  std::map<std::vector<std::vector<Rational>>, std::size_t> row_index;
  for (std::size_t r = 0; r < nt.size(); ++r) row_index.emplace(detail::row_key(nt.rows[r], nt.conductor), r);
  for (auto x : p_gens) {
    std::vector<std::size_t> cm(ncd.size());
    for (std::size_t c = 0; c < ncd.size(); ++c) {
      const std::size_t rep = fam.complement->parent_index[ncd.representatives[c]];
      cm[c] = ncd.class_of[to_n[g.conjugate(rep, g.inverse(x))]];
    }
    std::vector<std::size_t> rm(nt.size());
    for (std::size_t r = 0; r < nt.size(); ++r) {
      std::vector<Cyclotomic> image(ncd.size());
      for (std::size_t c = 0; c < ncd.size(); ++c) image[cm[c]] = nt.rows[r][c];
      const auto it = row_index.find(detail::row_key(image, nt.conductor));
      if (it == row_index.end()) throw VerificationError("conjugate of an irreducible character is missing");
      rm[r] = it->second;
    }
    class_maps.push_back(std::move(cm));
    row_maps.push_back(std::move(rm));
  }
  fam.class_orbits = detail::orbits_from_maps(class_maps, ncd.size());
  fam.char_orbits = detail::orbits_from_maps(row_maps, nt.size());

  std::vector<std::size_t> column(g.order(), SIZE_MAX);
  for (std::size_t j = 0; j < ctx.regular_classes.size(); ++j) column[ctx.regular_classes[j]] = j;
  if (fam.class_orbits.size() != ctx.regular_classes.size()) {
    throw VerificationError("P-orbits on N-classes do not match the p-regular classes");
  }
  for (const auto& o : fam.class_orbits) {
    const std::size_t gcls = ctx.cd.class_of[fam.complement->parent_index[ncd.representatives[o.front()]]];
    fam.column_of_class_orbit.push_back(column[gcls]);
  }
  for (const auto& orbit : fam.char_orbits) {
    std::vector<Cyclotomic> row(ctx.regular_classes.size());
    for (std::size_t k = 0; k < fam.class_orbits.size(); ++k) {
      Cyclotomic s;
      for (auto theta : orbit) s += nt.rows[theta][fam.class_orbits[k].front()];
      row[fam.column_of_class_orbit[k]] = s;
    }
    fam.values.push_back(std::move(row));
    fam.weights.push_back(nt.rows[orbit.front()][0].to_rational());
  }
  return fam;
}

/// A pair of partitions: blocks of p-regular class columns and of IBr indices.
struct SuperBrauerTheory {
  Partition class_blocks;  // indices into the p-regular class list (column 0 = identity)
  Partition ibr_blocks;
  std::vector<std::vector<Cyclotomic>> values;

  std::size_t size() const noexcept { return class_blocks.size(); }
  friend bool operator==(const SuperBrauerTheory& a, const SuperBrauerTheory& b) {
    return a.class_blocks == b.class_blocks && a.ibr_blocks == b.ibr_blocks;
  }
};

inline std::optional<std::vector<std::vector<Cyclotomic>>> super_brauer_values(const IBrFamily& fam,
                                                                               const Partition& ibr_blocks,
                                                                               const Partition& class_blocks) {
  std::vector<std::vector<Cyclotomic>> values;
  for (const auto& x : ibr_blocks) {
    std::vector<Cyclotomic> theta(fam.regular_classes.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
      for (auto phi : x) theta[j] += fam.values[phi][j].scaled(fam.weights[phi]);
    }
    std::vector<Cyclotomic> row;
    for (const auto& k : class_blocks) {
      for (auto j : k) {
        if (theta[j] != theta[k.front()]) return std::nullopt;
      }
      row.push_back(theta[k.front()]);
    }
    values.push_back(std::move(row));
  }
  return values;
}

/// Axioms (1) and (3) directly; axiom (2) with witness theta_X = sum w(phi) phi,
/// which restricts to N as the sum of theta(1) theta over the orbits in X.
inline bool verify_super_brauer(const BrauerContext& ctx, const IBrFamily& fam, const Partition& ibr_blocks,
                                const Partition& class_blocks) {
  if (ctx.mode == BrauerMode::Unsupported) throw PreconditionError("super-Brauer verification is unsupported for this group");
  block_labels(ibr_blocks, fam.size());
  block_labels(class_blocks, fam.regular_classes.size());
  if (ibr_blocks.size() != class_blocks.size()) return false;
  if (std::none_of(class_blocks.begin(), class_blocks.end(), [](const auto& b) { return b == std::vector<std::size_t>{0}; })) {
    return false;
  }
  return super_brauer_values(fam, ibr_blocks, class_blocks).has_value();
}

inline SuperBrauerTheory make_super_brauer(const BrauerContext& ctx, const IBrFamily& fam, Partition ibr_blocks,
                                           Partition class_blocks) {
  SuperBrauerTheory s;
  s.ibr_blocks = canonical_partition(std::move(ibr_blocks));
  s.class_blocks = canonical_partition(std::move(class_blocks));
  if (!verify_super_brauer(ctx, fam, s.ibr_blocks, s.class_blocks)) {
    throw VerificationError("partition pair is not a super-Brauer character theory");
  }
  s.values = *super_brauer_values(fam, s.ibr_blocks, s.class_blocks);
  return s;
}

inline SuperBrauerTheory finest_super_brauer(const BrauerContext& ctx, const IBrFamily& fam) {
  Partition cls, ibr;
  for (std::size_t j = 0; j < fam.regular_classes.size(); ++j) cls.push_back({j});
  for (std::size_t i = 0; i < fam.size(); ++i) ibr.push_back({i});
  return make_super_brauer(ctx, fam, ibr, cls);
}

inline SuperBrauerTheory coarsest_super_brauer(const BrauerContext& ctx, const IBrFamily& fam) {
  Partition cls{{0}}, ibr{{0}};
  if (fam.regular_classes.size() > 1) {
    std::vector<std::size_t> rest(fam.regular_classes.size() - 1), rest_ibr(fam.size() - 1);
    std::iota(rest.begin(), rest.end(), 1);
    std::iota(rest_ibr.begin(), rest_ibr.end(), 1);
    cls.push_back(rest);
    ibr.push_back(rest_ibr);
  }
  return make_super_brauer(ctx, fam, ibr, cls);
}

/// Phi_1(1): |G| for a p-group, |P| with a normal p-complement.
inline std::size_t projective_cover_degree(const BrauerContext& ctx) {
  if (ctx.mode == BrauerMode::Unsupported) throw PreconditionError("projective degrees are unsupported for this group");
  return p_part(ctx.group->order(), ctx.p);
}

/// P-invariant supercharacter theories of the complement N, in the complement's indexing.
inline TheorySet invariant_complement_theories(const IBrFamily& fam) {
  if (!fam.complement) throw PreconditionError("no complement in this family");
  EnumerateOptions opt;
  opt.max_atoms = 14;
  const auto alg = class_algebra(fam.complement->group, fam.complement_cd, fam.class_orbits);
  auto set = theories_from_algebra(fam.complement_table, alg, opt);
  for (const auto& s : set) {
    if (!is_invariant(s, fam.class_orbits, fam.char_orbits)) throw VerificationError("complement theory is not P-invariant");
  }
  return set;
}

struct SuperBrauerCount {
  std::size_t count = 0;
  std::vector<SuperBrauerTheory> theories;
  TheorySet complement_theories;  // the invariant theories they were transported from
};

/// Transport a P-invariant theory of N to G°: superclasses keep their
/// elements, X(Y) = {phi : O(phi) inside Y}.
inline SuperBrauerTheory transport_theory(const BrauerContext& ctx, const IBrFamily& fam, const SuperTheory& s) {
  std::vector<std::size_t> orbit_of_class(fam.complement_cd.size());
  for (std::size_t o = 0; o < fam.class_orbits.size(); ++o) {
    for (auto c : fam.class_orbits[o]) orbit_of_class[c] = o;
  }
  std::vector<std::size_t> ibr_of_row(fam.complement_table.size());
  for (std::size_t o = 0; o < fam.char_orbits.size(); ++o) {
    for (auto r : fam.char_orbits[o]) ibr_of_row[r] = o;
  }
  Partition cls, ibr;
  for (const auto& b : s.class_blocks) {
    std::set<std::size_t> cols;
    for (auto c : b) cols.insert(fam.column_of_class_orbit[orbit_of_class[c]]);
    cls.emplace_back(cols.begin(), cols.end());
  }
  for (const auto& b : s.char_blocks) {
    std::set<std::size_t> phis;
    for (auto r : b) phis.insert(ibr_of_row[r]);
    ibr.emplace_back(phis.begin(), phis.end());
  }
  return make_super_brauer(ctx, fam, ibr, cls);
}

inline SuperBrauerCount count_super_brauer(const BrauerContext& ctx, const IBrFamily& fam) {
  SuperBrauerCount out;
  if (ctx.mode == BrauerMode::Unsupported) throw PreconditionError("super-Brauer counting is unsupported for this group");
  if (ctx.mode == BrauerMode::PGroup) {
    out.theories.push_back(finest_super_brauer(ctx, fam));
    out.count = 1;
    return out;
  }
  out.complement_theories = invariant_complement_theories(fam);
  for (const auto& s : out.complement_theories) out.theories.push_back(transport_theory(ctx, fam, s));
  std::sort(out.theories.begin(), out.theories.end(), [&](const auto& a, const auto& b) {
    return rgs(a.class_blocks, fam.regular_classes.size()) < rgs(b.class_blocks, fam.regular_classes.size());
  });
  out.count = out.theories.size();
  return out;
}

inline SuperBrauerCount count_super_brauer(const BrauerContext& ctx) { return count_super_brauer(ctx, green_ibr(ctx)); }

/// The theory ({1}, M - {1}, G° - M) with the witnesses
/// rho_{G/M}° - Phi_1(1) 1 and rho_G° - rho_{G/M}° (values per p-regular column).
struct ThreeBlockTheory {
  SuperBrauerTheory theory;
  std::vector<Cyclotomic> quotient_witness;
  std::vector<Cyclotomic> kernel_witness;
};

inline ThreeBlockTheory three_block_theory(const BrauerContext& ctx, const IBrFamily& fam,
                                           const std::vector<std::size_t>& m_classes) {
  if (ctx.mode != BrauerMode::NormalPComplement) throw PreconditionError("three-block theory needs a normal p-complement");
  if (!is_minimal_normal(*ctx.group, ctx.cd, m_classes)) throw PreconditionError("M is not minimal normal");
  std::vector<std::size_t> col_of(ctx.cd.size(), SIZE_MAX);
  for (std::size_t j = 0; j < ctx.regular_classes.size(); ++j) col_of[ctx.regular_classes[j]] = j;
  std::vector<std::size_t> m_cols, rest_cols;
  for (auto c : m_classes) {
    if (col_of[c] == SIZE_MAX) throw PreconditionError("M is not inside the p-regular section");
    if (c != 0) m_cols.push_back(col_of[c]);
  }
  std::sort(m_cols.begin(), m_cols.end());
  for (std::size_t j = 1; j < ctx.regular_classes.size(); ++j) {
    if (!std::binary_search(m_cols.begin(), m_cols.end(), j)) rest_cols.push_back(j);
  }
  if (rest_cols.empty()) throw PreconditionError("M equals the p-regular section");

  // IBr(G/M): Brauer characters with M in the kernel.
  std::vector<std::size_t> quotient, other;
  for (std::size_t phi = 1; phi < fam.size(); ++phi) {
    const bool trivial_on_m = std::all_of(m_cols.begin(), m_cols.end(), [&](std::size_t j) {
      return fam.values[phi][j] == fam.values[phi][0];
    });
    (trivial_on_m ? quotient : other).push_back(phi);
  }
  Partition ibr{{0}};
  if (!quotient.empty()) ibr.push_back(quotient);
  if (!other.empty()) ibr.push_back(other);

  std::size_t m_order = 0;
  for (auto c : m_classes) m_order += ctx.cd.sizes[c];
  const long long index = static_cast<long long>(ctx.group->order() / m_order);
  const long long phi1 = static_cast<long long>(projective_cover_degree(ctx));
  ThreeBlockTheory out;
  const std::size_t cols = ctx.regular_classes.size();
  out.quotient_witness.assign(cols, Cyclotomic(-phi1));
  out.kernel_witness.assign(cols, Cyclotomic(0));
  out.quotient_witness[0] = Cyclotomic(index - phi1);
  out.kernel_witness[0] = Cyclotomic(static_cast<long long>(ctx.group->order()) - index);
  for (auto j : m_cols) {
    out.quotient_witness[j] = Cyclotomic(index - phi1);
    out.kernel_witness[j] = Cyclotomic(-index);
  }
  out.theory = make_super_brauer(ctx, fam, ibr, {{0}, m_cols, rest_cols});
  return out;
}

struct ClassifyOneResult {
  bool one_theory = false;
  std::size_t regular_classes = 0;
  std::string row;  // Table 1 family of G/O_p(G), or "unmatched"
};

inline bool is_mersenne_exponent(std::uint64_t p, unsigned& n) {
  for (n = 2; n < 63; ++n) {
    if ((std::uint64_t{1} << n) - 1 == p) return true;
  }
  return false;
}

/// G has one super-Brauer theory iff it has at most two p-regular classes;
/// the quotient G/O_p(G) is then matched to a Table 1 family by fingerprint.
inline ClassifyOneResult classify_one(const FiniteGroup& g, std::uint64_t p) {
  ClassifyOneResult out;
  const auto cd = conjugacy_data(g);
  out.regular_classes = p_regular_classes(cd, p).size();
  out.one_theory = out.regular_classes <= 2;
  out.row = "unmatched";
  if (!out.one_theory) return out;
  const auto op = o_p_classes(g, cd, p);
  const auto q = quotient_group(g, subgroup_from_elements(g, elements_of(cd, op)));
  const std::uint64_t order = q.order();
  const std::uint64_t pp = p_part(order, p);
  const std::uint64_t rest = order / pp;
  if (order == 1) {
    out.row = "1";
  } else if (p != 2 && order == 2) {
    out.row = "Z_2";
  } else if (p == 2 && rest == 9 && (pp == 8 || pp == 16)) {
    const auto sylow = realize_subgroup(q, generating_set(q, sylow_subgroup(q, 2).elements));
    const auto& s = sylow.group;
    std::size_t involutions = 0;
    for (std::size_t x = 0; x < s.order(); ++x) involutions += s.element_order(x) == 2 ? 1 : 0;
    if (pp == 8 && s.exponent() == 8) out.row = "E_{3^2} x| Z_8";
    else if (pp == 8 && s.exponent() == 4 && involutions == 1) out.row = "E_{3^2} x| Q_8";
    else if (pp == 16 && s.exponent() == 8 && conjugacy_data(s).size() == 7 && involutions == 5) out.row = "E_{3^2} x| SD_16";
  } else if (p == 2 && is_prime(rest) && rest == pp + 1) {
    out.row = "Z_q x| Z_{2^n}, q = 2^n + 1 Fermat";
  } else if (unsigned n = 0; p != 2 && pp == p && is_mersenne_exponent(p, n) && rest == (std::uint64_t{1} << n)) {
    out.row = "E_{2^n} x| Z_p, p = 2^n - 1 Mersenne";
  }
  return out;
}

struct ClassifyTwoResult {
  bool two_theories = false;
  std::string reason;
  std::size_t regular_classes = 0;
  std::optional<std::size_t> invariant_count;  // invariant theories of the normal p-complement
  bool complement_minimal = false;
  /// A normal p-complement with exactly two invariant theories that is not minimal normal.
  bool nonminimal_two = false;
};

/// Requires G p-solvable with O_p(G) = 1.
inline ClassifyTwoResult classify_two(const FiniteGroup& g, std::uint64_t p) {
  const auto ctx = brauer_context(g, p);
  if (!is_p_solvable(g, p)) throw PreconditionError("group is not p-solvable");
  if (o_p_classes(g, ctx.cd, p).size() != 1) throw PreconditionError("O_p(G) is nontrivial");
  ClassifyTwoResult out;
  out.regular_classes = ctx.regular_count();
  if (ctx.mode == BrauerMode::NormalPComplement) {
    const auto fam = green_ibr(ctx);
    out.invariant_count = invariant_complement_theories(fam).size();
    out.complement_minimal = is_minimal_normal(g, ctx.cd, *ctx.complement_classes);
    out.nonminimal_two = !out.complement_minimal && *out.invariant_count == 2;
  }
  if (out.regular_classes == 3) {
    out.two_theories = true;
    out.reason = "three p-regular classes";
  } else if (out.invariant_count && out.complement_minimal && *out.invariant_count == 2) {
    out.two_theories = true;
    out.reason = "minimal normal p-complement with two P-invariant theories";
  } else if (out.invariant_count) {
    out.reason = std::to_string(out.regular_classes) + " p-regular classes; normal p-complement " +
                 (out.complement_minimal ? "is minimal normal" : "is not minimal normal") + " with " +
                 std::to_string(*out.invariant_count) + " P-invariant theories";
  } else {
    out.reason = std::to_string(out.regular_classes) + " p-regular classes and no normal p-complement";
  }
  if (out.invariant_count) {
    const bool by_count = *out.invariant_count == 2;
    if (by_count != out.two_theories) throw VerificationError("classification disagrees with the super-Brauer count");
  }
  return out;
}

inline nlohmann::json to_json(const SuperBrauerTheory& s) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& row : s.values) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    values.push_back(r);
  }
  return {{"class_blocks", s.class_blocks}, {"ibr_blocks", s.ibr_blocks}, {"values", values}};
}

}  // namespace scengine
