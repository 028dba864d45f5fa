#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include <json.hpp>

#include "scengine/character_table.hpp"
#include "scengine/constructions.hpp"
#include "scengine/errors.hpp"
#include "scengine/ff_matrix.hpp"
#include "scengine/finite_field.hpp"
#include "scengine/group.hpp"
#include "scengine/sct.hpp"

namespace scengine {

inline constexpr std::uint64_t kMaxModuleSize = 10000;

/// A matrix group P <= GL_n(q) acting on V = GF(q)^n (column vectors).
class LinearAction {
 public:
  LinearAction(FieldPtr field, std::size_t n, std::vector<FFMatrix> generators)
      : field_(std::move(field)), n_(n), gens_(std::move(generators)) {
    if (!field_->is_prime_field()) throw PreconditionError("linear actions are over prime fields");
    if (ipow(field_->order(), static_cast<unsigned>(n_)) > kMaxModuleSize) {
      throw BoundError("module larger than " + std::to_string(kMaxModuleSize) + " vectors");
    }
    for (const auto& g : gens_) {
      if (g.dimension() != n_) throw PreconditionError("generator dimension mismatch");
      if (!g.is_invertible()) throw PreconditionError("generator matrix is singular");
    }
  }

  static LinearAction from_json(std::uint32_t q, const nlohmann::json& j) {
    const auto field = FiniteField::make(q, 1);
    auto mats = matrices_from_json(j, field);
    const std::size_t n = mats.empty() ? 1 : mats.front().dimension();
    return LinearAction(field, n, std::move(mats));
  }

  const FieldPtr& field() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return field_->order(); }
  std::size_t dimension() const noexcept { return n_; }
  std::size_t module_size() const noexcept { return ipow(q(), static_cast<unsigned>(n_)); }
  const std::vector<FFMatrix>& generators() const noexcept { return gens_; }

  /// Contragredient generators a -> (g^-1)^T a.
  std::vector<FFMatrix> dual_generators() const {
    std::vector<FFMatrix> out;
    for (const auto& g : gens_) out.push_back(g.inverse().transpose());
    return out;
  }

  /// P realized as permutations of the vector codes.
  FiniteGroup group() const {
    if (gens_.empty()) return FiniteGroup::from_generators(module_size(), {});
    return matrix_group(gens_);
  }

 private:
  FieldPtr field_;
  std::size_t n_;
  std::vector<FFMatrix> gens_;
};

namespace detail {

inline Partition orbits_of(const std::vector<Perm>& gens, std::size_t points) {
  std::vector<std::size_t> orbit(points, SIZE_MAX);
  Partition out;
  for (std::size_t x = 0; x < points; ++x) {
    if (orbit[x] != SIZE_MAX) continue;
    std::vector<std::size_t> o{x};
    orbit[x] = out.size();
    for (std::size_t head = 0; head < o.size(); ++head) {
      for (const auto& g : gens) {
        const std::size_t y = g[o[head]];
        if (orbit[y] == SIZE_MAX) {
          orbit[y] = out.size();
          o.push_back(y);
        }
      }
    }
    std::sort(o.begin(), o.end());
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace detail

/// Orbits on vectors and on character labels, each ordered by smallest code.
struct OrbitDecomposition {
  Partition on_vectors;
  Partition on_characters;

  std::vector<std::size_t> sizes_vectors() const {
    std::vector<std::size_t> s;
    for (const auto& o : on_vectors) s.push_back(o.size());
    return s;
  }
  std::vector<std::size_t> sizes_characters() const {
    std::vector<std::size_t> s;
    for (const auto& o : on_characters) s.push_back(o.size());
    return s;
  }
};

inline OrbitDecomposition orbits(const LinearAction& a) {
  OrbitDecomposition d;
  d.on_vectors = detail::orbits_of(matrix_permutations(a.generators()), a.module_size());
  d.on_characters = detail::orbits_of(matrix_permutations(a.dual_generators()), a.module_size());
  if (a.generators().empty()) {
    d.on_vectors = detail::orbits_of({}, a.module_size());
    d.on_characters = d.on_vectors;
  }
  return d;
}

inline std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// For a coprime action, orbit-size multisets on V and on Irr(V) agree.
inline bool brauer_permutation_check(const LinearAction& a) {
  const std::size_t order = a.group().order();
  if (std::gcd<std::size_t>(order, a.q()) != 1) throw PreconditionError("action is not coprime");
  const auto d = orbits(a);
  return sorted(d.sizes_vectors()) == sorted(d.sizes_characters());
}

inline nlohmann::json to_json(const OrbitDecomposition& d, std::size_t n, std::uint32_t q) {
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& o : d.on_vectors) reps.push_back(decode_vector(static_cast<std::uint32_t>(o.front()), n, q));
  return {{"orbit_sizes_V", d.sizes_vectors()}, {"orbit_sizes_Irr", d.sizes_characters()}, {"orbit_reps", reps}};
}

/// Gamma(V) for V = GF(q^n) in its polynomial basis over GF(q): multiplication
/// by the primitive element, and the Frobenius map x -> x^q.
struct SemilinearGroup {
  FieldPtr big_field;
  FieldPtr base_field;
  std::size_t n = 1;
  FFMatrix multiplier;
  FFMatrix frobenius;
  FiniteGroup f_group;
  FiniteGroup gamma;

  LinearAction action() const { return LinearAction(base_field, n, {multiplier, frobenius}); }
  LinearAction f_action() const { return LinearAction(base_field, n, {multiplier}); }
};

inline SemilinearGroup semilinear_group(std::uint32_t q, std::uint32_t n) {
  if (ipow(q, n) > kMaxModuleSize) throw BoundError("semilinear group module too large");
  const auto big = FiniteField::make(q, n);
  const auto base = FiniteField::make(q, 1);
  const auto column_matrix = [&](auto&& image_of_basis) {
    FFMatrix m(base, n);
    for (std::uint32_t j = 0; j < n; ++j) {
      const auto coeffs = big->coefficients(image_of_basis(j));
      for (std::uint32_t i = 0; i < n; ++i) m(i, j) = coeffs[i];
    }
    return m;
  };
  const auto basis = [&](std::uint32_t j) { return static_cast<FiniteField::Element>(ipow(q, j)); };
  FFMatrix mult = column_matrix([&](std::uint32_t j) { return big->mul(big->primitive_element(), basis(j)); });
  FFMatrix frob = column_matrix([&](std::uint32_t j) { return big->pow(basis(j), q); });
  SemilinearGroup s{big, base, n, mult, frob, matrix_group({mult}), matrix_group({mult, frob})};
  const std::size_t fo = ipow(q, n) - 1;
  if (s.f_group.order() != fo || s.gamma.order() != fo * n) throw VerificationError("semilinear group has the wrong order");
  return s;
}

/// V = W_1 + ... + W_p with every dim W_i = m over GF(q), p prime.
struct DirectSumDecomposition {
  std::uint32_t q = 2;
  std::size_t m = 1;
  std::size_t summands = 2;

  static DirectSumDecomposition make(std::uint32_t q, const std::vector<std::size_t>& dims) {
    if (!is_prime(q)) throw PreconditionError("summand field order must be prime");
    if (dims.empty() || !is_prime(dims.size())) throw PreconditionError("number of summands must be prime");
    if (std::any_of(dims.begin(), dims.end(), [&](std::size_t d) { return d != dims.front() || d == 0; })) {
      throw PreconditionError("summands must have equal positive dimension");
    }
    return {q, dims.front(), dims.size()};
  }

  std::size_t dimension() const noexcept { return m * summands; }
  std::size_t module_size() const noexcept { return ipow(q, static_cast<unsigned>(dimension())); }
  std::uint64_t summand_size() const noexcept { return ipow(q, static_cast<unsigned>(m)); }

  /// Indices of summands where the vector (or character label) is nonzero.
  std::vector<std::size_t> support(std::size_t code) const {
    const auto v = decode_vector(static_cast<std::uint32_t>(code), dimension(), q);
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < summands; ++i) {
      if (std::any_of(v.begin() + static_cast<long>(i * m), v.begin() + static_cast<long>((i + 1) * m),
                      [](auto x) { return x != 0; })) {
        s.push_back(i);
      }
    }
    return s;
  }

  std::size_t weight(std::size_t code) const { return support(code).size(); }

  /// Weight classes B_0..B_p (the same sets label C_0..C_p on the character side).
  Partition weight_sets() const {
    Partition out(summands + 1);
    for (std::size_t v = 0; v < module_size(); ++v) out[weight(v)].push_back(v);
    return out;
  }
};

/// rho*_S(v) = (-1)^{|S cap supp v|} (q^m - 1)^{|S| - |S cap supp v|}.
inline long long rho_star_value(const std::vector<std::size_t>& s, const std::vector<std::size_t>& support,
                                std::uint64_t summand_size) {
  std::size_t inter = 0;
  for (auto i : s) {
    if (std::find(support.begin(), support.end(), i) != support.end()) ++inter;
  }
  long long v = inter % 2 == 0 ? 1 : -1;
  for (std::size_t k = 0; k < s.size() - inter; ++k) v *= static_cast<long long>(summand_size - 1);
  return v;
}

/// sigma_i(v) as the sum of rho*_S over the i-subsets S of the summands.
inline long long weight_sigma(const DirectSumDecomposition& d, std::size_t i, std::size_t code) {
  const auto supp = d.support(code);
  long long total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d.summands); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != i) continue;
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < d.summands; ++k) {
      if ((mask >> k) & 1U) s.push_back(k);
    }
    total += rho_star_value(s, supp, d.summand_size());
  }
  return total;
}

/// The weight theory ({B_i}, {C_i}); `table` must be abelian_dual(q, m p).
/// Throws unless the character sums over C_i agree with the rho* formula on
/// every vector of V.
inline SuperTheory weight_theory(const DirectSumDecomposition& d, const CharacterTable& t) {
  if (t.class_count() != d.module_size()) throw PreconditionError("table does not match the decomposition");
  const Partition sets = d.weight_sets();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t v = 0; v < d.module_size(); ++v) {
      Cyclotomic s;
      for (auto chi : sets[i]) s += t.rows[chi][v];
      if (s != Cyclotomic(weight_sigma(d, i, v))) throw VerificationError("weight supercharacter disagrees with the rho* formula");
    }
  }
  return make_theory(t, sets, sets);
}

/// Block-diagonal generators of A on the first summand together with the
/// cyclic permutation of the p summands: A wr Z_p inside GL_{mp}(q).
inline std::vector<FFMatrix> wreath_matrices(const std::vector<FFMatrix>& a_gens, std::size_t p) {
  if (a_gens.empty()) throw PreconditionError("wreath needs base generators");
  const auto field = a_gens.front().field();
  const std::size_t m = a_gens.front().dimension();
  std::vector<FFMatrix> out;
  for (const auto& a : a_gens) {
    FFMatrix g = FFMatrix::identity(field, m * p);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) g(i, j) = a(i, j);
    }
    out.push_back(std::move(g));
  }
  FFMatrix cycle(field, m * p);
  for (std::size_t b = 0; b < p; ++b) {
    for (std::size_t i = 0; i < m; ++i) cycle(((b + 1) % p) * m + i, b * m + i) = 1;
  }
  out.push_back(std::move(cycle));
  return out;
}

/// The orbit theory m_P(V).
inline SuperTheory orbit_theory(const LinearAction& a, const CharacterTable& t) {
  const auto d = orbits(a);
  return orbit_theory(t, d.on_characters, d.on_vectors);
}

inline constexpr std::size_t kMaxInvariantOrbits = 12;

/// Supercharacter theories of V whose blocks are unions of P-orbits.
inline TheorySet enumerate_invariant_scts(const LinearAction& a, const CharacterTable& t) {
  const auto d = orbits(a);
  if (d.on_vectors.size() - 1 > kMaxInvariantOrbits) {
    throw BoundError("invariant enumeration limited to " + std::to_string(kMaxInvariantOrbits) + " nonzero orbits");
  }
  EnumerateOptions opt;
  opt.max_atoms = kMaxInvariantOrbits + 1;
  auto set = theories_from_algebra(t, vector_space_algebra(a.q(), a.dimension(), d.on_vectors), opt);
  for (const auto& s : set) {
    if (!is_invariant(s, d.on_vectors, d.on_characters)) throw VerificationError("enumerated theory is not invariant");
  }
  return set;
}

inline TheorySet enumerate_invariant_scts(const LinearAction& a) {
  return enumerate_invariant_scts(a, abelian_dual(a.q(), static_cast<std::uint32_t>(a.dimension())));
}

}  // namespace scengine
