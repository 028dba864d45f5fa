#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "scengine/errors.hpp"
#include "scengine/ff_matrix.hpp"
#include "scengine/finite_field.hpp"
#include "scengine/group.hpp"
#include "scengine/group_spec.hpp"

namespace scengine {

namespace detail {

inline Perm identity_perm(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0U);
  return p;
}

inline Perm cycle_perm(std::size_t degree, std::size_t offset, std::size_t length) {
  Perm p = identity_perm(degree);
  for (std::size_t i = 0; i < length; ++i) p[offset + i] = static_cast<std::uint32_t>(offset + (i + 1) % length);
  return p;
}

/// Left-regular permutations for a group given by a multiplication rule on
/// indices 0..n-1.
template <class Mul>
Perm left_regular(std::size_t n, std::size_t g, Mul&& mul) {
  Perm p(n);
  for (std::size_t x = 0; x < n; ++x) p[x] = static_cast<std::uint32_t>(mul(g, x));
  return p;
}

}  // namespace detail

inline FiniteGroup cyclic_group(std::size_t n) {
  if (n < 1) throw PreconditionError("cyclic order must be positive");
  std::vector<Perm> gens;
  if (n > 1) gens.push_back(detail::cycle_perm(n, 0, n));
  return FiniteGroup::from_generators(n, gens, default_order_bound(), "cyclic:" + std::to_string(n));
}

inline FiniteGroup elementary_abelian_group(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p) || k < 1) throw PreconditionError("elemab needs a prime and a positive exponent");
  std::vector<Perm> gens;
  for (std::uint32_t i = 0; i < k; ++i) gens.push_back(detail::cycle_perm(std::size_t{p} * k, std::size_t{p} * i, p));
  return FiniteGroup::from_generators(std::size_t{p} * k, gens, default_order_bound(),
                                      "elemab:" + std::to_string(p) + "^" + std::to_string(k));
}

/// Dihedral group of order n acting on n/2 points (Klein four on 4 points when n = 4).
inline FiniteGroup dihedral_group(std::size_t order) {
  if (order < 2 || order % 2 != 0) throw PreconditionError("dihedral order must be even");
  const std::string label = "dihedral:" + std::to_string(order);
  const std::size_t m = order / 2;
  if (m == 1) return FiniteGroup::from_generators(2, {{1, 0}}, default_order_bound(), label);
  if (m == 2) return FiniteGroup::from_generators(4, {{1, 0, 3, 2}, {2, 3, 0, 1}}, default_order_bound(), label);
  Perm r = detail::cycle_perm(m, 0, m);
  Perm s(m);
  for (std::size_t i = 0; i < m; ++i) s[i] = static_cast<std::uint32_t>((m - i) % m);
  return FiniteGroup::from_generators(m, {r, s}, default_order_bound(), label);
}

/// Semidihedral group <a, b | a^(n/2), b^2, b a b^-1 = a^(n/4 - 1)>, left-regular.
inline FiniteGroup semidihedral_group(std::size_t order) {
  if (order < 16 || !is_power_of(order, 2)) throw PreconditionError("semidihedral order must be 2^k >= 16");
  const std::size_t m = order / 2;
  const std::size_t s = m / 2 - 1;
  // index a^i b^j -> i + m j
  const auto mul = [&](std::size_t x, std::size_t y) {
    const std::size_t i = x % m, j = x / m, k = y % m, l = y / m;
    const std::size_t twist = j == 0 ? k : (k * s) % m;
    return (i + twist) % m + m * ((j + l) % 2);
  };
  return FiniteGroup::from_generators(order, {detail::left_regular(order, 1, mul), detail::left_regular(order, m, mul)},
                                      default_order_bound(), "semidihedral:" + std::to_string(order));
}

/// Dicyclic group <a, b | a^(n/2), b^2 = a^(n/4), b a b^-1 = a^-1>, left-regular.
inline FiniteGroup dicyclic_group(std::size_t order) {
  if (order < 8 || order % 4 != 0) throw PreconditionError("dicyclic order must be a multiple of 4 and at least 8");
  const std::size_t m = order / 2;
  const auto mul = [&](std::size_t x, std::size_t y) {
    const std::size_t i = x % m, j = x / m, k = y % m, l = y / m;
    std::size_t e = (i + (j == 0 ? k : m - k)) % m;
    if (j + l == 2) e = (e + m / 2) % m;
    return e + m * ((j + l) % 2);
  };
  return FiniteGroup::from_generators(order, {detail::left_regular(order, 1, mul), detail::left_regular(order, m, mul)},
                                      default_order_bound(), "dicyclic:" + std::to_string(order));
}

/// Generalized quaternion group: the dicyclic group of 2-power order.
inline FiniteGroup quaternion_group(std::size_t order) {
  if (order < 8 || !is_power_of(order, 2)) throw PreconditionError("quaternion order must be 2^k >= 8");
  auto g = dicyclic_group(order);
  g.set_label("quaternion:" + std::to_string(order));
  return g;
}

inline FiniteGroup symmetric_group(std::size_t n) {
  if (n < 1) throw PreconditionError("sym degree must be positive");
  std::vector<Perm> gens;
  if (n > 1) {
    Perm t = detail::identity_perm(n);
    std::swap(t[0], t[1]);
    gens.push_back(t);
    if (n > 2) gens.push_back(detail::cycle_perm(n, 0, n));
  }
  return FiniteGroup::from_generators(n, gens, default_order_bound(), "sym:" + std::to_string(n));
}

namespace detail {

/// Heisenberg group mod 3 with the symmetric law
/// (v, c)(v', c') = (v + v', c + c' + 2 (v1 v2' - v2 v1')), encoded v1 + 3 v2 + 9 c.
inline std::uint32_t heis_mul(std::uint32_t x, std::uint32_t y) {
  const int a1 = x % 3, a2 = (x / 3) % 3, c = x / 9;
  const int b1 = y % 3, b2 = (y / 3) % 3, d = y / 9;
  const int w = ((a1 * b2 - a2 * b1) % 3 + 3) % 3;
  return static_cast<std::uint32_t>((a1 + b1) % 3 + 3 * ((a2 + b2) % 3) + 9 * ((c + d + 2 * w) % 3));
}

inline std::vector<Perm> heisenberg_translations() {
  std::vector<Perm> gens;
  for (std::uint32_t e : {1U, 3U}) {
    Perm p(27);
    for (std::uint32_t x = 0; x < 27; ++x) p[x] = heis_mul(e, x);
    gens.push_back(p);
  }
  return gens;
}

/// The automorphism (v, c) -> (M v, det(M) c) for M in GL_2(3).
inline Perm heisenberg_automorphism(const FFMatrix& m) {
  if (m.dimension() != 2 || m.field()->order() != 3) throw PreconditionError("extraspecial action needs 2x2 matrices over GF(3)");
  const std::uint32_t det = m.determinant();
  if (det == 0) throw PreconditionError("singular matrix in extraspecial action");
  Perm p(27);
  for (std::uint32_t x = 0; x < 27; ++x) {
    const std::vector<std::uint32_t> v{x % 3, (x / 3) % 3};
    const auto w = m.apply(v);
    p[x] = w[0] + 3 * w[1] + 9 * ((det * (x / 9)) % 3);
  }
  return p;
}

}  // namespace detail

/// Extraspecial group of order 27 and exponent 3, left-regular on 27 points.
inline FiniteGroup extraspecial27() {
  return FiniteGroup::from_generators(27, detail::heisenberg_translations(), default_order_bound(), "extraspecial:27+");
}

/// Permutations of GF(q)^n (codes sum v_i q^i) induced by matrices.
inline std::vector<Perm> matrix_permutations(const std::vector<FFMatrix>& mats) {
  std::vector<Perm> out;
  if (mats.empty()) return out;
  const std::size_t n = mats.front().dimension();
  const std::uint32_t q = mats.front().field()->order();
  const std::uint64_t points = ipow(q, static_cast<unsigned>(n));
  if (points > 100000) throw BoundError("vector space too large to realize as permutations");
  for (const auto& m : mats) {
    if (!m.is_invertible()) throw PreconditionError("generator matrix is singular");
    Perm p(points);
    for (std::uint32_t code = 0; code < points; ++code) p[code] = encode_vector(m.apply(decode_vector(code, n, q)), q);
    out.push_back(std::move(p));
  }
  return out;
}

inline FiniteGroup matrix_group(const std::vector<FFMatrix>& mats, std::string label = {}) {
  if (mats.empty()) throw PreconditionError("matrix group needs at least one generator");
  const std::size_t points = ipow(mats.front().field()->order(), static_cast<unsigned>(mats.front().dimension()));
  return FiniteGroup::from_generators(points, matrix_permutations(mats), default_order_bound(), std::move(label));
}

/// Affine group V ⋊ P on V = GF(q)^n: u -> v + x u. Translations by the basis
/// vectors come first among the generators, then the matrices.
inline FiniteGroup affine_group(const FieldPtr& field, std::size_t n, const std::vector<FFMatrix>& mats,
                                std::string label = {}) {
  const std::uint32_t q = field->order();
  const std::uint64_t points = ipow(q, static_cast<unsigned>(n));
  std::vector<Perm> gens;
  for (std::size_t i = 0; i < n; ++i) {
    Perm t(points);
    for (std::uint32_t code = 0; code < points; ++code) {
      auto v = decode_vector(code, n, q);
      v[i] = field->add(v[i], 1);
      t[code] = encode_vector(v, q);
    }
    gens.push_back(std::move(t));
  }
  for (const auto& m : mats) {
    if (m.dimension() != n) throw PreconditionError("action matrices do not match the base dimension");
  }
  for (auto& p : matrix_permutations(mats)) gens.push_back(std::move(p));
  return FiniteGroup::from_generators(points, gens, default_order_bound(), std::move(label));
}

/// E ⋊ P with E extraspecial of order 27 and P ≤ GL_2(3) acting through E/Z(E).
inline FiniteGroup extraspecial_semidirect(const std::vector<FFMatrix>& mats, std::string label = {}) {
  auto gens = detail::heisenberg_translations();
  for (const auto& m : mats) gens.push_back(detail::heisenberg_automorphism(m));
  return FiniteGroup::from_generators(27, gens, default_order_bound(), std::move(label));
}

inline std::vector<Perm> generator_perms(const FiniteGroup& g) {
  std::vector<Perm> out;
  for (auto i : g.generators()) {
    const auto e = g.element(i);
    out.emplace_back(e.begin(), e.end());
  }
  return out;
}

/// A × B on the disjoint union of the point sets.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, std::string label = {}) {
  const std::size_t da = a.degree(), db = b.degree();
  std::vector<Perm> gens;
  for (const auto& p : generator_perms(a)) {
    Perm q = detail::identity_perm(da + db);
    for (std::size_t x = 0; x < da; ++x) q[x] = p[x];
    gens.push_back(std::move(q));
  }
  for (const auto& p : generator_perms(b)) {
    Perm q = detail::identity_perm(da + db);
    for (std::size_t x = 0; x < db; ++x) q[da + x] = static_cast<std::uint32_t>(da + p[x]);
    gens.push_back(std::move(q));
  }
  return FiniteGroup::from_generators(da + db, gens, default_order_bound(), std::move(label));
}

/// A ≀ B in its imprimitive action on degree(A) * degree(B) points.
inline FiniteGroup wreath_product(const FiniteGroup& a, const FiniteGroup& b, std::string label = {}) {
  const std::size_t da = a.degree(), db = b.degree(), n = da * db;
  std::vector<Perm> gens;
  const auto pa = generator_perms(a);
  for (std::size_t block = 0; block < db; ++block) {
    for (const auto& p : pa) {
      Perm q = detail::identity_perm(n);
      for (std::size_t x = 0; x < da; ++x) q[block * da + x] = static_cast<std::uint32_t>(block * da + p[x]);
      gens.push_back(std::move(q));
    }
  }
  for (const auto& p : generator_perms(b)) {
    Perm q(n);
    for (std::size_t block = 0; block < db; ++block) {
      for (std::size_t x = 0; x < da; ++x) q[block * da + x] = static_cast<std::uint32_t>(p[block] * da + x);
    }
    gens.push_back(std::move(q));
  }
  return FiniteGroup::from_generators(n, gens, default_order_bound(), std::move(label));
}

struct RealizeOptions {
  std::filesystem::path base_dir = ".";
  /// Searched when a relative @file is missing from base_dir.
  std::vector<std::filesystem::path> fallback_dirs;
};

inline nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

inline std::vector<FFMatrix> load_matrices(const std::filesystem::path& path, const FieldPtr& field) {
  return matrices_from_json(load_json_file(path), field);
}

inline FiniteGroup realize_group(const GroupSpec& spec, const RealizeOptions& options = {}) {
  using K = GroupSpec::Kind;
  const std::string label = to_string(spec);
  const auto resolve = [&](const std::string& file) {
    std::filesystem::path p(file);
    if (p.is_absolute()) return p;
    if (std::filesystem::exists(options.base_dir / p)) return options.base_dir / p;
    for (const auto& dir : options.fallback_dirs) {
      if (std::filesystem::exists(dir / p)) return dir / p;
    }
    return options.base_dir / p;
  };
  FiniteGroup g;
  switch (spec.kind) {
    case K::Cyclic: g = cyclic_group(spec.params[0]); break;
    case K::Elemab:
      g = elementary_abelian_group(static_cast<std::uint32_t>(spec.params[0]), static_cast<std::uint32_t>(spec.params[1]));
      break;
    case K::Dihedral: g = dihedral_group(spec.params[0]); break;
    case K::Semidihedral: g = semidihedral_group(spec.params[0]); break;
    case K::Quaternion: g = quaternion_group(spec.params[0]); break;
    case K::Sym: g = symmetric_group(spec.params[0]); break;
    case K::Extraspecial27: g = extraspecial27(); break;
    case K::Matgroup: {
      const auto field = FiniteField::make(static_cast<std::uint32_t>(spec.params[0]), 1);
      const auto mats = load_matrices(resolve(spec.file), field);
      for (const auto& m : mats) {
        if (m.dimension() != spec.params[1]) throw PreconditionError("matrix dimension does not match matgroup dimension");
      }
      g = matrix_group(mats);
      break;
    }
    case K::Semidirect: {
      const GroupSpec& base = spec.children[0];
      if (base.kind == K::Extraspecial27) {
        g = extraspecial_semidirect(load_matrices(resolve(spec.file), FiniteField::make(3, 1)));
      } else {
        const auto field = FiniteField::make(static_cast<std::uint32_t>(base.params[0]), 1);
        g = affine_group(field, base.params[1], load_matrices(resolve(spec.file), field));
      }
      break;
    }
    case K::Direct:
      g = direct_product(realize_group(spec.children[0], options), realize_group(spec.children[1], options));
      break;
    case K::Wreath:
      g = wreath_product(realize_group(spec.children[0], options), realize_group(spec.children[1], options));
      break;
  }
  g.set_label(label);
  return g;
}

inline FiniteGroup realize_group(std::string_view text, const RealizeOptions& options = {}) {
  return realize_group(parse_group_spec(text), options);
}

}  // namespace scengine
