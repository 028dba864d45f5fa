#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "scengine/conjugacy.hpp"
#include "scengine/cyclotomic.hpp"
#include "scengine/errors.hpp"
#include "scengine/ff_matrix.hpp"
#include "scengine/group.hpp"
#include "scengine/number_theory.hpp"

namespace scengine {

/// Irreducible characters as rows of exact cyclotomic values, one column per
/// conjugacy class. Row 0 is the trivial character.
struct CharacterTable {
  std::string label;
  std::size_t group_order = 1;
  int conductor = 1;
  std::vector<std::size_t> class_sizes;
  std::vector<std::size_t> class_inverse;
  std::vector<std::vector<Cyclotomic>> rows;

  std::size_t size() const noexcept { return rows.size(); }
  std::size_t class_count() const noexcept { return class_sizes.size(); }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> out;
    for (const auto& r : rows) out.push_back(static_cast<std::size_t>(r[0].to_rational().get_num().get_ui()));
    return out;
  }
};

namespace detail {

using ModMatrix = std::vector<std::vector<std::uint64_t>>;

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(ModMatrix& m, std::uint64_t l) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const std::uint64_t inv = invmod(m[r][c], l);
    for (auto& x : m[r]) x = mulmod(x, inv, l);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const std::uint64_t f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = (m[i][j] + l - mulmod(f, m[r][j], l)) % l;
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

/// Basis of the null space {x : m x = 0} as rows.
inline ModMatrix null_space(ModMatrix m, std::size_t cols, std::uint64_t l) {
  const auto pivots = rref(m, l);
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  ModMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free] != 0) continue;
    std::vector<std::uint64_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (l - m[i][free]) % l;
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Characteristic polynomial (low degree first, monic) via Hessenberg reduction.
inline std::vector<std::uint64_t> char_poly(ModMatrix a, std::uint64_t l) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k + 2 <= n; ++k) {
    std::size_t piv = k + 1;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) continue;
    if (piv != k + 1) {
      std::swap(a[piv], a[k + 1]);
      for (auto& row : a) std::swap(row[piv], row[k + 1]);
    }
    const std::uint64_t inv = invmod(a[k + 1][k], l);
    for (std::size_t i = k + 2; i < n; ++i) {
      const std::uint64_t f = mulmod(a[i][k], inv, l);
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) a[i][j] = (a[i][j] + l - mulmod(f, a[k + 1][j], l)) % l;
      for (std::size_t j = 0; j < n; ++j) a[j][k + 1] = (a[j][k + 1] + mulmod(f, a[j][i], l)) % l;
    }
  }
  std::vector<std::vector<std::uint64_t>> p(n + 1);
  p[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    // p_m = (x - a[m-1][m-1]) p_{m-1} - sum_{i<m-1} a[i][m-1] * prod_{j=i+1}^{m-1} a[j][j-1] * p_i
    std::vector<std::uint64_t> cur(m + 1, 0);
    for (std::size_t d = 0; d < p[m - 1].size(); ++d) {
      cur[d + 1] = (cur[d + 1] + p[m - 1][d]) % l;
      cur[d] = (cur[d] + l - mulmod(a[m - 1][m - 1], p[m - 1][d], l)) % l;
    }
    std::uint64_t t = 1;
    for (std::size_t i = m - 1; i-- > 0;) {
      t = mulmod(t, a[i + 1][i], l);
      const std::uint64_t f = mulmod(t, a[i][m - 1], l);
      if (f == 0) continue;
      for (std::size_t d = 0; d < p[i].size(); ++d) cur[d] = (cur[d] + l - mulmod(f, p[i][d], l)) % l;
    }
    p[m] = std::move(cur);
  }
  return p[n];
}

inline std::vector<std::uint64_t> poly_roots(const std::vector<std::uint64_t>& poly, std::uint64_t l) {
  std::vector<std::uint64_t> roots;
  const std::size_t deg = poly.size() - 1;
  for (std::uint64_t x = 0; x < l && roots.size() < deg; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t d = poly.size(); d-- > 0;) acc = (mulmod(acc, x, l) + poly[d]) % l;
    if (acc == 0) roots.push_back(x);
  }
  return roots;
}

inline std::uint64_t dixon_prime(std::uint64_t exponent, std::uint64_t order) {
  std::uint64_t l = exponent + 1;
  while (l <= 2 * order || !is_prime(l)) l += exponent;
  return l;
}

}  // namespace detail

/// Class-algebra structure constants c[i][j][k] = #{(x, y) in K_i x K_j : x y = g_k}.
inline std::vector<std::vector<std::vector<std::uint32_t>>> class_structure_constants(const FiniteGroup& g,
                                                                                      const ConjugacyData& cd) {
  const std::size_t r = cd.size();
  std::vector<std::vector<std::vector<std::uint32_t>>> c(
      r, std::vector<std::vector<std::uint32_t>>(r, std::vector<std::uint32_t>(r, 0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      const std::size_t z = cd.representatives[k];
      for (auto x : cd.classes[i]) ++c[i][cd.class_of[g.mul(g.inverse(x), z)]][k];
    }
  }
  return c;
}

inline constexpr std::size_t kMaxDixonClasses = 40;

inline void sort_rows(CharacterTable& t) {
  std::stable_sort(t.rows.begin() + 1, t.rows.end(), [](const auto& a, const auto& b) {
    const Rational da = a[0].to_rational(), db = b[0].to_rational();
    if (da != db) return da < db;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (lex_less(a[k], b[k])) return true;
      if (lex_less(b[k], a[k])) return false;
    }
    return false;
  });
}

/// Exact orthogonality check (both relations).
inline bool verify_orthogonality(const CharacterTable& t) {
  const std::size_t h = t.size(), r = t.class_count();
  if (h != r) return false;
  std::vector<std::vector<Cyclotomic>> conj(h);
  for (std::size_t i = 0; i < h; ++i) {
    if (t.rows[i].size() != r) return false;
    for (const auto& v : t.rows[i]) conj[i].push_back(v.conj());
  }
  for (std::size_t a = 0; a < h; ++a) {
    for (std::size_t b = a; b < h; ++b) {
      Cyclotomic s;
      for (std::size_t k = 0; k < r; ++k) s += (t.rows[a][k] * conj[b][k]).scaled(Rational(static_cast<unsigned long>(t.class_sizes[k])));
      if (s != Cyclotomic(static_cast<long long>(a == b ? t.group_order : 0))) return false;
    }
  }
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t l = k; l < r; ++l) {
      Cyclotomic s;
      for (std::size_t a = 0; a < h; ++a) s += t.rows[a][k] * conj[a][l];
      const long long expect = k == l ? static_cast<long long>(t.group_order / t.class_sizes[k]) : 0;
      if (s != Cyclotomic(expect)) return false;
    }
  }
  return true;
}

/// Character table by the Dixon–Burnside method: common eigenvectors of the
/// class matrices over GF(l), l = 1 mod exp(G), lifted to cyclotomics.
inline CharacterTable character_table(const FiniteGroup& g, const ConjugacyData& cd, std::uint64_t seed = 20240601) {
  const std::size_t r = cd.size();
  if (r > kMaxDixonClasses) throw BoundError("character tables are limited to " + std::to_string(kMaxDixonClasses) + " classes");
  const std::uint64_t n = g.order();
  const std::uint64_t e = g.exponent();
  const std::uint64_t l = detail::dixon_prime(e, n);
  const auto c = class_structure_constants(g, cd);

  // (M_i)_{jk} = c(i, j, k); central characters are common right eigenvectors.
  const auto apply = [&](const std::vector<std::uint64_t>& coeff, const std::vector<std::uint64_t>& v) {
    std::vector<std::uint64_t> out(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      if (coeff[i] == 0) continue;
      for (std::size_t j = 0; j < r; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < r; ++k) acc += static_cast<std::uint64_t>(c[i][j][k]) * v[k] % l;
        out[j] = (out[j] + mulmod(coeff[i], acc % l, l)) % l;
      }
    }
    return out;
  };

  std::mt19937_64 rng(seed);
  std::vector<detail::ModMatrix> pending;
  {
    detail::ModMatrix full(r, std::vector<std::uint64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i) full[i][i] = 1;
    pending.push_back(std::move(full));
  }
  std::vector<std::vector<std::uint64_t>> omegas;

  // Split a subspace (rows in RREF) by the eigenspaces of sum_i coeff_i M_i.
  const auto split = [&](const detail::ModMatrix& basis, const std::vector<std::uint64_t>& coeff) {
    const std::size_t d = basis.size();
    std::vector<std::size_t> pivots;
    for (const auto& row : basis) {
      std::size_t p = 0;
      while (row[p] == 0) ++p;
      pivots.push_back(p);
    }
    detail::ModMatrix restricted(d, std::vector<std::uint64_t>(d, 0));
    for (std::size_t t = 0; t < d; ++t) {
      const auto image = apply(coeff, basis[t]);
      for (std::size_t s = 0; s < d; ++s) restricted[s][t] = image[pivots[s]];
    }
    const auto roots = detail::poly_roots(detail::char_poly(restricted, l), l);
    std::vector<detail::ModMatrix> parts;
    if (roots.size() < 2) return parts;
    std::size_t total = 0;
    for (auto lambda : roots) {
      auto shifted = restricted;
      for (std::size_t s = 0; s < d; ++s) shifted[s][s] = (shifted[s][s] + l - lambda) % l;
      const auto kernel = detail::null_space(shifted, d, l);
      detail::ModMatrix part;
      for (const auto& coords : kernel) {
        std::vector<std::uint64_t> v(r, 0);
        for (std::size_t t = 0; t < d; ++t) {
          if (coords[t] == 0) continue;
          for (std::size_t k = 0; k < r; ++k) v[k] = (v[k] + mulmod(coords[t], basis[t][k], l)) % l;
        }
        part.push_back(std::move(v));
      }
      detail::rref(part, l);
      total += part.size();
      parts.push_back(std::move(part));
    }
    if (total != d) throw VerificationError("class matrix not diagonalizable over the splitting prime");
    return parts;
  };

  while (!pending.empty()) {
    auto basis = std::move(pending.back());
    pending.pop_back();
    if (basis.size() == 1) {
      auto w = basis[0];
      const std::uint64_t inv = invmod(w[0], l);
      for (auto& x : w) x = mulmod(x, inv, l);
      omegas.push_back(std::move(w));
      continue;
    }
    std::vector<detail::ModMatrix> parts;
    for (int attempt = 0; attempt < 3 && parts.empty(); ++attempt) {
      std::vector<std::uint64_t> coeff(r);
      for (auto& x : coeff) x = rng() % l;
      parts = split(basis, coeff);
    }
    for (std::size_t i = 1; i < r && parts.empty(); ++i) {
      std::vector<std::uint64_t> coeff(r, 0);
      coeff[i] = 1;
      parts = split(basis, coeff);
    }
    if (parts.empty()) throw VerificationError("failed to split a common eigenspace");
    for (auto& p : parts) pending.push_back(std::move(p));
  }
  if (omegas.size() != r) throw VerificationError("wrong number of central characters");

  // Powers of class representatives: pow_class[k][t] = class of g_k^t.
  std::vector<std::vector<std::size_t>> pow_class(r);
  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t o = cd.element_orders[k];
    std::size_t x = 0;
    for (std::size_t t = 0; t < o; ++t) {
      pow_class[k].push_back(cd.class_of[x]);
      x = g.mul(x, cd.representatives[k]);
    }
  }
  const std::uint64_t big_z = powmod(primitive_root(l), (l - 1) / e, l);

  CharacterTable table;
  table.label = g.label();
  table.group_order = n;
  table.conductor = static_cast<int>(e);
  table.class_sizes = cd.sizes;
  table.class_inverse = cd.inverse_map;
  for (const auto& w : omegas) {
    std::uint64_t s = 0;
    for (std::size_t k = 0; k < r; ++k) {
      s = (s + mulmod(mulmod(w[k], w[cd.inverse_map[k]], l), invmod(cd.sizes[k] % l, l), l)) % l;
    }
    const std::uint64_t d2 = mulmod(n % l, invmod(s, l), l);
    std::uint64_t d = 0;
    for (std::uint64_t cand = 1; cand * cand <= n; ++cand) {
      if (cand * cand % l == d2) {
        d = cand;
        break;
      }
    }
    if (d == 0) throw VerificationError("no integral degree for a central character");
    std::vector<std::uint64_t> chi(r);
    for (std::size_t k = 0; k < r; ++k) chi[k] = mulmod(mulmod(d, w[k], l), invmod(cd.sizes[k] % l, l), l);

    std::vector<Cyclotomic> row;
    for (std::size_t k = 0; k < r; ++k) {
      const std::uint64_t o = cd.element_orders[k];
      const std::uint64_t z = powmod(big_z, e / o, l);
      const std::uint64_t inv_o = invmod(o % l, l);
      std::vector<long long> counts(e, 0);
      for (std::uint64_t j = 0; j < o; ++j) {
        std::uint64_t acc = 0;
        const std::uint64_t zj = powmod(z, (o - j) % o, l);
        std::uint64_t zt = 1;
        for (std::uint64_t t = 0; t < o; ++t) {
          acc = (acc + mulmod(chi[pow_class[k][t]], zt, l)) % l;
          zt = mulmod(zt, zj, l);
        }
        const std::uint64_t m = mulmod(acc, inv_o, l);
        if (m > d) throw VerificationError("eigenvalue multiplicity out of range");
        counts[j * (e / o)] += static_cast<long long>(m);
      }
      row.push_back(Cyclotomic::from_root_counts(static_cast<int>(e), counts));
    }
    table.rows.push_back(std::move(row));
  }
  const auto trivial = std::find_if(table.rows.begin(), table.rows.end(), [](const auto& row) {
    return std::all_of(row.begin(), row.end(), [](const Cyclotomic& v) { return v == Cyclotomic(1); });
  });
  if (trivial == table.rows.end()) throw VerificationError("trivial character missing");
  std::iter_swap(table.rows.begin(), trivial);
  sort_rows(table);
  if (!verify_orthogonality(table)) throw VerificationError("character table failed orthogonality");
  return table;
}

/// Irr(GF(q)^k) with classes and rows both indexed by vector codes:
/// chi_a(v) = zeta_q^{a . v}.
inline CharacterTable abelian_dual(std::uint32_t q, std::uint32_t k) {
  if (!is_prime(q)) throw PreconditionError("abelian_dual needs a prime q");
  const std::uint64_t size = ipow(q, k);
  if (size > 10000) throw BoundError("elementary abelian group too large for an explicit dual");
  CharacterTable t;
  t.label = "elemab:" + std::to_string(q) + "^" + std::to_string(k);
  t.group_order = size;
  t.conductor = static_cast<int>(q);
  t.class_sizes.assign(size, 1);
  t.class_inverse.resize(size);
  std::vector<Cyclotomic> roots;
  for (std::uint32_t j = 0; j < q; ++j) roots.push_back(Cyclotomic::root_of_unity(static_cast<int>(q), j));
  std::vector<std::vector<std::uint32_t>> vecs(size);
  for (std::uint32_t v = 0; v < size; ++v) {
    vecs[v] = decode_vector(v, k, q);
    auto neg = vecs[v];
    for (auto& x : neg) x = (q - x) % q;
    t.class_inverse[v] = encode_vector(neg, q);
  }
  for (std::uint32_t a = 0; a < size; ++a) {
    std::vector<Cyclotomic> row;
    row.reserve(size);
    for (std::uint32_t v = 0; v < size; ++v) {
      std::uint32_t dot = 0;
      for (std::uint32_t i = 0; i < k; ++i) dot += vecs[a][i] * vecs[v][i];
      row.push_back(roots[dot % q]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Coordinates of an elementary abelian group relative to a basis chosen
/// greedily in element order: coords[x] is the code of x.
struct ElemabCoordinates {
  std::uint32_t p = 1;
  std::uint32_t rank = 0;
  std::vector<std::size_t> basis;
  std::vector<std::uint32_t> code_of;   // element index -> vector code
  std::vector<std::size_t> element_of;  // vector code -> element index
};

inline ElemabCoordinates elemab_coordinates(const FiniteGroup& g) {
  ElemabCoordinates out;
  const std::size_t n = g.order();
  if (n == 1) {
    out.code_of = {0};
    out.element_of = {0};
    return out;
  }
  const auto primes = prime_divisors(n);
  if (primes.size() != 1 || !g.is_abelian() || g.exponent() != primes[0]) {
    throw PreconditionError("group is not elementary abelian");
  }
  out.p = static_cast<std::uint32_t>(primes[0]);
  SubgroupElements h;
  h.member.assign(n, 0);
  h.member[0] = 1;
  h.elements.push_back(0);
  std::vector<std::size_t> gens;
  for (std::size_t x = 1; x < n; ++x) {
    if (!h.contains(x)) extend_subgroup(g, h, gens, x);
  }
  out.basis = gens;
  out.rank = static_cast<std::uint32_t>(gens.size());
  out.code_of.assign(n, 0);
  out.element_of.assign(n, 0);
  for (std::uint32_t code = 0; code < n; ++code) {
    const auto v = decode_vector(code, out.rank, out.p);
    std::size_t x = 0;
    for (std::uint32_t i = 0; i < out.rank; ++i) x = g.mul(x, g.power(gens[i], v[i]));
    out.code_of[x] = code;
    out.element_of[code] = x;
  }
  return out;
}

/// Irr(V) for a realized elementary abelian group, columns in class order of
/// `cd` and rows indexed by character codes a (chi_a(v) = zeta_p^{a . coords(v)}).
inline CharacterTable abelian_dual(const FiniteGroup& g, const ConjugacyData& cd) {
  const auto coords = elemab_coordinates(g);
  const auto base = abelian_dual(coords.p, coords.rank);
  CharacterTable t = base;
  t.label = g.label();
  t.class_sizes = cd.sizes;
  t.class_inverse = cd.inverse_map;
  for (std::size_t a = 0; a < base.size(); ++a) {
    for (std::size_t k = 0; k < cd.size(); ++k) t.rows[a][k] = base.rows[a][coords.code_of[cd.representatives[k]]];
  }
  return t;
}

/// A class function on a subset of classes.
struct ClassFunction {
  std::vector<std::size_t> classes;
  std::vector<Cyclotomic> values;

  Cyclotomic at(std::size_t cls) const {
    const auto it = std::find(classes.begin(), classes.end(), cls);
    if (it == classes.end()) throw PreconditionError("class not in the domain of the class function");
    return values[static_cast<std::size_t>(it - classes.begin())];
  }

  friend ClassFunction operator-(const ClassFunction& a, const ClassFunction& b) {
    if (a.classes != b.classes) throw PreconditionError("class functions on different domains");
    ClassFunction r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] -= b.values[i];
    return r;
  }
};

inline ClassFunction full_class_function(std::vector<Cyclotomic> values) {
  ClassFunction f;
  f.classes.resize(values.size());
  std::iota(f.classes.begin(), f.classes.end(), 0);
  f.values = std::move(values);
  return f;
}

inline ClassFunction restrict_class_function(const ClassFunction& f, const std::vector<std::size_t>& classes) {
  if (classes.empty()) throw PreconditionError("restriction to an empty class set");
  ClassFunction r;
  for (auto c : classes) {
    r.classes.push_back(c);
    r.values.push_back(f.at(c));
  }
  return r;
}

inline ClassFunction regular_character(const ConjugacyData& cd) {
  std::vector<Cyclotomic> v(cd.size(), Cyclotomic(0));
  v[0] = Cyclotomic(static_cast<long long>(cd.group_order));
  return full_class_function(std::move(v));
}

/// Regular character of G/M inflated to G: |G:M| on M, 0 elsewhere.
inline ClassFunction inflated_regular_character(const ConjugacyData& cd, const std::vector<std::size_t>& m_classes) {
  std::size_t m_order = 0;
  for (auto c : m_classes) m_order += cd.sizes[c];
  std::vector<Cyclotomic> v(cd.size(), Cyclotomic(0));
  for (auto c : m_classes) v[c] = Cyclotomic(static_cast<long long>(cd.group_order / m_order));
  return full_class_function(std::move(v));
}

inline ClassFunction trivial_character(const ConjugacyData& cd) {
  return full_class_function(std::vector<Cyclotomic>(cd.size(), Cyclotomic(1)));
}

inline nlohmann::json to_json(const CharacterTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& v : r) row.push_back(to_json(v));
    rows.push_back(row);
  }
  return {{"group", t.label}, {"conductor", t.conductor}, {"classes", t.class_sizes}, {"rows", rows}};
}

}  // namespace scengine
