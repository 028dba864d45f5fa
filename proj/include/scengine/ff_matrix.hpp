#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "scengine/errors.hpp"
#include "scengine/finite_field.hpp"

namespace scengine {

/// Square matrix over a finite field, row-major. Matrices act on column
/// vectors: v -> M v.
class FFMatrix {
 public:
  using Element = FiniteField::Element;

  FFMatrix(FieldPtr field, std::size_t n) : field_(std::move(field)), n_(n), entries_(n * n, 0) {}

  static FFMatrix identity(FieldPtr field, std::size_t n) {
    FFMatrix m(std::move(field), n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Integer entries reduced into the prime subfield.
  static FFMatrix from_integers(FieldPtr field, const std::vector<std::vector<long long>>& rows) {
    const std::size_t n = rows.size();
    FFMatrix m(field, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw PreconditionError("matrix must be square");
      for (std::size_t j = 0; j < n; ++j) m(i, j) = field->from_integer(rows[i][j]);
    }
    return m;
  }

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t dimension() const noexcept { return n_; }
  Element& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  Element operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<Element>& entries() const noexcept { return entries_; }

  friend FFMatrix operator*(const FFMatrix& a, const FFMatrix& b) {
    if (a.n_ != b.n_) throw PreconditionError("matrix dimension mismatch");
    const FiniteField& f = *a.field_;
    FFMatrix r(a.field_, a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      for (std::size_t k = 0; k < a.n_; ++k) {
        const Element x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) r(i, j) = f.add(r(i, j), f.mul(x, b(k, j)));
      }
    }
    return r;
  }

  friend bool operator==(const FFMatrix& a, const FFMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_ && *a.field_ == *b.field_;
  }

  bool is_identity() const { return *this == identity(field_, n_); }

  FFMatrix transpose() const {
    FFMatrix r(field_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    }
    return r;
  }

  Element determinant() const {
    const FiniteField& f = *field_;
    std::vector<Element> a = entries_;
    Element det = 1;
    for (std::size_t col = 0; col < n_; ++col) {
      std::size_t pivot = col;
      while (pivot < n_ && a[pivot * n_ + col] == 0) ++pivot;
      if (pivot == n_) return 0;
      if (pivot != col) {
        for (std::size_t j = 0; j < n_; ++j) std::swap(a[pivot * n_ + j], a[col * n_ + j]);
        det = f.neg(det);
      }
      const Element pv = a[col * n_ + col];
      det = f.mul(det, pv);
      const Element pinv = f.inv(pv);
      for (std::size_t r = col + 1; r < n_; ++r) {
        const Element factor = f.mul(a[r * n_ + col], pinv);
        if (factor == 0) continue;
        for (std::size_t j = col; j < n_; ++j) a[r * n_ + j] = f.sub(a[r * n_ + j], f.mul(factor, a[col * n_ + j]));
      }
    }
    return det;
  }

  bool is_invertible() const { return determinant() != 0; }

  FFMatrix inverse() const {
    const FiniteField& f = *field_;
    std::vector<Element> a = entries_;
    FFMatrix inv = identity(field_, n_);
    for (std::size_t col = 0; col < n_; ++col) {
      std::size_t pivot = col;
      while (pivot < n_ && a[pivot * n_ + col] == 0) ++pivot;
      if (pivot == n_) throw PreconditionError("singular matrix has no inverse");
      if (pivot != col) {
        for (std::size_t j = 0; j < n_; ++j) {
          std::swap(a[pivot * n_ + j], a[col * n_ + j]);
          std::swap(inv(pivot, j), inv(col, j));
        }
      }
      const Element pinv = f.inv(a[col * n_ + col]);
      for (std::size_t j = 0; j < n_; ++j) {
        a[col * n_ + j] = f.mul(a[col * n_ + j], pinv);
        inv(col, j) = f.mul(inv(col, j), pinv);
      }
      for (std::size_t r = 0; r < n_; ++r) {
        if (r == col) continue;
        const Element factor = a[r * n_ + col];
        if (factor == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
          a[r * n_ + j] = f.sub(a[r * n_ + j], f.mul(factor, a[col * n_ + j]));
          inv(r, j) = f.sub(inv(r, j), f.mul(factor, inv(col, j)));
        }
      }
    }
    return inv;
  }

  /// Least t >= 1 with M^t = I.
  std::uint64_t multiplicative_order() const {
    if (!is_invertible()) throw PreconditionError("singular matrix has no multiplicative order");
    const FFMatrix id = identity(field_, n_);
    FFMatrix x = *this;
    std::uint64_t t = 1;
    while (!(x == id)) {
      x = x * *this;
      ++t;
    }
    return t;
  }

  std::vector<Element> apply(std::span<const Element> v) const {
    const FiniteField& f = *field_;
    std::vector<Element> r(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      Element acc = 0;
      for (std::size_t j = 0; j < n_; ++j) acc = f.add(acc, f.mul((*this)(i, j), v[j]));
      r[i] = acc;
    }
    return r;
  }

  nlohmann::json to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < n_; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t j = 0; j < n_; ++j) row.push_back((*this)(i, j));
      rows.push_back(row);
    }
    return rows;
  }

 private:
  FieldPtr field_;
  std::size_t n_;
  std::vector<Element> entries_;
};

/// Vectors of GF(q)^n encoded as sum_i v_i q^i (q = field order).
inline std::uint32_t encode_vector(std::span<const FiniteField::Element> v, std::uint32_t q) {
  std::uint32_t code = 0;
  for (std::size_t i = v.size(); i-- > 0;) code = code * q + v[i];
  return code;
}

inline std::vector<FiniteField::Element> decode_vector(std::uint32_t code, std::size_t n, std::uint32_t q) {
  std::vector<FiniteField::Element> v(n);
  for (auto& x : v) {
    x = code % q;
    code /= q;
  }
  return v;
}

/// Parse a JSON array of square integer matrices.
inline std::vector<FFMatrix> matrices_from_json(const nlohmann::json& j, const FieldPtr& field) {
  if (!j.is_array()) throw PreconditionError("generator file must hold a JSON array of matrices");
  std::vector<FFMatrix> out;
  for (const auto& m : j) {
    out.push_back(FFMatrix::from_integers(field, m.get<std::vector<std::vector<long long>>>()));
  }
  if (!out.empty()) {
    for (const auto& m : out) {
      if (m.dimension() != out.front().dimension()) throw PreconditionError("generator matrices differ in size");
    }
  }
  return out;
}

}  // namespace scengine
