#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <memory>
#include <string>
#include <vector>

#include "scengine/errors.hpp"
#include "scengine/number_theory.hpp"

namespace scengine {

/// GF(p^k) with elements encoded as integers sum_i c_i p^i, where c_i is the
/// coefficient of x^i in the polynomial basis modulo `modulus()`.
///
/// The modulus is the lexicographically smallest monic irreducible polynomial
/// of degree k (coefficients compared from the constant term upwards), and the
/// primitive element is the smallest encoding of multiplicative order p^k - 1.
class FiniteField {
 public:
  using Element = std::uint32_t;

  static constexpr std::uint64_t kMaxOrder = 1U << 20;

  static std::shared_ptr<const FiniteField> make(std::uint32_t p, std::uint32_t k) {
    if (!is_prime(p)) throw PreconditionError("field characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) throw PreconditionError("field degree must be positive");
    const std::uint64_t q = ipow(p, k);
    if (q > kMaxOrder) throw BoundError("field order " + std::to_string(q) + " exceeds supported bound");
    return std::shared_ptr<const FiniteField>(new FiniteField(p, k));
  }

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return k_; }
  std::uint32_t order() const noexcept { return q_; }
  /// Monic modulus, lowest degree first (length k + 1).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  Element primitive_element() const noexcept { return primitive_; }
  bool is_prime_field() const noexcept { return k_ == 1; }

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return 1; }

  Element add(Element a, Element b) const {
    if (k_ == 1) return (a + b) % p_;
    Element r = 0;
    Element scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      r += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return r;
  }

  Element neg(Element a) const {
    if (k_ == 1) return (p_ - a) % p_;
    Element r = 0;
    Element scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      r += ((p_ - a % p_) % p_) * scale;
      a /= p_;
      scale *= p_;
    }
    return r;
  }

  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    if (k_ == 1) return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % p_);
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }

  Element inv(Element a) const {
    if (a == 0) throw PreconditionError("division by zero in finite field");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  Element pow(Element a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1))];
  }

  /// Discrete log base the primitive element (a != 0).
  std::uint32_t log(Element a) const {
    if (a == 0) throw PreconditionError("log of zero");
    return log_[a];
  }

  std::uint32_t multiplicative_order(Element a) const {
    if (a == 0) throw PreconditionError("zero has no multiplicative order");
    const std::uint32_t l = log_[a];
    return (q_ - 1) / static_cast<std::uint32_t>(std::gcd(l, q_ - 1));
  }

  /// Reduce an arbitrary integer into the prime subfield.
  Element from_integer(long long v) const {
    const long long p = p_;
    return static_cast<Element>(((v % p) + p) % p);
  }

  std::vector<std::uint32_t> coefficients(Element a) const {
    std::vector<std::uint32_t> c(k_);
    for (auto& x : c) {
      x = a % p_;
      a /= p_;
    }
    return c;
  }

  Element from_coefficients(const std::vector<std::uint32_t>& c) const {
    Element r = 0;
    Element scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      r += (i < c.size() ? c[i] % p_ : 0) * scale;
      scale *= p_;
    }
    return r;
  }

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
  }

 private:
  FiniteField(std::uint32_t p, std::uint32_t k) : p_(p), k_(k), q_(static_cast<std::uint32_t>(ipow(p, k))) {
    modulus_ = smallest_irreducible();
    build_tables();
  }

  // Schoolbook product of coefficient vectors reduced by the modulus.
  std::vector<std::uint32_t> poly_mulmod(const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b) const {
    std::vector<std::uint64_t> r(2 * k_, 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
      for (std::uint32_t j = 0; j < k_; ++j) r[i + j] = (r[i + j] + std::uint64_t{a[i]} * b[j]) % p_;
    }
    for (std::size_t d = r.size(); d-- > k_;) {
      const std::uint64_t c = r[d];
      if (c == 0) continue;
      for (std::uint32_t t = 0; t <= k_; ++t) {
        r[d - k_ + t] = (r[d - k_ + t] + (p_ - c) * modulus_[t]) % p_;
      }
    }
    std::vector<std::uint32_t> out(k_);
    for (std::uint32_t i = 0; i < k_; ++i) out[i] = static_cast<std::uint32_t>(r[i]);
    return out;
  }

  // Remainder of `f` modulo monic `g` over GF(p); both lowest degree first.
  static std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> f, const std::vector<std::uint32_t>& g,
                                             std::uint32_t p) {
    const std::size_t dg = g.size() - 1;
    for (std::size_t d = f.size(); d-- > dg;) {
      const std::uint64_t c = f[d];
      if (c == 0) continue;
      for (std::size_t t = 0; t <= dg; ++t) f[d - dg + t] = static_cast<std::uint32_t>((f[d - dg + t] + (p - c) * g[t]) % p);
    }
    f.resize(dg);
    return f;
  }

  bool irreducible(const std::vector<std::uint32_t>& f) const {
    const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
      const std::uint64_t count = ipow(p_, d);
      for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<std::uint32_t> g(d + 1, 0);
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < d; ++i) {
          g[i] = static_cast<std::uint32_t>(c % p_);
          c /= p_;
        }
        g[d] = 1;
        const auto rem = poly_rem(f, g, p_);
        if (std::all_of(rem.begin(), rem.end(), [](std::uint32_t x) { return x == 0; })) return false;
      }
    }
    return true;
  }

  std::vector<std::uint32_t> smallest_irreducible() const {
    if (k_ == 1) return {0, 1};
    // Enumerate (c_0, ..., c_{k-1}) with c_0 most significant.
    const std::uint64_t count = ipow(p_, k_);
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint32_t> f(k_ + 1, 0);
      std::uint64_t c = code;
      for (std::uint32_t i = k_; i-- > 0;) {
        f[i] = static_cast<std::uint32_t>(c % p_);
        c /= p_;
      }
      f[k_] = 1;
      if (f[0] != 0 && irreducible(f)) return f;
    }
    throw VerificationError("no irreducible polynomial found");
  }

  void build_tables() {
    exp_.assign(q_, 0);
    log_.assign(q_, 0);
    if (k_ == 1) {
      primitive_ = static_cast<Element>(primitive_root(p_));
      Element x = 1;
      for (std::uint32_t e = 0; e + 1 < q_; ++e) {
        exp_[e] = x;
        log_[x] = e;
        x = static_cast<Element>((static_cast<std::uint64_t>(x) * primitive_) % p_);
      }
      if (q_ == 2) exp_[0] = 1;
      return;
    }
    for (Element cand = 1; cand < q_; ++cand) {
      const auto base = coefficients(cand);
      std::vector<std::uint32_t> x(k_, 0);
      x[0] = 1;
      std::vector<char> seen(q_, 0);
      std::uint32_t e = 0;
      bool ok = true;
      for (; e + 1 < q_; ++e) {
        const Element code = from_coefficients(x);
        if (seen[code] != 0) {
          ok = false;
          break;
        }
        seen[code] = 1;
        exp_[e] = code;
        log_[code] = e;
        x = poly_mulmod(x, base);
      }
      if (ok) {
        primitive_ = cand;
        return;
      }
    }
    throw VerificationError("no primitive element found");
  }

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  Element primitive_ = 1;
  std::vector<Element> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

}  // namespace scengine
