#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "scengine/errors.hpp"
#include "scengine/number_theory.hpp"
#include "scengine/rational.hpp"

namespace scengine {

namespace detail {

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
/// Memoized; entries are never modified once inserted.
inline const std::vector<std::int64_t>& cyclotomic_polynomial(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<std::int64_t>> cache;
  if (n < 1) throw PreconditionError("cyclotomic conductor must be positive");
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // x^n - 1 divided by every Phi_d, d | n, d < n.
  std::vector<std::int64_t> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto& divisor = cyclotomic_polynomial(d);
    const std::size_t dd = divisor.size() - 1;
    std::vector<std::int64_t> quotient(poly.size() - dd, 0);
    for (std::size_t i = poly.size() - 1; i + 1 > dd; --i) {
      const std::int64_t c = poly[i];
      quotient[i - dd] = c;
      if (c == 0) continue;
      for (std::size_t t = 0; t <= dd; ++t) poly[i - dd + t] -= c * divisor[t];
      if (i == dd) break;
    }
    poly = std::move(quotient);
  }
  std::lock_guard lock(mutex);
  return cache.emplace(n, std::move(poly)).first->second;
}

inline std::size_t degree_of(int n) {
  return cyclotomic_polynomial(n).size() - 1;
}

/// Reduce a rational polynomial modulo Phi_n; result has degree < phi(n).
inline std::vector<Rational> reduce_mod_phi(std::vector<Rational> poly, int n) {
  const auto& phi = cyclotomic_polynomial(n);
  const std::size_t d = phi.size() - 1;
  for (std::size_t i = poly.size(); i-- > d;) {
    if (sgn(poly[i]) == 0) continue;
    const Rational c = poly[i];
    for (std::size_t t = 0; t <= d; ++t) {
      if (phi[t] != 0) poly[i - d + t] -= c * phi[t];
    }
  }
  poly.resize(d);
  return poly;
}

/// Integer variant with overflow detection; returns false on overflow.
inline bool reduce_mod_phi_int(std::vector<std::int64_t>& poly, int n) {
  const auto& phi = cyclotomic_polynomial(n);
  const std::size_t d = phi.size() - 1;
  for (std::size_t i = poly.size(); i-- > d;) {
    const std::int64_t c = poly[i];
    if (c == 0) continue;
    for (std::size_t t = 0; t <= d; ++t) {
      if (phi[t] == 0) continue;
      std::int64_t prod = 0;
      if (__builtin_mul_overflow(c, phi[t], &prod)) return false;
      if (__builtin_sub_overflow(poly[i - d + t], prod, &poly[i - d + t])) return false;
    }
  }
  poly.resize(d);
  return true;
}

}  // namespace detail

/// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^{phi(n)-1}.
///
/// Values carry their own conductor; binary operations lift both operands to
/// the lcm of the conductors. Equality compares at the common conductor, so
/// 2 at conductor 1 equals 2 at conductor 7.
class Cyclotomic {
 public:
  Cyclotomic() : conductor_(1), coeffs_(1) {}
  Cyclotomic(long long value) : conductor_(1), coeffs_{Rational(static_cast<long>(value))} {}  // NOLINT
  explicit Cyclotomic(Rational value) : conductor_(1), coeffs_{std::move(value)} {}

  /// Element with the given power-basis coefficients (length must be phi(n)).
  Cyclotomic(int conductor, std::vector<Rational> coeffs)
      : conductor_(conductor), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != detail::degree_of(conductor_)) {
      throw PreconditionError("coefficient vector length must equal phi(conductor)");
    }
  }

  static Cyclotomic root_of_unity(int n, long long k) {
    std::vector<long long> counts(static_cast<std::size_t>(n), 0);
    counts[static_cast<std::size_t>(((k % n) + n) % n)] = 1;
    return from_root_counts(n, counts);
  }

  /// sum_k counts[k] * zeta_n^k, reduced.
  static Cyclotomic from_root_counts(int n, std::span<const long long> counts) {
    std::vector<std::int64_t> poly(counts.begin(), counts.end());
    if (detail::reduce_mod_phi_int(poly, n)) {
      std::vector<Rational> coeffs(poly.size());
      for (std::size_t i = 0; i < poly.size(); ++i) coeffs[i] = Rational(static_cast<long>(poly[i]));
      return Cyclotomic(n, std::move(coeffs));
    }
    std::vector<Rational> big(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) big[i] = Rational(static_cast<long>(counts[i]));
    return Cyclotomic(n, detail::reduce_mod_phi(std::move(big), n));
  }

  /// Reduce an arbitrary polynomial in zeta_n.
  static Cyclotomic from_polynomial(int n, std::vector<Rational> poly) {
    if (poly.size() < detail::degree_of(n)) poly.resize(detail::degree_of(n));
    return Cyclotomic(n, detail::reduce_mod_phi(std::move(poly), n));
  }

  int conductor() const noexcept { return conductor_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  /// Same element expressed at conductor n (n must be a multiple of conductor()).
  Cyclotomic lifted(int n) const {
    if (n == conductor_) return *this;
    if (n % conductor_ != 0) throw PreconditionError("lift target must be a multiple of the conductor");
    const std::size_t step = static_cast<std::size_t>(n / conductor_);
    std::vector<Rational> poly(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) poly[k * step] = coeffs_[k];
    return from_polynomial(n, std::move(poly));
  }

  /// Complex conjugate: zeta -> zeta^{-1}.
  Cyclotomic conj() const {
    const std::size_t n = static_cast<std::size_t>(conductor_);
    std::vector<Rational> poly(n);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) poly[(n - k) % n] += coeffs_[k];
    return from_polynomial(conductor_, std::move(poly));
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
  }

  bool is_rational() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
  }

  /// Algebraic-integer test: every power-basis coefficient is an integer.
  bool is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
  }

  Rational to_rational() const {
    if (!is_rational()) throw PreconditionError("cyclotomic value is not rational");
    return coeffs_[0];
  }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    return combine(a, b, [](Rational& x, const Rational& y) { x += y; });
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    return combine(a, b, [](Rational& x, const Rational& y) { x -= y; });
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    const int n = std::lcm(a.conductor_, b.conductor_);
    if (a.conductor_ != n) return a.lifted(n) * b;
    if (b.conductor_ != n) return a * b.lifted(n);
    if (a.is_rational()) return b.scaled(a.coeffs_[0]);
    if (b.is_rational()) return a.scaled(b.coeffs_[0]);
    if (a.is_integral() && b.is_integral()) {
      std::vector<std::int64_t> poly;
      if (integral_product(a, b, poly) && detail::reduce_mod_phi_int(poly, n)) {
        std::vector<Rational> coeffs(poly.size());
        for (std::size_t i = 0; i < poly.size(); ++i) coeffs[i] = Rational(static_cast<long>(poly[i]));
        return Cyclotomic(n, std::move(coeffs));
      }
    }
    std::vector<Rational> poly(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (sgn(a.coeffs_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) poly[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return from_polynomial(n, std::move(poly));
  }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  Cyclotomic scaled(const Rational& s) const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
    const int n = std::lcm(a.conductor_, b.conductor_);
    return a.lifted(n).coeffs_ == b.lifted(n).coeffs_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  /// Total order used for canonical table layouts: compares at the common
  /// conductor, coefficient by coefficient.
  friend bool lex_less(const Cyclotomic& a, const Cyclotomic& b) {
    const int n = std::lcm(a.conductor_, b.conductor_);
    const Cyclotomic x = a.lifted(n);
    const Cyclotomic y = b.lifted(n);
    return std::lexicographical_compare(x.coeffs_.begin(), x.coeffs_.end(), y.coeffs_.begin(), y.coeffs_.end());
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (sgn(coeffs_[k]) == 0) continue;
      const std::string c = coeffs_[k].get_str();
      if (!out.empty()) out += c[0] == '-' ? " " : " + ";
      if (k == 0) {
        out += c;
      } else {
        if (c == "-1") out += "-";
        else if (c != "1") out += c + "*";
        out += "z" + std::to_string(conductor_) + (k > 1 ? "^" + std::to_string(k) : "");
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  template <typename Op>
  static Cyclotomic combine(const Cyclotomic& a, const Cyclotomic& b, Op op) {
    const int n = std::lcm(a.conductor_, b.conductor_);
    if (a.conductor_ != n || b.conductor_ != n) return combine(a.lifted(n), b.lifted(n), op);
    Cyclotomic r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) op(r.coeffs_[i], b.coeffs_[i]);
    return r;
  }

  static bool integral_product(const Cyclotomic& a, const Cyclotomic& b, std::vector<std::int64_t>& out) {
    std::vector<std::int64_t> x(a.coeffs_.size());
    std::vector<std::int64_t> y(b.coeffs_.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!a.coeffs_[i].get_num().fits_slong_p()) return false;
      x[i] = a.coeffs_[i].get_num().get_si();
    }
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (!b.coeffs_[i].get_num().fits_slong_p()) return false;
      y[i] = b.coeffs_[i].get_num().get_si();
    }
    out.assign(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j) {
        std::int64_t prod = 0;
        if (__builtin_mul_overflow(x[i], y[j], &prod)) return false;
        if (__builtin_add_overflow(out[i + j], prod, &out[i + j])) return false;
      }
    }
    return true;
  }

  int conductor_;
  std::vector<Rational> coeffs_;
};

/// {"conductor": n, "coeffs": ["p/q", ...]}
inline nlohmann::json to_json(const Cyclotomic& c) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& r : c.coeffs()) coeffs.push_back(to_string(r));
  return {{"conductor", c.conductor()}, {"coeffs", coeffs}};
}

inline Cyclotomic cyclotomic_from_json(const nlohmann::json& j) {
  const int n = j.at("conductor").get<int>();
  std::vector<Rational> coeffs;
  for (const auto& s : j.at("coeffs")) coeffs.push_back(parse_rational(s.get<std::string>()));
  return Cyclotomic(n, std::move(coeffs));
}

}  // namespace scengine
