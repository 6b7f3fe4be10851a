#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace convolutive {

using BigInt = boost::multiprecision::cpp_int;

/// Formal power series a_0 + a_1 q + ... + a_N q^N known exactly up to q^N.
///
/// Values are immutable once built. Binary operations on two series work at
/// the smaller of the two orders.
class TruncatedSeries {
 public:
  /// Zero series of order 0.
  TruncatedSeries() : coeffs_(1) {}

  explicit TruncatedSeries(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
      throw std::invalid_argument("series needs at least one coefficient");
    }
  }

  TruncatedSeries(std::initializer_list<long long> coeffs)
      : TruncatedSeries(std::vector<BigInt>(coeffs.begin(), coeffs.end())) {}

  static TruncatedSeries zero(std::size_t order) {
    return TruncatedSeries(std::vector<BigInt>(order + 1));
  }

  static TruncatedSeries one(std::size_t order) {
    std::vector<BigInt> c(order + 1);
    c[0] = 1;
    return TruncatedSeries(std::move(c));
  }

  /// c * q^power, truncated at `order` (zero if power > order).
  static TruncatedSeries monomial(const BigInt& c, std::size_t power, std::size_t order) {
    std::vector<BigInt> v(order + 1);
    if (power <= order) v[power] = c;
    return TruncatedSeries(std::move(v));
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  std::span<const BigInt> coeffs() const { return coeffs_; }
  const BigInt& operator[](std::size_t n) const { return coeffs_[n]; }

  TruncatedSeries truncated(std::size_t order) const {
    if (order >= this->order()) return *this;
    return TruncatedSeries(std::vector<BigInt>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  friend std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s) {
    os << '[';
    for (std::size_t i = 0; i < s.coeffs_.size(); ++i) {
      if (i) os << ',';
      os << s.coeffs_[i];
    }
    return os << "] + O(q^" << s.order() + 1 << ')';
  }

 private:
  std::vector<BigInt> coeffs_;
};

inline TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<BigInt> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = a[i] + b[i];
  return TruncatedSeries(std::move(c));
}

inline TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<BigInt> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = a[i] - b[i];
  return TruncatedSeries(std::move(c));
}

inline TruncatedSeries scale(const TruncatedSeries& a, const BigInt& k) {
  std::vector<BigInt> c(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : c) x *= k;
  return TruncatedSeries(std::move(c));
}

/// Multiplies by q^k, keeping the order of `a`.
inline TruncatedSeries shift(const TruncatedSeries& a, std::size_t k) {
  std::vector<BigInt> c(a.order() + 1);
  for (std::size_t i = k; i <= a.order(); ++i) c[i] = a[i - k];
  return TruncatedSeries(std::move(c));
}

/// Cauchy product at order min(order(a), order(b)). Zero coefficients of `a`
/// are skipped, so sparse left operands (eta factors) are cheap.
inline TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<BigInt> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    const BigInt& ai = a[i];
    for (std::size_t j = 0; i + j <= n; ++j) {
      if (!b[j].is_zero()) c[i + j] += ai * b[j];
    }
  }
  return TruncatedSeries(std::move(c));
}

inline TruncatedSeries pow(const TruncatedSeries& a, unsigned m) {
  TruncatedSeries result = TruncatedSeries::one(a.order());
  TruncatedSeries base = a;
  bool first = true;
  while (m > 0) {
    if (m & 1U) {
      result = first ? base : mul(result, base);
      first = false;
    }
    m >>= 1U;
    if (m > 0) base = mul(base, base);
  }
  return result;
}

/// Multiplicative inverse of a series with constant term +1 or -1.
/// b_0 = a_0 and b_n = -a_0 * sum_{k=1..n} a_k b_{n-k}; a_0^2 = 1 keeps every
/// step inside the integers.
inline TruncatedSeries inverse(const TruncatedSeries& a) {
  const BigInt& a0 = a[0];
  if (a0 != 1 && a0 != -1) throw std::domain_error("non-invertible series");
  const std::size_t n = a.order();
  std::vector<std::size_t> support;
  for (std::size_t k = 1; k <= n; ++k) {
    if (!a[k].is_zero()) support.push_back(k);
  }
  std::vector<BigInt> b(n + 1);
  b[0] = a0;
  BigInt acc;
  for (std::size_t i = 1; i <= n; ++i) {
    acc = 0;
    for (std::size_t k : support) {
      if (k > i) break;
      acc += a[k] * b[i - k];
    }
    b[i] = (a0 == 1) ? BigInt(-acc) : acc;
  }
  return TruncatedSeries(std::move(b));
}

/// Huffing operator: sum a_{mn} q^n, at order floor(order(a)/m).
inline TruncatedSeries huff(const TruncatedSeries& a, std::size_t m) {
  if (m == 0) throw std::invalid_argument("huff modulus must be positive");
  const std::size_t n = a.order() / m;
  std::vector<BigInt> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = a[i * m];
  return TruncatedSeries(std::move(c));
}

/// (-1)^n a_n, i.e. the series evaluated at -q.
inline TruncatedSeries dual(const TruncatedSeries& a) {
  std::vector<BigInt> c(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return TruncatedSeries(std::move(c));
}

struct ConvolutivityVerdict {
  unsigned m = 2;
  std::size_t terms_testable = 0;  // indices n = 0..K with m*n <= order
  bool holds = false;
  std::optional<std::size_t> first_violation;

  friend bool operator==(const ConvolutivityVerdict&, const ConvolutivityVerdict&) = default;
};

/// Tests sum a_{mn} q^n == (sum a_n q^n)^m coefficient by coefficient for
/// every n with mn <= order(a), stopping at the first mismatch.
///
/// The m-th power is built one coefficient at a time (powers a^2..a^m are
/// extended in lockstep), so a violation at small n costs O(m n^2) work
/// instead of a full truncated power.
inline ConvolutivityVerdict is_m_convolutive(std::span<const BigInt> a, unsigned m) {
  if (m < 2) throw std::invalid_argument("convolutivity needs m >= 2");
  if (a.size() < m + 1) throw std::domain_error("insufficient terms");
  const std::size_t k_max = (a.size() - 1) / m;

  ConvolutivityVerdict v;
  v.m = m;
  v.terms_testable = k_max + 1;
  // powers[j][n] = [q^n] a^(j+2)
  std::vector<std::vector<BigInt>> powers(m - 1);
  BigInt acc;
  for (std::size_t n = 0; n <= k_max; ++n) {
    const std::vector<BigInt>* prev = nullptr;
    for (unsigned j = 0; j + 1 < m; ++j) {
      acc = 0;
      for (std::size_t i = 0; i <= n; ++i) {
        if (a[i].is_zero()) continue;
        const BigInt& rhs = prev ? (*prev)[n - i] : a[n - i];
        if (!rhs.is_zero()) acc += a[i] * rhs;
      }
      powers[j].push_back(acc);
      prev = &powers[j];
    }
    if (powers[m - 2][n] != a[m * n]) {
      v.first_violation = n;
      return v;
    }
  }
  v.holds = true;
  return v;
}

inline ConvolutivityVerdict is_m_convolutive(const TruncatedSeries& a, unsigned m) {
  return is_m_convolutive(a.coeffs(), m);
}

}  // namespace convolutive
