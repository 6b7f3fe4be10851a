#pragma once

#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "convolutive/series.hpp"

namespace convolutive {

/// Finite product of f_m = (q^m; q^m)_inf raised to nonzero integer powers,
/// keyed by level m.
class EtaProductSpec {
 public:
  EtaProductSpec() = default;

  explicit EtaProductSpec(std::map<int, int> factors) : factors_(std::move(factors)) {
    for (const auto& [level, exponent] : factors_) {
      if (level <= 0) throw std::invalid_argument("eta level must be positive");
      if (exponent == 0) throw std::invalid_argument("eta exponent must be nonzero");
    }
  }

  EtaProductSpec(std::initializer_list<std::pair<const int, int>> factors)
      : EtaProductSpec(std::map<int, int>(factors)) {}

  const std::map<int, int>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }

  /// gcd of all levels is 1. The empty product has no levels and is not
  /// primitive.
  bool is_primitive() const {
    int g = 0;
    for (const auto& [level, exponent] : factors_) g = std::gcd(g, level);
    return g == 1;
  }

  /// Renders as "1^-1 3^-1 4^1 6^2 12^-1"; the empty product renders as "".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [level, exponent] : factors_) {
      if (!first) os << ' ';
      os << level << '^' << exponent;
      first = false;
    }
    return os.str();
  }

  friend bool operator==(const EtaProductSpec&, const EtaProductSpec&) = default;

  friend std::ostream& operator<<(std::ostream& os, const EtaProductSpec& s) {
    return os << '{' << s.to_string() << '}';
  }

 private:
  std::map<int, int> factors_;
};

/// Parses whitespace-separated tokens "level^exponent" (a bare "level" means
/// exponent 1). Throws std::invalid_argument naming the offending token.
inline EtaProductSpec parse_eta_spec(std::string_view text) {
  std::map<int, int> factors;
  std::istringstream in{std::string(text)};
  std::string token;
  auto parse_int = [&](std::string_view digits, bool allow_sign) -> int {
    if (digits.empty()) throw std::invalid_argument("bad eta token '" + token + "'");
    std::size_t i = 0;
    if (allow_sign && (digits[0] == '-' || digits[0] == '+')) i = 1;
    if (i == digits.size()) throw std::invalid_argument("bad eta token '" + token + "'");
    for (std::size_t j = i; j < digits.size(); ++j) {
      if (digits[j] < '0' || digits[j] > '9' || j - i > 8) {
        throw std::invalid_argument("bad eta token '" + token + "'");
      }
    }
    return std::stoi(std::string(digits));
  };
  while (in >> token) {
    const auto caret = token.find('^');
    const std::string_view tv = token;
    const int level = parse_int(tv.substr(0, caret), false);
    const int exponent = caret == std::string::npos ? 1 : parse_int(tv.substr(caret + 1), true);
    if (level <= 0) throw std::invalid_argument("eta level must be positive in '" + token + "'");
    if (exponent == 0) throw std::invalid_argument("zero exponent in '" + token + "'");
    if (!factors.emplace(level, exponent).second) {
      throw std::invalid_argument("duplicate level in '" + token + "'");
    }
  }
  return EtaProductSpec(std::move(factors));
}

/// prod_{k>=1} (1 - q^{mk}) to order N via the pentagonal number theorem:
/// 1 + sum_{k>=1} (-1)^k (q^{m k(3k-1)/2} + q^{m k(3k+1)/2}).
inline TruncatedSeries eta_factor(int m, std::size_t order) {
  if (m <= 0) throw std::invalid_argument("eta level must be positive");
  std::vector<BigInt> c(order + 1);
  c[0] = 1;
  const std::size_t step = static_cast<std::size_t>(m);
  for (std::size_t k = 1;; ++k) {
    const std::size_t lo = step * (k * (3 * k - 1) / 2);
    if (lo > order) break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    c[lo] = sign;
    const std::size_t hi = step * (k * (3 * k + 1) / 2);
    if (hi <= order) c[hi] = sign;
  }
  return TruncatedSeries(std::move(c));
}

/// Exact expansion of the eta-product. Positive powers are accumulated with
/// sparse products of eta factors; all negative powers are gathered into one
/// denominator that is inverted once.
inline TruncatedSeries eta_product_expand(const EtaProductSpec& spec, std::size_t order) {
  TruncatedSeries numerator = TruncatedSeries::one(order);
  TruncatedSeries denominator = TruncatedSeries::one(order);
  for (const auto& [level, exponent] : spec.factors()) {
    const TruncatedSeries factor = eta_factor(level, order);
    TruncatedSeries& target = exponent > 0 ? numerator : denominator;
    for (int i = 0; i < std::abs(exponent); ++i) target = mul(factor, target);
  }
  if (denominator == TruncatedSeries::one(order)) return numerator;
  return mul(numerator, inverse(denominator));
}

}  // namespace convolutive
