#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "convolutive/series.hpp"

namespace convolutive {

/// One part of a partition. Color 0 means uncolored.
struct Part {
  int size = 0;
  int color = 0;

  friend bool operator==(const Part&, const Part&) = default;
};

/// Multiset of positive parts, stored weakly decreasing by size with ties in
/// ascending color order, so multiset equality is sequence equality.
class Partition {
 public:
  Partition() = default;

  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  explicit Partition(const std::vector<int>& parts) {
    parts_.reserve(parts.size());
    for (int p : parts) parts_.push_back(Part{p, 0});
    canonicalize();
  }

  explicit Partition(std::vector<Part> parts) : parts_(std::move(parts)) { canonicalize(); }

  static Partition colored(std::vector<Part> parts) {
    for (const auto& p : parts) {
      if (p.color <= 0) throw std::invalid_argument("colors are positive labels");
    }
    return Partition(std::move(parts));
  }

  const std::vector<Part>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  long weight() const {
    long w = 0;
    for (const auto& p : parts_) w += p.size;
    return w;
  }

  bool is_colored() const {
    return std::any_of(parts_.begin(), parts_.end(), [](const Part& p) { return p.color != 0; });
  }

  std::vector<int> sizes() const {
    std::vector<int> s;
    s.reserve(parts_.size());
    for (const auto& p : parts_) s.push_back(p.size);
    return s;
  }

  int multiplicity(int size) const {
    return static_cast<int>(
        std::count_if(parts_.begin(), parts_.end(), [size](const Part& p) { return p.size == size; }));
  }

  /// size -> multiplicity, ascending by size.
  std::map<int, int> multiplicities() const {
    std::map<int, int> m;
    for (const auto& p : parts_) ++m[p.size];
    return m;
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }

  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    const std::size_t n = std::min(a.parts_.size(), b.parts_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.parts_[i].size <=> b.parts_[i].size; c != 0) return c;
      if (auto c = a.parts_[i].color <=> b.parts_[i].color; c != 0) return c;
    }
    return a.parts_.size() <=> b.parts_.size();
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) os << (parts_[i].color ? "+" : ",");
      os << parts_[i].size;
      if (parts_[i].color) os << '_' << parts_[i].color;
    }
    os << ')';
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.to_string(); }

 private:
  void canonicalize() {
    for (const auto& p : parts_) {
      if (p.size <= 0) throw std::invalid_argument("partition parts must be positive");
      if (p.color < 0) throw std::invalid_argument("negative color");
    }
    std::sort(parts_.begin(), parts_.end(), [](const Part& a, const Part& b) {
      return a.size != b.size ? a.size > b.size : a.color < b.color;
    });
  }

  std::vector<Part> parts_;
};

/// Element of the signed-square class: the integer s, weight scale * s^2.
/// s and -s are different elements.
struct SignedSquare {
  long s = 0;
  int scale = 1;

  long weight() const { return static_cast<long>(scale) * s * s; }

  friend bool operator==(const SignedSquare&, const SignedSquare&) = default;
  friend auto operator<=>(const SignedSquare&, const SignedSquare&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const SignedSquare& x) {
  os << "sq(" << x.s;
  if (x.scale != 1) os << ";x" << x.scale;
  return os << ')';
}

/// Restricted partition class, e.g. D_o, P3_{4,2}, 2P_e, [S x S]_even.
struct SetSpec {
  enum class Base { Unrestricted, Distinct, AtMostThree, Squares };

  struct Residue {
    int modulus = 1;
    int residue = 0;
    friend bool operator==(const Residue&, const Residue&) = default;
  };

  Base base = Base::Unrestricted;
  std::optional<Residue> residue;  // applied to parts before scaling
  int scale = 1;                   // the class cU
  int weight_divisor = 1;          // 2 gives [U]_even, m gives [U]_m

  static SetSpec P() { return {}; }
  static SetSpec D() { return {Base::Distinct}; }
  static SetSpec P3() { return {Base::AtMostThree}; }
  static SetSpec S() { return {Base::Squares}; }
  static SetSpec P(int modulus, int residue) { return {Base::Unrestricted, Residue{modulus, residue}}; }
  static SetSpec D(int modulus, int residue) { return {Base::Distinct, Residue{modulus, residue}}; }
  static SetSpec P3(int modulus, int residue) { return {Base::AtMostThree, Residue{modulus, residue}}; }
  static SetSpec Po() { return P(2, 1); }
  static SetSpec Pe() { return P(2, 0); }
  static SetSpec Do() { return D(2, 1); }
  static SetSpec De() { return D(2, 0); }
  static SetSpec P3o() { return P3(2, 1); }
  static SetSpec P3e() { return P3(2, 0); }

  SetSpec scaled(int c) const {
    if (c <= 0) throw std::invalid_argument("scale must be positive");
    SetSpec s = *this;
    s.scale *= c;
    return s;
  }
  SetSpec even() const { return with_divisor(2); }
  SetSpec with_divisor(int m) const {
    if (m <= 0) throw std::invalid_argument("weight divisor must be positive");
    SetSpec s = *this;
    s.weight_divisor = m;
    return s;
  }

  int max_multiplicity() const {
    switch (base) {
      case Base::Distinct: return 1;
      case Base::AtMostThree: return 3;
      default: return -1;
    }
  }

  /// Whether an unscaled part size is admissible.
  bool admits_part(int size) const {
    if (size <= 0) return false;
    if (!residue) return true;
    const int r = ((residue->residue % residue->modulus) + residue->modulus) % residue->modulus;
    return size % residue->modulus == r;
  }

  std::string name() const {
    std::string n;
    if (weight_divisor != 1) n += "[";
    if (scale != 1) n += std::to_string(scale);
    switch (base) {
      case Base::Unrestricted: n += "P"; break;
      case Base::Distinct: n += "D"; break;
      case Base::AtMostThree: n += "P3"; break;
      case Base::Squares: n += "S"; break;
    }
    if (residue) {
      if (residue->modulus == 2) {
        n += residue->residue % 2 ? "_o" : "_e";
      } else {
        n += "_{" + std::to_string(residue->modulus) + "," + std::to_string(residue->residue) + "}";
      }
    }
    if (weight_divisor == 2) n += "]_even";
    else if (weight_divisor != 1) n += "]_" + std::to_string(weight_divisor);
    return n;
  }

  friend bool operator==(const SetSpec&, const SetSpec&) = default;
};

inline bool membership(const Partition& pi, const SetSpec& spec) {
  if (spec.base == SetSpec::Base::Squares) return false;
  if (pi.is_colored()) return false;
  if (pi.weight() % spec.weight_divisor != 0) return false;
  const int cap = spec.max_multiplicity();
  for (const auto& [size, mult] : pi.multiplicities()) {
    if (size % spec.scale != 0) return false;
    if (!spec.admits_part(size / spec.scale)) return false;
    if (cap > 0 && mult > cap) return false;
  }
  return true;
}

inline bool membership(const SignedSquare& x, const SetSpec& spec) {
  return spec.base == SetSpec::Base::Squares && x.scale == spec.scale &&
         x.weight() % spec.weight_divisor == 0;
}

namespace detail {

// Depth-first over parts in decreasing size, so output is in descending
// lexicographic order of the part sequence.
inline void enumerate_parts(const SetSpec& spec, int remaining, int max_part, std::vector<int>& current,
                            std::vector<Partition>& out) {
  if (remaining == 0) {
    std::vector<int> scaled(current);
    for (int& p : scaled) p *= spec.scale;
    out.emplace_back(scaled);
    return;
  }
  const int cap = spec.max_multiplicity();
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    if (!spec.admits_part(part)) continue;
    const int max_copies = cap > 0 ? std::min(cap, remaining / part) : remaining / part;
    for (int copies = max_copies; copies >= 1; --copies) {
      current.insert(current.end(), copies, part);
      enumerate_parts(spec, remaining - copies * part, part - 1, current, out);
      current.resize(current.size() - copies);
    }
  }
}

inline long isqrt_exact(long n) {
  if (n < 0) return -1;
  long r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : -1;
}

}  // namespace detail

/// All members of a partition class with weight exactly n, each once, in
/// descending lexicographic order of their part sequences.
inline std::vector<Partition> enumerate(const SetSpec& spec, long n) {
  if (n < 0) throw std::invalid_argument("weight must be non-negative");
  if (spec.base == SetSpec::Base::Squares) {
    throw std::invalid_argument("use enumerate_squares for the signed-square class");
  }
  std::vector<Partition> out;
  if (n % spec.weight_divisor != 0 || n % spec.scale != 0) return out;
  std::vector<int> current;
  const int base_weight = static_cast<int>(n / spec.scale);
  detail::enumerate_parts(spec, base_weight, base_weight, current, out);
  return out;
}

/// Signed squares of weight n in ascending order of s.
inline std::vector<SignedSquare> enumerate_squares(const SetSpec& spec, long n) {
  if (n < 0) throw std::invalid_argument("weight must be non-negative");
  if (spec.base != SetSpec::Base::Squares) throw std::invalid_argument("not a square class");
  std::vector<SignedSquare> out;
  if (n % spec.weight_divisor != 0 || n % spec.scale != 0) return out;
  const long r = detail::isqrt_exact(n / spec.scale);
  if (r < 0) return out;
  if (r == 0) {
    out.push_back({0, spec.scale});
  } else {
    out.push_back({-r, spec.scale});
    out.push_back({r, spec.scale});
  }
  return out;
}

/// Coefficient n is the number of class members of weight n.
inline TruncatedSeries count_series(const SetSpec& spec, std::size_t order) {
  std::vector<BigInt> c(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    const long w = static_cast<long>(n);
    c[n] = spec.base == SetSpec::Base::Squares ? enumerate_squares(spec, w).size() : enumerate(spec, w).size();
  }
  return TruncatedSeries(std::move(c));
}

using TupleEntry = std::variant<Partition, SignedSquare>;

inline long weight_of(const TupleEntry& e) {
  return std::visit([](const auto& x) { return x.weight(); }, e);
}

inline std::ostream& operator<<(std::ostream& os, const TupleEntry& e) {
  std::visit([&os](const auto& x) { os << x; }, e);
  return os;
}

/// Ordered tuple of partitions and/or signed squares; positions follow the
/// product set it belongs to.
struct PartitionTuple {
  std::vector<TupleEntry> entries;

  std::size_t size() const { return entries.size(); }

  long weight() const {
    long w = 0;
    for (const auto& e : entries) w += weight_of(e);
    return w;
  }

  const Partition& partition(std::size_t i) const { return std::get<Partition>(entries.at(i)); }
  const SignedSquare& square(std::size_t i) const { return std::get<SignedSquare>(entries.at(i)); }

  friend bool operator==(const PartitionTuple&, const PartitionTuple&) = default;
  friend bool operator<(const PartitionTuple& a, const PartitionTuple& b) { return a.entries < b.entries; }

  friend std::ostream& operator<<(std::ostream& os, const PartitionTuple& t) {
    os << '<';
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      if (i) os << ", ";
      os << t.entries[i];
    }
    return os << '>';
  }
};

inline PartitionTuple make_tuple_of(std::vector<Partition> parts) {
  PartitionTuple t;
  t.entries.reserve(parts.size());
  for (auto& p : parts) t.entries.emplace_back(std::move(p));
  return t;
}

/// Generic product enumeration: `component(i, w)` lists the members of the
/// i-th factor with weight w. Tuples come out ordered by the weight split
/// (earlier components heavier first), then by each component's own order.
inline std::vector<PartitionTuple> product_enumerate(
    std::size_t arity, long n, const std::function<std::vector<TupleEntry>(std::size_t, long)>& component) {
  if (n < 0) throw std::invalid_argument("weight must be non-negative");
  std::vector<std::vector<std::vector<TupleEntry>>> cache(arity, std::vector<std::vector<TupleEntry>>(n + 1));
  std::vector<std::vector<bool>> cached(arity, std::vector<bool>(n + 1, false));
  auto members = [&](std::size_t i, long w) -> const std::vector<TupleEntry>& {
    if (!cached[i][w]) {
      cache[i][w] = component(i, w);
      cached[i][w] = true;
    }
    return cache[i][w];
  };
  std::vector<PartitionTuple> out;
  std::vector<TupleEntry> current;
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long remaining) {
    if (i + 1 == arity) {
      for (const auto& e : members(i, remaining)) {
        current.push_back(e);
        out.push_back(PartitionTuple{current});
        current.pop_back();
      }
      return;
    }
    for (long w = remaining; w >= 0; --w) {
      for (const auto& e : members(i, w)) {
        current.push_back(e);
        rec(i + 1, remaining - w);
        current.pop_back();
      }
    }
  };
  if (arity == 0) {
    if (n == 0) out.push_back(PartitionTuple{});
    return out;
  }
  rec(0, n);
  return out;
}

inline std::vector<TupleEntry> enumerate_entries(const SetSpec& spec, long n) {
  std::vector<TupleEntry> out;
  if (spec.base == SetSpec::Base::Squares) {
    for (auto& x : enumerate_squares(spec, n)) out.emplace_back(x);
  } else {
    for (auto& p : enumerate(spec, n)) out.emplace_back(std::move(p));
  }
  return out;
}

/// Tuples with component i drawn from specs[i] and total weight n. A
/// weight_divisor > 1 keeps only totals divisible by it ([U x V]_even etc.).
inline std::vector<PartitionTuple> tuple_enumerate(const std::vector<SetSpec>& specs, long n,
                                                   int weight_divisor = 1) {
  if (weight_divisor <= 0) throw std::invalid_argument("weight divisor must be positive");
  if (n % weight_divisor != 0) return {};
  return product_enumerate(specs.size(), n,
                           [&specs](std::size_t i, long w) { return enumerate_entries(specs[i], w); });
}

inline bool membership(const PartitionTuple& t, const std::vector<SetSpec>& specs, int weight_divisor = 1) {
  if (t.size() != specs.size()) return false;
  if (t.weight() % weight_divisor != 0) return false;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const bool ok = std::visit([&](const auto& x) { return membership(x, specs[i]); }, t.entries[i]);
    if (!ok) return false;
  }
  return true;
}

// --- colored m-ary strict partitions -------------------------------------

/// Parts are powers m^k; a part of size m^k carries a color in 1..m^k and no
/// (size, color) pair repeats.
inline bool is_colored_mary_strict(const Partition& pi, int m) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  for (std::size_t i = 0; i < pi.parts().size(); ++i) {
    const Part& p = pi.parts()[i];
    long power = 1;
    while (power < p.size) power *= m;
    if (power != p.size) return false;
    if (p.color < 1 || p.color > p.size) return false;
    if (i > 0 && pi.parts()[i - 1] == p) return false;
  }
  return true;
}

/// All colored m-ary strict partitions of weight n, in canonical order.
inline std::vector<Partition> enumerate_colored_mary(int m, long n) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  if (n < 0) throw std::invalid_argument("weight must be non-negative");
  // Every available (size, color) slot, largest size first, ascending color.
  std::vector<Part> slots;
  std::vector<long> sizes;
  for (long s = 1; s <= n; s *= m) sizes.push_back(s);
  for (auto it = sizes.rbegin(); it != sizes.rend(); ++it) {
    for (long c = 1; c <= *it; ++c) slots.push_back(Part{static_cast<int>(*it), static_cast<int>(c)});
  }
  std::vector<long> suffix(slots.size() + 1, 0);
  for (std::size_t i = slots.size(); i-- > 0;) suffix[i] = suffix[i + 1] + slots[i].size;

  std::vector<Partition> out;
  std::vector<Part> current;
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long remaining) {
    if (remaining == 0) {
      out.push_back(Partition::colored(current));
      return;
    }
    if (i == slots.size() || suffix[i] < remaining) return;
    if (slots[i].size <= remaining) {
      current.push_back(slots[i]);
      rec(i + 1, remaining - slots[i].size);
      current.pop_back();
    }
    rec(i + 1, remaining);
  };
  rec(0, n);
  return out;
}

}  // namespace convolutive
