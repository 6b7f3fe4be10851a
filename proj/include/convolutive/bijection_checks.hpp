#pragma once

#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "convolutive/bijections.hpp"
#include "convolutive/dissections.hpp"
#include "convolutive/eta.hpp"
#include "convolutive/partitions.hpp"

namespace convolutive {

/// Outcome of an exhaustive contract run over every input up to a weight.
struct BijectionReport {
  std::string name;
  long max_weight = 0;
  std::size_t checked = 0;  // domain + codomain elements exercised
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }

  void fail(const std::string& msg) {
    if (failures.size() < 20) failures.push_back(msg);
  }
};

namespace detail {

using TupleMap = std::function<PartitionTuple(const PartitionTuple&)>;
using Statistic = std::function<std::optional<std::string>(const PartitionTuple&, const PartitionTuple&)>;

inline std::string show(const PartitionTuple& t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

/// One weight slice: f maps every domain element into the codomain slice,
/// g inverts it on both sides, and f is onto and one-to-one.
inline void check_slice(BijectionReport& report, const std::vector<PartitionTuple>& domain,
                        const std::vector<PartitionTuple>& codomain, const TupleMap& f, const TupleMap& g,
                        const Statistic& statistic = {}) {
  const std::set<PartitionTuple> target(codomain.begin(), codomain.end());
  const std::set<PartitionTuple> source(domain.begin(), domain.end());
  if (target.size() != codomain.size() || source.size() != domain.size()) {
    report.fail("enumeration produced duplicates");
  }
  std::set<PartitionTuple> images;
  for (const auto& x : domain) {
    ++report.checked;
    try {
      const PartitionTuple y = f(x);
      if (!target.count(y)) {
        report.fail(show(x) + " -> " + show(y) + " lands outside the codomain slice");
        continue;
      }
      if (statistic) {
        if (auto bad = statistic(x, y)) report.fail(show(x) + ": " + *bad);
      }
      if (g(y) != x) report.fail(show(x) + " does not round-trip");
      images.insert(y);
    } catch (const std::exception& e) {
      report.fail(show(x) + " threw: " + e.what());
    }
  }
  if (images.size() != domain.size()) report.fail("forward map is not injective");
  if (images.size() != codomain.size()) report.fail("forward map does not exhaust the codomain");
  for (const auto& y : codomain) {
    ++report.checked;
    try {
      const PartitionTuple x = g(y);
      if (!source.count(x)) report.fail(show(y) + " <- inverse lands outside the domain slice");
      else if (f(x) != y) report.fail(show(y) + " does not round-trip through the inverse");
    } catch (const std::exception& e) {
      report.fail(show(y) + " inverse threw: " + e.what());
    }
  }
}

inline void check_count(BijectionReport& report, const std::string& what, std::size_t got, const BigInt& expected) {
  if (BigInt(got) != expected) {
    std::ostringstream os;
    os << what << ": enumerated " << got << ", series coefficient " << expected;
    report.fail(os.str());
  }
}

inline std::vector<PartitionTuple> singletons(const std::vector<Partition>& parts) {
  std::vector<PartitionTuple> out;
  out.reserve(parts.size());
  for (const auto& p : parts) out.push_back(make_tuple_of({p}));
  return out;
}

inline std::vector<Partition> filter(std::vector<Partition> in, const std::function<bool(const Partition&)>& keep) {
  std::erase_if(in, [&](const Partition& p) { return !keep(p); });
  return in;
}

inline PartitionTuple to_tuple(const std::pair<Partition, Partition>& p) { return make_tuple_of({p.first, p.second}); }

}  // namespace detail

inline BijectionReport check_glaisher(int d, long max_weight) {
  BijectionReport report{"glaisher d=" + std::to_string(d), max_weight};
  const TruncatedSeries gf = eta_product_expand({{1, -1}, {d, 1}}, static_cast<std::size_t>(max_weight));
  const detail::TupleMap f = [d](const PartitionTuple& t) { return make_tuple_of({glaisher_forward(t.partition(0), d)}); };
  const detail::TupleMap g = [d](const PartitionTuple& t) { return make_tuple_of({glaisher_inverse(t.partition(0), d)}); };
  for (long n = 0; n <= max_weight; ++n) {
    const auto all = enumerate(SetSpec::P(), n);
    const auto domain = detail::filter(all, [d](const Partition& p) {
      for (int s : p.sizes()) if (s % d == 0) return false;
      return true;
    });
    const auto codomain = detail::filter(all, [d](const Partition& p) {
      for (const auto& [s, m] : p.multiplicities()) if (m >= d) return false;
      return true;
    });
    detail::check_count(report, "domain at " + std::to_string(n), domain.size(), gf[n]);
    detail::check_count(report, "codomain at " + std::to_string(n), codomain.size(), gf[n]);
    detail::check_slice(report, detail::singletons(domain), detail::singletons(codomain), f, g);
  }
  return report;
}

inline BijectionReport check_triple_product(long max_weight) {
  BijectionReport report{"triple-product", max_weight};
  const TruncatedSeries gf = eta_product_expand({{1, -2}, {2, 4}, {4, -2}}, static_cast<std::size_t>(max_weight));
  const detail::TupleMap f = [](const PartitionTuple& t) {
    const auto img = triple_product_forward(t.partition(0), t.partition(1));
    return PartitionTuple{{SignedSquare{img.s}, img.lambda}};
  };
  const detail::TupleMap g = [](const PartitionTuple& t) {
    return detail::to_tuple(triple_product_inverse(t.square(0).s, t.partition(1)));
  };
  const detail::Statistic stat = [](const PartitionTuple& x, const PartitionTuple& y) -> std::optional<std::string> {
    const long s = static_cast<long>(x.partition(0).length()) - static_cast<long>(x.partition(1).length());
    if (y.square(0).s != s) return "charge differs from l(mu) - l(nu)";
    if (x.weight() != y.weight()) return "weight not conserved";
    return std::nullopt;
  };
  for (long n = 0; n <= max_weight; ++n) {
    const auto domain = tuple_enumerate({SetSpec::Do(), SetSpec::Do()}, n);
    const auto codomain = tuple_enumerate({SetSpec::S(), SetSpec::Pe()}, n);
    detail::check_count(report, "domain at " + std::to_string(n), domain.size(), gf[n]);
    detail::check_count(report, "codomain at " + std::to_string(n), codomain.size(), gf[n]);
    detail::check_slice(report, domain, codomain, f, g, stat);
  }
  return report;
}

inline BijectionReport check_split_p3o(long max_weight) {
  BijectionReport report{"split-p3o", max_weight};
  const TruncatedSeries gf = eta_product_expand({{1, -1}, {2, 1}, {4, 1}, {8, -1}}, static_cast<std::size_t>(max_weight));
  const detail::TupleMap f = [](const PartitionTuple& t) { return detail::to_tuple(split_p3o(t.partition(0))); };
  const detail::TupleMap g = [](const PartitionTuple& t) {
    return make_tuple_of({merge_p3o(t.partition(0), t.partition(1))});
  };
  for (long n = 0; n <= max_weight; ++n) {
    const auto domain = detail::singletons(enumerate(SetSpec::P3o(), n));
    const auto codomain = tuple_enumerate({SetSpec::Do(), SetSpec::D(4, 2)}, n);
    detail::check_count(report, "domain at " + std::to_string(n), domain.size(), gf[n]);
    detail::check_count(report, "codomain at " + std::to_string(n), codomain.size(), gf[n]);
    detail::check_slice(report, domain, codomain, f, g);
  }
  return report;
}

inline BijectionReport check_split_p(long max_weight) {
  BijectionReport report{"split-p", max_weight};
  const TruncatedSeries gf = eta_product_expand({{1, -1}}, static_cast<std::size_t>(max_weight));
  const detail::TupleMap f = [](const PartitionTuple& t) { return detail::to_tuple(split_p(t.partition(0))); };
  const detail::TupleMap g = [](const PartitionTuple& t) {
    return make_tuple_of({merge_p(t.partition(0), t.partition(1))});
  };
  for (long n = 0; n <= max_weight; ++n) {
    const auto domain = detail::singletons(enumerate(SetSpec::P(), n));
    const auto codomain = tuple_enumerate({SetSpec::P3(), SetSpec::P(4, 0)}, n);
    detail::check_count(report, "domain at " + std::to_string(n), domain.size(), gf[n]);
    detail::check_count(report, "codomain at " + std::to_string(n), codomain.size(), gf[n]);
    detail::check_slice(report, domain, codomain, f, g);
  }
  return report;
}

inline BijectionReport check_sstt(long max_weight) {
  BijectionReport report{"sstt", max_weight};
  // phi(q)^2 = f2^10/(f1^4 f4^4) counts S x S.
  const TruncatedSeries gf = eta_product_expand({{1, -4}, {2, 10}, {4, -4}}, static_cast<std::size_t>(max_weight));
  const detail::TupleMap f = [](const PartitionTuple& t) {
    const auto [t1, t2] = sstt(t.square(0).s, t.square(1).s);
    return PartitionTuple{{SignedSquare{t1}, SignedSquare{t2}}};
  };
  const detail::TupleMap g = [](const PartitionTuple& t) {
    const auto [s1, s2] = sstt_inverse(t.square(0).s, t.square(1).s);
    return PartitionTuple{{SignedSquare{s1}, SignedSquare{s2}}};
  };
  const detail::Statistic halving = [](const PartitionTuple& x, const PartitionTuple& y) -> std::optional<std::string> {
    if (2 * y.weight() != x.weight()) return "weight not halved";
    return std::nullopt;
  };
  for (long n = 0; n <= max_weight; n += 2) {
    const auto domain = tuple_enumerate({SetSpec::S(), SetSpec::S()}, n, 2);
    const auto codomain = tuple_enumerate({SetSpec::S(), SetSpec::S()}, n / 2);
    detail::check_count(report, "domain at " + std::to_string(n), domain.size(), gf[n]);
    detail::check_count(report, "codomain at " + std::to_string(n / 2), codomain.size(), gf[n / 2]);
    detail::check_slice(report, domain, codomain, f, g, halving);
  }
  return report;
}

namespace detail {

inline BijectionReport check_halving(const std::string& name, long max_weight, const EtaProductSpec& gf_spec,
                                     const std::vector<SetSpec>& domain_specs,
                                     const std::vector<SetSpec>& codomain_specs, const TupleMap& f,
                                     const TupleMap& g) {
  BijectionReport report{name, max_weight};
  const TruncatedSeries gf = eta_product_expand(gf_spec, static_cast<std::size_t>(max_weight));
  const TruncatedSeries square = mul(gf, gf);
  const Statistic halving = [](const PartitionTuple& x, const PartitionTuple& y) -> std::optional<std::string> {
    if (2 * y.weight() != x.weight()) return "weight not halved";
    return std::nullopt;
  };
  for (long n = 0; n <= max_weight; n += 2) {
    const auto domain = tuple_enumerate(domain_specs, n, 2);
    const auto codomain = tuple_enumerate(codomain_specs, n / 2);
    check_count(report, "domain at " + std::to_string(n), domain.size(), gf[n]);
    check_count(report, "codomain at " + std::to_string(n / 2), codomain.size(), square[n / 2]);
    check_slice(report, domain, codomain, f, g, halving);
  }
  return report;
}

}  // namespace detail

inline BijectionReport check_a007096(long max_weight) {
  return detail::check_halving("a007096", max_weight, {{1, -4}, {2, 6}, {4, -2}}, a007096_domain(),
                               a007096_codomain(), a007096_halving, a007096_restore);
}

inline BijectionReport check_a103258(long max_weight) {
  return detail::check_halving("a103258", max_weight, {{1, -2}, {2, 1}, {4, 2}, {8, -1}}, a103258_domain(),
                               a103258_codomain(), a103258_halving, a103258_restore);
}

inline BijectionReport check_mary_split(int m, long max_weight) {
  BijectionReport report{"mary-split m=" + std::to_string(m), max_weight};
  const TruncatedSeries gf = mary_product(static_cast<unsigned>(m), static_cast<std::size_t>(max_weight));
  const TruncatedSeries power = pow(gf, static_cast<unsigned>(m));
  const detail::TupleMap f = [m](const PartitionTuple& t) { return mary_split(t.partition(0), m); };
  const detail::TupleMap g = [m](const PartitionTuple& t) { return make_tuple_of({mary_merge(t, m)}); };
  const detail::Statistic stat = [m](const PartitionTuple& x, const PartitionTuple& y) -> std::optional<std::string> {
    std::size_t parts = 0;
    for (std::size_t i = 0; i < y.size(); ++i) parts += y.partition(i).length();
    if (parts != x.partition(0).length()) return "part count not preserved";
    if (m * y.weight() != x.weight()) return "weight not divided by m";
    return std::nullopt;
  };
  auto colored = [m](std::size_t, long w) {
    std::vector<TupleEntry> out;
    for (auto& p : enumerate_colored_mary(m, w)) out.emplace_back(std::move(p));
    return out;
  };
  for (long n = 0; n <= max_weight; n += m) {
    const auto domain = detail::singletons(enumerate_colored_mary(m, n));
    const auto codomain = product_enumerate(static_cast<std::size_t>(m), n / m, colored);
    detail::check_count(report, "domain at " + std::to_string(n), domain.size(), gf[n]);
    detail::check_count(report, "codomain at " + std::to_string(n / m), codomain.size(), power[n / m]);
    detail::check_slice(report, domain, codomain, f, g, stat);
  }
  return report;
}

/// Named bijection families with their default exhaustive weight bound.
struct BijectionSuiteEntry {
  std::string name;
  long default_weight;
  std::function<std::vector<BijectionReport>(long)> run;
};

inline const std::vector<BijectionSuiteEntry>& bijection_suite() {
  static const std::vector<BijectionSuiteEntry> suite{
      {"glaisher", 20, [](long w) { return std::vector{check_glaisher(2, w), check_glaisher(3, w), check_glaisher(4, w)}; }},
      {"triple-product", 20, [](long w) { return std::vector{check_triple_product(w)}; }},
      {"split-p3o", 20, [](long w) { return std::vector{check_split_p3o(w)}; }},
      {"split-p", 20, [](long w) { return std::vector{check_split_p(w)}; }},
      {"sstt", 20, [](long w) { return std::vector{check_sstt(w)}; }},
      {"a007096", 14, [](long w) { return std::vector{check_a007096(w)}; }},
      {"a103258", 14, [](long w) { return std::vector{check_a103258(w)}; }},
      {"mary-split", 16, [](long w) { return std::vector{check_mary_split(2, w), check_mary_split(3, w)}; }},
  };
  return suite;
}

}  // namespace convolutive
