#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <zlib.h>

#include <json.hpp>

#include "convolutive/eta.hpp"
#include "convolutive/series.hpp"

namespace convolutive::oeis {

struct CorpusEntry {
  long a_number = 0;
  std::vector<BigInt> terms;
};

struct ParseWarning {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct ParseResult {
  std::vector<CorpusEntry> entries;
  std::vector<ParseWarning> warnings;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

inline std::optional<BigInt> parse_integer(std::string_view tok) {
  if (tok.empty()) return std::nullopt;
  const std::size_t start = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (start == tok.size()) return std::nullopt;
  for (std::size_t i = start; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9') return std::nullopt;
  }
  if (tok.size() - start <= 18) {
    long long v = 0;
    const char* first = tok.data() + (tok[0] == '+' ? 1 : 0);
    std::from_chars(first, tok.data() + tok.size(), v);
    return BigInt(v);
  }
  return BigInt(std::string(tok[0] == '+' ? tok.substr(1) : tok));
}

}  // namespace detail

/// Parses one stripped-format data line "A000045 ,0,1,1,2,3,5,". Returns the
/// entry, or an error message for a malformed line.
inline std::variant<CorpusEntry, std::string> parse_stripped_line(std::string_view line) {
  line = detail::trim(line);
  if (line.size() < 2 || line[0] != 'A') return std::string("missing A-number");
  std::size_t i = 1;
  while (i < line.size() && line[i] >= '0' && line[i] <= '9') ++i;
  if (i == 1 || i - 1 > 9) return std::string("bad A-number");
  CorpusEntry entry;
  std::from_chars(line.data() + 1, line.data() + i, entry.a_number);
  std::string_view rest = detail::trim(line.substr(i));
  if (rest.empty() || rest[0] != ',') return std::string("expected ',' after A-number");
  rest.remove_prefix(1);
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    const std::string_view tok = detail::trim(rest.substr(0, comma));
    if (comma == std::string_view::npos && tok.empty()) break;
    auto value = detail::parse_integer(tok);
    if (!value) return "non-integer token '" + std::string(tok) + "'";
    entry.terms.push_back(std::move(*value));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (entry.terms.empty()) return std::string("no terms");
  return entry;
}

/// Incremental parser: feed lines in order, collect entries and warnings.
/// '#' lines and blank lines are skipped; malformed lines and repeated
/// A-numbers become warnings.
class StrippedParser {
 public:
  void feed(std::string_view line) {
    ++line_no_;
    const std::string_view t = detail::trim(line);
    if (t.empty() || t[0] == '#') return;
    auto parsed = parse_stripped_line(t);
    if (auto* err = std::get_if<std::string>(&parsed)) {
      result_.warnings.push_back({line_no_, *err});
      return;
    }
    auto& entry = std::get<CorpusEntry>(parsed);
    if (!seen_.insert(entry.a_number).second) {
      result_.warnings.push_back({line_no_, "duplicate A-number " + std::to_string(entry.a_number)});
      return;
    }
    result_.entries.push_back(std::move(entry));
  }

  /// Hands over the entries parsed so far; warnings accumulate.
  std::vector<CorpusEntry> take_entries() { return std::exchange(result_.entries, {}); }
  const std::vector<ParseWarning>& warnings() const { return result_.warnings; }
  ParseResult finish() { return std::move(result_); }

 private:
  std::size_t line_no_ = 0;
  ParseResult result_;
  std::set<long> seen_;
};

inline ParseResult parse_stripped(std::istream& in) {
  if (!in) throw std::runtime_error("corpus stream is not readable");
  StrippedParser parser;
  std::string line;
  while (std::getline(in, line)) parser.feed(line);
  if (in.bad()) throw std::runtime_error("I/O error while reading corpus");
  return parser.finish();
}

inline bool has_gzip_suffix(const std::string& path) {
  return path.size() >= 3 && (path.ends_with(".gz") || path.ends_with(".GZ"));
}

/// Calls `on_line` for every line of a plain or gzip-compressed text file.
inline void for_each_line(const std::string& path, const std::function<void(std::string_view)>& on_line) {
  if (has_gzip_suffix(path)) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot open corpus '" + path + "'");
    gzbuffer(f, 1 << 17);
    std::string pending;
    std::vector<char> buf(1 << 16);
    for (;;) {
      const int got = gzread(f, buf.data(), static_cast<unsigned>(buf.size()));
      if (got < 0) {
        int code = 0;
        std::string msg = gzerror(f, &code);
        gzclose(f);
        throw std::runtime_error("gzip error in '" + path + "': " + msg);
      }
      if (got == 0) break;
      std::string_view chunk(buf.data(), static_cast<std::size_t>(got));
      std::size_t nl;
      while ((nl = chunk.find('\n')) != std::string_view::npos) {
        if (pending.empty()) {
          on_line(chunk.substr(0, nl));
        } else {
          pending.append(chunk.substr(0, nl));
          on_line(pending);
          pending.clear();
        }
        chunk.remove_prefix(nl + 1);
      }
      pending.append(chunk);
    }
    gzclose(f);
    if (!pending.empty()) on_line(pending);
    return;
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus '" + path + "'");
  std::string line;
  while (std::getline(in, line)) on_line(line);
  if (in.bad()) throw std::runtime_error("I/O error while reading '" + path + "'");
}

inline ParseResult read_corpus(const std::string& path) {
  StrippedParser parser;
  for_each_line(path, [&](std::string_view l) { parser.feed(l); });
  return parser.finish();
}

// --- eta-product identification --------------------------------------------------

/// Peels eta factors off a unit series level by level: after levels
/// 1..i-1 are removed the residual is 1 + c_i q^i + ..., which fixes the
/// exponent of f_i as -c_i. Accepts only if every exponent stays within
/// max_abs_exp and the final residual is exactly 1 over all given terms.
inline std::optional<EtaProductSpec> fit_eta_product(std::span<const BigInt> terms, int max_level, int max_abs_exp) {
  if (terms.empty() || terms[0] != 1) throw std::domain_error("not a unit series");
  if (max_level < 1) throw std::invalid_argument("max_level must be positive");
  if (terms.size() <= static_cast<std::size_t>(max_level)) {
    throw std::invalid_argument("need more than max_level terms");
  }
  const std::size_t order = terms.size() - 1;
  TruncatedSeries residual(std::vector<BigInt>(terms.begin(), terms.end()));
  std::map<int, int> factors;
  for (int level = 1; level <= max_level; ++level) {
    const BigInt& c = residual[static_cast<std::size_t>(level)];
    if (c.is_zero()) continue;
    if (abs(c) > max_abs_exp) return std::nullopt;
    const int exponent = -static_cast<int>(c);
    factors[level] = exponent;
    const TruncatedSeries f = eta_factor(level, order);
    // Divide by f^exponent.
    const TruncatedSeries step = exponent > 0 ? pow(inverse(f), static_cast<unsigned>(exponent))
                                              : pow(f, static_cast<unsigned>(-exponent));
    residual = mul(step, residual);
  }
  if (residual != TruncatedSeries::one(order)) return std::nullopt;
  return EtaProductSpec(std::move(factors));
}

// --- scanning -----------------------------------------------------------------------

enum class FilterReason { TooShort, TrivialPrefix };

inline const char* to_string(FilterReason r) {
  return r == FilterReason::TooShort ? "too-short" : "trivial-prefix";
}

struct ScanOptions {
  std::size_t min_len = 20;
  bool fit = false;
  int max_level = 24;
  int max_abs_exp = 9;
  bool prepend_one = false;  // retry non-hits with a_0 = 1 prepended
  unsigned threads = 0;      // 0: hardware concurrency
};

struct ScanRecord {
  long a_number = 0;
  unsigned m = 2;
  std::optional<ConvolutivityVerdict> verdict;  // absent when too few terms to test n = 1
  std::optional<FilterReason> filtered;
  std::optional<EtaProductSpec> fitted_eta;
  bool prepended_one = false;

  bool is_hit() const { return !filtered && verdict && verdict->holds; }
};

/// True when the second half of the listed prefix is entirely zero.
inline bool is_trivial_prefix(std::span<const BigInt> terms) {
  for (std::size_t i = terms.size() / 2; i < terms.size(); ++i) {
    if (!terms[i].is_zero()) return false;
  }
  return true;
}

inline ScanRecord scan_entry(const CorpusEntry& entry, unsigned m, const ScanOptions& opt) {
  ScanRecord rec;
  rec.a_number = entry.a_number;
  rec.m = m;
  const std::span<const BigInt> terms = entry.terms;
  if (terms.size() < opt.min_len) rec.filtered = FilterReason::TooShort;
  else if (is_trivial_prefix(terms)) rec.filtered = FilterReason::TrivialPrefix;

  if (terms.size() >= m + 1) rec.verdict = is_m_convolutive(terms, m);
  std::vector<BigInt> shifted;
  if (opt.prepend_one && !(rec.verdict && rec.verdict->holds)) {
    shifted.reserve(terms.size() + 1);
    shifted.emplace_back(1);
    shifted.insert(shifted.end(), terms.begin(), terms.end());
    if (shifted.size() >= m + 1) {
      auto retry = is_m_convolutive(shifted, m);
      if (retry.holds) {
        rec.verdict = retry;
        rec.prepended_one = true;
      }
    }
  }
  if (opt.fit && rec.is_hit()) {
    const std::span<const BigInt> series = rec.prepended_one ? std::span<const BigInt>(shifted) : terms;
    if (series[0] == 1 && series.size() > static_cast<std::size_t>(opt.max_level)) {
      rec.fitted_eta = fit_eta_product(series, opt.max_level, opt.max_abs_exp);
    }
  }
  return rec;
}

namespace detail {

inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n / 64, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) body(i);
    });
  }
}

}  // namespace detail

/// One record per entry, ordered by A-number.
inline std::vector<ScanRecord> scan(const std::vector<CorpusEntry>& corpus, unsigned m, const ScanOptions& opt) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  if (opt.min_len < m + 1) throw std::invalid_argument("min_len must be at least m + 1");
  std::vector<ScanRecord> out(corpus.size());
  detail::parallel_for(corpus.size(), opt.threads, [&](std::size_t i) { out[i] = scan_entry(corpus[i], m, opt); });
  std::stable_sort(out.begin(), out.end(),
                   [](const ScanRecord& a, const ScanRecord& b) { return a.a_number < b.a_number; });
  return out;
}

inline std::vector<ScanRecord> scan(const std::vector<CorpusEntry>& corpus, unsigned m, std::size_t min_len) {
  ScanOptions opt;
  opt.min_len = min_len;
  return scan(corpus, m, opt);
}

// --- reports --------------------------------------------------------------------------

struct ModulusSummary {
  std::size_t scanned = 0;
  std::size_t filtered = 0;
  std::size_t hits = 0;
};

struct Report {
  std::vector<ScanRecord> records;  // hits only unless all records were requested
  std::size_t entries = 0;
  std::map<unsigned, ModulusSummary> summary;
};

struct ReportOptions {
  ScanOptions scan;
  bool include_all = false;
};

/// Incremental report builder, so a full dump can be scanned batch by batch.
class ReportBuilder {
 public:
  ReportBuilder(std::vector<unsigned> m_values, ReportOptions opt) : m_values_(std::move(m_values)), opt_(opt) {
    std::sort(m_values_.begin(), m_values_.end());
    m_values_.erase(std::unique(m_values_.begin(), m_values_.end()), m_values_.end());
    for (unsigned m : m_values_) {
      if (m < 2) throw std::invalid_argument("m must be at least 2");
      if (opt_.scan.min_len < m + 1) throw std::invalid_argument("min_len must be at least m + 1");
      report_.summary[m];
    }
  }

  void add(const std::vector<CorpusEntry>& batch) {
    report_.entries += batch.size();
    for (unsigned m : m_values_) {
      auto& sum = report_.summary[m];
      for (auto& rec : scan(batch, m, opt_.scan)) {
        ++sum.scanned;
        if (rec.filtered) ++sum.filtered;
        if (rec.is_hit()) ++sum.hits;
        if (opt_.include_all || rec.is_hit()) report_.records.push_back(std::move(rec));
      }
    }
  }

  Report finish() {
    std::stable_sort(report_.records.begin(), report_.records.end(), [](const ScanRecord& a, const ScanRecord& b) {
      return a.a_number != b.a_number ? a.a_number < b.a_number : a.m < b.m;
    });
    return std::move(report_);
  }

 private:
  std::vector<unsigned> m_values_;
  ReportOptions opt_;
  Report report_;
};

inline Report full_report(const std::vector<CorpusEntry>& corpus, const std::vector<unsigned>& m_values,
                          const ReportOptions& opt) {
  ReportBuilder builder(m_values, opt);
  builder.add(corpus);
  return builder.finish();
}

/// Streams a corpus file through the scanner in fixed-size batches.
inline Report full_report_file(const std::string& path, const std::vector<unsigned>& m_values,
                               const ReportOptions& opt, std::vector<ParseWarning>* warnings = nullptr,
                               std::size_t batch_size = 8192) {
  ReportBuilder builder(m_values, opt);
  StrippedParser parser;
  std::size_t pending = 0;
  for_each_line(path, [&](std::string_view line) {
    parser.feed(line);
    if (++pending >= batch_size) {
      builder.add(parser.take_entries());
      pending = 0;
    }
  });
  builder.add(parser.take_entries());
  if (warnings) *warnings = parser.warnings();
  return builder.finish();
}

inline nlohmann::ordered_json to_json(const ScanRecord& r) {
  nlohmann::ordered_json j;
  j["a_number"] = r.a_number;
  j["m"] = r.m;
  j["terms_tested"] = r.verdict ? r.verdict->terms_testable : 0;
  j["holds"] = r.verdict ? nlohmann::ordered_json(r.verdict->holds) : nlohmann::ordered_json(nullptr);
  j["first_violation"] = (r.verdict && r.verdict->first_violation)
                             ? nlohmann::ordered_json(*r.verdict->first_violation)
                             : nlohmann::ordered_json(nullptr);
  j["filtered_reason"] = r.filtered ? nlohmann::ordered_json(to_string(*r.filtered)) : nlohmann::ordered_json(nullptr);
  if (r.fitted_eta) {
    nlohmann::ordered_json eta = nlohmann::ordered_json::object();
    for (const auto& [level, exponent] : r.fitted_eta->factors()) eta[std::to_string(level)] = exponent;
    j["fitted_eta"] = eta;
    j["primitive"] = r.fitted_eta->is_primitive();
  } else {
    j["fitted_eta"] = nullptr;
    j["primitive"] = nullptr;
  }
  j["prepended_one"] = r.prepended_one;
  return j;
}

inline std::string to_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& r : report.records) doc["records"].push_back(to_json(r));
  nlohmann::ordered_json summary;
  summary["entries"] = report.entries;
  nlohmann::ordered_json hits = nlohmann::ordered_json::object();
  nlohmann::ordered_json filtered = nlohmann::ordered_json::object();
  nlohmann::ordered_json scanned = nlohmann::ordered_json::object();
  for (const auto& [m, s] : report.summary) {
    hits[std::to_string(m)] = s.hits;
    filtered[std::to_string(m)] = s.filtered;
    scanned[std::to_string(m)] = s.scanned;
  }
  summary["hits"] = hits;
  summary["filtered"] = filtered;
  summary["scanned"] = scanned;
  doc["summary"] = summary;
  return doc.dump(2) + "\n";
}

inline std::string to_csv(const Report& report) {
  std::ostringstream os;
  os << "a_number,m,terms_tested,holds,first_violation,filtered_reason,fitted_eta,primitive,prepended_one\n";
  for (const auto& r : report.records) {
    os << r.a_number << ',' << r.m << ',' << (r.verdict ? r.verdict->terms_testable : 0) << ',';
    if (r.verdict) os << (r.verdict->holds ? "true" : "false");
    os << ',';
    if (r.verdict && r.verdict->first_violation) os << *r.verdict->first_violation;
    os << ',';
    if (r.filtered) os << to_string(*r.filtered);
    os << ',';
    if (r.fitted_eta) os << r.fitted_eta->to_string();
    os << ',';
    if (r.fitted_eta) os << (r.fitted_eta->is_primitive() ? "true" : "false");
    os << ',' << (r.prepended_one ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace convolutive::oeis
