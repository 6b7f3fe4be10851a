// Command-line front end: expand, check, verify, scan, fetch.
//
// Exit codes: 0 success / property holds, 2 violation found, 1 usage or I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <curl/curl.h>
#include <zlib.h>

#include "convolutive/bijection_checks.hpp"
#include "convolutive/dissections.hpp"
#include "convolutive/eta.hpp"
#include "convolutive/oeis.hpp"
#include "convolutive/series.hpp"

namespace fs = std::filesystem;
using namespace convolutive;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kViolation = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "2..6", "2,3" or "4".
std::vector<unsigned> parse_m_values(const std::vector<std::string>& args) {
  std::vector<unsigned> out;
  for (const auto& arg : args) {
    for (const auto& piece : split_list(arg)) {
      const auto dots = piece.find("..");
      try {
        if (dots == std::string::npos) {
          out.push_back(static_cast<unsigned>(std::stoul(piece)));
        } else {
          const unsigned lo = static_cast<unsigned>(std::stoul(piece.substr(0, dots)));
          const unsigned hi = static_cast<unsigned>(std::stoul(piece.substr(dots + 2)));
          for (unsigned m = lo; m <= hi; ++m) out.push_back(m);
        }
      } catch (const std::logic_error&) {
        throw UsageError("bad m value '" + piece + "'");
      }
    }
  }
  for (unsigned m : out) {
    if (m < 2 || m > 6) throw UsageError("m must lie in 2..6, got " + std::to_string(m));
  }
  return out;
}

std::vector<BigInt> read_terms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open terms file '" + path + "'");
  std::vector<BigInt> terms;
  std::string tok;
  char ch;
  auto flush = [&] {
    if (tok.empty()) return;
    try {
      terms.emplace_back(tok);
    } catch (const std::exception&) {
      throw std::runtime_error("bad term '" + tok + "' in '" + path + "'");
    }
    tok.clear();
  };
  while (in.get(ch)) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) flush();
    else tok.push_back(ch);
  }
  flush();
  if (terms.empty()) throw std::runtime_error("no terms in '" + path + "'");
  return terms;
}

// --- expand ------------------------------------------------------------------

int cmd_expand(const std::string& spec_text, std::size_t order) {
  const EtaProductSpec spec = parse_eta_spec(spec_text);
  const TruncatedSeries s = eta_product_expand(spec, order);
  for (std::size_t n = 0; n <= order; ++n) std::cout << n << ' ' << s[n] << '\n';
  return kOk;
}

// --- check -------------------------------------------------------------------

int cmd_check(const std::string& spec_text, const std::string& terms_path, unsigned m, std::size_t order) {
  std::vector<BigInt> terms;
  std::string label;
  if (!terms_path.empty()) {
    terms = read_terms(terms_path);
    label = terms_path;
  } else {
    const EtaProductSpec spec = parse_eta_spec(spec_text);
    const TruncatedSeries s = eta_product_expand(spec, order);
    terms.assign(s.coeffs().begin(), s.coeffs().end());
    label = spec.empty() ? std::string("1") : spec.to_string();
  }
  const ConvolutivityVerdict v = is_m_convolutive(terms, m);
  if (v.holds) {
    std::cout << label << ": " << m << "-convolutive for n <= " << v.terms_testable - 1 << '\n';
    return kOk;
  }
  std::cout << label << ": not " << m << "-convolutive, first violation at n = " << *v.first_violation << '\n';
  return kViolation;
}

// --- verify ------------------------------------------------------------------

int cmd_verify(const std::string& identities, std::size_t order, const std::string& bijections,
               std::optional<long> weight) {
  if (identities.empty() && bijections.empty()) throw UsageError("nothing to verify: pass --identities and/or --bijections");

  std::vector<std::string> ids;
  if (identities == "all") {
    for (const auto& rec : identity_catalog()) ids.push_back(rec.id);
  } else {
    ids = split_list(identities);
  }
  std::vector<const BijectionSuiteEntry*> families;
  if (bijections == "all") {
    for (const auto& e : bijection_suite()) families.push_back(&e);
  } else {
    for (const auto& name : split_list(bijections)) {
      const BijectionSuiteEntry* found = nullptr;
      for (const auto& e : bijection_suite()) {
        if (e.name == name) found = &e;
      }
      if (!found) throw UsageError("unknown bijection '" + name + "'");
      families.push_back(found);
    }
  }
  for (const auto& id : ids) {
    try {
      find_identity(id);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  bool all_pass = true;
  for (const auto& id : ids) {
    const IdentityResult r = verify_identity(id, order);
    all_pass = all_pass && r.holds;
    std::cout << (r.holds ? "PASS" : "FAIL") << "  identity  " << id << "  order " << order;
    if (!r.holds) std::cout << "  first mismatch at n = " << *r.first_failure;
    std::cout << '\n';
  }
  for (const auto* family : families) {
    for (const auto& rep : family->run(weight.value_or(family->default_weight))) {
      all_pass = all_pass && rep.passed();
      std::cout << (rep.passed() ? "PASS" : "FAIL") << "  bijection " << rep.name << "  weight <= " << rep.max_weight
                << "  objects " << rep.checked << '\n';
      for (const auto& f : rep.failures) std::cout << "      " << f << '\n';
    }
  }
  return all_pass ? kOk : kViolation;
}

// --- scan --------------------------------------------------------------------

struct ScanArgs {
  std::string corpus;
  std::vector<std::string> m = {"2..6"};
  std::size_t min_len = 20;
  bool fit = false;
  bool all = false;
  bool prepend_one = false;
  int max_level = 24;
  int max_abs_exp = 9;
  unsigned threads = 0;
  std::string out;
  std::string format = "json";
};

int cmd_scan(const ScanArgs& a) {
  const std::vector<unsigned> ms = parse_m_values(a.m);
  if (ms.empty()) throw UsageError("no m values");
  oeis::ReportOptions opt;
  opt.scan.min_len = a.min_len;
  opt.scan.fit = a.fit;
  opt.scan.max_level = a.max_level;
  opt.scan.max_abs_exp = a.max_abs_exp;
  opt.scan.prepend_one = a.prepend_one;
  opt.scan.threads = a.threads;
  opt.include_all = a.all;
  for (unsigned m : ms) {
    if (a.min_len < m + 1) throw UsageError("--min-len must be at least m + 1");
  }
  if (!fs::is_regular_file(a.corpus)) throw std::runtime_error("corpus '" + a.corpus + "' not found");

  std::vector<oeis::ParseWarning> warnings;
  const oeis::Report report = oeis::full_report_file(a.corpus, ms, opt, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: line " << w.line << ": " << w.message << '\n';

  const std::string text = a.format == "csv" ? oeis::to_csv(report) : oeis::to_json(report);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + a.out + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + a.out + "'");
  }
  std::cerr << "scanned " << report.entries << " sequences;";
  for (const auto& [m, s] : report.summary) std::cerr << " m=" << m << ": " << s.hits << " hits";
  std::cerr << '\n';
  return kOk;
}

// --- fetch -------------------------------------------------------------------

std::size_t write_to_file(char* data, std::size_t size, std::size_t n, void* user) {
  return std::fwrite(data, size, n, static_cast<std::FILE*>(user)) * size;
}

int cmd_fetch(const std::string& url, const std::string& dest_arg) {
  fs::path dest = dest_arg;
  if (fs::is_directory(dest)) {
    std::string name = url.substr(url.find_last_of('/') + 1);
    dest /= name.empty() ? "stripped.gz" : name;
  }
  const fs::path dir = dest.has_parent_path() ? dest.parent_path() : fs::path(".");
  if (!fs::is_directory(dir)) throw std::runtime_error("destination directory '" + dir.string() + "' does not exist");

  const fs::path part = dest.string() + ".part";
  std::FILE* f = std::fopen(part.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot write '" + part.string() + "'");

  curl_global_init(CURL_GLOBAL_DEFAULT);
  CURL* curl = curl_easy_init();
  char err[CURL_ERROR_SIZE] = {0};
  curl_easy_setopt(curl, CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl, CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl, CURLOPT_CONNECTTIMEOUT, 30L);
  curl_easy_setopt(curl, CURLOPT_ERRORBUFFER, err);
  curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, write_to_file);
  curl_easy_setopt(curl, CURLOPT_WRITEDATA, f);
  const CURLcode rc = curl_easy_perform(curl);
  curl_easy_cleanup(curl);
  curl_global_cleanup();
  const bool closed = std::fclose(f) == 0;

  if (rc != CURLE_OK || !closed) {
    std::error_code ec;
    fs::remove(part, ec);
    const std::string why = rc != CURLE_OK ? (err[0] ? err : curl_easy_strerror(rc)) : "close failed";
    throw std::runtime_error("download of " + url + " failed: " + why);
  }
  fs::rename(part, dest);

  std::ifstream in(dest, std::ios::binary);
  uLong crc = crc32(0L, Z_NULL, 0);
  std::vector<char> buf(1 << 16);
  std::uintmax_t size = 0;
  while (in.read(buf.data(), static_cast<std::streamsize>(buf.size())) || in.gcount() > 0) {
    crc = crc32(crc, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(in.gcount()));
    size += static_cast<std::uintmax_t>(in.gcount());
  }
  char hex[9];
  std::snprintf(hex, sizeof hex, "%08lx", static_cast<unsigned long>(crc));
  std::cerr << "wrote " << dest.string() << " (" << size << " bytes, crc32 " << hex << ")\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eta-product expansion, convolutivity checks, identity and bijection verification, corpus scanning"};
  app.require_subcommand(1);

  std::string spec_text;
  std::size_t order = 0;

  auto* expand = app.add_subcommand("expand", "Print coefficients of an eta-product");
  expand->add_option("spec", spec_text, "Eta-product, e.g. \"1^-1 3^-1 4^1 6^2 12^-1\"")->required();
  expand->add_option("-N,--order", order, "Truncation order")->required();

  std::string terms_path;
  unsigned m = 0;
  std::size_t check_order = 200;
  auto* check = app.add_subcommand("check", "Test m-convolutivity of an eta-product or a term list");
  auto* check_spec = check->add_option("spec", spec_text, "Eta-product");
  auto* check_terms = check->add_option("--terms", terms_path, "File of comma- or space-separated terms a_0, a_1, ...");
  check_spec->excludes(check_terms);
  check->add_option("-m", m, "Modulus")->required()->check(CLI::Range(2U, 1000U));
  check->add_option("-N,--order", check_order, "Expansion order for eta-products");

  std::string identities;
  std::string bijections;
  std::size_t verify_order = 150;
  std::optional<long> weight;
  auto* verify = app.add_subcommand("verify", "Verify catalogued identities and bijections");
  verify->add_option("--identities", identities, "all, or comma-separated identity ids");
  verify->add_option("-N,--order", verify_order, "Order for identity checks")->check(CLI::Range(4U, 100000U));
  verify->add_option("--bijections", bijections, "all, or comma-separated bijection family names");
  verify->add_option("-W,--max-weight", weight, "Exhaustive weight bound (default: per family)");

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Scan a stripped-format corpus for convolutive sequences");
  scan->add_option("--corpus", scan_args.corpus, "Corpus path (.gz accepted)")->required();
  scan->add_option("--m", scan_args.m, "Moduli: 2..6, 2,3 or a single value");
  scan->add_option("--min-len", scan_args.min_len, "Minimum listed terms for a sequence to count");
  scan->add_flag("--fit", scan_args.fit, "Identify hits as eta-products");
  scan->add_option("--max-level", scan_args.max_level, "Largest eta level tried by --fit");
  scan->add_option("--max-abs-exp", scan_args.max_abs_exp, "Largest exponent magnitude accepted by --fit");
  scan->add_flag("--prepend-one", scan_args.prepend_one, "Retry non-hits with a_0 = 1 prepended");
  scan->add_flag("--all", scan_args.all, "Report every record, not only hits");
  scan->add_option("--threads", scan_args.threads, "Worker threads (0: all cores)");
  scan->add_option("--out", scan_args.out, "Report path (stdout if omitted)");
  scan->add_option("--format", scan_args.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string url = "https://oeis.org/stripped.gz";
  std::string dest;
  auto* fetch = app.add_subcommand("fetch", "Download the compressed stripped corpus");
  fetch->add_option("--url", url, "Source URL");
  fetch->add_option("--dest", dest, "Destination file or existing directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*expand) return cmd_expand(spec_text, order);
    if (*check) {
      if (check_spec->count() == 0 && check_terms->count() == 0) throw UsageError("pass an eta-product or --terms");
      return cmd_check(spec_text, terms_path, m, check_order);
    }
    if (*verify) return cmd_verify(identities, verify_order, bijections, weight);
    if (*scan) return cmd_scan(scan_args);
    if (*fetch) return cmd_fetch(url, dest);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
