// Command-line front end: check / enumerate / verify / atlas.

#include <glob.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "enccdv/json_io.hpp"
#include "enccdv/parallel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitSettingViolated = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

enccdv::Rational parse_rational_arg(const std::string& s, const std::string& flag) {
  try {
    enccdv::Rational r = enccdv::parse_rational(s);
    if (!(r > enccdv::Rational(0)))
      throw CLI::ValidationError(flag, "must be a positive rational p/q");
    return r;
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError(flag, "must be a rational literal p/q");
  }
}

int run_check(const std::string& input_path, long long k_max,
              bool include_integer_classes, bool verbose_pairings) {
  std::ifstream in(input_path);
  if (!in) {
    std::cerr << "cannot open input file: " << input_path << "\n";
    return kExitIo;
  }
  enccdv::json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    std::cerr << "malformed JSON: " << ex.what() << "\n";
    return kExitUsage;
  }
  enccdv::SingularityInput sing;
  try {
    sing = enccdv::parse_singularity_input(j);
  } catch (const std::invalid_argument& ex) {
    std::cerr << ex.what() << "\n";
    return kExitUsage;
  }
  enccdv::ClassifyOptions opts;
  opts.k_max = k_max;
  opts.include_integer_classes = include_integer_classes;
  opts.verbose_pairings = verbose_pairings;
  enccdv::Verdict verdict = enccdv::classify(sing, opts);
  std::cout << enccdv::to_json(verdict).dump(2) << "\n";
  return verdict.summary == enccdv::Summary::SettingViolated ? kExitSettingViolated
                                                             : kExitOk;
}

int run_enumerate(const std::string& family_tag, const enccdv::ScanCaps& caps,
                  int workers, const std::string& out_path) {
  auto family = enccdv::family_from_string(family_tag);
  if (!family) {
    std::cerr << "unknown family tag: " << family_tag << "\n";
    return kExitUsage;
  }
  auto records = enccdv::scan_family(*family, caps, workers);
  std::string body;
  for (const auto& rec : records) {
    body += enccdv::to_json(rec).dump();
    body += "\n";
  }
  if (out_path.empty()) {
    std::cout << body;
  } else {
    enccdv::atomic_write_file(out_path, body);
    std::cerr << records.size() << " records -> " << out_path << "\n";
  }
  return kExitOk;
}

int run_verify(const std::string& suite, const enccdv::VerifyCaps& caps,
               const std::string& report_path) {
  std::ostringstream csv;
  int status = enccdv::verify_all(suite, caps, std::cout, &csv);
  if (status == 64) return kExitUsage;
  if (!report_path.empty()) enccdv::atomic_write_file(report_path, csv.str());
  return status == 0 ? kExitOk : kExitInternal;
}

int run_atlas(const std::string& pattern, const std::string& csv_path) {
  glob_t g{};
  int rc = glob(pattern.c_str(), 0, nullptr, &g);
  if (rc == GLOB_NOMATCH) {
    std::cerr << "no files match " << pattern << "\n";
    globfree(&g);
    return kExitUsage;
  }
  if (rc != 0) {
    globfree(&g);
    std::cerr << "glob failed for " << pattern << "\n";
    return kExitIo;
  }
  std::vector<enccdv::AtlasEntry> entries;
  for (size_t i = 0; i < g.gl_pathc; ++i) {
    std::ifstream in(g.gl_pathv[i]);
    if (!in) {
      std::cerr << "cannot open " << g.gl_pathv[i] << "\n";
      globfree(&g);
      return kExitIo;
    }
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        auto entry = enccdv::atlas_entry_from_record_json(enccdv::json::parse(line));
        if (entry) entries.push_back(std::move(*entry));
      } catch (const std::exception& ex) {
        std::cerr << g.gl_pathv[i] << ":" << lineno << ": " << ex.what() << "\n";
        globfree(&g);
        return kExitInternal;
      }
    }
  }
  globfree(&g);
  auto rows = enccdv::atlas_from_entries(std::move(entries));
  std::string body = enccdv::atlas_csv_header() + "\n";
  for (const auto& row : rows) body += enccdv::atlas_csv_row(row) + "\n";
  if (csv_path.empty()) {
    std::cout << body;
  } else {
    enccdv::atomic_write_file(csv_path, body);
    std::cerr << rows.size() << " atlas rows -> " << csv_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic classifier for cDV cyclic quotient singularity data"};
  app.require_subcommand(1);
  app.fallthrough();
  int workers = 0;
  app.add_option("--workers", workers, "worker threads (0 = ENCCDV_WORKERS or all cores)");

  // check
  auto* check = app.add_subcommand("check", "classify one singularity input file");
  std::string input_path;
  long long k_max = 13;
  bool include_integer_classes = false;
  bool verbose_pairings = false;
  check->add_option("--input", input_path, "JSON input file")->required();
  check->add_option("--kmax", k_max, "cap on the accepted k")->check(CLI::PositiveNumber);
  check->add_flag("--include-integer-classes", include_integer_classes,
                  "quantify the sublevel condition over integer weight vectors too");
  check->add_flag("--verbose-pairings", verbose_pairings,
                  "list every terminal-lemma pairing in the verdict");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "scan one normal-form family");
  std::string family_tag, out_path;
  enccdv::ScanCaps caps;
  enumerate->add_option("--family", family_tag, "family tag (cA-C, ..., cDE-f)")
      ->required();
  enumerate->add_option("--rmax", caps.r_max, "max group order")->check(CLI::PositiveNumber);
  enumerate->add_option("--kmax", caps.k_max, "max accepted k")->check(CLI::PositiveNumber);
  enumerate->add_option("--gdeg", caps.d_max, "max g-monomial degree")
      ->check(CLI::Range(2, 64));
  enumerate->add_option("--gsize", caps.s_max, "max g-monomials per template")
      ->check(CLI::Range(1, 16));
  enumerate->add_flag("--include-overlap", caps.include_overlap,
                      "admit cA-B parameters with gcd(a+1, r) = 1");
  enumerate->add_option("--out", out_path, "output JSONL path (default: stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite, report_path, delta_str = "1/14", epsilon_str = "1/2";
  enccdv::VerifyCaps vcaps;
  verify
      ->add_option("suite", suite,
                   "terminal | nc | bound-oracle | structure-cA | structure-nonCA | "
                   "g-weight | sublevel-oracle")
      ->required();
  verify->add_option("--rmax", vcaps.r_max, "max group order")->check(CLI::PositiveNumber);
  verify->add_option("--delta", delta_str, "slack p/q for the nc suite");
  verify->add_option("--d", vcaps.d, "dimension for the bound oracle")
      ->check(CLI::Range(1, 4));
  verify->add_option("--epsilon", epsilon_str, "threshold p/q for the bound oracle");
  verify->add_option("--qmax", vcaps.q_max, "max denominator for the bound oracle")
      ->check(CLI::PositiveNumber);
  verify->add_option("--kmax", vcaps.k_max, "max accepted k in scans")
      ->check(CLI::PositiveNumber);
  verify->add_option("--gdeg", vcaps.d_max, "max g-monomial degree in scans")
      ->check(CLI::Range(2, 64));
  verify->add_option("--gsize", vcaps.s_max, "max g-monomials per template in scans")
      ->check(CLI::Range(1, 16));
  verify->add_option("--report", report_path, "CSV report path");

  // atlas
  auto* atlas = app.add_subcommand("atlas", "merge scan shards into the atlas table");
  std::string merge_pattern, csv_path;
  atlas->add_option("--merge", merge_pattern, "glob of record JSONL files")->required();
  atlas->add_option("--csv", csv_path, "output CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*check)
      return run_check(input_path, k_max, include_integer_classes, verbose_pairings);
    if (*enumerate) {
      if (caps.r_max < 2) {
        std::cerr << "enumerate: --rmax must be >= 2\n";
        return kExitUsage;
      }
      return run_enumerate(family_tag, caps, workers, out_path);
    }
    if (*verify) {
      vcaps.delta = parse_rational_arg(delta_str, "--delta");
      vcaps.epsilon = parse_rational_arg(epsilon_str, "--epsilon");
      vcaps.workers = workers;
      return run_verify(suite, vcaps, report_path);
    }
    if (*atlas) return run_atlas(merge_pattern, csv_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
