#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "enccdv/families.hpp"
#include "enccdv/lemmas.hpp"

namespace enccdv {

struct SingularityInput {
  long long r = 1;
  std::array<long long, 4> a{};
  long long e = 0;
  SeriesType type = SeriesType::cA;
  std::vector<Monomial> g;  // distinguished monomials may be omitted
};

struct ClassifyOptions {
  long long k_max = 13;
  bool include_integer_classes = false;
  bool verbose_pairings = false;
};

enum class Summary { TerminalLike, EncCandidate, SettingViolated };
const char* to_string(Summary s);

struct Verdict {
  std::vector<std::string> setting_violations;
  std::optional<WeightSystem> ws;
  std::optional<SeriesSupport> support;
  std::optional<BetaWitness> witness;
  std::optional<BetaFailure> failure;
  std::optional<StructureReport> structure;
  std::vector<NormalForm> normal_forms;
  // All terminal-lemma pairings; filled under verbose_pairings when the
  // hypothesis identity and gcd pattern hold.
  std::vector<TerminalConclusion> pairings;
  Summary summary = Summary::SettingViolated;
};

/// Residue validation -> series validation -> (k, beta) search -> structure
/// conditions -> normal-form match.  Structure checks run even when some
/// condition will land in the exception list, so reports always show which
/// condition failed.
Verdict classify(const SingularityInput& input, const ClassifyOptions& options = {});

struct VerifyCaps {
  long long r_max = 30;
  Rational delta{1, 14};
  int d = 1;
  Rational epsilon{1, 2};
  int q_max = 6;
  long long k_max = 3;
  int d_max = 8;
  int s_max = 3;
  int workers = 0;  // 0 = default
};

/// Known suites: terminal, nc, bound-oracle, structure-cA, structure-nonCA,
/// g-weight, sublevel-oracle.  Writes a human-readable log to `log` and,
/// when `csv` is non-null, one CSV row per witness/counterexample.  Returns
/// 0 on success, 1 when a hard assertion fails, 64 for an unknown suite.
int verify_all(const std::string& suite, const VerifyCaps& caps, std::ostream& log,
               std::ostream* csv = nullptr);

}  // namespace enccdv
