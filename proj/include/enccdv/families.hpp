#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "enccdv/structure.hpp"

namespace enccdv {

struct Rejection {
  std::string reason;
};

/// Builds the reduced weight system of a family instance, or a rejection
/// naming the violated constraint (family preconditions, residue conditions,
/// or the excluded (a, -a, 1, 0; 0) form for cA types).  include_overlap
/// lifts the gcd(a+1, r) > 1 requirement of cA-B, admitting parameters that
/// also appear in cA-C / cA-D.
std::variant<WeightSystem, Rejection> generate_family(Family family, long long r,
                                                      long long a_param,
                                                      bool include_overlap = false);

struct ScanCaps {
  long long r_max = 25;
  long long k_max = 3;
  int d_max = 8;   // max g-monomial degree
  int s_max = 3;   // max number of g-monomials per template
  bool include_overlap = false;
  bool exclude_integer_classes = true;
};

/// One scanned (weight system, g-template) instance.
struct FamilyRecord {
  Family family = Family::cA_C;
  long long r = 0;
  long long a_param = 0;
  WeightSystem ws;
  SeriesSupport support;
  bool valid = false;           // find_beta produced a witness
  std::string fail_reason;      // set when !valid
  std::optional<BetaWitness> witness;
  std::optional<StructureReport> structure;
  bool cap_binding = false;     // a support monomial sits at the degree cap
};

/// Scan key order: (family, r, a_param, support).
bool record_less(const FamilyRecord& x, const FamilyRecord& y);

/// Runs the full pipeline over every admissible (r <= r_max, a_param) and
/// every domination-antichain g-template within the caps.  Deterministic
/// sorted output for any worker count.
std::vector<FamilyRecord> scan_family(Family family, const ScanCaps& caps, int workers);

/// Empirical atlas row: one (family, k, r, beta) key with the number of
/// distinct supports realizing it.
struct AtlasRow {
  std::string family;
  long long k = 0;
  long long r = 0;
  Vec4 beta{};
  long long support_count = 0;
};

bool operator==(const AtlasRow& x, const AtlasRow& y);

/// Key + support of one Valid record, the unit of atlas deduplication.
struct AtlasEntry {
  std::string family;
  long long k = 0;
  long long r = 0;
  Vec4 beta{};
  std::vector<Monomial> support;
};

/// Deduplicates by (family, k, r, beta, support) and aggregates distinct
/// supports per key; sorted, idempotent, independent of shard order.
std::vector<AtlasRow> atlas_from_entries(std::vector<AtlasEntry> entries);
std::vector<AtlasRow> atlas_merge(const std::vector<FamilyRecord>& records);

}  // namespace enccdv
