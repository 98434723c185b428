#pragma once

#include <string>

#include <json.hpp>

#include "enccdv/pipeline.hpp"

namespace enccdv {

// All rational values cross JSON as strings "p/q" ("n" for integers), so
// emitted files are exact and byte-stable.
using json = nlohmann::ordered_json;

json to_json(const Rational& x);
json to_json(const Vec4& v);
json to_json(const WeightSystem& ws);
json to_json(const Weight& w);
json to_json(const Monomial& m);
json to_json(const SeriesSupport& s);
json to_json(const MaximinResult& c);
json to_json(const SublevelSet& s);
json to_json(const BetaWitness& w);
json to_json(const BetaFailure& f);
json to_json(const StructureReport& r);
json to_json(const NormalForm& n);
json to_json(const Verdict& v);

/// JSONL line for one scanned record; carries a format version tag.
json to_json(const FamilyRecord& rec);
inline constexpr int kRecordVersion = 1;

/// Parses {"r":..,"a":[..],"e":..,"f":{"type":..,"monomials":[..]}}.
/// Throws std::invalid_argument on schema violations.
SingularityInput parse_singularity_input(const json& j);

/// Extracts the atlas key + support from a record line; nullopt for records
/// without a witness.  Throws std::invalid_argument on version mismatch.
std::optional<AtlasEntry> atlas_entry_from_record_json(const json& j);

std::string atlas_csv_header();
std::string atlas_csv_row(const AtlasRow& row);

/// Writes content to path atomically (temp file + rename).
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace enccdv
