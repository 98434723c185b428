#include "enccdv/json_io.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace enccdv {

json to_json(const Rational& x) { return to_string(x); }

json to_json(const Vec4& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(to_string(x));
  return arr;
}

json to_json(const WeightSystem& ws) {
  return json{{"r", ws.r}, {"a", ws.a}, {"e", ws.e}};
}

json to_json(const Weight& w) {
  return json{{"coords", to_json(w.coords)}, {"class", w.class_index}};
}

json to_json(const Monomial& m) { return json(m.exp); }

json to_json(const SeriesSupport& s) {
  json mons = json::array();
  for (const auto& m : s.support) mons.push_back(to_json(m));
  return json{{"type", to_string(s.type)}, {"monomials", mons}};
}

json to_json(const MaximinResult& c) {
  return json{{"value", to_string(c.value)}, {"direction", to_json(c.direction)}};
}

json to_json(const SublevelSet& s) {
  json points = json::array();
  for (const auto& [w, d] : s.points) {
    json p = to_json(w);
    p["diff"] = to_string(d);
    points.push_back(p);
  }
  return json{{"bounded", s.bounded},
              {"certificate", to_json(s.certificate)},
              {"points", points}};
}

json to_json(const BetaWitness& w) {
  json j{{"k", w.k}};
  j["beta"] = w.beta ? to_json(*w.beta) : json(nullptr);
  j["flags"] = w.flags;
  j["sublevel"] = to_json(w.evidence);
  return j;
}

json to_json(const BetaFailure& f) {
  json off = json::array();
  for (const auto& w : f.offending) off.push_back(to_json(w));
  return json{{"reason", f.reason},
              {"offending", off},
              {"sublevel", to_json(f.evidence)}};
}

json to_json(const StructureReport& r) {
  json conditions = json::object();
  for (const auto& [label, res] : r.conditions) {
    json c{{"pass", res.pass}};
    if (!res.witness.empty()) c["witness"] = res.witness;
    conditions[label] = c;
  }
  return json{{"theorem", r.is_cA ? "cA" : "nonCA"},
              {"conditions", conditions},
              {"permutation", r.permutation},
              {"flags", r.flags},
              {"exceptions", r.exceptions()}};
}

json to_json(const NormalForm& n) {
  json j{{"family", to_string(n.family)}};
  if (family_has_param(n.family)) j["a"] = n.a_param;
  j["permutation"] = n.permutation;
  return j;
}

json to_json(const Verdict& v) {
  json j;
  j["summary"] = to_string(v.summary);
  j["setting"] = json{{"pass", v.setting_violations.empty()},
                      {"reasons", v.setting_violations}};
  j["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  j["failure"] = v.failure ? to_json(*v.failure) : json(nullptr);
  j["structure"] = v.structure ? to_json(*v.structure) : json(nullptr);
  json forms = json::array();
  for (const auto& n : v.normal_forms) forms.push_back(to_json(n));
  j["normal_forms"] = forms;
  if (!v.pairings.empty()) {
    json ps = json::array();
    for (const auto& p : v.pairings) {
      json pj{{"case", p.which_case}};
      if (p.which_case == 1) pj["unit_index"] = p.unit_index;
      pj["pairs"] = p.pairs;
      ps.push_back(pj);
    }
    j["terminal_pairings"] = ps;
  }
  return j;
}

json to_json(const FamilyRecord& rec) {
  json j;
  j["v"] = kRecordVersion;
  j["family"] = to_string(rec.family);
  j["r"] = rec.r;
  j["a_param"] = rec.a_param;
  j["ws"] = to_json(rec.ws);
  j["support"] = to_json(rec.support);
  j["cap_binding"] = rec.cap_binding;
  if (rec.valid) {
    j["verdict"] = "valid";
    j["k"] = rec.witness->k;
    j["beta"] = rec.witness->beta ? to_json(*rec.witness->beta) : json(nullptr);
    j["flags"] = rec.witness->flags;
    if (rec.structure) j["structure"] = to_json(*rec.structure);
  } else {
    j["verdict"] = "setting-fails";
    j["reason"] = rec.fail_reason;
  }
  return j;
}

namespace {

long long require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw std::invalid_argument(std::string("input: missing integer field '") + key +
                                "'");
  return j[key].get<long long>();
}

Monomial parse_monomial(const json& j) {
  if (!j.is_array() || j.size() != 4)
    throw std::invalid_argument("input: each monomial must be an array of 4 integers");
  Monomial m;
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_number_integer())
      throw std::invalid_argument("input: monomial exponents must be integers");
    m.exp[i] = j[i].get<int>();
  }
  return m;
}

}  // namespace

SingularityInput parse_singularity_input(const json& j) {
  SingularityInput in;
  in.r = require_int(j, "r");
  if (!j.contains("a") || !j["a"].is_array() || j["a"].size() != 4)
    throw std::invalid_argument("input: 'a' must be an array of 4 integers");
  for (int i = 0; i < 4; ++i) {
    if (!j["a"][i].is_number_integer())
      throw std::invalid_argument("input: 'a' entries must be integers");
    in.a[i] = j["a"][i].get<long long>();
  }
  in.e = require_int(j, "e");
  if (!j.contains("f") || !j["f"].is_object())
    throw std::invalid_argument("input: missing object field 'f'");
  const json& f = j["f"];
  if (!f.contains("type") || !f["type"].is_string())
    throw std::invalid_argument("input: f.type must be a string");
  auto type = series_type_from_string(f["type"].get<std::string>());
  if (!type)
    throw std::invalid_argument("input: f.type must be one of cA, odd, cDE");
  in.type = *type;
  if (!f.contains("monomials") || !f["monomials"].is_array())
    throw std::invalid_argument("input: f.monomials must be an array");
  for (const auto& m : f["monomials"]) in.g.push_back(parse_monomial(m));
  return in;
}

std::optional<AtlasEntry> atlas_entry_from_record_json(const json& j) {
  if (!j.contains("v") || !j["v"].is_number_integer() ||
      j["v"].get<int>() != kRecordVersion)
    throw std::invalid_argument("record version mismatch");
  if (j.value("verdict", "") != "valid") return std::nullopt;
  AtlasEntry entry;
  entry.family = j.at("family").get<std::string>();
  entry.r = j.at("r").get<long long>();
  entry.k = j.at("k").get<long long>();
  if (j.contains("beta") && !j["beta"].is_null()) {
    const json& coords = j["beta"].at("coords");
    for (int i = 0; i < 4; ++i)
      entry.beta[i] = parse_rational(coords.at(i).get<std::string>());
  }
  for (const auto& m : j.at("support").at("monomials"))
    entry.support.push_back(parse_monomial(m));
  return entry;
}

std::string atlas_csv_header() { return "family,k,r,beta,supports"; }

std::string atlas_csv_row(const AtlasRow& row) {
  std::string beta;
  for (int i = 0; i < 4; ++i) beta += (i ? " " : "") + to_string(row.beta[i]);
  return row.family + "," + std::to_string(row.k) + "," + std::to_string(row.r) + "," +
         beta + "," + std::to_string(row.support_count);
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path() && !target.parent_path().empty())
    fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace enccdv
