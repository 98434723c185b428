#include "enccdv/families.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "enccdv/parallel.hpp"

namespace enccdv {

namespace {

long long mod_norm(long long x, long long r) {
  long long m = x % r;
  return m < 0 ? m + r : m;
}

bool monomials_less(const std::vector<Monomial>& x, const std::vector<Monomial>& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

// All antichain subsets of the (sorted) pool with 1 <= size <= s_max.
std::vector<std::vector<Monomial>> antichain_templates(const std::vector<Monomial>& pool,
                                                       int s_max) {
  std::vector<std::vector<Monomial>> out;
  std::vector<Monomial> current;
  auto extend = [&](auto&& self, size_t from) -> void {
    if (!current.empty()) out.push_back(current);
    if (static_cast<int>(current.size()) == s_max) return;
    for (size_t i = from; i < pool.size(); ++i) {
      bool comparable = false;
      for (const auto& m : current)
        if (dominates(pool[i], m) || dominates(m, pool[i])) {
          comparable = true;
          break;
        }
      if (comparable) continue;
      current.push_back(pool[i]);
      self(self, i + 1);
      current.pop_back();
    }
  };
  extend(extend, 0);
  return out;
}

}  // namespace

std::variant<WeightSystem, Rejection> generate_family(Family family, long long r,
                                                      long long a_param,
                                                      bool include_overlap) {
  if (r < 2) return Rejection{"r must be >= 2"};
  long long a = family_has_param(family) ? mod_norm(a_param, r) : 0;
  auto tuple = family_defining_tuple(family, r, a, include_overlap);
  if (!tuple) {
    if (family_has_param(family) && std::gcd(a, r) != 1)
      return Rejection{"gcd(a, r) != 1"};
    return Rejection{"family parameter constraints violated"};
  }
  std::array<long long, 4> residues{};
  for (int i = 0; i < 4; ++i) residues[i] = mod_norm((*tuple)[i], r);
  long long e = mod_norm((*tuple)[4], r);
  if (auto why = weight_system_violation(r, residues, e)) return Rejection{*why};
  WeightSystem ws{r, residues, e};
  if (family_series_type(family) == SeriesType::cA && excluded_cA_tuple(ws))
    return Rejection{"excluded (a, -a, 1, 0; 0) form"};
  return ws;
}

bool record_less(const FamilyRecord& x, const FamilyRecord& y) {
  if (x.family != y.family) return static_cast<int>(x.family) < static_cast<int>(y.family);
  if (x.r != y.r) return x.r < y.r;
  if (x.a_param != y.a_param) return x.a_param < y.a_param;
  return monomials_less(x.support.support, y.support.support);
}

std::vector<FamilyRecord> scan_family(Family family, const ScanCaps& caps, int workers) {
  struct Instance {
    long long r, a;
    WeightSystem ws;
  };
  std::vector<Instance> instances;
  for (long long r = 2; r <= caps.r_max; ++r) {
    long long a_lo = family_has_param(family) ? 1 : 0;
    long long a_hi = family_has_param(family) ? r - 1 : 0;
    for (long long a = a_lo; a <= a_hi; ++a) {
      auto gen = generate_family(family, r, a, caps.include_overlap);
      if (auto* ws = std::get_if<WeightSystem>(&gen)) instances.push_back({r, a, *ws});
    }
  }

  const SeriesType type = family_series_type(family);
  // Flatten into (instance, template) tasks so the heavy small-r instances
  // spread across workers.
  struct Task {
    size_t instance;
    std::vector<Monomial> tmpl;
  };
  std::vector<Task> tasks;
  for (size_t idx = 0; idx < instances.size(); ++idx) {
    std::vector<Monomial> pool =
        semiinvariant_candidates(instances[idx].ws, type, caps.d_max);
    for (auto& tmpl : antichain_templates(pool, caps.s_max))
      tasks.push_back({idx, std::move(tmpl)});
  }

  std::vector<FamilyRecord> out(tasks.size());
  parallel_for(tasks.size(), workers, [&](size_t t) {
    const Instance& inst = instances[tasks[t].instance];
    FamilyRecord rec;
    rec.family = family;
    rec.r = inst.r;
    rec.a_param = inst.a;
    rec.ws = inst.ws;
    rec.support = make_series(inst.ws, type, tasks[t].tmpl);
    for (const auto& m : rec.support.support)
      if (m.degree() == caps.d_max) rec.cap_binding = true;
    FindBetaResult res =
        find_beta(inst.ws, rec.support, caps.k_max, caps.exclude_integer_classes);
    if (res.ok()) {
      rec.valid = true;
      rec.witness = std::move(res.witness);
      rec.structure = type == SeriesType::cA
                          ? check_cA_structure(inst.ws, rec.support, *rec.witness)
                          : check_nonCA_structure(inst.ws, rec.support, *rec.witness);
    } else {
      rec.valid = false;
      rec.fail_reason = res.failure->reason;
    }
    out[t] = std::move(rec);
  });
  std::sort(out.begin(), out.end(), record_less);
  return out;
}

bool operator==(const AtlasRow& x, const AtlasRow& y) {
  return x.family == y.family && x.k == y.k && x.r == y.r && x.beta == y.beta &&
         x.support_count == y.support_count;
}

std::vector<AtlasRow> atlas_from_entries(std::vector<AtlasEntry> entries) {
  auto key_less = [](const AtlasEntry& x, const AtlasEntry& y) {
    if (x.family != y.family) return x.family < y.family;
    if (x.k != y.k) return x.k < y.k;
    if (x.r != y.r) return x.r < y.r;
    if (x.beta != y.beta) return x.beta < y.beta;
    return monomials_less(x.support, y.support);
  };
  auto key_eq = [](const AtlasEntry& x, const AtlasEntry& y) {
    return x.family == y.family && x.k == y.k && x.r == y.r && x.beta == y.beta &&
           x.support == y.support;
  };
  std::sort(entries.begin(), entries.end(), key_less);
  entries.erase(std::unique(entries.begin(), entries.end(), key_eq), entries.end());

  std::vector<AtlasRow> rows;
  for (const auto& entry : entries) {
    if (!rows.empty() && rows.back().family == entry.family && rows.back().k == entry.k &&
        rows.back().r == entry.r && rows.back().beta == entry.beta) {
      ++rows.back().support_count;
    } else {
      rows.push_back({entry.family, entry.k, entry.r, entry.beta, 1});
    }
  }
  return rows;
}

std::vector<AtlasRow> atlas_merge(const std::vector<FamilyRecord>& records) {
  std::vector<AtlasEntry> entries;
  for (const auto& rec : records) {
    if (!rec.valid || !rec.witness) continue;
    Vec4 beta{};  // zero marker for k = 1
    if (rec.witness->beta) beta = rec.witness->beta->coords;
    entries.push_back(
        {to_string(rec.family), rec.witness->k, rec.ws.r, beta, rec.support.support});
  }
  return atlas_from_entries(std::move(entries));
}

}  // namespace enccdv
