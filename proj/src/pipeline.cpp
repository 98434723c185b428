#include "enccdv/pipeline.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "enccdv/parallel.hpp"

namespace enccdv {

namespace {

long long mod_norm(long long x, long long r) {
  long long m = x % r;
  return m < 0 ? m + r : m;
}

std::string coords_str(const Vec4& v) {
  return "(" + to_string(v[0]) + ", " + to_string(v[1]) + ", " + to_string(v[2]) +
         ", " + to_string(v[3]) + ")";
}

}  // namespace

const char* to_string(Summary s) {
  switch (s) {
    case Summary::TerminalLike: return "terminal-like";
    case Summary::EncCandidate: return "enc-candidate";
    case Summary::SettingViolated: return "setting-violated";
  }
  return "?";
}

Verdict classify(const SingularityInput& input, const ClassifyOptions& options) {
  Verdict v;
  if (input.r < 1) {
    v.setting_violations.push_back("order r must be positive");
    return v;
  }
  std::array<long long, 4> a{};
  for (int i = 0; i < 4; ++i) a[i] = mod_norm(input.a[i], input.r);
  long long e = mod_norm(input.e, input.r);

  if (auto why = weight_system_violation(input.r, a, e)) {
    v.setting_violations.push_back("residue conditions: " + *why);
  } else {
    WeightSystem ws{input.r, a, e};
    v.ws = ws;
    if (input.type == SeriesType::cA && excluded_cA_tuple(ws))
      v.setting_violations.push_back(
          "weight system has the excluded form (a, -a, 1, 0; 0) for a cA-type equation");
    try {
      v.support = make_series(ws, input.type, input.g);
    } catch (const std::invalid_argument& ex) {
      v.setting_violations.push_back(std::string("equation model: ") + ex.what());
    }
  }
  if (!v.setting_violations.empty()) {
    v.summary = Summary::SettingViolated;
    if (v.ws) v.normal_forms = match_normal_form(*v.ws, input.type);
    return v;
  }

  FindBetaResult res =
      find_beta(*v.ws, *v.support, options.k_max, !options.include_integer_classes);
  if (res.ok()) {
    v.witness = std::move(res.witness);
    v.structure = input.type == SeriesType::cA
                      ? check_cA_structure(*v.ws, *v.support, *v.witness)
                      : check_nonCA_structure(*v.ws, *v.support, *v.witness);
    v.summary = v.witness->k == 1 ? Summary::TerminalLike : Summary::EncCandidate;
  } else {
    v.failure = std::move(res.failure);
    v.setting_violations.push_back("(k, beta) search: " + v.failure->reason);
    v.summary = Summary::SettingViolated;
  }
  v.normal_forms = match_normal_form(*v.ws, input.type);
  if (options.verbose_pairings) {
    const WeightSystem& ws = *v.ws;
    bool gcds = std::gcd(ws.a[0], ws.r) == 1 && std::gcd(ws.a[1], ws.r) == 1 &&
                std::gcd(ws.a[2], ws.r) == 1 &&
                std::gcd(ws.a[3], ws.r) == std::gcd(ws.e, ws.r);
    if (gcds && terminal_hypothesis(ws)) v.pairings = terminal_conclusions(ws);
  }
  return v;
}

namespace {

// Independent oracle for the sublevel search: plain box enumeration of the
// shifts c in [0, cap]^4 for every class.
std::vector<std::pair<Weight, Rational>> brute_force_sublevel(
    const WeightSystem& ws, const SeriesSupport& s, bool exclude_integer_classes,
    long long cap) {
  const long long r = ws.r;
  std::vector<std::pair<Weight, Rational>> out;
  std::vector<long long> classes;
  if (!exclude_integer_classes) classes.push_back(0);
  for (long long j = 1; j < r; ++j) classes.push_back(j);
  for (long long j : classes) {
    std::array<long long, 4> u0{};
    if (j > 0)
      for (int i = 0; i < 4; ++i) u0[i] = mod_norm(j * ws.a[i], r);
    for (long long c1 = 0; c1 <= cap; ++c1)
      for (long long c2 = 0; c2 <= cap; ++c2)
        for (long long c3 = 0; c3 <= cap; ++c3)
          for (long long c4 = 0; c4 <= cap; ++c4) {
            if (j == 0 && c1 + c2 + c3 + c4 == 0) continue;
            std::array<long long, 4> u = {u0[0] + r * c1, u0[1] + r * c2,
                                          u0[2] + r * c3, u0[3] + r * c4};
            long long total = u[0] + u[1] + u[2] + u[3];
            long long best = 0;
            bool first = true;
            for (const auto& m : s.support) {
              long long w = 0;
              for (int i = 0; i < 4; ++i) w += m.exp[i] * u[i];
              if (first || w < best) {
                best = w;
                first = false;
              }
            }
            if (total - best <= r) {
              Vec4 coords;
              for (int i = 0; i < 4; ++i) coords[i] = Rational(u[i], r);
              out.emplace_back(Weight{coords, j}, Rational(total - best, r));
            }
          }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return weight_less(x.first, y.first); });
  return out;
}

// Dual route to the certificate value: min over convex combinations l of the
// support of max_i (sum_m l_m m_i), solved by its own rational vertex
// enumeration.  Equals the primal maximin by LP duality, and 1/(1 - value)
// bounds every coordinate of the sublevel set, which makes the oracle box
// provably complete.
Rational dual_certificate_value(const SeriesSupport& s) {
  const size_t n = s.support.size();
  const size_t vars = n + 1;  // (l_1..l_n, u)
  std::vector<std::vector<Rational>> rows;  // row * x >= 0
  for (size_t k = 0; k < n; ++k) {
    std::vector<Rational> row(vars, Rational(0));
    row[k] = Rational(1);
    rows.push_back(row);
  }
  for (int i = 0; i < 4; ++i) {
    std::vector<Rational> row(vars, Rational(0));
    for (size_t k = 0; k < n; ++k) row[k] = Rational(-s.support[k].exp[i]);
    row[n] = Rational(1);
    rows.push_back(row);
  }
  auto solve = [](std::vector<std::vector<Rational>>& m) {
    const size_t dim = m.size();
    for (size_t col = 0; col < dim; ++col) {
      size_t pivot = col;
      while (pivot < dim && m[pivot][col].is_zero()) ++pivot;
      if (pivot == dim) return false;
      std::swap(m[col], m[pivot]);
      Rational inv = Rational(1) / m[col][col];
      for (size_t j = col; j <= dim; ++j) m[col][j] *= inv;
      for (size_t row = 0; row < dim; ++row) {
        if (row == col || m[row][col].is_zero()) continue;
        Rational f = m[row][col];
        for (size_t j = col; j <= dim; ++j) m[row][j] -= f * m[col][j];
      }
    }
    return true;
  };
  bool have = false;
  Rational best;
  std::vector<size_t> idx;
  auto recurse = [&](auto&& self, size_t from) -> void {
    if (idx.size() == n) {
      std::vector<std::vector<Rational>> sys(vars,
                                             std::vector<Rational>(vars + 1, Rational(0)));
      for (size_t k = 0; k < n; ++k) sys[0][k] = Rational(1);
      sys[0][vars] = Rational(1);  // sum l = 1
      for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < vars; ++c) sys[r + 1][c] = rows[idx[r]][c];
      if (!solve(sys)) return;
      std::vector<Rational> x(vars);
      for (size_t c = 0; c < vars; ++c) x[c] = sys[c][vars];
      for (size_t k = 0; k < n; ++k)
        if (x[k] < Rational(0)) return;
      for (const auto& row : rows) {
        Rational v(0);
        for (size_t c = 0; c < vars; ++c) v += row[c] * x[c];
        if (v < Rational(0)) return;
      }
      if (!have || x[n] < best) {
        have = true;
        best = x[n];
      }
      return;
    }
    for (size_t i = from; i < rows.size(); ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  recurse(recurse, 0);
  if (!have) throw std::logic_error("dual certificate: no basic feasible point");
  return best;
}

struct SuiteContext {
  const VerifyCaps& caps;
  std::ostream& log;
  std::ostream* csv;
};

void csv_line(SuiteContext& ctx, const std::string& line) {
  if (ctx.csv) *ctx.csv << line << "\n";
}

int run_terminal(SuiteContext& ctx) {
  TerminalScanResult res = terminal_scan(ctx.caps.r_max, ctx.caps.workers);
  ctx.log << "terminal: r <= " << ctx.caps.r_max << ", hypothesis tuples "
          << res.hypothesis_tuples << ", " << res.counterexamples.size()
          << " counterexamples\n";
  csv_line(ctx, "kind,r,a1,a2,a3,a4,e");
  for (const auto& ws : res.counterexamples)
    csv_line(ctx, "counterexample," + std::to_string(ws.r) + "," +
                      std::to_string(ws.a[0]) + "," + std::to_string(ws.a[1]) + "," +
                      std::to_string(ws.a[2]) + "," + std::to_string(ws.a[3]) + "," +
                      std::to_string(ws.e));
  return res.counterexamples.empty() ? 0 : 1;
}

int run_nc(SuiteContext& ctx) {
  auto rows = nc_gamma0_scan(ctx.caps.delta, ctx.caps.r_max, ctx.caps.workers);
  ctx.log << "nc: delta = " << to_string(ctx.caps.delta) << ", r <= " << ctx.caps.r_max
          << ", " << rows.size() << " distinct values\n";
  csv_line(ctx, "value,count,r,k0,a1,a2,a3,a4,e");
  for (const auto& row : rows) {
    std::ostringstream os;
    os << row.value << "," << row.count << "," << row.r << "," << row.k0 << ","
       << row.a[0] << "," << row.a[1] << "," << row.a[2] << "," << row.a[3] << ","
       << row.e;
    csv_line(ctx, os.str());
    ctx.log << "  value " << row.value << " (count " << row.count << ")\n";
  }
  return 0;
}

int run_bound_oracle(SuiteContext& ctx) {
  auto report = bound_oracle(ctx.caps.d, ctx.caps.epsilon, ctx.caps.q_max,
                             ctx.caps.r_max);
  auto vec_str = [](const std::vector<Rational>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
    return s;
  };
  ctx.log << "bound-oracle: d = " << ctx.caps.d << ", epsilon = "
          << to_string(ctx.caps.epsilon) << ", q <= " << ctx.caps.q_max << ", r <= "
          << ctx.caps.r_max << "\n";
  ctx.log << "  max r = " << report.max_r << " at v = (" << vec_str(report.attaining)
          << "), " << report.degenerate.size() << " degenerate vectors\n";
  csv_line(ctx, "kind,max_r,v");
  csv_line(ctx, "attaining," + std::to_string(report.max_r) + "," +
                    vec_str(report.attaining));
  for (const auto& row : report.degenerate)
    csv_line(ctx, "degenerate," + std::to_string(row.max_r) + "," + vec_str(row.v));
  return 0;
}

ScanCaps scan_caps_of(const VerifyCaps& caps) {
  ScanCaps sc;
  sc.r_max = caps.r_max;
  sc.k_max = caps.k_max;
  sc.d_max = caps.d_max;
  sc.s_max = caps.s_max;
  return sc;
}

int run_structure(SuiteContext& ctx, bool cA_side) {
  std::vector<Family> fams;
  for (Family f : all_families())
    if ((family_series_type(f) == SeriesType::cA) == cA_side) fams.push_back(f);
  ScanCaps sc = scan_caps_of(ctx.caps);
  long long valid_count = 0, exception_count = 0, violations = 0;
  csv_line(ctx, "kind,family,r,a_param,k,beta,detail");
  std::vector<std::pair<long long, Vec4>> valid_betas;  // (r, beta)
  for (Family f : fams) {
    auto records = scan_family(f, sc, ctx.caps.workers);
    for (const auto& rec : records) {
      if (!rec.valid) continue;
      ++valid_count;
      std::string beta_str = rec.witness->beta
                                 ? coords_str(rec.witness->beta->coords)
                                 : std::string("0");
      if (rec.witness->beta) valid_betas.emplace_back(rec.r, rec.witness->beta->coords);
      // Hard assertion: the fractional-sum identity (condition 5) holds for
      // every Valid record; the report entry must agree with the direct check.
      bool direct = terminal_hypothesis(rec.ws);
      const ConditionResult* c5 = rec.structure->find("5");
      if (!direct || !c5 || !c5->pass || c5->pass != direct) {
        ++violations;
        csv_line(ctx, "violation," + std::string(to_string(f)) + "," +
                          std::to_string(rec.r) + "," + std::to_string(rec.a_param) +
                          "," + std::to_string(rec.witness->k) + ",\"" + beta_str +
                          "\",condition-5");
      }
      if (!rec.structure->all_pass()) {
        ++exception_count;
        std::string labels;
        for (const auto& l : rec.structure->exceptions()) labels += l + " ";
        csv_line(ctx, "exception," + std::string(to_string(f)) + "," +
                          std::to_string(rec.r) + "," + std::to_string(rec.a_param) +
                          "," + std::to_string(rec.witness->k) + ",\"" + beta_str +
                          "\"," + labels);
      }
    }
  }
  // Finite-set echo: distinct beta values over r in (R/2, R] should not grow
  // with R; regressions are reported, not fatal.
  long long previous = -1;
  for (long long R : {ctx.caps.r_max / 4, ctx.caps.r_max / 2, ctx.caps.r_max}) {
    if (R < 2) continue;
    std::set<Vec4> distinct;
    for (const auto& [r, beta] : valid_betas)
      if (r > R / 2 && r <= R) distinct.insert(beta);
    long long count = static_cast<long long>(distinct.size());
    ctx.log << "  distinct beta in r-range (" << R / 2 << ", " << R << "]: " << count
            << (previous >= 0 && count > previous ? "  (regression: count grew)" : "")
            << "\n";
    previous = count;
  }
  ctx.log << (cA_side ? "structure-cA" : "structure-nonCA") << ": " << valid_count
          << " valid records, " << exception_count << " exceptions, " << violations
          << " condition-5 violations\n";
  return violations == 0 ? 0 : 1;
}

int run_g_weight(SuiteContext& ctx) {
  ScanCaps sc = scan_caps_of(ctx.caps);
  auto records = scan_family(Family::cDE_a, sc, ctx.caps.workers);
  long long valid_count = 0, violations = 0;
  csv_line(ctx, "kind,r,a_param,k,detail");
  for (const auto& rec : records) {
    if (!rec.valid) continue;
    ++valid_count;
    if (!g_weight_lemma_check(rec.ws, rec.support, *rec.witness)) {
      ++violations;
      csv_line(ctx, "violation," + std::to_string(rec.r) + "," +
                        std::to_string(rec.a_param) + "," +
                        std::to_string(rec.witness->k) + ",g-weight");
    }
  }
  ctx.log << "g-weight: " << valid_count << " valid records, " << violations
          << " violations\n";
  return violations == 0 ? 0 : 1;
}

int run_sublevel_oracle(SuiteContext& ctx) {
  const long long r_cap = std::min<long long>(ctx.caps.r_max, 12);
  ScanCaps sc;
  sc.r_max = r_cap;
  sc.d_max = std::min(ctx.caps.d_max, 6);
  sc.s_max = std::min(ctx.caps.s_max, 2);
  long long systems = 0, discrepancies = 0;
  csv_line(ctx, "kind,family,r,a_param,detail");
  for (Family f : all_families()) {
    const SeriesType type = family_series_type(f);
    for (long long r = 2; r <= r_cap; ++r) {
      long long a_hi = family_has_param(f) ? r - 1 : 0;
      for (long long a = family_has_param(f) ? 1 : 0; a <= a_hi; ++a) {
        auto gen = generate_family(f, r, a);
        auto* ws = std::get_if<WeightSystem>(&gen);
        if (!ws) continue;
        auto pool = semiinvariant_candidates(*ws, type, sc.d_max);
        std::vector<std::vector<Monomial>> templates;
        for (size_t i = 0; i < pool.size(); ++i) {
          templates.push_back({pool[i]});
          for (size_t j = i + 1; j < pool.size(); ++j)
            if (!dominates(pool[i], pool[j]) && !dominates(pool[j], pool[i]))
              templates.push_back({pool[i], pool[j]});
        }
        for (const auto& tmpl : templates) {
          SeriesSupport support = make_series(*ws, type, tmpl);
          MaximinResult cert = boundedness_certificate(support);
          if (!(cert.value < Rational(1))) continue;
          ++systems;
          SublevelSet sub = sublevel_enumerate(*ws, support, true, &cert);

          // Route 1: the stated box.  The sublevel set can poke out of it
          // for near-critical supports, so the comparison restricts both
          // sides to shifts in [0, maxdeg+3]^4.
          int maxdeg = 0;
          for (const auto& m : support.support) maxdeg = std::max(maxdeg, m.degree());
          const long long stated_cap = maxdeg + 3;
          // shift c_i = floor(w_i), since the class representative has
          // fractional coordinates
          auto in_box = [&](const Weight& w) {
            for (int i = 0; i < 4; ++i)
              if (w.coords[i].floor() > stated_cap) return false;
            return true;
          };
          auto oracle = brute_force_sublevel(*ws, support, true, stated_cap);
          std::vector<std::pair<Weight, Rational>> boxed;
          for (const auto& p : sub.points)
            if (in_box(p.first)) boxed.push_back(p);
          bool equal = boxed.size() == oracle.size();
          for (size_t i = 0; equal && i < oracle.size(); ++i)
            equal = boxed[i].first == oracle[i].first &&
                    boxed[i].second == oracle[i].second;

          // Route 2: a provably complete box from the dual certificate
          // value (strong duality is asserted along the way), compared to
          // the full enumeration.
          Rational dual = dual_certificate_value(support);
          bool dual_equal = dual == cert.value;
          long long full_cap =
              (Rational(1) / (Rational(1) - dual)).floor() + 1;
          auto full_oracle = brute_force_sublevel(*ws, support, true, full_cap);
          bool full_equal = sub.points.size() == full_oracle.size();
          for (size_t i = 0; full_equal && i < full_oracle.size(); ++i)
            full_equal = sub.points[i].first == full_oracle[i].first &&
                         sub.points[i].second == full_oracle[i].second;

          if (!equal || !dual_equal || !full_equal) {
            ++discrepancies;
            csv_line(ctx, "discrepancy," + std::string(to_string(f)) + "," +
                              std::to_string(r) + "," + std::to_string(a) + "," +
                              std::string(!equal ? "boxed " : "") +
                              std::string(!dual_equal ? "duality " : "") +
                              std::string(!full_equal ? "full" : ""));
          }
        }
      }
    }
  }
  ctx.log << "sublevel-oracle: " << systems << " bounded systems compared, "
          << discrepancies << " discrepancies\n";
  return discrepancies == 0 ? 0 : 1;
}

}  // namespace

int verify_all(const std::string& suite, const VerifyCaps& caps, std::ostream& log,
               std::ostream* csv) {
  SuiteContext ctx{caps, log, csv};
  if (suite == "terminal") return run_terminal(ctx);
  if (suite == "nc") return run_nc(ctx);
  if (suite == "bound-oracle") return run_bound_oracle(ctx);
  if (suite == "structure-cA") return run_structure(ctx, true);
  if (suite == "structure-nonCA") return run_structure(ctx, false);
  if (suite == "g-weight") return run_g_weight(ctx);
  if (suite == "sublevel-oracle") return run_sublevel_oracle(ctx);
  log << "unknown suite: " << suite << "\n";
  return 64;
}

}  // namespace enccdv
