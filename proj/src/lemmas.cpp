#include "enccdv/lemmas.hpp"

#include <algorithm>
#include <numeric>

#include "enccdv/parallel.hpp"

namespace enccdv {

namespace {

long long mod_norm(long long x, long long r) {
  long long m = x % r;
  return m < 0 ? m + r : m;
}

}  // namespace

bool terminal_hypothesis(const WeightSystem& ws) {
  const long long r = ws.r;
  for (long long j = 1; j < r; ++j) {
    long long lhs = 0;
    for (int i = 0; i < 4; ++i) lhs += mod_norm(j * ws.a[i], r);
    if (lhs != mod_norm(j * ws.e, r) + j + r) return false;  // identity * r
  }
  return true;
}

std::vector<TerminalConclusion> terminal_conclusions(const WeightSystem& ws) {
  const long long r = ws.r;
  for (int i = 0; i < 3; ++i)
    if (std::gcd(ws.a[i], r) != 1)
      throw std::domain_error("terminal conclusion: gcd(a1..a3, r) must be 1");
  if (std::gcd(ws.a[3], r) != std::gcd(ws.e, r))
    throw std::domain_error("terminal conclusion: gcd(a4, r) must equal gcd(e, r)");
  if (!terminal_hypothesis(ws))
    throw std::domain_error("terminal conclusion: hypothesis identity fails");

  std::vector<TerminalConclusion> out;
  if (std::gcd(ws.e, r) > 1) {
    if (mod_norm(ws.a[3] - ws.e, r) != 0) return out;
    for (int i1 = 1; i1 <= 3; ++i1) {
      if (mod_norm(ws.a[i1 - 1] - 1, r) != 0) continue;
      std::array<int, 2> rest{};
      int pos = 0;
      for (int i = 1; i <= 3; ++i)
        if (i != i1) rest[pos++] = i;
      if (mod_norm(ws.a[rest[0] - 1] + ws.a[rest[1] - 1], r) == 0) {
        TerminalConclusion c;
        c.which_case = 1;
        c.unit_index = i1;
        c.pairs = {rest};
        out.push_back(std::move(c));
      }
    }
    return out;
  }

  // gcd(e, r) = 1: match (a1, a2, a3, a4, -e, -1) into three zero-sum pairs.
  std::array<long long, 6> vals = {ws.a[0], ws.a[1],          ws.a[2],
                                   ws.a[3], mod_norm(-ws.e, r), mod_norm(-1, r)};
  std::array<bool, 6> used{};
  std::vector<std::array<int, 2>> pairs;
  auto search = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 0; i < 6; ++i)
      if (!used[i]) {
        first = i;
        break;
      }
    if (first < 0) {
      TerminalConclusion c;
      c.which_case = 2;
      c.pairs = pairs;
      out.push_back(std::move(c));
      return;
    }
    used[first] = true;
    for (int j = first + 1; j < 6; ++j) {
      if (used[j] || mod_norm(vals[first] + vals[j], r) != 0) continue;
      used[j] = true;
      pairs.push_back({first + 1, j + 1});
      self(self);
      pairs.pop_back();
      used[j] = false;
    }
    used[first] = false;
  };
  search(search);
  return out;
}

TerminalConclusion terminal_conclusion(const WeightSystem& ws) {
  auto all = terminal_conclusions(ws);
  if (all.empty())
    throw std::runtime_error("terminal lemma counterexample: no valid pairing");
  return all.front();
}

TerminalScanResult terminal_scan(long long r_max, int workers) {
  if (r_max < 2) return {};
  std::vector<long long> orders;
  for (long long r = 2; r <= r_max; ++r) orders.push_back(r);
  std::vector<TerminalScanResult> shard(orders.size());

  parallel_for(orders.size(), workers, [&](size_t idx) {
    const long long r = orders[idx];
    TerminalScanResult& res = shard[idx];
    std::vector<long long> units;
    for (long long x = 1; x < r; ++x)
      if (std::gcd(x, r) == 1) units.push_back(x);
    // Classes of (a4, e) with matching gcd.
    std::vector<std::vector<long long>> by_gcd;
    std::vector<long long> divisors;
    for (long long x = 0; x < r; ++x) {
      long long g = std::gcd(x, r);
      auto it = std::find(divisors.begin(), divisors.end(), g);
      size_t pos;
      if (it == divisors.end()) {
        divisors.push_back(g);
        by_gcd.emplace_back();
        pos = divisors.size() - 1;
      } else {
        pos = static_cast<size_t>(it - divisors.begin());
      }
      by_gcd[pos].push_back(x);
    }

    auto hypothesis = [&](const std::array<long long, 4>& a, long long e) {
      for (long long j = 1; j < r; ++j) {
        long long lhs = 0;
        for (int i = 0; i < 4; ++i) lhs += mod_norm(j * a[i], r);
        if (lhs != mod_norm(j * e, r) + j + r) return false;
      }
      return true;
    };

    // The hypothesis and the pairing search are symmetric in a1, a2, a3,
    // so sorted triples of units cover all counterexample candidates.
    for (size_t i = 0; i < units.size(); ++i)
      for (size_t j = i; j < units.size(); ++j)
        for (size_t k = j; k < units.size(); ++k)
          for (size_t cls = 0; cls < divisors.size(); ++cls)
            for (long long a4 : by_gcd[cls])
              for (long long e : by_gcd[cls]) {
                std::array<long long, 4> a = {units[i], units[j], units[k], a4};
                if (!hypothesis(a, e)) continue;
                ++res.hypothesis_tuples;
                WeightSystem ws;
                ws.r = r;
                ws.a = a;
                ws.e = e;
                if (terminal_conclusions(ws).empty()) res.counterexamples.push_back(ws);
              }
  });

  TerminalScanResult total;
  for (const auto& s : shard) {
    total.hypothesis_tuples += s.hypothesis_tuples;
    total.counterexamples.insert(total.counterexamples.end(), s.counterexamples.begin(),
                                 s.counterexamples.end());
  }
  return total;
}

bool nc_hypothesis(long long r, long long k0, const std::array<long long, 4>& a,
                   long long e, const Rational& delta) {
  if (r < 2 || k0 < 1 || k0 > r - 1) throw std::domain_error("nc_hypothesis: bad k0/r");
  if (!(delta > Rational(0))) throw std::domain_error("nc_hypothesis: delta <= 0");
  long long lhs = 0;
  for (int i = 0; i < 4; ++i) lhs += mod_norm(a[i] * k0, r);
  if (lhs != mod_norm(e * k0, r) + k0) return false;  // condition (1) * r
  const long long p = delta.num, q = delta.den;
  for (long long k = 1; k < r; ++k) {
    if (k == k0) continue;
    long long sum = 0;
    for (int i = 0; i < 4; ++i) sum += mod_norm(a[i] * k, r);
    // condition (2) * (q*r)
    if (q * sum < q * mod_norm(e * k, r) + q * k0 + p * r) return false;
  }
  return true;
}

std::vector<NcScanRow> nc_gamma0_scan(const Rational& delta, long long r_max,
                                      int workers) {
  if (!(delta > Rational(0))) throw std::domain_error("nc scan: delta <= 0");
  struct Task {
    long long r, k0;
  };
  std::vector<Task> tasks;
  for (long long r = 2; r <= r_max; ++r)
    for (long long k0 = 1; k0 < r; ++k0) tasks.push_back({r, k0});

  struct Partial {
    long long count = 0;
    bool have = false;
    std::array<long long, 7> witness{};  // r, k0, a1..a4, e
  };
  // Shard results keyed by value = r / gcd(r, k0).
  std::vector<std::vector<std::pair<long long, Partial>>> shard(tasks.size());
  const long long p = delta.num, q = delta.den;

  parallel_for(tasks.size(), workers, [&](size_t idx) {
    const long long r = tasks[idx].r;
    const long long k0 = tasks[idx].k0;
    const long long g0 = std::gcd(k0, r);
    // Residue table mul[a][k] = a*k mod r; rows fit in L1 for desk-scale r.
    std::vector<long long> mul(r * r);
    for (long long a = 0; a < r; ++a)
      for (long long k = 0; k < r; ++k) mul[a * r + k] = mod_norm(a * k, r);
    // e-candidates by their k0-residue, ascending.
    std::vector<std::vector<long long>> e_by_residue(r);
    for (long long e = 0; e < r; ++e) e_by_residue[mul[e * r + k0]].push_back(e);
    // thresholds q*(e k mod r) + q*k0 + p*r per (e, k) are formed on the fly.

    Partial acc;
    // Both conditions are symmetric in a1..a4: enumerate sorted tuples and
    // count each with its permutation multiplicity.
    auto multiplicity = [](const std::array<long long, 4>& a) -> long long {
      long long m = 24;
      int run = 1;
      for (int i = 1; i < 4; ++i) {
        if (a[i] == a[i - 1]) {
          ++run;
          m /= run;
        } else {
          run = 1;
        }
      }
      return m;
    };

    for (long long a1 = 0; a1 < r; ++a1) {
      const long long* m1 = &mul[a1 * r];
      for (long long a2 = a1; a2 < r; ++a2) {
        const long long* m2 = &mul[a2 * r];
        for (long long a3 = a2; a3 < r; ++a3) {
          const long long* m3 = &mul[a3 * r];
          for (long long a4 = a3; a4 < r; ++a4) {
            const long long* m4 = &mul[a4 * r];
            // condition (1) * r: residue sum at k0 equals (e k0 mod r) + k0
            long long u = m1[k0] + m2[k0] + m3[k0] + m4[k0] - k0;
            if (u < 0 || u >= r || e_by_residue[u].empty()) continue;
            for (long long e : e_by_residue[u]) {
              const long long* me = &mul[e * r];
              bool ok = true;
              for (long long k = 1; k < r; ++k) {
                if (k == k0) continue;
                long long sum = m1[k] + m2[k] + m3[k] + m4[k];
                if (q * sum < q * me[k] + q * k0 + p * r) {
                  ok = false;
                  break;
                }
              }
              if (!ok) continue;
              std::array<long long, 4> a = {a1, a2, a3, a4};
              acc.count += multiplicity(a);
              std::array<long long, 7> w = {r, k0, a1, a2, a3, a4, e};
              if (!acc.have || w < acc.witness) {
                acc.have = true;
                acc.witness = w;
              }
            }
          }
        }
      }
    }
    if (acc.count > 0) shard[idx].emplace_back(r / g0, acc);
  });

  std::vector<NcScanRow> rows;
  for (const auto& s : shard)
    for (const auto& [value, part] : s) {
      auto it = std::find_if(rows.begin(), rows.end(),
                             [&](const NcScanRow& row) { return row.value == value; });
      if (it == rows.end()) {
        NcScanRow row;
        row.value = value;
        row.r = part.witness[0];
        row.k0 = part.witness[1];
        row.a = {part.witness[2], part.witness[3], part.witness[4], part.witness[5]};
        row.e = part.witness[6];
        row.count = part.count;
        rows.push_back(row);
      } else {
        it->count += part.count;
        std::array<long long, 7> cur = {it->r,    it->k0,   it->a[0], it->a[1],
                                        it->a[2], it->a[3], it->e};
        if (part.witness < cur) {
          it->r = part.witness[0];
          it->k0 = part.witness[1];
          it->a = {part.witness[2], part.witness[3], part.witness[4], part.witness[5]};
          it->e = part.witness[6];
        }
      }
    }
  std::sort(rows.begin(), rows.end(),
            [](const NcScanRow& x, const NcScanRow& y) { return x.value < y.value; });
  return rows;
}

BoundOracleReport bound_oracle(int d, const Rational& epsilon, int q_max,
                               long long r_max) {
  if (d < 1) throw std::domain_error("bound oracle: d must be >= 1");
  if (!(epsilon > Rational(0))) throw std::domain_error("bound oracle: epsilon <= 0");
  if (q_max < 1) throw std::domain_error("bound oracle: q_max must be >= 1");

  std::vector<Rational> farey;
  for (long long q = 1; q <= q_max; ++q)
    for (long long pnum = 0; pnum <= q; ++pnum)
      if (std::gcd(pnum, q) == 1) farey.push_back(Rational(pnum, q));
  std::sort(farey.begin(), farey.end());
  farey.erase(std::unique(farey.begin(), farey.end()), farey.end());

  auto streak = [&](const std::vector<Rational>& v) -> long long {
    for (long long m = 2; m <= r_max; ++m) {
      Rational sum(0);
      for (const Rational& vi : v) {
        Rational mv = vi * Rational(m);
        sum += Rational(1) + vi * Rational(m - 1) - Rational(mv.ceil());
      }
      if (sum < epsilon) return m - 1;
    }
    return r_max;
  };

  BoundOracleReport report;
  std::vector<Rational> v(d, Rational(0));
  std::vector<size_t> pos(d, 0);
  for (;;) {
    for (int i = 0; i < d; ++i) v[i] = farey[pos[i]];
    long long s = streak(v);
    if (s >= r_max) {
      report.degenerate.push_back({v, s, true});
    } else if (s > report.max_r || report.attaining.empty()) {
      report.max_r = s;
      report.attaining = v;
    }
    int carry = 0;
    while (carry < d) {
      if (++pos[carry] < farey.size()) break;
      pos[carry] = 0;
      ++carry;
    }
    if (carry == d) break;
  }
  return report;
}

bool g_weight_lemma_check(const WeightSystem& ws, const SeriesSupport& s,
                          const BetaWitness& witness) {
  const long long r = ws.r;
  if (s.type != SeriesType::cDE)
    throw std::domain_error("g-weight check: support must be cDE type");
  if (mod_norm(ws.a[0], r) != 0 || mod_norm(ws.e, r) != 0 ||
      mod_norm(ws.a[3] - 1, r) != 0 || mod_norm(ws.a[1] + ws.a[2], r) != 0 ||
      std::gcd(ws.a[1], r) != 1)
    throw std::domain_error("g-weight check: weight system is not of shape (0, a, -a, 1; 0)");
  if (witness.k >= 2 && !witness.beta.has_value())
    throw std::domain_error("g-weight check: witness with k >= 2 has no beta");

  const long long beta_class = witness.beta ? witness.beta->class_index : 0;
  std::vector<Monomial> g = g_part(s);
  for (long long j = 1; j < r; ++j) {
    bool qualifies = true;
    for (long long t = 1; t < witness.k && qualifies; ++t)
      if (mod_norm(j - t * beta_class, r) == 0) qualifies = false;
    if (!qualifies) continue;
    long long best = -1;  // min over g of <m, alpha_j> scaled by r
    for (const auto& m : g) {
      long long v = 0;
      for (int i = 0; i < 4; ++i) v += m.exp[i] * mod_norm(j * ws.a[i], r);
      if (best < 0 || v < best) best = v;
    }
    if (best != r) return false;
  }
  return true;
}

}  // namespace enccdv
