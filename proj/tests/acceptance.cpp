// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "enccdv/json_io.hpp"
#include "helpers.hpp"

using namespace enccdv;
using namespace enccdv::testing;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << idx << ": " << name << " ("
            << detail << ") [" << seconds << "s]\n";
  if (!pass) ++failures;
}

template <typename Fn>
void timed(int idx, const std::string& name, Fn&& fn) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = fn(detail);
  } catch (const std::exception& ex) {
    detail = std::string("exception: ") + ex.what();
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(idx, name, pass, detail, seconds);
}

bool criterion1(std::string& detail) {
  TerminalScanResult res = terminal_scan(30, 0);
  detail = std::to_string(res.hypothesis_tuples) + " hypothesis tuples, " +
           std::to_string(res.counterexamples.size()) + " counterexamples";
  return res.counterexamples.empty();
}

bool criterion2(std::string& detail) {
  SingularityInput in;
  in.r = 5;
  in.a = {3, 1, 2, 4};
  in.e = 4;
  in.type = SeriesType::cA;
  in.g = {mono(0, 0, 2, 0), mono(0, 0, 0, 6)};
  Verdict v = classify(in);
  bool ok = v.summary == Summary::EncCandidate && v.witness && v.witness->k == 2;
  // beta must be exactly (2, 4, 3, 1)/5, the b = 4 instance of the
  // cA-C class formula (r-b+1, b, b-1, 1)/r
  ok = ok && v.witness->beta &&
       v.witness->beta->coords == vec4(Q(2, 5), Q(4, 5), Q(3, 5), Q(1, 5));
  ok = ok && v.structure && v.structure->all_pass();
  bool family_ok = !v.normal_forms.empty() && v.normal_forms[0].family == Family::cA_C &&
                   v.normal_forms[0].a_param == 3;
  ok = ok && family_ok;
  detail = ok ? "k = 2, beta = (2/5, 4/5, 3/5, 1/5), cA-C(a = 3), conditions 1-5 pass"
              : "mismatch";
  return ok;
}

bool criterion3(std::string& detail) {
  SingularityInput in;
  in.r = 2;
  in.a = {1, 1, 0, 1};
  in.e = 0;
  in.type = SeriesType::cA;
  in.g = {mono(0, 0, 2, 0), mono(0, 0, 0, 2)};
  Verdict v = classify(in);
  bool ok = v.summary == Summary::TerminalLike && v.witness && v.witness->k == 1 &&
            !v.witness->beta && v.witness->evidence.points.empty();
  // independent minimum: diff over all classes and shifts in [0, 5]^4
  Rational min_diff(1000);
  WeightSystem ws = make_weight_system(in.r, in.a, in.e);
  SeriesSupport s = make_series(ws, in.type, in.g);
  for (long long j = 1; j < ws.r; ++j) {
    Vec4 base = alpha(ws, j).coords;
    for (int c1 = 0; c1 <= 5; ++c1)
      for (int c2 = 0; c2 <= 5; ++c2)
        for (int c3 = 0; c3 <= 5; ++c3)
          for (int c4 = 0; c4 <= 5; ++c4) {
            Vec4 w = base;
            w[0] += Q(c1);
            w[1] += Q(c2);
            w[2] += Q(c3);
            w[3] += Q(c4);
            Rational d = diff(w, s);
            if (d < min_diff) min_diff = d;
          }
  }
  ok = ok && min_diff == Q(3, 2);
  detail = "k = 1, empty sublevel set, minimum diff " + to_string(min_diff);
  return ok;
}

bool criterion4(std::string& detail) {
  std::ostringstream log;
  VerifyCaps caps;
  caps.r_max = 12;
  caps.d_max = 6;
  caps.s_max = 2;
  caps.workers = 0;
  int status = verify_all("sublevel-oracle", caps, log);
  std::string line = log.str();
  if (!line.empty() && line.back() == '\n') line.pop_back();
  detail = line;
  return status == 0;
}

bool criterion5(std::string& detail) {
  VerifyCaps caps;
  caps.r_max = 25;
  caps.k_max = 3;
  caps.d_max = 8;
  caps.s_max = 3;
  caps.workers = 0;
  std::ostringstream log;
  int a = verify_all("structure-cA", caps, log);
  int b = verify_all("structure-nonCA", caps, log);
  int c = verify_all("g-weight", caps, log);
  std::string all = log.str();
  std::string tail;
  for (const auto& needle : {"structure-cA:", "structure-nonCA:", "g-weight:"}) {
    size_t pos = all.find(needle);
    if (pos != std::string::npos) {
      size_t end = all.find('\n', pos);
      tail += (tail.empty() ? "" : "; ") + all.substr(pos, end - pos);
    }
  }
  detail = tail;
  return a == 0 && b == 0 && c == 0;
}

bool criterion6(std::string& detail) {
  if (!nc_hypothesis(4, 1, {1, 1, 1, 1}, 3, Q(1, 2))) {
    detail = "witness (r=4, k0=1, a=(1,1,1,1), e=3) rejected";
    return false;
  }
  bool has4 = false;
  for (const auto& row : nc_gamma0_scan(Q(1, 2), 4, 0))
    if (row.value == 4) has4 = true;
  if (!has4) {
    detail = "delta = 1/2 scan is missing the value 4";
    return false;
  }
  auto emit = [](const std::vector<NcScanRow>& rows) {
    std::ostringstream os;
    for (const auto& row : rows) {
      os << row.value << "," << row.count << "," << row.r << "," << row.k0;
      for (int i = 0; i < 4; ++i) os << "," << row.a[i];
      os << "," << row.e << "\n";
    }
    return os.str();
  };
  std::string first = emit(nc_gamma0_scan(Q(1, 14), 40, 1));
  std::string second = emit(nc_gamma0_scan(Q(1, 14), 40, 2));
  if (first != second) {
    detail = "delta = 1/14 scans differ across worker counts";
    return false;
  }
  size_t rows = static_cast<size_t>(std::count(first.begin(), first.end(), '\n'));
  detail = "witness ok; delta = 1/14, r <= 40 scan byte-identical (" +
           std::to_string(rows) + " rows)";
  return true;
}

bool criterion7(std::string& detail) {
  std::mt19937_64 rng(101);
  long long done_involution = 0, done_sum = 0, done_convex = 0, done_prune = 0;

  // complement involution and alpha_j + alpha_{r-j}.
  while (done_involution < 10000) {
    WeightSystem ws = random_weight_system(rng, 24);
    for (const Weight& w : enumerate_N0(ws)) {
      if (!(complement(ws, complement(ws, w)) == w)) {
        detail = "complement involution failed";
        return false;
      }
      ++done_involution;
    }
  }
  while (done_sum < 10000) {
    WeightSystem ws = random_weight_system(rng, 30);
    if (ws.r < 2) continue;
    long long j = std::uniform_int_distribution<long long>(1, ws.r - 1)(rng);
    Vec4 sum = alpha(ws, j).coords + alpha(ws, ws.r - j).coords;
    for (const auto& c : sum)
      if (!(c == Q(0) || c == Q(1))) {
        detail = "fractional-part pairing failed";
        return false;
      }
    ++done_sum;
  }

  // convexity of diff at lattice midpoints and domination pruning.
  std::vector<FamilyInstance> pool;
  while (pool.size() < 64) {
    auto inst = random_family_instance(rng, 12, 6);
    if (inst) pool.push_back(*inst);
  }
  while (done_convex < 10000) {
    const auto& inst = pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)];
    long long j = std::uniform_int_distribution<long long>(1, inst.ws.r - 1)(rng);
    Vec4 u = alpha(inst.ws, j).coords, v = u, m = u;
    for (int i = 0; i < 4; ++i) {
      long long c = std::uniform_int_distribution<long long>(0, 3)(rng);
      long long d = std::uniform_int_distribution<long long>(0, 3)(rng);
      u[i] += Q(c);
      v[i] += Q(c + 2 * d);
      m[i] += Q(c + d);
    }
    if (diff(u, inst.support) + diff(v, inst.support) < Q(2) * diff(m, inst.support)) {
      detail = "midpoint convexity failed";
      return false;
    }
    ++done_convex;
  }
  while (done_prune < 10000) {
    const auto& inst = pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)];
    SeriesSupport augmented = inst.support;
    for (const auto& m : inst.support.support) {
      Monomial shifted = m;
      for (int i = 0; i < 4; ++i)
        shifted.exp[i] += std::uniform_int_distribution<int>(0, 2)(rng);
      augmented.support.push_back(shifted);
    }
    Vec4 w;
    for (auto& c : w) c = Q(std::uniform_int_distribution<int>(0, 36)(rng), inst.ws.r);
    if (weight_of_f(w, inst.support) != weight_of_f(w, augmented)) {
      detail = "domination pruning changed weight_of_f";
      return false;
    }
    ++done_prune;
  }

  // permutation equivariance of classify.
  std::vector<FamilyInstance> small;
  while (small.size() < 48) {
    auto inst = random_family_instance(rng, 8, 5);
    if (inst) small.push_back(*inst);
  }
  for (long long done_perm = 0; done_perm < 10000; ++done_perm) {
    const auto& inst =
        small[std::uniform_int_distribution<size_t>(0, small.size() - 1)(rng)];
    std::array<int, 4> perm{0, 1, 2, 3};
    if (inst.support.type == SeriesType::cA) {
      const std::array<std::array<int, 4>, 3> cand = {
          {{1, 0, 2, 3}, {0, 1, 3, 2}, {1, 0, 3, 2}}};
      perm = cand[std::uniform_int_distribution<size_t>(0, 2)(rng)];
    } else if (inst.support.type == SeriesType::Odd) {
      perm = {0, 1, 3, 2};
    } else {
      const std::array<std::array<int, 4>, 3> cand = {
          {{0, 2, 1, 3}, {0, 3, 2, 1}, {0, 1, 3, 2}}};
      perm = cand[std::uniform_int_distribution<size_t>(0, 2)(rng)];
    }
    SingularityInput base;
    base.r = inst.ws.r;
    base.a = inst.ws.a;
    base.e = inst.ws.e;
    base.type = inst.support.type;
    base.g = g_part(inst.support);
    SingularityInput permuted = base;
    for (int i = 0; i < 4; ++i) permuted.a[i] = base.a[perm[i]];
    permuted.g.clear();
    for (const auto& m : g_part(permute(inst.support, perm))) permuted.g.push_back(m);

    Verdict x = classify(base);
    Verdict y = classify(permuted);
    bool same = x.summary == y.summary;
    if (same && x.witness && y.witness) {
      same = x.witness->k == y.witness->k &&
             x.witness->beta.has_value() == y.witness->beta.has_value();
      if (same && x.witness->beta)
        for (int i = 0; i < 4; ++i)
          same = same && y.witness->beta->coords[i] == x.witness->beta->coords[perm[i]];
    }
    if (!same) {
      detail = "classify changed under an allowed coordinate swap";
      return false;
    }
  }

  detail = "involution, pairing, convexity, pruning, equivariance: 10^4 cases each";
  return true;
}

}  // namespace

int main() {
  timed(1, "terminal lemma exhaustive to r = 30", criterion1);
  timed(2, "worked example end to end", criterion2);
  timed(3, "k = 1 control", criterion3);
  timed(4, "sublevel oracle equivalence to r = 12", criterion4);
  timed(5, "structure property suite (ten families, r <= 25)", criterion5);
  timed(6, "non-canonical lemma witness and scan determinism", criterion6);
  timed(7, "randomized invariant suites", criterion7);
  if (failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << failures << " acceptance criteria failed\n";
  return 1;
}
