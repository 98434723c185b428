#include "enccdv/structure.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace enccdv {

namespace {

long long mod_norm(long long x, long long r) {
  long long m = x % r;
  return m < 0 ? m + r : m;
}

std::string coords_str(const Vec4& v) {
  std::ostringstream os;
  os << "(" << to_string(v[0]) << ", " << to_string(v[1]) << ", " << to_string(v[2])
     << ", " << to_string(v[3]) << ")";
  return os.str();
}

Rational frac_of(const WeightSystem& ws, long long j, int i) {
  return Rational(mod_norm(j * ws.a[i], ws.r), ws.r);
}

Rational frac_e(const WeightSystem& ws, long long j) {
  return Rational(mod_norm(j * ws.e, ws.r), ws.r);
}

// Everything the condition evaluators need under one coordinate order.
struct Ctx {
  WeightSystem ws;
  SeriesSupport s;
  long long k = 1;
  std::optional<Weight> beta;
  PsiSets psi;
  std::vector<Weight> n0;
};

Ctx make_ctx(const WeightSystem& ws, const SeriesSupport& s, const BetaWitness& witness,
             const std::array<int, 4>& perm) {
  Ctx c;
  c.ws = permute(ws, perm);
  c.s = permute(s, perm);
  c.k = witness.k;
  if (witness.beta) {
    Vec4 pc;
    for (int i = 0; i < 4; ++i) pc[i] = witness.beta->coords[perm[i]];
    c.beta = Weight{pc, witness.beta->class_index};
    c.psi = psi_sets(c.ws, *c.beta, c.k);
  } else {
    c.psi.k = c.k;
  }
  c.n0 = enumerate_N0(c.ws);
  return c;
}

bool beta_in_N0(const std::optional<Weight>& beta) {
  if (!beta) return false;
  bool some_fractional = false;
  for (int i = 0; i < 4; ++i) {
    if (beta->coords[i] > Rational(1)) return false;
    if (!beta->coords[i].is_integer()) some_fractional = true;
  }
  return some_fractional;
}

ConditionResult check_cA_cond1(const Ctx& c) {
  const Rational one(1);
  long long direct = 0, complemented = 0;
  for (const Weight& a : c.n0) {
    if (psi_contains(c.psi, a)) continue;
    bool ok = false;
    for (int pick = 0; pick < 2 && !ok; ++pick) {
      Weight w = pick == 0 ? a : complement(c.ws, a);
      Weight wc = complement(c.ws, w);
      Rational w12 = w.coords[0] + w.coords[1];
      Rational wc12 = wc.coords[0] + wc.coords[1];
      bool pass = weight_of_f(w.coords, c.s) == w12 && w12 <= one &&
                  weight_of_f(wc.coords, c.s) == wc12 - one;
      pass = pass && w.coords[2] + w.coords[3] > one && wc.coords[2] + wc.coords[3] < one;
      pass = pass && ((w12 == one) == (wc12 == one));
      if (pass && w12 == one)
        pass = (w.coords[2] == one || w.coords[3] == one) &&
               (wc.coords[2].is_zero() || wc.coords[3].is_zero());
      if (pass) (pick == 0 ? direct : complemented) += 1;
      ok = pass;
    }
    if (!ok) return {false, "no w in {alpha, alpha'} works for alpha = " +
                                coords_str(a.coords)};
  }
  return {true, "w = alpha for " + std::to_string(direct) + ", w = alpha' for " +
                    std::to_string(complemented)};
}

ConditionResult check_cA_cond2(const Ctx& c) {
  const Rational one(1);
  std::string matched;
  for (long long j = 1; j < c.ws.r; ++j) {
    Weight aj = alpha(c.ws, j);
    if (psi_contains(c.psi, aj)) continue;
    Rational s12 = aj.coords[0] + aj.coords[1];
    Rational s34 = aj.coords[2] + aj.coords[3];
    Rational je = frac_e(c.ws, j);
    Rational jr(j, c.ws.r);
    bool bullet1 = s12 == je && s34 == jr + one;
    bool bullet2 = s12 == je + one && s34 == jr;
    if (!bullet1 && !bullet2)
      return {false, "neither alternative holds at j = " + std::to_string(j)};
    if (!matched.empty()) matched += " ";
    matched += "j" + std::to_string(j) + (bullet1 ? ":b1" : ":b2");
  }
  return {true, matched};
}

ConditionResult check_gcd_pattern(const Ctx& c) {
  for (int i = 0; i < 3; ++i)
    if (std::gcd(c.ws.a[i], c.ws.r) != 1)
      return {false, "gcd(a" + std::to_string(i + 1) + ", r) != 1"};
  if (std::gcd(c.ws.a[3], c.ws.r) != std::gcd(c.ws.e, c.ws.r))
    return {false, "gcd(a4, r) != gcd(e, r)"};
  return {true, ""};
}

ConditionResult check_terminal_identity(const Ctx& c) {
  for (long long j = 1; j < c.ws.r; ++j) {
    Rational lhs(0);
    for (int i = 0; i < 4; ++i) lhs += frac_of(c.ws, j, i);
    if (lhs != frac_e(c.ws, j) + Rational(j, c.ws.r) + Rational(1))
      return {false, "identity fails at j = " + std::to_string(j)};
  }
  return {true, ""};
}

void check_cA_cond4(const Ctx& c, StructureReport& rep) {
  if (!beta_in_N0(c.beta)) {
    rep.conditions.push_back({"4a", {true, "vacuous: beta not in N0"}});
    rep.conditions.push_back({"4b", {true, "vacuous: beta not in N0"}});
    rep.conditions.push_back({"4c", {true, "vacuous: beta not in N0"}});
    return;
  }
  const Weight& beta = *c.beta;
  const long long k0 = beta.class_index;
  const long long k = c.k;
  const Rational one(1);
  Weight ak0 = alpha(c.ws, k0);

  ConditionResult r4a{beta == ak0, ""};
  if (!r4a.pass) r4a.witness = "beta is a lift, not alpha_k0 itself";

  Rational b34 = beta.coords[2] + beta.coords[3];
  Rational ratio(k0, c.ws.r);
  Rational upper = std::min(Rational(13, 14), Rational(1, k - 1));
  ConditionResult r4b{b34 == ratio && Rational(1, k) < ratio && ratio < upper, ""};
  if (!r4b.pass)
    r4b.witness = "beta(x3x4) = " + to_string(b34) + ", k0/r = " + to_string(ratio);
  if (ratio > Rational(12, 13) && ratio < Rational(13, 14))
    rep.flags.push_back("k0/r lies between 12/13 and 13/14");

  Rational b12 = beta.coords[0] + beta.coords[1];
  Rational f12 = frac_of(c.ws, k0, 0) + frac_of(c.ws, k0, 1);
  Rational f34 = frac_of(c.ws, k0, 2) + frac_of(c.ws, k0, 3);
  ConditionResult r4c{
      b12 >= one && f12 == frac_e(c.ws, k0) + one && f34 == ratio, ""};
  if (!r4c.pass) r4c.witness = "x1x2/x3x4 fractional sums fail at k0 = " + std::to_string(k0);

  rep.conditions.push_back({"4a", r4a});
  rep.conditions.push_back({"4b", r4b});
  rep.conditions.push_back({"4c", r4c});
}

StructureReport evaluate_cA(const Ctx& c, const std::array<int, 4>& perm) {
  StructureReport rep;
  rep.is_cA = true;
  rep.permutation = perm;
  rep.conditions.push_back({"1", check_cA_cond1(c)});
  rep.conditions.push_back({"2", check_cA_cond2(c)});
  rep.conditions.push_back({"3", check_gcd_pattern(c)});
  check_cA_cond4(c, rep);
  rep.conditions.push_back({"5", check_terminal_identity(c)});
  return rep;
}

ConditionResult check_nonCA_cond1(const Ctx& c) {
  const Rational one(1);
  const Rational half(1, 2);
  long long direct = 0, complemented = 0;
  for (const Weight& a : c.n0) {
    if (psi_contains(c.psi, a)) continue;
    bool ok = false;
    for (int pick = 0; pick < 2 && !ok; ++pick) {
      Weight w = pick == 0 ? a : complement(c.ws, a);
      Weight wc = complement(c.ws, w);
      Rational w1 = w.coords[0], wc1 = wc.coords[0];
      Rational w234 = w.coords[1] + w.coords[2] + w.coords[3];
      Rational wc234 = wc.coords[1] + wc.coords[2] + wc.coords[3];
      Rational two_w1 = w1 + w1;
      Rational two_wc1 = wc1 + wc1;
      bool pass = weight_of_f(w.coords, c.s) == two_w1 && two_w1 <= one &&
                  weight_of_f(wc.coords, c.s) == two_wc1 - one && two_wc1 - one >= Rational(0);
      pass = pass && w234 > one + w1 && wc234 < one + wc1;
      pass = pass && ((two_w1 == one) == (two_wc1 - one == Rational(0)));
      if (pass && two_w1 == one) {
        pass = c.ws.r % 2 == 0 && wc.class_index == c.ws.r / 2;
        // (w(x_i2), w(x_i3), w(x_i4)) = (1/2, 1/2, 1) up to order; the
        // complement pattern (1/2, 1/2, 0) then follows coordinate-wise.
        int halves = 0, ones = 0;
        for (int i = 1; i < 4; ++i) {
          if (w.coords[i] == half) ++halves;
          if (w.coords[i] == one) ++ones;
        }
        pass = pass && halves == 2 && ones == 1;
      }
      if (pass) (pick == 0 ? direct : complemented) += 1;
      ok = pass;
    }
    if (!ok) return {false, "no w in {alpha, alpha'} works for alpha = " +
                                coords_str(a.coords)};
  }
  return {true, "w = alpha for " + std::to_string(direct) + ", w = alpha' for " +
                    std::to_string(complemented)};
}

ConditionResult check_nonCA_cond2(const Ctx& c) {
  const Rational one(1);
  std::string matched;
  for (long long j = 1; j < c.ws.r; ++j) {
    Weight aj = alpha(c.ws, j);
    if (psi_contains(c.psi, aj)) continue;
    Rational f1 = aj.coords[0];
    Rational s234 = aj.coords[1] + aj.coords[2] + aj.coords[3];
    Rational je = frac_e(c.ws, j);
    Rational jr(j, c.ws.r);
    bool bullet1 = f1 + f1 == je && s234 == f1 + jr + one;
    bool bullet2 = f1 + f1 == je + one && s234 == f1 + jr;
    if (!bullet1 && !bullet2)
      return {false, "neither alternative holds at j = " + std::to_string(j)};
    if (!matched.empty()) matched += " ";
    matched += "j" + std::to_string(j) + (bullet1 ? ":b1" : ":b2");
  }
  return {true, matched};
}

ConditionResult check_nonCA_cond3(const Ctx& c) {
  const long long r = c.ws.r;
  long long g1 = std::gcd(c.ws.a[0], r), g2 = std::gcd(c.ws.a[1], r),
            g3 = std::gcd(c.ws.a[2], r), g4 = std::gcd(c.ws.a[3], r),
            ge = std::gcd(c.ws.e, r);
  bool opt_a = g1 == ge && g1 >= 2 && g2 == 1 && g3 == 1 && g4 == 1;
  bool opt_b = r % 2 == 1 && g1 == 1 && g2 == 1 && g3 == 1 && g4 == 1 && ge == 1;
  bool opt_c = g4 == 2 && ge == 2 && g1 == 1 && g2 == 1 && g3 == 1;
  bool claim_ok = g1 < 2 || g1 == ge;
  std::string note = opt_a   ? "case (a)"
                     : opt_b ? "case (b)"
                     : opt_c ? "case (c)"
                             : "no case matches";
  if (!claim_ok) note += "; gcd(a1, r) >= 2 with gcd(a1, r) != gcd(e, r)";
  return {(opt_a || opt_b || opt_c) && claim_ok, note};
}

void check_nonCA_cond4(const Ctx& c, StructureReport& rep) {
  if (!beta_in_N0(c.beta)) {
    rep.conditions.push_back({"4a", {true, "vacuous: beta not in N0"}});
    rep.conditions.push_back({"4b", {true, "vacuous: beta not in N0"}});
    rep.conditions.push_back({"4c", {true, "vacuous: beta not in N0"}});
    return;
  }
  const Weight& beta = *c.beta;
  const long long k0 = beta.class_index;
  const long long k = c.k;
  const Rational one(1);
  Weight ak0 = alpha(c.ws, k0);

  // Congruence beta = alpha_k0 mod Z^4 is the class-index statement itself.
  rep.conditions.push_back(
      {"4a", {k0 >= 1 && k0 < c.ws.r, "k0 = " + std::to_string(k0)}});

  Rational ratio(k0, c.ws.r);
  Rational upper = std::min(Rational(13, 14), Rational(1, k - 1));
  ConditionResult r4b{Rational(1, k) < ratio && ratio < upper, ""};
  if (!r4b.pass) r4b.witness = "k0/r = " + to_string(ratio);
  if (ratio > Rational(12, 13) && ratio < Rational(13, 14))
    rep.flags.push_back("k0/r lies between 12/13 and 13/14");
  rep.conditions.push_back({"4b", r4b});

  if (!(beta == ak0)) {
    rep.conditions.push_back({"4c", {true, "vacuous: beta is a lift of alpha_k0"}});
    return;
  }
  Rational two_b1 = beta.coords[0] + beta.coords[0];
  Rational f1 = frac_of(c.ws, k0, 0);
  Rational s234 = frac_of(c.ws, k0, 1) + frac_of(c.ws, k0, 2) + frac_of(c.ws, k0, 3);
  ConditionResult r4c{weight_of_f(beta.coords, c.s) == two_b1 && two_b1 >= one &&
                          f1 + f1 == frac_e(c.ws, k0) + one && s234 == f1 + ratio,
                      ""};
  if (!r4c.pass) r4c.witness = "beta(f)/fractional conditions fail at k0 = " + std::to_string(k0);
  rep.conditions.push_back({"4c", r4c});
}

ConditionResult check_nonCA_cond6(const Ctx& c) {
  long long g1 = std::gcd(c.ws.a[0], c.ws.r);
  long long ge = std::gcd(c.ws.e, c.ws.r);
  if (g1 == ge && g1 >= 2 && g1 != c.ws.r)
    return {false, "gcd(a1, r) = gcd(e, r) = " + std::to_string(g1) + " but != r"};
  return {true, g1 == c.ws.r ? "gcd(a1, r) = gcd(e, r) = r" : "vacuous"};
}

StructureReport evaluate_nonCA(const Ctx& c, const std::array<int, 4>& perm) {
  StructureReport rep;
  rep.is_cA = false;
  rep.permutation = perm;
  rep.conditions.push_back({"1", check_nonCA_cond1(c)});
  rep.conditions.push_back({"2", check_nonCA_cond2(c)});
  rep.conditions.push_back({"3", check_nonCA_cond3(c)});
  check_nonCA_cond4(c, rep);
  rep.conditions.push_back({"5", check_terminal_identity(c)});
  rep.conditions.push_back({"6", check_nonCA_cond6(c)});
  return rep;
}

// Identity first, then transpositions, then 3-cycles, each lexicographic.
const std::array<std::array<int, 4>, 2> kCAPerms = {{{0, 1, 2, 3}, {0, 1, 3, 2}}};
const std::array<std::array<int, 4>, 4> kCAMatchPerms = {
    {{0, 1, 2, 3}, {0, 1, 3, 2}, {1, 0, 2, 3}, {1, 0, 3, 2}}};
const std::array<std::array<int, 4>, 6> kNonCAPerms = {{{0, 1, 2, 3},
                                                        {0, 1, 3, 2},
                                                        {0, 2, 1, 3},
                                                        {0, 3, 2, 1},
                                                        {0, 2, 3, 1},
                                                        {0, 3, 1, 2}}};

template <typename Perms, typename Eval>
StructureReport best_permutation(const Perms& perms, Eval&& eval) {
  std::optional<StructureReport> first;
  for (const auto& perm : perms) {
    StructureReport rep = eval(perm);
    if (rep.all_pass()) return rep;
    if (!first) first = std::move(rep);
  }
  return *first;
}

}  // namespace

bool StructureReport::all_pass() const {
  for (const auto& [label, res] : conditions)
    if (!res.pass) return false;
  return true;
}

std::vector<std::string> StructureReport::exceptions() const {
  std::vector<std::string> out;
  for (const auto& [label, res] : conditions)
    if (!res.pass) out.push_back(label);
  return out;
}

const ConditionResult* StructureReport::find(const std::string& label) const {
  for (const auto& [l, res] : conditions)
    if (l == label) return &res;
  return nullptr;
}

StructureReport check_cA_structure(const WeightSystem& ws, const SeriesSupport& s,
                                   const BetaWitness& witness) {
  return best_permutation(kCAPerms, [&](const std::array<int, 4>& perm) {
    return evaluate_cA(make_ctx(ws, s, witness, perm), perm);
  });
}

StructureReport check_nonCA_structure(const WeightSystem& ws, const SeriesSupport& s,
                                      const BetaWitness& witness) {
  return best_permutation(kNonCAPerms, [&](const std::array<int, 4>& perm) {
    return evaluate_nonCA(make_ctx(ws, s, witness, perm), perm);
  });
}

const char* to_string(Family f) {
  switch (f) {
    case Family::cA_C: return "cA-C";
    case Family::cA_D: return "cA-D";
    case Family::cA_B: return "cA-B";
    case Family::Odd: return "odd";
    case Family::cDE_a: return "cDE-a";
    case Family::cDE_b: return "cDE-b";
    case Family::cDE_c: return "cDE-c";
    case Family::cDE_d: return "cDE-d";
    case Family::cDE_e: return "cDE-e";
    case Family::cDE_f: return "cDE-f";
  }
  return "?";
}

std::optional<Family> family_from_string(std::string_view s) {
  for (Family f : all_families())
    if (s == to_string(f)) return f;
  if (s == "Odd") return Family::Odd;
  return std::nullopt;
}

SeriesType family_series_type(Family f) {
  switch (f) {
    case Family::cA_C:
    case Family::cA_D:
    case Family::cA_B: return SeriesType::cA;
    case Family::Odd: return SeriesType::Odd;
    default: return SeriesType::cDE;
  }
}

bool family_has_param(Family f) { return f != Family::Odd; }

const std::array<Family, 10>& all_families() {
  static const std::array<Family, 10> fams = {
      Family::cA_C, Family::cA_D, Family::cA_B, Family::Odd,  Family::cDE_a,
      Family::cDE_b, Family::cDE_c, Family::cDE_d, Family::cDE_e, Family::cDE_f};
  return fams;
}

bool operator==(const NormalForm& x, const NormalForm& y) {
  return x.family == y.family && x.a_param == y.a_param && x.permutation == y.permutation;
}

std::optional<std::array<long long, 5>> family_defining_tuple(Family f, long long r,
                                                              long long a,
                                                              bool include_overlap) {
  auto coprime = [&](long long x) { return std::gcd(mod_norm(x, r), r) == 1; };
  switch (f) {
    case Family::cA_C:
      if (!coprime(a) || !coprime(a + 1)) return std::nullopt;
      return std::array<long long, 5>{a, 1, -a, a + 1, a + 1};
    case Family::cA_D:
      if (!coprime(a) || !coprime(a + 1)) return std::nullopt;
      return std::array<long long, 5>{a, -a - 1, -a, a + 1, -1};
    case Family::cA_B:
      if (!coprime(a)) return std::nullopt;
      if (!include_overlap && std::gcd(mod_norm(a + 1, r), r) == 1) return std::nullopt;
      return std::array<long long, 5>{1, a, -a, a + 1, a + 1};
    case Family::Odd:
      if (r % 4 != 0) return std::nullopt;
      return std::array<long long, 5>{1, r / 2 + 1, r / 2 - 1, 2, 2};
    case Family::cDE_a:
      if (!coprime(a)) return std::nullopt;
      return std::array<long long, 5>{0, a, -a, 1, 0};
    case Family::cDE_b:
      if (!coprime(a) || r % 2 != 0) return std::nullopt;
      return std::array<long long, 5>{a, -a, 1, 2 * a, 2 * a};
    case Family::cDE_c:
      if (!coprime(a) || r % 2 != 0) return std::nullopt;
      return std::array<long long, 5>{1, a, -a, 2, 2};
    case Family::cDE_d:
      if (!coprime(a) || r % 2 == 0) return std::nullopt;
      return std::array<long long, 5>{(r - 1) / 2, (r + 1) / 2, a, -a, -1};
    case Family::cDE_e:
      if (!coprime(a) || r % 2 == 0) return std::nullopt;
      return std::array<long long, 5>{a, -a, 2 * a, 1, 2 * a};
    case Family::cDE_f:
      if (!coprime(a) || r % 2 == 0) return std::nullopt;
      return std::array<long long, 5>{1, a, -a, 2, 2};
  }
  return std::nullopt;
}

std::vector<NormalForm> match_normal_form(const WeightSystem& ws, SeriesType type) {
  std::vector<NormalForm> out;
  const long long r = ws.r;
  std::vector<Family> fams;
  for (Family f : all_families())
    if (family_series_type(f) == type) fams.push_back(f);

  auto try_perm = [&](Family f, const std::array<int, 4>& perm) {
    WeightSystem p = permute(ws, perm);
    long long a_lo = family_has_param(f) ? 1 : 0;
    long long a_hi = family_has_param(f) ? r - 1 : 0;
    for (long long a = a_lo; a <= a_hi; ++a) {
      auto tuple = family_defining_tuple(f, r, a, false);
      if (!tuple) continue;
      bool match = mod_norm((*tuple)[4] - p.e, r) == 0;
      for (int i = 0; i < 4 && match; ++i)
        if (mod_norm((*tuple)[i] - p.a[i], r) != 0) match = false;
      if (match) out.push_back(NormalForm{f, a, perm});
    }
  };

  if (type == SeriesType::cA) {
    for (Family f : fams)
      for (const auto& perm : kCAMatchPerms) try_perm(f, perm);
  } else {
    for (Family f : fams)
      for (const auto& perm : kNonCAPerms) try_perm(f, perm);
  }
  return out;
}

}  // namespace enccdv
