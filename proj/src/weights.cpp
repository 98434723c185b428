#include "enccdv/weights.hpp"

#include <algorithm>
#include <numeric>

namespace enccdv {

namespace {

long long mod_norm(long long x, long long r) {
  long long m = x % r;
  return m < 0 ? m + r : m;
}

long long gcd3(long long a, long long b, long long c) {
  return std::gcd(std::gcd(a, b), c);
}

}  // namespace

Rational l1_norm(const Vec4& v) { return v[0] + v[1] + v[2] + v[3]; }

Vec4 operator+(const Vec4& x, const Vec4& y) {
  return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]};
}

bool operator==(const WeightSystem& x, const WeightSystem& y) {
  return x.r == y.r && x.a == y.a && x.e == y.e;
}

std::optional<std::string> weight_system_violation(long long r,
                                                   const std::array<long long, 4>& a,
                                                   long long e) {
  if (r < 1) return "order r must be positive";
  long long ge = std::gcd(e, r);  // gcd(0, r) = r
  for (int i = 0; i < 4; ++i) {
    if (ge % std::gcd(a[i], r) != 0)
      return "gcd(a" + std::to_string(i + 1) + ", r) does not divide gcd(e, r)";
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (gcd3(a[i], a[j], r) != 1)
        return "gcd(a" + std::to_string(i + 1) + ", a" + std::to_string(j + 1) +
               ", r) != 1";
  if (mod_norm(a[0] + a[1] + a[2] + a[3] - e - 1, r) != 0)
    return "a1+a2+a3+a4-e is not 1 (mod r)";
  return std::nullopt;
}

WeightSystem make_weight_system(long long r, std::array<long long, 4> a, long long e) {
  if (r < 1) throw std::invalid_argument("order r must be positive");
  for (auto& x : a) x = mod_norm(x, r);
  e = mod_norm(e, r);
  if (auto why = weight_system_violation(r, a, e))
    throw std::invalid_argument("invalid weight system: " + *why);
  return WeightSystem{r, a, e};
}

WeightSystem permute(const WeightSystem& ws, const std::array<int, 4>& perm) {
  WeightSystem out = ws;
  for (int i = 0; i < 4; ++i) out.a[i] = ws.a[perm[i]];
  return out;
}

bool operator==(const Weight& x, const Weight& y) {
  return x.class_index == y.class_index && x.coords == y.coords;
}

bool weight_less(const Weight& x, const Weight& y) {
  if (x.class_index != y.class_index) return x.class_index < y.class_index;
  return x.coords < y.coords;
}

Weight make_weight(const WeightSystem& ws, const Vec4& coords) {
  long long found = -1;
  for (int i = 0; i < 4; ++i) {
    if (coords[i] < Rational(0)) throw std::invalid_argument("negative weight coordinate");
    if (ws.r % coords[i].den != 0)
      throw std::invalid_argument("weight denominator does not divide r");
  }
  // Scaled numerators mod r determine the class.
  std::array<long long, 4> num{};
  for (int i = 0; i < 4; ++i) num[i] = mod_norm(coords[i].num * (ws.r / coords[i].den), ws.r);
  for (long long j = 0; j < ws.r; ++j) {
    bool match = true;
    for (int i = 0; i < 4 && match; ++i)
      if (mod_norm(j * ws.a[i], ws.r) != num[i]) match = false;
    if (match) {
      if (found >= 0)
        throw std::invalid_argument("weight matches more than one class index");
      found = j;
    }
  }
  if (found < 0) throw std::invalid_argument("weight coordinates match no class");
  return Weight{coords, found};
}

Weight alpha(const WeightSystem& ws, long long j) {
  if (j < 1 || j >= ws.r) throw std::domain_error("alpha: j out of range [1, r-1]");
  Vec4 c;
  for (int i = 0; i < 4; ++i) c[i] = Rational(mod_norm(j * ws.a[i], ws.r), ws.r);
  return Weight{c, j};
}

Weight complement(const WeightSystem& ws, const Weight& w) {
  Vec4 c;
  for (int i = 0; i < 4; ++i) {
    if (w.coords[i] > Rational(1))
      throw std::domain_error("complement: coordinate exceeds 1");
    c[i] = Rational(1) - w.coords[i];
  }
  return Weight{c, mod_norm(-w.class_index, ws.r)};
}

Weight scale(const WeightSystem& ws, const Weight& w, long long t) {
  if (t < 1) throw std::domain_error("scale: t must be >= 1");
  Vec4 c;
  for (int i = 0; i < 4; ++i) c[i] = w.coords[i] * Rational(t);
  return Weight{c, mod_norm(w.class_index * t, ws.r)};
}

std::vector<Weight> enumerate_N0(const WeightSystem& ws) {
  std::vector<Weight> out;
  for (long long j = 1; j < ws.r; ++j) {
    Weight base = alpha(ws, j);
    std::vector<int> zeros;
    for (int i = 0; i < 4; ++i)
      if (base.coords[i].is_zero()) zeros.push_back(i);
    for (unsigned mask = 0; mask < (1u << zeros.size()); ++mask) {
      Weight w = base;
      for (size_t bit = 0; bit < zeros.size(); ++bit)
        if (mask & (1u << bit)) w.coords[zeros[bit]] = Rational(1);
      bool all_integral = true;
      for (int i = 0; i < 4; ++i)
        if (!w.coords[i].is_integer()) all_integral = false;
      if (!all_integral) out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end(), weight_less);
  return out;
}

bool is_primitive(const WeightSystem& ws, const Weight& w) {
  // Numerator vector over the common denominator r.
  std::array<long long, 4> v{};
  long long content = 0;
  for (int i = 0; i < 4; ++i) {
    v[i] = w.coords[i].num * (ws.r / w.coords[i].den);
    content = std::gcd(content, v[i]);
  }
  if (content == 0) return false;  // zero vector is not in N
  for (long long t = 2; t <= content; ++t) {
    if (content % t != 0) continue;
    // Is v/t congruent to m*(a1..a4) mod r for some class m?
    for (long long m = 0; m < ws.r; ++m) {
      bool match = true;
      for (int i = 0; i < 4 && match; ++i)
        if (mod_norm(v[i] / t - m * ws.a[i], ws.r) != 0) match = false;
      if (match) return false;
    }
  }
  return true;
}

PsiSets psi_sets(const WeightSystem& ws, const Weight& beta, long long k) {
  if (k < 1) throw std::domain_error("psi_sets: k must be >= 1");
  PsiSets psi;
  psi.k = k;
  for (long long t = 1; t < k; ++t) {
    Weight m = scale(ws, beta, t);
    bool in_range = true;
    for (int i = 0; i < 4; ++i)
      if (m.coords[i] > Rational(1)) in_range = false;
    psi.psi1.push_back(m);
    if (in_range) psi.psi2.push_back(complement(ws, m));
  }
  return psi;
}

bool psi_contains(const PsiSets& psi, const Weight& w) {
  for (const auto& p : psi.psi1)
    if (p == w) return true;
  for (const auto& p : psi.psi2)
    if (p == w) return true;
  return false;
}

}  // namespace enccdv
