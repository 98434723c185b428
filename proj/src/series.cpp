#include "enccdv/series.hpp"

#include <algorithm>
#include <numeric>

namespace enccdv {

namespace {

long long mod_norm(long long x, long long r) {
  long long m = x % r;
  return m < 0 ? m + r : m;
}

long long residue_weight(const WeightSystem& ws, const Monomial& m) {
  long long s = 0;
  for (int i = 0; i < 4; ++i) s += m.exp[i] * ws.a[i];
  return mod_norm(s, ws.r);
}

std::vector<Monomial> distinguished(SeriesType type) {
  switch (type) {
    case SeriesType::cA: return {Monomial{{1, 1, 0, 0}}};
    case SeriesType::Odd: return {Monomial{{2, 0, 0, 0}}, Monomial{{0, 2, 0, 0}}};
    case SeriesType::cDE: return {Monomial{{2, 0, 0, 0}}};
  }
  return {};
}

// Variables g may involve and its minimum degree.
struct GShape {
  std::array<bool, 4> vars;
  int min_degree;
};

GShape g_shape(SeriesType type) {
  switch (type) {
    case SeriesType::cA: return {{false, false, true, true}, 2};
    case SeriesType::Odd: return {{false, false, true, true}, 3};
    case SeriesType::cDE: return {{false, true, true, true}, 3};
  }
  return {{false, false, false, false}, 0};
}

}  // namespace

const char* to_string(SeriesType t) {
  switch (t) {
    case SeriesType::cA: return "cA";
    case SeriesType::Odd: return "odd";
    case SeriesType::cDE: return "cDE";
  }
  return "?";
}

std::optional<SeriesType> series_type_from_string(std::string_view s) {
  if (s == "cA") return SeriesType::cA;
  if (s == "odd" || s == "Odd") return SeriesType::Odd;
  if (s == "cDE") return SeriesType::cDE;
  return std::nullopt;
}

bool operator==(const Monomial& x, const Monomial& y) { return x.exp == y.exp; }
bool operator<(const Monomial& x, const Monomial& y) { return x.exp < y.exp; }

bool dominates(const Monomial& x, const Monomial& y) {
  for (int i = 0; i < 4; ++i)
    if (x.exp[i] < y.exp[i]) return false;
  return true;
}

bool operator==(const SeriesSupport& x, const SeriesSupport& y) {
  return x.type == y.type && x.support == y.support;
}

std::optional<std::string> series_violation(const WeightSystem& ws, SeriesType type,
                                            const std::vector<Monomial>& g) {
  const GShape shape = g_shape(type);
  if (g.empty()) return "g must contain at least one monomial";
  for (const auto& m : g) {
    for (int i = 0; i < 4; ++i) {
      if (m.exp[i] < 0) return "negative exponent";
      if (m.exp[i] > 0 && !shape.vars[i])
        return std::string("g-monomial involves x") + std::to_string(i + 1) +
               " which is not allowed for type " + to_string(type);
    }
    if (m.degree() < shape.min_degree)
      return "g-monomial of degree " + std::to_string(m.degree()) +
             " below the minimum " + std::to_string(shape.min_degree);
    if (residue_weight(ws, m) != mod_norm(ws.e, ws.r))
      return "g-monomial is not semi-invariant (residue weight != e mod r)";
  }
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j)
      if (i != j && dominates(g[i], g[j]))
        return "support is not a domination antichain";
  for (const auto& d : distinguished(type))
    if (residue_weight(ws, d) != mod_norm(ws.e, ws.r))
      return std::string("distinguished monomial of type ") + to_string(type) +
             " is not semi-invariant";
  if (type == SeriesType::Odd && mod_norm(ws.a[0] - ws.a[1], ws.r) == 0)
    return "odd type requires a1 != a2 (mod r)";
  return std::nullopt;
}

bool excluded_cA_tuple(const WeightSystem& ws) {
  const long long r = ws.r;
  return mod_norm(ws.a[3], r) == 0 && mod_norm(ws.e, r) == 0 &&
         mod_norm(ws.a[2] - 1, r) == 0 && mod_norm(ws.a[0] + ws.a[1], r) == 0 &&
         std::gcd(ws.a[0], r) == 1;
}

SeriesSupport make_series(const WeightSystem& ws, SeriesType type,
                          std::vector<Monomial> g) {
  // Tolerate distinguished monomials listed in the input.
  auto dist = distinguished(type);
  g.erase(std::remove_if(g.begin(), g.end(),
                         [&](const Monomial& m) {
                           return std::find(dist.begin(), dist.end(), m) != dist.end();
                         }),
          g.end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  if (auto why = series_violation(ws, type, g))
    throw std::invalid_argument("invalid series support: " + *why);
  SeriesSupport s;
  s.type = type;
  s.support = std::move(dist);
  s.support.insert(s.support.end(), g.begin(), g.end());
  std::sort(s.support.begin(), s.support.end());
  return s;
}

std::vector<Monomial> g_part(const SeriesSupport& s) {
  auto dist = distinguished(s.type);
  std::vector<Monomial> g;
  for (const auto& m : s.support)
    if (std::find(dist.begin(), dist.end(), m) == dist.end()) g.push_back(m);
  return g;
}

SeriesSupport permute(const SeriesSupport& s, const std::array<int, 4>& perm) {
  SeriesSupport out;
  out.type = s.type;
  out.support.reserve(s.support.size());
  for (const auto& m : s.support) {
    Monomial p;
    for (int i = 0; i < 4; ++i) p.exp[i] = m.exp[perm[i]];
    out.support.push_back(p);
  }
  std::sort(out.support.begin(), out.support.end());
  return out;
}

Rational weight_of_monomial(const Vec4& w, const Monomial& m) {
  Rational total(0);
  for (int i = 0; i < 4; ++i)
    if (m.exp[i] != 0) total += w[i] * Rational(m.exp[i]);
  return total;
}

Rational weight_of_f(const Vec4& w, const SeriesSupport& s) {
  if (s.support.empty()) throw std::domain_error("weight_of_f: empty support");
  Rational best = weight_of_monomial(w, s.support[0]);
  for (size_t i = 1; i < s.support.size(); ++i) {
    Rational v = weight_of_monomial(w, s.support[i]);
    if (v < best) best = v;
  }
  return best;
}

std::vector<Monomial> semiinvariant_candidates(const WeightSystem& ws, SeriesType type,
                                               int max_degree) {
  if (max_degree < 2) throw std::domain_error("semiinvariant monomials: maxDegree < 2");
  const GShape shape = g_shape(type);
  const long long target = mod_norm(ws.e, ws.r);
  std::vector<int> vars;
  for (int i = 0; i < 4; ++i)
    if (shape.vars[i]) vars.push_back(i);
  std::vector<Monomial> out;
  // Enumerate exponent tuples over the allowed variables.
  std::vector<int> exp(vars.size(), 0);
  auto emit = [&]() {
    Monomial m;
    for (size_t v = 0; v < vars.size(); ++v) m.exp[vars[v]] = exp[v];
    int deg = m.degree();
    if (deg < shape.min_degree || deg > max_degree) return;
    if (residue_weight(ws, m) == target) out.push_back(m);
  };
  size_t n = vars.size();
  // Odometer over exp with sum <= max_degree.
  for (;;) {
    emit();
    size_t pos = 0;
    while (pos < n) {
      ++exp[pos];
      int sum = 0;
      for (int x : exp) sum += x;
      if (sum <= max_degree) break;
      exp[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> semiinvariant_monomials(const WeightSystem& ws, SeriesType type,
                                              int max_degree) {
  std::vector<Monomial> pool = semiinvariant_candidates(ws, type, max_degree);
  std::vector<Monomial> minimal;
  for (const auto& m : pool) {
    bool is_min = true;
    for (const auto& other : pool)
      if (!(other == m) && dominates(m, other)) {
        is_min = false;
        break;
      }
    if (is_min) minimal.push_back(m);
  }
  return minimal;
}

}  // namespace enccdv
