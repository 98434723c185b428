#include "enccdv/valuation.hpp"

#include <algorithm>

namespace enccdv {

namespace {

long long mod_norm(long long x, long long r) {
  long long m = x % r;
  return m < 0 ? m + r : m;
}

// Determinant of the leading n x n block by fraction-free (Bareiss)
// elimination.  Entries here are monomial exponents and +-1, so minors stay
// far below the int64 range.
long long det_n(std::array<std::array<long long, 5>, 5> m, int n) {
  long long prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

struct ScaledSupport {
  std::vector<std::array<long long, 4>> mons;
  int max_degree = 0;
};

ScaledSupport scale_support(const SeriesSupport& s) {
  ScaledSupport out;
  out.mons.reserve(s.support.size());
  for (const auto& m : s.support) {
    out.mons.push_back({m.exp[0], m.exp[1], m.exp[2], m.exp[3]});
    out.max_degree = std::max(out.max_degree, m.degree());
  }
  return out;
}

// diff * r on the integer vector u = r * w.
long long diff_scaled(const std::array<long long, 4>& u, const ScaledSupport& s) {
  long long total = u[0] + u[1] + u[2] + u[3];
  long long best = 0;
  bool first = true;
  for (const auto& m : s.mons) {
    long long v = m[0] * u[0] + m[1] * u[1] + m[2] * u[2] + m[3] * u[3];
    if (first || v < best) {
      best = v;
      first = false;
    }
  }
  return total - best;
}

Weight weight_from_scaled(const WeightSystem& ws, long long j,
                          const std::array<long long, 4>& u) {
  Vec4 c;
  for (int i = 0; i < 4; ++i) c[i] = Rational(u[i], ws.r);
  return Weight{c, j};
}

// Component-wise maxima of the sublevel polytope
//   P = {w >= 0 : sum_i (1 - m_i) w_i <= 1 for every support monomial},
// which is exactly {w >= 0 : diff(w) <= 1}.  Requires P bounded (V* < 1);
// each coordinate maximum is then attained at a vertex, and the vertices are
// the feasible solutions of four tight constraints.
Vec4 sublevel_box(const SeriesSupport& s) {
  const size_t n = s.support.size();
  const size_t total = 4 + n;
  auto row_of = [&](size_t c, std::array<long long, 4>& row, long long& rhs) {
    row = {};
    if (c < 4) {
      row[c] = 1;  // w_i >= 0, stored as tight w_i = 0
      rhs = 0;
    } else {
      const Monomial& m = s.support[c - 4];
      for (int i = 0; i < 4; ++i) row[i] = 1 - m.exp[i];
      rhs = 1;
    }
  };
  Vec4 box{Rational(0), Rational(0), Rational(0), Rational(0)};
  std::array<size_t, 4> pick{};
  auto consider = [&]() {
    std::array<std::array<long long, 5>, 5> sys{};
    std::array<long long, 4> rhs{};
    for (int i = 0; i < 4; ++i) {
      std::array<long long, 4> row{};
      row_of(pick[i], row, rhs[i]);
      for (int cidx = 0; cidx < 4; ++cidx) sys[i][cidx] = row[cidx];
    }
    long long den = det_n(sys, 4);
    if (den == 0) return;
    std::array<long long, 4> sol{};
    for (int col = 0; col < 4; ++col) {
      auto m = sys;
      for (int rowi = 0; rowi < 4; ++rowi) m[rowi][col] = rhs[rowi];
      sol[col] = det_n(m, 4);
    }
    if (den < 0) {
      den = -den;
      for (auto& v : sol) v = -v;
    }
    for (int i = 0; i < 4; ++i)
      if (sol[i] < 0) return;  // w >= 0
    for (const auto& mon : s.support) {
      long long lhs = 0;
      for (int i = 0; i < 4; ++i) lhs += (1 - mon.exp[i]) * sol[i];
      if (lhs > den) return;  // row w <= 1
    }
    for (int i = 0; i < 4; ++i) {
      Rational v(sol[i], den);
      if (v > box[i]) box[i] = v;
    }
  };
  for (pick[0] = 0; pick[0] < total; ++pick[0])
    for (pick[1] = pick[0] + 1; pick[1] < total; ++pick[1])
      for (pick[2] = pick[1] + 1; pick[2] < total; ++pick[2])
        for (pick[3] = pick[2] + 1; pick[3] < total; ++pick[3]) consider();
  return box;
}

}  // namespace

Rational diff(const Vec4& w, const SeriesSupport& s) {
  return l1_norm(w) - weight_of_f(w, s);
}

MaximinResult boundedness_certificate(const SeriesSupport& s) {
  if (s.support.empty())
    throw std::domain_error("boundedness certificate: empty support");
  const size_t n_mons = s.support.size();
  // LP over (d1..d4, t): maximize t subject to sum d_i = 1, d_i >= 0 and
  // <m, d> - t >= 0.  The feasible region is pointed, so an optimal vertex
  // activates the simplex equality plus four inequality rows: a set Z of
  // pinned coordinates d_i = 0 and 4 - |Z| tight monomials.  Pinned
  // coordinates are eliminated up front, leaving a small square system
  // solved exactly by Cramer's rule; the right-hand side is e1, so each
  // numerator is a signed first-row minor.
  bool have = false;
  Rational best_t;
  Vec4 best_d;

  std::array<int, 4> free_idx{};
  std::array<size_t, 4> active{};
  auto consider = [&](int nfree, int nact) {
    const int dim = nfree + 1;  // free d's plus t
    std::array<std::array<long long, 5>, 5> sys{};
    for (int c = 0; c < nfree; ++c) sys[0][c] = 1;
    sys[0][nfree] = 0;
    for (int r = 0; r < nact; ++r) {
      const Monomial& m = s.support[active[r]];
      for (int c = 0; c < nfree; ++c) sys[r + 1][c] = m.exp[free_idx[c]];
      sys[r + 1][nfree] = -1;
    }
    long long den = det_n(sys, dim);
    if (den == 0) return;
    // Cramer with rhs e1: numerator of x_col is (-1)^col * minor(0, col).
    std::array<long long, 5> sol{};
    for (int col = 0; col < dim; ++col) {
      std::array<std::array<long long, 5>, 5> minor{};
      for (int r = 1; r < dim; ++r) {
        int cc = 0;
        for (int c = 0; c < dim; ++c) {
          if (c == col) continue;
          minor[r - 1][cc++] = sys[r][c];
        }
      }
      long long numer = det_n(minor, dim - 1);
      sol[col] = (col % 2 == 0) ? numer : -numer;
    }
    if (den < 0) {
      den = -den;
      for (auto& v : sol) v = -v;
    }
    for (int c = 0; c < nfree; ++c)
      if (sol[c] < 0) return;  // d >= 0 on the free coordinates
    std::array<long long, 4> d{};
    for (int c = 0; c < nfree; ++c) d[free_idx[c]] = sol[c];
    for (const auto& m : s.support) {
      long long lhs = 0;
      for (int i = 0; i < 4; ++i) lhs += m.exp[i] * d[i];
      if (lhs < sol[nfree]) return;  // <m, d> >= t
    }
    Rational t(sol[nfree], den);
    if (!have || t > best_t) {
      have = true;
      best_t = t;
      for (int i = 0; i < 4; ++i) best_d[i] = Rational(d[i], den);
    }
  };

  for (int zmask = 0; zmask < 15; ++zmask) {  // zmask = 15 pins all of d
    int nfree = 0;
    for (int i = 0; i < 4; ++i)
      if (!(zmask & (1 << i))) free_idx[nfree++] = i;
    const int nact = nfree;  // one tight monomial per free coordinate
    if (static_cast<size_t>(nact) > n_mons) continue;
    // lexicographic subsets of the support of size nact
    for (int i = 0; i < nact; ++i) active[i] = i;
    for (;;) {
      consider(nfree, nact);
      int pos = nact - 1;
      while (pos >= 0 && active[pos] == n_mons - static_cast<size_t>(nact - pos)) --pos;
      if (pos < 0) break;
      ++active[pos];
      for (int i = pos + 1; i < nact; ++i) active[i] = active[i - 1] + 1;
    }
  }
  if (!have)
    throw std::logic_error("boundedness certificate: no basic feasible point");
  return MaximinResult{best_t, best_d};
}

SublevelSet sublevel_enumerate(const WeightSystem& ws, const SeriesSupport& s,
                               bool exclude_integer_classes,
                               const MaximinResult* certificate) {
  SublevelSet out;
  out.certificate = certificate ? *certificate : boundedness_certificate(s);
  const ScaledSupport scaled = scale_support(s);
  const long long r = ws.r;

  auto scan_class = [&](long long j, long long max_level, size_t point_cap) {
    // Shift vectors c >= 0 by l1 level; u = u0 + r*c.
    std::array<long long, 4> u0{};
    if (j > 0)
      for (int i = 0; i < 4; ++i) u0[i] = mod_norm(j * ws.a[i], r);
    for (long long level = 0; level <= max_level; ++level) {
      if (j == 0 && level == 0) continue;  // zero vector is not in N
      for (long long c1 = 0; c1 <= level; ++c1)
        for (long long c2 = 0; c2 + c1 <= level; ++c2)
          for (long long c3 = 0; c3 + c2 + c1 <= level; ++c3) {
            long long c4 = level - c1 - c2 - c3;
            std::array<long long, 4> u = {u0[0] + r * c1, u0[1] + r * c2,
                                          u0[2] + r * c3, u0[3] + r * c4};
            long long d = diff_scaled(u, scaled);
            if (d <= r) {
              out.points.emplace_back(weight_from_scaled(ws, j, u), Rational(d, r));
              if (out.points.size() >= point_cap) return;
            }
          }
    }
  };

  std::vector<long long> classes;
  if (!exclude_integer_classes) classes.push_back(0);
  for (long long j = 1; j < r; ++j) classes.push_back(j);

  const Rational one(1);
  if (out.certificate.value < one) {
    out.bounded = true;
    // The sublevel set is the lattice part of the polytope
    // {w >= 0 : diff(w) <= 1}; its component-wise maxima cap each shift.
    Vec4 box = sublevel_box(s);
    for (long long j : classes) {
      std::array<long long, 4> u0{};
      if (j > 0)
        for (int i = 0; i < 4; ++i) u0[i] = mod_norm(j * ws.a[i], r);
      std::array<long long, 4> cap{};
      bool feasible = true;
      for (int i = 0; i < 4 && feasible; ++i) {
        // u0_i + r*c_i <= r * box_i with box_i = p/q
        __int128 room = static_cast<__int128>(box[i].num) * r -
                        static_cast<__int128>(box[i].den) * u0[i];
        if (room < 0)
          feasible = false;
        else
          cap[i] = static_cast<long long>(
              room / (static_cast<__int128>(box[i].den) * r));
      }
      if (!feasible) continue;
      for (long long c1 = 0; c1 <= cap[0]; ++c1)
        for (long long c2 = 0; c2 <= cap[1]; ++c2)
          for (long long c3 = 0; c3 <= cap[2]; ++c3)
            for (long long c4 = 0; c4 <= cap[3]; ++c4) {
              if (j == 0 && c1 + c2 + c3 + c4 == 0) continue;
              std::array<long long, 4> u = {u0[0] + r * c1, u0[1] + r * c2,
                                            u0[2] + r * c3, u0[3] + r * c4};
              long long d = diff_scaled(u, scaled);
              if (d <= r)
                out.points.emplace_back(weight_from_scaled(ws, j, u), Rational(d, r));
            }
    }
  } else {
    out.bounded = false;
    // Best effort: probe a small box plus the recession ray for witnesses.
    const size_t point_cap = 32;
    for (long long j : classes) {
      scan_class(j, 4, point_cap);
      if (out.points.size() >= point_cap) break;
    }
    if (out.points.empty()) {
      // Walk multiples of the recession direction; diff is non-increasing
      // along it once the asymptotic slope is <= 0.
      long long q = 1;
      for (int i = 0; i < 4; ++i) q = std::lcm(q, out.certificate.direction[i].den);
      std::array<long long, 4> dir{};
      for (int i = 0; i < 4; ++i)
        dir[i] = out.certificate.direction[i].num * (q / out.certificate.direction[i].den);
      for (long long j : classes) {
        if (!out.points.empty()) break;
        std::array<long long, 4> u0{};
        if (j > 0)
          for (int i = 0; i < 4; ++i) u0[i] = mod_norm(j * ws.a[i], r);
        for (long long step = 1; step <= 256; ++step) {
          std::array<long long, 4> u{};
          for (int i = 0; i < 4; ++i) u[i] = u0[i] + r * step * dir[i];
          if (diff_scaled(u, scaled) <= r) {
            out.points.emplace_back(weight_from_scaled(ws, j, u),
                                    Rational(diff_scaled(u, scaled), r));
            break;
          }
        }
      }
    }
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const auto& x, const auto& y) { return weight_less(x.first, y.first); });
  out.points.erase(std::unique(out.points.begin(), out.points.end(),
                               [](const auto& x, const auto& y) {
                                 return x.first == y.first;
                               }),
                   out.points.end());
  return out;
}

FindBetaResult find_beta(const WeightSystem& ws, const SeriesSupport& s,
                         long long k_max, bool exclude_integer_classes,
                         const MaximinResult* certificate) {
  if (k_max < 1) throw std::domain_error("find_beta: k_max must be >= 1");
  FindBetaResult result;
  SublevelSet sub = sublevel_enumerate(ws, s, exclude_integer_classes, certificate);

  if (!sub.bounded) {
    BetaFailure fail;
    if (!sub.points.empty()) {
      fail.reason = "setting unsatisfiable (infinite non-canonical family)";
      for (const auto& p : sub.points) fail.offending.push_back(p.first);
    } else {
      fail.reason =
          "sublevel set certificate is unbounded (V* >= 1) and no witness point "
          "was found within the probe region";
    }
    fail.evidence = std::move(sub);
    result.failure = std::move(fail);
    return result;
  }

  if (sub.points.empty()) {
    BetaWitness w;
    w.k = 1;
    w.evidence = std::move(sub);
    result.witness = std::move(w);
    return result;
  }

  // Candidate beta: the point of minimal diff (multiples scale linearly).
  size_t best = 0;
  for (size_t i = 1; i < sub.points.size(); ++i)
    if (sub.points[i].second < sub.points[best].second) best = i;
  const Weight beta = sub.points[best].first;
  const Rational d_beta = sub.points[best].second;
  const long long k = static_cast<long long>(sub.points.size()) + 1;

  auto fail_with = [&](std::string reason, std::vector<Weight> offending) {
    BetaFailure fail;
    fail.reason = std::move(reason);
    fail.offending = std::move(offending);
    fail.evidence = sub;
    result.failure = std::move(fail);
    return result;
  };

  if (k > k_max)
    return fail_with("k = " + std::to_string(k) + " exceeds the cap k_max = " +
                         std::to_string(k_max),
                     {});

  // The sublevel set must be exactly {beta, 2 beta, ..., (k-1) beta}.
  std::vector<Weight> chain;
  for (long long t = 1; t < k; ++t) chain.push_back(scale(ws, beta, t));
  std::vector<Weight> stray;
  for (const auto& p : sub.points) {
    bool found = false;
    for (const auto& c : chain)
      if (c == p.first) {
        found = true;
        break;
      }
    if (!found) stray.push_back(p.first);
  }
  if (!stray.empty())
    return fail_with("sublevel points are not the multiples of a single beta",
                     std::move(stray));

  if (!is_primitive(ws, beta)) return fail_with("beta is not primitive", {beta});

  const Rational one(1);
  const Rational upper =
      k >= 2 ? std::min(Rational(12, 13), Rational(1, k - 1)) : Rational(12, 13);
  bool first_bullet = Rational(1, k) < d_beta && d_beta <= upper;
  bool second_bullet = d_beta == one && k == 2;
  if (!first_bullet && !second_bullet)
    return fail_with("diff(beta) = " + to_string(d_beta) +
                         " violates the (k, beta) bracket for k = " + std::to_string(k),
                     {beta});

  BetaWitness w;
  w.k = k;
  w.beta = beta;
  if (second_bullet) w.flags.push_back("diff(beta) = 1 branch (k = 2)");
  if (first_bullet && d_beta == upper)
    w.flags.push_back("diff(beta) at the boundary value " + to_string(upper));
  w.evidence = std::move(sub);
  result.witness = std::move(w);
  return result;
}

}  // namespace enccdv
