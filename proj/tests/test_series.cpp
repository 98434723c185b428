#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"

using namespace enccdv;
using namespace enccdv::testing;

TEST_CASE("monomial weights") {
  CHECK(weight_of_monomial(vec4(Q(3, 5), Q(1, 5), Q(2, 5), Q(4, 5)), mono(1, 1, 0, 0)) ==
        Q(4, 5));
  CHECK(weight_of_monomial(vec4(Q(1), Q(1), Q(1), Q(1)), mono(1, 1, 1, 1)) == Q(4));
  CHECK(weight_of_monomial(vec4(Q(2, 5), Q(4, 5), Q(3, 5), Q(1, 5)), mono(0, 0, 2, 0)) ==
        Q(6, 5));
}

TEST_CASE("weight of f is the support minimum") {
  SeriesSupport s = worked_support();
  CHECK(weight_of_f(alpha(worked_ws(), 4).coords, s) == Q(6, 5));
  CHECK(weight_of_f(alpha(worked_ws(), 1).coords, s) == Q(4, 5));
  CHECK(weight_of_f(vec4(Q(1), Q(1), Q(1), Q(1)), s) == Q(2));
  CHECK_THROWS_AS(weight_of_f(vec4(Q(1), Q(1), Q(1), Q(1)), SeriesSupport{}),
                  std::domain_error);
}

TEST_CASE("series validation per type") {
  WeightSystem ws = worked_ws();
  SeriesSupport s = worked_support();
  // distinguished monomial x1x2 auto-inserted
  CHECK(std::count(s.support.begin(), s.support.end(), mono(1, 1, 0, 0)) == 1);
  CHECK(g_part(s).size() == 2);

  // not semi-invariant: x3^3 has weight 6 = 1 != 4 (mod 5)
  CHECK(series_violation(ws, SeriesType::cA, {mono(0, 0, 3, 0)}).has_value());
  // empty g rejected
  CHECK(series_violation(ws, SeriesType::cA, {}).has_value());
  // domination antichain enforced
  CHECK(series_violation(ws, SeriesType::cA, {mono(0, 0, 2, 0), mono(0, 0, 2, 5)})
            .has_value());
  // wrong variables for the type
  CHECK(series_violation(ws, SeriesType::cA, {mono(0, 1, 2, 0)}).has_value());

  // odd type needs a1 != a2 (mod r)
  WeightSystem odd_bad = make_weight_system(3, {1, 1, 2, 2}, 2);
  CHECK(series_violation(odd_bad, SeriesType::Odd, {mono(0, 0, 4, 0)}).has_value());
}

TEST_CASE("excluded cA tuple check") {
  // (a, -a, 1, 0; 0) at a = 1, r = 5
  WeightSystem ws = make_weight_system(5, {1, 4, 1, 0}, 0);
  CHECK(excluded_cA_tuple(ws));
  CHECK_FALSE(excluded_cA_tuple(worked_ws()));
}

TEST_CASE("semi-invariant monomial generation") {
  WeightSystem ws = worked_ws();
  auto mons = semiinvariant_monomials(ws, SeriesType::cA, 6);
  CHECK(std::count(mons.begin(), mons.end(), mono(0, 0, 2, 0)) == 1);
  CHECK(std::count(mons.begin(), mons.end(), mono(0, 0, 0, 6)) == 1);
  for (const auto& m : mons) {
    CHECK(m.degree() >= 2);
    CHECK(m.degree() <= 6);
    CHECK((2 * m.exp[2] + 4 * m.exp[3]) % 5 == 4);
  }
  // (3, 2) is semi-invariant but dominates (2, 0): present in the pool,
  // filtered from the minimal list.
  auto pool = semiinvariant_candidates(ws, SeriesType::cA, 6);
  CHECK(std::count(pool.begin(), pool.end(), mono(0, 0, 3, 2)) == 1);
  CHECK(std::count(mons.begin(), mons.end(), mono(0, 0, 3, 2)) == 0);

  WeightSystem ws2 = make_weight_system(2, {1, 1, 0, 1}, 0);
  auto mons2 = semiinvariant_monomials(ws2, SeriesType::cA, 2);
  CHECK(std::count(mons2.begin(), mons2.end(), mono(0, 0, 2, 0)) == 1);
  CHECK(std::count(mons2.begin(), mons2.end(), mono(0, 0, 0, 2)) == 1);

  CHECK_THROWS_AS(semiinvariant_monomials(ws, SeriesType::cA, 1), std::domain_error);
}

TEST_CASE("domination pruning never changes weight_of_f") {
  std::mt19937_64 rng(23);
  int cases = 0;
  while (cases < 3000) {
    auto inst = random_family_instance(rng, 14, 6);
    if (!inst) continue;
    SeriesSupport augmented = inst->support;
    // add dominated monomials: support monomial plus a nonnegative shift
    for (const auto& m : inst->support.support) {
      Monomial shifted = m;
      for (int i = 0; i < 4; ++i)
        shifted.exp[i] += std::uniform_int_distribution<int>(0, 2)(rng);
      augmented.support.push_back(shifted);
    }
    for (int t = 0; t < 4; ++t) {
      Vec4 w;
      for (auto& c : w)
        c = Q(std::uniform_int_distribution<int>(0, 3 * 14)(rng), inst->ws.r);
      CHECK(weight_of_f(w, inst->support) == weight_of_f(w, augmented));
      ++cases;
    }
  }
}

TEST_CASE("semi-invariance of f-weights along alpha classes") {
  // cA: w(f) = w(x1x2) mod Z; otherwise w(f) = 2 w(x1) mod Z.
  std::mt19937_64 rng(29);
  int cases = 0;
  while (cases < 1000) {
    auto inst = random_family_instance(rng, 14, 6);
    if (!inst) continue;
    for (long long j = 1; j < inst->ws.r; ++j) {
      Vec4 w = alpha(inst->ws, j).coords;
      Rational fw = weight_of_f(w, inst->support);
      Rational anchor = inst->support.type == SeriesType::cA ? w[0] + w[1] : w[0] + w[0];
      CHECK(frac(fw - anchor) == Q(0));
      ++cases;
    }
  }
}
