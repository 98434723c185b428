#include <doctest.h>

#include <random>
#include <sstream>

#include "helpers.hpp"

using namespace enccdv;
using namespace enccdv::testing;

TEST_CASE("terminal hypothesis identity") {
  CHECK(terminal_hypothesis(worked_ws()));
  CHECK(terminal_hypothesis(make_weight_system(4, {1, 1, 3, 2}, 2)));
  WeightSystem bad{5, {1, 1, 2, 4}, 3};  // fails at j = 1: 8/5 != 9/5
  CHECK_FALSE(terminal_hypothesis(bad));
}

TEST_CASE("terminal conclusion pairings") {
  WeightSystem case1 = make_weight_system(4, {1, 1, 3, 2}, 2);
  TerminalConclusion c1 = terminal_conclusion(case1);
  CHECK(c1.which_case == 1);
  CHECK(c1.unit_index == 1);
  REQUIRE(c1.pairs.size() == 1);
  CHECK(c1.pairs[0] == std::array<int, 2>{2, 3});

  TerminalConclusion c2 = terminal_conclusion(worked_ws());
  CHECK(c2.which_case == 2);
  REQUIRE(c2.pairs.size() == 3);
  // values (3, 1, 2, 4, 1, 4): first matching pairs 3+2, 1+4, 1+4
  CHECK(c2.pairs[0] == std::array<int, 2>{1, 3});
  CHECK(c2.pairs[1] == std::array<int, 2>{2, 4});
  CHECK(c2.pairs[2] == std::array<int, 2>{5, 6});

  WeightSystem all_ones = make_weight_system(2, {1, 1, 1, 1}, 1);
  TerminalConclusion c3 = terminal_conclusion(all_ones);
  CHECK(c3.which_case == 2);
  CHECK(c3.pairs[0] == std::array<int, 2>{1, 2});

  // precondition violations
  CHECK_THROWS_AS(terminal_conclusion(WeightSystem{5, {1, 1, 2, 4}, 3}),
                  std::domain_error);
  CHECK_THROWS_AS(terminal_conclusion(WeightSystem{4, {2, 1, 1, 2}, 2}),
                  std::domain_error);
}

TEST_CASE("terminal scan finds no counterexamples at small orders") {
  TerminalScanResult res = terminal_scan(12, 2);
  CHECK(res.counterexamples.empty());
  CHECK(res.hypothesis_tuples > 0);
}

TEST_CASE("nc hypothesis examples") {
  CHECK(nc_hypothesis(4, 1, {1, 1, 1, 1}, 3, Q(1, 2)));
  CHECK_FALSE(nc_hypothesis(4, 2, {1, 1, 1, 1}, 3, Q(1, 2)));
  CHECK_FALSE(nc_hypothesis(2, 1, {1, 1, 1, 1}, 1, Q(1)));
  CHECK_THROWS_AS(nc_hypothesis(4, 0, {1, 1, 1, 1}, 3, Q(1, 2)), std::domain_error);
  CHECK_THROWS_AS(nc_hypothesis(4, 1, {1, 1, 1, 1}, 3, Q(0)), std::domain_error);
}

TEST_CASE("nc hypothesis implies the five-term chain of the proof") {
  // v_i = {a_i k0 / r} for i <= 4 and v_5 = {(r - e) k0 / r}: the sum
  // sum_i (1 + (m-1) v_i - ceil(m v_i)) stays >= delta for every
  // 2 <= m <= r/gcd(r, k0) - 1.
  std::mt19937_64 rng(43);
  auto check_chain = [](long long r, long long k0, std::array<long long, 4> a,
                        long long e, const Rational& delta) {
    std::array<Rational, 5> v;
    for (int i = 0; i < 4; ++i) v[i] = Q(((a[i] * k0) % r + r) % r, r);
    v[4] = Q((((r - e) * k0) % r + r) % r, r);
    long long bound = r / std::gcd(r, k0) - 1;
    for (long long m = 2; m <= bound; ++m) {
      Rational sum(0);
      for (const auto& vi : v)
        sum += Q(1) + vi * Q(m - 1) - Q((vi * Q(m)).ceil());
      CHECK(sum >= delta);
    }
  };
  check_chain(4, 1, {1, 1, 1, 1}, 3, Q(1, 2));
  int found = 0;
  for (int i = 0; i < 40000 && found < 60; ++i) {
    long long r = std::uniform_int_distribution<long long>(2, 14)(rng);
    long long k0 = std::uniform_int_distribution<long long>(1, r - 1)(rng);
    std::array<long long, 4> a{};
    for (auto& x : a) x = std::uniform_int_distribution<long long>(0, r - 1)(rng);
    long long e = std::uniform_int_distribution<long long>(0, r - 1)(rng);
    if (nc_hypothesis(r, k0, a, e, Q(1, 4))) {
      check_chain(r, k0, a, e, Q(1, 4));
      ++found;
    }
  }
  CHECK(found > 0);
}

TEST_CASE("nc scan output") {
  auto rows = nc_gamma0_scan(Q(1, 2), 4, 2);
  bool has4 = false;
  for (const auto& row : rows)
    if (row.value == 4) has4 = true;
  CHECK(has4);

  for (const auto& row : nc_gamma0_scan(Q(2), 3, 2)) CHECK(row.value <= 3);
  for (const auto& row : nc_gamma0_scan(Q(1, 2), 2, 2))
    CHECK((row.value == 1 || row.value == 2));
}

TEST_CASE("nc scan is deterministic across worker counts") {
  auto a = nc_gamma0_scan(Q(1, 3), 10, 1);
  auto b = nc_gamma0_scan(Q(1, 3), 10, 3);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].value == b[i].value);
    CHECK(a[i].count == b[i].count);
    CHECK(a[i].r == b[i].r);
    CHECK(a[i].k0 == b[i].k0);
    CHECK(a[i].a == b[i].a);
    CHECK(a[i].e == b[i].e);
  }
}

TEST_CASE("bound oracle") {
  BoundOracleReport rep = bound_oracle(1, Q(1, 2), 2, 8);
  CHECK(rep.max_r == 2);
  REQUIRE(rep.attaining.size() == 1);
  CHECK(rep.attaining[0] == Q(1, 2));
  // v = 0 satisfies the inequality for every m
  bool zero_flagged = false;
  for (const auto& row : rep.degenerate)
    if (row.v[0] == Q(0)) zero_flagged = true;
  CHECK(zero_flagged);

  // d = 2, epsilon = 2, v = (1, 1) fails already at m = 2
  BoundOracleReport rep2 = bound_oracle(2, Q(2), 1, 6);
  CHECK(rep2.max_r >= 1);

  // monotone: larger epsilon cannot increase the reported bound
  long long prev = -1;
  for (long long num = 1; num <= 4; ++num) {
    BoundOracleReport r = bound_oracle(1, Q(num, 4), 3, 12);
    if (prev >= 0) CHECK(r.max_r <= prev);
    prev = r.max_r;
  }
}

TEST_CASE("g-weight check on the zero-first-coordinate family") {
  // 1/5(0, 2, 3, 1; 0) with g = {x2^2 x4, x3 x4^2}: the sublevel set is the
  // single lift (1, 3/5, 2/5, 4/5) with diff 4/5, and every other class has
  // alpha_j(g) = 1.
  auto gen = generate_family(Family::cDE_a, 5, 2);
  WeightSystem ws = std::get<WeightSystem>(gen);
  SeriesSupport s = make_series(ws, SeriesType::cDE, {mono(0, 2, 0, 1), mono(0, 0, 1, 2)});
  FindBetaResult res = find_beta(ws, s);
  REQUIRE(res.ok());
  CHECK(res.witness->k == 2);
  CHECK(res.witness->beta->coords == vec4(Q(1), Q(3, 5), Q(2, 5), Q(4, 5)));
  CHECK(g_weight_lemma_check(ws, s, *res.witness));

  // corrupted support: the only g-monomial has alpha_1 weight 2
  SeriesSupport bad = make_series(ws, SeriesType::cDE, {mono(0, 0, 0, 10)});
  BetaWitness k1;
  k1.k = 1;
  CHECK_FALSE(g_weight_lemma_check(ws, bad, k1));

  // r = 1: no classes to check
  WeightSystem trivial = make_weight_system(1, {0, 0, 0, 0}, 0);
  SeriesSupport ts = make_series(trivial, SeriesType::cDE, {mono(0, 1, 1, 1)});
  CHECK(g_weight_lemma_check(trivial, ts, k1));

  // shape precondition
  CHECK_THROWS_AS(g_weight_lemma_check(worked_ws(), worked_support(), k1),
                  std::domain_error);
}
