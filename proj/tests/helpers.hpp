#pragma once

#include <random>

#include "enccdv/families.hpp"
#include "enccdv/pipeline.hpp"

namespace enccdv::testing {

inline Rational Q(long long n, long long d = 1) { return Rational(n, d); }

inline Vec4 vec4(Rational a, Rational b, Rational c, Rational d) {
  return Vec4{a, b, c, d};
}

inline Monomial mono(int a, int b, int c, int d) { return Monomial{{a, b, c, d}}; }

// The running example: 1/5(3, 1, 2, 4; 4) with f = x1x2 + x3^2 + x4^6.
inline WeightSystem worked_ws() { return make_weight_system(5, {3, 1, 2, 4}, 4); }

inline SeriesSupport worked_support() {
  return make_series(worked_ws(), SeriesType::cA, {mono(0, 0, 2, 0), mono(0, 0, 0, 6)});
}

// Uniform valid weight system by rejection; e is solved from the degree-sum
// congruence so only the gcd conditions need retries.
inline WeightSystem random_weight_system(std::mt19937_64& rng, long long r_max = 30) {
  for (;;) {
    long long r = std::uniform_int_distribution<long long>(1, r_max)(rng);
    std::array<long long, 4> a{};
    for (auto& x : a) x = std::uniform_int_distribution<long long>(0, r - 1)(rng);
    long long e = ((a[0] + a[1] + a[2] + a[3] - 1) % r + r) % r;
    if (!weight_system_violation(r, a, e)) return WeightSystem{r, a, e};
  }
}

// A random Setting-shaped instance drawn from the family generators.
struct FamilyInstance {
  Family family;
  WeightSystem ws;
  SeriesSupport support;
};

inline std::optional<FamilyInstance> random_family_instance(std::mt19937_64& rng,
                                                            long long r_max,
                                                            int d_max) {
  const auto& fams = all_families();
  for (int attempt = 0; attempt < 200; ++attempt) {
    Family f = fams[std::uniform_int_distribution<size_t>(0, fams.size() - 1)(rng)];
    long long r = std::uniform_int_distribution<long long>(2, r_max)(rng);
    long long a = std::uniform_int_distribution<long long>(1, std::max<long long>(1, r - 1))(rng);
    auto gen = generate_family(f, r, a);
    auto* ws = std::get_if<WeightSystem>(&gen);
    if (!ws) continue;
    auto pool = semiinvariant_candidates(*ws, family_series_type(f), d_max);
    if (pool.empty()) continue;
    std::vector<Monomial> tmpl{pool[std::uniform_int_distribution<size_t>(
        0, pool.size() - 1)(rng)]};
    if (pool.size() > 1 && std::uniform_int_distribution<int>(0, 1)(rng)) {
      const Monomial& extra =
          pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)];
      if (!dominates(extra, tmpl[0]) && !dominates(tmpl[0], extra))
        tmpl.push_back(extra);
    }
    return FamilyInstance{f, *ws, make_series(*ws, family_series_type(f), tmpl)};
  }
  return std::nullopt;
}

}  // namespace enccdv::testing
