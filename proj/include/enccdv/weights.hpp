#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "enccdv/rational.hpp"

namespace enccdv {

using Vec4 = std::array<Rational, 4>;

Rational l1_norm(const Vec4& v);
Vec4 operator+(const Vec4& x, const Vec4& y);

/// Residue data 1/r(a1,a2,a3,a4; e) of a cyclic action of order r on C^4
/// together with the character weight e of the invariant equation.
struct WeightSystem {
  long long r = 1;
  std::array<long long, 4> a{};
  long long e = 0;
};

bool operator==(const WeightSystem& x, const WeightSystem& y);

/// Residue-condition check: gcd(a_i, r) | gcd(e, r) for each i, pairwise
/// gcd(a_i, a_j, r) = 1, and a1+a2+a3+a4 - e = 1 (mod r).  Returns an
/// explanation for the first violated condition, nullopt when valid.
std::optional<std::string> weight_system_violation(long long r,
                                                   const std::array<long long, 4>& a,
                                                   long long e);

/// Normalizes all entries into [0, r) and validates.  Throws
/// std::invalid_argument when the residue conditions fail.
WeightSystem make_weight_system(long long r, std::array<long long, 4> a, long long e);

/// Applies a coordinate permutation: result.a[i] = ws.a[perm[i]].
WeightSystem permute(const WeightSystem& ws, const std::array<int, 4>& perm);

/// A nonnegative rational 4-vector congruent to (j/r)(a1,..,a4) mod Z^4.
/// The class index j is the unique such residue in [0, r); j = 0 is the
/// class of integer vectors.
struct Weight {
  Vec4 coords{};
  long long class_index = 0;
};

bool operator==(const Weight& x, const Weight& y);
/// Canonical order: (class_index, coords) lexicographic.
bool weight_less(const Weight& x, const Weight& y);

/// Derives and validates the class index.  Throws std::invalid_argument if
/// the coordinates are negative, have a denominator not dividing r, or match
/// no (or more than one) class.
Weight make_weight(const WeightSystem& ws, const Vec4& coords);

/// Fractional-part vector ({ja1/r}, {ja2/r}, {ja3/r}, {ja4/r}) for 1 <= j <= r-1.
Weight alpha(const WeightSystem& ws, long long j);

/// (1,1,1,1) - w; requires every coordinate in [0, 1].
Weight complement(const WeightSystem& ws, const Weight& w);

/// t * w with class index t*j mod r (t >= 1).
Weight scale(const WeightSystem& ws, const Weight& w, long long t);

/// All weights in [0,1]^4 congruent to some alpha_j, j in [1, r-1], with both
/// the 0 and 1 lift for every zero coordinate of alpha_j, excluding vectors
/// whose coordinates are all 0 or 1.  Sorted by (class_index, coords).
std::vector<Weight> enumerate_N0(const WeightSystem& ws);

/// True iff no t >= 2 and lattice weight g satisfy t*g = w.  Tests every
/// divisor t of the content of the numerator vector against all classes.
bool is_primitive(const WeightSystem& ws, const Weight& w);

/// Psi_1 = {beta, 2*beta, ..., (k-1)*beta} and Psi_2 = complements of the
/// multiples whose coordinates stay within [0, 1].  Both empty when k = 1.
struct PsiSets {
  std::vector<Weight> psi1;
  std::vector<Weight> psi2;
  long long k = 1;
};

PsiSets psi_sets(const WeightSystem& ws, const Weight& beta, long long k);

/// Exact-coordinate membership in Psi_1 union Psi_2.
bool psi_contains(const PsiSets& psi, const Weight& w);

}  // namespace enccdv
