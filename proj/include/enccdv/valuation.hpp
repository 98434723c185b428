#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "enccdv/series.hpp"
#include "enccdv/weights.hpp"

namespace enccdv {

/// Log-discrepancy surrogate w(x1x2x3x4) - w(f); convex piecewise-linear in w.
Rational diff(const Vec4& w, const SeriesSupport& s);

/// Exact maximin over the standard 3-simplex:
///   V* = max_{d >= 0, |d|_1 = 1} min_{m in support} <m, d>,
/// with an attaining direction.  The asymptotic slope of diff along a ray
/// direction d is |d|_1 - min_m <m, d>, so V* < 1 certifies that the
/// sublevel set {diff <= 1} is bounded and |w|_1 <= 1/(1 - V*) on it;
/// V* >= 1 exhibits a recession direction.
struct MaximinResult {
  Rational value;   // V*
  Vec4 direction;   // optimal d*, entries sum to 1
};

MaximinResult boundedness_certificate(const SeriesSupport& s);

/// The lattice points of {diff <= 1}.  When bounded, `points` is complete
/// over all classes j in [1, r-1] and shifts c >= 0 (integer classes are
/// included only when exclude_integer_classes is false).  When the
/// certificate shows V* >= 1, bounded = false and `points` holds whatever
/// witnesses a bounded probe found (possibly none).
struct SublevelSet {
  std::vector<std::pair<Weight, Rational>> points;  // sorted by (class, coords)
  bool bounded = true;
  MaximinResult certificate;
};

SublevelSet sublevel_enumerate(const WeightSystem& ws, const SeriesSupport& s,
                               bool exclude_integer_classes = true,
                               const MaximinResult* certificate = nullptr);

/// Witness for the distinguished pair (k, beta): either k = 1 with empty
/// evidence (diff > 1 everywhere), or k >= 2 with a primitive beta whose
/// multiples beta, 2*beta, ..., (k-1)*beta are exactly the sublevel points.
struct BetaWitness {
  long long k = 1;
  std::optional<Weight> beta;  // nullopt is the zero marker (k = 1)
  SublevelSet evidence;
  std::vector<std::string> flags;  // boundary values hit, caps, etc.
};

struct BetaFailure {
  std::string reason;
  std::vector<Weight> offending;
  SublevelSet evidence;
};

struct FindBetaResult {
  std::optional<BetaWitness> witness;
  std::optional<BetaFailure> failure;
  bool ok() const { return witness.has_value(); }
};

/// Runs the sublevel enumeration and matches it against the (k, beta)
/// conditions: either 1/k < diff(beta) <= min(12/13, 1/(k-1)), or
/// diff(beta) = 1 with k = 2.  k_max caps the accepted k.
FindBetaResult find_beta(const WeightSystem& ws, const SeriesSupport& s,
                         long long k_max = 13, bool exclude_integer_classes = true,
                         const MaximinResult* certificate = nullptr);

}  // namespace enccdv
