#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "enccdv/valuation.hpp"
#include "enccdv/weights.hpp"

namespace enccdv {

/// The terminal-lemma hypothesis: for every j in [1, r-1],
///   sum_i {j*a_i/r} = {j*e/r} + j/r + 1.
bool terminal_hypothesis(const WeightSystem& ws);

/// Pairing structure forced by the terminal lemma.
///   case 1 (gcd(e,r) > 1): a4 = e, a_{unit_index} = 1, and the remaining two
///     of {1,2,3} sum to 0 (mod r); `pairs` holds that one pair.
///   case 2 (gcd(e,r) = 1): with a5 := -e and a6 := -1, `pairs` holds three
///     index pairs over {1..6} each summing to 0 (mod r).
struct TerminalConclusion {
  int which_case = 0;
  int unit_index = 0;                      // case 1 only
  std::vector<std::array<int, 2>> pairs;   // 1-based indices
};

/// All valid pairings in canonical order.  Preconditions: the hypothesis
/// holds and gcd(a1,r) = gcd(a2,r) = gcd(a3,r) = 1, gcd(a4,r) = gcd(e,r);
/// throws std::domain_error otherwise.
std::vector<TerminalConclusion> terminal_conclusions(const WeightSystem& ws);

/// First pairing in canonical order; throws std::runtime_error when no
/// pairing exists (a counterexample to the lemma).
TerminalConclusion terminal_conclusion(const WeightSystem& ws);

struct TerminalScanResult {
  long long hypothesis_tuples = 0;  // tuples passing hypothesis (canonical a1<=a2<=a3)
  std::vector<WeightSystem> counterexamples;
};

/// Exhaustive scan over all residue tuples with the gcd pattern for
/// 2 <= r <= r_max; every hypothesis-passing tuple must admit a pairing.
TerminalScanResult terminal_scan(long long r_max, int workers);

/// Conditions of the non-canonical lemma for raw residue data:
///   (1) sum_i {a_i*k0/r} = {e*k0/r} + k0/r, and
///   (2) sum_i {a_i*k/r} >= {e*k/r} + k0/r + delta for every k != k0.
bool nc_hypothesis(long long r, long long k0, const std::array<long long, 4>& a,
                   long long e, const Rational& delta);

struct NcScanRow {
  long long value = 0;  // r / gcd(r, k0)
  long long r = 0, k0 = 0;
  std::array<long long, 4> a{};
  long long e = 0;      // first passing tuple in canonical order
  long long count = 0;  // passing tuples contributing this value
};

/// Enumerates all (r <= r_max, k0, a mod r, e mod r) passing nc_hypothesis
/// and aggregates by r/gcd(r, k0).  Sorted by value; deterministic for any
/// worker count.
std::vector<NcScanRow> nc_gamma0_scan(const Rational& delta, long long r_max,
                                      int workers);

struct BoundOracleRow {
  std::vector<Rational> v;
  long long max_r = 1;      // largest r with sum_i (1+(m-1)v_i-ceil(m v_i)) >= eps
                            // for all m in [2, r]
  bool degenerate = false;  // streak reached r_max
};

struct BoundOracleReport {
  long long max_r = 1;              // maximum over non-degenerate vectors
  std::vector<Rational> attaining;  // first attaining vector
  std::vector<BoundOracleRow> degenerate;
};

/// Sweeps every v in [0,1]^d with denominators <= q_max.  Vectors whose
/// streak reaches r_max are reported separately as candidate degeneracies
/// (v = 0 trivially satisfies the inequality for every m).
BoundOracleReport bound_oracle(int d, const Rational& epsilon, int q_max,
                               long long r_max);

/// For a weight system of the shape (0, a, -a, 1; 0) with cDE-type support:
/// checks that alpha_j(g) = 1 for every j in [1, r-1] whose class is not
/// congruent to a multiple t*beta, t in [1, k-1].  Throws std::domain_error
/// when the preconditions fail.
bool g_weight_lemma_check(const WeightSystem& ws, const SeriesSupport& s,
                          const BetaWitness& witness);

}  // namespace enccdv
