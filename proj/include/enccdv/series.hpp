#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "enccdv/weights.hpp"

namespace enccdv {

/// Shape of the invariant equation f:
///   cA:  f = x1*x2 + g(x3, x4),         g in m^2
///   Odd: f = x1^2 + x2^2 + g(x3, x4),   g in m^3, a1 != a2 (mod r)
///   cDE: f = x1^2 + g(x2, x3, x4),      g in m^3
enum class SeriesType { cA, Odd, cDE };

const char* to_string(SeriesType t);
std::optional<SeriesType> series_type_from_string(std::string_view s);

struct Monomial {
  std::array<int, 4> exp{};
  int degree() const { return exp[0] + exp[1] + exp[2] + exp[3]; }
};

bool operator==(const Monomial& x, const Monomial& y);
bool operator<(const Monomial& x, const Monomial& y);  // lex on exponents
/// Coordinate-wise x >= y.
bool dominates(const Monomial& x, const Monomial& y);

/// Finite monomial model of f.  The support always contains the
/// distinguished monomials of the type (x1x2, or x1^2 [and x2^2]) plus at
/// least one g-monomial, and forms a domination antichain.
struct SeriesSupport {
  SeriesType type = SeriesType::cA;
  std::vector<Monomial> support;  // sorted
};

bool operator==(const SeriesSupport& x, const SeriesSupport& y);

/// Validates g-monomials against the type rules and the residue condition
/// sum_i m_i*a_i = e (mod r).  Returns the first violation, nullopt if ok.
std::optional<std::string> series_violation(const WeightSystem& ws, SeriesType type,
                                            const std::vector<Monomial>& g);

/// True when (a1,..,a4; e) = (a, -a, 1, 0; 0) mod r for some a coprime to r.
/// Weight systems of this shape are excluded for cA-type equations.
bool excluded_cA_tuple(const WeightSystem& ws);

/// Builds the support from the g-monomials, auto-inserting the distinguished
/// monomials.  Throws std::invalid_argument when series_violation fires.
SeriesSupport make_series(const WeightSystem& ws, SeriesType type,
                          std::vector<Monomial> g);

/// The support minus the distinguished monomials.
std::vector<Monomial> g_part(const SeriesSupport& s);

/// Applies a coordinate permutation to every exponent vector.
SeriesSupport permute(const SeriesSupport& s, const std::array<int, 4>& perm);

/// Inner product sum_i m_i * w_i.
Rational weight_of_monomial(const Vec4& w, const Monomial& m);

/// min over the support of weight_of_monomial; the order of f along the
/// monomial valuation w.  Throws std::domain_error on empty support.
Rational weight_of_f(const Vec4& w, const SeriesSupport& s);

/// Every monomial in the type-allowed variables with type degree bounds,
/// degree <= max_degree and residue weight e (mod r).  Unfiltered pool used
/// by template enumeration.  Requires max_degree >= 2.
std::vector<Monomial> semiinvariant_candidates(const WeightSystem& ws, SeriesType type,
                                               int max_degree);

/// semiinvariant_candidates filtered to domination-minimal elements; sorted.
std::vector<Monomial> semiinvariant_monomials(const WeightSystem& ws, SeriesType type,
                                              int max_degree);

}  // namespace enccdv
