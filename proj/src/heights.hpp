// Copyright 2026 The mwcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MWCERT_HEIGHTS_HPP
#define MWCERT_HEIGHTS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "curve.hpp"
#include "ntutil.hpp"

namespace mwcert::heights {

// Canonical heights are computed through the local decomposition
//
//     hhat(P) = lambda_inf(P) + sum_r lambda_r(P)
//
// with the archimedean part given by Tate's series (leading term
// (1/2) log|x|) and the non-archimedean parts normalized so that integral
// points with nonsingular reduction contribute zero.  In this normalization
// hhat(P) ~ (1/2) h(x(P)) for points of large naive height, so the raw
// doubling limit h(2^n P)/4^n converges to 2*hhat(P).  The oracle below
// divides the limit by two so that both routes compute the same quadratic
// form; this is the form all bound comparisons in this library use.

/// Absolute-error budget for canonical heights plus the derived series
/// length and working precision of the archimedean iteration.
struct PrecisionPolicy {
    double target_error = 1e-9;

    /// Number of Tate-series terms so the truncated tail, bounded through
    /// |log z| <= log(2^11 p^4), stays below target_error.
    int series_terms(const ec::Curve& c) const;

    /// Mantissa bits for series iterates; at least double the target
    /// precision, never below 128.
    int working_bits() const;
};

/// Per-place decomposition of a canonical height.
/// local_terms always carries the prime 2, plus every other prime with a
/// nonzero contribution (bad primes and denominator primes alike).
struct HeightBreakdown {
    double archimedean = 0.0;
    std::vector<std::pair<mpz_class, double>> local_terms;
    double total = 0.0;
};

/// log max(|num|, den) of the x-coordinate in lowest terms; 0 for identity.
double naive_height(const ec::Point& pt);

/// Archimedean local height by the truncated Tate series.  For |x| >= 1 the
/// leading term is (1/2)log|x| and the sum starts at n = 0; otherwise the
/// leading term is (1/8)log|F(x)| with F the duplication quartic
/// (x^2+p^2)^2 - 8q^2 x and the sum starts at n = 1.  Iterates are carried
/// as high-precision floats, never exact rationals.
/// Throws NumericError if an iterate lands on a 2-division pole.
double archimedean_local_height(const ec::Curve& c, const ec::Point& pt,
                                const PrecisionPolicy& pp);

/// Local height at a prime r dividing the discriminant.
///   - x with negative r-valuation: (1/2) max(0, -ord_r x) log r
///   - nonsingular reduction: 0
///   - singular at r = 2 (reduction type IV here): -(1/3) log 2
///   - singular at odd r (multiplicative, N = ord_r(disc')):
///       -alpha(1-alpha)(N/2) log r with alpha = min(ord_r y, N/2)/N.
///     Singular reduction is impossible when N = 1.
double local_height_at_prime(const ec::Curve& c, const ec::Point& pt,
                             const mpz_class& r);

HeightBreakdown canonical_height(const ec::Curve& c, const ec::Point& pt,
                                 const PrecisionPolicy& pp,
                                 std::uint64_t rho_budget = nt::kDefaultRhoBudget);

/// Same, reusing an already-computed factorization of |disc'|.
HeightBreakdown canonical_height(const ec::Curve& c, const ec::Point& pt,
                                 const PrecisionPolicy& pp,
                                 const nt::Factorization& disc_prime_factors,
                                 std::uint64_t rho_budget = nt::kDefaultRhoBudget);

/// Independent cross-check: naive_height(2^n * pt) / (2 * 4^n), evaluated
/// with exact rational arithmetic throughout.  Converges to the same value
/// as canonical_height at rate O(4^-n).  n <= 8 is always affordable.
double canonical_height_oracle(const ec::Curve& c, const ec::Point& pt, int n);

/// (hhat(a+b) - hhat(a) - hhat(b)) / 2.
double height_pairing(const ec::Curve& c, const ec::Point& a, const ec::Point& b,
                      const PrecisionPolicy& pp);

/// hhat(a) hhat(b) - pairing(a,b)^2; positive iff a, b are independent
/// modulo torsion.
double regulator(const ec::Curve& c, const ec::Point& a, const ec::Point& b,
                 const PrecisionPolicy& pp);

} // namespace mwcert::heights

#endif
