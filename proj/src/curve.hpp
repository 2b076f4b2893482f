// Copyright 2026 The mwcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MWCERT_CURVE_HPP
#define MWCERT_CURVE_HPP

#include <cstdint>
#include <utility>

#include <gmpxx.h>

namespace mwcert::ec {

/// The pair (p, q) defining E_(p,q): y^2 = x^3 - p^2 x + q^2.
/// Both entries are primes exceeding five.
struct CurveParams {
    std::int64_t p = 0;
    std::int64_t q = 0;
};

/// A member of the family with its standard Weierstrass quantities.
///
/// For this family: a = -p^2, b = q^2, b2 = 0, b4 = -2p^2, b6 = 4q^2,
/// b8 = -p^4, c4 = 48p^2, c6 = -864q^2, disc = 16(4p^6 - 27q^4).
/// The model is globally minimal.
struct Curve {
    CurveParams params;
    mpz_class a, b;
    mpz_class disc;        // 16 * disc_prime, never zero
    mpz_class disc_prime;  // 4p^6 - 27q^4 (may be negative)
    mpz_class c4, c6, b2, b4, b6, b8;
};

/// Construct the curve for (p, q).  Throws DomainError unless both are
/// primes greater than five.
Curve new_curve(std::int64_t p, std::int64_t q);

/// Identity or an affine point with exact rational coordinates.
/// Rationals are kept canonical (reduced, positive denominator), which
/// mpq_class guarantees after canonicalize().
struct Point {
    bool infinity = true;
    mpq_class x, y;

    static Point identity() { return Point{}; }
    static Point affine(mpq_class px, mpq_class py) {
        Point pt;
        pt.infinity = false;
        pt.x = std::move(px);
        pt.y = std::move(py);
        pt.x.canonicalize();
        pt.y.canonicalize();
        return pt;
    }
    static Point affine_int(std::int64_t px, std::int64_t py) {
        return affine(mpq_class(static_cast<long>(px)),
                      mpq_class(static_cast<long>(py)));
    }
};

bool operator==(const Point& lhs, const Point& rhs);
inline bool operator!=(const Point& lhs, const Point& rhs) { return !(lhs == rhs); }

/// Exact test of y^2 = x^3 - p^2 x + q^2 (identity is on the curve).
bool is_on_curve(const Curve& c, const Point& pt);

Point negate(const Point& pt);

/// Chord-tangent group law, exact over Q.  Inputs must lie on the curve.
Point add(const Curve& c, const Point& a, const Point& b);

/// n * pt by double-and-add; n may be zero or negative.
Point scalar_mul(const Curve& c, std::int64_t n, const Point& pt);

enum class ReductionKind { good, bad };
enum class PointClass { nonsingular, singular };

/// Classification of a point's reduction modulo a prime r.
struct ReductionInfo {
    mpz_class r;
    ReductionKind kind = ReductionKind::good;
    // Defined only when kind == bad.
    PointClass point_class = PointClass::nonsingular;
    bool has_singular_locus = false;
    std::pair<mpz_class, mpz_class> singular_locus; // singular point of the reduced curve
};

/// Reduce an affine point modulo r and report whether it hits the singular
/// point of the reduced curve.  Points whose x has negative r-valuation
/// reduce into the smooth (identity) part and are reported nonsingular.
/// For r not dividing disc the answer is kind == good.
ReductionInfo reduce_mod(const Curve& c, const Point& pt, const mpz_class& r);

/// Valuation of a nonzero rational at r (negative for denominators).
int ord_at(const mpq_class& v, const mpz_class& r);

} // namespace mwcert::ec

#endif
