// Copyright 2026 The mwcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "curve.hpp"

#include <cassert>
#include <cstdlib>

#include "err.hpp"
#include "ntutil.hpp"

namespace mwcert::ec {

Curve new_curve(std::int64_t p, std::int64_t q) {
    if (p <= 5 || !nt::is_prime(p))
        throw DomainError("new_curve: p must be a prime greater than five");
    if (q <= 5 || !nt::is_prime(q))
        throw DomainError("new_curve: q must be a prime greater than five");
    Curve c;
    c.params = {p, q};
    mpz_class P(static_cast<long>(p)), Q(static_cast<long>(q));
    mpz_class p2 = P * P, q2 = Q * Q;
    c.a = -p2;
    c.b = q2;
    c.b2 = 0;
    c.b4 = -2 * p2;
    c.b6 = 4 * q2;
    c.b8 = -p2 * p2;
    c.c4 = 48 * p2;
    c.c6 = -864 * q2;
    c.disc_prime = 4 * p2 * p2 * p2 - 27 * q2 * q2;
    c.disc = 16 * c.disc_prime;
    assert(c.disc != 0);
    assert(1728 * c.disc == c.c4 * c.c4 * c.c4 - c.c6 * c.c6);
    return c;
}

bool operator==(const Point& lhs, const Point& rhs) {
    if (lhs.infinity || rhs.infinity) return lhs.infinity == rhs.infinity;
    return lhs.x == rhs.x && lhs.y == rhs.y;
}

bool is_on_curve(const Curve& c, const Point& pt) {
    if (pt.infinity) return true;
    mpq_class rhs = pt.x * pt.x * pt.x + mpq_class(c.a) * pt.x + mpq_class(c.b);
    return pt.y * pt.y == rhs;
}

Point negate(const Point& pt) {
    if (pt.infinity) return pt;
    return Point::affine(pt.x, -pt.y);
}

Point add(const Curve& c, const Point& a, const Point& b) {
    if (a.infinity) return b;
    if (b.infinity) return a;
    assert(is_on_curve(c, a) && is_on_curve(c, b));
    mpq_class lambda;
    if (a.x == b.x) {
        if (a.y == -b.y) return Point::identity();
        // tangent: (3x^2 + a) / (2y)
        lambda = (3 * a.x * a.x + mpq_class(c.a)) / (2 * a.y);
    } else {
        lambda = (b.y - a.y) / (b.x - a.x);
    }
    mpq_class x3 = lambda * lambda - a.x - b.x;
    mpq_class y3 = lambda * (a.x - x3) - a.y;
    return Point::affine(std::move(x3), std::move(y3));
}

Point scalar_mul(const Curve& c, std::int64_t n, const Point& pt) {
    if (n == 0 || pt.infinity) return Point::identity();
    Point base = n < 0 ? negate(pt) : pt;
    std::uint64_t k = n < 0 ? -static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
    Point acc = Point::identity();
    while (k != 0) {
        if (k & 1) acc = add(c, acc, base);
        k >>= 1;
        if (k != 0) base = add(c, base, base);
    }
    return acc;
}

int ord_at(const mpq_class& v, const mpz_class& r) {
    if (v == 0) throw DomainError("ord_at: zero rational");
    int num = static_cast<int>(nt::valuation(v.get_num(), r));
    int den = static_cast<int>(nt::valuation(v.get_den(), r));
    return num - den;
}

namespace {

mpz_class mod_pos(const mpz_class& v, const mpz_class& r) {
    mpz_class m = v % r;
    if (m < 0) m += r;
    return m;
}

// Residue of a rational with nonnegative r-valuation.
mpz_class residue(const mpq_class& v, const mpz_class& r) {
    mpz_class num = mod_pos(v.get_num(), r);
    mpz_class den = mod_pos(v.get_den(), r);
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), r.get_mpz_t()) == 0)
        throw DomainError("residue: denominator not invertible mod r");
    return mod_pos(num * inv, r);
}

} // namespace

ReductionInfo reduce_mod(const Curve& c, const Point& pt, const mpz_class& r) {
    ReductionInfo info;
    info.r = r;
    if (!mpz_divisible_p(c.disc.get_mpz_t(), r.get_mpz_t())) {
        info.kind = ReductionKind::good;
        return info;
    }
    info.kind = ReductionKind::bad;

    // singular point of the reduced curve
    mpz_class P(static_cast<long>(c.params.p)), Q(static_cast<long>(c.params.q));
    if (r == 2) {
        // with p, q odd the reduced curve is y^2 = x^3 + x + 1; the singular
        // residue is (1,1)
        info.has_singular_locus = true;
        info.singular_locus = {mpz_class(1), mpz_class(1)};
    } else {
        // double root of x^3 - p^2 x + q^2 mod r: x0 = 3 q^2 / (2 p^2)
        mpz_class two_p2 = mod_pos(2 * P * P, r);
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), two_p2.get_mpz_t(), r.get_mpz_t()) != 0) {
            info.has_singular_locus = true;
            info.singular_locus = {mod_pos(3 * Q * Q * inv, r), mpz_class(0)};
        }
    }

    if (pt.infinity) {
        info.point_class = PointClass::nonsingular;
        return info;
    }
    if (ord_at(pt.x, r) < 0) {
        // reduces into the identity part; always smooth
        info.point_class = PointClass::nonsingular;
        return info;
    }
    if (!info.has_singular_locus) {
        info.point_class = PointClass::nonsingular;
        return info;
    }
    mpz_class xr = residue(pt.x, r);
    mpz_class yr = residue(pt.y, r);
    bool singular = (xr == info.singular_locus.first && yr == info.singular_locus.second);
    if (r == 2) {
        // in characteristic 2 both partials vanish iff x == 1; y is then 1
        // automatically for points of the reduced curve
        singular = (xr == 1);
    }
    info.point_class = singular ? PointClass::singular : PointClass::nonsingular;
    return info;
}

} // namespace mwcert::ec
