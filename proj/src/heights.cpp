// Copyright 2026 The mwcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "heights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "err.hpp"

namespace mwcert::heights {

namespace {

const double kLn2 = std::log(2.0);

double log_abs(const mpz_class& n) {
    if (n == 0) throw DomainError("log of zero");
    signed long exp = 0;
    double d = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(d)) + static_cast<double>(exp) * kLn2;
}

double log_abs(const mpf_class& v) {
    if (v == 0) throw NumericError("log of zero iterate");
    signed long exp = 0;
    double d = mpf_get_d_2exp(&exp, v.get_mpf_t());
    return std::log(std::fabs(d)) + static_cast<double>(exp) * kLn2;
}

} // namespace

int PrecisionPolicy::series_terms(const ec::Curve& c) const {
    double eps = target_error > 0 ? target_error : 1e-9;
    double big = 11.0 * kLn2 + 4.0 * std::log(static_cast<double>(c.params.p));
    double n = std::log(big / (24.0 * eps)) / std::log(4.0);
    int terms = static_cast<int>(std::ceil(n));
    return std::clamp(terms, 8, 64);
}

int PrecisionPolicy::working_bits() const {
    double eps = target_error > 0 ? target_error : 1e-9;
    int target_bits = static_cast<int>(std::ceil(-std::log2(eps)));
    return std::max(128, 2 * target_bits + 64);
}

double naive_height(const ec::Point& pt) {
    if (pt.infinity) return 0.0;
    mpz_class m = abs(pt.x.get_num());
    if (m < pt.x.get_den()) m = pt.x.get_den();
    if (m == 1) return 0.0;
    return log_abs(m);
}

double archimedean_local_height(const ec::Curve& c, const ec::Point& pt,
                                const PrecisionPolicy& pp) {
    if (pt.infinity) throw DomainError("archimedean height of identity");
    const int bits = pp.working_bits();
    const int terms = pp.series_terms(c);

    mpf_class x(pt.x, bits);
    mpf_class p2(0, bits), p4(0, bits), q2(0, bits);
    p2 = mpf_class(c.params.p, bits) * mpf_class(c.params.p, bits);
    p4 = p2 * p2;
    q2 = mpf_class(c.params.q, bits) * mpf_class(c.params.q, bits);

    // z(t) = 1 + 2p^2 t^2 - 8q^2 t^3 + p^4 t^4, w(t) = 4t - 4p^2 t^3 + 4q^2 t^4;
    // t(2P) = w(t)/z(t) for t = 1/x.
    auto z_of = [&](const mpf_class& t) {
        return mpf_class(1 + 2 * p2 * t * t - 8 * q2 * t * t * t + p4 * t * t * t * t);
    };
    auto w_of = [&](const mpf_class& t) {
        return mpf_class(4 * t - 4 * p2 * t * t * t + 4 * q2 * t * t * t * t);
    };

    double acc = 0.0;
    mpf_class t(0, bits);
    int start;
    if (cmp(abs(x), 1) >= 0) {
        acc = 0.5 * log_abs(x);
        t = 1 / x;
        start = 0;
    } else {
        mpf_class f = (x * x + p2) * (x * x + p2) - 8 * q2 * x;
        if (f == 0) throw NumericError("point at a real 2-division pole");
        acc = log_abs(f) / 8.0;
        mpf_class g = x * x * x - p2 * x + q2;
        t = 4 * g / f;
        start = 1;
    }
    double scale = 8.0 * std::pow(4.0, start);
    for (int n = start; n <= terms; ++n) {
        mpf_class z = z_of(t);
        if (z == 0) throw NumericError("2-division pole in series iterate");
        acc += log_abs(z) / scale;
        t = w_of(t) / z;
        scale *= 4.0;
    }
    return acc;
}

double local_height_at_prime(const ec::Curve& c, const ec::Point& pt,
                             const mpz_class& r) {
    if (pt.infinity) throw DomainError("local height of identity");
    if (!mpz_divisible_p(c.disc.get_mpz_t(), r.get_mpz_t()))
        throw DomainError("local_height_at_prime: r must divide the discriminant");
    const double lr = log_abs(r);
    int o = pt.x == 0 ? 0 : ec::ord_at(pt.x, r);
    if (o < 0) return 0.5 * static_cast<double>(-o) * lr;

    ec::ReductionInfo red = ec::reduce_mod(c, pt, r);
    if (red.point_class == ec::PointClass::nonsingular) return 0.0;

    if (r == 2) return -kLn2 / 3.0;

    // odd r: multiplicative reduction of type I_N with N = ord_r(disc')
    unsigned N = nt::valuation(c.disc_prime, r);
    if (N < 2)
        throw UnsupportedCaseError(
            "singular reduction at an odd prime with ord_r(disc') = 1");
    double k = static_cast<double>(ec::ord_at(pt.y, r));
    double alpha = std::min(k, N / 2.0) / static_cast<double>(N);
    return -alpha * (1.0 - alpha) * (static_cast<double>(N) / 2.0) * lr;
}

HeightBreakdown canonical_height(const ec::Curve& c, const ec::Point& pt,
                                 const PrecisionPolicy& pp,
                                 const nt::Factorization& disc_prime_factors,
                                 std::uint64_t rho_budget) {
    HeightBreakdown out;
    if (pt.infinity) {
        out.local_terms.emplace_back(mpz_class(2), 0.0);
        return out;
    }
    out.archimedean = archimedean_local_height(c, pt, pp);
    double sum = out.archimedean;

    double l2 = local_height_at_prime(c, pt, mpz_class(2));
    out.local_terms.emplace_back(mpz_class(2), l2);
    sum += l2;

    mpz_class rest = pt.x.get_den();
    mpz_class two(2);
    mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), two.get_mpz_t());
    for (const auto& [r, e] : disc_prime_factors.factors) {
        if (r == 2) continue;
        double lr = local_height_at_prime(c, pt, r);
        if (lr != 0.0) out.local_terms.emplace_back(r, lr);
        sum += lr;
        mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), r.get_mpz_t());
    }

    // denominator contributions at the remaining (good) primes
    if (rest > 1) {
        nt::Factorization den = nt::factor(rest, rho_budget);
        for (const auto& [r, e] : den.factors) {
            double lr = 0.5 * static_cast<double>(e) * log_abs(r);
            out.local_terms.emplace_back(r, lr);
            sum += lr;
        }
    }
    std::sort(out.local_terms.begin(), out.local_terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.total = sum;
    return out;
}

HeightBreakdown canonical_height(const ec::Curve& c, const ec::Point& pt,
                                 const PrecisionPolicy& pp,
                                 std::uint64_t rho_budget) {
    nt::Factorization f = nt::factor(abs(c.disc_prime), rho_budget);
    return canonical_height(c, pt, pp, f, rho_budget);
}

double canonical_height_oracle(const ec::Curve& c, const ec::Point& pt, int n) {
    if (n < 0 || n > 16)
        throw DomainError("canonical_height_oracle: n out of range");
    constexpr std::size_t kCoordBitBudget = 1u << 24;
    ec::Point q = pt;
    for (int i = 0; i < n; ++i) {
        q = ec::add(c, q, q);
        if (!q.infinity &&
            mpz_sizeinbase(q.x.get_den().get_mpz_t(), 2) > kCoordBitBudget)
            throw ResourceError("oracle coordinates exceed the size budget");
    }
    return naive_height(q) / (2.0 * std::pow(4.0, n));
}

double height_pairing(const ec::Curve& c, const ec::Point& a, const ec::Point& b,
                      const PrecisionPolicy& pp) {
    double hs = canonical_height(c, ec::add(c, a, b), pp).total;
    double ha = canonical_height(c, a, pp).total;
    double hb = canonical_height(c, b, pp).total;
    return (hs - ha - hb) / 2.0;
}

double regulator(const ec::Curve& c, const ec::Point& a, const ec::Point& b,
                 const PrecisionPolicy& pp) {
    double ha = canonical_height(c, a, pp).total;
    double hb = canonical_height(c, b, pp).total;
    double hs = canonical_height(c, ec::add(c, a, b), pp).total;
    double pr = (hs - ha - hb) / 2.0;
    return ha * hb - pr * pr;
}

} // namespace mwcert::heights
