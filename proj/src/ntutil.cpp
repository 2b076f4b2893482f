// Copyright 2026 The mwcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "ntutil.hpp"

#include <algorithm>
#include <map>

#include "err.hpp"

namespace mwcert::nt {

namespace {

// splitmix64: deterministic stream for the rho stage.
std::uint64_t next_u64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

constexpr std::int64_t kTrialBound = 10'000;
constexpr std::int64_t kProvenCutoff = 1'000'000;

bool trial_division_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

// Fixed witness set; deterministic for n < 2^64.
const int kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool miller_rabin(const mpz_class& n) {
    mpz_class nm1 = n - 1;
    unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    mpz_class d = nm1 >> s;
    mpz_class x, a;
    for (int w : kWitnesses) {
        a = w;
        if (a >= n) continue;
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == nm1) continue;
        bool composite = true;
        for (unsigned long i = 1; i < s; ++i) {
            x = (x * x) % n;
            if (x == nm1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// Brent's variant of Pollard rho.  Returns a nontrivial factor of odd
// composite n, or 0 if the iteration budget ran out.
mpz_class brent_rho(const mpz_class& n, std::uint64_t& budget, std::uint64_t& rng) {
    while (budget > 0) {
        mpz_class c = mpz_class(next_u64(rng) % 1024 + 1);
        mpz_class y = mpz_class(next_u64(rng) % 1024 + 2) % n;
        mpz_class x, ys, g = 1, prod = 1;
        const unsigned m = 128;
        unsigned long r = 1;
        while (g == 1 && budget > 0) {
            x = y;
            for (unsigned long i = 0; i < r && budget > 0; ++i) {
                y = (y * y + c) % n;
                --budget;
            }
            unsigned long k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                unsigned long lim = std::min<unsigned long>(m, r - k);
                for (unsigned long i = 0; i < lim && budget > 0; ++i) {
                    y = (y * y + c) % n;
                    prod = prod * abs(x - y) % n;
                    --budget;
                }
                mpz_gcd(g.get_mpz_t(), prod.get_mpz_t(), n.get_mpz_t());
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack to recover the factor the batched gcd skipped over
            do {
                ys = (ys * ys + c) % n;
                mpz_class diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
                if (budget > 0) --budget;
            } while (g == 1 && budget > 0);
        }
        if (g != 1 && g != n) return g;
    }
    return 0;
}

void factor_into(const mpz_class& n, std::map<mpz_class, unsigned>& out,
                 std::uint64_t& budget, std::uint64_t& rng) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    mpz_class f = brent_rho(n, budget, rng);
    if (f == 0) throw ResourceError("factoring budget exhausted");
    factor_into(f, out, budget, rng);
    factor_into(n / f, out, budget, rng);
}

} // namespace

mpz_class Factorization::value() const {
    mpz_class v = 1, pw;
    for (const auto& [r, e] : factors) {
        mpz_pow_ui(pw.get_mpz_t(), r.get_mpz_t(), e);
        v *= pw;
    }
    return v;
}

bool Factorization::squarefree() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](const auto& f) { return f.second == 1; });
}

unsigned Factorization::exponent_of(const mpz_class& r) const {
    for (const auto& [rr, e] : factors)
        if (rr == r) return e;
    return 0;
}

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    if (n < kProvenCutoff) return trial_division_is_prime(n.get_ui());
    for (int w : kWitnesses)
        if (mpz_divisible_ui_p(n.get_mpz_t(), w)) return false;
    return miller_rabin(n);
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    return is_prime(mpz_class(static_cast<long>(n)));
}

Factorization factor(const mpz_class& n, std::uint64_t rho_budget, std::uint64_t seed) {
    if (n < 1) throw DomainError("factor: n must be >= 1");
    std::map<mpz_class, unsigned> acc;
    mpz_class m = n;
    for (std::int64_t d = 2; d <= kTrialBound && m > 1; d = (d == 2 ? 3 : d + 2)) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(d))) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(d))) {
                m /= static_cast<unsigned long>(d);
                ++e;
            }
            acc[mpz_class(static_cast<long>(d))] = e;
        }
    }
    std::uint64_t rng = seed;
    std::uint64_t budget = rho_budget;
    factor_into(m, acc, budget, rng);
    Factorization f;
    f.factors.assign(acc.begin(), acc.end());
    return f;
}

bool is_squarefree(const mpz_class& n, std::uint64_t rho_budget) {
    if (n < 1) throw DomainError("is_squarefree: n must be >= 1");
    return factor(n, rho_budget).squarefree();
}

unsigned valuation(const mpz_class& n, const mpz_class& r) {
    if (n == 0) throw DomainError("valuation: n must be nonzero");
    if (r < 2) throw DomainError("valuation: r must be prime");
    mpz_class rest;
    return static_cast<unsigned>(
        mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), r.get_mpz_t()));
}

} // namespace mwcert::nt
