// Copyright 2026 The mwcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MWCERT_NTUTIL_HPP
#define MWCERT_NTUTIL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace mwcert::nt {

/// Prime factorization with primes in strictly increasing order and all
/// exponents >= 1.  An empty factor list represents 1.
struct Factorization {
    std::vector<std::pair<mpz_class, unsigned>> factors;

    mpz_class value() const;
    bool squarefree() const;
    unsigned exponent_of(const mpz_class& r) const; // 0 if r does not divide
};

inline constexpr std::uint64_t kDefaultRhoBudget = 30'000'000;
inline constexpr std::uint64_t kDefaultFactorSeed = 0x9e3779b97f4a7c15ull;

/// Deterministic primality test.  Trial division proves the answer below
/// 10^6; above that a fixed Miller-Rabin witness set {2,3,...,37} is used,
/// which is deterministic for all inputs below 2^64 (and below 3.3*10^24).
/// Everything this library factors stays well under that cutoff.
bool is_prime(const mpz_class& n);
bool is_prime(std::int64_t n);

/// Factor n >= 1 by trial division up to a fixed bound, then Brent's rho.
/// The rho stage consumes at most `rho_budget` iterations in total; if the
/// budget runs out a ResourceError is thrown.  All randomness is derived
/// from `seed`, so results are deterministic.
Factorization factor(const mpz_class& n,
                     std::uint64_t rho_budget = kDefaultRhoBudget,
                     std::uint64_t seed = kDefaultFactorSeed);

/// True iff no prime divides n twice (n >= 1).
bool is_squarefree(const mpz_class& n,
                   std::uint64_t rho_budget = kDefaultRhoBudget);

/// Largest e with r^e | n.  Requires n != 0 and r prime.
unsigned valuation(const mpz_class& n, const mpz_class& r);

} // namespace mwcert::nt

#endif
