#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mfap {

// Primes up to `limit` together with a smallest-prime-factor table.
//
// The factor table is dense up to kDenseLimit. Above that the sieve runs in
// segments and only the prime list is kept, which holds memory near 64 MB at
// the 1e8 ceiling; smallest_prime_factor() falls back to trial division by
// the stored primes there.
class PrimeTable {
public:
    static constexpr std::uint64_t kMaxLimit = 100'000'000;
    static constexpr std::uint64_t kDenseLimit = 10'000'000;

    explicit PrimeTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    std::span<const std::uint32_t> primes() const { return primes_; }
    // Primes p <= x (x clamped to limit()).
    std::span<const std::uint32_t> primes_up_to(std::uint64_t x) const;

    std::uint32_t smallest_prime_factor(std::uint64_t n) const;
    bool is_prime(std::uint64_t n) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> primes_;
    std::vector<std::uint32_t> spf_;
};

PrimeTable sieve_primes(std::uint64_t limit);

struct FactoredInteger {
    std::uint64_t n = 1;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;  // (p, e), p increasing

    friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;
};

FactoredInteger factorize(std::uint64_t n, const PrimeTable& table);

// Table-free helpers for small moduli; these use trial division and are
// meant for q-sized arguments, not for x-sized ones.
FactoredInteger factorize_small(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);  // ascending
bool is_squarefree(std::uint64_t n);
std::uint64_t divisor_count(std::uint64_t n);
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
// Inverse of a modulo m; requires gcd(a, m) = 1.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);
std::uint64_t isqrt(std::uint64_t n);

}  // namespace mfap
