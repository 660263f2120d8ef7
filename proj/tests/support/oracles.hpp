#pragma once

// Brute-force reference implementations used only by the tests. Nothing
// here shares code with the library paths it checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::pair<std::uint64_t, int>> trial_factor(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline int mobius(std::uint64_t n) {
    int s = 1;
    for (auto [p, e] : trial_factor(n)) {
        if (e > 1) return 0;
        s = -s;
    }
    return s;
}

inline int liouville(std::uint64_t n) {
    int e_total = 0;
    for (auto [p, e] : trial_factor(n)) e_total += e;
    return (e_total % 2) ? -1 : 1;
}

// (n/p) by listing the squares mod p.
inline int legendre(std::uint64_t n, std::uint64_t p) {
    n %= p;
    if (n == 0) return 0;
    for (std::uint64_t y = 1; y < p; ++y)
        if (y * y % p == n) return 1;
    return -1;
}

// Plain byte sieve, independent of the library's linear/segmented sieve.
inline std::vector<std::uint32_t> eratosthenes(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

inline std::uint64_t phi(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t a = 1; a <= n; ++a)
        if (std::gcd(a, n) == 1) ++c;
    return n == 1 ? 1 : c;
}

// Exact test of sum_k hist[k] * exp(2 pi i k / L) == 0 for nonnegative
// integer multiplicities: true when hist is invariant under the shift by
// L/p for some prime p | L (the sum then factors through 1 + w + ... + w^{p-1}).
inline bool root_sum_vanishes_by_symmetry(const std::vector<std::uint64_t>& hist) {
    const std::size_t L = hist.size();
    for (std::size_t p = 2; p <= L; ++p) {
        if (L % p || !is_prime(p)) continue;
        const std::size_t shift = L / p;
        bool invariant = true;
        for (std::size_t k = 0; k < L && invariant; ++k)
            if (hist[k] != hist[(k + shift) % L]) invariant = false;
        if (invariant) return true;
    }
    return false;
}

inline double prime_distance_sq(const std::vector<std::complex<double>>& f_at, const std::vector<std::complex<double>>& g_at,
                                std::uint64_t x, std::uint64_t r) {
    // f_at, g_at indexed by n
    double s = 0;
    for (std::uint64_t p = 2; p <= x; ++p) {
        if (!is_prime(p) || r % p == 0) continue;
        s += (1.0 - (f_at[p] * std::conj(g_at[p])).real()) / static_cast<double>(p);
    }
    return s;
}

}  // namespace oracle
