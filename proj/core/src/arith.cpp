#include "mfap/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mfap/errors.hpp"

namespace mfap {

namespace {

constexpr std::uint64_t kSegment = 1u << 20;

// Plain sieve of Eratosthenes over [low, high] using base primes up to
// sqrt(high); appends the primes found to out.
void sieve_segment(std::uint64_t low, std::uint64_t high,
                   std::span<const std::uint32_t> base, std::vector<std::uint32_t>& out) {
    std::vector<char> composite(high - low + 1, 0);
    for (std::uint64_t p : base) {
        if (p * p > high) break;
        std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
        for (std::uint64_t m = start; m <= high; m += p) composite[m - low] = 1;
    }
    for (std::uint64_t n = low; n <= high; ++n)
        if (!composite[n - low]) out.push_back(static_cast<std::uint32_t>(n));
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
    require(limit >= 2 && limit <= kMaxLimit,
            "sieve limit must lie in [2, 1e8], got " + std::to_string(limit));

    // Linear sieve for the dense part.
    const std::uint64_t dense = std::min(limit, kDenseLimit);
    spf_.assign(dense + 1, 0);
    primes_.reserve(static_cast<std::size_t>(1.3 * limit / std::log(double(limit)) + 16));
    for (std::uint64_t i = 2; i <= dense; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            primes_.push_back(static_cast<std::uint32_t>(i));
        }
        const std::uint32_t si = spf_[i];
        for (std::uint32_t p : primes_) {
            if (p > si || i * p > dense) break;
            spf_[i * p] = p;
        }
    }

    for (std::uint64_t low = dense + 1; low <= limit; low += kSegment) {
        const std::uint64_t high = std::min(limit, low + kSegment - 1);
        sieve_segment(low, high, std::span<const std::uint32_t>(primes_.data(), primes_.size()),
                      primes_);
    }
    primes_.shrink_to_fit();
}

PrimeTable sieve_primes(std::uint64_t limit) { return PrimeTable(limit); }

std::span<const std::uint32_t> PrimeTable::primes_up_to(std::uint64_t x) const {
    auto end = std::upper_bound(primes_.begin(), primes_.end(), std::min(x, limit_));
    return {primes_.data(), static_cast<std::size_t>(end - primes_.begin())};
}

std::uint32_t PrimeTable::smallest_prime_factor(std::uint64_t n) const {
    require(n >= 2 && n <= limit_, "smallest_prime_factor: n outside [2, limit]");
    if (n < spf_.size()) return spf_[n];
    for (std::uint64_t p : primes_) {
        if (p * p > n) break;
        if (n % p == 0) return static_cast<std::uint32_t>(p);
    }
    return static_cast<std::uint32_t>(n);
}

bool PrimeTable::is_prime(std::uint64_t n) const {
    if (n < 2 || n > limit_) return false;
    if (n < spf_.size()) return spf_[n] == n;
    return std::binary_search(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(n));
}

FactoredInteger factorize(std::uint64_t n, const PrimeTable& table) {
    require(n >= 1, "factorize: n must be positive");
    require(n <= table.limit(), "factorize: n = " + std::to_string(n) +
                                    " exceeds the prime table limit " +
                                    std::to_string(table.limit()));
    FactoredInteger out;
    out.n = n;
    while (n > 1) {
        const std::uint64_t p = table.smallest_prime_factor(n);
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.factors.emplace_back(p, e);
    }
    return out;
}

FactoredInteger factorize_small(std::uint64_t n) {
    require(n >= 1, "factorize_small: n must be positive");
    FactoredInteger out;
    out.n = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.factors.emplace_back(p, e);
    }
    if (n > 1) out.factors.emplace_back(n, 1);
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t phi = n;
    for (auto [p, e] : factorize_small(n).factors) phi = phi / p * (p - 1);
    return phi;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (auto [p, e] : factorize_small(n).factors) {
        const std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (std::uint32_t k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_squarefree(std::uint64_t n) {
    for (auto [p, e] : factorize_small(n).factors)
        if (e > 1) return false;
    return true;
}

std::uint64_t divisor_count(std::uint64_t n) {
    std::uint64_t d = 1;
    for (auto [p, e] : factorize_small(n).factors) d *= e + 1;
    return d;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    require(mod >= 1 && mod <= 0xFFFFFFFFull, "mod_pow: modulus must fit in 32 bits");
    if (mod == 1) return 0;
    std::uint64_t result = 1, b = base % mod;
    while (exp) {
        if (exp & 1) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return result;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 0;
    std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t quotient = old_r / r;
        old_r -= quotient * r;
        std::swap(old_r, r);
        old_s -= quotient * s;
        std::swap(old_s, s);
    }
    require(old_r == 1, "mod_inverse: argument is not a unit");
    const std::int64_t mm = static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(((old_s % mm) + mm) % mm);
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace mfap
