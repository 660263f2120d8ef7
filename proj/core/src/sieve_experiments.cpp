#include "mfap/sieve_experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mfap/errors.hpp"
#include "mfap/meanvalues.hpp"
#include "mfap/parallel.hpp"

namespace mfap {

namespace {

// a_n = f(nq + a) for n = 0..N (a_0 unused).
std::vector<std::complex<double>> progression_values(const MultiplicativeFunction& f, std::uint64_t N,
                                                     std::uint32_t q, std::uint64_t a, const PrimeTable& table) {
    require(N * q + a <= table.limit(), "prime table must reach floor(x/q) q + a = " + std::to_string(N * q + a));
    std::vector<std::complex<double>> out(N + 1);
    if (N == 0) return out;
    const std::uint64_t lo = q + a, hi = N * q + a;
    const auto chunks = value_chunks(lo, hi);
    parallel_for(chunks.size(), [&](std::size_t c) {
        for_each_value(f, chunks[c].first, chunks[c].second, table,
                       [&](std::uint64_t first, std::span<const std::complex<double>> values) {
                           for (std::size_t i = 0; i < values.size(); ++i) {
                               const std::uint64_t m = first + i;
                               if (m % q == a % q) {
                                   const std::uint64_t n = (m - a) / q;
                                   out[n] = values[i];
                               }
                           }
                       });
    });
    return out;
}

double mass_for_modulus(std::span<const std::complex<double>> values, std::uint32_t r) {
    std::vector<std::complex<double>> buckets(r);
    std::uint32_t b = 1 % r;
    for (std::size_t n = 1; n < values.size(); ++n) {
        buckets[b] += values[n];
        if (++b == r) b = 0;
    }
    double mass = 0;
    for (const auto& psi : primitive_characters(r)) {
        std::complex<double> s;
        for (auto u : psi.group().units()) s += psi(u) * buckets[u];
        mass += std::abs(s);
    }
    return mass;
}

}  // namespace

std::vector<ModulusMass> primitive_character_masses(const FunctionSpec& f, std::uint64_t x, std::uint32_t q,
                                                    std::uint64_t a, const std::vector<std::uint32_t>& moduli,
                                                    const PrimeTable& table) {
    require(q >= 1, "q must be positive");
    for (auto r : moduli) require(r > 1 && r <= DirichletCharacter::kMaxModulus, "moduli must lie in (1, 10000]");
    const MultiplicativeFunction fn(f);
    const auto values = progression_values(fn, x / q, q, a, table);
    std::vector<ModulusMass> out(moduli.size());
    parallel_for(moduli.size(), [&](std::size_t i) { out[i] = {moduli[i], mass_for_modulus(values, moduli[i])}; });
    return out;
}

BadModuliReport bad_moduli(const FunctionSpec& f, std::uint64_t x, std::uint32_t q, std::uint64_t a, double eta,
                           const PrimeTable& table) {
    require(q >= 1 && q <= x, "bad_moduli: need 1 <= q <= x");
    require(std::gcd(a, std::uint64_t{q}) == 1, "bad_moduli: gcd(a, q) must be 1");
    require(eta > 0, "bad_moduli: eta must be positive");

    BadModuliReport rep;
    rep.x = x;
    rep.q = q;
    rep.a = a;
    rep.eta = eta;
    rep.terms = x / q;
    const double xq = static_cast<double>(x) / q;
    rep.threshold = eta * xq;
    rep.eta_below_hypothesis = eta <= 1.0 / std::sqrt(std::log(static_cast<double>(x)));
    rep.weight_bound = 2.0 / (eta * eta);

    const std::uint64_t R = isqrt(x / q);
    require(R <= DirichletCharacter::kMaxModulus, "bad_moduli: sqrt(x/q) must not exceed 10000");
    std::vector<std::uint32_t> moduli;
    for (std::uint32_t r = 2; r <= R; ++r) moduli.push_back(r);
    rep.masses = primitive_character_masses(f, x, q, a, moduli, table);
    for (const auto& m : rep.masses) {
        if (m.mass >= rep.threshold) {
            rep.bad.push_back(m.r);
            rep.bad_weight += 1.0 / static_cast<double>(euler_phi(m.r));
        }
    }
    if (rep.bad_weight > rep.weight_bound * (1 + 1e-12))
        throw TheoremViolation("large sieve bound violated: sum 1/phi(r) over bad moduli = " +
                               std::to_string(rep.bad_weight) + " > 2/eta^2 = " + std::to_string(rep.weight_bound));
    return rep;
}

TransferCheck transfer_check(const FunctionSpec& f, std::uint64_t x, std::uint32_t q, std::uint64_t a,
                             std::uint32_t r, double eta, const PrimeTable& table, double headroom) {
    require(std::gcd(a, std::uint64_t{q}) == 1, "transfer_check: gcd(a, q) must be 1");
    require(r >= 1 && is_squarefree(r), "transfer_check: r must be squarefree");
    require(std::gcd(std::uint64_t{r}, std::uint64_t{q}) == 1, "transfer_check: r must be coprime to q");
    require(std::uint64_t{r} * r <= x / q, "transfer_check: r must not exceed sqrt(x/q)");
    require(q <= x / r, "transfer_check: need q <= x/r");

    const double xq = static_cast<double>(x) / q;
    std::vector<std::uint32_t> divs;
    for (auto d : divisors(r))
        if (d > 1) divs.push_back(static_cast<std::uint32_t>(d));
    if (!divs.empty())
        for (const auto& m : primitive_character_masses(f, x, q, a, divs, table))
            require(m.mass < eta * xq, "transfer_check: r is not good (divisor " + std::to_string(m.r) + " is bad)");

    const MultiplicativeFunction fn(f);
    TransferCheck out;
    out.lhs = progression_sums(fn, x, q, table)[a];
    const std::uint64_t shifted = a * mod_inverse(r % q, q) % q;
    const auto fr = r <= table.limit() ? fn.at(r, table) : std::complex<double>(0.0);
    out.rhs = static_cast<double>(r) * fr * progression_sums(fn, x / r, q, table)[shifted];
    out.difference = std::abs(out.lhs - out.rhs);
    const double phi_ratio = static_cast<double>(euler_phi(r)) / r;
    out.error_budget = headroom * xq * (eta * static_cast<double>(divisor_count(r)) + (1.0 - phi_ratio));
    out.within_budget = out.difference <= out.error_budget;
    return out;
}

DefectReport multiplicativity_defect(const FunctionSpec& f, std::uint64_t x, std::uint32_t q,
                                     const PrimeTable& table) {
    const auto F = progression_sums(f, x, q, table);
    DefectReport rep;
    rep.x = x;
    rep.q = q;
    const auto group = unit_group(q);
    rep.units.assign(group->units().begin(), group->units().end());
    double max_f = 0;
    for (auto c : rep.units) max_f = std::max(max_f, std::abs(F[c]));
    const std::size_t n = rep.units.size();
    rep.defect.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::uint64_t ab = std::uint64_t{rep.units[i]} * rep.units[j] % q;
            const double d = std::abs(F[ab] * F[1 % q] - F[rep.units[i]] * F[rep.units[j]]);
            rep.defect[i][j] = d;
            rep.max_defect = std::max(rep.max_defect, d);
        }
    rep.normalizer = static_cast<double>(x) / q * max_f;
    rep.normalized_max_defect = rep.normalizer > 0 ? rep.max_defect / rep.normalizer : 0.0;
    const double A = q > 1 ? std::log(static_cast<double>(x)) / std::log(static_cast<double>(q))
                           : std::numeric_limits<double>::infinity();
    rep.reference_scale = (std::isfinite(A) && A > std::exp(1.0)) ? 1.0 / std::sqrt(std::log(A))
                                                                  : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

bool is_square_mod(std::uint64_t a, std::uint32_t q) {
    for (std::uint64_t y = 0; y < q; ++y)
        if (y * y % q == a % q) return true;
    return false;
}

LegendreExperiment legendre_progression_experiment(std::uint32_t q, std::uint64_t a, std::uint64_t x,
                                                   std::uint64_t p_limit, const PrimeTable& table) {
    require(q >= 1 && std::gcd(a, std::uint64_t{q}) == 1, "legendre experiment: need gcd(a, q) = 1");
    require(x >= 1 && x <= table.limit(), "legendre experiment: x exceeds the prime table limit");
    require(p_limit <= table.limit(), "legendre experiment: p_limit exceeds the prime table limit");

    LegendreExperiment out;
    out.q = q;
    out.a = a % q;
    out.x = x;
    out.p_limit = p_limit;
    out.a_is_square = is_square_mod(a, q);
    out.infimum = std::numeric_limits<double>::infinity();
    const std::uint64_t first = out.a == 0 ? q : out.a;

    std::vector<std::uint8_t> residue;
    for (std::uint64_t p : table.primes_up_to(p_limit)) {
        if (p == 2 || q % p == 0) continue;
        residue.assign(p, 0);
        for (std::uint64_t y = 1; y < p; ++y) residue[y * y % p] = 1;
        std::int64_t s = 0;
        for (std::uint64_t n = first; n <= x; n += q) {
            const std::uint64_t m = n % p;
            if (m != 0) s += residue[m] ? 1 : -1;
        }
        const double value = static_cast<double>(q) / static_cast<double>(x) * static_cast<double>(s);
        if (value < out.infimum) {
            out.infimum = value;
            out.argmin_p = p;
        }
        out.entries.push_back({p, value, out.infimum});
    }
    require(!out.entries.empty(), "legendre experiment: no admissible primes below p_limit");
    return out;
}

std::complex<double> primitive_orthogonality_sum(std::uint32_t r, std::uint64_t b, std::uint64_t n) {
    require(is_squarefree(r), "primitive_orthogonality_sum: r must be squarefree");
    require(std::gcd(b, std::uint64_t{r}) == 1, "primitive_orthogonality_sum: b must be a unit mod r");
    std::complex<double> s;
    for (auto l : divisors(r))
        for (const auto& psi : primitive_characters(static_cast<std::uint32_t>(l))) s += std::conj(psi(b)) * psi(n);
    return s;
}

std::vector<std::complex<double>> primitive_orthogonality_row(std::uint32_t r, std::uint64_t b) {
    require(is_squarefree(r), "primitive_orthogonality_row: r must be squarefree");
    require(std::gcd(b, std::uint64_t{r}) == 1, "primitive_orthogonality_row: b must be a unit mod r");
    std::vector<std::complex<double>> row(r);
    for (auto l : divisors(r))
        for (const auto& psi : primitive_characters(static_cast<std::uint32_t>(l))) {
            const auto weight = std::conj(psi(b));
            for (std::uint32_t n = 0; n < r; ++n) row[n] += weight * psi(n);
        }
    return row;
}

std::uint64_t primitive_orthogonality_expected(std::uint32_t r, std::uint64_t b, std::uint64_t n) {
    const std::uint64_t d = std::gcd(n, std::uint64_t{r});
    const std::uint64_t m = r / d;
    return (n % m == b % m) ? euler_phi(m) : 0;
}

}  // namespace mfap
