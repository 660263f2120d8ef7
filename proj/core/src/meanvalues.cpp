#include "mfap/meanvalues.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "mfap/errors.hpp"
#include "mfap/parallel.hpp"

namespace mfap {

std::complex<double> ProgressionTable::total() const {
    std::complex<double> s;
    for (const auto& v : sums) s += v;
    return s;
}

ProgressionTable progression_sums(const MultiplicativeFunction& f, std::uint64_t x, std::uint32_t q,
                                  const PrimeTable& table) {
    require(q >= 1, "progression_sums: q must be positive");
    require(q <= x, "progression_sums: q = " + std::to_string(q) + " exceeds x = " + std::to_string(x));
    require(x <= table.limit(), "progression_sums: x exceeds the prime table limit");

    const auto chunks = value_chunks(1, x);
    std::vector<std::vector<std::complex<double>>> partial(chunks.size());
    parallel_for(chunks.size(), [&](std::size_t c) {
        auto& acc = partial[c];
        acc.assign(q, {});
        for_each_value(f, chunks[c].first, chunks[c].second, table,
                       [&](std::uint64_t first, std::span<const std::complex<double>> values) {
                           std::uint32_t a = static_cast<std::uint32_t>(first % q);
                           for (const auto& v : values) {
                               acc[a] += v;
                               if (++a == q) a = 0;
                           }
                       });
    });

    ProgressionTable out;
    out.x = x;
    out.q = q;
    out.sums.assign(q, {});
    for (const auto& acc : partial)
        for (std::uint32_t a = 0; a < q; ++a) out.sums[a] += acc[a];
    out.counts.assign(q, x / q);
    for (std::uint64_t a = 1; a <= x % q; ++a) ++out.counts[a % q];
    return out;
}

ProgressionTable progression_sums(const FunctionSpec& f, std::uint64_t x, std::uint32_t q, const PrimeTable& table) {
    return progression_sums(MultiplicativeFunction(f), x, q, table);
}

std::complex<double> twisted_sum(const MultiplicativeFunction& f, const DirichletCharacter& chi, std::uint64_t x,
                                 const PrimeTable& table) {
    require(x <= table.limit(), "twisted_sum: x exceeds the prime table limit");
    if (x == 0) return {};
    const std::uint32_t q = chi.modulus();
    std::vector<std::complex<double>> weight(q);
    for (std::uint32_t b = 0; b < q; ++b) weight[b] = std::conj(chi(b));

    const auto chunks = value_chunks(1, x);
    std::vector<std::complex<double>> partial(chunks.size());
    parallel_for(chunks.size(), [&](std::size_t c) {
        std::complex<double> acc;
        for_each_value(f, chunks[c].first, chunks[c].second, table,
                       [&](std::uint64_t first, std::span<const std::complex<double>> values) {
                           std::uint32_t b = static_cast<std::uint32_t>(first % q);
                           for (const auto& v : values) {
                               acc += v * weight[b];
                               if (++b == q) b = 0;
                           }
                       });
        partial[c] = acc;
    });
    std::complex<double> s;
    for (const auto& v : partial) s += v;
    return s;
}

std::complex<double> twisted_sum(const FunctionSpec& f, const DirichletCharacter& chi, std::uint64_t x,
                                 const PrimeTable& table) {
    return twisted_sum(MultiplicativeFunction(f), chi, x, table);
}

Decomposition decompose_via_characters(const FunctionSpec& f, std::uint64_t x, std::uint32_t q, std::uint64_t a,
                                       const PrimeTable& table) {
    require(std::gcd(a, std::uint64_t{q}) == 1, "decompose_via_characters: gcd(a, q) must be 1");
    const MultiplicativeFunction fn(f);
    Decomposition out;
    out.lhs = progression_sums(fn, x, q, table)[a];
    for (const auto& chi : enumerate_characters(q)) out.rhs += chi(a) * twisted_sum(fn, chi, x, table);
    out.rhs /= static_cast<double>(euler_phi(q));
    return out;
}

HalaszBound halasz_bound(const FunctionSpec& f, std::uint64_t x, double T, const PrimeTable& table) {
    require(T >= 1, "halasz_bound: T must be >= 1");
    const MultiplicativeFunction fn(f);
    const auto m = min_distance_over_t(fn, DirichletCharacter::principal(1), x, T, table);
    HalaszBound out;
    out.T = T;
    out.t = m.t;
    out.squared_distance = m.squared_distance;
    out.bound = (1.0 + m.squared_distance) * std::exp(-m.squared_distance) + 1.0 / std::sqrt(T);
    out.measured_mean = std::abs(progression_sums(fn, x, 1, table).total()) / static_cast<double>(x);
    return out;
}

CoprimeMeanBound corollary22_bound(const FunctionSpec& f, std::uint64_t x, std::uint64_t r, double T,
                                   const PrimeTable& table) {
    require(r >= 1 && r * r <= x, "corollary22_bound: need 1 <= r <= sqrt(x)");
    const double lx = std::log(static_cast<double>(x));
    require(T >= 1 && T * T <= lx, "corollary22_bound: need 1 <= T <= sqrt(log x)");
    const MultiplicativeFunction fn(f);
    const auto m = min_distance_over_t(fn, DirichletCharacter::principal(1), x, T, table);

    CoprimeMeanBound out;
    out.r = r;
    out.T = T;
    out.t = m.t;
    out.squared_distance = distance_squared(fn, MultiplicativeFunction(FunctionSpec::twist(m.t)), x, r, table)
                               .squared_distance;
    const double core = (1.0 + out.squared_distance) * std::exp(-out.squared_distance);
    out.bound = core + 1.0 / std::sqrt(T);
    out.bound_log_variant = core + std::pow(lx, -0.25);

    std::complex<double> s;
    if (r <= DirichletCharacter::kMaxModulus) {
        s = twisted_sum(fn, DirichletCharacter::principal(static_cast<std::uint32_t>(r)), x, table);
    } else {
        for_each_value(fn, 1, x, table, [&](std::uint64_t first, std::span<const std::complex<double>> values) {
            for (std::size_t i = 0; i < values.size(); ++i)
                if (std::gcd(first + i, r) == 1) s += values[i];
        });
    }
    const double density = static_cast<double>(euler_phi(r)) / static_cast<double>(r);
    out.measured_mean = std::abs(s) / (density * static_cast<double>(x));
    return out;
}

EulerProductValue euler_product_mean(const FunctionSpec& f, const std::optional<DirichletCharacter>& psi, double t,
                                     std::uint32_t q, std::uint64_t x, const PrimeTable& table,
                                     std::optional<std::uint64_t> truncation) {
    require(q >= 1, "euler_product_mean: q must be positive");
    require(x >= 2 && x <= table.limit(), "euler_product_mean: x must lie in [2, table limit]");
    const std::uint64_t P = truncation.value_or(x);
    require(P >= 1 && P <= x, "euler_product_mean: truncation P must satisfy P <= x");

    const MultiplicativeFunction fn(f);
    EulerProductValue out;
    out.t = t;
    out.truncation = P;
    std::complex<double> product(1.0);
    for (std::uint64_t p : table.primes_up_to(x)) {
        if (p > P) {
            out.tail_log_bound += 2.0 / static_cast<double>(p);
            continue;
        }
        if (q % p == 0) continue;
        const double lp = std::log(static_cast<double>(p));
        const std::complex<double> psi_p = psi ? std::conj((*psi)(p)) : std::complex<double>(1.0);
        std::complex<double> series(1.0), psi_pow(1.0);
        std::uint64_t pk = 1;
        for (std::uint32_t k = 1; pk <= x / p; ++k) {
            pk *= p;
            psi_pow *= psi_p;
            const double scale = std::pow(static_cast<double>(p), -static_cast<double>(k));
            series += fn.at_prime_power(p, k) * psi_pow * scale * std::polar(1.0, -t * k * lp);
        }
        product *= (1.0 - 1.0 / static_cast<double>(p)) * series;
    }
    out.product = product;
    const double lx = std::log(static_cast<double>(x));
    const std::complex<double> one_it(1.0, t);
    out.prediction = static_cast<double>(x) * std::polar(1.0, t * lx) / (static_cast<double>(q) * one_it) * product;
    return out;
}

double euler_distance_gap(const FunctionSpec& g, std::uint64_t x, const PrimeTable& table) {
    const auto e = euler_product_mean(g, std::nullopt, 0.0, 1, x, table);
    const double d2 = distance_squared(FunctionSpec::one(), g, x, 1, table).squared_distance;
    return std::log(std::abs(e.product)) + d2;
}

Theorem1Report theorem1_report(const FunctionSpec& f, std::uint64_t x, std::uint32_t q, std::uint32_t Q, double A,
                               const PrimeTable& table) {
    require(q >= 1 && q <= Q, "theorem1_report: need 1 <= q <= Q");
    const MultiplicativeFunction fn(f);
    auto exceptional = find_exceptional(f, x, Q, A, 1, table);
    const bool divides = q % exceptional.r == 0;
    DirichletCharacter chi = divides ? induce(exceptional.psi, q) : DirichletCharacter::principal(q);
    const auto F = progression_sums(fn, x, q, table);

    std::optional<std::complex<double>> twisted;
    if (divides) twisted = twisted_sum(fn, chi, x, table) / static_cast<double>(euler_phi(q));

    Theorem1Report out{std::move(exceptional), chi, divides, x, q, {}, 0, 0, 0};
    for (std::uint32_t a : chi.group().units()) {
        const std::uint32_t residue = a % q;
        Theorem1Row row{residue, F[residue], F[residue] - chi(residue) * F[1 % q], std::nullopt};
        if (twisted) row.main_term = chi(residue) * *twisted;
        out.max_normalized_residual =
            std::max(out.max_normalized_residual, std::abs(row.residual) * q / static_cast<double>(x));
        out.rows.push_back(row);
    }
    const double lx = std::log(static_cast<double>(x));
    out.error_ref_branch_a = A > 1 ? static_cast<double>(x) / q / std::sqrt(std::log(A))
                                   : std::numeric_limits<double>::quiet_NaN();
    out.error_ref_branch_b = static_cast<double>(x) / (q * std::cbrt(lx)) + static_cast<double>(x) / lx;
    return out;
}

}  // namespace mfap
