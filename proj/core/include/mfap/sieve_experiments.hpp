#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mfap/arith.hpp"
#include "mfap/characters.hpp"
#include "mfap/function_spec.hpp"

namespace mfap {

// For 1 < r <= sqrt(x/q): the primitive-character mass
//   sum*_{psi mod r} |sum_{1 <= n <= x/q} f(nq + a) psi(n)|.
struct ModulusMass {
    std::uint32_t r;
    double mass;
};

struct BadModuliReport {
    std::uint64_t x = 0;
    std::uint32_t q = 1;
    std::uint64_t a = 1;
    double eta = 0;
    std::uint64_t terms = 0;          // floor(x/q)
    double threshold = 0;             // eta * x / q
    bool eta_below_hypothesis = false;  // eta <= 1/sqrt(log x)
    std::vector<std::uint32_t> bad;     // ascending
    double bad_weight = 0;              // sum over bad r of 1/phi(r)
    double weight_bound = 0;            // 2 / eta^2
    std::vector<ModulusMass> masses;    // every r in (1, sqrt(x/q)]
};

// Masses for the given moduli (each > 1). The values f(nq + a) are read for
// n <= floor(x/q), so table.limit() must reach floor(x/q) q + a.
std::vector<ModulusMass> primitive_character_masses(const FunctionSpec& f, std::uint64_t x, std::uint32_t q,
                                                    std::uint64_t a, const std::vector<std::uint32_t>& moduli,
                                                    const PrimeTable& table);

// Exhaustive bad-moduli scan; throws TheoremViolation if
// sum_{r in B} 1/phi(r) > 2/eta^2.
BadModuliReport bad_moduli(const FunctionSpec& f, std::uint64_t x, std::uint32_t q, std::uint64_t a, double eta,
                           const PrimeTable& table);

struct TransferCheck {
    std::complex<double> lhs;  // F(x; q, a)
    std::complex<double> rhs;  // r f(r) F(x/r; q, a r^{-1})
    double difference = 0;
    double error_budget = 0;   // headroom * (x/q)(eta d(r) + 1 - phi(r)/r)
    bool within_budget = false;
};
TransferCheck transfer_check(const FunctionSpec& f, std::uint64_t x, std::uint32_t q, std::uint64_t a,
                             std::uint32_t r, double eta, const PrimeTable& table, double headroom = 10.0);

struct DefectReport {
    std::uint64_t x = 0;
    std::uint32_t q = 1;
    std::vector<std::uint32_t> units;
    // defect[i][j] = |F(ab)F(1) - F(a)F(b)| for a = units[i], b = units[j]
    std::vector<std::vector<double>> defect;
    double max_defect = 0;
    double normalizer = 0;  // (x/q) max_c |F(x;q,c)|
    double normalized_max_defect = 0;
    double reference_scale = 0;  // 1/sqrt(log A) with A = log x / log q; NaN unless A > e
};
DefectReport multiplicativity_defect(const FunctionSpec& f, std::uint64_t x, std::uint32_t q,
                                     const PrimeTable& table);

struct LegendreExperiment {
    std::uint32_t q = 1;
    std::uint64_t a = 1;
    std::uint64_t x = 0;
    std::uint64_t p_limit = 0;
    bool a_is_square = false;
    double infimum = 0;
    std::uint64_t argmin_p = 0;
    struct Entry {
        std::uint64_t p;
        double value;          // (q/x) sum_{n <= x, n = a (q)} (n/p)
        double running_infimum;
    };
    std::vector<Entry> entries;
};
LegendreExperiment legendre_progression_experiment(std::uint32_t q, std::uint64_t a, std::uint64_t x,
                                                   std::uint64_t p_limit, const PrimeTable& table);

// sum_{l | r} sum*_{psi mod l} conj(psi(b)) psi(n) for squarefree r, and the
// closed form phi(r/d) [n = b mod r/d] with d = gcd(n, r).
std::complex<double> primitive_orthogonality_sum(std::uint32_t r, std::uint64_t b, std::uint64_t n);
// The same sum for every n in [0, r), sharing the character enumeration.
std::vector<std::complex<double>> primitive_orthogonality_row(std::uint32_t r, std::uint64_t b);
std::uint64_t primitive_orthogonality_expected(std::uint32_t r, std::uint64_t b, std::uint64_t n);

// a is a square mod q (by exhaustion).
bool is_square_mod(std::uint64_t a, std::uint32_t q);

}  // namespace mfap
