#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "mfap/arith.hpp"
#include "mfap/characters.hpp"
#include "mfap/function_spec.hpp"
#include "mfap/pretension.hpp"

namespace mfap {

// F(x; q, a) = sum of f(n) over n <= x, n = a mod q, for every a mod q.
struct ProgressionTable {
    std::uint64_t x = 0;
    std::uint32_t q = 1;
    std::vector<std::complex<double>> sums;  // indexed by a in [0, q)
    std::vector<std::uint64_t> counts;

    const std::complex<double>& operator[](std::uint64_t a) const { return sums[a % q]; }
    std::complex<double> total() const;
};

ProgressionTable progression_sums(const FunctionSpec& f, std::uint64_t x, std::uint32_t q, const PrimeTable& table);
ProgressionTable progression_sums(const MultiplicativeFunction& f, std::uint64_t x, std::uint32_t q,
                                  const PrimeTable& table);

// sum over n <= x of f(n) conj(chi(n))
std::complex<double> twisted_sum(const FunctionSpec& f, const DirichletCharacter& chi, std::uint64_t x,
                                 const PrimeTable& table);
std::complex<double> twisted_sum(const MultiplicativeFunction& f, const DirichletCharacter& chi, std::uint64_t x,
                                 const PrimeTable& table);

struct Decomposition {
    std::complex<double> lhs;  // F(x; q, a)
    std::complex<double> rhs;  // (1/phi(q)) sum_chi chi(a) twisted_sum(f, chi, x)
};
Decomposition decompose_via_characters(const FunctionSpec& f, std::uint64_t x, std::uint32_t q, std::uint64_t a,
                                       const PrimeTable& table);

struct HalaszBound {
    double T = 1;
    double t = 0;                 // minimizer of D(f, n^{it}; x) over |t| <= T
    double squared_distance = 0;
    double bound = 0;             // (1 + D^2) e^{-D^2} + 1/sqrt(T)
    double measured_mean = 0;     // |sum_{n <= x} f(n)| / x
};
HalaszBound halasz_bound(const FunctionSpec& f, std::uint64_t x, double T, const PrimeTable& table);

struct CoprimeMeanBound {
    std::uint64_t r = 1;
    double T = 1;
    double t = 0;
    double squared_distance = 0;     // D_r(f, n^{it}; x)^2 at t
    double bound = 0;                // (1 + D_r^2) e^{-D_r^2} + 1/sqrt(T)
    double bound_log_variant = 0;    // (1 + D_r^2) e^{-D_r^2} + (log x)^{-1/4}
    double measured_mean = 0;        // |sum_{n <= x, (n,r)=1} f(n)| / ((phi(r)/r) x)
};
CoprimeMeanBound corollary22_bound(const FunctionSpec& f, std::uint64_t x, std::uint64_t r, double T,
                                   const PrimeTable& table);

// prod over p <= P, p not dividing q, of
//   (1 - 1/p)(1 + sum_{k >= 1, p^k <= x} f(p^k) conj(psi(p^k)) p^{-k(1+it)})
struct EulerProductValue {
    double t = 0;
    std::uint64_t truncation = 0;          // P
    std::complex<double> product;
    // x^{1+it} / (q (1+it)) * product; multiply by psi(a) for F(x; q, a).
    std::complex<double> prediction;
    double tail_log_bound = 0;             // sum over P < p <= x of 2/p
};
EulerProductValue euler_product_mean(const FunctionSpec& f, const std::optional<DirichletCharacter>& psi, double t,
                                     std::uint32_t q, std::uint64_t x, const PrimeTable& table,
                                     std::optional<std::uint64_t> truncation = std::nullopt);

// log|prod_{p <= x}(1 - 1/p)(1 + g(p)/p + ...)| + D(1, g; x)^2
double euler_distance_gap(const FunctionSpec& g, std::uint64_t x, const PrimeTable& table);

struct Theorem1Row {
    std::uint32_t a;
    std::complex<double> F;
    std::complex<double> residual;                  // F(x;q,a) - chi(a) F(x;q,1)
    std::optional<std::complex<double>> main_term;  // only when r | q
};

struct Theorem1Report {
    ExceptionalReport exceptional;
    DirichletCharacter chi;  // principal mod q, or psi induced to q when r | q
    bool r_divides_q = false;
    std::uint64_t x = 0;
    std::uint32_t q = 1;
    std::vector<Theorem1Row> rows;
    double max_normalized_residual = 0;  // max_a |residual| q / x
    double error_ref_branch_a = 0;       // (x/q) / sqrt(log A); NaN when A <= 1
    double error_ref_branch_b = 0;       // x / (q (log x)^{1/3}) + x / log x
};
Theorem1Report theorem1_report(const FunctionSpec& f, std::uint64_t x, std::uint32_t q, std::uint32_t Q, double A,
                               const PrimeTable& table);

}  // namespace mfap
