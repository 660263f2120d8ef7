#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mfap/arith.hpp"
#include "mfap/characters.hpp"
#include "mfap/function_spec.hpp"

namespace mfap {

// D_r(f, g; x)^2 = sum over p <= x, p not dividing r, of (1 - Re f(p) conj g(p)) / p.
struct DistanceResult {
    double squared_distance = 0;
    std::uint64_t x = 0;
    std::uint64_t excluded_modulus = 1;
    std::size_t prime_count = 0;  // primes that contributed a term
};

DistanceResult distance_squared(const FunctionSpec& f, const FunctionSpec& g, std::uint64_t x,
                                std::uint64_t r, const PrimeTable& table);
DistanceResult distance_squared(const MultiplicativeFunction& f, const MultiplicativeFunction& g,
                                std::uint64_t x, std::uint64_t r, const PrimeTable& table);
// The individual summands, in increasing order of p (excluded primes omitted).
std::vector<double> distance_terms(const MultiplicativeFunction& f, const MultiplicativeFunction& g,
                                   std::uint64_t x, std::uint64_t r, const PrimeTable& table);

// Sampling used when minimizing t -> D(f, psi(n) n^{it}; x)^2 over |t| <= A:
// grid spacing pi/(4 log x), then golden-section refinement to 1e-6.
struct TwistGrid {
    double spacing = 0;
    std::size_t points = 0;
    double refine_tolerance = 1e-6;
};
TwistGrid twist_grid(std::uint64_t x, double A);

struct TwistMinimum {
    double t = 0;
    double squared_distance = 0;
};

// min over |t| <= A of D_r(f, psi(n) n^{it}; x)^2 with r = modulus of psi.
TwistMinimum min_distance_over_t(const FunctionSpec& f, const DirichletCharacter& psi, std::uint64_t x,
                                 double A, const PrimeTable& table);
TwistMinimum min_distance_over_t(const MultiplicativeFunction& f, const DirichletCharacter& psi,
                                 std::uint64_t x, double A, const PrimeTable& table);

struct SpectrumEntry {
    DirichletCharacter character;
    double t;
    double squared_distance;
};

struct ExceptionalReport {
    DirichletCharacter psi;
    std::uint32_t r;  // conductor of psi
    double t;
    double min_squared_distance;
    std::vector<SpectrumEntry> spectrum;  // the J smallest, nondecreasing
    // run parameters
    std::uint64_t x;
    std::uint32_t Q;
    double A;
    std::size_t candidates;
    TwistGrid grid;
};

// Scans every primitive character of conductor <= Q. Ties (distances equal
// to 1e-12) go to the smaller conductor, then the smaller canonical index,
// then the smaller |t|, then t >= 0.
ExceptionalReport find_exceptional(const FunctionSpec& f, std::uint64_t x, std::uint32_t Q, double A,
                                   std::size_t J, const PrimeTable& table);

struct RepulsionEntry {
    std::size_t j;
    double squared_distance;
    double reference;  // (1 - 1/sqrt j) log log x
};
std::vector<RepulsionEntry> repulsion_spectrum(const ExceptionalReport& report, std::uint64_t x);

struct ProfilePoint {
    std::uint64_t x;
    double squared_distance;  // D_q(1, chi(n) n^{it}; x)^2
    double reference;         // (1/2) log(log x / log(q(1+|t|)))
};
std::vector<ProfilePoint> lemma34_profile(const DirichletCharacter& chi, double t,
                                          const std::vector<std::uint64_t>& xs, const PrimeTable& table);

struct RealFunctionCheck {
    bool applicable = false;
    bool psi_is_real = false;
    double t = 0;
    double min_squared_distance = 0;
    double hypothesis_threshold = 0;  // (1/16) log log x
    double t_scale = 0;               // 1/sqrt(log x)
    std::optional<DirichletCharacter> psi;
};
RealFunctionCheck real_function_check(const FunctionSpec& f, std::uint64_t x, std::uint32_t Q, double A,
                                      const PrimeTable& table);

}  // namespace mfap
