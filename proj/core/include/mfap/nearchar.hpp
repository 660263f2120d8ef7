#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mfap/characters.hpp"
#include "mfap/meanvalues.hpp"

namespace mfap {

// A function on (Z/qZ)^* with g(1) = 1, together with
//   epsilon = max over unit pairs (a, b) of |g(ab) - g(a) g(b)|.
class ApproxHomomorphism {
public:
    // values[a] for a in [0, q); entries at non-units are ignored.
    ApproxHomomorphism(std::uint32_t q, std::vector<std::complex<double>> values);

    std::uint32_t modulus() const { return q_; }
    const std::complex<double>& operator()(std::uint64_t a) const { return values_[a % q_]; }
    const std::vector<std::complex<double>>& values() const { return values_; }
    double epsilon() const { return epsilon_; }

private:
    std::uint32_t q_;
    std::vector<std::complex<double>> values_;
    double epsilon_ = 0;
};

// sum over units a of g(a) conj(chi(a))
std::complex<double> fourier_transform(const ApproxHomomorphism& g, const DirichletCharacter& chi);

struct RecoveryResult {
    DirichletCharacter chi;
    double epsilon;
    double fourier_mass;  // |g^(chi)|
    double bound;         // epsilon / (1 - 2 epsilon)
    double measured;      // max over units of |chi(a) - g(a)|
};

// The character maximizing |g^(chi)| (smallest canonical index on ties).
// Throws PreconditionError when epsilon >= 1/2, and TheoremViolation if the
// recovery guarantee fails.
RecoveryResult nearest_character(const ApproxHomomorphism& g);

// g(a) = F(x;q,a) / F(x;q,1), then nearest_character.
RecoveryResult character_from_progression_sums(const ProgressionTable& table);

}  // namespace mfap
