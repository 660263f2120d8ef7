#include "mfap/nearchar.hpp"

#include <algorithm>
#include <cmath>

#include "mfap/errors.hpp"
#include "mfap/parallel.hpp"

namespace mfap {

namespace {
constexpr double kSlack = 1e-9;
}

ApproxHomomorphism::ApproxHomomorphism(std::uint32_t q, std::vector<std::complex<double>> values)
    : q_(q), values_(std::move(values)) {
    require(values_.size() == q_, "g needs one value per residue mod q");
    const auto group = unit_group(q_);
    require(std::abs(values_[1 % q_] - 1.0) <= 1e-12, "g(1) must equal 1");
    for (auto a : group->units())
        require(std::isfinite(values_[a].real()) && std::isfinite(values_[a].imag()), "g has a non-finite value");
    const auto units = group->units();
    for (auto a : units)
        for (auto b : units) {
            const auto ab = std::uint64_t{a} * b % q_;
            epsilon_ = std::max(epsilon_, std::abs(values_[ab] - values_[a] * values_[b]));
        }
}

std::complex<double> fourier_transform(const ApproxHomomorphism& g, const DirichletCharacter& chi) {
    require(chi.modulus() == g.modulus(), "fourier_transform: character modulus differs from q");
    std::complex<double> s;
    for (auto a : chi.group().units()) s += g(a) * std::conj(chi(a));
    return s;
}

RecoveryResult nearest_character(const ApproxHomomorphism& g) {
    const double eps = g.epsilon();
    if (eps >= 0.5)
        throw PreconditionError("epsilon = " + std::to_string(eps) + " >= 1/2; no character recovery is guaranteed");

    const auto chars = enumerate_characters(g.modulus());
    std::vector<double> mass(chars.size());
    parallel_for(chars.size(), [&](std::size_t i) { mass[i] = std::abs(fourier_transform(g, chars[i])); });
    const double top = *std::max_element(mass.begin(), mass.end());
    std::size_t best = 0;
    while (mass[best] < top - 1e-12 * std::max(1.0, top)) ++best;

    const auto& chi = chars[best];
    const double phi = chi.group().order();
    double measured = 0, norm2 = 0;
    for (auto a : chi.group().units()) {
        measured = std::max(measured, std::abs(chi(a) - g(a)));
        norm2 += std::norm(g(a));
    }
    RecoveryResult out{chi, eps, mass[best], eps / (1.0 - 2.0 * eps), measured};

    if (norm2 < (1.0 - eps) * phi - kSlack)
        throw TheoremViolation("sum |g(a)|^2 < (1 - eps) phi(q)");
    if (out.fourier_mass < (1.0 - 2.0 * eps) * phi - kSlack)
        throw TheoremViolation("max |g^(chi)| < (1 - 2 eps) phi(q)");
    if (out.measured > out.bound + kSlack)
        throw TheoremViolation("recovered character is farther than eps/(1-2eps) from g");
    return out;
}

RecoveryResult character_from_progression_sums(const ProgressionTable& table) {
    const std::uint32_t q = table.q;
    const auto F1 = table[1 % q];
    require(std::abs(F1) > 0, "F(x;q,1) = 0; g is undefined");
    std::vector<std::complex<double>> g(q);
    const auto group = unit_group(q);
    for (auto a : group->units()) g[a] = table[a] / F1;
    g[1 % q] = 1.0;
    return nearest_character(ApproxHomomorphism(q, std::move(g)));
}

}  // namespace mfap
