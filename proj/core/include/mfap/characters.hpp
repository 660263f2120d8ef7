#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace mfap {

// exp(2*pi*i * numerator/denominator), or 0. Kept as an exact fraction so
// that identities between character values can be checked without rounding.
struct CharacterValue {
    bool nonzero = false;
    std::uint32_t numerator = 0;    // reduced, in [0, denominator)
    std::uint32_t denominator = 1;

    static CharacterValue zero() { return {}; }
    static CharacterValue root(std::uint64_t numerator, std::uint64_t denominator);

    std::complex<double> to_complex() const;
    friend bool operator==(const CharacterValue&, const CharacterValue&) = default;
};

// exp(2*pi*i*k/n) with exact values on the quarter turns.
std::complex<double> root_of_unity(std::uint64_t k, std::uint64_t n);

// (Z/qZ)^* as a product of cyclic groups: one factor per odd prime power
// dividing q, and for 2^e the factors {+-1} (e >= 2) and <5> (e >= 3).
// Components are ordered by prime, with -1 before 5 for the 2-part.
class UnitGroup {
public:
    struct Component {
        std::uint32_t generator;   // residue mod q, 1 mod the other prime powers
        std::uint32_t order;
        std::uint32_t prime;
        std::uint32_t prime_power;
    };

    explicit UnitGroup(std::uint32_t q);

    std::uint32_t modulus() const { return q_; }
    std::uint32_t order() const { return phi_; }
    // Least common multiple of the component orders.
    std::uint32_t exponent() const { return exponent_; }
    const std::vector<Component>& components() const { return components_; }
    std::size_t rank() const { return components_.size(); }

    bool is_unit(std::uint64_t a) const { return index_of_[a % q_] >= 0; }
    // Units in increasing order.
    std::span<const std::uint32_t> units() const { return units_; }
    // Exponent tuple of a unit a with respect to the generators.
    std::span<const std::uint32_t> discrete_log(std::uint64_t a) const;
    // Mixed-radix position of a's exponent tuple, -1 for non-units.
    std::int32_t index_of(std::uint64_t a) const { return index_of_[a % q_]; }
    // Inverse of discrete_log.
    std::uint32_t element(std::span<const std::uint32_t> exponents) const;

    // Units congruent to 1 mod d, for d | q.
    std::span<const std::uint32_t> reduction_kernel(std::uint32_t d) const;

    // exp(2*pi*i*k/exponent()) for k in [0, exponent()).
    const std::complex<double>& root(std::uint32_t k) const { return roots_[k]; }

private:
    std::uint32_t q_;
    std::uint32_t phi_ = 1;
    std::uint32_t exponent_ = 1;
    std::vector<Component> components_;
    std::vector<std::int32_t> index_of_;
    std::vector<std::uint32_t> units_;
    std::vector<std::uint32_t> dlog_;  // units_ order x rank
    std::vector<std::uint32_t> dlog_row_;  // residue -> row in dlog_
    std::vector<std::uint32_t> divisors_;
    std::vector<std::vector<std::uint32_t>> kernels_;  // aligned with divisors_
    std::vector<std::complex<double>> roots_;
};

// Shared, lazily built unit groups. Thread-safe.
std::shared_ptr<const UnitGroup> unit_group(std::uint32_t q);

// A Dirichlet character mod q, given by the exponents e_j with
// chi(g_j) = exp(2*pi*i*e_j/ord_j) on the generators of UnitGroup.
class DirichletCharacter {
public:
    static constexpr std::uint32_t kMaxModulus = 10'000;

    DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<std::uint32_t> exponents);
    // The character at canonical position `index` mod q.
    static DirichletCharacter from_index(std::uint32_t q, std::uint64_t index);
    static DirichletCharacter principal(std::uint32_t q);

    std::uint32_t modulus() const { return group_->modulus(); }
    const UnitGroup& group() const { return *group_; }
    const std::shared_ptr<const UnitGroup>& group_ptr() const { return group_; }
    std::span<const std::uint32_t> exponents() const { return exponents_; }
    std::uint64_t index() const { return index_; }
    std::uint32_t conductor() const { return conductor_; }
    std::uint32_t order() const { return order_; }
    bool is_principal() const { return order_ == 1; }
    bool is_real() const { return order_ <= 2; }
    bool is_primitive() const { return conductor_ == modulus(); }

    // Angle numerator over group().exponent() for a unit a.
    std::uint32_t angle(std::uint64_t a) const;
    CharacterValue value(std::uint64_t n) const;
    std::complex<double> operator()(std::uint64_t n) const;

    DirichletCharacter conjugate() const;
    DirichletCharacter operator*(const DirichletCharacter& other) const;
    DirichletCharacter pow(std::uint64_t m) const;

    // `char:q:index`
    std::string to_string() const;

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.modulus() == b.modulus() && a.index_ == b.index_;
    }

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<std::uint32_t> exponents_;
    std::vector<std::uint32_t> weights_;  // exponent()/ord_j * e_j mod exponent()
    std::uint64_t index_ = 0;
    std::uint32_t conductor_ = 1;
    std::uint32_t order_ = 1;
};

// All phi(q) characters mod q, principal first, lexicographic in exponents.
std::vector<DirichletCharacter> enumerate_characters(std::uint32_t q);
// Characters mod q whose conductor is q.
std::vector<DirichletCharacter> primitive_characters(std::uint32_t q);

CharacterValue evaluate_character(const DirichletCharacter& chi, std::uint64_t n);
std::uint32_t conductor(const DirichletCharacter& chi);
// The primitive character of modulus conductor(chi) agreeing with chi on
// units mod q; the agreement is re-checked on every unit.
DirichletCharacter primitive_part(const DirichletCharacter& chi);
// The character mod q induced by the primitive part of psi.
DirichletCharacter induce(const DirichletCharacter& psi, std::uint32_t q);

// Parses `char:q:index`.
DirichletCharacter parse_character(const std::string& text);

}  // namespace mfap
