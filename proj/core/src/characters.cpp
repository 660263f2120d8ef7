#include "mfap/characters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "mfap/arith.hpp"
#include "mfap/errors.hpp"

namespace mfap {

namespace {

std::uint32_t primitive_root_mod_prime(std::uint32_t p) {
    if (p == 2) return 1;
    const auto factors = factorize_small(p - 1).factors;
    for (std::uint32_t g = 2;; ++g) {
        bool ok = true;
        for (auto [l, e] : factors)
            if (mod_pow(g, (p - 1) / l, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
}

// x = r mod m, x = 1 mod q/m.
std::uint32_t crt_lift(std::uint64_t r, std::uint64_t m, std::uint64_t q) {
    const std::uint64_t rest = q / m;
    if (rest == 1) return static_cast<std::uint32_t>(r % m);
    // x = 1 + rest * k, rest * k = r - 1 mod m
    const std::uint64_t inv = mod_inverse(rest % m, m);
    const std::uint64_t k = ((r + m - 1) % m) * inv % m;
    return static_cast<std::uint32_t>((1 + rest * k) % q);
}

}  // namespace

CharacterValue CharacterValue::root(std::uint64_t numerator, std::uint64_t denominator) {
    numerator %= denominator;
    const std::uint64_t g = std::gcd(numerator, denominator);
    CharacterValue v;
    v.nonzero = true;
    v.numerator = static_cast<std::uint32_t>(numerator / g);
    v.denominator = static_cast<std::uint32_t>(denominator / g);
    return v;
}

std::complex<double> CharacterValue::to_complex() const {
    if (!nonzero) return {0.0, 0.0};
    return root_of_unity(numerator, denominator);
}

std::complex<double> root_of_unity(std::uint64_t k, std::uint64_t n) {
    k %= n;
    if ((4 * k) % n == 0) {
        switch (4 * k / n) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

UnitGroup::UnitGroup(std::uint32_t q) : q_(q) {
    require(q >= 1 && q <= DirichletCharacter::kMaxModulus,
            "modulus must lie in [1, 10000], got " + std::to_string(q));

    for (auto [p64, e] : factorize_small(q).factors) {
        const auto p = static_cast<std::uint32_t>(p64);
        std::uint32_t pe = 1;
        for (std::uint32_t i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e >= 2) components_.push_back({crt_lift(pe - 1, pe, q), 2, 2, pe});
            if (e >= 3) components_.push_back({crt_lift(5, pe, q), pe / 4, 2, pe});
            continue;
        }
        std::uint64_t g = primitive_root_mod_prime(p);
        if (e >= 2 && mod_pow(g, p - 1, std::uint64_t(p) * p) == 1) g += p;
        components_.push_back({crt_lift(g, pe, q), pe / p * (p - 1), p, pe});
    }

    for (const auto& c : components_) {
        phi_ *= c.order;
        exponent_ = std::lcm(exponent_, c.order);
    }

    const std::size_t k = rank();
    index_of_.assign(q_, -1);
    dlog_row_.assign(q_, 0);
    std::vector<std::uint32_t> elements{1 % q_};
    std::vector<std::uint32_t> tuples;  // elements.size() x k, filled column by column
    std::vector<std::vector<std::uint32_t>> exps(1);
    for (const auto& c : components_) {
        std::vector<std::uint32_t> next;
        std::vector<std::vector<std::uint32_t>> next_exps;
        next.reserve(elements.size() * c.order);
        for (std::size_t i = 0; i < elements.size(); ++i) {
            std::uint64_t x = elements[i];
            for (std::uint32_t j = 0; j < c.order; ++j) {
                next.push_back(static_cast<std::uint32_t>(x));
                auto ex = exps[i];
                ex.push_back(j);
                next_exps.push_back(std::move(ex));
                x = x * c.generator % q_;
            }
        }
        elements = std::move(next);
        exps = std::move(next_exps);
    }
    if (elements.size() != phi_ || phi_ != euler_phi(q_))
        throw std::logic_error("unit group construction failed for q = " + std::to_string(q_));

    // elements[i] has mixed-radix index i by construction.
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (index_of_[elements[i]] != -1)
            throw std::logic_error("generators are dependent for q = " + std::to_string(q_));
        index_of_[elements[i]] = static_cast<std::int32_t>(i);
    }
    for (std::uint32_t a = 0; a < q_; ++a)
        if (index_of_[a] >= 0) units_.push_back(a);
    if (q_ == 1) {
        units_ = {0};
        index_of_[0] = 0;
    }
    dlog_.resize(units_.size() * k);
    for (std::size_t row = 0; row < units_.size(); ++row) {
        const std::uint32_t a = units_[row];
        dlog_row_[a] = static_cast<std::uint32_t>(row);
        const auto& ex = exps[static_cast<std::size_t>(index_of_[a])];
        std::copy(ex.begin(), ex.end(), dlog_.begin() + static_cast<std::ptrdiff_t>(row * k));
    }

    for (auto d : divisors(q_)) {
        divisors_.push_back(static_cast<std::uint32_t>(d));
        std::vector<std::uint32_t> kernel;
        for (auto a : units_)
            if (a % d == 1 % d) kernel.push_back(a);
        kernels_.push_back(std::move(kernel));
    }

    roots_.resize(exponent_);
    for (std::uint32_t j = 0; j < exponent_; ++j) roots_[j] = root_of_unity(j, exponent_);
}

std::span<const std::uint32_t> UnitGroup::discrete_log(std::uint64_t a) const {
    a %= q_;
    require(index_of_[a] >= 0, "discrete_log: argument is not a unit");
    return {dlog_.data() + std::size_t{dlog_row_[a]} * rank(), rank()};
}

std::uint32_t UnitGroup::element(std::span<const std::uint32_t> exponents) const {
    require(exponents.size() == rank(), "element: exponent tuple has wrong length");
    std::uint64_t x = 1 % q_;
    for (std::size_t j = 0; j < rank(); ++j)
        x = x * mod_pow(components_[j].generator, exponents[j], q_) % q_;
    return static_cast<std::uint32_t>(x);
}

std::span<const std::uint32_t> UnitGroup::reduction_kernel(std::uint32_t d) const {
    auto it = std::lower_bound(divisors_.begin(), divisors_.end(), d);
    require(it != divisors_.end() && *it == d, "reduction_kernel: d must divide q");
    return kernels_[static_cast<std::size_t>(it - divisors_.begin())];
}

std::shared_ptr<const UnitGroup> unit_group(std::uint32_t q) {
    static std::mutex mutex;
    static std::map<std::uint32_t, std::shared_ptr<const UnitGroup>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(q); it != cache.end()) return it->second;
    }
    auto group = std::make_shared<const UnitGroup>(q);
    std::lock_guard lock(mutex);
    return cache.emplace(q, std::move(group)).first->second;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const UnitGroup> group,
                                       std::vector<std::uint32_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
    const auto& comps = group_->components();
    require(exponents_.size() == comps.size(), "character exponent tuple has wrong length");
    const std::uint32_t L = group_->exponent();
    weights_.resize(comps.size());
    order_ = 1;
    for (std::size_t j = 0; j < comps.size(); ++j) {
        require(exponents_[j] < comps[j].order, "character exponent out of range");
        index_ = index_ * comps[j].order + exponents_[j];
        weights_[j] = static_cast<std::uint32_t>(std::uint64_t{exponents_[j]} * (L / comps[j].order) % L);
        order_ = std::lcm(order_, comps[j].order / std::gcd(exponents_[j], comps[j].order));
    }
    // Least d | q such that chi is trivial on the units = 1 mod d.
    conductor_ = group_->modulus();
    for (std::uint32_t d : divisors(group_->modulus())) {
        bool trivial = true;
        for (auto a : group_->reduction_kernel(static_cast<std::uint32_t>(d)))
            if (angle(a) != 0) {
                trivial = false;
                break;
            }
        if (trivial) {
            conductor_ = static_cast<std::uint32_t>(d);
            break;
        }
    }
}

DirichletCharacter DirichletCharacter::from_index(std::uint32_t q, std::uint64_t index) {
    auto group = unit_group(q);
    require(index < group->order(), "character index " + std::to_string(index) +
                                        " out of range for modulus " + std::to_string(q));
    std::vector<std::uint32_t> ex(group->rank());
    for (std::size_t j = group->rank(); j-- > 0;) {
        const auto ord = group->components()[j].order;
        ex[j] = static_cast<std::uint32_t>(index % ord);
        index /= ord;
    }
    return DirichletCharacter(std::move(group), std::move(ex));
}

DirichletCharacter DirichletCharacter::principal(std::uint32_t q) { return from_index(q, 0); }

std::uint32_t DirichletCharacter::angle(std::uint64_t a) const {
    const auto logs = group_->discrete_log(a);
    const std::uint64_t L = group_->exponent();
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < logs.size(); ++j) s += std::uint64_t{weights_[j]} * logs[j];
    return static_cast<std::uint32_t>(s % L);
}

CharacterValue DirichletCharacter::value(std::uint64_t n) const {
    if (!group_->is_unit(n)) return CharacterValue::zero();
    return CharacterValue::root(angle(n), group_->exponent());
}

std::complex<double> DirichletCharacter::operator()(std::uint64_t n) const {
    if (!group_->is_unit(n)) return {0.0, 0.0};
    return group_->root(angle(n));
}

DirichletCharacter DirichletCharacter::conjugate() const {
    std::vector<std::uint32_t> ex(exponents_.size());
    for (std::size_t j = 0; j < ex.size(); ++j) {
        const auto ord = group_->components()[j].order;
        ex[j] = (ord - exponents_[j]) % ord;
    }
    return {group_, std::move(ex)};
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& other) const {
    require(other.modulus() == modulus(), "character product needs equal moduli");
    std::vector<std::uint32_t> ex(exponents_.size());
    for (std::size_t j = 0; j < ex.size(); ++j)
        ex[j] = (exponents_[j] + other.exponents_[j]) % group_->components()[j].order;
    return {group_, std::move(ex)};
}

DirichletCharacter DirichletCharacter::pow(std::uint64_t m) const {
    std::vector<std::uint32_t> ex(exponents_.size());
    for (std::size_t j = 0; j < ex.size(); ++j) {
        const auto ord = group_->components()[j].order;
        ex[j] = static_cast<std::uint32_t>((m % ord) * exponents_[j] % ord);
    }
    return {group_, std::move(ex)};
}

std::string DirichletCharacter::to_string() const {
    return "char:" + std::to_string(modulus()) + ":" + std::to_string(index_);
}

std::vector<DirichletCharacter> enumerate_characters(std::uint32_t q) {
    auto group = unit_group(q);
    std::vector<DirichletCharacter> out;
    out.reserve(group->order());
    for (std::uint64_t i = 0; i < group->order(); ++i) out.push_back(DirichletCharacter::from_index(q, i));
    return out;
}

std::vector<DirichletCharacter> primitive_characters(std::uint32_t q) {
    auto all = enumerate_characters(q);
    std::vector<DirichletCharacter> out;
    for (auto& chi : all)
        if (chi.is_primitive()) out.push_back(std::move(chi));
    return out;
}

CharacterValue evaluate_character(const DirichletCharacter& chi, std::uint64_t n) { return chi.value(n); }

std::uint32_t conductor(const DirichletCharacter& chi) { return chi.conductor(); }

DirichletCharacter primitive_part(const DirichletCharacter& chi) {
    const std::uint32_t q = chi.modulus();
    const std::uint32_t d = chi.conductor();
    if (d == q) return chi;
    auto target = unit_group(d);
    const std::uint64_t Lq = chi.group().exponent();
    std::vector<std::uint32_t> ex(target->rank());
    for (std::size_t j = 0; j < target->rank(); ++j) {
        const auto& comp = target->components()[j];
        std::uint64_t b = comp.generator;
        while (std::gcd(b, std::uint64_t{q}) != 1) b += d;
        const std::uint64_t k = chi.angle(b);
        if ((k * comp.order) % Lq != 0)
            throw std::logic_error("primitive_part: value is not an ord_j-th root of unity");
        ex[j] = static_cast<std::uint32_t>(k * comp.order / Lq % comp.order);
    }
    DirichletCharacter psi(std::move(target), std::move(ex));
    for (auto a : chi.group().units())
        if (psi.value(a) != chi.value(a))
            throw std::logic_error("primitive_part: induced character disagrees with " + chi.to_string());
    if (!psi.is_primitive())
        throw std::logic_error("primitive_part: result is not primitive for " + chi.to_string());
    return psi;
}

DirichletCharacter induce(const DirichletCharacter& psi, std::uint32_t q) {
    require(q % psi.conductor() == 0, "induce: conductor " + std::to_string(psi.conductor()) +
                                          " does not divide " + std::to_string(q));
    const DirichletCharacter base = primitive_part(psi);
    auto target = unit_group(q);
    const std::uint64_t Ld = base.group().exponent();
    std::vector<std::uint32_t> ex(target->rank());
    for (std::size_t j = 0; j < target->rank(); ++j) {
        const auto& comp = target->components()[j];
        const std::uint64_t k = base.angle(comp.generator);
        ex[j] = static_cast<std::uint32_t>(k * comp.order / Ld % comp.order);
    }
    return {std::move(target), std::move(ex)};
}

DirichletCharacter parse_character(const std::string& text) {
    const auto fail = [&] { return ParseError("expected char:q:index, got '" + text + "'"); };
    if (text.rfind("char:", 0) != 0) throw fail();
    const auto colon = text.find(':', 5);
    if (colon == std::string::npos) throw fail();
    try {
        std::size_t used = 0;
        const auto q_text = text.substr(5, colon - 5);
        const auto i_text = text.substr(colon + 1);
        const unsigned long long q = std::stoull(q_text, &used);
        if (used != q_text.size()) throw fail();
        const unsigned long long index = std::stoull(i_text, &used);
        if (used != i_text.size()) throw fail();
        if (q < 1 || q > DirichletCharacter::kMaxModulus)
            throw PreconditionError("character modulus must lie in [1, 10000]");
        return DirichletCharacter::from_index(static_cast<std::uint32_t>(q), index);
    } catch (const std::invalid_argument&) {
        throw fail();
    } catch (const std::out_of_range&) {
        throw fail();
    }
}

}  // namespace mfap
