#include "mfap/pretension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <tuple>

#include "mfap/errors.hpp"
#include "mfap/parallel.hpp"

namespace mfap {

namespace {

constexpr double kTieQuantum = 1e-12;
constexpr std::size_t kMaxRefinements = 4;
// Grid values can sit this far above the true minimum of their cell.
constexpr double kRefineWindow = 0.25;

// Precomputed sum over primes of w_p e^{-it log p}, where
// D^2(t) = base - Re sum_p w_p e^{-it log p}.
struct TwistedPrimeSum {
    std::vector<std::complex<double>> weights;
    std::vector<double> logs;
    double base = 0;

    double at(double t) const {
        double s = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            const double a = t * logs[i];
            s += weights[i].real() * std::cos(a) + weights[i].imag() * std::sin(a);
        }
        return base - s;
    }

    // D^2 at t_k = start + k*h, k = 0..count-1.
    std::vector<double> on_grid(double start, double h, std::size_t count) const {
        constexpr std::size_t kResync = 64;
        std::vector<std::complex<double>> acc(count);
        for (std::size_t i = 0; i < weights.size(); ++i) {
            const double lp = logs[i];
            const std::complex<double> step = std::polar(1.0, -h * lp);
            std::complex<double> z;
            for (std::size_t k = 0; k < count; ++k) {
                if (k % kResync == 0) z = std::polar(1.0, -(start + k * h) * lp);
                acc[k] += weights[i] * z;
                z *= step;
            }
        }
        std::vector<double> out(count);
        for (std::size_t k = 0; k < count; ++k) out[k] = base - acc[k].real();
        return out;
    }
};

TwistedPrimeSum twisted_prime_sum(const MultiplicativeFunction& f, const DirichletCharacter& psi,
                                  std::uint64_t x, const PrimeTable& table) {
    TwistedPrimeSum s;
    for (std::uint64_t p : table.primes_up_to(x)) {
        if (psi.modulus() % p == 0) continue;
        const double inv = 1.0 / static_cast<double>(p);
        s.base += inv;
        s.weights.push_back(f.at_prime(p) * std::conj(psi(p)) * inv);
        s.logs.push_back(std::log(static_cast<double>(p)));
    }
    return s;
}

// smaller |t| first, then t >= 0
bool prefer_t(double a, double b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return a >= 0 && b < 0;
}

bool better(const TwistMinimum& a, const TwistMinimum& b) {
    const auto ka = std::llround(a.squared_distance / kTieQuantum);
    const auto kb = std::llround(b.squared_distance / kTieQuantum);
    if (ka != kb) return ka < kb;
    return prefer_t(a.t, b.t);
}

TwistMinimum golden_section(const TwistedPrimeSum& s, double lo, double hi, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - invphi * (hi - lo), d = lo + invphi * (hi - lo);
    double fc = s.at(c), fd = s.at(d);
    while (hi - lo > tol) {
        if (fc <= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invphi * (hi - lo);
            fc = s.at(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invphi * (hi - lo);
            fd = s.at(d);
        }
    }
    const double t = 0.5 * (lo + hi);
    return {t, s.at(t)};
}

TwistMinimum minimize(const TwistedPrimeSum& s, std::uint64_t x, double A) {
    const TwistGrid grid = twist_grid(x, A);
    const std::size_t n = grid.points;
    const double h = n > 1 ? 2.0 * A / static_cast<double>(n - 1) : 0.0;
    const auto values = s.on_grid(-A, h, n);
    const auto t_at = [&](std::size_t k) { return k + 1 == n ? A : -A + static_cast<double>(k) * h; };

    // local minima of the grid, best first
    std::vector<std::size_t> minima;
    for (std::size_t k = 0; k < n; ++k) {
        const bool left = k == 0 || values[k] <= values[k - 1];
        const bool right = k + 1 == n || values[k] <= values[k + 1];
        if (left && right) minima.push_back(k);
    }
    std::sort(minima.begin(), minima.end(), [&](std::size_t a, std::size_t b) {
        return better({t_at(a), values[a]}, {t_at(b), values[b]});
    });

    TwistMinimum best{t_at(minima.front()), values[minima.front()]};
    const double cutoff = best.squared_distance + kRefineWindow;
    for (std::size_t i = 0; i < minima.size() && i < kMaxRefinements; ++i) {
        const std::size_t k = minima[i];
        if (values[k] > cutoff) break;
        const double lo = std::max(-A, t_at(k) - h), hi = std::min(A, t_at(k) + h);
        TwistMinimum cand = golden_section(s, lo, hi, grid.refine_tolerance);
        const TwistMinimum grid_point{t_at(k), s.at(t_at(k))};
        if (better(grid_point, cand)) cand = grid_point;
        if (better(cand, best)) best = cand;
    }
    return best;
}

}  // namespace

DistanceResult distance_squared(const MultiplicativeFunction& f, const MultiplicativeFunction& g,
                                std::uint64_t x, std::uint64_t r, const PrimeTable& table) {
    require(x <= table.limit(), "distance: x = " + std::to_string(x) + " exceeds the prime table limit");
    require(r >= 1, "distance: excluded modulus r must be >= 1");
    DistanceResult out;
    out.x = x;
    out.excluded_modulus = r;
    for (double term : distance_terms(f, g, x, r, table)) {
        out.squared_distance += term;
        ++out.prime_count;
    }
    return out;
}

DistanceResult distance_squared(const FunctionSpec& f, const FunctionSpec& g, std::uint64_t x,
                                std::uint64_t r, const PrimeTable& table) {
    return distance_squared(MultiplicativeFunction(f), MultiplicativeFunction(g), x, r, table);
}

std::vector<double> distance_terms(const MultiplicativeFunction& f, const MultiplicativeFunction& g,
                                   std::uint64_t x, std::uint64_t r, const PrimeTable& table) {
    require(x <= table.limit(), "distance: x exceeds the prime table limit");
    std::vector<double> terms;
    for (std::uint64_t p : table.primes_up_to(x)) {
        if (r % p == 0) continue;
        terms.push_back((1.0 - (f.at_prime(p) * std::conj(g.at_prime(p))).real()) / static_cast<double>(p));
    }
    return terms;
}

TwistGrid twist_grid(std::uint64_t x, double A) {
    require(A > 0, "t-range A must be positive");
    TwistGrid g;
    const double lx = std::log(std::max<double>(static_cast<double>(x), 3.0));
    g.spacing = std::numbers::pi / (4.0 * lx);
    g.points = static_cast<std::size_t>(std::ceil(2.0 * A / g.spacing)) + 1;
    return g;
}

TwistMinimum min_distance_over_t(const MultiplicativeFunction& f, const DirichletCharacter& psi,
                                 std::uint64_t x, double A, const PrimeTable& table) {
    require(x <= table.limit(), "min_distance_over_t: x exceeds the prime table limit");
    require(A > 0, "min_distance_over_t: A must be positive");
    return minimize(twisted_prime_sum(f, psi, x, table), x, A);
}

TwistMinimum min_distance_over_t(const FunctionSpec& f, const DirichletCharacter& psi, std::uint64_t x,
                                 double A, const PrimeTable& table) {
    return min_distance_over_t(MultiplicativeFunction(f), psi, x, A, table);
}

ExceptionalReport find_exceptional(const FunctionSpec& f, std::uint64_t x, std::uint32_t Q, double A,
                                   std::size_t J, const PrimeTable& table) {
    require(Q >= 1 && Q <= DirichletCharacter::kMaxModulus, "find_exceptional: Q must lie in [1, 10000]");
    require(x <= table.limit(), "find_exceptional: x exceeds the prime table limit");
    require(A > 0, "find_exceptional: A must be positive");
    require(J >= 1, "find_exceptional: spectrum depth J must be >= 1");

    std::vector<DirichletCharacter> candidates;
    for (std::uint32_t r = 1; r <= Q; ++r)
        for (auto& psi : primitive_characters(r)) candidates.push_back(std::move(psi));

    const MultiplicativeFunction fn(f);
    std::vector<TwistMinimum> minima(candidates.size());
    parallel_for(candidates.size(), [&](std::size_t i) {
        minima[i] = min_distance_over_t(fn, candidates[i], x, A, table);
    });

    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    const auto key = [&](std::size_t i) {
        return std::make_tuple(std::llround(minima[i].squared_distance / kTieQuantum), candidates[i].conductor(),
                               candidates[i].index(), std::abs(minima[i].t), minima[i].t < 0);
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

    const std::size_t best = order.front();
    ExceptionalReport report{candidates[best],
                             candidates[best].conductor(),
                             minima[best].t,
                             minima[best].squared_distance,
                             {},
                             x,
                             Q,
                             A,
                             candidates.size(),
                             twist_grid(x, A)};
    for (std::size_t j = 0; j < order.size() && j < J; ++j) {
        const std::size_t i = order[j];
        report.spectrum.push_back({candidates[i], minima[i].t, minima[i].squared_distance});
    }
    return report;
}

std::vector<RepulsionEntry> repulsion_spectrum(const ExceptionalReport& report, std::uint64_t x) {
    require(report.spectrum.size() >= 2, "repulsion_spectrum: needs a report computed with J >= 2");
    const double loglog = std::log(std::log(static_cast<double>(x)));
    std::vector<RepulsionEntry> out;
    for (std::size_t j = 1; j <= report.spectrum.size(); ++j)
        out.push_back({j, report.spectrum[j - 1].squared_distance,
                       (1.0 - 1.0 / std::sqrt(static_cast<double>(j))) * loglog});
    return out;
}

std::vector<ProfilePoint> lemma34_profile(const DirichletCharacter& chi, double t,
                                          const std::vector<std::uint64_t>& xs, const PrimeTable& table) {
    require(!chi.is_principal(), "lemma34_profile: character must be non-principal");
    require(chi.modulus() >= 3, "lemma34_profile: modulus must be >= 3");
    std::vector<std::uint64_t> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    require(sorted.empty() || sorted.back() <= table.limit(), "lemma34_profile: x exceeds the prime table limit");

    const double q = chi.modulus();
    const double scale = std::log(q * (1.0 + std::abs(t)));
    std::vector<ProfilePoint> out;
    double sum = 0;
    auto primes = table.primes_up_to(sorted.empty() ? 0 : sorted.back());
    std::size_t i = 0;
    for (std::uint64_t x : sorted) {
        for (; i < primes.size() && primes[i] <= x; ++i) {
            const std::uint64_t p = primes[i];
            if (chi.modulus() % p == 0) continue;
            const double a = -t * std::log(static_cast<double>(p));
            const auto twisted = std::conj(chi(p)) * std::complex<double>(std::cos(a), std::sin(a));
            sum += (1.0 - twisted.real()) / static_cast<double>(p);
        }
        out.push_back({x, sum, 0.5 * std::log(std::log(static_cast<double>(x)) / scale)});
    }
    return out;
}

RealFunctionCheck real_function_check(const FunctionSpec& f, std::uint64_t x, std::uint32_t Q, double A,
                                      const PrimeTable& table) {
    require(f.is_real_valued(), "real_function_check: f must be real-valued");
    RealFunctionCheck out;
    const double lx = std::log(static_cast<double>(x));
    out.hypothesis_threshold = std::log(lx) / 16.0;
    out.t_scale = 1.0 / std::sqrt(lx);
    const auto report = find_exceptional(f, x, Q, A, 1, table);
    out.min_squared_distance = report.min_squared_distance;
    out.t = report.t;
    out.psi = report.psi;
    out.applicable = report.min_squared_distance <= out.hypothesis_threshold;
    out.psi_is_real = out.applicable && report.psi.is_real();
    return out;
}

}  // namespace mfap
