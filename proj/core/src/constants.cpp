#include "mfap/constants.hpp"

#include <cmath>
#include <numbers>

#include "mfap/errors.hpp"

namespace mfap {

namespace {

double simpson(double fa, double fm, double fb, double a, double b) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); }

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, a, m), right = simpson(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double log_over_t_plus_one(double t) { return std::log(t) / (t + 1.0); }

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tolerance, int max_depth) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return simpson_step(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tolerance, max_depth);
}

double dilog_series(double z) {
    require(std::abs(z) <= 1.0, "dilog_series: |z| must be <= 1");
    double sum = 0, power = 1;
    for (int k = 1; k < 100000; ++k) {
        power *= z;
        const double term = power / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18) break;
    }
    return sum;
}

double delta1_by_quadrature(double tolerance) {
    const double s = std::sqrt(std::numbers::e);
    const double integral = adaptive_simpson(log_over_t_plus_one, 1.0, s, tolerance / 4.0);
    return 1.0 - 2.0 * std::log1p(s) + 4.0 * integral;
}

double delta1_by_dilogarithm() {
    // int_1^s log t/(1+t) dt = log s log(1+s) + Li2(-s) - Li2(-1), with
    // Li2(-s) = -pi^2/6 - (log s)^2/2 - Li2(-1/s) and Li2(-1) = -pi^2/12.
    const double s = std::sqrt(std::numbers::e);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double log_s = 0.5;
    const double li2_minus_s = -pi2 / 6.0 - 0.5 * log_s * log_s - dilog_series(-1.0 / s);
    const double integral = log_s * std::log1p(s) + li2_minus_s + pi2 / 12.0;
    return 1.0 - 2.0 * std::log1p(s) + 4.0 * integral;
}

ConstantValue delta1(double tolerance) {
    require(tolerance >= 1e-12, "delta1: tolerance must be >= 1e-12");
    const double quad = delta1_by_quadrature(tolerance / 10.0);
    const double closed = delta1_by_dilogarithm();
    const double err = std::abs(quad - closed);
    if (err > tolerance) throw TheoremViolation("delta1: quadrature and dilogarithm routes disagree");
    return {"delta1", quad, "adaptive Simpson, cross-checked against the dilogarithm closed form", err};
}

ConstantValue delta0() {
    const auto d1 = delta1(1e-12);
    return {"delta0", 0.5 * (1.0 + d1.value), "(1 + delta1) / 2", 0.5 * d1.estimated_error};
}

double lemma33_constant(std::uint64_t m) {
    require(m >= 2, "lemma33_constant: m must be >= 2");
    const double md = static_cast<double>(m);
    const double angle = std::numbers::pi / (2.0 * md);
    return (m % 2 == 1) ? 1.0 - 1.0 / (md * std::sin(angle)) : 1.0 - 1.0 / (md * std::tan(angle));
}

double lemma33_constant_continuous() { return 1.0 - 2.0 / std::numbers::pi; }

Lemma33Minimum lemma33_minimum(std::uint64_t max_m) {
    require(max_m >= 2, "lemma33_minimum: max_m must be >= 2");
    Lemma33Minimum best{lemma33_constant_continuous(), std::nullopt};
    for (std::uint64_t m = 2; m <= max_m; ++m) {
        const double v = lemma33_constant(m);
        if (v < best.value) best = {v, m};
    }
    return best;
}

}  // namespace mfap
