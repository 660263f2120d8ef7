#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace mfap {

struct ConstantValue {
    std::string name;
    double value;
    std::string method;
    double estimated_error;
};

// Adaptive Simpson quadrature with Richardson correction.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tolerance,
                        int max_depth = 50);

// Li_2(z) for real z in [-1, 1] by its power series.
double dilog_series(double z);

// 1 - 2 log(1 + sqrt e) + 4 int_1^{sqrt e} log t / (t + 1) dt. The integral
// is computed by adaptive Simpson and, independently, from the closed form
// log t log(1+t) + Li_2(-t); the two must agree to the tolerance.
ConstantValue delta1(double tolerance = 1e-12);
// (1 + delta1) / 2
ConstantValue delta0();
// The two routes separately, for cross-checking.
double delta1_by_quadrature(double tolerance);
double delta1_by_dilogarithm();

// 1 - 1/(m sin(pi/2m)) for odd m, 1 - 1/(m tan(pi/2m)) for even m.
double lemma33_constant(std::uint64_t m);
// The limiting value 1 - 2/pi.
double lemma33_constant_continuous();

struct Lemma33Minimum {
    double value;
    std::optional<std::uint64_t> argmin;  // empty when the continuous value wins
};
Lemma33Minimum lemma33_minimum(std::uint64_t max_m);

}  // namespace mfap
