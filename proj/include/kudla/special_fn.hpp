#pragma once

#include <cmath>
#include <limits>

#include "core.hpp"

namespace kudla {

// -Ei(-t) = E1(t) = int_1^inf e^{-t r} dr / r
inline double exp_integral_neg(double t) {
    if (!(t > 0)) throw domain_error("exp_integral_neg: t must be positive");
    constexpr double eps = 1e-16;
    if (t < 1.0) {
        // -log t - gamma - sum (-t)^k / (k k!)
        double term = 1.0, sum = 0.0;
        for (int k = 1; k < 60; ++k) {
            term *= -t / k;
            double add = term / k;
            sum += add;
            if (std::abs(add) < eps * std::abs(sum)) break;
        }
        return -std::log(t) - euler_gamma - sum;
    }
    if (t > 740.0) return 0.0;
    // modified Lentz on the even continued fraction
    constexpr double tiny = 1e-300;
    double b = t + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h * std::exp(-t);
}

inline double erfc(double x) { return std::erfc(x); }
inline double erf(double x) { return std::erf(x); }

namespace detail {
// 1 - sqrt(pi) x erfcx(x) for large x, asymptotic; terms shrink while k < x^2.
inline double one_minus_sqrtpi_x_erfcx_asym(double x) {
    double inv = 1.0 / (2.0 * x * x);
    double term = 1.0, sum = 0.0;
    for (int k = 1; k < 40; ++k) {
        term *= -(2.0 * k - 1.0) * inv;
        sum -= term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}
}  // namespace detail

// exp(x^2) erfc(x)
inline double erfcx(double x) {
    if (x < 25.0) return std::exp(x * x) * std::erfc(x);
    return (1.0 - detail::one_minus_sqrtpi_x_erfcx_asym(x)) / (std::sqrt(pi) * x);
}

// B(alpha) = int_1^inf e^{-alpha u} u^{-3/2} du
inline double cap_b(double alpha) {
    if (!(alpha >= 0)) throw domain_error("cap_b: alpha must be nonnegative");
    if (alpha == 0.0) return 2.0;
    if (alpha < 1e-12) return 2.0 - 2.0 * std::sqrt(pi * alpha);
    double x = std::sqrt(alpha);
    if (alpha <= 1.0) return 2.0 * (std::exp(-alpha) - std::sqrt(pi) * x * std::erfc(x));
    // same closed form, factored as e^{-alpha}(1 - sqrt(pi) x erfcx(x))
    double g = x < 25.0 ? 1.0 - std::sqrt(pi) * x * erfcx(x) : detail::one_minus_sqrtpi_x_erfcx_asym(x);
    return 2.0 * std::exp(-alpha) * g;
}

// e^{alpha} B(alpha), finite for all alpha >= 0.
inline double cap_b_scaled(double alpha) {
    if (!(alpha >= 0)) throw domain_error("cap_b_scaled: alpha must be nonnegative");
    if (alpha <= 1.0) return std::exp(alpha) * cap_b(alpha);
    double x = std::sqrt(alpha);
    double g = x < 25.0 ? 1.0 - std::sqrt(pi) * x * erfcx(x) : detail::one_minus_sqrtpi_x_erfcx_asym(x);
    return 2.0 * g;
}

inline double beta_hz(double x) {
    if (!(x >= 0)) throw domain_error("beta_hz: x must be nonnegative");
    return cap_b(x) / (16.0 * pi);
}

}  // namespace kudla
