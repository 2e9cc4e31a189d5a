#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "lattice.hpp"
#include "qseries.hpp"
#include "special_fn.hpp"

namespace kudla {

struct TruncationReport {
    double value = 0;
    double tail_bound = 0;
    i64 terms_used = 0;
};

struct BoundaryProfile {
    double b_term = 0;
    double i_term = 0;
};

struct CutoffSpec {
    double t0 = 2.0, t1 = 3.0;

    CutoffSpec() = default;
    CutoffSpec(double a, double b) : t0(a), t1(b) {
        if (!(0 < t0 && t0 < t1)) throw domain_error("CutoffSpec: need 0 < t0 < t1");
    }
};

inline constexpr double on_cycle_tol = 1e-9;
inline constexpr double max_box_points = 2e7;

inline double xi_point(double v, const PointH2& z, const LatMat& M) {
    double R = r_kernel(z, M);
    if (R < on_cycle_tol) throw on_cycle_error(M, "xi_point: z lies on the cycle of " + M.str());
    return exp_integral_neg(2.0 * pi * v * R);
}

// Gaussian majorant bound on the terms of (1/2) sum_{det M = m} -Ei(-2 pi v R) with
// majorant > radius; valid once radius >= 2m + 1/(pi v).
inline double green_tail_bound(double v, const PointH2& z, i64 m, double radius) {
    constexpr double theta = 0.5;
    const double t = z.t(), s = z.s(), k = std::sqrt(v * theta);
    const double P = (1 + t / k) * (1 + 1 / (t * k)) * (1 + s / k) * (1 + 1 / (s * k));
    return 0.5 * P * std::exp(2.0 * pi * v * double(m) - pi * v * (1 - theta) * radius);
}

inline double green_min_radius(double v, i64 m) { return std::max(0.0, 2.0 * double(m) + 1.01 / (pi * v)); }

inline double green_radius_for(double v, const PointH2& z, i64 m, double eps) {
    constexpr double theta = 0.5;
    const double t = z.t(), s = z.s(), k = std::sqrt(v * theta);
    const double P = (1 + t / k) * (1 + 1 / (t * k)) * (1 + s / k) * (1 + 1 / (s * k));
    double r = (std::log(0.5 * P / eps) + 2.0 * pi * v * double(m)) / (pi * v * (1 - theta));
    return std::max(r, green_min_radius(v, m));
}

inline double box_estimate(const PointH2& z, double radius) {
    double sr = std::sqrt(std::max(radius, 0.0)), t = z.t(), s = z.s();
    return (2 * sr / t + 1) * (2 * s * sr + 1) * (2 * sr / s + 1);
}

// (1/2) sum over det M = m, majorant <= radius (M = 0 excluded for m = 0).
inline TruncationReport green_at_radius(double v, const PointH2& z, i64 m, double radius) {
    if (!(v > 0)) throw domain_error("green: v must be positive");
    auto mats = enumerate_majorant(m, z, radius);
    for (const auto& M : mats)
        if (r_kernel(z, M) < on_cycle_tol) throw on_cycle_error(M, "z lies on T(" + std::to_string(m) + ") via " + M.str());
    double sum = chunked_sum_over<double>(mats, [&](const LatMat& M) { return xi_point(v, z, M); });
    return {0.5 * sum, green_tail_bound(v, z, m, radius), static_cast<i64>(mats.size())};
}

// Xi(v,z,m) = (1/2) sum_{det M = m} -Ei(-2 pi v R(z,M))
inline TruncationReport kudla_green(double v, const PointH2& z, i64 m, double eps) {
    if (m == 0) throw domain_error("kudla_green: m must be nonzero (see green_zero)");
    if (!(eps > 0)) throw domain_error("kudla_green: eps must be positive");
    double r = green_radius_for(v, z, m, eps);
    if (box_estimate(z, r) > max_box_points) {
        double rcap = r;
        while (rcap > green_min_radius(v, m) && box_estimate(z, rcap) > max_box_points) rcap *= 0.9;
        throw truncation_error(green_tail_bound(v, z, m, rcap), "kudla_green: eps unreachable within resource cap");
    }
    return green_at_radius(v, z, m, r);
}

// a_bc(0) = (t/sqrt v) B(pi v (b/s + c s)^2)
inline double fourier_a0(double v, double t, double s, i64 b, i64 c) {
    double w = double(b) / s + double(c) * s;
    return t / std::sqrt(v) * cap_b(pi * v * w * w);
}

struct FourierCoeff {
    double full = 0;      // a_bc(n)
    double modified = 0;  // a_bc(n) - e^{-2 pi y |n|}/|n|
};

inline FourierCoeff fourier_coeff(double v, double t, double y, i64 n) {
    if (n == 0) throw domain_error("fourier_an: n must be nonzero");
    if (!(v > 0 && t > 0 && y >= 0)) throw domain_error("fourier_an: invalid parameters");
    const double an = std::abs(double(n));
    const double ap = std::sqrt(pi) * t * an / std::sqrt(v) + std::sqrt(pi * v) * y / t;
    const double am = std::sqrt(pi) * t * an / std::sqrt(v) - std::sqrt(pi * v) * y / t;
    const double g = std::exp(-pi * t * t * an * an / v - pi * v * y * y / (t * t));
    const double lead = std::exp(-2.0 * pi * y * an) / an;
    double term2 = erfcx(ap) * g / (2 * an);
    double term3 = am >= 0 ? erfcx(am) * g / (2 * an) : 0.5 * lead * std::erfc(am);
    double mod = -term2 - term3;
    return {lead + mod, mod};
}

inline double fourier_an(double v, double t, double /*s*/, double y_bold, i64 n) {
    return fourier_coeff(v, t, y_bold, n).full;
}

inline double fourier_modified(double v, double t, double y_bold, i64 n) {
    return fourier_coeff(v, t, y_bold, n).modified;
}

// Printed decay bound for the modified coefficients, with the 1/v in the exponent.
inline double modified_coeff_bound(double v, double t, i64 n) {
    double an = std::abs(double(n));
    return 2.0 * std::sqrt(v) * std::exp(-pi * t * t * an * an / v) / (pi * an * t);
}

struct BoldXY {
    double x = 0, y = 0;
};

inline BoldXY bold_coords(const PointH2& z, i64 b, i64 c) {
    return {double(b) * z.x2 + double(c) * z.x1, std::abs(double(b) * z.y2 + double(c) * z.y1)};
}

// L_bc = -2 log|1 - e^{2 pi i (x + i y)}|
inline double log_term(const PointH2& z, i64 b, i64 c) {
    auto [x, y] = bold_coords(z, b, c);
    if (!(y > 0)) throw singular_error("log_term: bold y vanishes");
    return -2.0 * std::log(std::abs(1.0 - e2pi(cplx(x, y))));
}

// -2 log|q1^{|c|} - q2^{|b|}| - 4 pi min(|c| y1, |b| y2), for -bc > 0
inline double log_term_cusp(const PointH2& z, i64 b, i64 c) {
    cplx q1c = e2pi(double(std::abs(c)) * z.z1()), q2b = e2pi(double(std::abs(b)) * z.z2());
    double lo = std::min(std::abs(double(c)) * z.y1, std::abs(double(b)) * z.y2);
    // divide out the dominant factor before taking the log
    cplx w = (q1c - q2b) * std::exp(2.0 * pi * lo);
    return -2.0 * std::log(std::abs(w));
}

inline BoundaryProfile boundary_terms(double v, double s, i64 b, i64 c) {
    if (!(v > 0 && s > 0)) throw domain_error("boundary_terms: v, s must be positive");
    double w = double(b) / s + double(c) * s;
    BoundaryProfile p;
    p.b_term = cap_b(pi * v * w * w);
    if (b * c < 0) p.i_term = 4.0 * pi * std::sqrt(v) * std::min(std::abs(double(b) / s), std::abs(double(c) * s));
    return p;
}

// xi-check(v,z;b,c) = (t/sqrt v)(B - I)
inline double xi_check_term(double v, double t, double s, i64 b, i64 c) {
    auto p = boundary_terms(v, s, b, c);
    return t / std::sqrt(v) * (p.b_term - p.i_term);
}

// (b,c) with -bc = m, m != 0, ordered by b
inline std::vector<std::pair<i64, i64>> factor_pairs(i64 m) {
    std::vector<std::pair<i64, i64>> out;
    i64 am = std::abs(m);
    for (i64 b = -am; b <= am; ++b) {
        if (b == 0 || m % b) continue;
        out.emplace_back(b, -m / b);
    }
    return out;
}

inline constexpr i64 default_check_cutoff = 60;

// Xi-check(v,z,0) truncated at |b|,|c| <= K, with the B(a) <= 2e^{-a} tail.
inline TruncationReport xi_check_zero(double v, const PointH2& z, i64 K = default_check_cutoff) {
    const double t = z.t(), s = z.s();
    KahanSum<double> acc(2.0);
    double tail = 0;
    for (i64 k = 1; k <= K; ++k) acc += 2.0 * (cap_b(pi * v * double(k * k) / (s * s)) + cap_b(pi * v * double(k * k) * s * s));
    for (double w : {1.0 / (s * s), s * s}) {
        // sum_{k>K} 2*2 e^{-pi v w k^2}
        double a = pi * v * w, r = std::exp(-a * double(2 * K + 1));
        tail += 4.0 * std::exp(-a * double((K + 1) * (K + 1))) / std::max(1e-300, 1.0 - r);
    }
    double f = 0.5 * t / std::sqrt(v);
    return {f * acc.value(), f * tail, 4 * K + 1};
}

// Xi-check(v,z,m) = (1/2) sum_{-bc = m} xi-check
inline double xi_check_sum(double v, const PointH2& z, i64 m, i64 K = default_check_cutoff) {
    if (m == 0) return xi_check_zero(v, z, K).value;
    const double t = z.t(), s = z.s();
    KahanSum<double> acc;
    for (auto [b, c] : factor_pairs(m)) acc += xi_check_term(v, t, s, b, c);
    return 0.5 * acc.value();
}

// sum_{b != 0} (t/sqrt v) B(pi v b^2/s^2), closed form
inline double xi_check_axis_closed(double v, double t, double s) {
    KahanSum<double> acc(zeta2);
    for (i64 b = 1; b < 200; ++b) {
        double term = std::exp(-pi * (s * double(b)) * (s * double(b)) / v) / double(b * b);
        acc += -term;
        if (term < 1e-300) break;
    }
    return t * s / v - 2.0 * t / std::sqrt(v) + 2.0 * t / (s * pi) * acc.value();
}

inline double xi_check_axis_direct(double v, double t, double s, i64 K) {
    KahanSum<double> acc;
    for (i64 b = 1; b <= K; ++b) acc += 2.0 * t / std::sqrt(v) * cap_b(pi * v * double(b * b) / (s * s));
    return acc.value();
}

inline double smoothstep5(double u) {
    u = std::clamp(u, 0.0, 1.0);
    return u * u * u * (u * (6.0 * u - 15.0) + 10.0);
}

inline double partition_rho_t(double t, const CutoffSpec& spec) { return smoothstep5((t - spec.t0) / (spec.t1 - spec.t0)); }

inline double partition_rho(const PointH2& z, const CutoffSpec& spec) { return partition_rho_t(z.t(), spec); }

// (1/12)(log|Delta(z1)| + log|Delta(z2)|) + (1/2) log(16 pi^2 y1 y2)
inline double petersson_term(const PointH2& z) {
    return (log_abs_delta(z.z1()) + log_abs_delta(z.z2())) / 12.0 + 0.5 * std::log(16.0 * pi * pi * z.y1 * z.y2);
}

// Xi(v,z,0) = Xi*(v,z,0) + Petersson log term
inline TruncationReport green_zero(double v, const PointH2& z, double eps) {
    if (!(eps > 0)) throw domain_error("green_zero: eps must be positive");
    double r = green_radius_for(v, z, 0, eps);
    if (box_estimate(z, r) > max_box_points) throw truncation_error(green_tail_bound(v, z, 0, r), "green_zero: resource cap");
    auto rep = green_at_radius(v, z, 0, r);
    rep.value += petersson_term(z);
    return rep;
}

// III(t,v) = sum_{a != 0} -Ei(-pi v a^2 / t^2)
inline TruncationReport regularized_iii(double t, double v) {
    KahanSum<double> acc;
    i64 a = 1;
    for (;; ++a) {
        double x = pi * v * double(a * a) / (t * t);
        double term = 2.0 * exp_integral_neg(x);
        acc += term;
        if (x > 1.0 && term < 1e-18 * acc.value()) break;
    }
    double x = pi * v * double((a + 1) * (a + 1)) / (t * t);
    double tail = 2.0 * std::exp(-x) / (1.0 - std::exp(-2.0 * pi * v * double(a) / (t * t)));
    return {acc.value(), tail, 2 * a};
}

inline double regularized_iii_limit() { return euler_gamma - std::log(4.0 * pi); }

// Green function minus rho times the boundary model near D
inline TruncationReport green_modified(double v, const PointH2& z, i64 m, const CutoffSpec& spec, double eps) {
    double rho = partition_rho(z, spec);
    if (m != 0) {
        auto rep = kudla_green(v, z, m, eps);
        if (rho > 0) rep.value -= rho * xi_check_sum(v, z, m);
        return rep;
    }
    auto rep = green_zero(v, z, eps);
    if (rho > 0) {
        auto chk = xi_check_zero(v, z);
        double t = z.t(), s = z.s();
        rep.value -= rho * (chk.value - t / (2.0 * v) * (s + 1.0 / s));
        rep.tail_bound += rho * chk.tail_bound;
    }
    return rep;
}

// Model of Xi near the boundary divisor.
inline double boundary_expansion(double v, const PointH2& z, i64 m) {
    if (m == 0) {
        double logq = -2.0 * pi * (z.y1 + z.y2);
        return 0.5 * (logq / 6.0 + 2.0 * xi_check_zero(v, z).value);
    }
    KahanSum<double> acc;
    for (auto [b, c] : factor_pairs(m)) {
        if (b * c < 0)
            acc += log_term_cusp(z, b, c) + 4.0 * pi * std::min(std::abs(double(c)) * z.y1, std::abs(double(b)) * z.y2);
        acc += xi_check_term(v, z.t(), z.s(), b, c);
    }
    return 0.5 * acc.value();
}

// log of an upper bound on |Xi(v,z,m) - boundary_expansion(v,z,m)|, m != 0, t >= 2:
// Gaussian majorant over d != 0 plus the modified Fourier coefficient decay.
inline double log_boundary_remainder_bound(double v, const PointH2& z, i64 m) {
    const double t = z.t(), s = z.s(), sv = std::sqrt(v);
    const double P3 = (1 + t / sv) * (1 + s / sv) * (1 + 1 / (s * sv));
    double lfar = std::log(0.5 * P3 * 2.0 * 1.0000001) + 2.0 * pi * v * double(m) - pi * v * t * t;
    double lnear = std::log(0.5 * double(factor_pairs(m).size()) * 2.0 * 1.0000001 * 2.0 * sv / (pi * t)) - pi * t * t / v;
    double hi = std::max(lfar, lnear), lo = std::min(lfar, lnear);
    return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace kudla
