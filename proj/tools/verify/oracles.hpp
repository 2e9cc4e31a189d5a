#pragma once

// Independent reference computations: quadrature, brute force, class number formula.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>

#include <cmath>
#include <vector>

#include <kudla/core.hpp>
#include <kudla/qseries.hpp>

namespace kudla::oracle {

// int_1^inf e^{-t r} dr / r
inline double quad_exp_integral(double t) {
    boost::math::quadrature::exp_sinh<double> q;
    return q.integrate([t](double x) { return std::exp(-t * (1.0 + x)) / (1.0 + x); }, 0.0,
                       std::numeric_limits<double>::infinity(), 1e-14);
}

// int_1^inf e^{-a u} u^{-3/2} du, via u = 1/w^2: 2 int_0^1 e^{-a/w^2} dw
inline double quad_cap_b(double a) {
    boost::math::quadrature::tanh_sinh<double> q;
    return 2.0 * q.integrate([a](double w) { return w <= 0 ? 0.0 : std::exp(-a / (w * w)); }, 0.0, 1.0, 1e-15);
}

// Gauss-Kronrod over consecutive panels until the integrand is negligible.
template <class F>
double panel_integral(F&& f, double a, double width, double stop) {
    double total = 0;
    for (double x = a; x < stop; x += width)
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, x, std::min(x + width, stop), 15, 1e-14);
    return total;
}

// a(n) = int_R -Ei(-pi v (x^2 + y^2)/t^2) e^{-2 pi i n x} dx, n may be 0 (y > 0 then)
inline double quad_fourier(double v, double t, double y, long n) {
    const double k = pi * v / (t * t);
    const double xmax = std::sqrt(std::max(0.0, 60.0 / k - y * y)) + 1.0;
    auto f = [&](double x) {
        double arg = k * (x * x + y * y);
        if (arg <= 0) return 0.0;
        return boost::math::expint(1, arg) * std::cos(2.0 * pi * double(n) * x);
    };
    // log singularity at x = 0 when y = 0 is integrable; tanh-sinh handles the panel ends
    boost::math::quadrature::tanh_sinh<double> ts;
    double width = n == 0 ? 1.0 : 0.5 / std::abs(double(n)), total = 0;
    for (double x = 0; x < xmax; x += width) total += ts.integrate(f, x, std::min(x + width, xmax), 1e-13);
    return 2.0 * total;
}

// Two-dimensional version of the same integral: int_R int_1^inf e^{-k (x^2+y^2) r} dr/r dx
inline double quad_fourier_a0_2d(double v, double t, double y) {
    const double k = pi * v / (t * t);
    const double xmax = std::sqrt(60.0 / k) + 1.0;
    boost::math::quadrature::exp_sinh<double> inner;
    auto g = [&](double x) {
        double a = k * (x * x + y * y);
        return inner.integrate([a](double r) { return std::exp(-a * (1.0 + r)) / (1.0 + r); }, 0.0,
                               std::numeric_limits<double>::infinity(), 1e-13);
    };
    return 2.0 * panel_integral(g, 0.0, 0.25, xmax);
}

inline std::vector<LatMat> brute_det(long m, double norm_bound) {
    std::vector<LatMat> out;
    long k = static_cast<long>(std::sqrt(norm_bound)) + 1;
    for (long a = -k; a <= k; ++a)
        for (long b = -k; b <= k; ++b)
            for (long c = -k; c <= k; ++c)
                for (long d = -k; d <= k; ++d) {
                    LatMat M{a, b, c, d};
                    if (M.det() == m && double(M.norm0()) <= norm_bound && !(m == 0 && M.is_zero())) out.push_back(M);
                }
    return out;
}

inline double brute_majorant(const LatMat& M, const PointH2& z) {
    // |(a - b z2 - c z1 + d z1 z2)|^2 / (y1 y2) + 2 det: the two forms of the majorant
    const cplx z1 = z.z1(), z2 = z.z2();
    cplx w = double(M.a) - double(M.b) * z2 - double(M.c) * z1 + double(M.d) * z1 * z2;
    return std::norm(w) / (z.y1 * z.y2) + 2.0 * double(M.det());
}

inline std::vector<LatMat> brute_majorant_list(long m, const PointH2& z, double radius, long box) {
    std::vector<LatMat> out;
    for (long a = -box; a <= box; ++a)
        for (long b = -box; b <= box; ++b)
            for (long c = -box; c <= box; ++c)
                for (long d = -box; d <= box; ++d) {
                    LatMat M{a, b, c, d};
                    if (M.det() != m || (m == 0 && M.is_zero())) continue;
                    if (brute_majorant(M, z) <= radius * (1 + 1e-12)) out.push_back(M);
                }
    return out;
}

// Kronecker symbol (D / n), n >= 1
inline int kronecker(long D, long n) {
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (D % 2 == 0) return 0;
        long r = ((D % 8) + 8) % 8;
        if (r == 3 || r == 5) result = -result;
    }
    // Jacobi symbol (D / n), n odd
    long a = ((D % n) + n) % n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

// 2h(D)/w(D) for a negative discriminant, via the analytic class number formula for
// the fundamental part and the conductor formula.
inline Rational class_number_weighted(long D) {
    long k = -D, g = 1, sf = 1;
    for (long p = 2; p * p <= k; ++p) {
        while (k % (p * p) == 0) {
            k /= p * p;
            g *= p;
        }
    }
    sf = k;
    long D0 = -sf, f = g;
    if (((D0 % 4) + 4) % 4 != 1) {
        D0 *= 4;
        f = g / 2;
    }
    long sum = 0;
    for (long a = 1; a < -D0; ++a) sum += kronecker(D0, a) * a;
    Rational h0{-sum, -D0};
    // f prod_{p | f} (1 - (D0/p)/p)
    Rational mult{f};
    long ff = f;
    for (long p = 2; p <= ff; ++p) {
        if (ff % p) continue;
        while (ff % p == 0) ff /= p;
        mult = mult * Rational{p - kronecker(D0, p), p};
    }
    return h0 * mult;
}

inline Rational hurwitz_by_class_numbers(long N) {
    if (N == 0) return {-1, 12};
    if (N % 4 == 1 || N % 4 == 2) return {0};
    Rational h{0};
    for (long d = 1; d * d <= N; ++d) {
        if (N % (d * d)) continue;
        long M = N / (d * d);
        if (M % 4 == 0 || M % 4 == 3) h += class_number_weighted(-M);
    }
    return h;
}

}  // namespace kudla::oracle
