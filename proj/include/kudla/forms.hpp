#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "core.hpp"
#include "green.hpp"
#include "lattice.hpp"
#include "special_fn.hpp"

namespace kudla {

// Coefficients in e1 = dz1^dz1b/y1^2, e2 = dz2^dz2b/y2^2, e3 = dz1^dz2b/(y1y2), e4 = dz2^dz1b/(y1y2).
struct Form11 {
    cplx c11{}, c22{}, c12{}, c21{};

    Form11 operator+(const Form11& o) const { return {c11 + o.c11, c22 + o.c22, c12 + o.c12, c21 + o.c21}; }
    Form11 operator-(const Form11& o) const { return {c11 - o.c11, c22 - o.c22, c12 - o.c12, c21 - o.c21}; }
    Form11 operator-() const { return {-c11, -c22, -c12, -c21}; }
    friend Form11 operator*(cplx k, const Form11& f) { return {k * f.c11, k * f.c22, k * f.c12, k * f.c21}; }
    Form11& operator+=(const Form11& o) { return *this = *this + o; }

    std::array<cplx, 4> coeffs() const { return {c11, c22, c12, c21}; }
    double max_abs() const {
        double m = 0;
        for (auto c : coeffs()) m = std::max(m, std::abs(c));
        return m;
    }
    // c11, c22 imaginary and c21 = -conj(c12)
    double reality_defect() const {
        return std::max({std::abs(c11.real()), std::abs(c22.real()), std::abs(c21 + std::conj(c12))});
    }
};

inline double form_distance(const Form11& a, const Form11& b) {
    return (a - b).max_abs() / (1.0 + std::max(a.max_abs(), b.max_abs()));
}

// Coefficient of alpha^beta against e1^e2 counted twice; for alpha = beta this is c11 c22 - c12 c21.
inline cplx wedge_top(const Form11& a, const Form11& b) {
    return 0.5 * (a.c11 * b.c22 + a.c22 * b.c11 - a.c12 * b.c21 - a.c21 * b.c12);
}

struct OmegaConstants {
    Form11 omega1{-I / 8.0, -I / 8.0, -I / 8.0, -I / 8.0};
    Form11 omega2{0.0, 0.0, 0.25, -0.25};
    Form11 omega3{-I / 8.0, -I / 8.0, I / 8.0, I / 8.0};
};

inline const OmegaConstants& omegas() {
    static const OmegaConstants o{};
    return o;
}

// sum c'_j Omega_j times exp(expo), with expo = -2 pi v R by default.
inline Form11 phi_km_scaled(double v, const PointH2& z, const LatMat& M, cplx expo) {
    auto p = transform(M, z);
    const double ad = p.a + p.d, cb = p.c - p.b;
    const double c1 = v * ad * ad - 1.0 / (2.0 * pi);
    const double c2 = v * ad * cb;
    const double c3 = v * cb * cb - 1.0 / (2.0 * pi);
    const auto& O = omegas();
    return std::exp(expo) * (cplx(c1) * O.omega1 + cplx(c2) * O.omega2 + cplx(c3) * O.omega3);
}

inline Form11 phi_km(double v, const PointH2& z, const LatMat& M) {
    return phi_km_scaled(v, z, M, -2.0 * pi * v * r_kernel(z, M));
}

// Central second differences in (x1,y1,x2,y2); Wirtinger mix; y-scaling onto e_k.
template <class F>
Form11 ddc_plain(F&& f, const PointH2& z, double h) {
    const std::array<double, 4> X{z.x1, z.y1, z.x2, z.y2};
    auto eval = [&](const std::array<double, 4>& Y) {
        double val = f(PointH2(Y[0], Y[1], Y[2], Y[3]));
        if (!std::isfinite(val)) throw evaluation_error("ddc_numeric: non-finite sample");
        return val;
    };
    double H[4][4];
    const double f0 = eval(X);
    for (int i = 0; i < 4; ++i) {
        auto P = X, Mi = X;
        P[i] += h;
        Mi[i] -= h;
        H[i][i] = (eval(P) - 2.0 * f0 + eval(Mi)) / (h * h);
        for (int j = i + 1; j < 4; ++j) {
            auto pp = X, pm = X, mp = X, mm = X;
            pp[i] += h, pp[j] += h;
            pm[i] += h, pm[j] -= h;
            mp[i] -= h, mp[j] += h;
            mm[i] -= h, mm[j] -= h;
            H[i][j] = H[j][i] = (eval(pp) - eval(pm) - eval(mp) + eval(mm)) / (4.0 * h * h);
        }
    }
    // d_{zj} d_{zk bar} = (1/4)(f_xx + i f_xy - i f_yx + f_yy)
    auto w = [&](int j, int k) {
        int xj = 2 * j, yj = 2 * j + 1, xk = 2 * k, yk = 2 * k + 1;
        return 0.25 * cplx(H[xj][xk] + H[yj][yk], H[xj][yk] - H[yj][xk]);
    };
    const cplx fac = I / (2.0 * pi);
    return {fac * w(0, 0) * z.y1 * z.y1, fac * w(1, 1) * z.y2 * z.y2, fac * w(0, 1) * z.y1 * z.y2,
            fac * w(1, 0) * z.y1 * z.y2};
}

// dd^c = (i/2pi) d dbar, Richardson-extrapolated over (h, h/2).
template <class F>
Form11 ddc_numeric(F&& f, const PointH2& z, double h = 1e-3) {
    if (!(h >= 1e-5 && h <= 1e-2)) throw domain_error("ddc_numeric: h outside [1e-5, 1e-2]");
    Form11 a = ddc_plain(f, z, h), b = ddc_plain(f, z, h / 2);
    return cplx(4.0 / 3.0) * b - cplx(1.0 / 3.0) * a;
}

// Closed forms used as references.
inline Form11 ddc_t_closed(const PointH2& z) { return cplx(z.t() / (4.0 * pi)) * omegas().omega3; }

inline Form11 ddc_tF_closed(const PointH2& z, double F, double dF, double d2F) {
    const double s = z.s();
    return cplx(z.t() / (4.0 * pi) * (F - s * dF - s * s * d2F)) * omegas().omega3;
}

inline double verify_kudla_identity(double v, const PointH2& z, const LatMat& M, double h = 1e-3) {
    if (r_kernel(z, M) <= 1e-3) throw on_cycle_error(M, "verify_kudla_identity: too close to the cycle");
    auto lhs = ddc_numeric([&](const PointH2& w) { return xi_point(v, w, M); }, z, h);
    return (lhs + phi_km(v, z, M)).max_abs();
}

// Restricted form: (v(b/s - cs)^2 - 1/2pi)(t/sqrt v) e^{-pi v((b/s)^2 + (cs)^2)} e^{-2 pi i u bc} Omega3
inline Form11 phi_restricted(double v, double u, double t, double s, i64 b, i64 c) {
    const double p = double(b) / s, q = double(c) * s;
    const double k = (v * (p - q) * (p - q) - 1.0 / (2.0 * pi)) * t / std::sqrt(v);
    cplx phase = std::exp(cplx(-pi * v * (p * p + q * q), -2.0 * pi * u * double(b * c)));
    return (k * phase) * omegas().omega3;
}

// Restricted Green function (t/sqrt v)(B - I) q^{-bc}, as a function on H^2 through (t,s).
inline cplx xi_restricted(double v, double u, double t, double s, i64 b, i64 c) {
    const double p = double(b) / s, q = double(c) * s, a = pi * v * (p + q) * (p + q);
    // B(a) q^{-bc} = e^a B(a) e^{-pi v (p^2 + q^2)} e^{-2 pi i u bc}
    cplx phase = std::exp(cplx(-pi * v * (p * p + q * q), -2.0 * pi * u * double(b * c)));
    cplx val = t / std::sqrt(v) * cap_b_scaled(a) * phase;
    if (b * c < 0)
        val -= t * 4.0 * pi * std::min(std::abs(p), std::abs(q)) * std::exp(cplx(2.0 * pi * v * double(b * c), -2.0 * pi * u * double(b * c)));
    return val;
}

struct RestrictedResidual {
    double b_ode = 0;
    double i_ode = 0;
    double value() const { return std::max(b_ode, i_ode); }
};

inline RestrictedResidual verify_restricted_parts(double v, double /*u*/, double /*t*/, double s, i64 b, i64 c,
                                                  double h = 1e-3) {
    const double bb = double(b), cc = double(c);
    if (b * c < 0 && std::abs(std::abs(bb / s) - std::abs(cc * s)) < 1e-3)
        throw domain_error("verify_restricted_identity: s too close to the cone wall");
    auto F = [&](double x) {
        double w = bb / x + cc * x;
        return cap_b(pi * v * w * w);
    };
    auto Imin = [&](double x) { return b * c < 0 ? std::min(std::abs(bb / x), std::abs(cc * x)) : 0.0; };
    auto ode = [&](auto&& g, double hh) {
        double d1 = (g(s + hh) - g(s - hh)) / (2 * hh);
        double d2 = (g(s + hh) - 2 * g(s) + g(s - hh)) / (hh * hh);
        return g(s) - s * d1 - s * s * d2;
    };
    auto rich = [&](auto&& g) { return (4.0 * ode(g, h / 2) - ode(g, h)) / 3.0; };
    const double p = bb / s, q = cc * s;
    const double expected = -(-2.0 + 4.0 * pi * v * (p - q) * (p - q)) * std::exp(-pi * v * (p + q) * (p + q));
    RestrictedResidual r;
    r.b_ode = std::abs(rich(F) - expected);
    r.i_ode = std::abs(rich(Imin));
    return r;
}

inline double verify_restricted_identity(double v, double u, double t, double s, i64 b, i64 c, double h = 1e-3) {
    return verify_restricted_parts(v, u, t, s, b, c, h).value();
}

// dd^c of xi_restricted on H^2 against -phi_restricted, full four-variable stencil.
inline double verify_restricted_ddc(double v, double u, const PointH2& z, i64 b, i64 c, double h = 1e-3) {
    auto re = ddc_numeric([&](const PointH2& w) { return xi_restricted(v, u, w.t(), w.s(), b, c).real(); }, z, h);
    auto im = ddc_numeric([&](const PointH2& w) { return xi_restricted(v, u, w.t(), w.s(), b, c).imag(); }, z, h);
    Form11 lhs = re + I * im;
    return (lhs + phi_restricted(v, u, z.t(), z.s(), b, c)).max_abs();
}

// Pullback of phi_KM(v,.,M) e^{2 pi i tau det M} along w -> (w, -1/w) against
// e^{2 pi i tau dt^2} phi_(1,2)(tau, w, X); both as multiples of dw^dwb/y^2.
inline std::pair<cplx, cplx> restrict_to_12(double v, double u, cplx w, const LatMat& M) {
    if (!(w.imag() > 0)) throw domain_error("restrict_to_12: w must lie in H");
    PointH2 z(w, -1.0 / w);
    const double det = double(M.det());
    cplx expo(-pi * v * (2.0 * r_kernel(z, M) + 2.0 * det), 2.0 * pi * u * det);
    Form11 f = phi_km_scaled(v, z, M, expo);
    cplx P = f.c11 + f.c22 + (w / std::conj(w)) * f.c12 + (std::conj(w) / w) * f.c21;
    cplx lhs = -P;

    const double x = w.real(), y = w.imag();
    const double at = 0.5 * double(M.a - M.d), dt = 0.5 * double(M.a + M.d);
    const double detX = -at * at - double(M.b * M.c);
    const double p = -(double(M.c) * std::norm(w) - 2.0 * at * x - double(M.b)) / y;
    cplx tau(u, v);
    cplx rhs = 0.5 * I * (v * p * p - 1.0 / (2.0 * pi)) * std::exp(2.0 * pi * I * tau * (dt * dt)) *
               std::exp(cplx(-pi * v * (p * p - 2.0 * detX), 2.0 * pi * u * detX));
    return {lhs, rhs};
}

}  // namespace kudla
