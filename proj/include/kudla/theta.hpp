#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "forms.hpp"
#include "green.hpp"
#include "lattice.hpp"
#include "qseries.hpp"
#include "special_fn.hpp"

namespace kudla {

enum class ThetaKind { jacobi, jacobi_km, siegel11, siegel11_km, check_km, siegel22, phi_km_series, green_series, xi_check_plus };

inline constexpr ThetaKind all_theta_kinds[] = {ThetaKind::jacobi,        ThetaKind::jacobi_km,    ThetaKind::siegel11,
                                                ThetaKind::siegel11_km,   ThetaKind::check_km,     ThetaKind::siegel22,
                                                ThetaKind::phi_km_series, ThetaKind::green_series, ThetaKind::xi_check_plus};

inline std::string_view to_string(ThetaKind k) {
    switch (k) {
        case ThetaKind::jacobi: return "jacobi";
        case ThetaKind::jacobi_km: return "jacobi_km";
        case ThetaKind::siegel11: return "siegel11";
        case ThetaKind::siegel11_km: return "siegel11_km";
        case ThetaKind::check_km: return "check_km";
        case ThetaKind::siegel22: return "siegel22";
        case ThetaKind::phi_km_series: return "phi_km_series";
        case ThetaKind::green_series: return "green_series";
        case ThetaKind::xi_check_plus: return "xi_check_plus";
    }
    return "?";
}

inline ThetaKind parse_theta_kind(std::string_view s) {
    for (auto k : all_theta_kinds)
        if (to_string(k) == s) return k;
    throw domain_error("unknown theta kind: " + std::string(s));
}

inline bool needs_point(ThetaKind k) {
    return k == ThetaKind::siegel22 || k == ThetaKind::phi_km_series || k == ThetaKind::green_series ||
           k == ThetaKind::xi_check_plus;
}

struct ThetaValue {
    bool is_form = false;
    cplx scalar{};
    Form11 form{};
    double tail_bound = 0;
};

// theta(tau) = sum e^{pi i n^2 tau}
inline cplx theta_jacobi(const Tau& tau, i64 K) {
    KahanSum<cplx> acc;
    for (i64 n = -K; n <= K; ++n) acc += std::exp(pi * I * double(n * n) * tau.value());
    return acc.value();
}

// X_+ theta, X_+ = 2iv d/dtau + 1/2
inline cplx theta_jacobi_km(const Tau& tau, i64 K) {
    KahanSum<cplx> acc;
    for (i64 n = -K; n <= K; ++n)
        acc += -2.0 * pi * (tau.v * double(n * n) - 1.0 / (4.0 * pi)) * std::exp(pi * I * double(n * n) * tau.value());
    return acc.value();
}

// E(b,c;tau) = e^{-pi v (b^2+c^2)} e^{-2 pi i u bc}
inline cplx siegel_e(i64 b, i64 c, const Tau& tau) {
    return std::exp(cplx(-pi * tau.v * double(b * b + c * c), -2.0 * pi * tau.u * double(b * c)));
}

template <class W>
cplx siegel11_sum(const Tau& tau, i64 K, W&& weight) {
    const std::size_t side = static_cast<std::size_t>(2 * K + 1);
    return chunked_sum<cplx>(side * side, [&](std::size_t idx) {
        i64 b = i64(idx / side) - K, c = i64(idx % side) - K;
        return weight(b, c) * siegel_e(b, c, tau);
    });
}

inline cplx theta_siegel11(const Tau& tau, i64 K) {
    return siegel11_sum(tau, K, [](i64, i64) { return 1.0; });
}

inline cplx theta_siegel11_km(const Tau& tau, i64 K) {
    const double v = tau.v;
    return -pi * siegel11_sum(tau, K, [&](i64 b, i64 c) { return v * double((b - c) * (b - c)) - 1.0 / (2.0 * pi); });
}

inline cplx theta_check_km(const Tau& tau, i64 K) {
    const double v = tau.v;
    return siegel11_sum(tau, K, [&](i64 b, i64 c) { return v * double((b - c) * (b - c)) - 1.0 / (2.0 * pi); }) /
           std::sqrt(v);
}

// Theta_(2,2)(tau,z) = sum_M e^{2 pi i u det M} e^{-pi v (M,M)_z}, majorant <= radius
inline cplx theta_siegel22(const Tau& tau, const PointH2& z, double radius) {
    auto mats = enumerate_ball(z, radius);
    return chunked_sum_over<cplx>(mats, [&](const LatMat& M) {
        double det = double(M.det());
        return std::exp(cplx(-pi * tau.v * majorant(z, M), 2.0 * pi * tau.u * det));
    });
}

// Theta_phiKM(tau,z) = sum_M phi_KM(v,z,M) e^{2 pi i tau det M}
inline Form11 theta_phi_km(const Tau& tau, const PointH2& z, double radius) {
    auto mats = enumerate_ball(z, radius);
    auto part = [&](int k) {
        return chunked_sum_over<cplx>(mats, [&](const LatMat& M) {
            double det = double(M.det());
            Form11 f = phi_km_scaled(tau.v, z, M, cplx(-pi * tau.v * majorant(z, M), 2.0 * pi * tau.u * det));
            return f.coeffs()[k];
        });
    };
    return {part(0), part(1), part(2), part(3)};
}

struct Wkernel {
    cplx U{}, V{}, W{};
};

// U = 2 v^{-1/2} beta(pi v (l - l')^2) e(l l' tau), V = (1/2) min(|l|,|l'|) e(l l' tau) if l l' > 0
inline Wkernel w_kernel(const Tau& tau, double lam, double lam2) {
    const double v = tau.v, u = tau.u, a = pi * v * (lam - lam2) * (lam - lam2);
    Wkernel k;
    // e^{-a} |e(l l' tau)| = e^{-pi v (l^2 + l'^2)}
    k.U = cap_b_scaled(a) / (8.0 * pi * std::sqrt(v)) *
          std::exp(cplx(-pi * v * (lam * lam + lam2 * lam2), 2.0 * pi * u * lam * lam2));
    if (lam * lam2 > 0)
        k.V = 0.5 * std::min(std::abs(lam), std::abs(lam2)) * std::exp(2.0 * pi * I * lam * lam2 * tau.value());
    k.W = k.U - k.V;
    return k;
}

inline cplx w_lattice_sum(const Tau& tau, double s, i64 K) {
    const std::size_t side = static_cast<std::size_t>(2 * K + 1);
    return chunked_sum<cplx>(side * side, [&](std::size_t idx) {
        i64 b = i64(idx / side) - K, c = i64(idx % side) - K;
        return w_kernel(tau, -double(b) / s, double(c) * s).W;
    });
}

// |tau^{-2} sum W_{-1/tau} - sum W_tau + (i / 4 pi tau)(s + 1/s)|
inline double poisson_defect_check(const Tau& tau, double s, i64 K) {
    const cplx t = tau.value();
    cplx lhs = w_lattice_sum(tau.inv(), s, K) / (t * t);
    cplx rhs = w_lattice_sum(tau, s, K);
    return std::abs(lhs - rhs + I / (4.0 * pi * t) * (s + 1.0 / s));
}

inline cplx poisson_defect_term(const Tau& tau, double s) { return -I / (4.0 * pi * tau.value()) * (s + 1.0 / s); }

// Xi-check^+(tau,z) = 4 pi t sum W_tau(-b/s, cs) - (t / 2v)(s + 1/s)
inline cplx xi_check_plus(const Tau& tau, const PointH2& z, i64 K = default_check_cutoff) {
    const double t = z.t(), s = z.s();
    return 4.0 * pi * t * w_lattice_sum(tau, s, K) - t / (2.0 * tau.v) * (s + 1.0 / s);
}

// Same series built from xi-check summands: sum_m Xi-check(v,z,m) q^m - (t/2v)(s + 1/s)
inline cplx xi_check_plus_direct(const Tau& tau, const PointH2& z, i64 K = default_check_cutoff) {
    const double t = z.t(), s = z.s(), v = tau.v;
    const std::size_t side = static_cast<std::size_t>(2 * K + 1);
    cplx sum = chunked_sum<cplx>(side * side, [&](std::size_t idx) {
        i64 b = i64(idx / side) - K, c = i64(idx % side) - K;
        return 0.5 * xi_restricted(v, tau.u, t, s, b, c);
    });
    return sum - t / (2.0 * v) * (s + 1.0 / s);
}

// sum_m Xi(v,z,m) q^m over |m| <= cutoff
inline TruncationReport green_series(const Tau& tau, const PointH2& z, i64 cutoff, double eps = 1e-12, cplx* out = nullptr) {
    KahanSum<cplx> acc;
    double tail = 0;
    i64 terms = 0;
    for (i64 m = -cutoff; m <= cutoff; ++m) {
        TruncationReport r = m == 0 ? green_zero(tau.v, z, eps) : kudla_green(tau.v, z, m, eps);
        double qm = std::exp(-2.0 * pi * tau.v * double(m));
        acc += r.value * e2pi(double(m) * tau.value());
        tail += r.tail_bound * qm;
        terms += r.terms_used;
    }
    cplx val = acc.value();
    if (out) *out = val;
    return {val.real(), tail, terms};
}

inline double default_lattice_radius(double v) { return std::max(50.0, 45.0 / (pi * v)); }

inline ThetaValue theta_eval(ThetaKind kind, const Tau& tau, const std::optional<PointH2>& z, i64 cutoff) {
    if (needs_point(kind) && !z) throw domain_error("theta_eval: kind " + std::string(to_string(kind)) + " needs z");
    ThetaValue out;
    const double gauss = std::exp(-pi * tau.v * double(cutoff + 1) * double(cutoff + 1));
    switch (kind) {
        case ThetaKind::jacobi: out.scalar = theta_jacobi(tau, cutoff); out.tail_bound = 4 * gauss; break;
        case ThetaKind::jacobi_km:
            out.scalar = theta_jacobi_km(tau, cutoff);
            out.tail_bound = 4 * gauss * (2 * pi * tau.v * double((cutoff + 1) * (cutoff + 1)) + 1);
            break;
        case ThetaKind::siegel11: out.scalar = theta_siegel11(tau, cutoff); out.tail_bound = 8 * gauss * double(2 * cutoff + 3); break;
        case ThetaKind::siegel11_km:
            out.scalar = theta_siegel11_km(tau, cutoff);
            out.tail_bound = 8 * gauss * double(2 * cutoff + 3) * (4 * pi * tau.v * double((cutoff + 1) * (cutoff + 1)) + 1);
            break;
        case ThetaKind::check_km:
            out.scalar = theta_check_km(tau, cutoff);
            out.tail_bound = 8 * gauss * double(2 * cutoff + 3) * (4 * tau.v * double((cutoff + 1) * (cutoff + 1)) + 1) / std::sqrt(tau.v);
            break;
        case ThetaKind::siegel22: {
            double r = double(cutoff);
            out.scalar = theta_siegel22(tau, *z, r);
            out.tail_bound = std::exp(-pi * tau.v * r / 2) * 16 * std::pow(1 + std::sqrt(2 / tau.v), 4);
            break;
        }
        case ThetaKind::phi_km_series: {
            double r = double(cutoff);
            out.is_form = true;
            out.form = theta_phi_km(tau, *z, r);
            out.tail_bound = std::exp(-pi * tau.v * r / 2) * 16 * std::pow(1 + std::sqrt(2 / tau.v), 4) * (tau.v * r + 1);
            break;
        }
        case ThetaKind::green_series: {
            auto r = green_series(tau, *z, cutoff, 1e-12, &out.scalar);
            out.tail_bound = r.tail_bound;
            break;
        }
        case ThetaKind::xi_check_plus:
            out.scalar = xi_check_plus(tau, *z, cutoff);
            out.tail_bound = 4 * pi * z->t() * 8 * gauss * double(2 * cutoff + 3);
            break;
    }
    return out;
}

inline double rel_residual(cplx lhs, cplx rhs) { return std::abs(lhs - rhs) / (1.0 + std::abs(lhs)); }

inline double rel_residual(const Form11& lhs, const Form11& rhs) { return (lhs - rhs).max_abs() / (1.0 + lhs.max_abs()); }

// Residual of the expected transformation law of each kind.
inline double modularity_residual(ThetaKind kind, const Tau& tau, const std::optional<PointH2>& z, i64 cutoff) {
    const cplx t = tau.value(), tb = std::conj(t);
    const Tau ti = tau.inv();
    auto val = [&](const Tau& x) { return theta_eval(kind, x, z, cutoff); };
    switch (kind) {
        case ThetaKind::jacobi: {
            cplx a = val(tau).scalar;
            return std::max(rel_residual(val(ti).scalar, std::sqrt(t / I) * a), rel_residual(val(tau.shift(2.0)).scalar, a));
        }
        case ThetaKind::jacobi_km:
            // theta_KM(tau) = (i/tau)^{3/2} (i/taubar)^{-1} theta_KM(-1/tau)
            return rel_residual(val(tau).scalar, std::pow(I / t, 1.5) * std::pow(I / tb, -1.0) * val(ti).scalar);
        case ThetaKind::siegel11: return rel_residual(val(tau).scalar, std::pow(tb, -0.5) * std::pow(t, -0.5) * val(ti).scalar);
        case ThetaKind::siegel11_km: return rel_residual(val(tau).scalar, std::pow(t, -1.5) * std::pow(tb, 0.5) * val(ti).scalar);
        case ThetaKind::check_km: {
            cplx a = val(tau).scalar;
            return std::max(rel_residual(val(ti).scalar, t * t * a), rel_residual(val(tau.shift()).scalar, a));
        }
        case ThetaKind::siegel22: return rel_residual(val(ti).scalar, std::norm(t) * val(tau).scalar);
        case ThetaKind::phi_km_series: return rel_residual(val(ti).form, (t * t) * val(tau).form);
        case ThetaKind::green_series: return rel_residual(val(tau.shift()).scalar, val(tau).scalar);
        case ThetaKind::xi_check_plus: return rel_residual(val(ti).scalar, t * t * val(tau).scalar);
    }
    return 0;
}

struct F2Limits {
    cplx g_limit{}, h_limit{};
    std::optional<cplx> f2_origin;         // direct double sum, s = 1
    std::optional<cplx> f2_closed;         // 2 sum q^m (1 - q^{m^2}) / (1 - q^m)^2
    std::optional<cplx> f2_closed_printed; // 2 sum q^m (1 + q^m) / (1 - q^m)
};

inline cplx f2_direct(const Tau& tau, double s, i64 K) {
    const std::size_t side = static_cast<std::size_t>(2 * K + 1);
    return chunked_sum<cplx>(side * side, [&](std::size_t idx) {
        i64 m = i64(idx / side) - K, n = i64(idx % side) - K;
        if (m * n <= 0) return cplx{};
        return std::min(std::abs(double(m)) / s, std::abs(double(n)) * s) * e2pi(double(m * n) * tau.value());
    });
}

inline F2Limits f2_limits(const Tau& tau, double s, i64 cutoff) {
    const cplx t = tau.value();
    F2Limits r;
    r.g_limit = -1.0 / (2.0 * pi * I * s * t);
    r.h_limit = -s / (2.0 * pi * I * t);
    if (std::abs(s - 1.0) < 1e-15) {
        r.f2_origin = f2_direct(tau, 1.0, cutoff);
        KahanSum<cplx> a, b;
        for (i64 m = 1; m <= cutoff; ++m) {
            cplx qm = e2pi(double(m) * t);
            a += qm * (1.0 - e2pi(double(m * m) * t)) / ((1.0 - qm) * (1.0 - qm));
            b += qm * (1.0 + qm) / (1.0 - qm);
        }
        r.f2_closed = 2.0 * a.value();
        r.f2_closed_printed = 2.0 * b.value();
    }
    return r;
}

// sum_{n>=1} (x/s) q^{x(y+n)} for small x > 0
inline cplx g_tau_numeric(const Tau& tau, double s, double x, double y) {
    KahanSum<cplx> acc;
    const double decay = 2.0 * pi * tau.v * x;
    for (i64 n = 1;; ++n) {
        double yn = y + double(n);
        acc += (x / s) * e2pi(x * yn * tau.value());
        if (decay * yn > 45.0) break;
    }
    return acc.value();
}

struct FunkeSeries {
    cplx theta_dT{};   // -1/(4 pi v) - (1/2) sum min q^{-bc} + B-series
    cplx theta_Tt{};   // sum H_1(N) q^N + B-series
    cplx b_series{};   // sum (1/(8 pi sqrt v)) B(pi v (b+c)^2) q^{-bc}
    cplx twice_e2{};   // 2 E_2(tau,1) at the same cutoff
};

// Both series truncated to exponents -bc <= cutoff and |b|,|c| <= cutoff.
inline FunkeSeries funke_series(const Tau& tau, i64 cutoff) {
    const double v = tau.v;
    const std::size_t side = static_cast<std::size_t>(2 * cutoff + 1);
    FunkeSeries f;
    f.b_series = chunked_sum<cplx>(side * side, [&](std::size_t idx) {
        i64 b = i64(idx / side) - cutoff, c = i64(idx % side) - cutoff;
        if (-b * c > cutoff) return cplx{};
        double a = pi * v * double((b + c) * (b + c));
        // B(a) |q^{-bc}| = e^a B(a) e^{-pi v (b^2 + c^2)}
        return cap_b_scaled(a) / (8.0 * pi * std::sqrt(v)) *
               std::exp(cplx(-pi * v * double(b * b + c * c), -2.0 * pi * tau.u * double(b * c)));
    });
    KahanSum<cplx> mins;
    for (i64 b = -cutoff; b <= cutoff; ++b)
        for (i64 c = -cutoff; c <= cutoff; ++c) {
            i64 N = -b * c;
            if (N <= 0 || N > cutoff) continue;
            mins += double(std::min(std::abs(b), std::abs(c))) * e2pi(double(N) * tau.value());
        }
    f.theta_dT = -1.0 / (4.0 * pi * v) - 0.5 * mins.value() + f.b_series;
    f.theta_Tt = h1_series(cutoff)(tau) + f.b_series;
    f.twice_e2 = 2.0 * eisenstein_e2(tau, cutoff);
    return f;
}

}  // namespace kudla
