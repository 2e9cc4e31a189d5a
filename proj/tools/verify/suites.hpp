#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <kudla/kudla.hpp>

#include "oracles.hpp"
#include "report.hpp"

namespace kudla::verify {

inline std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string cnum(cplx z) { return num(z.real()) + (z.imag() < 0 ? "" : "+") + num(z.imag()) + "i"; }

// Uniform doubles from raw 64-bit draws; identical on every platform for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform(double a, double b) { return a + (b - a) * double(eng_() >> 11) * 0x1.0p-53; }
    i64 integer(i64 lo, i64 hi) { return lo + i64(eng_() % std::uint64_t(hi - lo + 1)); }

private:
    std::mt19937_64 eng_;
};

inline PointH2 random_point(Rng& g) {
    return {g.uniform(-1, 1), g.uniform(0.5, 3), g.uniform(-1, 1), g.uniform(0.5, 3)};
}

inline LatMat random_mat(Rng& g, i64 k) { return {g.integer(-k, k), g.integer(-k, k), g.integer(-k, k), g.integer(-k, k)}; }

template <class F>
Report timed(F&& f) {
    Stopwatch sw;
    Report r = f();
    r.runtime_ms = sw.ms();
    return r;
}

// ---------------------------------------------------------------- special
inline std::vector<Report> suite_special(std::uint64_t) {
    std::vector<Report> out;
    out.push_back(timed([] { return make_report("special.cap_b_zero", {{"alpha", "0"}}, {cap_b(0)}, std::abs(cap_b(0) - 2.0), 0.0); }));
    out.push_back(timed([] {
        double worst = 0;
        std::vector<double> vals;
        for (int k = 0; k < 10; ++k) {
            double a = std::pow(10.0, -3.0 + 4.5 * k / 9.0);
            double ref = oracle::quad_cap_b(a);
            vals.push_back(cap_b(a));
            worst = std::max(worst, std::abs(cap_b(a) - ref) / ref);
        }
        return make_report("special.cap_b_vs_quadrature", {{"alpha", "10 log-spaced in [1e-3, 10^1.5]"}}, vals, worst, 1e-10);
    }));
    out.push_back(timed([] {
        double worst = 0;
        std::vector<double> vals;
        for (int k = 0; k < 10; ++k) {
            double x = std::pow(10.0, -3.0 + 4.5 * k / 9.0);
            double closed = (std::exp(-x) - std::sqrt(x * pi) * std::erfc(std::sqrt(x))) / (8.0 * pi);
            double ref = oracle::quad_cap_b(x) / (16.0 * pi);
            vals.push_back(beta_hz(x));
            worst = std::max({worst, std::abs(closed - ref) / ref, std::abs(beta_hz(x) - ref) / ref});
        }
        return make_report("special.beta_vs_quadrature", {{"x", "10 log-spaced in [1e-3, 10^1.5]"}}, vals, worst, 1e-10);
    }));
    out.push_back(timed([] {
        double worst = 0;
        for (int k = 0; k <= 1000; ++k) {
            double t = 10.0 * k / 1000.0;
            double mid = 0.5 * std::sqrt(pi) * erfcx(t);  // e^{t^2} int_t^inf e^{-u^2} du
            double lo = 1.0 / (t + std::sqrt(t * t + 2.0)), hi = 1.0 / (t + std::sqrt(t * t + 4.0 / pi));
            worst = std::max({worst, lo - mid > 0 ? lo - mid : 0.0, mid - hi > 1e-15 ? mid - hi : 0.0});
        }
        return make_report("special.erfc_sandwich", {{"t", "1001 points in [0,10]"}}, {}, worst, 0.0);
    }));
    out.push_back(timed([] {
        double worst = 0;
        std::vector<double> vals;
        for (double t : {0.01, 0.5, 1.0, 3.0, 12.0}) {
            double ref = oracle::quad_exp_integral(t);
            vals.push_back(exp_integral_neg(t));
            worst = std::max(worst, std::abs(exp_integral_neg(t) - ref) / ref);
        }
        return make_report("special.exp_integral_vs_quadrature", {{"t", "0.01,0.5,1,3,12"}}, vals, worst, 1e-12);
    }));
    return out;
}

// ---------------------------------------------------------------- lattice
inline std::vector<Report> suite_lattice(std::uint64_t seed) {
    std::vector<Report> out;
    out.push_back(timed([&] {
        Rng g(seed);
        double worst = 0;
        for (int k = 0; k < 1000; ++k) {
            PointH2 z = random_point(g);
            LatMat M = random_mat(g, 6);
            double lhs = transform(M, z).norm2();
            double rhs = 2.0 * r_kernel(z, M) + 2.0 * double(M.det());
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        return make_report("lattice.majorant_identity", {{"samples", "1000"}, {"seed", std::to_string(seed)}}, {}, worst, 1e-10);
    }));
    out.push_back(timed([&] {
        Rng g(seed + 1);
        double worst = 0;
        for (int k = 0; k < 200; ++k) {
            PointH2 z = random_point(g);
            LatMat M = random_mat(g, 4);
            worst = std::max(worst, std::abs(transform(M, z).det() - double(M.det())));
        }
        return make_report("lattice.determinant_preserved", {{"samples", "200"}}, {}, worst, 1e-10);
    }));
    out.push_back(timed([] {
        PointH2 z(0, 2, 0, 2);
        auto a = enumerate_majorant(1, z, 10.0);
        auto b = oracle::brute_majorant_list(1, z, 10.0, 10);
        std::sort(b.begin(), b.end());
        return make_report("lattice.enumeration_vs_brute_force", {{"m", "1"}, {"z", "(2i,2i)"}, {"radius", "10"}},
                           {double(a.size()), double(b.size())}, a == b ? 0.0 : 1.0, 0.0);
    }));
    return out;
}

// ---------------------------------------------------------------- fourier
struct FourierPoint {
    double v, t, s;
    i64 b, c;
};

inline std::vector<Report> suite_fourier(std::uint64_t) {
    std::vector<Report> out;
    const FourierPoint p0[] = {{1, 2, 1, 1, -1}, {1, 2.5, 1.3, 2, -1}, {0.7, 2.5, 1.3, 2, -1}, {2, 3, 0.8, 0, 1}, {1.3, 3, 0.6, -1, 2}};
    for (const auto& p : p0) {
        out.push_back(timed([&] {
            double y = std::abs(double(p.b) * p.t / p.s + double(p.c) * p.t * p.s);
            double closed = fourier_a0(p.v, p.t, p.s, p.b, p.c);
            double ref = oracle::quad_fourier(p.v, p.t, y, 0);
            return make_report("fourier.a0",
                               {{"v", num(p.v)}, {"t", num(p.t)}, {"s", num(p.s)}, {"b", std::to_string(p.b)}, {"c", std::to_string(p.c)}},
                               {closed, ref}, std::abs(closed - ref), 1e-8);
        }));
    }
    struct NP {
        double v, t, y;
        i64 n;
    };
    const NP pn[] = {{1, 1.5, 0.5, 1}, {1, 1.0, 0.3, 1}, {0.5, 1.2, 0.2, 2}, {2, 0.8, 0.5, -1}, {1.5, 2.0, 0.4, 3}};
    for (const auto& p : pn) {
        out.push_back(timed([&] {
            double closed = fourier_an(p.v, p.t, 1.0, p.y, p.n);
            double ref = oracle::quad_fourier(p.v, p.t, p.y, p.n);
            return make_report("fourier.an", {{"v", num(p.v)}, {"t", num(p.t)}, {"y", num(p.y)}, {"n", std::to_string(p.n)}},
                               {closed, ref}, std::abs(closed - ref), 1e-8);
        }));
    }
    out.push_back(timed([] {
        // bound with 1/v in the exponent, on points with y < t^2 / v
        const NP pts[] = {{1, 1, 0.5, 1}, {0.5, 1.5, 2, 1}, {2, 2, 1.5, 2}, {1, 0.8, 0.3, 1}, {1.5, 1.2, 0.4, 3}};
        double worst = 0;
        for (const auto& p : pts) {
            double a = std::abs(fourier_modified(p.v, p.t, p.y, p.n));
            worst = std::max(worst, a / modified_coeff_bound(p.v, p.t, p.n));
        }
        return make_report("fourier.modified_decay", {{"points", "5"}}, {worst}, std::max(0.0, worst - 1.0), 0.0);
    }));
    return out;
}

// ---------------------------------------------------------------- boundary
struct Ray {
    double s0, x1, x2;
};

inline const std::vector<Ray>& boundary_rays() {
    static const std::vector<Ray> r{{2.0, 0.1, 0.2}, {1.3, 0.37, -0.21}, {0.7, 0.0, 0.5}};
    return r;
}

// |Xi(1,z,1) - model| along a ray; passes when t=20 is below 1e-6, each difference sits under the
// certified remainder bound plus a roundoff allowance, and that bound decreases strictly.
inline Report boundary_ray_report(const Ray& ray) {
    const double v = 1.0;
    std::vector<double> diffs, logbounds;
    bool consistent = true;
    for (double t : {5.0, 10.0, 20.0}) {
        PointH2 z = PointH2::from_ts(ray.x1, ray.x2, t, ray.s0);
        auto rep = kudla_green(v, z, 1, 1e-15);
        double model = boundary_expansion(v, z, 1);
        double diff = std::abs(rep.value - model);
        double lb = log_boundary_remainder_bound(v, z, 1);
        double allowance = 1e-13 * (1.0 + std::abs(rep.value)) + rep.tail_bound;
        if (diff > std::exp(lb) + allowance) consistent = false;
        diffs.push_back(diff);
        logbounds.push_back(lb);
    }
    bool decreasing = logbounds[0] > logbounds[1] && logbounds[1] > logbounds[2];
    double residual = diffs.back();
    if (!consistent || !decreasing) residual = std::max(residual, 1.0);
    std::vector<double> vals = diffs;
    vals.insert(vals.end(), logbounds.begin(), logbounds.end());
    return make_report("boundary.near_D_m1", {{"s0", num(ray.s0)}, {"x1", num(ray.x1)}, {"x2", num(ray.x2)}, {"t", "5,10,20"}}, vals,
                       residual, 1e-6);
}

inline std::vector<Report> suite_boundary_expansion(std::uint64_t) {
    std::vector<Report> out;
    for (const auto& r : boundary_rays()) out.push_back(timed([&] { return boundary_ray_report(r); }));
    return out;
}

inline std::vector<Report> suite_zero_term(std::uint64_t) {
    std::vector<Report> out;
    out.push_back(timed([] {
        auto f = [](double t) { return regularized_iii(t, 1.0).value - 2.0 * t + std::log(t * t); };
        double f30 = f(30), f40 = f(40), c = regularized_iii_limit();
        return make_report("zero.iii_drift", {{"v", "1"}, {"t", "30,40"}}, {f30, f40, c}, std::abs(f40 - f30), 1e-4);
    }));
    out.push_back(timed([] {
        double worst = 0;
        std::vector<double> vals;
        for (double t : {5.0, 10.0, 20.0, 40.0}) {
            double val = regularized_iii(t, 1.0).value - 2.0 * t + std::log(t * t);
            vals.push_back(val);
            worst = std::max(worst, std::abs(val - regularized_iii_limit()));
        }
        return make_report("zero.iii_limit_constant", {{"v", "1"}, {"t", "5,10,20,40"}}, vals, worst, 1e-4);
    }));
    return out;
}

inline std::vector<Report> suite_boundary(std::uint64_t seed) {
    auto a = suite_boundary_expansion(seed);
    auto b = suite_zero_term(seed);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// ---------------------------------------------------------------- ddc
inline std::vector<Report> suite_ddc(std::uint64_t) {
    std::vector<Report> out;
    const double h = 1e-3;
    out.push_back(timed([&] {
        PointH2 z(0, 1, 0, 2);
        auto num_ = ddc_numeric([](const PointH2& w) { return w.t(); }, z, h);
        return make_report("ddc.t", {{"z", "(i,2i)"}}, {}, (num_ - ddc_t_closed(z)).max_abs(), 1e-5);
    }));
    out.push_back(timed([&] {
        PointH2 z(0.3, 1.2, -0.4, 2.1);
        auto num_ = ddc_numeric([](const PointH2& w) { return std::log(w.y1 * w.y2); }, z, h);
        return make_report("ddc.log_t2", {{"z", "(0.3+1.2i,-0.4+2.1i)"}}, {}, (num_ + phi_km(1.0, z, LatMat{})).max_abs(), 1e-5);
    }));
    struct Case {
        double v;
        PointH2 z;
        LatMat M;
    };
    const Case cases[] = {{1.0, PointH2(0, 1, 0, 2), {1, 0, 0, -1}},
                          {1.0, PointH2(1.0 / 3, 2, 0, 3), {0, 1, -1, 0}},
                          {0.7, PointH2(0.2, 1.3, -0.4, 0.8), {0, 1, 1, 0}},
                          {2.0, PointH2(0.1, 1, 0.3, 1.5), {1, 2, 3, 1}},
                          {1.0, PointH2(-0.25, 0.9, 0.15, 1.1), {0, -1, -1, 0}}};
    for (const auto& c : cases) {
        out.push_back(timed([&] {
            double r = verify_kudla_identity(c.v, c.z, c.M, h);
            return make_report("ddc.xi_vs_phi_km",
                               {{"v", num(c.v)}, {"z1", cnum(c.z.z1())}, {"z2", cnum(c.z.z2())}, {"M", c.M.str()}},
                               {r_kernel(c.z, c.M)}, r, 1e-5);
        }));
    }
    struct RC {
        double v, s;
        i64 b, c;
    };
    const RC rcs[] = {{1.0, 1.3, 1, -2}, {0.7, 2.0, 1, -1}, {1.0, 0.8, 2, 1}, {1.5, 1.1, -1, 3}};
    for (const auto& r : rcs) {
        out.push_back(timed([&] {
            auto p = verify_restricted_parts(r.v, 0.0, 1.0, r.s, r.b, r.c, h);
            return make_report("ddc.restricted_ode",
                               {{"v", num(r.v)}, {"s", num(r.s)}, {"b", std::to_string(r.b)}, {"c", std::to_string(r.c)}},
                               {p.b_ode, p.i_ode}, p.value(), 1e-5);
        }));
    }
    out.push_back(timed([&] {
        PointH2 z(0.1, 1.4, -0.2, 0.9);
        double r = verify_restricted_ddc(1.0, 0.25, z, 1, -2, h);
        return make_report("ddc.restricted_full", {{"z", "(0.1+1.4i,-0.2+0.9i)"}, {"b", "1"}, {"c", "-2"}, {"u", "0.25"}}, {}, r, 1e-5);
    }));
    return out;
}

// ---------------------------------------------------------------- theta
inline std::vector<Report> suite_theta(std::uint64_t, double tol = 1e-9) {
    std::vector<Report> out;
    const Tau taus[] = {Tau(0.5, 2.0), Tau(1.0 / 3, 1.0), Tau(0.2, 0.8)};
    const ThetaKind scalar_kinds[] = {ThetaKind::jacobi, ThetaKind::jacobi_km, ThetaKind::siegel11, ThetaKind::siegel11_km,
                                      ThetaKind::check_km};
    for (auto k : scalar_kinds)
        for (const auto& t : taus)
            out.push_back(timed([&] {
                double r = modularity_residual(k, t, std::nullopt, 50);
                return make_report("theta." + std::string(to_string(k)), {{"tau", cnum(t.value())}, {"cutoff", "50"}}, {}, r, tol);
            }));
    out.push_back(timed([&] {
        cplx val = theta_eval(ThetaKind::jacobi_km, Tau(0, 1), std::nullopt, 50).scalar;
        return make_report("theta.jacobi_km_at_i", {{"tau", "i"}}, {val.real(), val.imag()}, std::abs(val), tol);
    }));
    const std::pair<Tau, PointH2> pts[] = {{Tau(0.2, 1.0), PointH2(0, 1, 0, 1)},
                                           {Tau(1.0 / 3, 1.2), PointH2(0.1, 1.1, -0.2, 0.9)},
                                           {Tau(0.5, 1.0), PointH2(0.3, 1.0, 0.0, 1.2)}};
    for (const auto& [t, z] : pts) {
        out.push_back(timed([&] {
            double r = modularity_residual(ThetaKind::siegel22, t, z, 50);
            return make_report("theta.siegel22", {{"tau", cnum(t.value())}, {"z1", cnum(z.z1())}, {"z2", cnum(z.z2())}}, {}, r, tol);
        }));
    }
    const std::pair<Tau, PointH2> kpts[] = {{Tau(0, 1), PointH2(0, 1, 0, 2)},
                                            {Tau(1.0 / 3, 1.2), PointH2(0.1, 1.1, -0.2, 0.9)},
                                            {Tau(0.5, 1.0), PointH2(0.3, 1.0, 0.0, 1.2)}};
    for (const auto& [t, z] : kpts) {
        out.push_back(timed([&] {
            double r = modularity_residual(ThetaKind::phi_km_series, t, z, 50);
            return make_report("theta.phi_km_series", {{"tau", cnum(t.value())}, {"z1", cnum(z.z1())}, {"z2", cnum(z.z2())}}, {}, r,
                               std::max(tol, 1e-6));
        }));
    }
    return out;
}

// ---------------------------------------------------------------- poisson
inline std::vector<Report> suite_poisson(std::uint64_t) {
    std::vector<Report> out;
    const std::pair<Tau, double> ps[] = {{Tau(1.0 / 3, 1.0), 1.0}, {Tau(0, 2.0), 2.0}, {Tau(0.2, 1.5), 0.5}};
    for (const auto& [t, s] : ps)
        out.push_back(timed([&] {
            double r = poisson_defect_check(t, s, 60);
            return make_report("poisson.defect", {{"tau", cnum(t.value())}, {"s", num(s)}, {"cutoff", "60"}}, {}, r, 1e-7);
        }));
    const std::pair<Tau, PointH2> xs[] = {{Tau(1.0 / 3, 1.0), PointH2(0, 2, 0, 0.5)},
                                          {Tau(0, 2.0), PointH2(0.1, 1, -0.3, 3)},
                                          {Tau(0.2, 1.5), PointH2(0.25, 1.5, 0.5, 1.5)}};
    for (const auto& [t, z] : xs)
        out.push_back(timed([&] {
            double r = modularity_residual(ThetaKind::xi_check_plus, t, z, 60);
            return make_report("poisson.xi_check_plus_weight2", {{"tau", cnum(t.value())}, {"z1", cnum(z.z1())}, {"z2", cnum(z.z2())}},
                               {}, r, 1e-7);
        }));
    for (const Tau& t : {Tau(0, 2.0), Tau(0.3, 0.7), Tau(0.1, 0.5)})
        out.push_back(timed([&] {
            auto f = f2_limits(t, 1.0, 120);
            double r = std::abs(*f.f2_origin - *f.f2_closed);
            return make_report("poisson.f2_origin", {{"tau", cnum(t.value())}, {"s", "1"}, {"cutoff", "120"}},
                               {f.f2_origin->real(), f.f2_origin->imag(), f.f2_closed->real(), f.f2_closed->imag(),
                                std::abs(*f.f2_origin - *f.f2_closed_printed)},
                               r, 1e-10);
        }));
    out.push_back(timed([] {
        Tau t(0.2, 1.0);
        double s = 1.5;
        cplx g = g_tau_numeric(t, s, 1e-4, 0.3);
        cplx lim = f2_limits(t, s, 10).g_limit;
        return make_report("poisson.g_limit", {{"tau", cnum(t.value())}, {"s", num(s)}, {"x", "1e-4"}, {"y", "0.3"}},
                           {g.real(), g.imag(), lim.real(), lim.imag()}, std::abs(g - lim) / std::abs(lim), 1e-3);
    }));
    return out;
}

// ---------------------------------------------------------------- hurwitz
inline std::vector<Report> suite_hurwitz(std::uint64_t) {
    std::vector<Report> out;
    out.push_back(timed([] {
        int bad = 0;
        for (i64 N = 0; N <= 800; ++N)
            if (!(hurwitz_h(N) == oracle::hurwitz_by_class_numbers(N))) ++bad;
        return make_report("hurwitz.h_vs_class_number_formula", {{"N", "0..800"}}, {double(bad)}, double(bad), 0.0);
    }));
    out.push_back(timed([] {
        Rational h1 = hurwitz_h1(1), h2 = hurwitz_h1(2);
        double r = (h1 == Rational{1} ? 0.0 : 1.0) + (h2 == Rational{4} ? 0.0 : 1.0);
        return make_report("hurwitz.h1_small", {{"N", "1,2"}}, {h1.to_double(), h2.to_double()}, r, 0.0);
    }));
    for (i64 N = 1; N <= 200; ++N)
        out.push_back(timed([&] {
            Rational lhs{2 * sigma1(N)};
            Rational rhs = hurwitz_h1(N) + Rational{min_divisor_sum(N)};
            return make_report("hurwitz.identity", {{"N", std::to_string(N)}}, {lhs.to_double(), rhs.to_double()},
                               lhs == rhs ? 0.0 : std::abs((lhs - rhs).to_double()) + 1.0, 0.0);
        }));
    return out;
}

// ---------------------------------------------------------------- heights
inline std::vector<Report> suite_heights(std::uint64_t) {
    std::vector<Report> out;
    CutoffSpec spec;
    for (i64 m : {1, 2, 3})
        out.push_back(timed([&] {
            auto h = height_numeric(m, 1.0, 40.0, spec);
            double ref = height_closed(m, 1.0).value;
            return make_report("heights.numeric", {{"m", std::to_string(m)}, {"v", "1"}, {"T", "40"}}, {h.value, ref, h.error_estimate},
                               std::abs(h.value - ref), 1e-3);
        }));
    out.push_back(timed([&] {
        double r = zero_slope_ratio(1.0, 20.0, 40.0, spec);
        double e = zero_slope_expected(1.0);
        return make_report("heights.zero_slope_ratio", {{"v", "1"}, {"T", "20,40"}}, {r, e}, std::abs(r - e), 1e-3);
    }));
    out.push_back(timed([] {
        double worst = 0;
        auto e2 = sigma1_series(20);
        for (i64 m = 1; m <= 20; ++m) worst = std::max(worst, std::abs(height_closed(m, 1.0).value - 4.0 * pi * e2.coeff(m).real()));
        return make_report("heights.termwise_series", {{"m", "1..20"}}, {}, worst, 1e-12);
    }));
    out.push_back(timed([] {
        cplx e = eisenstein_e2(Tau(0, 1), 80);
        return make_report("heights.e2_at_i", {{"tau", "i"}, {"cutoff", "80"}}, {e.real(), e.imag()}, std::abs(e), 1e-10);
    }));
    return out;
}

using SuiteFn = std::function<std::vector<Report>(std::uint64_t)>;

inline const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> s{
        {"special", suite_special},   {"lattice", suite_lattice}, {"fourier", suite_fourier},
        {"boundary", suite_boundary}, {"ddc", suite_ddc},         {"theta", [](std::uint64_t sd) { return suite_theta(sd); }},
        {"poisson", suite_poisson},   {"hurwitz", suite_hurwitz}, {"heights", suite_heights}};
    return s;
}

inline std::vector<Report> run_suite(const std::string& name, std::uint64_t seed) {
    std::vector<Report> out;
    for (const auto& [n, f] : suites()) {
        if (name != "all" && name != n) continue;
        auto r = f(seed);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

inline bool is_suite(const std::string& name) {
    if (name == "all") return true;
    for (const auto& [n, f] : suites())
        if (n == name) return true;
    return false;
}

}  // namespace kudla::verify
