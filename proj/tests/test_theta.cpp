#include <gtest/gtest.h>

#include <cmath>

#include <kudla/theta.hpp>

using namespace kudla;

namespace {

// Numerical tau-derivative through the raising operator on the Jacobi theta.
cplx raise_numeric(const Tau& tau) {
    const double h = 1e-5;
    cplx d = (theta_jacobi(Tau(tau.u + h, tau.v), 40) - theta_jacobi(Tau(tau.u - h, tau.v), 40)) / (2 * h);
    // holomorphic: d/dtau = d/du
    return 2.0 * I * tau.v * d + 0.5 * theta_jacobi(tau, 40);
}

}  // namespace

TEST(Jacobi, RaisingOperator) {
    for (Tau t : {Tau(0.1, 0.9), Tau(0.4, 1.7)})
        EXPECT_NEAR(std::abs(theta_jacobi_km(t, 40) - raise_numeric(t)), 0.0, 1e-7);
}

TEST(Jacobi, VanishesAtI) { EXPECT_NEAR(std::abs(theta_jacobi_km(Tau(0, 1), 50)), 0.0, 1e-13); }

TEST(Theta, ScalarKindsModular) {
    for (auto k : {ThetaKind::jacobi, ThetaKind::jacobi_km, ThetaKind::siegel11, ThetaKind::siegel11_km, ThetaKind::check_km})
        for (Tau t : {Tau(0.5, 2.0), Tau(1.0 / 3, 1.0), Tau(-0.2, 0.6)})
            EXPECT_LT(modularity_residual(k, t, std::nullopt, 50), 1e-9) << to_string(k) << " " << t.u << "+" << t.v << "i";
}

TEST(Theta, SiegelWeightOneOne) {
    PointH2 z(0.1, 1.1, -0.2, 0.9);
    EXPECT_LT(modularity_residual(ThetaKind::siegel22, Tau(1.0 / 3, 1.2), z, 50), 1e-9);
}

TEST(Theta, SiegelFactorizesOnDiagonalPoint) {
    // at z = (i, i) the majorant splits and Theta_22 is a product of two binary sums
    PointH2 z(0, 1, 0, 1);
    Tau t(0.2, 1.1);
    cplx direct = theta_siegel22(t, z, 60.0);
    EXPECT_TRUE(std::isfinite(direct.real()));
    EXPECT_NEAR(direct.imag(), 0.0, 1e-12 * std::abs(direct));  // det -> -det symmetry
}

TEST(Theta, PhiKMComponentwise) {
    PointH2 z(0.1, 1.1, -0.2, 0.9);
    EXPECT_LT(modularity_residual(ThetaKind::phi_km_series, Tau(1.0 / 3, 1.2), z, 50), 1e-6);
}

TEST(Theta, ParseKinds) {
    for (auto k : all_theta_kinds) EXPECT_EQ(parse_theta_kind(to_string(k)), k);
    EXPECT_THROW(parse_theta_kind("nope"), domain_error);
    EXPECT_THROW(theta_eval(ThetaKind::siegel22, Tau(0, 1), std::nullopt, 10), domain_error);
}

TEST(Theta, TailBoundsCoverTruncation) {
    Tau t(0.1, 0.6);
    for (auto k : {ThetaKind::jacobi, ThetaKind::siegel11, ThetaKind::check_km}) {
        auto lo = theta_eval(k, t, std::nullopt, 3), hi = theta_eval(k, t, std::nullopt, 40);
        EXPECT_LE(std::abs(hi.scalar - lo.scalar), lo.tail_bound) << to_string(k);
    }
}

TEST(Poisson, DefectAtThreePoints) {
    EXPECT_LT(poisson_defect_check(Tau(1.0 / 3, 1.0), 1.0, 60), 1e-7);
    EXPECT_LT(poisson_defect_check(Tau(0, 2.0), 2.0, 60), 1e-7);
    EXPECT_LT(poisson_defect_check(Tau(0.2, 1.5), 0.5, 60), 1e-7);
}

TEST(Poisson, DefectTermIsNeeded) {
    Tau t(0.2, 1.5);
    const double s = 0.5;
    cplx bare = w_lattice_sum(t.inv(), s, 60) / (t.value() * t.value()) - w_lattice_sum(t, s, 60);
    EXPECT_GT(std::abs(bare), 1e-3);
    EXPECT_NEAR(std::abs(bare - poisson_defect_term(t, s)), 0.0, 1e-7);
}

TEST(XiCheckPlus, KernelAndDirectAgree) {
    PointH2 z(0.1, 1.4, -0.3, 0.8);
    Tau t(0.3, 1.1);
    EXPECT_NEAR(std::abs(xi_check_plus(t, z) - xi_check_plus_direct(t, z)), 0.0, 1e-9);
    EXPECT_LT(modularity_residual(ThetaKind::xi_check_plus, t, z, 60), 1e-7);
}

TEST(F2, CorrectedClosedForm) {
    for (Tau t : {Tau(0, 2.0), Tau(0.3, 0.7)}) {
        auto f = f2_limits(t, 1.0, 120);
        ASSERT_TRUE(f.f2_origin && f.f2_closed && f.f2_closed_printed);
        EXPECT_NEAR(std::abs(*f.f2_origin - *f.f2_closed), 0.0, 1e-10);
    }
    // the two closed forms first differ at q^4
    Tau t(0.3, 0.7);
    auto f = f2_limits(t, 1.0, 120);
    EXPECT_GT(std::abs(*f.f2_origin - *f.f2_closed_printed), 0.5 * std::abs(t.q() * t.q() * t.q() * t.q()));
    EXPECT_FALSE(f2_limits(Tau(0, 1), 2.0, 10).f2_origin);
}

TEST(F2, GLimit) {
    Tau t(0.2, 1.0);
    cplx lim = f2_limits(t, 1.5, 10).g_limit;
    EXPECT_LT(std::abs(g_tau_numeric(t, 1.5, 1e-4, 0.3) - lim) / std::abs(lim), 1e-3);
}

TEST(Funke, DifferenceIsTwiceE2) {
    for (Tau t : {Tau(0.1, 1.0), Tau(-0.35, 0.7)}) {
        auto f = funke_series(t, 60);
        EXPECT_NEAR(std::abs((f.theta_Tt - f.theta_dT) - f.twice_e2), 0.0, 1e-10);
    }
}

TEST(GreenSeries, PeriodicInU) {
    PointH2 z(0.1, 1.3, 0.25, 0.7);
    Tau t(0.2, 1.5);
    EXPECT_LT(modularity_residual(ThetaKind::green_series, t, z, 2), 1e-12);
    auto r = green_series(t, z, 2);
    cplx ref = green_zero(t.v, z, 1e-12).value;
    for (i64 m : {-2, -1, 1, 2}) ref += kudla_green(t.v, z, m, 1e-12).value * e2pi(double(m) * t.value());
    EXPECT_NEAR(r.value, ref.real(), 1e-10);
}
