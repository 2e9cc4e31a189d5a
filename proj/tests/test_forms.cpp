#include <gtest/gtest.h>

#include <cmath>

#include <kudla/forms.hpp>

using namespace kudla;

TEST(Ddc, PlurisubharmonicReference) {
    // dd^c(-log y1) = (i/8pi) e1
    PointH2 z(0.2, 1.3, -0.1, 0.7);
    auto f = ddc_numeric([](const PointH2& w) { return -std::log(w.y1); }, z);
    EXPECT_NEAR(std::abs(f.c11 - I / (8.0 * pi)), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(f.c22), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(f.c12), 0.0, 1e-8);
}

TEST(Ddc, OfT) {
    for (PointH2 z : {PointH2(0, 1, 0, 2), PointH2(0.3, 0.6, 1.2, 1.9)}) {
        auto f = ddc_numeric([](const PointH2& w) { return w.t(); }, z);
        EXPECT_LT(form_distance(f, ddc_t_closed(z)), 1e-7);
    }
}

TEST(Ddc, OfTF) {
    PointH2 z(0.3, 1.2, -0.4, 2.1);
    auto F = [](double s) { return std::sin(s) + s * s; };
    auto f = ddc_numeric([&](const PointH2& w) { return w.t() * F(w.s()); }, z);
    double s = z.s();
    EXPECT_LT(form_distance(f, ddc_tF_closed(z, F(s), std::cos(s) + 2 * s, -std::sin(s) + 2)), 1e-7);
}

TEST(Ddc, LogT2IsMinusPhiAtZero) {
    PointH2 z(0.3, 1.2, -0.4, 2.1);
    auto f = ddc_numeric([](const PointH2& w) { return std::log(w.y1 * w.y2); }, z);
    EXPECT_LT((f + phi_km(1.0, z, LatMat{})).max_abs(), 1e-7);
}

TEST(Ddc, StepValidation) {
    PointH2 z;
    auto f = [](const PointH2& w) { return w.t(); };
    EXPECT_THROW(ddc_numeric(f, z, 1e-6), domain_error);
    EXPECT_THROW(ddc_numeric(f, z, 0.1), domain_error);
}

TEST(KudlaIdentity, OffCycle) {
    EXPECT_LT(verify_kudla_identity(1.0, PointH2(0, 1, 0, 2), {1, 0, 0, -1}), 1e-6);
    EXPECT_LT(verify_kudla_identity(0.7, PointH2(0.2, 1.3, -0.4, 0.8), {0, 1, 1, 0}), 1e-6);
    EXPECT_LT(verify_kudla_identity(1.3, PointH2(0.1, 1.1, 0.45, 0.9), {2, 1, 1, 1}), 1e-6);
}

TEST(KudlaIdentity, RejectsCycle) { EXPECT_THROW(verify_kudla_identity(1.0, PointH2(0, 1, 0, 1), {1, 0, 0, 1}), on_cycle_error); }

TEST(PhiKM, RealFormAndRotationInvariance) {
    PointH2 z(0.2, 1.4, -0.3, 0.6);
    LatMat M{1, 2, -1, 3};
    auto f = phi_km(0.9, z, M);
    EXPECT_LT(f.reality_defect(), 1e-14);
    auto g = phi_km(0.9, z, -M);
    EXPECT_LT(form_distance(f, g), 1e-14);
}

TEST(PhiKM, WedgeSquare) {
    // c11 c22 - c12 c21 = (1/16pi)(v(R + (M,M)) - 1/4pi) e^{-4 pi v R}, (M,M) = 2 det M
    PointH2 z(0.1, 1.2, 0.3, 0.8);
    const double v = 1.1;
    for (LatMat M : {LatMat{1, 0, 0, -1}, LatMat{2, 1, 1, 3}, LatMat{0, 1, 1, 0}, LatMat{}}) {
        const double R = r_kernel(z, M);
        auto f = phi_km(v, z, M);
        double expect = (v * (R + 2.0 * double(M.det())) - 1.0 / (4.0 * pi)) / (16.0 * pi) * std::exp(-4.0 * pi * v * R);
        cplx top = wedge_top(f, f);
        EXPECT_NEAR(top.real(), expect, 1e-14) << M.str();
        EXPECT_NEAR(top.imag(), 0.0, 1e-14);
    }
}

TEST(Restricted, OdesHold) {
    for (auto [s, b, c] : {std::tuple{1.3, 1L, -2L}, {2.0, 1L, -1L}, {0.8, 2L, 1L}, {1.1, -1L, 3L}}) {
        auto r = verify_restricted_parts(1.0, 0.0, 1.0, s, b, c);
        EXPECT_LT(r.b_ode, 1e-6);
        EXPECT_LT(r.i_ode, 1e-6);
    }
}

TEST(Restricted, ConeWall) { EXPECT_THROW(verify_restricted_parts(1.0, 0.0, 1.0, 1.0, 1, -1), domain_error); }

TEST(Restricted, FullDdc) {
    EXPECT_LT(verify_restricted_ddc(1.0, 0.25, PointH2(0.1, 1.4, -0.2, 0.9), 1, -2), 1e-6);
    EXPECT_LT(verify_restricted_ddc(0.8, 0.0, PointH2(0.1, 1.4, -0.2, 0.9), 2, 1), 1e-6);
}

TEST(Restricted, PullbackToDiagonalCurve) {
    for (LatMat M : {LatMat{1, 0, 0, -1}, LatMat{1, 2, -1, 1}, LatMat{2, 1, 3, 0}}) {
        auto [lhs, rhs] = restrict_to_12(1.0, 0.3, cplx(0.2, 1.3), M);
        EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12 * (1 + std::abs(rhs))) << M.str();
    }
}
