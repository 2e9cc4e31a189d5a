#include <gtest/gtest.h>

#include <cmath>

#include <kudla/green.hpp>
#include <verify/oracles.hpp>

using namespace kudla;

namespace {

// Direct sum over a fixed brute-force box, no tail control.
double green_brute(double v, const PointH2& z, i64 m, long box) {
    double acc = 0;
    for (long a = -box; a <= box; ++a)
        for (long b = -box; b <= box; ++b)
            for (long c = -box; c <= box; ++c)
                for (long d = -box; d <= box; ++d) {
                    LatMat M{a, b, c, d};
                    if (M.det() != m || M.is_zero()) continue;
                    acc += oracle::quad_exp_integral(2.0 * pi * v * r_kernel(z, M));
                }
    return 0.5 * acc;
}

}  // namespace

TEST(KudlaGreen, MatchesBruteForceBox) {
    PointH2 z(0.1, 1.2, -0.3, 0.9);
    for (i64 m : {-1, 1, 2}) {
        auto r = kudla_green(1.0, z, m, 1e-12);
        EXPECT_NEAR(r.value, green_brute(1.0, z, m, 7), 1e-10) << "m=" << m;
        EXPECT_LE(r.tail_bound, 1e-12 * (1 + 1e-9));
        EXPECT_GT(r.terms_used, 0);
    }
}

TEST(KudlaGreen, SymmetricUnderSwap) {
    PointH2 z(0.4, 1.1, -0.2, 1.6);
    EXPECT_NEAR(kudla_green(1.0, z, 2, 1e-12).value, kudla_green(1.0, z.swapped(), 2, 1e-12).value, 1e-11);
}

TEST(KudlaGreen, InvariantUnderTranslation) {
    PointH2 z(0.4, 1.1, -0.2, 1.6), w(1.4, 1.1, 2.8, 1.6);
    EXPECT_NEAR(kudla_green(0.8, z, 1, 1e-12).value, kudla_green(0.8, w, 1, 1e-12).value, 1e-11);
}

TEST(KudlaGreen, ErrorsAndPositivity) {
    EXPECT_THROW(kudla_green(1.0, PointH2(0, 1, 0, 1), 1, 1e-9), on_cycle_error);
    EXPECT_THROW(kudla_green(1.0, PointH2(0, 1, 0, 2), 0, 1e-9), domain_error);
    EXPECT_GT(kudla_green(1.0, PointH2(0, 2, 0, 2), -1, 1e-9).value, 0.0);
    try {
        kudla_green(1.0, PointH2(0.5, 2, 0.5, 2), 1, 1e-9);
        FAIL();
    } catch (const on_cycle_error& e) {
        EXPECT_EQ(e.matrix.det(), 1);
    }
}

TEST(KudlaGreen, ResourceCap) { EXPECT_THROW(kudla_green(1e-4, PointH2(0.1, 50, 0.2, 40), 1, 1e-15), truncation_error); }

TEST(TailBound, DominatesDroppedTerms) {
    PointH2 z(0.2, 1.3, 0.1, 0.7);
    const double v = 0.9;
    for (i64 m : {-1, 1, 3}) {
        double r = green_min_radius(v, m) + 3.0;
        double inner = green_at_radius(v, z, m, r).value;
        double outer = green_at_radius(v, z, m, r + 40.0).value;
        EXPECT_LE(outer - inner, green_tail_bound(v, z, m, r)) << "m=" << m;
        EXPECT_GE(outer - inner, 0.0);
    }
}

TEST(Fourier, ClosedFormsMatchQuadrature) {
    EXPECT_NEAR(fourier_a0(1.0, 2.0, 1.3, 1, -1), oracle::quad_fourier(1.0, 2.0, std::abs(2.0 / 1.3 - 2.6), 0), 1e-9);
    EXPECT_NEAR(fourier_a0(1.0, 1.5, 1.0, 1, 0), oracle::quad_fourier_a0_2d(1.0, 1.5, 1.5), 1e-8);
    for (i64 n : {1, 2, -3})
        EXPECT_NEAR(fourier_an(0.9, 1.4, 1.0, 0.35, n), oracle::quad_fourier(0.9, 1.4, 0.35, n), 1e-9) << n;
}

TEST(Fourier, ModifiedCoefficientIsDifference) {
    double v = 1.1, t = 1.3, y = 0.6;
    for (i64 n : {1, 2, 4}) {
        double expect = fourier_an(v, t, 1.0, y, n) - std::exp(-2.0 * pi * y * double(n)) / double(n);
        EXPECT_NEAR(fourier_modified(v, t, y, n), expect, 1e-13);
        EXPECT_LE(std::abs(fourier_modified(v, t, y, n)), modified_coeff_bound(v, t, n));
    }
}

TEST(Boundary, LogTermSingularOnAxis) {
    EXPECT_THROW(log_term(PointH2(0.25, 1, 0.5, 2), 1, -2), singular_error);
    EXPECT_TRUE(std::isfinite(log_term(PointH2(0.25, 2, 0.3, 1), 1, -2)));
}

TEST(Boundary, FactorPairsCoverBothSigns) {
    auto p = factor_pairs(6);
    EXPECT_EQ(p.size(), 8u);
    for (auto [b, c] : p) EXPECT_EQ(-b * c, 6);
    EXPECT_EQ(factor_pairs(-6).size(), 8u);
}

TEST(Boundary, ExpansionApproachesGreenFunction) {
    const double v = 1.0;
    double prev = 1e300;
    for (double t : {2.0, 3.0, 4.0}) {
        PointH2 z = PointH2::from_ts(0.13, -0.27, t, 1.4);
        double diff = std::abs(kudla_green(v, z, 1, 1e-14).value - boundary_expansion(v, z, 1));
        EXPECT_LE(diff, std::exp(log_boundary_remainder_bound(v, z, 1)) + 1e-12);
        EXPECT_LT(diff, prev);
        prev = diff;
    }
}

TEST(XiCheck, AxisClosedFormMatchesDirect) {
    for (double s : {0.7, 1.0, 1.9})
        EXPECT_NEAR(xi_check_axis_closed(1.2, 2.0, s), xi_check_axis_direct(1.2, 2.0, s, 400), 1e-10) << s;
}

TEST(XiCheck, ZeroTailBound) {
    PointH2 z = PointH2::from_ts(0, 0, 3.0, 1.2);
    auto lo = xi_check_zero(1.0, z, 3), hi = xi_check_zero(1.0, z, 60);
    EXPECT_LE(std::abs(hi.value - lo.value), lo.tail_bound);
}

TEST(Partition, SmoothStep) {
    CutoffSpec spec;
    EXPECT_EQ(partition_rho_t(1.0, spec), 0.0);
    EXPECT_EQ(partition_rho_t(3.5, spec), 1.0);
    EXPECT_NEAR(partition_rho_t(2.5, spec), 0.5, 1e-15);
    EXPECT_THROW(CutoffSpec(3.0, 2.0), domain_error);
}

TEST(ZeroTerm, RegularizedLimit) {
    double f30 = regularized_iii(30, 1).value - 60 + std::log(900.0);
    double f40 = regularized_iii(40, 1).value - 80 + std::log(1600.0);
    EXPECT_NEAR(f30, f40, 1e-4);
    EXPECT_NEAR(f40, regularized_iii_limit(), 1e-4);
}

TEST(ZeroTerm, GreenZeroFiniteAndSymmetric) {
    PointH2 z(0.1, 1.3, 0.2, 0.8);
    auto a = green_zero(1.0, z, 1e-12), b = green_zero(1.0, z.swapped(), 1e-12);
    EXPECT_TRUE(std::isfinite(a.value));
    EXPECT_NEAR(a.value, b.value, 1e-10);
}

TEST(Modified, AgreesWithGreenAwayFromBoundary) {
    PointH2 z(0.1, 1.3, 0.2, 0.8);  // t < t0, rho = 0
    EXPECT_DOUBLE_EQ(green_modified(1.0, z, 2, CutoffSpec{}, 1e-12).value, kudla_green(1.0, z, 2, 1e-12).value);
}
