#include <gtest/gtest.h>

#include <algorithm>

#include <kudla/lattice.hpp>
#include <verify/oracles.hpp>
#include <verify/suites.hpp>

using namespace kudla;

TEST(Majorant, IdentityOnRandomPoints) {
    verify::Rng g(11);
    for (int k = 0; k < 500; ++k) {
        PointH2 z = verify::random_point(g);
        LatMat M = verify::random_mat(g, 5);
        EXPECT_NEAR(majorant(z, M), 2.0 * r_kernel(z, M) + 2.0 * double(M.det()), 1e-10);
        EXPECT_NEAR(majorant(z, M), oracle::brute_majorant(M, z), 1e-9 * (1 + majorant(z, M)));
        EXPECT_GE(r_kernel(z, M), -1e-12);
    }
}

TEST(Majorant, KernelVanishesOnHeckeGraph) {
    // z1 = gamma z2 lies on T(det gamma); the matching M has R = 0
    cplx w(0.3, 1.7);
    for (i64 N : {1, 2, 3, 6}) {
        for (const auto& g : hecke_reps(N)) {
            PointH2 z(mobius(g, w), w);
            EXPECT_TRUE(on_divisor(z, N, 1e-9)) << g.str();
        }
    }
}

TEST(Majorant, OffDivisor) {
    PointH2 z(0.1, 1.3, 0.37, 0.9);
    EXPECT_FALSE(on_divisor(z, 1, 1e-9));
    EXPECT_FALSE(on_divisor(z, -3, 1e-9));
    EXPECT_THROW(on_divisor(z, 0, 1e-9), domain_error);
}

TEST(Enumerate, MajorantMatchesBruteForce) {
    for (i64 m : {-2, -1, 1, 2, 3}) {
        PointH2 z(0.21, 1.4, -0.33, 0.8);
        auto got = enumerate_majorant(m, z, 14.0);
        auto want = oracle::brute_majorant_list(m, z, 14.0, 12);
        std::sort(want.begin(), want.end());
        EXPECT_EQ(got, want) << "m=" << m;
    }
}

TEST(Enumerate, ZeroDeterminantExcludesOrigin) {
    PointH2 z(0, 1, 0, 1);
    auto got = enumerate_majorant(0, z, 6.0);
    EXPECT_TRUE(std::none_of(got.begin(), got.end(), [](const LatMat& M) { return M.is_zero(); }));
    auto want = oracle::brute_majorant_list(0, z, 6.0, 8);
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want);
}

TEST(Enumerate, DeterminantBoxMatchesBruteForce) {
    for (i64 m : {-1, 0, 2, 5}) {
        auto got = enumerate_det(m, 20.0);
        auto want = oracle::brute_det(m, 20.0);
        std::sort(want.begin(), want.end());
        EXPECT_EQ(got, want) << "m=" << m;
    }
}

TEST(Enumerate, BallContainsOriginAndAllDeterminants) {
    PointH2 z(0, 1.5, 0, 1.5);
    auto ball = enumerate_ball(z, 8.0);
    EXPECT_TRUE(std::binary_search(ball.begin(), ball.end(), LatMat{}));
    std::size_t count = 1;
    for (i64 m = -4; m <= 4; ++m) count += enumerate_majorant(m, z, 8.0).size();
    EXPECT_EQ(ball.size(), count);
}

TEST(Hecke, RepresentativeCountIsSigma1) {
    EXPECT_EQ(hecke_reps(1).size(), 1u);
    EXPECT_EQ(hecke_reps(6).size(), 12u);
    EXPECT_EQ(hecke_reps(7).size(), 8u);
    EXPECT_THROW(hecke_reps(0), domain_error);
}

TEST(Transform, DeterminantPreserved) {
    verify::Rng g(3);
    for (int k = 0; k < 100; ++k) {
        PointH2 z = verify::random_point(g);
        LatMat M = verify::random_mat(g, 3);
        EXPECT_NEAR(transform(M, z).det(), double(M.det()), 1e-10);
    }
}
