#include <gtest/gtest.h>

#include <cmath>

#include <kudla/heights.hpp>

using namespace kudla;

TEST(Heights, ClosedForm) {
    EXPECT_DOUBLE_EQ(height_closed(1, 1.0).value, 4.0 * pi);
    EXPECT_DOUBLE_EQ(height_closed(6, 1.0).value, 48.0 * pi);
    EXPECT_DOUBLE_EQ(height_closed(-3, 1.0).value, 0.0);
    EXPECT_DOUBLE_EQ(height_closed(0, 2.0).value, 4.0 * pi * c0(2.0));
    EXPECT_THROW(c0(0.0), domain_error);
}

TEST(Heights, NumericLimit) {
    CutoffSpec spec;
    for (i64 m : {1, 2, 3}) {
        auto h = height_numeric(m, 1.0, 40.0, spec);
        EXPECT_NEAR(h.value, 4.0 * pi * double(sigma1(m)), 1e-3);
        EXPECT_EQ(h.method, HeightMethod::numeric_limit);
    }
    EXPECT_NEAR(height_numeric(2, 0.7, 40.0, spec).value, 12.0 * pi, 1e-3);
}

TEST(Heights, NumericPreconditions) {
    EXPECT_THROW(height_numeric(0, 1.0, 40.0, CutoffSpec{}), domain_error);
    EXPECT_THROW(height_numeric(1, 1.0, 10.0, CutoffSpec{}), domain_error);
}

TEST(Heights, ZeroSlope) {
    for (double v : {1.0, 0.6}) EXPECT_NEAR(zero_slope_ratio(v, 20.0, 40.0, CutoffSpec{}), zero_slope_expected(v), 1e-3) << v;
}

TEST(Heights, SeriesIsFourPiE2) {
    for (Tau t : {Tau(0, 1), Tau(0.3, 0.8)})
        EXPECT_NEAR(std::abs(height_series(t, 60) - 4.0 * pi * eisenstein_e2(t, 60)), 0.0, 1e-12);
}
