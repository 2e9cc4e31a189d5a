#include <gtest/gtest.h>

#include <cstdlib>
#include <stdexcept>

#include <kudla/core.hpp>

using namespace kudla;

TEST(Threads, EnvironmentOnlyCaps) {
    ThreadCap cap(6);
    setenv("KUDLA_LAB_THREADS", "2", 1);
    EXPECT_EQ(worker_threads(), 2);
    setenv("KUDLA_LAB_THREADS", "64", 1);
    EXPECT_EQ(worker_threads(), 6);
    unsetenv("KUDLA_LAB_THREADS");
    EXPECT_EQ(worker_threads(), 6);
}

TEST(Threads, CapRestores) {
    int before = worker_threads();
    {
        ThreadCap cap(3);
        EXPECT_EQ(worker_threads(), 3);
    }
    EXPECT_EQ(worker_threads(), before);
}

TEST(ChunkedSum, IndependentOfThreadCount) {
    auto f = [](std::size_t i) { return 1.0 / double(i + 1) * (i % 2 ? -1.0 : 1.0) + 1e-17 * double(i); };
    double a, b, c;
    {
        ThreadCap cap(1);
        a = chunked_sum<double>(100000, f);
    }
    {
        ThreadCap cap(3);
        b = chunked_sum<double>(100000, f);
    }
    {
        ThreadCap cap(8);
        c = chunked_sum<double>(100000, f);
    }
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    EXPECT_NEAR(a, std::log(2.0), 1e-4);
}

TEST(ChunkedSum, PropagatesExceptions) {
    ThreadCap cap(4);
    auto f = [](std::size_t i) -> double {
        if (i == 777) throw std::runtime_error("boom");
        return 1.0;
    };
    EXPECT_THROW(chunked_sum<double>(5000, f), std::runtime_error);
}

TEST(Kahan, Compensates) {
    KahanSum<double> k;
    k += 1.0;
    for (int i = 0; i < 1000; ++i) k += 1e-16;
    EXPECT_NEAR(k.value() - 1.0, 1e-13, 2.3e-16);
}

TEST(Types, Validation) {
    EXPECT_THROW(PointH2(0, 0, 0, 1), domain_error);
    EXPECT_THROW(Tau(0, -1), domain_error);
    PointH2 z = PointH2::from_ts(0.1, 0.2, 3.0, 1.5);
    EXPECT_NEAR(z.t(), 3.0, 1e-15);
    EXPECT_NEAR(z.s(), 1.5, 1e-15);
    EXPECT_EQ(LatMat({1, 2, 3, 4}).det(), -2);
    EXPECT_EQ(mat_mul({1, 1, 0, 1}, {1, 0, 1, 1}), LatMat({2, 1, 1, 1}));
}
