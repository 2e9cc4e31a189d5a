#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace kudla {

using cplx = std::complex<double>;
using i64 = std::int64_t;

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;
inline constexpr double zeta2 = pi * pi / 6.0;
inline constexpr cplx I{0.0, 1.0};

// Integer 2x2 matrix (a b; c d).
struct LatMat {
    i64 a = 0, b = 0, c = 0, d = 0;

    constexpr i64 det() const { return a * d - b * c; }
    constexpr i64 quad_form() const { return 2 * det(); }
    constexpr i64 norm0() const { return a * a + b * b + c * c + d * d; }
    constexpr LatMat operator-() const { return {-a, -b, -c, -d}; }
    constexpr LatMat transpose() const { return {a, c, b, d}; }
    constexpr bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }

    friend constexpr auto operator<=>(const LatMat&, const LatMat&) = default;

    std::string str() const {
        return "(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(c) + "," +
               std::to_string(d) + ")";
    }
};

inline constexpr LatMat mat_mul(const LatMat& x, const LatMat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class on_cycle_error : public std::runtime_error {
public:
    on_cycle_error(const LatMat& m, const std::string& what) : std::runtime_error(what), matrix(m) {}
    LatMat matrix;
};

class truncation_error : public std::runtime_error {
public:
    truncation_error(double bound, const std::string& what) : std::runtime_error(what), best_bound(bound) {}
    double best_bound;
};

class singular_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class evaluation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PointH2 {
    double x1 = 0, y1 = 1, x2 = 0, y2 = 1;

    PointH2() = default;
    PointH2(double x1_, double y1_, double x2_, double y2_) : x1(x1_), y1(y1_), x2(x2_), y2(y2_) {
        if (!(y1 > 0) || !(y2 > 0)) throw domain_error("PointH2: imaginary parts must be positive");
    }
    PointH2(cplx z1_, cplx z2_) : PointH2(z1_.real(), z1_.imag(), z2_.real(), z2_.imag()) {}

    // z = (x1 + i t s, x2 + i t / s)
    static PointH2 from_ts(double x1, double x2, double t, double s) { return {x1, t * s, x2, t / s}; }

    double t() const { return std::sqrt(y1 * y2); }
    double s() const { return std::sqrt(y1 / y2); }
    cplx z1() const { return {x1, y1}; }
    cplx z2() const { return {x2, y2}; }
    PointH2 swapped() const { return {x2, y2, x1, y1}; }
};

// tau = u + i v
struct Tau {
    double u = 0, v = 1;

    Tau() = default;
    Tau(double u_, double v_) : u(u_), v(v_) {
        if (!(v > 0)) throw domain_error("Tau: v must be positive");
    }
    explicit Tau(cplx z) : Tau(z.real(), z.imag()) {}

    cplx value() const { return {u, v}; }
    cplx q() const { return std::exp(2.0 * pi * I * value()); }
    Tau inv() const { return Tau(-1.0 / value()); }
    Tau shift(double k = 1.0) const { return {u + k, v}; }
};

// e(x) = exp(2 pi i x)
inline cplx e2pi(cplx x) { return std::exp(2.0 * pi * I * x); }

// Neumaier compensated summation.
template <class T>
class KahanSum {
public:
    KahanSum() = default;
    explicit KahanSum(T init) : sum_(init) {}

    KahanSum& add(T x) {
        if constexpr (std::is_floating_point_v<T>) {
            add_real(sum_, comp_, x);
        } else {
            double sr = sum_.real(), si = sum_.imag(), cr = comp_.real(), ci = comp_.imag();
            add_real(sr, cr, x.real());
            add_real(si, ci, x.imag());
            sum_ = T(sr, si);
            comp_ = T(cr, ci);
        }
        return *this;
    }
    KahanSum& operator+=(T x) { return add(x); }
    T value() const { return sum_ + comp_; }

private:
    static void add_real(double& s, double& c, double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    T sum_{};
    T comp_{};
};

namespace detail {
inline std::atomic<int>& thread_override() {
    static std::atomic<int> n{0};
    return n;
}
}  // namespace detail

// Worker count: programmatic request or hardware, capped by KUDLA_LAB_THREADS.
inline int worker_threads() {
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (int o = detail::thread_override().load(); o > 0) n = o;
    if (const char* env = std::getenv("KUDLA_LAB_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return std::max(1, n);
}

// Scoped override, mainly for serial/parallel comparisons.
class ThreadCap {
public:
    explicit ThreadCap(int n) : prev_(detail::thread_override().exchange(n)) {}
    ~ThreadCap() { detail::thread_override().store(prev_); }
    ThreadCap(const ThreadCap&) = delete;
    ThreadCap& operator=(const ThreadCap&) = delete;

private:
    int prev_;
};

inline constexpr std::size_t reduce_chunk = 256;

// Sum f(i) for i in [0,n). Chunks are fixed, so the result does not depend on
// the number of threads.
template <class T, class F>
T chunked_sum(std::size_t n, F&& f) {
    std::size_t nchunks = (n + reduce_chunk - 1) / reduce_chunk;
    std::vector<T> partial(nchunks, T{});
    std::vector<std::exception_ptr> errors(nchunks);
    auto run_chunk = [&](std::size_t k) {
        try {
            KahanSum<T> acc;
            std::size_t hi = std::min(n, (k + 1) * reduce_chunk);
            for (std::size_t i = k * reduce_chunk; i < hi; ++i) acc += f(i);
            partial[k] = acc.value();
        } catch (...) {
            errors[k] = std::current_exception();
        }
    };
    int nt = std::min<int>(worker_threads(), static_cast<int>(nchunks));
    if (nt <= 1) {
        for (std::size_t k = 0; k < nchunks; ++k) run_chunk(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (int w = 0; w < nt; ++w)
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < nchunks; k = next++) run_chunk(k);
            });
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    KahanSum<T> total;
    for (const auto& p : partial) total += p;
    return total.value();
}

template <class T, class Range, class F>
T chunked_sum_over(const Range& items, F&& f) {
    return chunked_sum<T>(items.size(), [&](std::size_t i) { return f(items[i]); });
}

}  // namespace kudla
