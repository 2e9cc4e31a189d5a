#pragma once

#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "core.hpp"
#include "lattice.hpp"

namespace kudla {

inline i64 sigma1(i64 N) {
    if (N <= 0) throw domain_error("sigma1: N must be positive");
    i64 s = 0;
    for (i64 d = 1; d * d <= N; ++d) {
        if (N % d) continue;
        s += d;
        if (d * d != N) s += N / d;
    }
    return s;
}

inline i64 sigma3(i64 N) {
    i64 s = 0;
    for (i64 d = 1; d <= N; ++d)
        if (N % d == 0) s += d * d * d;
    return s;
}

class Rational {
public:
    Rational(i64 n = 0, i64 d = 1) : num_(n), den_(d) {
        if (d == 0) throw domain_error("Rational: zero denominator");
        normalize();
    }
    i64 num() const { return num_; }
    i64 den() const { return den_; }
    double to_double() const { return double(num_) / double(den_); }

    friend Rational operator+(const Rational& x, const Rational& y) {
        i64 g = std::gcd(x.den_, y.den_);
        return {x.num_ * (y.den_ / g) + y.num_ * (x.den_ / g), x.den_ / g * y.den_};
    }
    friend Rational operator-(const Rational& x) { return {-x.num_, x.den_}; }
    friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }
    friend Rational operator*(const Rational& x, const Rational& y) {
        i64 g1 = std::gcd(x.num_, y.den_), g2 = std::gcd(y.num_, x.den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        return {(x.num_ / g1) * (y.num_ / g2), (x.den_ / g2) * (y.den_ / g1)};
    }
    Rational& operator+=(const Rational& y) { return *this = *this + y; }
    friend bool operator==(const Rational&, const Rational&) = default;

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        i64 g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }
    i64 num_, den_;
};

// Hurwitz class number by reduced forms (a,b,c), b^2 - 4ac = -N, |b| <= a <= c,
// b >= 0 if |b| = a or a = c. Weights 1/2 for a=c,b=0 and 1/3 for a=b=c.
inline Rational hurwitz_h(i64 N) {
    if (N < 0) throw domain_error("hurwitz_h: N must be nonnegative");
    if (N == 0) return {-1, 12};
    if (N % 4 == 1 || N % 4 == 2) return {0};
    Rational h{0};
    for (i64 a = 1; 3 * a * a <= N; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if ((b - N) % 2 != 0) continue;
            i64 ac4 = b * b + N;
            if (ac4 % (4 * a)) continue;
            i64 c = ac4 / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (b == 0 && a == c)
                h += Rational{1, 2};
            else if (b == a && a == c)
                h += Rational{1, 3};
            else
                h += Rational{1};
        }
    }
    return h;
}

// H_1(N) = sum_{s^2 <= 4N} H(4N - s^2)
inline Rational hurwitz_h1(i64 N) {
    if (N < 0) throw domain_error("hurwitz_h1: N must be nonnegative");
    Rational h = hurwitz_h(4 * N);
    for (i64 s = 1; s * s <= 4 * N; ++s) h += Rational{2} * hurwitz_h(4 * N - s * s);
    return h;
}

// sum over ordered factorizations bc = N, b,c > 0, of min(b,c)
inline i64 min_divisor_sum(i64 N) {
    i64 s = 0;
    for (i64 b = 1; b <= N; ++b)
        if (N % b == 0) s += std::min(b, N / b);
    return s;
}

// Truncated two-sided q-expansion.
class QSeries {
public:
    QSeries() = default;
    explicit QSeries(std::map<i64, cplx> coeffs) : coeffs_(std::move(coeffs)) {}

    void set(i64 n, cplx a) { coeffs_[n] = a; }
    cplx coeff(i64 n) const {
        auto it = coeffs_.find(n);
        return it == coeffs_.end() ? cplx{} : it->second;
    }
    const std::map<i64, cplx>& coeffs() const { return coeffs_; }
    i64 cutoff() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    cplx operator()(const Tau& tau) const {
        KahanSum<cplx> acc;
        for (const auto& [n, a] : coeffs_) acc += a * e2pi(double(n) * tau.value());
        return acc.value();
    }

private:
    std::map<i64, cplx> coeffs_;
};

// sum_{N>=1} sigma_1(N) q^N
inline QSeries sigma1_series(i64 cutoff) {
    QSeries s;
    for (i64 N = 1; N <= cutoff; ++N) s.set(N, double(sigma1(N)));
    return s;
}

inline QSeries h1_series(i64 cutoff) {
    QSeries s;
    for (i64 N = 0; N <= cutoff; ++N) s.set(N, hurwitz_h1(N).to_double());
    return s;
}

// Hecke's E_2(tau,1) = -1/24 + 1/(8 pi v) + sum sigma_1(N) q^N
inline cplx eisenstein_e2(const Tau& tau, i64 cutoff) {
    if (cutoff < 1) throw domain_error("eisenstein_e2: cutoff must be >= 1");
    return -1.0 / 24.0 + 1.0 / (8.0 * pi * tau.v) + sigma1_series(cutoff)(tau);
}

inline double eisenstein_e2_tail(const Tau& tau, i64 cutoff) {
    // sigma_1(N) <= N^2, geometric-times-polynomial tail
    double r = std::exp(-2.0 * pi * tau.v), acc = 0.0;
    for (i64 N = cutoff + 1; N <= cutoff + 2000; ++N) {
        double t = double(N) * double(N) * std::pow(r, double(N));
        acc += t;
        if (t < 1e-30) break;
    }
    return acc;
}

inline constexpr i64 default_q_cutoff = 200;

// Delta(z) = q prod (1 - q^n)^24
inline cplx delta_eval(cplx z, i64 cutoff = default_q_cutoff) {
    if (!(z.imag() > 0)) throw domain_error("delta_eval: Im z must be positive");
    cplx q = e2pi(z), qn = 1.0, prod = 1.0;
    for (i64 n = 1; n <= cutoff; ++n) {
        qn *= q;
        prod *= std::pow(1.0 - qn, 24);
        if (std::abs(qn) < 1e-18) break;
    }
    return q * prod;
}

// log|Delta(z)|, stable for large Im z
inline double log_abs_delta(cplx z, i64 cutoff = default_q_cutoff) {
    if (!(z.imag() > 0)) throw domain_error("log_abs_delta: Im z must be positive");
    cplx q = e2pi(z), qn = 1.0;
    KahanSum<double> acc(-2.0 * pi * z.imag());
    for (i64 n = 1; n <= cutoff; ++n) {
        qn *= q;
        acc += 24.0 * std::log(std::abs(1.0 - qn));
        if (std::abs(qn) < 1e-18) break;
    }
    return acc.value();
}

inline cplx e4_eval(cplx z, i64 cutoff = default_q_cutoff) {
    cplx q = e2pi(z), qn = 1.0;
    KahanSum<cplx> acc(1.0);
    for (i64 n = 1; n <= cutoff; ++n) {
        qn *= q;
        acc += 240.0 * double(sigma3(n)) * qn;
        if (std::abs(qn) * double(sigma3(n)) < 1e-18) break;
    }
    return acc.value();
}

inline cplx j_eval(cplx z, i64 cutoff = default_q_cutoff) {
    cplx e4 = e4_eval(z, cutoff);
    return e4 * e4 * e4 / delta_eval(z, cutoff);
}

// Psi_N(z1,z2) = (Delta(z1) Delta(z2))^{sigma_1(N)} prod_{gamma in R_N} (j(z1) - j(gamma z2))
inline cplx psi_n_eval(cplx z1, cplx z2, i64 N, i64 cutoff = default_q_cutoff) {
    cplx j1 = j_eval(z1, cutoff);
    cplx prod = std::pow(delta_eval(z1, cutoff) * delta_eval(z2, cutoff), double(sigma1(N)));
    for (const auto& g : hecke_reps(N)) prod *= j1 - j_eval(mobius(g, z2), cutoff);
    return prod;
}

}  // namespace kudla
