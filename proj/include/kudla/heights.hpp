#pragma once

#include <cmath>
#include <string_view>

#include "core.hpp"
#include "green.hpp"
#include "qseries.hpp"

namespace kudla {

enum class HeightMethod { closed_form, numeric_limit };

inline std::string_view to_string(HeightMethod m) {
    return m == HeightMethod::closed_form ? "closed_form" : "numeric_limit";
}

struct HeightValue {
    i64 m = 0;
    double value = 0;
    HeightMethod method = HeightMethod::closed_form;
    double error_estimate = 0;
};

// c_0 = -1/24 + 1/(8 pi v)
inline double c0(double v) {
    if (!(v > 0)) throw domain_error("c0: v must be positive");
    return -1.0 / 24.0 + 1.0 / (8.0 * pi * v);
}

// Finite places contribute nothing; only the archimedean value remains.
inline HeightValue height_closed(i64 m, double v) {
    HeightValue h{m, 0.0, HeightMethod::closed_form, 0.0};
    if (m > 0) h.value = 4.0 * pi * double(sigma1(m));
    if (m == 0) h.value = 4.0 * pi * c0(v);
    return h;
}

// Modified Green function at (i, iT), rho = 1 there; the surviving log model tends to
// the height as T grows. Error estimate from T and T/2.
inline HeightValue height_numeric(i64 m, double v, double T, const CutoffSpec& spec, double eps = 1e-13) {
    if (m <= 0) throw domain_error("height_numeric: m must be positive");
    if (T < spec.t1 * spec.t1 * 4.0) throw domain_error("height_numeric: need T >= 4 t1^2 so that rho = 1 at T/2");
    auto at = [&](double TT) { return green_modified(v, PointH2(0.0, 1.0, 0.0, TT), m, spec, eps).value; };
    double hi = at(T), lo = at(T / 2);
    return {m, hi, HeightMethod::numeric_limit, std::abs(hi - lo)};
}

// Slope of 2 Xi-tilde(v,(i,iT),0) against log|q1 q2| between T1 and T2.
inline double zero_slope_ratio(double v, double T1, double T2, const CutoffSpec& spec, double eps = 1e-13) {
    auto f = [&](double T) { return 2.0 * green_modified(v, PointH2(0.0, 1.0, 0.0, T), 0, spec, eps).value; };
    auto logq = [](double T) { return -2.0 * pi * (1.0 + T); };
    return (f(T2) - f(T1)) / (logq(T2) - logq(T1));
}

inline double zero_slope_expected(double v) { return 1.0 / 6.0 - 1.0 / (2.0 * pi * v); }

// sum_{m <= cutoff} ht(m) q^m with v = Im tau
inline cplx height_series(const Tau& tau, i64 cutoff) {
    KahanSum<cplx> acc(height_closed(0, tau.v).value);
    for (i64 m = 1; m <= cutoff; ++m) acc += height_closed(m, tau.v).value * e2pi(double(m) * tau.value());
    return acc.value();
}

}  // namespace kudla
