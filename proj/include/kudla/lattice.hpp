#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "core.hpp"

namespace kudla {

struct TransformedVec {
    double a = 0, b = 0, c = 0, d = 0;

    double det() const { return a * d - b * c; }
    double norm2() const { return a * a + b * b + c * c + d * d; }
};

// A(z)^{-1} applied to the coordinate vector of M.
inline TransformedVec transform(const LatMat& M, const PointH2& z) {
    const double t = z.t(), s = z.s();
    const double a = double(M.a), b = double(M.b), c = double(M.c), d = double(M.d);
    return {(a - z.x2 * b - z.x1 * c + z.x1 * z.x2 * d) / t, (b - z.x1 * d) / s, s * (c - z.x2 * d), t * d};
}

// R(z,M) = |a - b z2 - c z1 + d z1 z2|^2 / (2 y1 y2)
inline double r_kernel(const PointH2& z, const LatMat& M) {
    const cplx z1 = z.z1(), z2 = z.z2();
    cplx w = double(M.a) - double(M.b) * z2 - double(M.c) * z1 + double(M.d) * z1 * z2;
    return std::norm(w) / (2.0 * z.y1 * z.y2);
}

// 2R(z,M) + (M,M), computed from the transformed vector.
inline double majorant(const PointH2& z, const LatMat& M) { return transform(M, z).norm2(); }

namespace detail {
inline i64 floor_i(double x) { return static_cast<i64>(std::floor(x)); }
inline i64 ceil_i(double x) { return static_cast<i64>(std::ceil(x)); }

// Visit every M with majorant <= radius, optionally restricted to det == m.
// The bounds come from the triangular form of A(z)^{-1}.
template <class Visit>
void scan_majorant_box(const PointH2& z, double radius, bool fix_det, i64 m, Visit&& visit) {
    if (radius < 0) return;
    const double t = z.t(), s = z.s(), sr = std::sqrt(radius) * (1.0 + 1e-12) + 1e-12;
    const i64 dmax = floor_i(sr / t);
    for (i64 d = -dmax; d <= dmax; ++d) {
        const double bc_ = z.x1 * double(d);
        for (i64 b = ceil_i(bc_ - s * sr); b <= floor_i(bc_ + s * sr); ++b) {
            const double cc_ = z.x2 * double(d);
            for (i64 c = ceil_i(cc_ - sr / s); c <= floor_i(cc_ + sr / s); ++c) {
                if (fix_det) {
                    if (d != 0) {
                        i64 num = m + b * c;
                        if (num % d != 0) continue;
                        LatMat M{num / d, b, c, d};
                        if (majorant(z, M) <= radius) visit(M);
                        continue;
                    }
                    if (-b * c != m) continue;
                }
                const double ac = z.x2 * double(b) + z.x1 * double(c) - z.x1 * z.x2 * double(d);
                for (i64 a = ceil_i(ac - t * sr); a <= floor_i(ac + t * sr); ++a) {
                    LatMat M{a, b, c, d};
                    if (fix_det && M.det() != m) continue;
                    if (majorant(z, M) <= radius) visit(M);
                }
            }
        }
    }
}
}  // namespace detail

// All M with det(M) = m and 2R(z,M) + (M,M) <= radius, lexicographic; m = 0 excludes M = 0.
inline std::vector<LatMat> enumerate_majorant(i64 m, const PointH2& z, double radius) {
    std::vector<LatMat> out;
    detail::scan_majorant_box(z, radius, true, m, [&](const LatMat& M) {
        if (!M.is_zero()) out.push_back(M);
    });
    std::sort(out.begin(), out.end());
    return out;
}

// All M with det(M) = m and a^2+b^2+c^2+d^2 <= norm_bound, lexicographic.
inline std::vector<LatMat> enumerate_det(i64 m, double norm_bound) {
    if (!(norm_bound >= 0)) throw domain_error("enumerate_det: norm_bound must be nonnegative");
    std::vector<LatMat> out;
    const i64 k = static_cast<i64>(std::floor(std::sqrt(norm_bound)));
    for (i64 a = -k; a <= k; ++a)
        for (i64 b = -k; b <= k; ++b)
            for (i64 c = -k; c <= k; ++c) {
                i64 rest = a * a + b * b + c * c;
                if (double(rest) > norm_bound) continue;
                if (a == 0) {
                    if (-b * c != m) continue;
                    for (i64 d = -k; d <= k; ++d) {
                        LatMat M{a, b, c, d};
                        if (double(M.norm0()) <= norm_bound && !(m == 0 && M.is_zero())) out.push_back(M);
                    }
                } else {
                    i64 num = m + b * c;
                    if (num % a != 0) continue;
                    LatMat M{a, b, c, num / a};
                    if (double(M.norm0()) <= norm_bound) out.push_back(M);
                }
            }
    std::sort(out.begin(), out.end());
    return out;
}

// Every M in L with majorant <= radius, any determinant, M = 0 included.
inline std::vector<LatMat> enumerate_ball(const PointH2& z, double radius) {
    std::vector<LatMat> out;
    detail::scan_majorant_box(z, radius, false, 0, [&](const LatMat& M) { out.push_back(M); });
    std::sort(out.begin(), out.end());
    return out;
}

// (a b; 0 d), ad = N, d > 0, 0 <= b < d
inline std::vector<LatMat> hecke_reps(i64 N) {
    if (N <= 0) throw domain_error("hecke_reps: N must be positive");
    std::vector<LatMat> out;
    for (i64 d = 1; d <= N; ++d) {
        if (N % d) continue;
        for (i64 b = 0; b < d; ++b) out.push_back({N / d, b, 0, d});
    }
    return out;
}

// Some M with det = m has R(z,M) < tol.
inline bool on_divisor(const PointH2& z, i64 m, double tol) {
    if (m == 0) throw domain_error("on_divisor: m = 0 is the boundary, not a Hecke divisor");
    if (!(tol > 0)) throw domain_error("on_divisor: tol must be positive");
    if (m < 0) return false;  // 2R >= 4|m| when det < 0
    for (const auto& M : enumerate_majorant(m, z, 2.0 * double(m) + 2.0 * tol))
        if (r_kernel(z, M) < tol) return true;
    return false;
}

// Action of gamma = (a b; c d) on H.
inline cplx mobius(const LatMat& g, cplx w) {
    return (double(g.a) * w + double(g.b)) / (double(g.c) * w + double(g.d));
}

}  // namespace kudla
