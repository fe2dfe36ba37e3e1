/*
dcu: discrete conformal uniformization toolkit

Copyright 2026 The dcu Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

/**
 * @file hyperbolic.hpp
 * @brief Hyperbolic triangles from angles, the Lobachevsky function and the
 * volume of the ideal prism over a triangle.
 *
 * Triangle data are indexed by side: angle A_i is opposite side i, partial
 * p_i = (A_j + A_k - A_i)/2 lives on side i, length l_i is the length of side i.
 *
 * The prism volume V satisfies dV = sum_i g_i dp_i with
 * g_i = log((cosh l_i - 1)/2), and V is concave in the partials.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dcu/error.hpp"

namespace dcu
{

using Triple = std::array<double, 3>;
using Matrix3 = std::array<Triple, 3>;

/// Guard distance from degenerate and Euclidean triangles.
inline constexpr double kAngleGuard = 1e-9;

namespace detail
{

struct ClausenCoefficients {
    static constexpr int n = 40;
    std::array<double, n> c{};
    ClausenCoefficients()
    {
        const double two_pi = 2 * std::numbers::pi;
        for (int k = 1; k <= n; ++k) {
            c[k - 1] = std::riemann_zeta(2.0 * k) / (k * (2.0 * k + 1) * std::pow(two_pi, 2.0 * k));
        }
    }
};

}  // namespace detail

/// Clausen function Cl2(x) = -int_0^x log|2 sin(t/2)| dt.
inline double clausen2(double x)
{
    static const detail::ClausenCoefficients coef;
    const double two_pi = 2 * std::numbers::pi;
    x = std::remainder(x, two_pi);  // (-pi, pi]
    if (x == 0.0) return 0.0;
    const double x2 = x * x;
    double term = x * x2;
    double sum = 0.0;
    for (int k = 0; k < detail::ClausenCoefficients::n; ++k) {
        const double add = coef.c[k] * term;
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(x)) break;
        term *= x2;
    }
    return x - x * std::log(std::abs(x)) + sum;
}

/// Lobachevsky function Lambda(t) = -int_0^t log|2 sin u| du.
inline double lobachevsky(double theta) { return 0.5 * clausen2(2 * theta); }

/// Partials (p_0, p_1, p_2) of an angle triple.
inline Triple partials_from_triangle(const Triple& a)
{
    return {(a[1] + a[2] - a[0]) / 2, (a[0] + a[2] - a[1]) / 2, (a[0] + a[1] - a[2]) / 2};
}

inline Triple angles_from_partials(const Triple& p) { return {p[1] + p[2], p[0] + p[2], p[0] + p[1]}; }

/// Throws DegenerateAngle or NotHyperbolic for triples outside the guarded domain.
inline void check_hyperbolic(const Triple& a)
{
    for (double x : a) {
        if (!(x >= kAngleGuard) || !(x < std::numbers::pi)) {
            throw Error(Errc::DegenerateAngle, "angle " + std::to_string(x) + " too close to 0 or pi");
        }
    }
    const double s = a[0] + a[1] + a[2];
    if (!(std::numbers::pi - s >= kAngleGuard)) {
        throw Error(Errc::NotHyperbolic, "angle sum " + std::to_string(s) + " is not below pi");
    }
}

inline bool is_hyperbolic(const Triple& a) noexcept
{
    const double s = a[0] + a[1] + a[2];
    return a[0] >= kAngleGuard && a[1] >= kAngleGuard && a[2] >= kAngleGuard && std::numbers::pi - s >= kAngleGuard;
}

/**
 * @brief g_i = log((cosh l_i - 1)/2) = log sinh^2(l_i/2) from the angles.
 *
 * Uses (cosh l_i - 1)/2 = cos(S/2) cos(p_i) / (sin A_j sin A_k), S the angle sum.
 */
inline Triple log_length_terms(const Triple& a)
{
    check_hyperbolic(a);
    const auto p = partials_from_triangle(a);
    const double lc = std::log(std::cos((a[0] + a[1] + a[2]) / 2));
    Triple g{};
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        g[i] = lc + std::log(std::cos(p[i])) - std::log(std::sin(a[j])) - std::log(std::sin(a[k]));
    }
    return g;
}

/// Side lengths from angles via the dual law of cosines.
inline Triple edge_lengths(const Triple& a)
{
    const auto g = log_length_terms(a);
    Triple l{};
    for (int i = 0; i < 3; ++i) l[i] = 2 * std::asinh(std::exp(g[i] / 2));
    return l;
}

inline Triple edge_lengths(double A, double B, double C) { return edge_lengths(Triple{A, B, C}); }

/// Angles from side lengths via the ordinary hyperbolic law of cosines.
inline Triple angles_from_lengths(const Triple& l)
{
    Triple a{};
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const double c = (std::cosh(l[j]) * std::cosh(l[k]) - std::cosh(l[i])) / (std::sinh(l[j]) * std::sinh(l[k]));
        a[i] = std::acos(std::clamp(c, -1.0, 1.0));
    }
    return a;
}

namespace detail
{

inline double euclid_angle(double opp, double u, double v)
{
    return std::acos(std::clamp((u * u + v * v - opp * opp) / (2 * u * v), -1.0, 1.0));
}

inline double lob_sum(double x, double y, double z)
{
    const double A = euclid_angle(x, y, z);
    const double B = euclid_angle(y, x, z);
    return lobachevsky(A) + lobachevsky(B) + lobachevsky(std::numbers::pi - A - B);
}

}  // namespace detail

/**
 * @brief Volume of the ideal prism over the triangle, unanchored.
 *
 * The prism splits into three ideal tetrahedra whose vertex links are
 * Euclidean triangles with sides built from s_i = sinh(l_i/2), c_i = cosh(l_i/2).
 */
inline double prism_volume_raw(const Triple& a)
{
    const auto l = edge_lengths(a);
    // l23 = l[0], l13 = l[1], l12 = l[2]
    const double s23 = std::sinh(l[0] / 2), c23 = std::cosh(l[0] / 2);
    const double s13 = std::sinh(l[1] / 2), c13 = std::cosh(l[1] / 2);
    const double s12 = std::sinh(l[2] / 2), c12 = std::cosh(l[2] / 2);
    return detail::lob_sum(s12, s13 * c23, c13 * s23) + detail::lob_sum(s12 * s23, c12 * c23, c13) +
           detail::lob_sum(s23, c12 * s13, c13 * s12);
}

/// Reference triple at which the anchored volume vanishes.
inline const Triple& volume_anchor()
{
    static const Triple a{std::numbers::pi / 6, std::numbers::pi / 6, std::numbers::pi / 6};
    return a;
}

/// Prism volume anchored so that V(pi/6, pi/6, pi/6) = 0.
inline double prism_volume(const Triple& a)
{
    static const double base = prism_volume_raw(volume_anchor());
    return prism_volume_raw(a) - base;
}

inline double prism_volume(double A, double B, double C) { return prism_volume(Triple{A, B, C}); }

/// dV/dp_i.
inline Triple volume_gradient(const Triple& partials) { return log_length_terms(angles_from_partials(partials)); }

/// d^2 V / dp_i dp_j (symmetric).
inline Matrix3 volume_hessian(const Triple& partials)
{
    const auto a = angles_from_partials(partials);
    check_hyperbolic(a);
    const double ts = std::tan((a[0] + a[1] + a[2]) / 2);
    Matrix3 h{};
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        h[i][i] = -ts - std::tan(partials[i]) - 1 / std::tan(a[j]) - 1 / std::tan(a[k]);
        // A_k = p_i + p_j contains both partials.
        h[i][j] = h[j][i] = -ts - 1 / std::tan(a[k]);
    }
    return h;
}

/**
 * @brief Line integral of sum g_i dp_i along the polyline anchor -> waypoints -> a.
 *
 * Each segment uses adaptive Gauss-Kronrod quadrature in partial space.
 */
template <class Waypoints>
double prism_volume_path(const Triple& a, const Waypoints& waypoints, double tol = 1e-12)
{
    check_hyperbolic(a);
    std::vector<Triple> pts{partials_from_triangle(volume_anchor())};
    for (const auto& w : waypoints) {
        check_hyperbolic(angles_from_partials(w));
        pts.push_back(w);
    }
    pts.push_back(partials_from_triangle(a));
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        const Triple p0 = pts[s];
        Triple d{};
        for (int i = 0; i < 3; ++i) d[i] = pts[s + 1][i] - p0[i];
        auto f = [&](double t) {
            const Triple p{p0[0] + t * d[0], p0[1] + t * d[1], p0[2] + t * d[2]};
            const auto g = volume_gradient(p);
            return g[0] * d[0] + g[1] * d[1] + g[2] * d[2];
        };
        double err = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 0.5, 20, tol, &err);
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.5, 1.0, 20, tol, &err);
    }
    return total;
}

/// Straight-line path integral from the anchor.
inline double prism_volume_path(const Triple& a, double tol = 1e-12)
{
    return prism_volume_path(a, std::array<Triple, 0>{}, tol);
}

}  // namespace dcu
