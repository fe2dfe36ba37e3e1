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

// Independent reference computations used only by the test suites.

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dcu/angles.hpp"
#include "dcu/hyperbolic.hpp"
#include "dcu/surface.hpp"

namespace oracle
{

inline constexpr double kPi = std::numbers::pi;
using dcu::operator-;

/// Lobachevsky function from its defining integral -int_0^x log|2 sin t| dt.
inline double lobachevsky(double x)
{
    // Reduce to [0, pi) using periodicity; the integral over a full period vanishes.
    x -= kPi * std::floor(x / kPi);
    if (x == 0.0) return 0.0;
    boost::math::quadrature::tanh_sinh<double> ts;
    auto f = [](double t) { return -std::log(std::abs(2 * std::sin(t))); };
    if (x <= kPi / 2) return ts.integrate(f, 0.0, x);
    return ts.integrate(f, 0.0, kPi / 2) + ts.integrate(f, kPi / 2, x);
}

/// Hyperbolic law of cosines for the side opposite A.
inline double side_from_angles(double A, double B, double C)
{
    return std::acosh((std::cos(A) + std::cos(B) * std::cos(C)) / (std::sin(B) * std::sin(C)));
}

/// Circumradius from the hyperboloid model; infinity when no circumcircle exists.
inline double hyperboloid_circumradius(double A, double B, double C)
{
    const double b = side_from_angles(B, C, A);
    const double c = side_from_angles(C, A, B);
    const std::array<double, 3> p0{0, 0, 1};
    const std::array<double, 3> p1{std::sinh(c), 0, std::cosh(c)};
    const std::array<double, 3> p2{std::sinh(b) * std::cos(A), std::sinh(b) * std::sin(A), std::cosh(b)};
    const std::array<double, 3> u{p1[0] - p0[0], p1[1] - p0[1], p1[2] - p0[2]};
    const std::array<double, 3> v{p2[0] - p0[0], p2[1] - p0[1], p2[2] - p0[2]};
    // n is Minkowski-orthogonal to u and v: J n = u x v with J = diag(1, 1, -1).
    std::array<double, 3> n{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], -(u[0] * v[1] - u[1] * v[0])};
    const double nn = n[0] * n[0] + n[1] * n[1] - n[2] * n[2];
    if (nn >= 0) return std::numeric_limits<double>::infinity();
    const double s = (n[2] > 0 ? 1.0 : -1.0) / std::sqrt(-nn);
    for (auto& x : n) x *= s;
    return std::acosh(n[2] * p0[2] - n[0] * p0[0] - n[1] * p0[1]);
}

/// Random hyperbolic triangle with angles bounded away from 0 and angle sum below pi.
template <class Rng>
dcu::Triple random_hyperbolic(Rng& rng, double floor = 0.05)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        const double total = floor * 3 + (kPi - 3 * floor - 0.05) * u(rng);
        double w0 = u(rng) + 0.1, w1 = u(rng) + 0.1, w2 = u(rng) + 0.1;
        const double ws = w0 + w1 + w2;
        dcu::Triple a{total * w0 / ws, total * w1 / ws, total * w2 / ws};
        if (a[0] > floor && a[1] > floor && a[2] > floor) return a;
    }
}

/// int_0^delta exp(-lambda 2 pi (1 - cos r)) sin^3 r dr in closed form.
inline double radial_integral(double lambda, double delta)
{
    // t = 1 - cos r: integrand becomes exp(-a t) t (2 - t) dt on [0, T].
    const double a = 2 * kPi * lambda, T = 1 - std::cos(delta);
    const double e = std::exp(-a * T);
    const double i1 = (1 - e * (1 + a * T)) / (a * a);                          // int t e^{-at}
    const double i2 = (2 - e * (2 + 2 * a * T + a * a * T * T)) / (a * a * a);  // int t^2 e^{-at}
    return 2 * i1 - i2;
}

/// Monte Carlo mean area of a triangle inscribed in the unit circle at uniform angles.
template <class Rng>
double inscribed_area_mc(Rng& rng, int samples)
{
    std::uniform_real_distribution<double> u(0.0, 2 * kPi);
    double sum = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double a = u(rng), b = u(rng), c = u(rng);
        const double ax = std::cos(a), ay = std::sin(a), bx = std::cos(b), by = std::sin(b), cx = std::cos(c),
                     cy = std::sin(c);
        sum += 0.5 * std::abs((bx - ax) * (cy - ay) - (cx - ax) * (by - ay));
    }
    return sum / samples;
}

/// Number of point triples with an empty open circumcap on the sphere (either of the two caps).
inline int sphere_empty_triples(const std::vector<dcu::Vec3>& p, double tol = 1e-12)
{
    const int n = static_cast<int>(p.size());
    int count = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                // Plane through the three points: points on one side lie in one cap.
                const auto nrm = dcu::cross(p[j] - p[i], p[k] - p[i]);
                bool pos = false, neg = false;
                for (int q = 0; q < n; ++q) {
                    if (q == i || q == j || q == k) continue;
                    const double s = dcu::dot(nrm, p[q] - p[i]);
                    if (s > tol) pos = true;
                    if (s < -tol) neg = true;
                }
                if (!(pos && neg)) ++count;
            }
        }
    }
    return count;
}

/// Number of point triples on a torus whose small circumdisk (radius below rmax) is empty.
inline int torus_empty_triples(const dcu::SurfaceModel& s, const std::vector<dcu::Vec3>& p, double rmax)
{
    const int n = static_cast<int>(p.size());
    int count = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (s.distance(p[i], p[j]) >= 2 * rmax) continue;
            for (int k = j + 1; k < n; ++k) {
                if (s.distance(p[i], p[k]) >= 2 * rmax || s.distance(p[j], p[k]) >= 2 * rmax) continue;
                const auto u = s.offset(p[i], p[j]);
                const auto v = s.offset(p[i], p[k]);
                const double d = 2 * (u[0] * v[1] - u[1] * v[0]);
                const double uu = u[0] * u[0] + u[1] * u[1], vv = v[0] * v[0] + v[1] * v[1];
                const double cx = (v[1] * uu - u[1] * vv) / d, cy = (u[0] * vv - v[0] * uu) / d;
                const double r = std::hypot(cx, cy);
                if (r >= rmax) continue;
                const dcu::Vec3 c{p[i][0] + cx, p[i][1] + cy, 0};
                bool empty = true;
                for (int q = 0; q < n && empty; ++q) {
                    if (q == i || q == j || q == k) continue;
                    if (s.distance(c, p[q]) < r * (1 - 1e-12)) empty = false;
                }
                if (empty) ++count;
            }
        }
    }
    return count;
}

}  // namespace oracle
