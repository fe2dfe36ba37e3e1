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
 * @file surface.hpp
 * @brief Constant-curvature model surfaces, Poisson samples and geodesic
 * circumdisks.
 *
 * Sphere points are unit vectors in R^3. Torus points are (x, y, 0) with
 * x in [0, a), y in [0, b).
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <boost/random/poisson_distribution.hpp>

#include "dcu/error.hpp"
#include "dcu/rng.hpp"

namespace dcu
{

using Vec3 = std::array<double, 3>;

inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

enum class SurfaceKind { Sphere, Torus };

/** @brief Unit sphere or flat a x b torus */
struct SurfaceModel {
    SurfaceKind kind{SurfaceKind::Sphere};
    double a{1.0};
    double b{1.0};

    static SurfaceModel sphere() { return {SurfaceKind::Sphere, 0.0, 0.0}; }
    static SurfaceModel torus(double width, double height)
    {
        if (!(width > 0 && height > 0)) throw Error(Errc::InvalidArgument, "torus sides must be positive");
        return {SurfaceKind::Torus, width, height};
    }

    [[nodiscard]] bool is_sphere() const { return kind == SurfaceKind::Sphere; }
    [[nodiscard]] double area() const { return is_sphere() ? 4 * std::numbers::pi : a * b; }
    [[nodiscard]] double curvature() const { return is_sphere() ? 1.0 : 0.0; }
    [[nodiscard]] int euler_characteristic() const { return is_sphere() ? 2 : 0; }
    [[nodiscard]] double injectivity_radius() const { return is_sphere() ? std::numbers::pi : std::min(a, b) / 2; }
    [[nodiscard]] double convexity_radius() const { return is_sphere() ? std::numbers::pi / 2 : std::min(a, b) / 4; }
    [[nodiscard]] double delta_max() const { return std::min(injectivity_radius() / 6, convexity_radius()); }
    [[nodiscard]] std::string name() const { return is_sphere() ? "sphere" : "torus"; }

    /// Geodesic distance (minimum image on the torus).
    [[nodiscard]] double distance(const Vec3& p, const Vec3& q) const
    {
        if (is_sphere()) return std::atan2(norm(cross(p, q)), dot(p, q));
        const auto d = offset(p, q);
        return std::hypot(d[0], d[1]);
    }

    /// Minimum-image displacement q - p on the torus.
    [[nodiscard]] std::array<double, 2> offset(const Vec3& p, const Vec3& q) const
    {
        double dx = q[0] - p[0], dy = q[1] - p[1];
        dx -= a * std::round(dx / a);
        dy -= b * std::round(dy / b);
        return {dx, dy};
    }

    /// Area of a geodesic disk of radius r.
    [[nodiscard]] double disk_area(double r) const
    {
        if (is_sphere()) {
            const double s = std::sin(r / 2);
            return 4 * std::numbers::pi * s * s;
        }
        return std::numbers::pi * r * r;
    }
};

/** @brief Poisson sample on a surface */
struct PointSample {
    SurfaceModel surface;
    double lambda{0.0};
    std::uint64_t seed{0};
    std::vector<Vec3> points;
};

inline Vec3 uniform_point(const SurfaceModel& s, Stream& rng)
{
    if (s.is_sphere()) {
        const double z = 2 * rng.uniform() - 1;
        const double phi = 2 * std::numbers::pi * rng.uniform();
        const double r = std::sqrt(std::max(0.0, 1 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }
    return {s.a * rng.uniform(), s.b * rng.uniform(), 0.0};
}

/// Poisson(lambda * A) uniform points from the stream keyed by (seed, trial, attempt).
inline PointSample sample_poisson(const SurfaceModel& s, double lambda, std::uint64_t seed, std::uint64_t trial = 0,
                                  std::uint64_t attempt = 0)
{
    if (!(lambda > 0)) throw Error(Errc::InvalidArgument, "intensity must be positive");
    Stream rng(seed, trial, attempt);
    boost::random::poisson_distribution<long long, double> count(lambda * s.area());
    const long long n = count(rng);
    PointSample out{s, lambda, seed, {}};
    out.points.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) out.points.push_back(uniform_point(s, rng));
    return out;
}

/** @brief Geodesic disk: center, radius and area */
struct Disk {
    Vec3 center{};
    double radius{0.0};
    double area{0.0};
};

/**
 * @brief Circumdisk of a point triple.
 *
 * Sphere: the smaller of the two caps bounded by the circle through the
 * points. Torus: minimum-image lifts around the first point. Throws
 * DegenerateTriple for (nearly) collinear or coincident points.
 */
inline Disk circumdisk(const SurfaceModel& s, const Vec3& p, const Vec3& q, const Vec3& r)
{
    if (s.is_sphere()) {
        Vec3 n = cross(q - p, r - p);
        const double len = norm(n);
        if (len <= 1e-14) throw Error(Errc::DegenerateTriple, "points do not span a circle");
        n = (1 / len) * n;
        if (dot(n, p) < 0) n = -1.0 * n;
        const double rad = std::atan2(norm(cross(n, p)), dot(n, p));
        return {n, rad, s.disk_area(rad)};
    }
    const auto u = s.offset(p, q);
    const auto v = s.offset(p, r);
    const double d = 2 * (u[0] * v[1] - u[1] * v[0]);
    const double scale = std::max(u[0] * u[0] + u[1] * u[1], v[0] * v[0] + v[1] * v[1]);
    if (std::abs(d) <= 1e-14 * std::max(scale, 1e-300)) throw Error(Errc::DegenerateTriple, "points are collinear");
    const double uu = u[0] * u[0] + u[1] * u[1], vv = v[0] * v[0] + v[1] * v[1];
    const double cx = (v[1] * uu - u[1] * vv) / d;
    const double cy = (u[0] * vv - v[0] * uu) / d;
    const double rad = std::hypot(cx, cy);
    Vec3 c{p[0] + cx, p[1] + cy, 0.0};
    c[0] -= s.a * std::floor(c[0] / s.a);
    c[1] -= s.b * std::floor(c[1] / s.b);
    return {c, rad, s.disk_area(rad)};
}

}  // namespace dcu
