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
 * @file stochastic.hpp
 * @brief Monte Carlo estimators of the Euler characteristic and of local
 * curvature from Poisson-Delaunay face counts, and the face-count quadrature.
 */

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dcu/delaunay.hpp"

namespace dcu
{

/// Resampling attempts per trial before giving up.
inline constexpr int kMaxAttempts = 64;

/** @brief Per-trial record of the Euler estimator */
struct ChiTrial {
    int trial{0};
    int n{0};
    int faces{0};
    double estimator{0.0};
    int resamples{0};
    bool euler_ok{false};
    bool empty_ok{false};
};

struct ChiEstimate {
    double mean{0.0};
    double std_error{0.0};
    int resamples{0};
    std::vector<ChiTrial> trials;
};

inline std::pair<double, double> mean_and_se(const std::vector<double>& v)
{
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double var = v.size() > 1 ? ss / (n - 1) : 0.0;
    return {mean, std::sqrt(var / n)};
}

/// Run fn(i) for i in [0, count) on `jobs` threads; results are written by index.
inline void parallel_for(int count, int jobs, const std::function<void(int)>& fn)
{
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (int j = 0; j < jobs; ++j) {
        pool.emplace_back([&, j] {
            try {
                for (int i = j; i < count; i += jobs) fn(i);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

/**
 * @brief Sample and triangulate one trial, resampling on degeneracy.
 *
 * Attempt k of trial t uses the stream keyed by (seed, t, k).
 */
inline std::pair<PointSample, DelaunayComplex> triangulated_trial(const SurfaceModel& s, double lambda,
                                                                  std::uint64_t seed, int trial, int& resamples)
{
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        auto sample = sample_poisson(s, lambda, seed, static_cast<std::uint64_t>(trial), static_cast<std::uint64_t>(attempt));
        try {
            auto dc = delaunay(sample);
            return {std::move(sample), std::move(dc)};
        } catch (const Error& e) {
            if (e.code() != Errc::DegenerateSample) throw;
            ++resamples;
        }
    }
    throw Error(Errc::DegenerateSample, "trial " + std::to_string(trial) + " exhausted resampling attempts");
}

/// Per-trial A lambda - F/2 with mean and standard error.
inline ChiEstimate chi_estimator(const SurfaceModel& s, double lambda, int trials, std::uint64_t seed, int jobs = 1)
{
    if (trials < 1) throw Error(Errc::InvalidArgument, "need at least one trial");
    ChiEstimate out;
    out.trials.resize(trials);
    parallel_for(trials, jobs, [&](int t) {
        ChiTrial rec;
        rec.trial = t;
        auto [sample, dc] = triangulated_trial(s, lambda, seed, t, rec.resamples);
        rec.n = static_cast<int>(sample.points.size());
        rec.faces = dc.face_count();
        rec.estimator = s.area() * lambda - rec.faces / 2.0;
        rec.euler_ok = s.is_sphere() ? rec.faces == 2 * rec.n - 4 : rec.faces == 2 * rec.n;
        rec.empty_ok = verify_locally_empty(dc, sample.points);
        out.trials[t] = rec;
    });
    std::vector<double> v;
    for (const auto& r : out.trials) {
        v.push_back(r.estimator);
        out.resamples += r.resamples;
    }
    std::tie(out.mean, out.std_error) = mean_and_se(v);
    return out;
}

/** @brief Spherical cap given by center direction and area */
struct CapRegion {
    Vec3 center{0, 0, 1};
    double area{0.0};
};

/** @brief Axis-aligned torus sub-rectangle */
struct RectRegion {
    double x0{0}, y0{0}, width{0}, height{0};
};

using Region = std::variant<CapRegion, RectRegion>;

inline double region_area(const Region& r)
{
    if (const auto* c = std::get_if<CapRegion>(&r)) return c->area;
    const auto& q = std::get<RectRegion>(r);
    return q.width * q.height;
}

inline bool region_contains(const SurfaceModel& s, const Region& r, const Vec3& p)
{
    if (const auto* c = std::get_if<CapRegion>(&r)) {
        // Cap of area A = 2 pi (1 - cos rho).
        const double cos_rho = 1 - c->area / (2 * std::numbers::pi);
        return dot(p, c->center) / norm(c->center) > cos_rho;
    }
    const auto& q = std::get<RectRegion>(r);
    double dx = p[0] - q.x0, dy = p[1] - q.y0;
    dx -= s.a * std::floor(dx / s.a);
    dy -= s.b * std::floor(dy / s.b);
    return dx < q.width && dy < q.height;
}

struct DefectEstimate {
    double mean{0.0};
    double std_error{0.0};
    double target{0.0};  ///< (1/pi) int_region k dA
    int resamples{0};
    std::vector<double> per_trial;
};

/**
 * @brief 2 lambda area(R) - (number of faces with circumcenter in R), averaged.
 *
 * Estimates (1/pi) int_R k dA.
 */
inline DefectEstimate face_defect_in_region(const SurfaceModel& s, double lambda, int trials, const Region& region,
                                            std::uint64_t seed, int jobs = 1)
{
    if (trials < 1) throw Error(Errc::InvalidArgument, "need at least one trial");
    if (s.is_sphere() != std::holds_alternative<CapRegion>(region)) {
        throw Error(Errc::InvalidArgument, "region type does not match the surface");
    }
    const double area = region_area(region);
    if (!(area > 0 && area <= s.area())) throw Error(Errc::InvalidArgument, "region area out of range");
    DefectEstimate out;
    out.target = s.curvature() * area / std::numbers::pi;
    out.per_trial.resize(trials);
    std::vector<int> res(trials, 0);
    parallel_for(trials, jobs, [&](int t) {
        auto [sample, dc] = triangulated_trial(s, lambda, seed, t, res[t]);
        int count = 0;
        for (const auto& d : dc.disks) count += region_contains(s, region, d.center) ? 1 : 0;
        out.per_trial[t] = 2 * lambda * area - count;
    });
    for (int r : res) out.resamples += r;
    std::tie(out.mean, out.std_error) = mean_and_se(out.per_trial);
    return out;
}

/**
 * @brief N = int over [0, 2pi)^3 of the area of the triangle inscribed in the
 * unit circle at the three angles.
 *
 * One angle is fixed by rotation and the other two are ordered.
 */
inline double inscribed_area_integral()
{
    static const double value = [] {
        using boost::math::quadrature::gauss_kronrod;
        const double two_pi = 2 * std::numbers::pi;
        auto inner = [](double b) {
            auto area = [b](double a) { return 0.5 * (std::sin(a) + std::sin(b - a) - std::sin(b)); };
            return gauss_kronrod<double, 61>::integrate(area, 0.0, b, 15, 1e-14);
        };
        const double ordered = gauss_kronrod<double, 61>::integrate(inner, 0.0, two_pi, 15, 1e-14);
        return two_pi * 2.0 * ordered;
    }();
    return value;
}

/**
 * @brief Expected Delaunay face count on the unit sphere from the integral
 * formula, truncated at circumradius delta.
 *
 * E[F] = (lambda^3 / 6) A (2N) int_0^delta exp(-lambda 2 pi (1 - cos r)) sin^3 r dr,
 * where 2 x (inscribed area) is the Jacobian of the circumcenter-radius-angle
 * coordinates on point triples.
 */
inline double expected_faces_quadrature(double lambda, double delta)
{
    const auto s = SurfaceModel::sphere();
    if (!(delta > 0 && delta <= s.delta_max() + 1e-15)) {
        throw Error(Errc::BadDelta, "delta must lie in (0, " + std::to_string(s.delta_max()) + "]");
    }
    if (!(lambda > 0)) throw Error(Errc::InvalidArgument, "intensity must be positive");
    auto radial = [lambda, &s](double r) {
        const double sr = std::sin(r);
        return std::exp(-lambda * s.disk_area(r)) * sr * sr * sr;
    };
    // Split at the bulk of the mass, r ~ 1/sqrt(2 pi lambda).
    const double knee = std::min(delta, 4 / std::sqrt(2 * std::numbers::pi * lambda));
    using boost::math::quadrature::gauss_kronrod;
    double integral = gauss_kronrod<double, 61>::integrate(radial, 0.0, knee, 15, 1e-15);
    if (knee < delta) integral += gauss_kronrod<double, 61>::integrate(radial, knee, delta, 15, 1e-15);
    return lambda * lambda * lambda / 6 * s.area() * 2 * inscribed_area_integral() * integral;
}

/** @brief Covering and genericity of a sample at scale delta */
struct DenseReport {
    bool covering{false};
    bool generic{false};
    double max_circumradius{0.0};
    std::string detail;
    [[nodiscard]] bool ok() const { return covering && generic; }
};

/**
 * @brief Every delta-ball holds a point and no four points share a circle of
 * radius below delta.
 *
 * Covering uses the largest Delaunay circumradius. Genericity scans all
 * triples for samples of at most 64 points and otherwise checks Delaunay
 * circumcircles against the adjacent vertices.
 */
inline DenseReport is_generically_delta_dense(const PointSample& sample, double delta)
{
    DenseReport rep;
    const auto& s = sample.surface;
    const auto& pts = sample.points;
    const int n = static_cast<int>(pts.size());
    DelaunayComplex dc;
    bool have_dc = false;
    try {
        dc = delaunay(sample);
        have_dc = true;
    } catch (const Error& e) {
        if (e.code() != Errc::DegenerateSample) throw;
        rep.detail = e.what();
        if (std::string(e.what()).find("cocircular") != std::string::npos) return rep;
    }
    for (const auto& d : dc.disks) rep.max_circumradius = std::max(rep.max_circumradius, d.radius);
    rep.covering = have_dc && rep.max_circumradius < delta;

    auto on_circle = [&](const Disk& d, const Vec3& q) {
        return std::abs(s.distance(d.center, q) - d.radius) <= kDegeneracyTol * std::max(1.0, d.radius);
    };
    rep.generic = true;
    if (n <= 64) {
        for (int i = 0; i < n && rep.generic; ++i) {
            for (int j = i + 1; j < n && rep.generic; ++j) {
                for (int k = j + 1; k < n && rep.generic; ++k) {
                    Disk d;
                    try {
                        d = circumdisk(s, pts[i], pts[j], pts[k]);
                    } catch (const Error&) {
                        continue;
                    }
                    if (d.radius >= delta) continue;
                    for (int q = 0; q < n; ++q) {
                        if (q == i || q == j || q == k) continue;
                        if (on_circle(d, pts[q])) {
                            rep.generic = false;
                            rep.detail = "points " + std::to_string(i) + "," + std::to_string(j) + "," +
                                         std::to_string(k) + "," + std::to_string(q) + " are cocircular";
                            break;
                        }
                    }
                }
            }
        }
    } else if (have_dc) {
        for (int f = 0; f < dc.face_count() && rep.generic; ++f) {
            if (dc.disks[f].radius >= delta) continue;
            for (int g : dc.neighbors[f]) {
                for (int v : dc.faces[g]) {
                    if (v == dc.faces[f][0] || v == dc.faces[f][1] || v == dc.faces[f][2]) continue;
                    if (on_circle(dc.disks[f], pts[v])) {
                        rep.generic = false;
                        rep.detail = "face " + std::to_string(f) + " circle passes through point " + std::to_string(v);
                    }
                }
            }
        }
    }
    if (rep.generic && have_dc) {
        rep.detail = rep.covering ? "covering" : "max circumradius " + std::to_string(rep.max_circumradius) + " >= delta";
    }
    return rep;
}

}  // namespace dcu
