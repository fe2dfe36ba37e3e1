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
 * @file uniformize.hpp
 * @brief Maximize H over a conformal class and assemble the resulting
 * hyperbolic structure with its circumscribed disk pattern.
 */

#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <Eigen/Dense>

#include "dcu/objective.hpp"

namespace dcu
{

/** @brief Edge lengths, face angles and circumdisks of a uniform angle system */
struct HyperbolicStructure {
    ComplexPtr complex;
    std::vector<double> length;              ///< per edge, averaged over its two sides
    std::vector<Triple> angles;              ///< per face, A_i opposite side i
    std::vector<double> circumradius;        ///< per face; +inf when no circumcircle exists
    std::vector<double> intersection_angle;  ///< per edge, pi - psi^e
    double max_length_mismatch{0.0};
    int worst_edge{-1};
    double total_area{0.0};
};

/**
 * @brief Circumradius from one side: tanh R = tanh(l/2) / cos(p).
 *
 * p is the signed partial on that side; returns +inf when the ratio reaches 1.
 */
inline double circumradius_from_side(double length, double partial)
{
    const double r = std::tanh(length / 2) / std::cos(partial);
    return r < 1.0 ? std::atanh(r) : std::numeric_limits<double>::infinity();
}

/// Throws LengthMismatch when two sides of an edge disagree by more than `tol`.
inline HyperbolicStructure assemble_structure(const AngleSystem& y, double tol = 1e-8)
{
    const auto& t = *y.complex;
    HyperbolicStructure h;
    h.complex = y.complex;
    std::vector<double> side_len(t.side_count());
    h.angles.resize(t.face_count());
    h.circumradius.resize(t.face_count());
    for (int f = 0; f < t.face_count(); ++f) {
        h.angles[f] = face_triangle(y, f);
        const auto l = edge_lengths(h.angles[f]);
        double r = 0.0;
        for (int s = 0; s < 3; ++s) {
            side_len[3 * f + s] = l[s];
            r += circumradius_from_side(l[s], y.partial(f, s));
        }
        h.circumradius[f] = r / 3;
        h.total_area += std::numbers::pi - (h.angles[f][0] + h.angles[f][1] + h.angles[f][2]);
    }
    h.length.resize(t.edge_count());
    h.intersection_angle.resize(t.edge_count());
    for (int e = 0; e < t.edge_count(); ++e) {
        const auto& s = t.edge_sides(e);
        const double d = std::abs(side_len[s[0]] - side_len[s[1]]);
        if (d > h.max_length_mismatch || h.worst_edge < 0) {
            h.max_length_mismatch = d;
            h.worst_edge = e;
        }
        h.length[e] = 0.5 * (side_len[s[0]] + side_len[s[1]]);
        h.intersection_angle[e] = std::numbers::pi - informal_intersection_angle(y, e);
    }
    if (h.max_length_mismatch > tol) {
        throw Error(Errc::LengthMismatch, "edge " + std::to_string(h.worst_edge) + " side lengths differ by " +
                                              std::to_string(h.max_length_mismatch));
    }
    return h;
}

/// Informal intersection angles recovered from the structure's face angles.
inline ConformalClassSpec structure_class(const HyperbolicStructure& h)
{
    const auto& t = *h.complex;
    ConformalClassSpec s{h.complex, std::vector<double>(t.edge_count(), 0.0)};
    for (int f = 0; f < t.face_count(); ++f) {
        const auto p = partials_from_triangle(h.angles[f]);
        for (int i = 0; i < 3; ++i) s.psi[t.edge_of(3 * f + i)] += p[i];
    }
    return s;
}

/** @brief Summary of a disk pattern */
struct PatternReport {
    std::vector<double> intersection_angle;
    std::vector<double> circumradius;
    double total_area{0.0};
    double expected_area{0.0};  ///< -2 pi chi
    double max_length_mismatch{0.0};
    bool ok{true};
};

inline PatternReport pattern_report(const HyperbolicStructure& h, double area_tol = 1e-9)
{
    PatternReport r;
    r.intersection_angle = h.intersection_angle;
    r.circumradius = h.circumradius;
    r.total_area = h.total_area;
    r.expected_area = -2 * std::numbers::pi * h.complex->euler_characteristic();
    r.max_length_mismatch = h.max_length_mismatch;
    r.ok = std::abs(r.total_area - r.expected_area) <= area_tol;
    for (double a : h.intersection_angle) r.ok = r.ok && a > 0 && a < std::numbers::pi;
    return r;
}

struct UniformizeOptions {
    double tol{1e-10};
    int max_iter{200};
    double interior_margin{1e-9};
    double armijo{1e-4};
};

/** @brief One row of the optimization trace */
struct TraceRow {
    int iteration{0};
    double H{0.0};
    double grad_inf{0.0};
    double step{0.0};  ///< step accepted to reach this iterate (0 for the start)
    double length_mismatch{0.0};
    double gain{0.0};  ///< H increase over the accepted step, integrated along the step
    bool newton{false};
};

struct UniformizeResult {
    AngleSystem system;
    HyperbolicStructure structure;
    std::vector<TraceRow> trace;
    bool converged{false};
    int iterations{0};
};

namespace detail
{

inline double max_length_mismatch(const AngleSystem& y)
{
    const auto& t = *y.complex;
    std::vector<double> len(t.side_count());
    for (int f = 0; f < t.face_count(); ++f) {
        const auto l = edge_lengths(face_triangle(y, f));
        for (int s = 0; s < 3; ++s) len[3 * f + s] = l[s];
    }
    double m = 0.0;
    for (int e = 0; e < t.edge_count(); ++e) m = std::max(m, std::abs(len[t.edge_sides(e)[0]] - len[t.edge_sides(e)[1]]));
    return m;
}

inline std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace detail

/**
 * @brief Damped Newton ascent of H from an interior point of its class.
 *
 * Iterates move only along span{C^e}. The result carries converged = false
 * and the last iterate when the gradient test is not met within max_iter.
 */
inline UniformizeResult uniformize_from(const AngleSystem& start, const UniformizeOptions& opts = {})
{
    if (!in_domain(start, opts.interior_margin)) {
        throw Error(Errc::NotInDomain, "start point is not an interior negatively curved system");
    }
    UniformizeResult res;
    AngleSystem y = start;
    double step = 0.0, gain = 0.0;
    bool newton = false;
    for (int it = 0;; ++it) {
        const Eigen::VectorXd g = class_grad(y);
        TraceRow row;
        row.iteration = it;
        row.H = objective_H(y);
        row.grad_inf = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
        row.step = step;
        row.gain = gain;
        row.newton = newton;
        row.length_mismatch = detail::max_length_mismatch(y);
        res.trace.push_back(row);
        res.iterations = it;
        if (row.grad_inf < opts.tol) {
            res.converged = true;
            break;
        }
        if (it >= opts.max_iter) break;

        Eigen::VectorXd d;
        newton = false;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(-class_hessian(y));
        if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
            d = ldlt.solve(g);
            newton = d.allFinite() && d.dot(g) > 0;
        }
        if (!newton) d = g;

        const double slope = d.dot(g);
        double s = 1.0;
        bool accepted = false;
        while (s > 1e-20) {
            const auto trial = move_in_class(y, detail::to_std(s * d));
            if (in_domain(trial, opts.interior_margin)) {
                // H(trial) - H(y) = int_0^1 grad H(y + u s d) . (s d) du
                auto f = [&](double u) {
                    return class_grad(move_in_class(y, detail::to_std(u * s * d))).dot(s * d);
                };
                const double dh = boost::math::quadrature::gauss<double, 10>::integrate(f, 0.0, 1.0);
                if (dh >= opts.armijo * s * slope) {
                    y = trial;
                    step = s;
                    gain = dh;
                    accepted = true;
                    break;
                }
            }
            s *= 0.5;
        }
        if (!accepted) break;
    }
    res.system = y;
    res.structure = assemble_structure(y, std::numeric_limits<double>::infinity());
    return res;
}

/// Teleport the class into the negatively curved Delaunay slice, then maximize H.
inline UniformizeResult uniformize(const ConformalClassSpec& spec, const UniformizeOptions& opts = {})
{
    return uniformize_from(find_negative_delaunay(spec).system, opts);
}

}  // namespace dcu
