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

/// @file objective.hpp
/// @brief Total prism volume H over an angle system and its class derivatives.

#include <vector>

#include <Eigen/Dense>

#include "dcu/angles.hpp"
#include "dcu/hyperbolic.hpp"

namespace dcu
{

/// Angles of face t, NotInDomain when the face is not a guarded hyperbolic triangle.
inline Triple face_triangle(const AngleSystem& x, int t)
{
    const auto a = corner_angles(x, t);
    if (!is_hyperbolic(a)) {
        throw Error(Errc::NotInDomain, "face " + std::to_string(t) + " angles (" + std::to_string(a[0]) + "," +
                                           std::to_string(a[1]) + "," + std::to_string(a[2]) +
                                           ") are not hyperbolic");
    }
    return a;
}

inline Triple face_partials(const AngleSystem& x, int t) { return {x.partial(t, 0), x.partial(t, 1), x.partial(t, 2)}; }

/// True when every face is hyperbolic with all angles and the defect at least `margin`.
inline bool in_domain(const AngleSystem& x, double margin = kAngleGuard)
{
    for (int f = 0; f < x.complex->face_count(); ++f) {
        const auto a = corner_angles(x, f);
        for (double v : a) {
            if (!(v >= margin && v <= std::numbers::pi - margin)) return false;
        }
        if (!(std::numbers::pi - (a[0] + a[1] + a[2]) >= margin)) return false;
    }
    return true;
}

/// H(x) = sum of face prism volumes.
inline double objective_H(const AngleSystem& x)
{
    double h = 0.0;
    for (int f = 0; f < x.complex->face_count(); ++f) h += prism_volume(face_triangle(x, f));
    return h;
}

/// dH/dpsi per side: log((cosh l - 1)/2) of that side in its face.
inline std::vector<double> grad_H(const AngleSystem& x)
{
    std::vector<double> g(x.psi.size());
    for (int f = 0; f < x.complex->face_count(); ++f) {
        const auto gf = log_length_terms(face_triangle(x, f));
        for (int s = 0; s < 3; ++s) g[3 * f + s] = gf[s];
    }
    return g;
}

/// dH along C^e: term of the lower side minus term of the upper side.
inline Eigen::VectorXd class_grad(const AngleSystem& x)
{
    const auto g = grad_H(x);
    const auto& t = *x.complex;
    Eigen::VectorXd out(t.edge_count());
    for (int e = 0; e < t.edge_count(); ++e) out[e] = g[t.edge_sides(e)[0]] - g[t.edge_sides(e)[1]];
    return out;
}

/// Second derivatives of H in the class coordinates.
inline Eigen::MatrixXd class_hessian(const AngleSystem& x)
{
    const auto& t = *x.complex;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(t.edge_count(), t.edge_count());
    for (int f = 0; f < t.face_count(); ++f) {
        face_triangle(x, f);
        const auto hf = volume_hessian(face_partials(x, f));
        for (int i = 0; i < 3; ++i) {
            const int si = 3 * f + i;
            for (int j = 0; j < 3; ++j) {
                const int sj = 3 * f + j;
                h(t.edge_of(si), t.edge_of(sj)) += t.side_sign(si) * t.side_sign(sj) * hf[i][j];
            }
        }
    }
    return h;
}

/// Central differences of class_grad with step h.
inline Eigen::MatrixXd class_hessian_fd(const AngleSystem& x, double h = 1e-6)
{
    const int E = x.complex->edge_count();
    Eigen::MatrixXd out(E, E);
    std::vector<double> c(E, 0.0);
    for (int e = 0; e < E; ++e) {
        c[e] = h;
        const auto gp = class_grad(move_in_class(x, c));
        c[e] = -h;
        const auto gm = class_grad(move_in_class(x, c));
        c[e] = 0.0;
        out.col(e) = (gp - gm) / (2 * h);
    }
    return 0.5 * (out + out.transpose());
}

}  // namespace dcu
