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
 * @file mesh.hpp
 * @brief Discrete background metrics, conformal factors and the averaged
 * prism-volume functional I^g.
 *
 * A metric is stored as the cotangent stiffness S, lumped vertex masses m and
 * angle-defect curvature k. With M = diag(m) the Laplacian is
 * Delta = -M^{-1} S, and a conformal factor phi gives h = e^{2 phi} g with
 * masses e^{2 phi} m and curvature k_h = e^{-2 phi} (M^{-1} S phi + k).
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dcu/complex.hpp"

namespace dcu
{

/** @brief Stiffness, masses and curvature of a discrete metric */
struct MeshMetric {
    ComplexPtr complex;
    std::vector<double> lengths;  ///< per edge; empty for conformally changed metrics
    Eigen::MatrixXd S;
    Eigen::VectorXd mass;
    Eigen::VectorXd k;
    double area{0.0};

    [[nodiscard]] int vertex_count() const { return static_cast<int>(mass.size()); }
    [[nodiscard]] int euler_characteristic() const { return complex->euler_characteristic(); }
};

using ConformalFactor = Eigen::VectorXd;

/**
 * @brief Assemble the cotangent metric of a complex with Euclidean edge lengths.
 *
 * Throws InvalidMesh for non-positive lengths or a failed strict triangle
 * inequality.
 */
inline MeshMetric build_mesh(const ComplexPtr& t, const std::vector<double>& lengths)
{
    if (static_cast<int>(lengths.size()) != t->edge_count()) {
        throw Error(Errc::InvalidMesh, "expected " + std::to_string(t->edge_count()) + " lengths, got " +
                                           std::to_string(lengths.size()));
    }
    const int V = t->vertex_count();
    MeshMetric g;
    g.complex = t;
    g.lengths = lengths;
    g.S = Eigen::MatrixXd::Zero(V, V);
    g.mass = Eigen::VectorXd::Zero(V);
    Eigen::VectorXd angle_sum = Eigen::VectorXd::Zero(V);
    for (int f = 0; f < t->face_count(); ++f) {
        std::array<double, 3> l{};
        for (int s = 0; s < 3; ++s) {
            l[s] = lengths[t->edge_of(3 * f + s)];
            if (!(l[s] > 0)) throw Error(Errc::InvalidMesh, "edge length must be positive in face " + std::to_string(f));
        }
        // Stable Heron with sorted sides a >= b >= c.
        std::array<double, 3> srt = l;
        std::sort(srt.begin(), srt.end(), std::greater<>());
        const double a = srt[0], b = srt[1], c = srt[2];
        const double q = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
        if (!(c - (a - b) > 0) || !(q > 0)) {
            throw Error(Errc::InvalidMesh, "face " + std::to_string(f) + " violates the triangle inequality");
        }
        const double A = 0.25 * std::sqrt(q);
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, kk = (i + 2) % 3;
            const double cot = (l[j] * l[j] + l[kk] * l[kk] - l[i] * l[i]) / (4 * A);
            const double w = 0.5 * cot;
            const int vj = t->corner_vertex(f, j), vk = t->corner_vertex(f, kk);
            g.S(vj, vj) += w;
            g.S(vk, vk) += w;
            g.S(vj, vk) -= w;
            g.S(vk, vj) -= w;
            const double ang = std::atan2(4 * A, l[j] * l[j] + l[kk] * l[kk] - l[i] * l[i]);
            angle_sum[t->corner_vertex(f, i)] += ang;
            g.mass[t->corner_vertex(f, i)] += A / 3;
        }
        g.area += A;
    }
    g.k = (2 * std::numbers::pi - angle_sum.array()) / g.mass.array();
    return g;
}

/// k_h = e^{-2 phi} (M^{-1} S phi + k).
inline Eigen::VectorXd curvature_h(const MeshMetric& g, const ConformalFactor& phi)
{
    const Eigen::VectorXd base = (g.S * phi).cwiseQuotient(g.mass) + g.k;
    return (-2 * phi.array()).exp() * base.array();
}

/// Metric h = e^{2 phi} g: same stiffness, masses e^{2 phi} m, curvature k_h.
inline MeshMetric conformal_change(const MeshMetric& g, const ConformalFactor& phi)
{
    MeshMetric h;
    h.complex = g.complex;
    h.S = g.S;
    h.mass = (2 * phi.array()).exp() * g.mass.array();
    h.k = curvature_h(g, phi);
    h.area = h.mass.sum();
    return h;
}

/// Mass-weighted mean.
inline double mass_mean(const MeshMetric& g, const Eigen::VectorXd& v) { return g.mass.dot(v) / g.mass.sum(); }

/// Remove the mass-weighted mean.
inline Eigen::VectorXd project_mean_zero(const MeshMetric& g, const Eigen::VectorXd& v)
{
    return (v.array() - mass_mean(g, v)).matrix();
}

/**
 * @brief Conformal factor with constant curvature 2 pi chi / A.
 *
 * Solves S phi = M (c - k) in the mass-mean-zero complement. Throws
 * InvalidMesh when chi >= 0 and SolveFailure when the residual check fails.
 */
inline ConformalFactor teleport(const MeshMetric& g)
{
    const int chi = g.euler_characteristic();
    if (chi >= 0) throw Error(Errc::InvalidMesh, "teleport needs negative Euler characteristic, got " + std::to_string(chi));
    const double c = 2 * std::numbers::pi * chi / g.area;
    const Eigen::VectorXd rhs = g.mass.cwiseProduct((c - g.k.array()).matrix());
    const Eigen::VectorXd w = g.mass / std::sqrt(g.mass.squaredNorm());
    const Eigen::MatrixXd A = g.S + w * w.transpose();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    if (ldlt.info() != Eigen::Success) throw Error(Errc::SolveFailure, "factorization failed");
    Eigen::VectorXd phi = ldlt.solve(rhs);
    const double res = (g.S * phi - rhs).norm();
    if (!phi.allFinite() || res > 1e-9 * (1 + rhs.norm())) {
        throw Error(Errc::SolveFailure, "residual " + std::to_string(res) + " too large");
    }
    return phi;
}

namespace detail
{

/// u = Delta phi - k = -M^{-1} S phi - k; throws OutOfDomain unless u > 0 and k < 0.
inline Eigen::VectorXd domain_u(const MeshMetric& g, const ConformalFactor& phi)
{
    const Eigen::VectorXd u = -(g.S * phi).cwiseQuotient(g.mass) - g.k;
    int worst = 0;
    for (int v = 0; v < u.size(); ++v) {
        if (u[v] < u[worst]) worst = v;
    }
    if (!(u[worst] > 0)) {
        throw Error(Errc::OutOfDomain, "vertex " + std::to_string(worst) + " has Delta phi - k = " + std::to_string(u[worst]));
    }
    for (int v = 0; v < g.k.size(); ++v) {
        if (!(g.k[v] < 0)) {
            throw Error(Errc::OutOfDomain, "vertex " + std::to_string(v) + " has background curvature " + std::to_string(g.k[v]));
        }
    }
    return u;
}

}  // namespace detail

/// I^g(phi) = -[phi^T S phi + sum m u log u + sum m k log|k|].
inline double evaluate_Ig(const MeshMetric& g, const ConformalFactor& phi)
{
    const Eigen::VectorXd u = detail::domain_u(g, phi);
    const double dirichlet = phi.dot(g.S * phi);
    double a = 0.0, b = 0.0;
    for (int v = 0; v < u.size(); ++v) {
        a += g.mass[v] * u[v] * std::log(u[v]);
        b += g.mass[v] * g.k[v] * std::log(std::abs(g.k[v]));
    }
    return -(dirichlet + a + b);
}

/// Gradient S log|k_h|; its entries sum to zero.
inline Eigen::VectorXd gradient_Ig(const MeshMetric& g, const ConformalFactor& phi)
{
    const Eigen::VectorXd u = detail::domain_u(g, phi);
    const Eigen::VectorXd log_kh = u.array().log() - 2 * phi.array();
    return g.S * log_kh;
}

/// Second variation in direction psi: -[2 psi^T S psi + sum (S psi)^2 / (m u)].
inline double hessian_Ig(const MeshMetric& g, const ConformalFactor& phi, const Eigen::VectorXd& psi)
{
    const Eigen::VectorXd u = detail::domain_u(g, phi);
    const Eigen::VectorXd sp = g.S * psi;
    double q = 0.0;
    for (int v = 0; v < u.size(); ++v) q += sp[v] * sp[v] / (g.mass[v] * u[v]);
    return -(2 * psi.dot(sp) + q);
}

/// Hessian matrix -2 S - S (M U)^{-1} S.
inline Eigen::MatrixXd hessian_matrix_Ig(const MeshMetric& g, const ConformalFactor& phi)
{
    const Eigen::VectorXd u = detail::domain_u(g, phi);
    const Eigen::VectorXd d = (g.mass.cwiseProduct(u)).cwiseInverse();
    return -2 * g.S - g.S * d.asDiagonal() * g.S;
}

/// E(h) = -sum m e^{2 phi} k_h log|k_h|; throws ZeroCurvatureVertex when some k_h = 0.
inline double entropy(const MeshMetric& g, const ConformalFactor& phi)
{
    const Eigen::VectorXd kh = curvature_h(g, phi);
    double e = 0.0;
    for (int v = 0; v < kh.size(); ++v) {
        if (kh[v] == 0.0 || !std::isfinite(kh[v])) {
            throw Error(Errc::ZeroCurvatureVertex, "vertex " + std::to_string(v) + " has zero curvature");
        }
        e -= g.mass[v] * std::exp(2 * phi[v]) * kh[v] * std::log(std::abs(kh[v]));
    }
    return e;
}

/// sqrt(sum m_h (k_h - mean)^2 / A_h) / |mean| with h-masses m_h = e^{2 phi} m.
inline double relative_curvature_spread(const MeshMetric& g, const ConformalFactor& phi)
{
    const Eigen::VectorXd kh = curvature_h(g, phi);
    const Eigen::VectorXd mh = (2 * phi.array()).exp() * g.mass.array();
    const double ah = mh.sum();
    const double mean = mh.dot(kh) / ah;
    double ss = 0.0;
    for (int v = 0; v < kh.size(); ++v) ss += mh[v] * (kh[v] - mean) * (kh[v] - mean);
    return std::sqrt(ss / ah) / std::abs(mean);
}

}  // namespace dcu
