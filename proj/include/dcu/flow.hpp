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

/// @file flow.hpp
/// @brief Log Ricci flow: gradient ascent of I^g towards constant curvature.

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <Eigen/Dense>

#include "dcu/mesh.hpp"

namespace dcu
{

struct FlowOptions {
    double tol{1e-6};  ///< target relative spread of k_h
    int max_iter{5000};
    double armijo{1e-4};
    double shrink{0.5};
    double u_min{1e-12};
    double newton_threshold{1e-3};  ///< use Newton steps once |grad|_inf is below this
};

/** @brief One accepted iterate of the flow */
struct FlowStep {
    int iteration{0};
    double I{0.0};
    double grad_inf{0.0};
    double step{0.0};
    double gain{0.0};  ///< I increase integrated along the accepted step
    double spread{0.0};
    bool newton{false};
};

struct FlowReport {
    bool converged{false};
    int iterations{0};
    std::vector<FlowStep> steps;
    double kh_mean{0.0};
    double kh_min{0.0};
    double kh_max{0.0};
    double spread{0.0};
    bool monotone{true};
};

namespace detail
{

inline bool flow_admissible(const MeshMetric& g, const ConformalFactor& phi, double u_min)
{
    const Eigen::VectorXd u = -(g.S * phi).cwiseQuotient(g.mass) - g.k;
    return phi.allFinite() && u.minCoeff() >= u_min;
}

}  // namespace detail

/**
 * @brief Ascend I^g from phi0 until the relative spread of k_h drops below tol.
 *
 * Gradient steps follow P(M^{-1} G) with P the mass-mean projection; Newton
 * steps on the mean-zero subspace take over near the maximizer. Step sizes
 * are backtracked until u stays above u_min and the Armijo condition holds.
 */
inline std::pair<ConformalFactor, FlowReport> log_ricci_flow(const MeshMetric& g, const ConformalFactor& phi0,
                                                             const FlowOptions& opts = {})
{
    ConformalFactor phi = phi0;
    FlowReport rep;
    double step = 0.0, gain = 0.0;
    bool newton = false;
    const Eigen::VectorXd w = g.mass / g.mass.norm();
    for (int it = 0;; ++it) {
        const Eigen::VectorXd G = gradient_Ig(g, phi);
        FlowStep row;
        row.iteration = it;
        row.I = evaluate_Ig(g, phi);
        row.grad_inf = G.cwiseAbs().maxCoeff();
        row.step = step;
        row.gain = gain;
        row.newton = newton;
        row.spread = relative_curvature_spread(g, phi);
        if (!rep.steps.empty() && row.I < rep.steps.back().I - 1e-12 * (1 + std::abs(row.I))) rep.monotone = false;
        rep.steps.push_back(row);
        rep.iterations = it;
        if (row.spread < opts.tol) {
            rep.converged = true;
            break;
        }
        if (it >= opts.max_iter) break;

        Eigen::VectorXd d;
        newton = false;
        if (row.grad_inf < opts.newton_threshold) {
            const Eigen::MatrixXd A = -hessian_matrix_Ig(g, phi) + w * w.transpose();
            Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
            if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
                d = ldlt.solve(G);
                newton = d.allFinite() && d.dot(G) > 0;
            }
        }
        if (!newton) d = project_mean_zero(g, G.cwiseQuotient(g.mass));
        const double slope = d.dot(G);

        double s = 1.0;
        bool accepted = false;
        while (s > 1e-20) {
            const ConformalFactor trial = phi + s * d;
            if (detail::flow_admissible(g, trial, opts.u_min)) {
                auto f = [&](double t) { return gradient_Ig(g, phi + (t * s) * d).dot(s * d); };
                const double di = boost::math::quadrature::gauss<double, 10>::integrate(f, 0.0, 1.0);
                if (di >= opts.armijo * s * slope) {
                    phi = trial;
                    step = s;
                    gain = di;
                    accepted = true;
                    break;
                }
            }
            s *= opts.shrink;
        }
        if (!accepted) break;
    }
    const Eigen::VectorXd kh = curvature_h(g, phi);
    const Eigen::VectorXd mh = (2 * phi.array()).exp() * g.mass.array();
    rep.kh_mean = mh.dot(kh) / mh.sum();
    rep.kh_min = kh.minCoeff();
    rep.kh_max = kh.maxCoeff();
    rep.spread = relative_curvature_spread(g, phi);
    return {phi, rep};
}

/**
 * @brief Background metric with curvature close to -1 everywhere.
 *
 * Teleports, flows to `tol`, then rescales by the mean curvature.
 */
inline MeshMetric constant_curvature_background(const MeshMetric& g, double tol = 1e-13)
{
    const ConformalFactor phi0 = teleport(g);
    FlowOptions opts;
    opts.tol = tol;
    auto [phi, rep] = log_ricci_flow(conformal_change(g, phi0), ConformalFactor::Zero(phi0.size()), opts);
    const ConformalFactor total = phi0 + phi;
    const Eigen::VectorXd kh = curvature_h(g, total);
    const double kappa = (2 * total.array()).exp().matrix().cwiseProduct(g.mass).dot(kh) /
                         (2 * total.array()).exp().matrix().dot(g.mass);
    return conformal_change(g, (total.array() + 0.5 * std::log(std::abs(kappa))).matrix());
}

}  // namespace dcu
