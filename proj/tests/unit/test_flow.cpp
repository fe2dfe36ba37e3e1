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
#include <gtest/gtest.h>

#include <random>

#include "dcu/flow.hpp"
#include "meshes.hpp"

using namespace dcu;

TEST(Flow, UniformMetricIsFixedPoint)
{
    const auto& g = meshes::genus2_unit_curvature();
    const auto [phi, rep] = log_ricci_flow(g, Eigen::VectorXd::Zero(g.vertex_count()));
    EXPECT_TRUE(rep.converged);
    EXPECT_EQ(rep.iterations, 0);
    EXPECT_EQ(phi.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Flow, RecoversUniformMetricFromPerturbation)
{
    const auto& g = meshes::genus2_unit_curvature();
    std::mt19937_64 rng(1);
    for (int i = 0; i < 3; ++i) {
        const Eigen::VectorXd phi0 = meshes::random_mean_zero(g, rng, 0.01);
        const auto [phi, rep] = log_ricci_flow(g, phi0);
        ASSERT_TRUE(rep.converged);
        EXPECT_LE(rep.iterations, 5000);
        EXPECT_TRUE(rep.monotone);
        EXPECT_LT(rep.spread, 1e-6);
        for (std::size_t s = 1; s < rep.steps.size(); ++s) EXPECT_GE(rep.steps[s].I, rep.steps[s - 1].I - 1e-15);
        EXPECT_GT(rep.steps.back().I, rep.steps.front().I);
        const double shift = mass_mean(g, phi);
        EXPECT_LT((phi.array() - shift).abs().maxCoeff(), 1e-6);
        EXPECT_NEAR(rep.kh_min, rep.kh_max, 1e-5 * std::abs(rep.kh_mean));
    }
}

TEST(Flow, CriticalIffUniform)
{
    const auto& g = meshes::genus2_hyperbolic();
    FlowOptions opts;
    opts.tol = 1e-12;
    const auto [phi, rep] = log_ricci_flow(conformal_change(g, teleport(g)), Eigen::VectorXd::Zero(g.vertex_count()), opts);
    ASSERT_TRUE(rep.converged);
    EXPECT_LT(rep.steps.back().grad_inf, 1e-10);
    EXPECT_LT(rep.steps.back().spread, 1e-6);
    // Away from the optimum both the gradient and the spread are large.
    EXPECT_GT(rep.steps.front().grad_inf, 1e-10);
    EXPECT_GT(rep.steps.front().spread, 1e-6);
}

TEST(Flow, IterationCapLeavesConvergedFalse)
{
    const auto& g = meshes::genus2_unit_curvature();
    std::mt19937_64 rng(2);
    FlowOptions opts;
    opts.max_iter = 3;
    const auto [phi, rep] = log_ricci_flow(g, meshes::random_mean_zero(g, rng, 0.01), opts);
    EXPECT_FALSE(rep.converged);
    EXPECT_EQ(rep.iterations, 3);
}

TEST(Flow, BackgroundHasUnitCurvature)
{
    const auto& g = meshes::genus2_unit_curvature();
    EXPECT_LT((g.k.array() + 1).abs().maxCoeff(), 1e-12);
}
