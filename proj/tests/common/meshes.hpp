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

// Background meshes for the smooth-functional tests.

#include <random>

#include "dcu/angles.hpp"
#include "dcu/catalog.hpp"
#include "dcu/flow.hpp"
#include "dcu/uniformize.hpp"

namespace meshes
{

/// Genus-2 mesh with the edge lengths of the uniformized central class on 24 faces.
inline const dcu::MeshMetric& genus2_hyperbolic()
{
    static const dcu::MeshMetric g = [] {
        const auto t = dcu::catalog::genus2_f24();
        const auto r = dcu::uniformize(dcu::central_spec(t).first);
        return dcu::build_mesh(t, r.structure.length);
    }();
    return g;
}

/// The same mesh conformally rescaled to curvature -1 at every vertex.
inline const dcu::MeshMetric& genus2_unit_curvature()
{
    static const dcu::MeshMetric g = dcu::constant_curvature_background(genus2_hyperbolic());
    return g;
}

/// Genus-2 mesh on 24 faces with edge lengths uniform in [1, 1.9].
template <class Rng>
dcu::MeshMetric random_genus2(Rng& rng)
{
    const auto t = dcu::catalog::genus2_f24();
    std::uniform_real_distribution<double> u(1.0, 1.9);
    std::vector<double> l(t->edge_count());
    for (auto& x : l) x = u(rng);
    return dcu::build_mesh(t, l);
}

/// Random mass-mean-zero vector with entries of size `scale`.
template <class Rng>
Eigen::VectorXd random_mean_zero(const dcu::MeshMetric& g, Rng& rng, double scale)
{
    std::normal_distribution<double> n(0.0, scale);
    Eigen::VectorXd v(g.vertex_count());
    for (auto& x : v) x = n(rng);
    return dcu::project_mean_zero(g, v);
}

}  // namespace meshes
