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
 * @file complex.hpp
 * @brief Closed-surface triangulations described by side gluings.
 *
 * A face has corners 0,1,2 and sides 0,1,2; side s is opposite corner s and
 * runs counterclockwise from corner s+1 to corner s+2 (indices mod 3). A
 * gluing pair {(f,s),(g,t)} identifies the two sides with reversed direction:
 * corner (f,s+1) meets corner (g,t+2) and corner (f,s+2) meets corner (g,t+1).
 * Every such surface is orientable; orientability is therefore not checked.
 *
 * Sides and corners are addressed by flat ids 3*face+index. Edges are
 * numbered by increasing lower side id, so edge ids depend only on the
 * gluing, not on the order in which pairs are listed.
 */

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dcu/error.hpp"

namespace dcu
{

/** @brief A (face, side index) flag */
struct Side {
    int face{0};
    int index{0};

    [[nodiscard]] constexpr int id() const noexcept { return 3 * face + index; }
    static constexpr Side from_id(int id) noexcept { return {id / 3, id % 3}; }
    friend constexpr auto operator<=>(const Side&, const Side&) = default;
};

using GluingPair = std::pair<Side, Side>;

inline std::string to_string(const Side& s)
{
    return "(" + std::to_string(s.face) + "," + std::to_string(s.index) + ")";
}

class Triangulation;
using ComplexPtr = std::shared_ptr<const Triangulation>;

/** @brief Immutable flag-glued triangulation of a closed surface */
class Triangulation
{
public:
    [[nodiscard]] int face_count() const noexcept { return faces_; }
    [[nodiscard]] int side_count() const noexcept { return 3 * faces_; }
    [[nodiscard]] int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    [[nodiscard]] int vertex_count() const noexcept { return vertices_; }
    [[nodiscard]] int euler_characteristic() const noexcept
    {
        return vertices_ - edge_count() + faces_;
    }

    /// Side glued to side id `side`.
    [[nodiscard]] int mate(int side) const { return mate_.at(side); }
    [[nodiscard]] int edge_of(int side) const { return side_edge_.at(side); }
    /// Sides of edge `e`, lower id first.
    [[nodiscard]] const std::array<int, 2>& edge_sides(int e) const { return edges_.at(e); }
    /// +1 if `side` is the lower side of its edge, -1 otherwise.
    [[nodiscard]] int side_sign(int side) const
    {
        return edges_.at(side_edge_.at(side))[0] == side ? 1 : -1;
    }
    [[nodiscard]] int corner_vertex(int face, int corner) const
    {
        return corner_vertex_.at(3 * face + corner);
    }
    [[nodiscard]] std::array<int, 3> face_vertices(int face) const
    {
        return {corner_vertex(face, 0), corner_vertex(face, 1), corner_vertex(face, 2)};
    }
    /// Endpoints of edge e (equal for a loop).
    [[nodiscard]] std::array<int, 2> edge_endpoints(int e) const
    {
        const auto s = Side::from_id(edges_.at(e)[0]);
        return {corner_vertex(s.face, (s.index + 1) % 3), corner_vertex(s.face, (s.index + 2) % 3)};
    }
    /// Number of corners at vertex v.
    [[nodiscard]] int corner_count(int v) const { return corner_counts_.at(v); }

    /// Gluing pairs in canonical (edge id) order.
    [[nodiscard]] std::vector<GluingPair> gluing() const
    {
        std::vector<GluingPair> out;
        out.reserve(edges_.size());
        for (const auto& e : edges_) {
            out.emplace_back(Side::from_id(e[0]), Side::from_id(e[1]));
        }
        return out;
    }

    friend bool operator==(const Triangulation& a, const Triangulation& b)
    {
        return a.faces_ == b.faces_ && a.mate_ == b.mate_;
    }

    friend ComplexPtr build_complex(int face_count, std::span<const GluingPair> gluing);

private:
    Triangulation() = default;

    int faces_{0};
    int vertices_{0};
    std::vector<int> mate_;
    std::vector<int> side_edge_;
    std::vector<std::array<int, 2>> edges_;
    std::vector<int> corner_vertex_;
    std::vector<int> corner_counts_;
};

/**
 * @brief Validate a gluing and derive edges and vertex orbits.
 *
 * Throws Error with InvalidSide, SelfGluedSide, DuplicateSide or
 * UnmatchedSide naming the first offending side.
 */
inline ComplexPtr build_complex(int face_count, std::span<const GluingPair> gluing)
{
    if (face_count <= 0) {
        throw Error(Errc::InvalidArgument, "face count must be positive");
    }
    const int n_sides = 3 * face_count;
    std::vector<int> mate(n_sides, -1);
    auto check = [&](const Side& s) {
        if (s.face < 0 || s.face >= face_count || s.index < 0 || s.index > 2) {
            throw Error(Errc::InvalidSide, "side " + to_string(s) + " out of range");
        }
    };
    for (const auto& [a, b] : gluing) {
        check(a);
        check(b);
        if (a == b) {
            throw Error(Errc::SelfGluedSide, "side " + to_string(a) + " glued to itself");
        }
        for (const auto& s : {a, b}) {
            if (mate[s.id()] != -1) {
                throw Error(Errc::DuplicateSide, "side " + to_string(s) + " appears in two pairs");
            }
        }
        mate[a.id()] = b.id();
        mate[b.id()] = a.id();
    }
    for (int s = 0; s < n_sides; ++s) {
        if (mate[s] == -1) {
            throw Error(Errc::UnmatchedSide, "side " + to_string(Side::from_id(s)) + " is not glued");
        }
    }

    auto t = std::shared_ptr<Triangulation>(new Triangulation());
    t->faces_ = face_count;
    t->mate_ = std::move(mate);
    t->side_edge_.assign(n_sides, -1);
    for (int s = 0; s < n_sides; ++s) {
        if (t->side_edge_[s] != -1) {
            continue;
        }
        const int e = static_cast<int>(t->edges_.size());
        t->edges_.push_back({s, t->mate_[s]});
        t->side_edge_[s] = e;
        t->side_edge_[t->mate_[s]] = e;
    }

    // Vertex orbits of corners under the gluing.
    std::vector<int> parent(n_sides);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (int s = 0; s < n_sides; ++s) {
        const auto a = Side::from_id(s);
        const auto b = Side::from_id(t->mate_[s]);
        unite(3 * a.face + (a.index + 1) % 3, 3 * b.face + (b.index + 2) % 3);
        unite(3 * a.face + (a.index + 2) % 3, 3 * b.face + (b.index + 1) % 3);
    }
    std::map<int, int> root_id;
    t->corner_vertex_.resize(n_sides);
    for (int c = 0; c < n_sides; ++c) {
        auto [it, inserted] = root_id.try_emplace(find(c), static_cast<int>(root_id.size()));
        t->corner_vertex_[c] = it->second;
    }
    t->vertices_ = static_cast<int>(root_id.size());
    t->corner_counts_.assign(t->vertices_, 0);
    for (int v : t->corner_vertex_) {
        ++t->corner_counts_[v];
    }
    return t;
}

inline ComplexPtr build_complex(int face_count, const std::vector<GluingPair>& gluing)
{
    return build_complex(face_count, std::span<const GluingPair>(gluing));
}

inline int euler_characteristic(const Triangulation& t) { return t.euler_characteristic(); }

/**
 * @brief Edges incident to vertex v, one entry per edge end at v.
 *
 * A loop at v is listed twice, so the list sizes sum to 2E over all vertices.
 */
inline std::vector<int> vertex_edge_incidence(const Triangulation& t, int v)
{
    if (v < 0 || v >= t.vertex_count()) {
        throw Error(Errc::UnknownVertex, "vertex " + std::to_string(v) + " does not exist");
    }
    std::vector<int> out;
    for (int e = 0; e < t.edge_count(); ++e) {
        const auto ends = t.edge_endpoints(e);
        if (ends[0] == v) out.push_back(e);
        if (ends[1] == v) out.push_back(e);
    }
    return out;
}

/**
 * @brief Import an oriented vertex-triple list.
 *
 * Side s of face f carries the directed edge (v[s+1], v[s+2]); it is glued to
 * the unique face side carrying the reverse direction. Fails with
 * AmbiguousTriples when a directed edge repeats, a face repeats a vertex, or a
 * labelled vertex does not form a single orbit; with UnmatchedSide when a
 * reverse direction is missing.
 */
inline ComplexPtr from_vertex_triples(const std::vector<std::array<int, 3>>& faces)
{
    std::map<std::pair<int, int>, Side> directed;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        const auto& v = faces[f];
        if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2]) {
            throw Error(Errc::AmbiguousTriples, "face " + std::to_string(f) + " repeats a vertex");
        }
        for (int s = 0; s < 3; ++s) {
            const std::pair<int, int> key{v[(s + 1) % 3], v[(s + 2) % 3]};
            if (!directed.emplace(key, Side{f, s}).second) {
                throw Error(Errc::AmbiguousTriples,
                            "directed edge (" + std::to_string(key.first) + "," +
                                std::to_string(key.second) + ") occurs twice");
            }
        }
    }
    std::vector<GluingPair> gluing;
    for (const auto& [key, side] : directed) {
        auto it = directed.find({key.second, key.first});
        if (it == directed.end()) {
            throw Error(Errc::UnmatchedSide, "side " + to_string(side) + " has no reverse partner");
        }
        if (side.id() < it->second.id()) {
            gluing.emplace_back(side, it->second);
        }
    }
    auto t = build_complex(static_cast<int>(faces.size()), gluing);

    // Each label must correspond to exactly one corner orbit.
    std::map<int, int> label_vertex;
    for (int f = 0; f < t->face_count(); ++f) {
        for (int c = 0; c < 3; ++c) {
            auto [it, inserted] = label_vertex.try_emplace(faces[f][c], t->corner_vertex(f, c));
            if (!inserted && it->second != t->corner_vertex(f, c)) {
                throw Error(Errc::AmbiguousTriples,
                            "vertex label " + std::to_string(faces[f][c]) + " has a disconnected link");
            }
        }
    }
    return t;
}

}  // namespace dcu
