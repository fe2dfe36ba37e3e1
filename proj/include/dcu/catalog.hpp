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

/// @file catalog.hpp
/// @brief Standard small complexes and combinatorial refinements.

#include <map>
#include <string>
#include <vector>

#include "dcu/complex.hpp"

namespace dcu::catalog
{

/** @brief Letter of a polygon word: label and whether it is traversed inverted */
struct Letter {
    char label;
    bool inverse;
};

enum class PolygonTriangulation { Fan, Cone };

/**
 * @brief Closed surface from a polygon with paired boundary letters.
 *
 * Boundary edge j runs from polygon vertex j to j+1. Each label must appear
 * exactly twice, once inverted. Fan triangulates from vertex 0 (n-2 faces);
 * Cone adds a central vertex (n faces).
 */
inline ComplexPtr polygon_surface(const std::vector<Letter>& word, PolygonTriangulation mode)
{
    const int n = static_cast<int>(word.size());
    if (n < 3) {
        throw Error(Errc::InvalidArgument, "polygon word needs at least 3 letters");
    }
    std::vector<Side> boundary(n);
    std::vector<GluingPair> gluing;
    int faces = 0;
    if (mode == PolygonTriangulation::Fan) {
        faces = n - 2;
        for (int k = 0; k + 1 < faces; ++k) {
            gluing.emplace_back(Side{k, 1}, Side{k + 1, 2});
        }
        boundary[0] = Side{0, 2};
        for (int j = 1; j <= n - 2; ++j) {
            boundary[j] = Side{j - 1, 0};
        }
        boundary[n - 1] = Side{faces - 1, 1};
    } else {
        faces = n;
        for (int k = 0; k < n; ++k) {
            gluing.emplace_back(Side{k, 1}, Side{(k + 1) % n, 2});
            boundary[k] = Side{k, 0};
        }
    }
    std::map<char, std::vector<int>> where;
    for (int j = 0; j < n; ++j) {
        where[word[j].label].push_back(j);
    }
    for (const auto& [label, pos] : where) {
        if (pos.size() != 2 || word[pos[0]].inverse == word[pos[1]].inverse) {
            throw Error(Errc::InvalidArgument,
                        std::string("label '") + label + "' must appear once plain and once inverted");
        }
        gluing.emplace_back(boundary[pos[0]], boundary[pos[1]]);
    }
    return build_complex(faces, gluing);
}

/// Standard genus-2 word a b a^-1 b^-1 c d c^-1 d^-1.
inline std::vector<Letter> genus2_word()
{
    return {{'a', false}, {'b', false}, {'a', true}, {'b', true},
            {'c', false}, {'d', false}, {'c', true}, {'d', true}};
}

inline ComplexPtr tetrahedron()
{
    return from_vertex_triples({{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}});
}

inline ComplexPtr octahedron()
{
    std::vector<std::array<int, 3>> f;
    for (int i = 0; i < 4; ++i) {
        const int a = 1 + i;
        const int b = 1 + (i + 1) % 4;
        f.push_back({0, a, b});
        f.push_back({5, b, a});
    }
    return from_vertex_triples(f);
}

/// Two triangles glued along all three sides (a sphere with V=3).
inline ComplexPtr pillow() { return from_vertex_triples({{0, 1, 2}, {0, 2, 1}}); }

/// Square torus a b a^-1 b^-1 cut by one diagonal: V=1, E=3, F=2.
inline ComplexPtr torus_one_vertex()
{
    return polygon_surface({{'a', false}, {'b', false}, {'a', true}, {'b', true}},
                           PolygonTriangulation::Fan);
}

/// Moebius-Csaszar 7-vertex torus (V=7, E=21, F=14).
inline ComplexPtr torus_seven_vertex()
{
    std::vector<std::array<int, 3>> f;
    for (int i = 0; i < 7; ++i) {
        f.push_back({i, (i + 1) % 7, (i + 3) % 7});
        f.push_back({i, (i + 3) % 7, (i + 2) % 7});
    }
    return from_vertex_triples(f);
}

/// One-vertex genus-2 surface: fan-triangulated octagon (V=1, E=9, F=6).
inline ComplexPtr genus2_fan() { return polygon_surface(genus2_word(), PolygonTriangulation::Fan); }

/// Coned octagon (V=2, E=12, F=8). Admits no Delaunay angle data.
inline ComplexPtr genus2_cone() { return polygon_surface(genus2_word(), PolygonTriangulation::Cone); }

/**
 * @brief 1-to-4 midpoint subdivision.
 *
 * Face f becomes faces 4f+c (corner c, c=0..2) and 4f+3 (center). Corner
 * face c has corners (P_c, m_{c+2}, m_{c+1}), the center face (m_0, m_1, m_2),
 * where m_s is the midpoint of side s.
 */
inline ComplexPtr subdivide4(const Triangulation& t)
{
    std::vector<GluingPair> gluing;
    for (int f = 0; f < t.face_count(); ++f) {
        for (int s = 0; s < 3; ++s) {
            gluing.emplace_back(Side{4 * f + 3, s}, Side{4 * f + s, 0});
        }
    }
    for (int e = 0; e < t.edge_count(); ++e) {
        const auto a = Side::from_id(t.edge_sides(e)[0]);
        const auto b = Side::from_id(t.edge_sides(e)[1]);
        gluing.emplace_back(Side{4 * a.face + (a.index + 1) % 3, 2}, Side{4 * b.face + (b.index + 2) % 3, 1});
        gluing.emplace_back(Side{4 * a.face + (a.index + 2) % 3, 1}, Side{4 * b.face + (b.index + 1) % 3, 2});
    }
    return build_complex(4 * t.face_count(), gluing);
}

/**
 * @brief Insert a vertex in face f (1-to-3 split).
 *
 * The piece on original side s is (C, P_{s+1}, P_{s+2}) with the original side
 * as local side 0. Piece 0 keeps index f; pieces 1 and 2 are appended.
 */
inline ComplexPtr stellar(const Triangulation& t, int f)
{
    const int n = t.face_count();
    auto piece = [&](int s) { return s == 0 ? f : n + s - 1; };
    auto map_side = [&](int id) {
        const auto s = Side::from_id(id);
        return s.face == f ? Side{piece(s.index), 0} : s;
    };
    std::vector<GluingPair> gluing;
    for (int e = 0; e < t.edge_count(); ++e) {
        gluing.emplace_back(map_side(t.edge_sides(e)[0]), map_side(t.edge_sides(e)[1]));
    }
    for (int s = 0; s < 3; ++s) {
        gluing.emplace_back(Side{piece(s), 1}, Side{piece((s + 1) % 3), 2});
    }
    return build_complex(n + 2, gluing);
}

/**
 * @brief Flip edge e inside the quadrilateral formed by its two faces.
 *
 * Requires the two sides of e to lie in distinct faces.
 */
inline ComplexPtr flip(const Triangulation& t, int e)
{
    const auto a = Side::from_id(t.edge_sides(e)[0]);
    const auto b = Side::from_id(t.edge_sides(e)[1]);
    if (a.face == b.face) {
        throw Error(Errc::InvalidArgument, "cannot flip an edge glued within one face");
    }
    const int f = a.face, s = a.index, g = b.face, u = b.index;
    // New f = (P_s, P_{s+1}, Q_u), new g = (Q_u, P_{s+2}, P_s).
    std::map<int, Side> remap;
    remap[Side{g, (u + 1) % 3}.id()] = Side{f, 0};
    remap[Side{f, (s + 2) % 3}.id()] = Side{f, 2};
    remap[Side{f, (s + 1) % 3}.id()] = Side{g, 0};
    remap[Side{g, (u + 2) % 3}.id()] = Side{g, 2};
    auto map_side = [&](int id) {
        auto it = remap.find(id);
        return it == remap.end() ? Side::from_id(id) : it->second;
    };
    std::vector<GluingPair> gluing;
    for (int k = 0; k < t.edge_count(); ++k) {
        if (k == e) continue;
        gluing.emplace_back(map_side(t.edge_sides(k)[0]), map_side(t.edge_sides(k)[1]));
    }
    gluing.emplace_back(Side{f, 1}, Side{g, 1});
    return build_complex(t.face_count(), gluing);
}

/**
 * @brief Genus-2 complexes with F = 6 + 2k faces, k = 0..3.
 *
 * Starting from genus2_fan(), each step inserts a vertex into one face and
 * flips the surrounding original edges, raising the new vertex to degree 6.
 */
inline ComplexPtr genus2_small(int k)
{
    if (k < 0 || k > 3) {
        throw Error(Errc::InvalidArgument, "genus2_small supports k in 0..3");
    }
    auto t = genus2_fan();
    for (int step = 0; step < k; ++step) {
        const int f = step;
        const int n = t->face_count();
        t = stellar(*t, f);
        for (int s = 0; s < 3; ++s) {
            const int piece = s == 0 ? f : n + s - 1;
            const int e = t->edge_of(Side{piece, 0}.id());
            const auto sides = t->edge_sides(e);
            if (Side::from_id(sides[0]).face != Side::from_id(sides[1]).face) {
                t = flip(*t, e);
            }
        }
    }
    return t;
}

/// Genus-2 complex with F=24, V=10: midpoint subdivision of genus2_fan().
inline ComplexPtr genus2_f24() { return subdivide4(*genus2_fan()); }

/// Named lookup used by the command line front end.
inline ComplexPtr by_name(const std::string& name)
{
    if (name == "tetrahedron") return tetrahedron();
    if (name == "octahedron") return octahedron();
    if (name == "pillow") return pillow();
    if (name == "torus1") return torus_one_vertex();
    if (name == "torus7") return torus_seven_vertex();
    if (name == "genus2-fan") return genus2_fan();
    if (name == "genus2-cone") return genus2_cone();
    if (name == "genus2-f24") return genus2_f24();
    for (int k = 0; k <= 3; ++k) {
        if (name == "genus2-small-" + std::to_string(k)) return genus2_small(k);
    }
    throw Error(Errc::InvalidArgument, "unknown complex '" + name + "'");
}

inline std::vector<std::string> names()
{
    return {"tetrahedron", "octahedron",    "pillow",        "torus1",        "torus7",
            "genus2-fan",  "genus2-cone",   "genus2-f24",    "genus2-small-0", "genus2-small-1",
            "genus2-small-2", "genus2-small-3"};
}

}  // namespace dcu::catalog
