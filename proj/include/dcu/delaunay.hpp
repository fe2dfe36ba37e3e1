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
 * @file delaunay.hpp
 * @brief Geodesic Delaunay triangulations of samples on the sphere (convex
 * hull) and the flat torus (Bowyer-Watson on a 3x3 tiling).
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "dcu/surface.hpp"

namespace dcu
{

/// Relative tolerance for cocircular and coplanar configurations.
inline constexpr double kDegeneracyTol = 1e-10;

/** @brief Delaunay faces of a sample with their circumdisks */
struct DelaunayComplex {
    SurfaceModel surface;
    int vertex_count{0};
    std::vector<std::array<int, 3>> faces;  ///< counterclockwise
    std::vector<Disk> disks;
    std::vector<std::array<int, 3>> neighbors;  ///< neighbors[f][i] is across the edge opposite vertex i

    [[nodiscard]] int face_count() const { return static_cast<int>(faces.size()); }
    [[nodiscard]] int edge_count() const { return 3 * face_count() / 2; }
    [[nodiscard]] int euler_characteristic() const { return vertex_count - edge_count() + face_count(); }
};

namespace detail
{

struct HullFace {
    std::array<int, 3> v{};
    std::array<int, 3> n{};
    bool alive{true};
};

inline double orient3(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p)
{
    return dot(cross(b - a, c - a), p - a);
}

inline double orient3_scale(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p)
{
    return norm(b - a) * norm(c - a) * norm(p - a);
}

/// Fill neighbor links from shared directed edges; throws on a broken surface.
inline void link_faces(std::vector<HullFace>& faces, const std::vector<int>& ids)
{
    std::map<std::pair<int, int>, std::pair<int, int>> edge;
    for (int f : ids) {
        for (int i = 0; i < 3; ++i) edge[{faces[f].v[(i + 1) % 3], faces[f].v[(i + 2) % 3]}] = {f, i};
    }
    for (int f : ids) {
        for (int i = 0; i < 3; ++i) {
            auto it = edge.find({faces[f].v[(i + 2) % 3], faces[f].v[(i + 1) % 3]});
            if (it == edge.end()) throw Error(Errc::DegenerateSample, "hull is not closed");
            faces[f].n[i] = it->second.first;
        }
    }
}

}  // namespace detail

/**
 * @brief Spherical Delaunay triangulation as the convex hull of unit vectors.
 *
 * Incremental insertion in sample order. Throws DegenerateSample for fewer
 * than four points or a (near) coplanar point-face configuration.
 */
inline DelaunayComplex delaunay_sphere(const std::vector<Vec3>& pts)
{
    const int n = static_cast<int>(pts.size());
    if (n < 4) throw Error(Errc::DegenerateSample, "need at least 4 points, got " + std::to_string(n));
    std::vector<detail::HullFace> faces;
    std::vector<int> free_list;
    auto check = [&](const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p) {
        const double o = detail::orient3(a, b, c, p);
        if (std::abs(o) <= kDegeneracyTol * detail::orient3_scale(a, b, c, p)) {
            throw Error(Errc::DegenerateSample, "four points are (nearly) cocircular");
        }
        return o;
    };

    int i1 = 1, i2 = 2, i3 = 3;
    const double o = check(pts[0], pts[i1], pts[i2], pts[i3]);
    if (o > 0) std::swap(i1, i2);
    for (const auto& v : std::vector<std::array<int, 3>>{{0, i1, i2}, {0, i3, i1}, {i1, i3, i2}, {0, i2, i3}}) {
        faces.push_back({v, {-1, -1, -1}, true});
    }
    detail::link_faces(faces, {0, 1, 2, 3});

    const Vec3 origin{0, 0, 0};
    auto contains_origin = [&]() {
        for (const auto& f : faces) {
            if (f.alive && detail::orient3(pts[f.v[0]], pts[f.v[1]], pts[f.v[2]], origin) >= 0) return false;
        }
        return true;
    };
    bool inside = contains_origin();
    int last = 0;
    std::vector<char> visible;
    std::vector<int> stack, vis_list, start_of(n, -1), end_of(n, -1);

    for (int pi = 4; pi < n; ++pi) {
        const Vec3& p = pts[pi];
        int seed = -1;
        if (inside) {
            int f = last;
            for (int steps = 0; steps < 4 * static_cast<int>(faces.size()) + 8; ++steps) {
                const auto& hf = faces[f];
                int next = -1;
                for (int i = 0; i < 3; ++i) {
                    if (dot(cross(pts[hf.v[(i + 1) % 3]], pts[hf.v[(i + 2) % 3]]), p) < 0) {
                        next = hf.n[i];
                        break;
                    }
                }
                if (next < 0) {
                    seed = f;
                    break;
                }
                f = next;
            }
        }
        if (seed < 0 || check(pts[faces[seed].v[0]], pts[faces[seed].v[1]], pts[faces[seed].v[2]], p) <= 0) {
            double best = 0.0;
            seed = -1;
            for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
                if (!faces[f].alive) continue;
                const auto& v = faces[f].v;
                const double ov = detail::orient3(pts[v[0]], pts[v[1]], pts[v[2]], p);
                if (ov > best) {
                    best = ov;
                    seed = f;
                }
            }
            if (seed < 0) throw Error(Errc::DegenerateSample, "point " + std::to_string(pi) + " lies inside the hull");
        }

        visible.resize(faces.size(), 0);
        vis_list.clear();
        stack.assign(1, seed);
        visible[seed] = 1;
        while (!stack.empty()) {
            const int f = stack.back();
            stack.pop_back();
            vis_list.push_back(f);
            for (int i = 0; i < 3; ++i) {
                const int g = faces[f].n[i];
                if (visible[g]) continue;
                const auto& v = faces[g].v;
                if (check(pts[v[0]], pts[v[1]], pts[v[2]], p) > 0) {
                    visible[g] = 1;
                    stack.push_back(g);
                }
            }
        }

        std::vector<int> created;
        for (int f : vis_list) {
            for (int i = 0; i < 3; ++i) {
                const int g = faces[f].n[i];
                if (visible[g]) continue;
                const int a = faces[f].v[(i + 1) % 3], b = faces[f].v[(i + 2) % 3];
                int id;
                if (!free_list.empty()) {
                    id = free_list.back();
                    free_list.pop_back();
                    faces[id] = {{a, b, pi}, {-1, -1, g}, true};
                } else {
                    id = static_cast<int>(faces.size());
                    faces.push_back({{a, b, pi}, {-1, -1, g}, true});
                    visible.push_back(0);
                }
                for (int k = 0; k < 3; ++k) {
                    if (faces[g].n[k] == f) faces[g].n[k] = id;
                }
                start_of[a] = id;
                end_of[b] = id;
                created.push_back(id);
            }
        }
        for (int id : created) {
            const int a = faces[id].v[0], b = faces[id].v[1];
            faces[id].n[0] = start_of[b];  // across (b, p)
            faces[id].n[1] = end_of[a];    // across (p, a)
        }
        for (int id : created) {
            start_of[faces[id].v[0]] = -1;
            end_of[faces[id].v[1]] = -1;
        }
        for (int f : vis_list) {
            faces[f].alive = false;
            visible[f] = 0;
            free_list.push_back(f);
        }
        last = created.front();
        if (!inside) inside = contains_origin();
    }

    DelaunayComplex out;
    out.surface = SurfaceModel::sphere();
    out.vertex_count = n;
    std::vector<int> index(faces.size(), -1);
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        if (!faces[f].alive) continue;
        index[f] = static_cast<int>(out.faces.size());
        out.faces.push_back(faces[f].v);
        const auto& v = faces[f].v;
        Vec3 c = cross(pts[v[1]] - pts[v[0]], pts[v[2]] - pts[v[0]]);
        c = (1 / norm(c)) * c;
        const double r = std::atan2(norm(cross(c, pts[v[0]])), dot(c, pts[v[0]]));
        out.disks.push_back({c, r, out.surface.disk_area(r)});
    }
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        if (!faces[f].alive) continue;
        std::array<int, 3> nb{};
        for (int i = 0; i < 3; ++i) nb[i] = index[faces[f].n[i]];
        out.neighbors.push_back(nb);
    }
    return out;
}

namespace detail
{

struct Tri2 {
    std::array<int, 3> v{};
    std::array<int, 3> n{-1, -1, -1};
    double cx{0}, cy{0}, r2{0};
    bool alive{true};
};

inline double orient2(const Vec3& a, const Vec3& b, const Vec3& c)
{
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

inline void set_circle(Tri2& t, const std::vector<Vec3>& p)
{
    const Vec3& a = p[t.v[0]];
    const double ux = p[t.v[1]][0] - a[0], uy = p[t.v[1]][1] - a[1];
    const double vx = p[t.v[2]][0] - a[0], vy = p[t.v[2]][1] - a[1];
    const double d = 2 * (ux * vy - uy * vx);
    const double uu = ux * ux + uy * uy, vv = vx * vx + vy * vy;
    const double x = (vy * uu - uy * vv) / d, y = (ux * vv - vx * uu) / d;
    t.cx = a[0] + x;
    t.cy = a[1] + y;
    t.r2 = x * x + y * y;
}

}  // namespace detail

/**
 * @brief Periodic Delaunay triangulation of a torus sample.
 *
 * Builds the planar Delaunay triangulation of the 3x3 tiled point set and keeps
 * the triangles whose circumcenter lies in the fundamental domain. Throws
 * DegenerateSample for cocircular quadruples, a circumradius reaching
 * min(a,b)/2, or a failed Euler count.
 */
inline DelaunayComplex delaunay_torus(const SurfaceModel& s, const std::vector<Vec3>& base)
{
    const int n = static_cast<int>(base.size());
    if (n < 1) throw Error(Errc::DegenerateSample, "empty sample");
    std::vector<Vec3> pts;
    pts.reserve(9 * n + 3);
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            for (const auto& p : base) pts.push_back({p[0] + dx * s.a, p[1] + dy * s.b, 0.0});
        }
    }
    const int m = static_cast<int>(pts.size());
    const double span = 3 * std::max(s.a, s.b);
    const double cx = s.a / 2, cy = s.b / 2;
    pts.push_back({cx - 40 * span, cy - 40 * span, 0});
    pts.push_back({cx + 40 * span, cy - 40 * span, 0});
    pts.push_back({cx, cy + 40 * span, 0});

    // Snake order over a grid of cells for short walks.
    const int cells = std::max(1, static_cast<int>(std::sqrt(m / 4.0)));
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    auto cell = [&](int i) {
        const double fx = (pts[i][0] + s.a) / (3 * s.a), fy = (pts[i][1] + s.b) / (3 * s.b);
        const int gx = std::clamp(static_cast<int>(fx * cells), 0, cells - 1);
        const int gy = std::clamp(static_cast<int>(fy * cells), 0, cells - 1);
        return std::pair<int, int>{gy, gy % 2 ? cells - 1 - gx : gx};
    };
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return cell(i) < cell(j); });

    std::vector<detail::Tri2> tris;
    std::vector<int> free_list;
    tris.push_back({{m, m + 1, m + 2}, {-1, -1, -1}});
    detail::set_circle(tris[0], pts);
    int last = 0;
    std::vector<char> in_cavity;
    std::vector<int> stack, cavity, start_of(m + 3, -1), end_of(m + 3, -1);

    for (int pi : order) {
        const Vec3& p = pts[pi];
        int t = last;
        for (int steps = 0;; ++steps) {
            if (steps > 4 * static_cast<int>(tris.size()) + 16) throw Error(Errc::DegenerateSample, "point location failed");
            int next = -1;
            for (int k = 0; k < 3; ++k) {
                const int i = (k + steps) % 3;
                const auto& v = tris[t].v;
                if (detail::orient2(pts[v[(i + 1) % 3]], pts[v[(i + 2) % 3]], p) < 0) {
                    next = tris[t].n[i];
                    break;
                }
            }
            if (next < 0) break;
            t = next;
        }

        auto inside_circle = [&](int k) {
            const auto& tr = tris[k];
            const double dx = p[0] - tr.cx, dy = p[1] - tr.cy;
            const double d2 = dx * dx + dy * dy;
            if (std::abs(d2 - tr.r2) <= kDegeneracyTol * tr.r2) {
                throw Error(Errc::DegenerateSample, "four points are (nearly) cocircular");
            }
            return d2 < tr.r2;
        };

        in_cavity.resize(tris.size(), 0);
        cavity.clear();
        stack.assign(1, t);
        in_cavity[t] = 1;
        while (!stack.empty()) {
            const int k = stack.back();
            stack.pop_back();
            cavity.push_back(k);
            for (int i = 0; i < 3; ++i) {
                const int g = tris[k].n[i];
                if (g < 0 || in_cavity[g]) continue;
                if (inside_circle(g)) {
                    in_cavity[g] = 1;
                    stack.push_back(g);
                }
            }
        }

        std::vector<int> created;
        for (int k : cavity) {
            for (int i = 0; i < 3; ++i) {
                const int g = tris[k].n[i];
                if (g >= 0 && in_cavity[g]) continue;
                const int a = tris[k].v[(i + 1) % 3], b = tris[k].v[(i + 2) % 3];
                detail::Tri2 nt{{a, b, pi}, {-1, -1, g}};
                detail::set_circle(nt, pts);
                int id;
                if (!free_list.empty()) {
                    id = free_list.back();
                    free_list.pop_back();
                    tris[id] = nt;
                } else {
                    id = static_cast<int>(tris.size());
                    tris.push_back(nt);
                    in_cavity.push_back(0);
                }
                if (g >= 0) {
                    for (int q = 0; q < 3; ++q) {
                        if (tris[g].n[q] == k) tris[g].n[q] = id;
                    }
                }
                start_of[a] = id;
                end_of[b] = id;
                created.push_back(id);
            }
        }
        for (int id : created) {
            const int a = tris[id].v[0], b = tris[id].v[1];
            tris[id].n[0] = start_of[b];
            tris[id].n[1] = end_of[a];
        }
        for (int id : created) {
            start_of[tris[id].v[0]] = -1;
            end_of[tris[id].v[1]] = -1;
        }
        for (int k : cavity) {
            tris[k].alive = false;
            in_cavity[k] = 0;
            free_list.push_back(k);
        }
        last = created.front();
    }

    DelaunayComplex out;
    out.surface = s;
    out.vertex_count = n;
    const double rmax = std::min(s.a, s.b) / 2;
    // Each periodic face is identified by its vertex classes and its
    // circumcenter lying in [0,a) x [0,b).
    std::map<std::array<int, 3>, int> by_key;
    std::vector<std::array<Vec3, 3>> lifted;
    for (const auto& tr : tris) {
        if (!tr.alive || tr.v[0] >= m || tr.v[1] >= m || tr.v[2] >= m) continue;
        if (!(tr.cx >= 0 && tr.cx < s.a && tr.cy >= 0 && tr.cy < s.b)) continue;
        const double r = std::sqrt(tr.r2);
        if (r >= rmax) throw Error(Errc::DegenerateSample, "circumradius reaches half the torus width");
        out.faces.push_back({tr.v[0] % n, tr.v[1] % n, tr.v[2] % n});
        out.disks.push_back({{tr.cx, tr.cy, 0.0}, r, s.disk_area(r)});
    }
    if (out.face_count() != 2 * n) {
        throw Error(Errc::DegenerateSample, "periodic triangulation has " + std::to_string(out.face_count()) +
                                                " faces for " + std::to_string(n) + " points");
    }
    // Neighbors through directed vertex-class edges, disambiguated by disk centers.
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edge;
    for (int f = 0; f < out.face_count(); ++f) {
        for (int i = 0; i < 3; ++i) edge[{out.faces[f][(i + 1) % 3], out.faces[f][(i + 2) % 3]}].push_back({f, i});
    }
    out.neighbors.assign(out.face_count(), {-1, -1, -1});
    for (int f = 0; f < out.face_count(); ++f) {
        for (int i = 0; i < 3; ++i) {
            auto it = edge.find({out.faces[f][(i + 2) % 3], out.faces[f][(i + 1) % 3]});
            if (it == edge.end()) throw Error(Errc::DegenerateSample, "periodic triangulation is not closed");
            if (it->second.size() == 1) {
                out.neighbors[f][i] = it->second.front().first;
                continue;
            }
            // Several faces share the vertex classes: pick the one whose disk
            // passes through both endpoints at the same lift.
            const auto& pa = base[out.faces[f][(i + 1) % 3]];
            const auto& pb = base[out.faces[f][(i + 2) % 3]];
            const auto dab = s.offset(pa, pb);
            double best = std::numeric_limits<double>::infinity();
            for (const auto& [g, j] : it->second) {
                const auto& dg = out.disks[g];
                const auto da = s.offset(dg.center, pa);
                const double bx = da[0] + dab[0], by = da[1] + dab[1];
                const double err = std::abs(std::hypot(da[0], da[1]) - dg.radius) + std::abs(std::hypot(bx, by) - dg.radius);
                if (err < best) {
                    best = err;
                    out.neighbors[f][i] = g;
                }
            }
        }
    }
    return out;
}

/// Delaunay triangulation of a sample on its surface.
inline DelaunayComplex delaunay(const PointSample& sample)
{
    return sample.surface.is_sphere() ? delaunay_sphere(sample.points) : delaunay_torus(sample.surface, sample.points);
}

/// Opposite vertices of neighboring faces lie outside each circumdisk.
inline bool verify_locally_empty(const DelaunayComplex& dc, const std::vector<Vec3>& pts, double tol = 1e-9)
{
    for (int f = 0; f < dc.face_count(); ++f) {
        for (int i = 0; i < 3; ++i) {
            const int g = dc.neighbors[f][i];
            if (g < 0) return false;
            for (int v : dc.faces[g]) {
                if (v == dc.faces[f][0] || v == dc.faces[f][1] || v == dc.faces[f][2]) continue;
                if (dc.surface.distance(dc.disks[f].center, pts[v]) < dc.disks[f].radius * (1 - tol)) return false;
            }
        }
    }
    return true;
}

/// Exhaustive check: no sample point strictly inside any circumdisk.
inline bool verify_empty_disks(const DelaunayComplex& dc, const std::vector<Vec3>& pts, double tol = 1e-9)
{
    for (int f = 0; f < dc.face_count(); ++f) {
        const auto& d = dc.disks[f];
        for (int v = 0; v < static_cast<int>(pts.size()); ++v) {
            if (v == dc.faces[f][0] || v == dc.faces[f][1] || v == dc.faces[f][2]) continue;
            if (dc.surface.distance(d.center, pts[v]) < d.radius * (1 - tol)) return false;
        }
    }
    return true;
}

inline bool verify_empty_disks(const DelaunayComplex& dc, const PointSample& sample, double tol = 1e-9)
{
    return verify_empty_disks(dc, sample.points, tol);
}

}  // namespace dcu
