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
 * @file angles.hpp
 * @brief Partial-angle coordinates, angle-system predicates, conformal classes
 * and teleportability.
 *
 * An angle system stores one partial angle per side (flat side id 3f+s). The
 * corner angle opposite side i is the sum of the partials on the other two
 * sides of the face. The class direction C^e is +1 on the lower side of e and
 * -1 on the upper side.
 */

#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "dcu/complex.hpp"
#include "dcu/lp.hpp"

namespace dcu
{

inline constexpr double kPi = std::numbers::pi;

/** @brief Partial angles per side of a complex */
struct AngleSystem {
    ComplexPtr complex;
    std::vector<double> psi;

    [[nodiscard]] double partial(int face, int side) const { return psi.at(3 * face + side); }
};

/** @brief Target informal intersection angle per edge */
struct ConformalClassSpec {
    ComplexPtr complex;
    std::vector<double> psi;
};

/** @brief Generic pass/fail report with human-readable violations */
struct Report {
    bool ok{true};
    double worst_margin{0.0};
    std::vector<std::string> violations;

    void fail(std::string what)
    {
        ok = false;
        violations.push_back(std::move(what));
    }
};

inline void require_same_complex(const ComplexPtr& a, const ComplexPtr& b)
{
    if (!a || !b || !(a == b || *a == *b)) {
        throw Error(Errc::ComplexMismatch, "objects refer to different complexes");
    }
}

/// Corner angles (A_0, A_1, A_2) of face t; A_i is opposite side i.
inline std::array<double, 3> corner_angles(const AngleSystem& x, int t)
{
    const double p0 = x.partial(t, 0), p1 = x.partial(t, 1), p2 = x.partial(t, 2);
    return {p1 + p2, p0 + p2, p0 + p1};
}

inline std::array<double, 3> partials_of(const std::array<double, 3>& angles)
{
    const auto& [a, b, c] = angles;
    return {(b + c - a) / 2, (a + c - b) / 2, (a + b - c) / 2};
}

inline AngleSystem partials_from_angles(const ComplexPtr& t, const std::vector<std::array<double, 3>>& angles)
{
    if (static_cast<int>(angles.size()) != t->face_count()) {
        throw Error(Errc::InvalidArgument, "need one angle triple per face");
    }
    AngleSystem x{t, std::vector<double>(t->side_count())};
    for (int f = 0; f < t->face_count(); ++f) {
        const auto p = partials_of(angles[f]);
        for (int s = 0; s < 3; ++s) x.psi[3 * f + s] = p[s];
    }
    return x;
}

inline double face_angle_sum(const AngleSystem& x, int t)
{
    return 2 * (x.partial(t, 0) + x.partial(t, 1) + x.partial(t, 2));
}

/// Sum of corner angles at every vertex.
inline std::vector<double> vertex_angle_sums(const AngleSystem& x)
{
    const auto& t = *x.complex;
    std::vector<double> sums(t.vertex_count(), 0.0);
    for (int f = 0; f < t.face_count(); ++f) {
        const auto a = corner_angles(x, f);
        for (int c = 0; c < 3; ++c) sums[t.corner_vertex(f, c)] += a[c];
    }
    return sums;
}

/// Corner angles in (0, pi) and vertex sums equal to 2 pi, within `tol`.
inline Report is_angle_system(const AngleSystem& x, double tol = 1e-9)
{
    const auto& t = *x.complex;
    Report r;
    if (static_cast<int>(x.psi.size()) != t.side_count()) {
        r.fail("expected " + std::to_string(t.side_count()) + " partials, got " + std::to_string(x.psi.size()));
        return r;
    }
    double worst = kPi;
    for (int f = 0; f < t.face_count(); ++f) {
        const auto a = corner_angles(x, f);
        for (int c = 0; c < 3; ++c) {
            const double m = std::min(a[c], kPi - a[c]);
            worst = std::min(worst, m);
            if (m <= tol) {
                r.fail("corner (" + std::to_string(f) + "," + std::to_string(c) + ") angle " + std::to_string(a[c]) +
                       " outside (0,pi)");
            }
        }
    }
    const auto sums = vertex_angle_sums(x);
    for (int v = 0; v < t.vertex_count(); ++v) {
        const double d = std::abs(sums[v] - 2 * kPi);
        worst = std::min(worst, -d);
        if (d > tol) {
            r.fail("vertex " + std::to_string(v) + " angle sum off by " + std::to_string(sums[v] - 2 * kPi));
        }
    }
    r.worst_margin = worst;
    return r;
}

inline double informal_intersection_angle(const AngleSystem& x, int e)
{
    const auto& s = x.complex->edge_sides(e);
    return x.psi.at(s[0]) + x.psi.at(s[1]);
}

/// Every informal intersection angle in (0, pi).
inline Report is_delaunay(const AngleSystem& x, double tol = 1e-9)
{
    Report r;
    double worst = kPi;
    for (int e = 0; e < x.complex->edge_count(); ++e) {
        const double p = informal_intersection_angle(x, e);
        const double m = std::min(p, kPi - p);
        worst = std::min(worst, m);
        if (m <= tol) r.fail("edge " + std::to_string(e) + " psi " + std::to_string(p) + " outside (0,pi)");
    }
    r.worst_margin = worst;
    return r;
}

/// Angle sum minus pi.
inline double face_curvature(const AngleSystem& x, int t) { return face_angle_sum(x, t) - kPi; }

inline Report is_negatively_curved(const AngleSystem& x, double tol = 1e-9)
{
    Report r;
    double worst = kPi;
    for (int f = 0; f < x.complex->face_count(); ++f) {
        const double k = face_curvature(x, f);
        worst = std::min(worst, -k);
        if (k >= -tol) r.fail("face " + std::to_string(f) + " curvature " + std::to_string(k));
    }
    r.worst_margin = worst;
    return r;
}

inline ConformalClassSpec conformal_class_of(const AngleSystem& x)
{
    ConformalClassSpec s{x.complex, std::vector<double>(x.complex->edge_count())};
    for (int e = 0; e < x.complex->edge_count(); ++e) s.psi[e] = informal_intersection_angle(x, e);
    return s;
}

inline bool same_class(const AngleSystem& x, const AngleSystem& y, double tol = 1e-12)
{
    require_same_complex(x.complex, y.complex);
    for (int e = 0; e < x.complex->edge_count(); ++e) {
        if (std::abs(informal_intersection_angle(x, e) - informal_intersection_angle(y, e)) > tol) return false;
    }
    return true;
}

/// Dense C^e vectors over sides, one per edge.
inline std::vector<std::vector<double>> class_basis(const Triangulation& t)
{
    std::vector<std::vector<double>> out(t.edge_count(), std::vector<double>(t.side_count(), 0.0));
    for (int e = 0; e < t.edge_count(); ++e) {
        out[e][t.edge_sides(e)[0]] = 1.0;
        out[e][t.edge_sides(e)[1]] = -1.0;
    }
    return out;
}

/// x + sum_e c_e C^e.
inline AngleSystem move_in_class(const AngleSystem& x, const std::vector<double>& c)
{
    AngleSystem y = x;
    for (int e = 0; e < x.complex->edge_count(); ++e) {
        const auto& s = x.complex->edge_sides(e);
        y.psi[s[0]] += c[e];
        y.psi[s[1]] -= c[e];
    }
    return y;
}

/// Per-vertex sums of psi^e over the edge star (loops counted twice).
inline std::vector<double> spec_vertex_sums(const ConformalClassSpec& spec)
{
    const auto& t = *spec.complex;
    std::vector<double> sums(t.vertex_count(), 0.0);
    for (int e = 0; e < t.edge_count(); ++e) {
        const auto ends = t.edge_endpoints(e);
        sums[ends[0]] += spec.psi[e];
        sums[ends[1]] += spec.psi[e];
    }
    return sums;
}

/// psi^e in (0, pi) and star sums equal to 2 pi.
inline Report check_spec(const ConformalClassSpec& spec, double tol = 1e-9)
{
    Report r;
    const auto& t = *spec.complex;
    if (static_cast<int>(spec.psi.size()) != t.edge_count()) {
        r.fail("expected " + std::to_string(t.edge_count()) + " edge values, got " + std::to_string(spec.psi.size()));
        return r;
    }
    for (int e = 0; e < t.edge_count(); ++e) {
        if (!(spec.psi[e] > tol && spec.psi[e] < kPi - tol)) {
            r.fail("edge " + std::to_string(e) + " psi " + std::to_string(spec.psi[e]) + " outside (0,pi)");
        }
    }
    const auto sums = spec_vertex_sums(spec);
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (std::abs(sums[v] - 2 * kPi) > tol) {
            r.fail("vertex " + std::to_string(v) + " star sum off by " + std::to_string(sums[v] - 2 * kPi));
        }
    }
    return r;
}

/** @brief Result of the subset enumeration */
struct TeleportReport {
    bool teleportable{true};
    std::vector<int> violating_faces;  ///< first violating set, if any
    double worst_slack{0.0};           ///< min over S of lhs - pi|S|
};

/**
 * @brief Check sum_{e in S} (pi - psi^e) > pi |S| for every nonempty face set S.
 *
 * An edge is in S when it touches at least one face of S; each such edge is
 * counted once. Limited to 20 faces.
 */
inline TeleportReport is_teleportable_bruteforce(const ConformalClassSpec& spec, double tol = 1e-12)
{
    const auto& t = *spec.complex;
    const int n = t.face_count();
    if (n > 20) throw Error(Errc::TooLarge, "subset enumeration limited to 20 faces, got " + std::to_string(n));
    std::vector<unsigned> edge_mask(t.edge_count(), 0u);
    for (int e = 0; e < t.edge_count(); ++e) {
        for (int s : t.edge_sides(e)) edge_mask[e] |= 1u << Side::from_id(s).face;
    }
    TeleportReport rep;
    rep.worst_slack = std::numeric_limits<double>::infinity();
    const unsigned full = n == 32 ? ~0u : (1u << n) - 1u;
    for (unsigned S = 1; S <= full; ++S) {
        double lhs = 0.0;
        for (int e = 0; e < t.edge_count(); ++e) {
            if (edge_mask[e] & S) lhs += kPi - spec.psi[e];
        }
        const double slack = lhs - kPi * std::popcount(S);
        if (slack < rep.worst_slack) rep.worst_slack = slack;
        if (slack <= tol && rep.teleportable) {
            rep.teleportable = false;
            for (int f = 0; f < n; ++f) {
                if (S & (1u << f)) rep.violating_faces.push_back(f);
            }
        }
        if (S == full) break;
    }
    return rep;
}

inline TeleportReport is_teleportable_bruteforce(const AngleSystem& x, double tol = 1e-12)
{
    return is_teleportable_bruteforce(conformal_class_of(x), tol);
}

/** @brief Interior point of the negatively curved Delaunay slice of a class */
struct NegativeDelaunayResult {
    AngleSystem system;
    double margin{0.0};
};

/// Margin below which the slice is declared empty.
inline constexpr double kTeleportMarginFloor = 1e-6;

/**
 * @brief Maximize eps over partials with psi^e_s + psi^e_t = psi^e, corner
 * angles in [eps, pi - eps] and face angle sums at most pi - eps.
 *
 * Throws Infeasible when the optimal eps is below kTeleportMarginFloor.
 */
inline NegativeDelaunayResult find_negative_delaunay(const ConformalClassSpec& spec)
{
    const auto rep = check_spec(spec);
    if (!rep.ok) throw Error(Errc::InvalidSpec, rep.violations.front());
    const auto& t = *spec.complex;
    const int E = t.edge_count();
    // Partial on side s = psi^e/2 + sign(s) c_e with c_e = u_e - pi, u_e in [0, 2 pi];
    // eps = w - L with w >= 0.
    const double L = 10 * kPi;
    const int n = E + 1;
    lp::Problem p;
    p.c.assign(n, 0.0);
    p.c[E] = 1.0;
    auto half = [&](int side) { return spec.psi[t.edge_of(side)] / 2; };
    auto add_row = [&](std::vector<double> row, double rhs) {
        p.a_le.push_back(std::move(row));
        p.b_le.push_back(rhs);
    };
    for (int f = 0; f < t.face_count(); ++f) {
        for (int c = 0; c < 3; ++c) {
            const int sj = 3 * f + (c + 1) % 3;
            const int sk = 3 * f + (c + 2) % 3;
            // angle = const + sum sign*c_e = const - pi*sum sign + sum sign*u_e
            std::vector<double> coef(n, 0.0);
            double konst = half(sj) + half(sk);
            for (int s : {sj, sk}) {
                coef[t.edge_of(s)] += t.side_sign(s);
                konst -= kPi * t.side_sign(s);
            }
            // angle >= eps  ->  -coef.u + w <= konst + L
            std::vector<double> lo(n, 0.0);
            for (int j = 0; j < E; ++j) lo[j] = -coef[j];
            lo[E] = 1.0;
            add_row(lo, konst + L);
            // angle <= pi - eps  ->  coef.u + w <= pi - konst + L
            std::vector<double> hi = coef;
            hi[E] = 1.0;
            add_row(hi, kPi - konst + L);
        }
        std::vector<double> coef(n, 0.0);
        double konst = 0.0;
        for (int s = 3 * f; s < 3 * f + 3; ++s) {
            coef[t.edge_of(s)] += 2.0 * t.side_sign(s);
            konst += 2 * (half(s) - kPi * t.side_sign(s));
        }
        coef[E] = 1.0;
        add_row(coef, kPi - konst + L);
    }
    for (int e = 0; e < E; ++e) {
        std::vector<double> row(n, 0.0);
        row[e] = 1.0;
        add_row(row, 2 * kPi);
    }
    const auto sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal) {
        throw Error(Errc::Infeasible, "margin program did not reach an optimum");
    }
    const double margin = sol.x[E] - L;
    if (margin < kTeleportMarginFloor) {
        throw Error(Errc::Infeasible, "class is not teleportable: best margin " + std::to_string(margin));
    }
    AngleSystem y{spec.complex, std::vector<double>(t.side_count())};
    for (int s = 0; s < t.side_count(); ++s) {
        const int e = t.edge_of(s);
        y.psi[s] = spec.psi[e] / 2 + t.side_sign(s) * (sol.x[e] - kPi);
    }
    return {std::move(y), margin};
}

/**
 * @brief Delaunay spec maximizing min(psi^e, pi - psi^e).
 *
 * Returns the spec and its margin; the margin is zero when no Delaunay spec
 * exists with positive margin. Throws Infeasible when even the closed set is empty.
 */
inline std::pair<ConformalClassSpec, double> central_spec(const ComplexPtr& t)
{
    const int E = t->edge_count();
    lp::Problem p;
    p.c.assign(E + 1, 0.0);
    p.c[E] = 1.0;
    for (int e = 0; e < E; ++e) {
        std::vector<double> lo(E + 1, 0.0), hi(E + 1, 0.0);
        lo[e] = -1.0;
        lo[E] = 1.0;
        p.a_le.push_back(lo);
        p.b_le.push_back(0.0);
        hi[e] = 1.0;
        hi[E] = 1.0;
        p.a_le.push_back(hi);
        p.b_le.push_back(kPi);
    }
    for (int v = 0; v < t->vertex_count(); ++v) {
        std::vector<double> row(E + 1, 0.0);
        for (int e : vertex_edge_incidence(*t, v)) row[e] += 1.0;
        p.a_eq.push_back(row);
        p.b_eq.push_back(2 * kPi);
    }
    const auto sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal) throw Error(Errc::Infeasible, "no spec with star sums 2 pi in [0,pi]^E");
    ConformalClassSpec s{t, std::vector<double>(sol.x.begin(), sol.x.begin() + E)};
    return {s, sol.x[E]};
}

}  // namespace dcu
