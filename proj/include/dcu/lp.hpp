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

/// @file lp.hpp
/// @brief Dense two-phase tableau simplex with Bland's pivoting rule.

#include <cmath>
#include <limits>
#include <vector>

namespace dcu::lp
{

enum class Status { Optimal, Infeasible, Unbounded };

/**
 * @brief maximize c.x  subject to  A_le x <= b_le,  A_eq x = b_eq,  x >= 0.
 *
 * Rows are dense. Right-hand sides may have any sign.
 */
struct Problem {
    std::vector<double> c;
    std::vector<std::vector<double>> a_le;
    std::vector<double> b_le;
    std::vector<std::vector<double>> a_eq;
    std::vector<double> b_eq;
};

struct Solution {
    Status status{Status::Infeasible};
    std::vector<double> x;
    double objective{0.0};
};

namespace detail
{

struct Tableau {
    int rows{0};
    int cols{0};  // excluding rhs column
    std::vector<double> t;
    std::vector<int> basis;

    double& at(int r, int c) { return t[static_cast<std::size_t>(r) * (cols + 1) + c]; }
    double& rhs(int r) { return at(r, cols); }

    void pivot(int pr, int pc)
    {
        const double p = at(pr, pc);
        for (int c = 0; c <= cols; ++c) at(pr, c) /= p;
        for (int r = 0; r <= rows; ++r) {
            if (r == pr) continue;
            const double f = at(r, pc);
            if (f == 0.0) continue;
            for (int c = 0; c <= cols; ++c) at(r, c) -= f * at(pr, c);
        }
        basis[pr] = pc;
    }

    // Objective row is row `rows`, holding reduced costs for maximization
    // in the form z - sum d_j x_j; entering columns have negative entries.
    Status optimize(int allowed_cols, double eps)
    {
        for (;;) {
            int pc = -1;
            for (int c = 0; c < allowed_cols; ++c) {
                if (at(rows, c) < -eps) {
                    pc = c;
                    break;
                }
            }
            if (pc < 0) return Status::Optimal;
            int pr = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int r = 0; r < rows; ++r) {
                const double a = at(r, pc);
                if (a <= eps) continue;
                const double ratio = rhs(r) / a;
                if (ratio < best - eps || (std::abs(ratio - best) <= eps && pr >= 0 && basis[r] < basis[pr])) {
                    best = ratio;
                    pr = r;
                }
            }
            if (pr < 0) return Status::Unbounded;
            pivot(pr, pc);
        }
    }
};

}  // namespace detail

inline Solution solve(const Problem& p, double eps = 1e-11)
{
    const int n = static_cast<int>(p.c.size());
    const int m_le = static_cast<int>(p.a_le.size());
    const int m_eq = static_cast<int>(p.a_eq.size());
    const int m = m_le + m_eq;

    // Columns: x (n), slack per <= row (m_le), artificial per row that needs one.
    std::vector<int> needs_art(m, 0);
    int n_art = 0;
    for (int i = 0; i < m_le; ++i) {
        if (p.b_le[i] < 0) {
            needs_art[i] = 1;
            ++n_art;
        }
    }
    for (int i = 0; i < m_eq; ++i) {
        needs_art[m_le + i] = 1;
        ++n_art;
    }

    detail::Tableau tab;
    tab.rows = m;
    tab.cols = n + m_le + n_art;
    tab.t.assign(static_cast<std::size_t>(m + 1) * (tab.cols + 1), 0.0);
    tab.basis.assign(m, -1);

    int art = n + m_le;
    for (int i = 0; i < m; ++i) {
        const bool le = i < m_le;
        const auto& row = le ? p.a_le[i] : p.a_eq[i - m_le];
        const double b = le ? p.b_le[i] : p.b_eq[i - m_le];
        const double sgn = b < 0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) tab.at(i, j) = sgn * row[j];
        if (le) tab.at(i, n + i) = sgn;
        tab.rhs(i) = sgn * b;
        if (needs_art[i]) {
            tab.at(i, art) = 1.0;
            tab.basis[i] = art++;
        } else {
            tab.basis[i] = n + i;
        }
    }

    Solution out;
    if (n_art > 0) {
        // Phase 1: maximize -sum(artificials).
        for (int i = 0; i < m; ++i) {
            if (!needs_art[i]) continue;
            for (int c = 0; c <= tab.cols; ++c) {
                if (c >= n + m_le && c < tab.cols) continue;
                tab.at(m, c) -= tab.at(i, c);
            }
        }
        tab.optimize(tab.cols, eps);
        if (tab.rhs(m) < -1e-9 * std::max(1.0, std::abs(tab.rhs(m)))) {
            out.status = Status::Infeasible;
            return out;
        }
        // Drive remaining artificials out of the basis.
        for (int r = 0; r < m; ++r) {
            if (tab.basis[r] < n + m_le) continue;
            for (int c = 0; c < n + m_le; ++c) {
                if (std::abs(tab.at(r, c)) > eps) {
                    tab.pivot(r, c);
                    break;
                }
            }
        }
    }

    // Phase 2 objective row.
    for (int c = 0; c <= tab.cols; ++c) tab.at(m, c) = 0.0;
    for (int j = 0; j < n; ++j) tab.at(m, j) = -p.c[j];
    for (int r = 0; r < m; ++r) {
        const int b = tab.basis[r];
        const double f = tab.at(m, b);
        if (f == 0.0) continue;
        for (int c = 0; c <= tab.cols; ++c) tab.at(m, c) -= f * tab.at(r, c);
    }
    const Status st = tab.optimize(n + m_le, eps);
    out.status = st;
    if (st != Status::Optimal) return out;
    out.x.assign(n, 0.0);
    for (int r = 0; r < m; ++r) {
        if (tab.basis[r] < n) out.x[tab.basis[r]] = tab.rhs(r);
    }
    out.objective = 0.0;
    for (int j = 0; j < n; ++j) out.objective += p.c[j] * out.x[j];
    return out;
}

}  // namespace dcu::lp
