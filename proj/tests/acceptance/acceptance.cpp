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
// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dcu/cli.hpp"
#include "meshes.hpp"
#include "oracles.hpp"
#include "random_specs.hpp"

using namespace dcu;

namespace
{

struct Outcome {
    bool pass{true};
    std::string detail;

    void check(bool ok, const std::string& what)
    {
        pass = pass && ok;
        detail += (detail.empty() ? "" : "; ") + what + (ok ? "" : " [FAIL]");
    }
};

std::string num(double v)
{
    char b[32];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

int jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

// ---- 1 ----
Outcome angle_algebra()
{
    Outcome o;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(1e-3, kPi - 1e-3);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const std::array<double, 3> a{u(rng), u(rng), u(rng)};
        const auto b = angles_from_partials(partials_from_triangle(a));
        for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    o.check(worst <= 1e-12, "roundtrip max err " + num(worst) + " on 1000 faces");

    double vs = 0.0, cls = 0.0;
    std::normal_distribution<double> g(0.0, 0.5);
    for (const auto& name : {"tetrahedron", "octahedron", "torus1", "torus7", "genus2-small-1", "genus2-f24"}) {
        const auto t = catalog::by_name(name);
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<std::array<double, 3>> ang(t->face_count());
            for (auto& a : ang) a = {u(rng), u(rng), u(rng)};
            const AngleSystem x = partials_from_angles(t, ang);
            std::vector<double> c(t->edge_count());
            for (auto& v : c) v = g(rng);
            const AngleSystem y = move_in_class(x, c);
            const auto sx = vertex_angle_sums(x), sy = vertex_angle_sums(y);
            for (std::size_t v = 0; v < sx.size(); ++v) vs = std::max(vs, std::abs(sx[v] - sy[v]));
            for (int e = 0; e < t->edge_count(); ++e) {
                cls = std::max(cls, std::abs(informal_intersection_angle(x, e) - informal_intersection_angle(y, e)));
            }
        }
    }
    o.check(vs <= 1e-12, "vertex sums drift " + num(vs));
    o.check(cls <= 1e-12, "class drift " + num(cls));
    return o;
}

// ---- 2 ----
Outcome volume_gradient_check()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(202);
    const double h = 1e-5;
    double worst_stated = 0.0, worst_true = 0.0, worst_mixed = 0.0, worst_path = 0.0;
    int sign_flips = 0;
    for (int i = 0; i < 100; ++i) {
        const Triple a = oracle::random_hyperbolic(rng, 0.1);
        const Triple p = partials_from_triangle(a);
        const Triple l = edge_lengths(a);
        for (int k = 0; k < 3; ++k) {
            Triple pp = p, pm = p;
            pp[k] += h;
            pm[k] -= h;
            const double fd =
                (prism_volume_path(angles_from_partials(pp)) - prism_volume_path(angles_from_partials(pm))) / (2 * h);
            const double g = std::log((std::cosh(l[k]) - 1) / 2);
            const double scale = std::max(1.0, std::abs(g));
            worst_stated = std::max(worst_stated, std::abs(fd - (-g)) / scale);
            worst_true = std::max(worst_true, std::abs(fd - g) / scale);
            if (fd * -g < 0) ++sign_flips;
        }
        // One-form exactness: d g_i / d p_j = d g_j / d p_i.
        std::array<Triple, 3> jac{};
        for (int j = 0; j < 3; ++j) {
            Triple pp = p, pm = p;
            pp[j] += h;
            pm[j] -= h;
            const Triple gp = volume_gradient(pp), gm = volume_gradient(pm);
            for (int k = 0; k < 3; ++k) jac[k][j] = (gp[k] - gm[k]) / (2 * h);
        }
        for (int j = 0; j < 3; ++j) {
            for (int k = j + 1; k < 3; ++k) {
                const double s = std::max({1.0, std::abs(jac[j][k]), std::abs(jac[k][j])});
                worst_mixed = std::max(worst_mixed, std::abs(jac[j][k] - jac[k][j]) / s);
            }
        }
        const Triple w = partials_from_triangle(oracle::random_hyperbolic(rng, 0.1));
        const Triple w2 = partials_from_triangle(oracle::random_hyperbolic(rng, 0.1));
        worst_path = std::max(worst_path, std::abs(prism_volume_path(a, std::vector<Triple>{w}) -
                                                   prism_volume_path(a, std::vector<Triple>{w2})));
    }
    o.check(worst_stated < 1e-6, "gradient vs -log((cosh l-1)/2) rel err " + num(worst_stated) + " (" +
                                     std::to_string(sign_flips) + "/300 opposite sign)");
    o.detail += "; info: gradient vs +log((cosh l-1)/2) rel err " + num(worst_true);
    o.check(worst_mixed < 1e-6, "mixed partials asymmetry " + num(worst_mixed));
    o.check(worst_path < 1e-8, "path dependence " + num(worst_path));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs < 30, "runtime " + num(secs) + " s");
    return o;
}

// ---- 3 ----
Outcome concavity()
{
    Outcome o;
    const auto t = catalog::genus2_f24();
    std::mt19937_64 rng(303);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = -1e300;
    int points = 0;
    for (const auto& spec : sampling::random_specs(t, 20, rng)) {
        AngleSystem x;
        try {
            x = find_negative_delaunay(spec).system;
        } catch (const Error&) {
            continue;
        }
        // A few hit-and-run steps inside the class slice.
        for (int step = 0; step < 5; ++step) {
            std::vector<double> d(t->edge_count());
            for (auto& v : d) v = g(rng);
            double lo = 0.0, hi = 1.0;
            auto scaled = [&](double s) {
                std::vector<double> c(d);
                for (auto& v : c) v *= s;
                return move_in_class(x, c);
            };
            while (in_domain(scaled(hi))) hi *= 2;
            for (int it = 0; it < 40; ++it) {
                const double mid = 0.5 * (lo + hi);
                (in_domain(scaled(mid)) ? lo : hi) = mid;
            }
            x = scaled(lo * u(rng));
        }
        if (!is_negatively_curved(x).ok || !is_delaunay(x).ok) continue;
        const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(class_hessian(x)).eigenvalues();
        worst = std::max(worst, ev.maxCoeff());
        ++points;
    }
    o.check(points >= 20, std::to_string(points) + " interior points on F=24");
    o.check(worst < 0, "max Hessian eigenvalue " + num(worst));
    return o;
}

// ---- 4 ----
Outcome uniformization()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto t = catalog::genus2_f24();
    const auto spec = central_spec(t).first;
    const AngleSystem lp_start = find_negative_delaunay(spec).system;
    const auto a = uniformize_from(lp_start);
    o.check(a.converged && a.iterations <= 200, "converged in " + std::to_string(a.iterations) + " iterations");
    const double g = class_grad(a.system).cwiseAbs().maxCoeff();
    o.check(g < 1e-10, "|class_grad| " + num(g));
    o.check(a.structure.max_length_mismatch < 1e-8, "length mismatch " + num(a.structure.max_length_mismatch));
    o.check(std::abs(a.structure.total_area - 4 * kPi) < 1e-9, "area err " + num(std::abs(a.structure.total_area - 4 * kPi)));

    // Second start: an interior point of the same class away from the LP vertex.
    std::mt19937_64 rng(404);
    std::normal_distribution<double> n(0.0, 1.0);
    AngleSystem other = lp_start;
    std::vector<double> c(t->edge_count());
    for (auto& v : c) v = n(rng);
    for (double s = 0.05; s > 1e-6; s /= 2) {
        std::vector<double> cs(c);
        for (auto& v : cs) v *= s;
        const auto cand = move_in_class(lp_start, cs);
        if (in_domain(cand, 1e-6)) {
            other = cand;
            break;
        }
    }
    double dist0 = 0.0;
    for (std::size_t i = 0; i < other.psi.size(); ++i) dist0 = std::max(dist0, std::abs(other.psi[i] - lp_start.psi[i]));
    const auto b = uniformize_from(other);
    double diff = 0.0;
    for (std::size_t i = 0; i < a.system.psi.size(); ++i) diff = std::max(diff, std::abs(a.system.psi[i] - b.system.psi[i]));
    o.check(dist0 > 1e-4 && b.converged && diff < 1e-8, "starts " + num(dist0) + " apart agree to " + num(diff));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs < 10, "runtime " + num(secs) + " s");
    return o;
}

// ---- 5 ----
Outcome teleportation()
{
    Outcome o;
    std::mt19937_64 rng(505);
    const std::vector<std::string> names{"tetrahedron",    "octahedron",     "torus1",        "genus2-small-0",
                                         "genus2-small-1", "genus2-small-2", "genus2-small-3"};
    std::vector<ConformalClassSpec> specs;
    for (int i = 0; specs.size() < 50; ++i) {
        const auto t = catalog::by_name(names[i % names.size()]);
        for (auto& s : sampling::random_specs(t, 1, rng)) specs.push_back(s);
    }
    int agree = 0, feasible = 0, bad_output = 0;
    double min_margin = 1e300;
    for (const auto& spec : specs) {
        const bool brute = is_teleportable_bruteforce(spec).teleportable;
        bool lp_ok = false;
        try {
            const auto r = find_negative_delaunay(spec);
            lp_ok = true;
            ++feasible;
            min_margin = std::min(min_margin, r.margin);
            const Report del = is_delaunay(r.system, kTeleportMarginFloor);
            const Report neg = is_negatively_curved(r.system, kTeleportMarginFloor);
            bool ok = r.margin >= kTeleportMarginFloor && is_angle_system(r.system).ok && del.ok && neg.ok;
            min_margin = std::min({min_margin, del.worst_margin, neg.worst_margin});
            for (int e = 0; e < spec.complex->edge_count(); ++e) {
                ok = ok && std::abs(informal_intersection_angle(r.system, e) - spec.psi[e]) < 1e-9;
            }
            bad_output += ok ? 0 : 1;
        } catch (const Error& e) {
            if (e.code() != Errc::Infeasible) throw;
        }
        agree += brute == lp_ok ? 1 : 0;
    }
    o.check(agree == 50, "LP agrees with subset criterion on " + std::to_string(agree) + "/50 (" +
                             std::to_string(feasible) + " feasible)");
    const auto oct = catalog::octahedron();
    bool right_infeasible = false;
    try {
        find_negative_delaunay({oct, std::vector<double>(oct->edge_count(), kPi / 2)});
    } catch (const Error& e) {
        right_infeasible = e.code() == Errc::Infeasible;
    }
    o.check(right_infeasible, "all pi/2 octahedron infeasible");
    o.check(bad_output == 0 && feasible > 0, "feasible outputs in slice, min margin " + num(min_margin));
    return o;
}

// ---- 6 ----
Outcome gauss_bonnet()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto sphere = SurfaceModel::sphere();
    const auto s = chi_estimator(sphere, 500 / (4 * kPi), 200, 6001, jobs());
    bool exact = true;
    for (const auto& t : s.trials) exact = exact && t.faces == 2 * t.n - 4;
    o.check(std::abs(s.mean - 2) <= 3 * s.std_error, "sphere mean " + num(s.mean) + " se " + num(s.std_error));
    o.check(exact, "F = 2n - 4 on every trial");
    const auto torus = SurfaceModel::torus(1, 1);
    const auto r = chi_estimator(torus, 500, 200, 6002, jobs());
    exact = true;
    for (const auto& t : r.trials) exact = exact && t.faces == 2 * t.n;
    o.check(std::abs(r.mean) <= 3 * r.std_error, "torus mean " + num(r.mean) + " se " + num(r.std_error));
    o.check(exact, "F = 2n on every trial");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs < 120, "runtime " + num(secs) + " s");
    return o;
}

// ---- 7 ----
Outcome curvature_defect()
{
    Outcome o;
    const auto s = SurfaceModel::sphere();
    const auto est = face_defect_in_region(s, 2000 / s.area(), 400, CapRegion{{0, 0, 1}, 0.8 * kPi}, 7001, jobs());
    o.check(std::abs(est.mean - 0.8) <= 3 * est.std_error,
            "defect " + num(est.mean) + " se " + num(est.std_error) + " target " + num(est.target));
    return o;
}

// ---- 8 ----
Outcome quadrature()
{
    Outcome o;
    const auto s = SurfaceModel::sphere();
    auto err = [&](double n) {
        const double lambda = n / s.area();
        return std::abs(s.area() * lambda - expected_faces_quadrature(lambda, kPi / 6) / 2 - 2);
    };
    const double e200 = err(200);
    o.check(e200 < 0.1, "error at 200/(4 pi) " + num(e200));
    bool mono = true;
    std::string series;
    double prev = 1e300;
    for (double n : {50.0, 100.0, 200.0, 400.0, 800.0}) {
        const double e = err(n);
        mono = mono && e <= prev;
        prev = e;
        series += (series.empty() ? "" : ",") + num(e);
    }
    o.check(mono, "errors " + series + " nonincreasing");
    return o;
}

// ---- 9 ----
Outcome smooth_functional()
{
    Outcome o;
    const auto& g = meshes::genus2_unit_curvature();
    const int V = g.vertex_count();
    o.check(evaluate_Ig(g, Eigen::VectorXd::Zero(V)) == 0.0, "I(0) = 0 exactly");
    std::mt19937_64 rng(909);
    double fd_err = 0.0, sbp_err = 0.0, scale_err = 0.0, worst_hess = -1e300;
    for (int i = 0; i < 5; ++i) {
        const Eigen::VectorXd phi = meshes::random_mean_zero(g, rng, 0.01);
        const Eigen::VectorXd G = gradient_Ig(g, phi);
        const double h = 1e-6;
        for (int v = 0; v < V; ++v) {
            Eigen::VectorXd p = phi, m = phi;
            p[v] += h;
            m[v] -= h;
            const double fd = (evaluate_Ig(g, p) - evaluate_Ig(g, m)) / (2 * h);
            fd_err = std::max(fd_err, std::abs(fd - G[v]) / std::max(1.0, std::abs(G[v])));
        }
        const Eigen::VectorXd logk = curvature_h(g, phi).array().abs().log();
        for (int k = 0; k < 5; ++k) {
            const Eigen::VectorXd psi = meshes::random_mean_zero(g, rng, 1.0);
            const Eigen::VectorXd lap = -(g.S * psi).cwiseQuotient(g.mass);
            const double sbp = -(g.mass.cwiseProduct(lap)).dot(logk);
            sbp_err = std::max(sbp_err, std::abs(sbp - G.dot(psi)) / std::max(1.0, std::abs(sbp)));
        }
        for (double c : {-2.0, 0.5, 3.0}) {
            scale_err = std::max(scale_err, std::abs(evaluate_Ig(g, (phi.array() + c).matrix()) - evaluate_Ig(g, phi)));
        }
        for (int k = 0; k < 20; ++k) worst_hess = std::max(worst_hess, hessian_Ig(g, phi, meshes::random_mean_zero(g, rng, 1.0)));
    }
    o.check(fd_err < 1e-5, "gradient vs finite differences " + num(fd_err));
    o.check(sbp_err < 1e-8, "gradient vs summation-by-parts form " + num(sbp_err));
    o.check(worst_hess < 0, "max Hessian form on 100 directions " + num(worst_hess));
    o.check(scale_err <= 1e-12, "scale invariance " + num(scale_err));
    return o;
}

// ---- 10 ----
Outcome flow()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto& g = meshes::genus2_unit_curvature();
    std::mt19937_64 rng(1010);
    int ok = 0, runs = 5, max_it = 0;
    double worst_sd = 0.0, worst_dev = 0.0;
    bool monotone = true;
    for (int i = 0; i < runs; ++i) {
        const auto [phi, rep] = log_ricci_flow(g, meshes::random_mean_zero(g, rng, 0.01));
        ok += rep.converged && rep.iterations <= 5000 ? 1 : 0;
        max_it = std::max(max_it, rep.iterations);
        worst_sd = std::max(worst_sd, rep.spread);
        for (std::size_t s = 1; s < rep.steps.size(); ++s) monotone = monotone && rep.steps[s].I >= rep.steps[s - 1].I;
        worst_dev = std::max(worst_dev, (phi.array() - mass_mean(g, phi)).abs().maxCoeff());
    }
    o.check(ok == runs, std::to_string(ok) + "/" + std::to_string(runs) + " converged, max " + std::to_string(max_it) + " steps");
    o.check(worst_sd < 1e-6, "rel sd of k_h " + num(worst_sd));
    o.check(monotone, "I nondecreasing on every accepted step");
    o.check(worst_dev < 1e-6, "phi* minus constant " + num(worst_dev));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs < 60, "runtime " + num(secs) + " s");
    return o;
}

// ---- 11 ----
Outcome metric_teleport()
{
    Outcome o;
    std::mt19937_64 rng(1111);
    int negative = 0, mixed = 0;
    double worst_c = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto g = meshes::random_genus2(rng);
        mixed += g.k.minCoeff() < 0 && g.k.maxCoeff() > 0 ? 1 : 0;
        const ConformalFactor phi = teleport(g);
        const Eigen::VectorXd kh = curvature_h(g, phi);
        negative += kh.maxCoeff() < 0 ? 1 : 0;
        const double c = 2 * kPi * g.euler_characteristic() / g.area;
        for (int v = 0; v < g.vertex_count(); ++v) worst_c = std::max(worst_c, std::abs(std::exp(2 * phi[v]) * kh[v] - c));
    }
    o.check(mixed == 20, std::to_string(mixed) + "/20 meshes with mixed-sign curvature");
    o.check(negative == 20, std::to_string(negative) + "/20 with k_h < 0 everywhere");
    o.check(worst_c < 1e-10, "|e^{2phi} k_h - 2 pi chi / A| " + num(worst_c));
    return o;
}

// ---- 12 ----
Outcome determinism()
{
    Outcome o;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "dcu_acceptance_determinism";
    fs::create_directories(dir);
    const std::vector<std::vector<std::string>> commands{
        {"gauss-bonnet", "--surface", "sphere", "--lambda", "39.789", "--trials", "200", "--seed", "7"},
        {"gauss-bonnet", "--surface", "torus", "--lambda", "300", "--trials", "50", "--seed", "11"},
        {"defect", "--surface", "sphere", "--lambda", "50", "--trials", "50", "--seed", "3", "--cap-area", "2.5"},
        {"defect", "--surface", "torus", "--lambda", "300", "--trials", "50", "--seed", "3", "--rect", "0.1", "0.1", "0.5", "0.4"}};
    int identical = 0;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        std::string outputs[2];
        for (int rep = 0; rep < 2; ++rep) {
            auto args = commands[i];
            const auto file = (dir / ("run" + std::to_string(i) + "_" + std::to_string(rep) + ".csv")).string();
            args.insert(args.end(), {"--out", file, "--jobs", rep == 0 ? "1" : std::to_string(jobs())});
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            outputs[rep] = std::to_string(code) + "\n" + out.str() + io::read_text(file);
        }
        identical += outputs[0] == outputs[1] ? 1 : 0;
    }
    fs::remove_all(dir);
    o.check(identical == static_cast<int>(commands.size()),
            std::to_string(identical) + "/" + std::to_string(commands.size()) + " stochastic commands byte-identical on rerun");
    return o;
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"angle algebra", angle_algebra},
        {"prism volume gradient", volume_gradient_check},
        {"concavity", concavity},
        {"discrete uniformization", uniformization},
        {"teleportation", teleportation},
        {"Gauss-Bonnet Monte Carlo", gauss_bonnet},
        {"local curvature defect", curvature_defect},
        {"quadrature", quadrature},
        {"smooth functional", smooth_functional},
        {"log Ricci flow", flow},
        {"metric teleportation", metric_teleport},
        {"determinism", determinism}};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2zu %-26s %s  %s  (%.2f s)\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
