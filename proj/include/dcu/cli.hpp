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
 * @file cli.hpp
 * @brief Command-line front end.
 *
 * Exit codes: 0 success, 1 I/O, parse or usage error, 2 domain error,
 * 3 convergence failure. Errors are reported as one line on the error
 * stream: "error: <Code>: <message>".
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dcu/io.hpp"

namespace dcu::cli
{

inline constexpr const char* kVersion = "0.1.0";

inline int exit_code(Errc c)
{
    switch (c) {
        case Errc::Io:
        case Errc::Parse:
        case Errc::InvalidArgument: return 1;
        case Errc::NoConvergence: return 3;
        default: return 2;
    }
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace detail
{

/// Canonical "name=value;" listing of a subcommand's options, without outputs and --jobs.
inline std::string canonical_config(const CLI::App& sub)
{
    std::string cfg = sub.get_name() + ";";
    for (const CLI::Option* o : sub.get_options()) {
        const std::string name = o->get_name();
        if (name == "--help" || name == "--jobs" || name == "--out" || name == "--trace") continue;
        std::string val;
        if (o->count() > 0) {
            for (const auto& r : o->results()) val += r + ",";
        } else {
            val = o->get_default_str();
        }
        cfg += name + "=" + val + ";";
    }
    return cfg;
}

inline std::string one_line(std::string s)
{
    std::replace(s.begin(), s.end(), '\n', ' ');
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

inline void emit(std::ostream& out, const std::string& key, double v) { out << key << "=" << io::fmt(v) << "\n"; }

inline SurfaceModel surface_of(const std::string& kind, double width, double height)
{
    return kind == "sphere" ? SurfaceModel::sphere() : SurfaceModel::torus(width, height);
}

}  // namespace detail

/// Run one command; `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"dcu: discrete conformal uniformization toolkit", "dcu"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string input, out_path, trace_path, phi0_path, surface = "sphere", kind = "complex";
    double tol = 0, lambda = 0, delta = std::numbers::pi / 6, width = 1, height = 1, cap_area = 0;
    int max_iter = 0, trials = 200, jobs = 1;
    std::uint64_t seed = 0;
    std::vector<double> rect;

    auto add_out = [&](CLI::App* s, const char* what) { s->add_option("--out", out_path, what); };
    auto add_surface = [&](CLI::App* s) {
        s->add_option("--surface", surface, "sphere or torus")->check(CLI::IsMember({"sphere", "torus"}))->capture_default_str();
        s->add_option("--width", width, "torus width")->check(CLI::PositiveNumber)->capture_default_str();
        s->add_option("--height", height, "torus height")->check(CLI::PositiveNumber)->capture_default_str();
        s->add_option("--lambda", lambda, "Poisson intensity")->required()->check(CLI::PositiveNumber);
    };
    auto add_stochastic = [&](CLI::App* s) {
        add_surface(s);
        s->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber)->capture_default_str();
        s->add_option("--seed", seed, "random seed")->required();
        s->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    };

    auto* validate = app.add_subcommand("validate", "check a complex, angle system, class spec or mesh file");
    validate->add_option("file", input, "JSON file")->required();

    auto* pattern = app.add_subcommand("pattern", "assemble the disk pattern of a uniform angle system");
    pattern->add_option("angles", input, "angle-system JSON")->required();
    pattern->add_option("--tol", tol, "edge length tolerance")->default_val(1e-8)->check(CLI::PositiveNumber);
    add_out(pattern, "structure JSON");

    auto* uniformize_cmd = app.add_subcommand("uniformize", "find the uniform angle system of a conformal class");
    uniformize_cmd->add_option("class", input, "class-spec JSON")->required();
    uniformize_cmd->add_option("--tol", tol, "gradient tolerance")->default_val(1e-10)->check(CLI::PositiveNumber);
    uniformize_cmd->add_option("--max-iter", max_iter, "iteration cap")->default_val(200)->check(CLI::PositiveNumber);
    add_out(uniformize_cmd, "structure JSON");
    uniformize_cmd->add_option("--trace", trace_path, "trace CSV");

    auto* gauss = app.add_subcommand("gauss-bonnet", "Monte Carlo estimate of the Euler characteristic");
    add_stochastic(gauss);
    add_out(gauss, "per-trial CSV (default: stdout)");

    auto* quad = app.add_subcommand("quadrature", "expected Delaunay face count on the sphere by quadrature");
    quad->add_option("--lambda", lambda, "Poisson intensity")->required()->check(CLI::PositiveNumber);
    quad->add_option("--delta", delta, "decision radius")->capture_default_str()->check(CLI::PositiveNumber);

    auto* defect = app.add_subcommand("defect", "regional curvature defect estimate");
    add_stochastic(defect);
    defect->add_option("--cap-area", cap_area, "sphere cap area")->check(CLI::PositiveNumber);
    defect->add_option("--rect", rect, "torus rectangle x0 y0 width height")->expected(4);
    add_out(defect, "per-trial CSV (default: stdout)");

    auto* tele = app.add_subcommand("teleport", "conformal factor to constant negative curvature");
    tele->add_option("mesh", input, "mesh JSON")->required();
    add_out(tele, "conformal factor JSON");

    auto* flow = app.add_subcommand("flow", "log Ricci flow to constant curvature");
    flow->add_option("mesh", input, "mesh JSON")->required();
    flow->add_option("--phi0", phi0_path, "initial conformal factor JSON (default: teleport)");
    flow->add_option("--tol", tol, "relative curvature spread target")->default_val(1e-6)->check(CLI::PositiveNumber);
    flow->add_option("--max-iter", max_iter, "iteration cap")->default_val(5000)->check(CLI::PositiveNumber);
    add_out(flow, "report JSON");

    auto* cat = app.add_subcommand("catalog", "list or export built-in complexes");
    cat->add_option("name", input, "complex name (omit to list)");
    cat->add_option("--kind", kind, "complex, class or mesh")->check(CLI::IsMember({"complex", "class", "mesh"}))->capture_default_str();
    add_out(cat, "JSON file (default: stdout)");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: Parse: " << detail::one_line(e.what()) << "\n";
        return 1;
    }

    const CLI::App* sub = app.get_subcommands().front();
    const bool stochastic = sub == gauss || sub == defect;
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(detail::canonical_config(*sub))));
    out << "# dcu " << kVersion << " command=" << sub->get_name() << " config=" << hash
        << " seed=" << (stochastic ? std::to_string(seed) : std::string("none")) << "\n";

    auto write_or_print = [&](const std::string& text) {
        if (out_path.empty()) {
            out << text;
        } else {
            io::write_text(out_path, text);
        }
    };

    try {
        if (sub == validate) {
            const io::json j = io::read_json(input);
            const auto base = std::filesystem::path(input).parent_path();
            const ComplexPtr t = j.contains("complex") ? io::resolve_complex(j["complex"], base) : io::complex_from_json(j);
            out << "F=" << t->face_count() << " E=" << t->edge_count() << " V=" << t->vertex_count()
                << " χ=" << t->euler_characteristic() << "\n";
            if (j.contains("partials")) {
                const AngleSystem x = io::angle_system_from_json(j, base);
                const Report r = is_angle_system(x);
                out << "angle_system=" << (r.ok ? "ok" : "fail") << " delaunay=" << (is_delaunay(x).ok ? "yes" : "no")
                    << " negatively_curved=" << (is_negatively_curved(x).ok ? "yes" : "no") << "\n";
                detail::emit(out, "worst_margin", r.worst_margin);
                if (!r.ok) throw Error(Errc::InvalidSpec, r.violations.front());
            } else if (j.contains("psi")) {
                const ConformalClassSpec c = io::class_spec_from_json(j, base);
                const Report r = check_spec(c);
                out << "class_spec=" << (r.ok ? "ok" : "fail") << "\n";
                if (!r.ok) throw Error(Errc::InvalidSpec, r.violations.front());
                try {
                    const auto nd = find_negative_delaunay(c);
                    out << "teleportable=yes\n";
                    detail::emit(out, "margin", nd.margin);
                } catch (const Error& e) {
                    if (e.code() != Errc::Infeasible) throw;
                    out << "teleportable=no\n";
                }
            } else if (j.contains("lengths")) {
                const MeshMetric g = io::mesh_from_json(j, base);
                detail::emit(out, "area", g.area);
                detail::emit(out, "k_min", g.k.minCoeff());
                detail::emit(out, "k_max", g.k.maxCoeff());
                detail::emit(out, "total_curvature", g.mass.dot(g.k));
            }
            return 0;
        }

        if (sub == pattern) {
            const io::json j = io::read_json(input);
            const AngleSystem y = io::angle_system_from_json(j, std::filesystem::path(input).parent_path());
            const HyperbolicStructure h = assemble_structure(y, tol);
            const PatternReport r = pattern_report(h);
            out << "ok=" << (r.ok ? "true" : "false") << "\n";
            detail::emit(out, "total_area", r.total_area);
            detail::emit(out, "expected_area", r.expected_area);
            detail::emit(out, "max_length_mismatch", r.max_length_mismatch);
            if (!out_path.empty()) {
                io::json o = io::to_json(h);
                o["pattern"] = io::to_json(r);
                io::write_text(out_path, io::dump(o));
            }
            if (!r.ok) throw Error(Errc::NotHyperbolic, "pattern fails the area or intersection-angle check");
            return 0;
        }

        if (sub == uniformize_cmd) {
            const io::json j = io::read_json(input);
            const ConformalClassSpec c = io::class_spec_from_json(j, std::filesystem::path(input).parent_path());
            UniformizeOptions opts;
            opts.tol = tol;
            opts.max_iter = max_iter;
            const UniformizeResult r = uniformize(c, opts);
            if (!trace_path.empty()) io::write_text(trace_path, io::trace_csv(r.trace));
            if (!out_path.empty()) {
                io::json o = io::to_json(r.structure);
                o["partials"] = io::numbers(r.system.psi);
                o["converged"] = r.converged;
                io::write_text(out_path, io::dump(o));
            }
            out << "converged=" << (r.converged ? "true" : "false") << " iterations=" << r.iterations << "\n";
            detail::emit(out, "H", r.trace.back().H);
            detail::emit(out, "grad_inf", r.trace.back().grad_inf);
            detail::emit(out, "max_length_mismatch", r.structure.max_length_mismatch);
            detail::emit(out, "total_area", r.structure.total_area);
            if (!r.converged) throw Error(Errc::NoConvergence, "gradient above tolerance after " + std::to_string(r.iterations) + " iterations");
            return 0;
        }

        if (sub == gauss) {
            const SurfaceModel s = detail::surface_of(surface, width, height);
            const ChiEstimate est = chi_estimator(s, lambda, trials, seed, jobs);
            write_or_print(io::chi_csv(est));
            bool euler = true, empty = true;
            for (const auto& t : est.trials) {
                euler = euler && t.euler_ok;
                empty = empty && t.empty_ok;
            }
            const double chi = s.euler_characteristic();
            out << "# surface=" << s.name() << " trials=" << trials << " resamples=" << est.resamples
                << " euler_identity=" << (euler ? "ok" : "fail") << " empty_disks=" << (empty ? "ok" : "fail") << "\n";
            out << "# mean=" << io::fmt(est.mean) << " std_error=" << io::fmt(est.std_error) << " chi=" << chi
                << " z=" << io::fmt(est.std_error > 0 ? (est.mean - chi) / est.std_error : 0.0) << "\n";
            return 0;
        }

        if (sub == quad) {
            const SurfaceModel s = SurfaceModel::sphere();
            const double ef = expected_faces_quadrature(lambda, delta);
            const double estimate = s.area() * lambda - ef / 2;
            detail::emit(out, "expected_faces", ef);
            detail::emit(out, "estimate", estimate);
            detail::emit(out, "error", std::abs(estimate - s.euler_characteristic()));
            return 0;
        }

        if (sub == defect) {
            const SurfaceModel s = detail::surface_of(surface, width, height);
            Region region;
            if (s.is_sphere()) {
                if (!(cap_area > 0)) throw Error(Errc::InvalidArgument, "--cap-area is required on the sphere");
                region = CapRegion{{0, 0, 1}, cap_area};
            } else {
                if (rect.size() != 4) throw Error(Errc::InvalidArgument, "--rect x0 y0 width height is required on the torus");
                region = RectRegion{rect[0], rect[1], rect[2], rect[3]};
            }
            const DefectEstimate est = face_defect_in_region(s, lambda, trials, region, seed, jobs);
            write_or_print(io::defect_csv(est));
            out << "# mean=" << io::fmt(est.mean) << " std_error=" << io::fmt(est.std_error)
                << " target=" << io::fmt(est.target) << " resamples=" << est.resamples << "\n";
            return 0;
        }

        if (sub == tele) {
            const MeshMetric g = io::mesh_from_json(io::read_json(input), std::filesystem::path(input).parent_path());
            const ConformalFactor phi = teleport(g);
            const Eigen::VectorXd kh = curvature_h(g, phi);
            detail::emit(out, "c", 2 * std::numbers::pi * g.euler_characteristic() / g.area);
            detail::emit(out, "k_h_min", kh.minCoeff());
            detail::emit(out, "k_h_max", kh.maxCoeff());
            if (!out_path.empty()) io::write_text(out_path, io::dump(io::phi_to_json(phi)));
            return 0;
        }

        if (sub == flow) {
            const MeshMetric g = io::mesh_from_json(io::read_json(input), std::filesystem::path(input).parent_path());
            FlowOptions opts;
            opts.tol = tol;
            opts.max_iter = max_iter;
            ConformalFactor phi;
            FlowReport rep;
            if (!phi0_path.empty()) {
                std::tie(phi, rep) = log_ricci_flow(g, io::phi_from_json(io::read_json(phi0_path), g.vertex_count()), opts);
            } else {
                // Flow on the teleported metric when the background has non-negative curvature somewhere.
                const ConformalFactor start = teleport(g);
                if (g.k.maxCoeff() < 0) {
                    std::tie(phi, rep) = log_ricci_flow(g, start, opts);
                } else {
                    std::tie(phi, rep) = log_ricci_flow(conformal_change(g, start), ConformalFactor::Zero(g.vertex_count()), opts);
                    phi += start;
                }
            }
            out << "converged=" << (rep.converged ? "true" : "false") << " iterations=" << rep.iterations
                << " monotone=" << (rep.monotone ? "true" : "false") << "\n";
            detail::emit(out, "rel_sd", rep.spread);
            detail::emit(out, "k_h_mean", rep.kh_mean);
            if (!out_path.empty()) {
                io::json o = io::to_json(rep);
                o["phi"] = io::phi_to_json(phi)["phi"];
                io::write_text(out_path, io::dump(o));
            }
            if (!rep.converged) throw Error(Errc::NoConvergence, "curvature spread above tolerance after " + std::to_string(rep.iterations) + " steps");
            return 0;
        }

        if (sub == cat) {
            if (input.empty()) {
                for (const auto& n : catalog::names()) out << n << "\n";
                return 0;
            }
            const ComplexPtr t = catalog::by_name(input);
            io::json o;
            if (kind == "complex") {
                o = io::to_json(*t);
            } else if (kind == "class") {
                o = io::to_json(central_spec(t).first);
            } else {
                const UniformizeResult r = uniformize(central_spec(t).first);
                if (!r.converged) throw Error(Errc::NoConvergence, "uniformization of " + input + " did not converge");
                o = io::mesh_to_json(build_mesh(t, r.structure.length));
            }
            write_or_print(io::dump(o));
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << detail::one_line(e.what()) << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        err << "error: Io: " << detail::one_line(e.what()) << "\n";
        return 1;
    }
    return 0;
}

}  // namespace dcu::cli
