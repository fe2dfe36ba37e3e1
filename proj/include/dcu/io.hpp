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
 * @file io.hpp
 * @brief JSON and CSV serialization.
 *
 * A "complex" field is either an inline {"faces", "gluing"} object, a path to
 * such a file (relative to the referring file) or "catalog:<name>".
 */

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dcu/angles.hpp"
#include "dcu/catalog.hpp"
#include "dcu/flow.hpp"
#include "dcu/mesh.hpp"
#include "dcu/stochastic.hpp"
#include "dcu/uniformize.hpp"

namespace dcu::io
{

using json = nlohmann::json;
namespace fs = std::filesystem;

/// 17 significant digits; "inf"/"-inf"/"nan" for non-finite values.
inline std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// JSON number, or null when v is not finite.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json numbers(const std::vector<double>& v)
{
    json a = json::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

inline std::string read_text(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const fs::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write " + p.string());
    out << text;
    if (!out) throw Error(Errc::Io, "write failed for " + p.string());
}

inline json read_json(const fs::path& p)
{
    try {
        return json::parse(read_text(p));
    } catch (const json::exception& e) {
        throw Error(Errc::Parse, p.string() + ": " + e.what());
    }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

namespace detail
{

template <class T>
T get(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw Error(Errc::Parse, std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(Errc::Parse, std::string("field \"") + key + "\": " + e.what());
    }
}

}  // namespace detail

// ---- complexes ----

inline json to_json(const Triangulation& t)
{
    json g = json::array();
    for (const auto& [a, b] : t.gluing()) g.push_back({{a.face, a.index}, {b.face, b.index}});
    return {{"faces", t.face_count()}, {"gluing", g}};
}

inline ComplexPtr complex_from_json(const json& j)
{
    const int faces = detail::get<int>(j, "faces");
    const auto pairs = detail::get<std::vector<std::array<std::array<int, 2>, 2>>>(j, "gluing");
    std::vector<GluingPair> g;
    g.reserve(pairs.size());
    for (const auto& p : pairs) g.push_back({{p[0][0], p[0][1]}, {p[1][0], p[1][1]}});
    return build_complex(faces, g);
}

/// Resolve a "complex" field; `base` is the directory of the referring file.
inline ComplexPtr resolve_complex(const json& ref, const fs::path& base)
{
    if (ref.is_object()) return complex_from_json(ref);
    if (!ref.is_string()) throw Error(Errc::Parse, "\"complex\" must be an object or a string");
    const auto s = ref.get<std::string>();
    if (s.rfind("catalog:", 0) == 0) return catalog::by_name(s.substr(8));
    const fs::path p = fs::path(s).is_absolute() ? fs::path(s) : base / s;
    return complex_from_json(read_json(p));
}

inline ComplexPtr load_complex(const fs::path& p)
{
    const json j = read_json(p);
    return j.contains("complex") ? resolve_complex(j["complex"], p.parent_path()) : complex_from_json(j);
}

// ---- angle systems and class specs ----

inline json to_json(const AngleSystem& x)
{
    return {{"complex", to_json(*x.complex)}, {"partials", numbers(x.psi)}};
}

inline AngleSystem angle_system_from_json(const json& j, const fs::path& base = {})
{
    AngleSystem x{resolve_complex(detail::get<json>(j, "complex"), base), detail::get<std::vector<double>>(j, "partials")};
    if (static_cast<int>(x.psi.size()) != x.complex->side_count()) {
        throw Error(Errc::Parse, "expected " + std::to_string(x.complex->side_count()) + " partials, got " +
                                     std::to_string(x.psi.size()));
    }
    return x;
}

inline json to_json(const ConformalClassSpec& c)
{
    json psi = json::object();
    for (std::size_t e = 0; e < c.psi.size(); ++e) psi[std::to_string(e)] = c.psi[e];
    return {{"complex", to_json(*c.complex)}, {"psi", psi}};
}

inline ConformalClassSpec class_spec_from_json(const json& j, const fs::path& base = {})
{
    ConformalClassSpec c;
    c.complex = resolve_complex(detail::get<json>(j, "complex"), base);
    const json psi = detail::get<json>(j, "psi");
    if (!psi.is_object()) throw Error(Errc::Parse, "\"psi\" must map edge ids to angles");
    const int E = c.complex->edge_count();
    c.psi.assign(E, std::numeric_limits<double>::quiet_NaN());
    for (const auto& [key, val] : psi.items()) {
        std::size_t used = 0;
        int e = -1;
        try {
            e = std::stoi(key, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != key.size() || e < 0 || e >= E) throw Error(Errc::Parse, "bad edge id \"" + key + "\"");
        if (!val.is_number()) throw Error(Errc::Parse, "psi of edge " + key + " is not a number");
        c.psi[e] = val.get<double>();
    }
    for (int e = 0; e < E; ++e) {
        if (std::isnan(c.psi[e])) throw Error(Errc::Parse, "missing psi for edge " + std::to_string(e));
    }
    return c;
}

// ---- meshes and conformal factors ----

inline json mesh_to_json(const MeshMetric& g)
{
    return {{"complex", to_json(*g.complex)}, {"lengths", numbers(g.lengths)}};
}

inline MeshMetric mesh_from_json(const json& j, const fs::path& base = {})
{
    return build_mesh(resolve_complex(detail::get<json>(j, "complex"), base), detail::get<std::vector<double>>(j, "lengths"));
}

/// Accepts {"phi": [...]} or a bare array.
inline ConformalFactor phi_from_json(const json& j, int size)
{
    std::vector<double> v;
    try {
        v = j.is_array() ? j.get<std::vector<double>>() : detail::get<std::vector<double>>(j, "phi");
    } catch (const json::exception& e) {
        throw Error(Errc::Parse, std::string("phi: ") + e.what());
    }
    if (static_cast<int>(v.size()) != size) {
        throw Error(Errc::Parse, "expected " + std::to_string(size) + " phi values, got " + std::to_string(v.size()));
    }
    return Eigen::Map<const Eigen::VectorXd>(v.data(), size);
}

inline json phi_to_json(const ConformalFactor& phi) { return {{"phi", numbers(std::vector<double>(phi.data(), phi.data() + phi.size()))}}; }

// ---- results ----

inline json to_json(const HyperbolicStructure& h)
{
    json angles = json::array();
    for (const auto& a : h.angles) angles.push_back({a[0], a[1], a[2]});
    return {{"complex", to_json(*h.complex)},
            {"length", numbers(h.length)},
            {"angles", angles},
            {"circumradius", numbers(h.circumradius)},
            {"intersection_angle", numbers(h.intersection_angle)},
            {"max_length_mismatch", h.max_length_mismatch},
            {"worst_edge", h.worst_edge},
            {"total_area", h.total_area}};
}

inline json to_json(const PatternReport& r)
{
    return {{"ok", r.ok},
            {"total_area", r.total_area},
            {"expected_area", r.expected_area},
            {"max_length_mismatch", r.max_length_mismatch},
            {"intersection_angle", numbers(r.intersection_angle)},
            {"circumradius", numbers(r.circumradius)}};
}

inline json to_json(const FlowReport& r)
{
    json steps = json::array();
    for (const auto& s : r.steps) {
        steps.push_back({{"iteration", s.iteration},
                         {"I", s.I},
                         {"grad_inf", s.grad_inf},
                         {"step", s.step},
                         {"spread", s.spread},
                         {"newton", s.newton}});
    }
    return {{"converged", r.converged},
            {"iterations", r.iterations},
            {"monotone", r.monotone},
            {"k_h", {{"mean", r.kh_mean}, {"min", r.kh_min}, {"max", r.kh_max}, {"rel_sd", r.spread}}},
            {"steps", steps}};
}

// ---- CSV ----

inline std::string trace_csv(const std::vector<TraceRow>& rows)
{
    std::string s = "iteration,H,grad_inf,step,length_mismatch\n";
    for (const auto& r : rows) {
        s += std::to_string(r.iteration) + "," + fmt(r.H) + "," + fmt(r.grad_inf) + "," + fmt(r.step) + "," +
             fmt(r.length_mismatch) + "\n";
    }
    return s;
}

inline std::string chi_csv(const ChiEstimate& est)
{
    std::string s = "trial,n,F,estimator\n";
    for (const auto& t : est.trials) {
        s += std::to_string(t.trial) + "," + std::to_string(t.n) + "," + std::to_string(t.faces) + "," + fmt(t.estimator) + "\n";
    }
    return s;
}

inline std::string defect_csv(const DefectEstimate& est)
{
    std::string s = "trial,defect\n";
    for (std::size_t t = 0; t < est.per_trial.size(); ++t) s += std::to_string(t) + "," + fmt(est.per_trial[t]) + "\n";
    return s;
}

}  // namespace dcu::io
