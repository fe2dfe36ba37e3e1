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

#include <stdexcept>
#include <string>
#include <string_view>

namespace dcu
{

/** @brief Error categories raised by the library */
enum class Errc {
    UnmatchedSide,
    SelfGluedSide,
    DuplicateSide,
    InvalidSide,
    AmbiguousTriples,
    UnknownVertex,
    ComplexMismatch,
    TooLarge,
    InvalidSpec,
    Infeasible,
    NotHyperbolic,
    DegenerateAngle,
    NotInDomain,
    LengthMismatch,
    NoConvergence,
    DegenerateSample,
    DegenerateTriple,
    BadDelta,
    InvalidMesh,
    OutOfDomain,
    SolveFailure,
    ZeroCurvatureVertex,
    InvalidArgument,
    Parse,
    Io,
};

inline constexpr std::string_view to_string(Errc c) noexcept
{
    switch (c) {
        case Errc::UnmatchedSide: return "UnmatchedSide";
        case Errc::SelfGluedSide: return "SelfGluedSide";
        case Errc::DuplicateSide: return "DuplicateSide";
        case Errc::InvalidSide: return "InvalidSide";
        case Errc::AmbiguousTriples: return "AmbiguousTriples";
        case Errc::UnknownVertex: return "UnknownVertex";
        case Errc::ComplexMismatch: return "ComplexMismatch";
        case Errc::TooLarge: return "TooLarge";
        case Errc::InvalidSpec: return "InvalidSpec";
        case Errc::Infeasible: return "Infeasible";
        case Errc::NotHyperbolic: return "NotHyperbolic";
        case Errc::DegenerateAngle: return "DegenerateAngle";
        case Errc::NotInDomain: return "NotInDomain";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::DegenerateSample: return "DegenerateSample";
        case Errc::DegenerateTriple: return "DegenerateTriple";
        case Errc::BadDelta: return "BadDelta";
        case Errc::InvalidMesh: return "InvalidMesh";
        case Errc::OutOfDomain: return "OutOfDomain";
        case Errc::SolveFailure: return "SolveFailure";
        case Errc::ZeroCurvatureVertex: return "ZeroCurvatureVertex";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::Parse: return "Parse";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

/** @brief Library exception carrying an error category */
class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_{code}
    {
    }
    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace dcu
