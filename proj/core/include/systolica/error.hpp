#pragma once

#include <stdexcept>
#include <string>

namespace systolica {

enum class ErrCode {
    // surface / complex validation
    DuplicateTriangle,
    DegenerateTriangle,
    NonManifoldEdge,
    BadLink,
    Disconnected,
    UnusedVertex,
    BoundaryNotAllowed,
    LoopNotOnSurface,
    // systole
    NotClosed,
    NotOrientable,
    GenusZero,
    NotSimple,
    TrivialClass,
    EdgeNotInSurface,
    // surgery
    SeparatingLoop,
    ConingCollision,
    NotSphere,
    SimplicialityViolation,
    MissingDisk,
    // geometry
    DegenerateSimplex,
    BadBarycentric,
    BadBasis,
    // metric
    ThroughBarycenter,
    // harness
    InvalidParams,
    ParseError,
    // catch-all for broken internal invariants
    InternalInvariant,
};

/// Failure category, used by the CLI to select an exit code.
enum class ErrCategory { Parse = 1, Validation = 2, Internal = 3 };

constexpr ErrCategory category_of(ErrCode c) {
    switch (c) {
    case ErrCode::ParseError:
    case ErrCode::InvalidParams:
        return ErrCategory::Parse;
    case ErrCode::InternalInvariant:
        return ErrCategory::Internal;
    default:
        return ErrCategory::Validation;
    }
}

const char* err_name(ErrCode c);

class Error : public std::runtime_error {
public:
    Error(ErrCode code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

    ErrCode code() const { return code_; }
    ErrCategory category() const { return category_of(code_); }

private:
    ErrCode code_;
};

[[noreturn]] inline void fail(ErrCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, ErrCode code, const std::string& what) {
    if (!ok) fail(code, what);
}

} // namespace systolica
