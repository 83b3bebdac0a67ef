#include "systolica/error.hpp"

namespace systolica {

const char* err_name(ErrCode c) {
    switch (c) {
    case ErrCode::DuplicateTriangle: return "DuplicateTriangle";
    case ErrCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrCode::BadLink: return "BadLink";
    case ErrCode::Disconnected: return "Disconnected";
    case ErrCode::UnusedVertex: return "UnusedVertex";
    case ErrCode::BoundaryNotAllowed: return "BoundaryNotAllowed";
    case ErrCode::LoopNotOnSurface: return "LoopNotOnSurface";
    case ErrCode::NotClosed: return "NotClosed";
    case ErrCode::NotOrientable: return "NotOrientable";
    case ErrCode::GenusZero: return "GenusZero";
    case ErrCode::NotSimple: return "NotSimple";
    case ErrCode::TrivialClass: return "TrivialClass";
    case ErrCode::EdgeNotInSurface: return "EdgeNotInSurface";
    case ErrCode::SeparatingLoop: return "SeparatingLoop";
    case ErrCode::ConingCollision: return "ConingCollision";
    case ErrCode::NotSphere: return "NotSphere";
    case ErrCode::SimplicialityViolation: return "SimplicialityViolation";
    case ErrCode::MissingDisk: return "MissingDisk";
    case ErrCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrCode::BadBarycentric: return "BadBarycentric";
    case ErrCode::BadBasis: return "BadBasis";
    case ErrCode::ThroughBarycenter: return "ThroughBarycenter";
    case ErrCode::InvalidParams: return "InvalidParams";
    case ErrCode::ParseError: return "ParseError";
    case ErrCode::InternalInvariant: return "InternalInvariant";
    }
    return "UnknownError";
}

} // namespace systolica
