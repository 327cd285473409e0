#include "hardy/error.hpp"

namespace hardy {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::PointInsideDomain: return "PointInsideDomain";
    case ErrorCode::UnboundedDomainNoRegion: return "UnboundedDomainNoRegion";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NoApplicableBound: return "NoApplicableBound";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::BranchCutHit: return "BranchCutHit";
    case ErrorCode::DegenerateDerivative: return "DegenerateDerivative";
    case ErrorCode::MeshFailure: return "MeshFailure";
    case ErrorCode::QuadraturePointOutsideDomain: return "QuadraturePointOutsideDomain";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SupportNotContained: return "SupportNotContained";
    case ErrorCode::SpecParse: return "SpecParse";
  }
  return "Unknown";
}

}  // namespace hardy
