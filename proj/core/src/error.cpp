#include "acmdm/error.hpp"

namespace acmdm {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::NonFiniteIntegrand: return "NonFiniteIntegrand";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::InfraredDivergent: return "InfraredDivergent";
        case ErrorCode::SingularPoint: return "SingularPoint";
        case ErrorCode::SingularPath: return "SingularPath";
        case ErrorCode::PointOnPath: return "PointOnPath";
        case ErrorCode::EndpointMismatch: return "EndpointMismatch";
        case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

}  // namespace acmdm
