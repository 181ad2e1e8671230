#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace acmdm {

enum class ErrorCode {
    InvalidArgument,
    NonConvergence,
    NonFiniteIntegrand,
    DomainError,
    InfraredDivergent,
    SingularPoint,
    SingularPath,
    PointOnPath,
    EndpointMismatch,
    Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above; the CLI
// maps them onto process exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace acmdm
