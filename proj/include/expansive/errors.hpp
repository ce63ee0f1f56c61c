#pragma once

#include <stdexcept>
#include <string>

namespace expansive {

enum class ErrorCode {
    EmptySpace,
    UnsupportedSpace,
    DomainError,
    NotSurjective,
    MissingOrder,
    ContainmentViolated,
    StartConditionViolated,
    CoincidenceNotFixed,
    TraceTooShort,
    InvalidArgument,
    UnknownGalleryItem,
    SpecParse,
};

/// Library error carrying a stable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

    /// Process exit code contract: 2 for usage/spec problems, 1 for
    /// mathematical failures surfaced as errors.
    int exit_code() const {
        switch (code_) {
            case ErrorCode::SpecParse:
            case ErrorCode::UnknownGalleryItem:
            case ErrorCode::InvalidArgument:
                return 2;
            default:
                return 1;
        }
    }

private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace expansive
