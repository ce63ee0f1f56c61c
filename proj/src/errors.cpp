#include "expansive/errors.hpp"

namespace expansive {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptySpace: return "EmptySpace";
        case ErrorCode::UnsupportedSpace: return "UnsupportedSpace";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::NotSurjective: return "NotSurjective";
        case ErrorCode::MissingOrder: return "MissingOrder";
        case ErrorCode::ContainmentViolated: return "ContainmentViolated";
        case ErrorCode::StartConditionViolated: return "StartConditionViolated";
        case ErrorCode::CoincidenceNotFixed: return "CoincidenceNotFixed";
        case ErrorCode::TraceTooShort: return "TraceTooShort";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::UnknownGalleryItem: return "UnknownGalleryItem";
        case ErrorCode::SpecParse: return "SpecParse";
    }
    return "Unknown";
}

}  // namespace expansive
