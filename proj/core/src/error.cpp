#include "tomo/error.hpp"

namespace tomo {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::BadDimension: return "BadDimension";
        case ErrorKind::MissingCoefficient: return "MissingCoefficient";
        case ErrorKind::NotPhysical: return "NotPhysical";
        case ErrorKind::BadCutoff: return "BadCutoff";
        case ErrorKind::CutoffExceeded: return "CutoffExceeded";
        case ErrorKind::NegativeTime: return "NegativeTime";
        case ErrorKind::IncompleteSettings: return "IncompleteSettings";
        case ErrorKind::DuplicateSetting: return "DuplicateSetting";
        case ErrorKind::MissingObservable: return "MissingObservable";
        case ErrorKind::DegenerateProjection: return "DegenerateProjection";
        case ErrorKind::BootstrapDegenerate: return "BootstrapDegenerate";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

}  // namespace tomo
