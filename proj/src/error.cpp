#include "kronbeam/error.hpp"

namespace kronbeam {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotPrimePower: return "NotPrimePower";
        case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::SizeOverflow: return "SizeOverflow";
        case ErrorKind::ZeroColumn: return "ZeroColumn";
        case ErrorKind::InvalidDims: return "InvalidDims";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::InvalidWeight: return "InvalidWeight";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::RankDeficient: return "RankDeficient";
        case ErrorKind::EmptySupport: return "EmptySupport";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace kronbeam
