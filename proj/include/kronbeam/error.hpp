#ifndef KRONBEAM_ERROR_HPP
#define KRONBEAM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace kronbeam {

enum class ErrorKind {
    NotPrimePower,
    UnsupportedDegree,
    InvalidParams,
    SizeOverflow,
    ZeroColumn,
    InvalidDims,
    TooLarge,
    IndexOutOfRange,
    InvalidWeight,
    DimensionMismatch,
    RankDeficient,
    EmptySupport,
    InvalidConfig,
    Io,
};

std::string_view to_string(ErrorKind kind);

/**
 * Single exception type for the library. Callers that need to branch on the
 * failure mode inspect `kind()`; everyone else can treat it as a
 * `std::runtime_error`.
 */
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace kronbeam

#endif
