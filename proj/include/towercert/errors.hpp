#pragma once

#include <stdexcept>
#include <string>

namespace towercert {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateParameters : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct MixedFieldSpecs : Error { using Error::Error; };
struct RingMismatch : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct MissingImage : Error { using Error::Error; };
struct UnknownVariable : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct CompatibilityFailure : Error { using Error::Error; };
struct ZeroParameter : Error { using Error::Error; };
struct PointNotOnVariety : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IOError : Error { using Error::Error; };

// Parse failures report the byte offset into the input string.
struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

} // namespace towercert
